#pragma once

#include "config.hpp"
#include "diagnostics.hpp"
#include "ensemble.hpp"
#include "entropy.hpp"
#include "errors.hpp"
#include "fft.hpp"
#include "grid.hpp"
#include "gronwall.hpp"
#include "io.hpp"
#include "nonlinearity.hpp"
#include "propagators.hpp"
#include "singular.hpp"
#include "sobolev.hpp"
#include "solver.hpp"
#include "special.hpp"
#include "spectral.hpp"
#include "testfunction.hpp"
#include "verify.hpp"
#include "weakform.hpp"
