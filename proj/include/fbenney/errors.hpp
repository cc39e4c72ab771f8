#pragma once

#include <stdexcept>
#include <string>

namespace fbenney {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated precondition on an argument (grid size, order range, sign of t, ...).
struct DomainError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct QuadratureError : Error {
    using Error::Error;
};

// Raised by the zero-mode check of the Riesz inverse.
struct ZeroModeError : DomainError {
    using DomainError::DomainError;
};

struct NonContractionError : Error {
    using Error::Error;
};

struct PicardMaxIterError : Error {
    using Error::Error;
};

struct BlowUpError : Error {
    double t;
    BlowUpError(const std::string& what, double t_) : Error(what), t(t_) {}
};

struct InadmissibleHorizonError : Error {
    double max_admissible_t;
    InadmissibleHorizonError(const std::string& what, double tmax)
        : Error(what), max_admissible_t(tmax) {}
};

struct SupportLeakageError : Error {
    using Error::Error;
};

struct UndefinedSignError : Error {
    using Error::Error;
};

}  // namespace fbenney
