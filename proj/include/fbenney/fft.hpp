#pragma once

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "grid.hpp"

namespace fbenney {

// FFTW plans are created once per (size, direction) under a lock; execution
// through the new-array interface is thread safe.
class FftPlans {
public:
    static FftPlans& instance() {
        static FftPlans p;
        return p;
    }

    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        fftw_complex* a = fftw_alloc_complex(n);
        fftw_complex* b = fftw_alloc_complex(n);
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), a, b, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(a);
        fftw_free(b);
        plans_.emplace(key, p);
        return p;
    }

    FftPlans(const FftPlans&) = delete;
    FftPlans& operator=(const FftPlans&) = delete;

private:
    FftPlans() = default;
    ~FftPlans() {
        for (auto& kv : plans_) fftw_destroy_plan(kv.second);
    }
    std::mutex mu_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

// Fourier coefficients c_j = (1/N) sum_n f_n exp(-2 pi i j n / N), FFTW order.
inline cvec forward(const cvec& f) {
    const std::size_t n = f.size();
    cvec out(n);
    fftw_plan p = FftPlans::instance().get(n, FFTW_FORWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(f.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& z : out) z *= inv;
    return out;
}

// Samples from coefficients (inverse of forward).
inline cvec backward(const cvec& c) {
    const std::size_t n = c.size();
    cvec out(n);
    fftw_plan p = FftPlans::instance().get(n, FFTW_BACKWARD);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(c.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

inline cvec spectrum(const Field& f) { return forward(f.samples); }

inline Field from_spectrum(const GridSpec& g, const cvec& c, Flavor flavor) {
    return Field(g, backward(c), flavor);
}

}  // namespace fbenney
