#pragma once

#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/special_functions/bernoulli.hpp>

#include <cmath>
#include <map>
#include <mutex>

#include "grid.hpp"

namespace fbenney {

// Hurwitz zeta  sum_{n>=0} (q+n)^{-sig}  for sig > 1, q > 0, by Euler-Maclaurin
// after M explicit terms.
inline double hurwitz_zeta(double sig, double q) {
    if (!(sig > 1.0) || !(q > 0.0))
        throw DomainError("hurwitz_zeta: need sig > 1 and q > 0");
    constexpr int M = 12;
    constexpr int K = 10;
    double sum = 0.0;
    for (int n = 0; n < M; ++n) sum += std::pow(q + n, -sig);
    const double a = q + M;
    sum += std::pow(a, 1.0 - sig) / (sig - 1.0) + 0.5 * std::pow(a, -sig);
    // B_{2k}/(2k)! * sig (sig+1) ... (sig+2k-2) * a^{-sig-2k+1}
    double rising = sig;  // sig (sig+1) ... (sig+2k-2), starts at k = 1
    double fact = 2.0;    // (2k)!
    double apow = std::pow(a, -sig - 1.0);
    for (int k = 1; k <= K; ++k) {
        const double term = boost::math::bernoulli_b2n<double>(k) / fact * rising * apow;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        rising *= (sig + 2 * k - 1) * (sig + 2 * k);
        fact *= (2.0 * k + 1) * (2.0 * k + 2);
        apow /= a * a;
    }
    return sum;
}

namespace detail {

// int_0^1 (1 - cos z) z^{-1-2s} dz as an alternating series.
inline double cns_head(double s) {
    double sum = 0.0, fact = 1.0;
    for (int j = 1; j < 30; ++j) {
        fact *= (2.0 * j - 1.0) * (2.0 * j);
        const double term = (j % 2 ? 1.0 : -1.0) / (fact * (2.0 * j - 2.0 * s));
        sum += term;
        if (std::abs(term) < 1e-18) break;
    }
    return sum;
}

}  // namespace detail

// C_{1,s} = [ int_R (1 - cos z) / |z|^{1+2s} dz ]^{-1}.
inline double cns_constant(FracOrder order) {
    const double s = order.s;
    static std::mutex mu;
    static std::map<double, double> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(s);
        if (it != cache.end()) return it->second;
    }
    const double sig = 1.0 + 2.0 * s;
    auto f = [sig](double t) { return std::pow(1.0 + t, -sig); };
    // int_1^inf cos(z) z^{-sig} dz with z = 1 + t.
    boost::math::quadrature::ooura_fourier_cos<double> qc(1e-13);
    boost::math::quadrature::ooura_fourier_sin<double> qs(1e-13);
    auto [ic, ec] = qc.integrate(f, 1.0);
    auto [is, es] = qs.integrate(f, 1.0);
    if (!std::isfinite(ic) || !std::isfinite(is) || ec > 1e-8 || es > 1e-8)
        throw QuadratureError("cns_constant: oscillatory tail did not converge");
    const double tail = std::cos(1.0) * ic - std::sin(1.0) * is;
    const double half = detail::cns_head(s) + 1.0 / (2.0 * s) - tail;
    const double c = 1.0 / (2.0 * half);
    if (!(c > 0.0) || !std::isfinite(c)) throw QuadratureError("cns_constant: nonpositive result");
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(s, c);
    return c;
}

}  // namespace fbenney
