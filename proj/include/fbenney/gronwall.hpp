#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <functional>
#include <limits>
#include <string>

#include "errors.hpp"
#include "grid.hpp"

namespace fbenney {

// eta(t) <= C + int_{t0}^t (a eta + b eta^sigma)
struct GronwallSpec {
    double C = 0.0;
    double sigma = 0.0;
    std::function<double(double)> a = [](double) { return 0.0; };
    std::function<double(double)> b = [](double) { return 0.0; };
    double t0 = 0.0;
    double h = 1.0;

    void validate() const {
        if (!(C >= 0.0)) throw DomainError("GronwallSpec: C must be nonnegative");
        if (!(sigma >= 0.0)) throw DomainError("GronwallSpec: sigma must be nonnegative");
        if (!(h > 0.0)) throw DomainError("GronwallSpec: horizon must be positive");
        for (int i = 0; i <= 64; ++i) {
            const double t = t0 + h * i / 64.0;
            if (a(t) < 0.0 || b(t) < 0.0) throw DomainError("GronwallSpec: a and b must be nonnegative");
        }
    }
};

// Piecewise-linear interpolant of samples (t_i, y_i); constant beyond the ends.
inline std::function<double(double)> sampled_function(rvec t, rvec y) {
    if (t.size() != y.size() || t.size() < 2) throw DomainError("sampled_function: need matching samples");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) throw DomainError("sampled_function: abscissae must increase");
    return [t = std::move(t), y = std::move(y)](double x) {
        if (x <= t.front()) return y.front();
        if (x >= t.back()) return y.back();
        const auto it = std::upper_bound(t.begin(), t.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - t.begin()) - 1;
        const double w = (x - t[i]) / (t[i + 1] - t[i]);
        return (1.0 - w) * y[i] + w * y[i + 1];
    };
}

namespace detail {

inline double gk_integral(const std::function<double(double)>& f, double lo, double hi) {
    if (hi <= lo) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-13);
}

}  // namespace detail

struct GronwallEvaluator {
    explicit GronwallEvaluator(GronwallSpec s) : spec(std::move(s)) { spec.validate(); }

    double A(double t) const { return detail::gk_integral(spec.a, spec.t0, t); }

    // int_{t0}^t b(tau) exp[(1-sigma)(A(t) - A(tau))] dtau
    double weighted_b(double t) const {
        const double At = A(t), k = 1.0 - spec.sigma;
        return detail::gk_integral([&](double tau) { return spec.b(tau) * std::exp(k * (At - A(tau))); }, spec.t0, t);
    }

    // C^{1-sigma} e^{(1-sigma)A(t)} + (1-sigma) int b e^{(1-sigma)(A(t)-A(tau))}
    double bracket(double t) const {
        const double k = 1.0 - spec.sigma;
        return std::pow(spec.C, k) * std::exp(k * A(t)) + k * weighted_b(t);
    }

    // The horizon condition on [t0, t0+h] as stated for sigma > 1.
    bool horizon_condition() const {
        const double th = spec.t0 + spec.h;
        const double s1 = spec.sigma - 1.0;
        const double B = detail::gk_integral(spec.b, spec.t0, th);
        if (B == 0.0) return true;
        return spec.C < std::exp(-A(th)) * std::pow(s1 * B, -1.0 / s1);
    }

    // Largest t in [t0, t0+h] with a positive bracket (sigma > 1).
    double max_admissible_t() const {
        const double th = spec.t0 + spec.h;
        if (spec.C == 0.0) return spec.t0;
        if (bracket(th) > 0.0) return th;
        double lo = spec.t0, hi = th;
        // bracket is decreasing for sigma > 1, so one root
        boost::math::tools::eps_tolerance<double> tol(50);
        std::uintmax_t it = 200;
        auto r = boost::math::tools::toms748_solve([&](double t) { return bracket(t); }, lo, hi, tol, it);
        return r.first;
    }

    GronwallSpec spec;
};

// Upper bound for eta(t) from the generalized Gronwall lemma. For sigma != 1
// this is the Bihari form {C^{1-sigma} e^{(1-sigma)A} + (1-sigma) int ...}^{1/(1-sigma)};
// for sigma > 1 it is only returned where the bracket stays positive.
inline double gronwall_bound(const GronwallSpec& spec, double t) {
    GronwallEvaluator ev(spec);
    if (t < spec.t0 - 1e-14 || t > spec.t0 + spec.h + 1e-14)
        throw DomainError("gronwall_bound: t outside [t0, t0+h]");
    const double s = spec.sigma;
    if (s == 1.0) {
        const double I = detail::gk_integral([&](double x) { return spec.a(x) + spec.b(x); }, spec.t0, t);
        return spec.C * std::exp(I);
    }
    if (s < 1.0) return std::pow(ev.bracket(t), 1.0 / (1.0 - s));
    if (spec.C == 0.0) return 0.0;
    if (!ev.horizon_condition())
        throw InadmissibleHorizonError("gronwall_bound: horizon condition fails on [t0, t0+h]", ev.max_admissible_t());
    const double br = ev.bracket(t);
    if (!(br > 0.0)) {
        const double tmax = ev.max_admissible_t();
        throw InadmissibleHorizonError("gronwall_bound: bound blows up before t (max admissible t = " +
                                           std::to_string(tmax) + ")",
                                       tmax);
    }
    return std::pow(br, 1.0 / (1.0 - s));
}

// Alternate arrangement of the sigma > 1 bound: C {e^{(1-sigma)A} - C^{-1}(sigma-1) int ...}^{1/(sigma-1)}.
// Kept for comparison only; it is not an upper bound in general.
inline double gronwall_bound_variant(const GronwallSpec& spec, double t) {
    GronwallEvaluator ev(spec);
    const double s = spec.sigma;
    if (!(s > 1.0)) throw DomainError("gronwall_bound_variant: only defined for sigma > 1");
    const double br = std::exp((1.0 - s) * ev.A(t)) - (s - 1.0) / spec.C * ev.weighted_b(t);
    return spec.C * std::pow(std::max(br, 0.0), 1.0 / (s - 1.0));
}

}  // namespace fbenney
