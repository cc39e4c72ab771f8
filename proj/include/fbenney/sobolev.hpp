#pragma once

#include <functional>
#include <string>

#include "singular.hpp"

namespace fbenney {

struct NormReport {
    double l2 = 0.0;
    double hs_fourier = 0.0;
    double gagliardo_sq = 0.0;  // filled only when a quadrature is requested
    double frac_grad_l2 = 0.0;
};

struct InequalityReport {
    std::string name;
    double s = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant_used = 0.0;
    double margin = 0.0;
    std::string witness;
    std::uint64_t seed = 0;
    double tolerance = 0.0;

    bool pass() const { return margin >= -tolerance; }
};

inline InequalityReport make_report(std::string name, double s, double lhs, double rhs, double c,
                                    std::string witness, double tol) {
    InequalityReport r;
    r.name = std::move(name);
    r.s = s;
    r.lhs = lhs;
    r.rhs = rhs;
    r.constant_used = c;
    r.margin = rhs - lhs;
    r.witness = std::move(witness);
    r.tolerance = tol;
    return r;
}

inline NormReport hs_norm(const Field& f, FracOrder s) {
    const GridSpec& g = f.grid;
    cvec c = forward(f.samples);
    rvec sym = frac_symbol(g, 2.0 * s.s);
    NormReport r;
    r.l2 = std::sqrt(weighted_sq(g, c, [](std::size_t) { return 1.0; }));
    r.hs_fourier = std::sqrt(weighted_sq(g, c, [&](std::size_t j) { return std::pow(1.0 + g.k(j) * g.k(j), s.s); }));
    r.frac_grad_l2 = std::sqrt(weighted_sq(g, c, [&](std::size_t j) { return sym[j]; }));
    return r;
}

struct GagliardoResult {
    double value = 0.0;
    double quad_error = 0.0;
};

// int int |f(x) - f(y)|^2 / |x - y|^{1+2s} dx dy on the torus.
inline GagliardoResult gagliardo_seminorm_sq(const Field& f, FracOrder s, const QuadratureSpec& q = {}) {
    const std::size_t mask = f.grid.N - 1;
    const auto& v = f.samples;
    auto E = [&](std::size_t i, std::size_t m) {
        return cplx(std::norm(v[(i + m) & mask] - v[i]) + std::norm(v[(i - m) & mask] - v[i]), 0.0);
    };
    PairSum ps = pair_quadrature(f.grid, s.s, E, q);
    double total = 0.0;
    for (const auto& z : ps.values) total += z.real();
    return {total * f.grid.dx, ps.error * f.grid.dx * static_cast<double>(f.grid.N)};
}

// Norm-equivalence constants m_s <= |f|_{H^s} / (|f|_2 + |(-D)^{s/2} f|_2) <= M_s,
// from the extreme weight ratios (1+k^2)^s / (1+|k|^{2s}) over resolved modes.
struct EquivalenceConstants {
    double m_s = 0.0;
    double M_s = 0.0;
};

inline EquivalenceConstants norm_equivalence_constants(const GridSpec& g, FracOrder s) {
    double lo = 1.0, hi = 1.0;
    for (std::size_t j = 0; j < g.N; ++j) {
        if (g.is_nyquist(j)) continue;
        const double k = std::abs(g.k(j));
        const double r = std::pow(1.0 + k * k, s.s) / (1.0 + std::pow(k, 2.0 * s.s));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return {std::sqrt(lo / 2.0), std::sqrt(hi)};
}

inline InequalityReport check_equivalence(const Field& f, FracOrder s, double rel_tol = 1e-6,
                                          const QuadratureSpec& q = {}) {
    const GagliardoResult gq = gagliardo_seminorm_sq(f, s, q);
    const double rhs = 2.0 / cns_constant(s) * frac_grad_sq(f, s.s);
    const double tol = rel_tol * std::max(std::abs(rhs), 1e-300) + gq.quad_error;
    auto r = make_report("gagliardo_equivalence", s.s, gq.value, rhs, 2.0 / cns_constant(s), "", tol);
    r.margin = -std::abs(gq.value - rhs);
    return r;
}

inline double hs_value(const Field& f, double s) { return hs_norm(f, s).hs_fourier; }

inline Field pointwise_product(const Field& a, const Field& b) {
    require_same_grid(a, b, "pointwise_product");
    Field out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out.samples[i] = a.samples[i] * b.samples[i];
    out.flavor = (a.is_real() && b.is_real()) ? Flavor::real_longwave : Flavor::complex_shortwave;
    return out;
}

// Ratio |fg|_{H^s} / (|f|_{H^s} |g|_{H^s}); passes when below the supplied constant.
inline InequalityReport check_algebra(const Field& f, const Field& g, FracOrder s, double algebra_constant,
                                      double tol = 1e-10) {
    if (s.s <= 0.5) throw DomainError("check_algebra: requires s > 1/2");
    const double lhs = hs_value(pointwise_product(f, g), s);
    const double prod = hs_value(f, s) * hs_value(g, s);
    auto r = make_report("algebra", s.s, lhs, algebra_constant * prod, algebra_constant, "", tol * prod);
    return r;
}

inline double algebra_ratio(const Field& f, const Field& g, FracOrder s) {
    const double prod = hs_value(f, s) * hs_value(g, s);
    return prod > 0.0 ? hs_value(pointwise_product(f, g), s) / prod : 0.0;
}

namespace detail {
inline Field refined_field(const Field& f, std::size_t factor) {
    GridSpec fine = make_grid(f.grid.L, f.grid.N * factor);
    return Field(fine, refine(f, factor), f.flavor);
}
inline void require_sharp_range(double s, const char* who) {
    if (!(s > 0.5 && s < 1.0)) throw DomainError(std::string(who) + ": requires 1/2 < s < 1");
}
}  // namespace detail

// |(-D)^{s/2} F(f)|_2 <= sup|F'| |(-D)^{s/2} f|_2, evaluated on the 8x refinement.
inline InequalityReport check_chain_rule(const std::function<double(double)>& F, double Fprime_sup,
                                         const Field& f, FracOrder s, double tol = 1e-10,
                                         std::size_t refine_factor = 8) {
    if (!f.is_real()) throw DomainError("check_chain_rule: needs a real field");
    if (std::abs(F(0.0)) > 1e-14) throw DomainError("check_chain_rule: F(0) must vanish");
    Field fine = detail::refined_field(f, refine_factor);
    Field Ff = fine;
    for (auto& z : Ff.samples) z = cplx(F(z.real()), 0.0);
    const double lhs = std::sqrt(frac_grad_sq(Ff, s.s));
    const double rhs = Fprime_sup * std::sqrt(frac_grad_sq(fine, s.s));
    return make_report("chain_rule", s.s, lhs, rhs, Fprime_sup, "", tol * std::max(1.0, rhs));
}

inline double linf_constant(double s) { return 2.0 / std::sqrt(kPi * (2.0 * s - 1.0)); }

inline InequalityReport check_linf_interp(const Field& f, FracOrder s, double tol = 1e-10) {
    detail::require_sharp_range(s.s, "check_linf_interp");
    const NormReport n = hs_norm(f, s);
    const double c = linf_constant(s.s);
    const double lhs = sup_norm(f, 8);
    const double rhs = c * std::pow(n.l2, 1.0 - 1.0 / (2.0 * s.s)) * std::pow(n.frac_grad_l2, 1.0 / (2.0 * s.s));
    return make_report("linf_interpolation", s.s, lhs, rhs, c, "", tol * std::max(1.0, rhs));
}

inline InequalityReport check_product_bound(const Field& f, FracOrder s, double tol = 1e-10,
                                            std::size_t refine_factor = 8) {
    detail::require_sharp_range(s.s, "check_product_bound");
    Field fine = detail::refined_field(f, refine_factor);
    Field mod2 = fine;
    for (auto& z : mod2.samples) z = cplx(std::norm(z), 0.0);
    mod2.flavor = Flavor::real_longwave;
    const double lhs = std::sqrt(frac_grad_sq(mod2, s.s));
    const double rhs = 2.0 * sup_norm(f, refine_factor) * std::sqrt(frac_grad_sq(f, s.s));
    return make_report("product_bound", s.s, lhs, rhs, 2.0, "", tol * std::max(1.0, rhs));
}

}  // namespace fbenney
