#include <gtest/gtest.h>

#include <boost/numeric/odeint.hpp>

#include "fbenney/gronwall.hpp"

using namespace fbenney;

namespace {

// Equality case eta' = a eta + b eta^sigma integrated with dopri5.
double ode_oracle(const GronwallSpec& s, double t) {
    namespace ode = boost::numeric::odeint;
    std::vector<double> y{s.C};
    auto rhs = [&](const std::vector<double>& x, std::vector<double>& dx, double tau) {
        dx[0] = s.a(tau) * x[0] + s.b(tau) * std::pow(x[0], s.sigma);
    };
    ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<std::vector<double>>>(1e-13, 1e-13), rhs, y,
                            s.t0, t, 1e-4);
    return y[0];
}

}  // namespace

TEST(Gronwall, QuadraticEqualityCase) {
    GronwallSpec s;
    s.C = 0.5;
    s.sigma = 2.0;
    s.b = [](double) { return 1.0; };
    s.h = 0.9;
    for (double t = 0.0; t <= 0.9; t += 0.05) EXPECT_NEAR(gronwall_bound(s, t), 1.0 / (2.0 - t), 1e-12);
}

TEST(Gronwall, LinearCase) {
    GronwallSpec s;
    s.C = 2.0;
    s.sigma = 1.0;
    s.a = [](double) { return 0.4; };
    s.b = [](double) { return 0.1; };
    s.h = 3.0;
    for (double t : {0.0, 0.5, 1.7, 3.0}) EXPECT_NEAR(gronwall_bound(s, t) / (2.0 * std::exp(0.5 * t)), 1.0, 1e-12);
}

TEST(Gronwall, SublinearMatchesOde) {
    GronwallSpec s;
    s.C = 0.3;
    s.sigma = 0.5;
    s.a = [](double t) { return 0.2 + 0.1 * std::sin(t); };
    s.b = [](double t) { return 0.3 + 0.05 * t; };
    s.h = 2.0;
    for (double t : {0.25, 1.0, 2.0}) EXPECT_NEAR(gronwall_bound(s, t) / ode_oracle(s, t), 1.0, 1e-8);
}

TEST(Gronwall, SuperlinearMatchesOde) {
    GronwallSpec s;
    s.C = 0.2;
    s.sigma = 1.5;
    s.a = [](double t) { return 0.1 * t; };
    s.b = [](double) { return 0.4; };
    s.h = 1.0;
    for (double t : {0.3, 0.7, 1.0}) EXPECT_NEAR(gronwall_bound(s, t) / ode_oracle(s, t), 1.0, 1e-8);
}

TEST(Gronwall, BoundDominatesSubsolution) {
    // eta' = a eta + b eta^sigma - 0.05 stays below the bound
    GronwallSpec s;
    s.C = 1.0;
    s.sigma = 0.7;
    s.a = [](double) { return 0.3; };
    s.b = [](double) { return 0.2; };
    s.h = 2.0;
    namespace ode = boost::numeric::odeint;
    std::vector<double> y{1.0};
    auto rhs = [&](const std::vector<double>& x, std::vector<double>& dx, double) {
        dx[0] = 0.3 * x[0] + 0.2 * std::pow(x[0], 0.7) - 0.05;
    };
    ode::integrate_const(ode::runge_kutta4<std::vector<double>>(), rhs, y, 0.0, 2.0, 1e-3);
    EXPECT_LT(y[0], gronwall_bound(s, 2.0));
}

TEST(Gronwall, InadmissibleHorizonRejected) {
    GronwallSpec s;
    s.C = 0.5;
    s.sigma = 2.0;
    s.b = [](double) { return 1.0; };
    s.h = 2.5;
    try {
        (void)gronwall_bound(s, 1.0);
        FAIL() << "expected InadmissibleHorizonError";
    } catch (const InadmissibleHorizonError& e) {
        EXPECT_NEAR(e.max_admissible_t, 2.0, 1e-10);
    }
    s.h = 1.9;
    EXPECT_NO_THROW((void)gronwall_bound(s, 1.9));
}

TEST(Gronwall, AlternateFormIsNotABound) {
    GronwallSpec s;
    s.C = 0.5;
    s.sigma = 2.0;
    s.b = [](double) { return 1.0; };
    s.h = 0.9;
    EXPECT_NEAR(gronwall_bound_variant(s, 0.5), 0.0, 1e-12);
    EXPECT_LT(gronwall_bound_variant(s, 0.3), 1.0 / 1.7);
    EXPECT_THROW((void)gronwall_bound_variant(GronwallSpec{1.0, 1.0}, 0.1), DomainError);
}

TEST(Gronwall, Validation) {
    GronwallSpec s;
    s.C = -1.0;
    EXPECT_THROW(s.validate(), DomainError);
    s.C = 1.0;
    s.a = [](double) { return -0.1; };
    EXPECT_THROW(s.validate(), DomainError);
    s.a = [](double) { return 0.0; };
    EXPECT_THROW((void)gronwall_bound(s, 2.0), DomainError);
}

TEST(Gronwall, SampledFunctionInterpolates) {
    const auto f = sampled_function({0.0, 1.0, 2.0}, {1.0, 3.0, 2.0});
    EXPECT_DOUBLE_EQ(f(0.5), 2.0);
    EXPECT_DOUBLE_EQ(f(1.5), 2.5);
    EXPECT_DOUBLE_EQ(f(-1.0), 1.0);
    EXPECT_DOUBLE_EQ(f(5.0), 2.0);
    EXPECT_THROW((void)sampled_function({0.0, 0.0}, {1.0, 2.0}), DomainError);
}
