#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "opmac/empty_ball.hpp"
#include "opmac/fixed_point.hpp"
#include "opmac/rng.hpp"

using namespace opmac;

namespace {

SystemParams make_params(double lambda, double theta, double d, double beta,
                         double alpha = 4.0) {
    SystemParams p;
    p.lambda = lambda;
    p.alpha = alpha;
    p.theta = theta;
    p.d = d;
    p.beta = beta;
    return p;
}

} // namespace

TEST_CASE("rhs collapses to the ball term when lambda=0 and beta=0") {
    const SystemParams p = make_params(0.0, 1.3, 2.2, 0.0);
    SplitMix rng(3);
    for (int i = 0; i < 100; ++i) {
        const double pp = 0.01 + 0.98 * rng.uniform();
        const double R = 0.5 + 8.0 * rng.uniform();
        const double expected =
            1.0 / (1.0 + std::pow(R, 4.0) / (p.theta * std::pow(p.d, 4.0)) - pp);
        for (auto v : {RhsVariant::NumericIntegral, RhsVariant::PaperEq6,
                       RhsVariant::DerivedArccot})
            CHECK_THAT(fixed_point_rhs(pp, R, p, v), Catch::Matchers::WithinRel(expected, 1e-12));
    }
}

TEST_CASE("derived arccot form equals the quadrature evaluation") {
    SplitMix rng(17);
    for (int i = 0; i < 200; ++i) {
        const double lambda = std::pow(10.0, -4.0 + 2.5 * rng.uniform());
        const double theta = 0.3 + 3.7 * rng.uniform();
        const double d = 1.0 + 2.0 * rng.uniform();
        const double beta = std::pow(10.0, -12.0 + 9.0 * rng.uniform());
        const SystemParams p = make_params(lambda, theta, d, beta);
        const double pp = 0.001 + 0.997 * rng.uniform();
        const double R = 0.2 + 10.0 * rng.uniform();
        const double numeric = fixed_point_rhs(pp, R, p, RhsVariant::NumericIntegral);
        const double arccot = fixed_point_rhs(pp, R, p, RhsVariant::DerivedArccot);
        CHECK_THAT(arccot, Catch::Matchers::WithinAbs(numeric, 1e-8));
    }
}

TEST_CASE("printed eq6 value at the reference point") {
    // p=0.3, R=5, d=2, theta=1, lambda=0.001, beta=1e-11; frozen from an
    // independent high-precision evaluation of the printed equation.
    const SystemParams p = make_params(1e-3, 1.0, 2.0, 1e-11);
    CHECK_THAT(fixed_point_rhs(0.3, 5.0, p, RhsVariant::PaperEq6),
               Catch::Matchers::WithinAbs(0.068337585041057926, 1e-13));
    CHECK_THAT(fixed_point_rhs(0.3, 5.0, p, RhsVariant::DerivedArccot),
               Catch::Matchers::WithinAbs(0.029146797674749639, 1e-13));
    CHECK_THAT(fixed_point_rhs(0.3, 5.0, p, RhsVariant::NumericIntegral),
               Catch::Matchers::WithinAbs(0.029146797674749639, 1e-10));
}

TEST_CASE("closed-form variants demand alpha=4 and p<1") {
    SystemParams p = make_params(1e-3, 1.0, 2.0, 1e-11, 3.0);
    CHECK_THROWS_AS(fixed_point_rhs(0.5, 2.0, p, RhsVariant::PaperEq6), std::invalid_argument);
    CHECK_THROWS_AS(fixed_point_rhs(0.5, 2.0, p, RhsVariant::DerivedArccot),
                    std::invalid_argument);
    CHECK_NOTHROW(fixed_point_rhs(0.5, 2.0, p, RhsVariant::NumericIntegral));

    p.alpha = 4.0;
    CHECK_THROWS_AS(fixed_point_rhs(1.0, 2.0, p, RhsVariant::DerivedArccot), std::domain_error);
    CHECK_NOTHROW(fixed_point_rhs(1.0, 2.0, p, RhsVariant::NumericIntegral));
}

TEST_CASE("analytic boundary case: lambda=0, beta=0, theta*d^4=1, I=1 clamps at 1") {
    // R = 1, so the equation reduces to 1/p = 1/(2-p) with root p = 1.
    const SystemParams p = make_params(0.0, 1.0, 1.0, 0.0);
    const SolverResult r = solve_optimal_p(1.0, p);
    CHECK(r.p_star == 1.0);
    CHECK(r.clamped);
}

TEST_CASE("solver agrees with a fine-grid scan of g") {
    const SystemParams p = make_params(1e-3, 1.0, 2.0, 1e-11);

    auto scan_bracket = [&](double I, double& lo, double& hi) {
        // Independent root location: 10^6-point scan for the sign change of g.
        const double R = empty_ball_radius(I, p);
        const int n = 1'000'000;
        double prev_p = 1e-9;
        double prev_g =
            fixed_point_rhs(prev_p, R, p, RhsVariant::DerivedArccot) - 1.0 / prev_p;
        for (int i = 1; i < n; ++i) {
            const double pp = (i + 1) * (1.0 - 2e-9) / n + 1e-9;
            const double g = fixed_point_rhs(pp, R, p, RhsVariant::DerivedArccot) - 1.0 / pp;
            if (prev_g < 0.0 && g >= 0.0) {
                lo = prev_p;
                hi = pp;
                return true;
            }
            prev_p = pp;
            prev_g = g;
        }
        return false;
    };

    SECTION("clamped point: no sign change up to the boundary") {
        double lo = 0, hi = 0;
        CHECK_FALSE(scan_bracket(0.01, lo, hi));
        const SolverResult r = solve_optimal_p(0.01, p, RhsVariant::DerivedArccot);
        CHECK(r.clamped);
        CHECK(r.p_star == 1.0);
    }

    SECTION("interior root: scan brackets the bisection result") {
        double lo = 0, hi = 0;
        REQUIRE(scan_bracket(0.15, lo, hi));
        const SolverResult r = solve_optimal_p(0.15, p, RhsVariant::DerivedArccot);
        CHECK_FALSE(r.clamped);
        CHECK(r.p_star >= lo);
        CHECK(r.p_star <= hi);
        CHECK(r.residual < 1e-9);
        // the quadrature-backed default lands on the same root
        const SolverResult rn = solve_optimal_p(0.15, p);
        CHECK_THAT(rn.p_star, Catch::Matchers::WithinAbs(r.p_star, 1e-7));
        CHECK(rn.residual < 1e-9);
    }
}

TEST_CASE("p* responds monotonically to the self-interference factor") {
    // Remark-2 behaviour: smaller beta (better cancellation) => larger p*.
    const double I = 0.15;
    double prev = -1.0;
    for (double beta : {1e-2, 1e-3, 1e-5, 1e-7, 1e-9, 1e-11}) {
        const double p_star = solve_optimal_p(I, make_params(1e-3, 1.0, 2.0, beta)).p_star;
        CHECK(p_star >= prev);
        prev = p_star;
    }
}

TEST_CASE("g is strictly increasing for all variants") {
    const SystemParams p = make_params(2e-3, 1.5, 2.0, 1e-6);
    const double R = empty_ball_radius(0.08, p);
    for (auto v : {RhsVariant::NumericIntegral, RhsVariant::PaperEq6,
                   RhsVariant::DerivedArccot}) {
        double prev = -1e308;
        for (int i = 1; i <= 400; ++i) {
            const double pp = i / 401.0;
            const double g = fixed_point_rhs(pp, R, p, v) - 1.0 / pp;
            CHECK(g > prev);
            prev = g;
        }
    }
}

TEST_CASE("solver input validation") {
    const SystemParams p = make_params(1e-3, 1.0, 2.0, 1e-11);
    CHECK_THROWS_AS(solve_optimal_p(0.0, p), std::domain_error);
    CHECK_THROWS_AS(solve_optimal_p(0.1, p, RhsVariant::NumericIntegral, 0.0),
                    std::invalid_argument);
}
