#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "rbinom/error.hpp"
#include "rbinom/incbeta.hpp"

using namespace rbinom;

namespace {

double rel(double x, double y) { return std::fabs(x - y) / std::max(std::fabs(x), std::fabs(y)); }

const double kAlphas[] = {0.5, 1.0, 2.0, 5.0};
const double kGaps[] = {0.5, 1.0, 3.0};
const double kUppers[] = {0.05, 0.3, 0.7, 0.95};

}  // namespace

TEST(IncBeta, UnitGapClosedForm) {
    EXPECT_NEAR(eval_I(1.0, 2.0, 0.5), 2.0, 1e-13);
    for (double a : kAlphas) {
        for (double p : kUppers) {
            EXPECT_LT(rel(eval_I(a, a + 1.0, p), I_unit_gap_closed_form(a, p)), 1e-12) << a << " " << p;
        }
    }
}

TEST(IncBeta, ZeroUpperBound) {
    EXPECT_NEAR(eval_I(2.0, 5.0, 0.0), 0.5, 1e-15);
    EXPECT_NEAR(eval_I(0.5, 3.0, 0.0), 2.0, 1e-15);
}

TEST(IncBeta, HalfTwoClosedForm) {
    const double q = 0.5;
    const double expected = (1.0 + std::numbers::pi / 4.0 / 0.5) / q;
    EXPECT_LT(rel(I_half_two_closed_form(0.5), expected), 1e-14);
    for (double p : kUppers) EXPECT_LT(rel(eval_I(0.5, 2.0, p), I_half_two_closed_form(p)), 1e-12);
}

TEST(IncBeta, MatchesQuadrature) {
    for (double a : kAlphas) {
        for (double g : kGaps) {
            for (double p : kUppers) {
                EXPECT_LT(rel(eval_I(a, a + g, p), oracle::I(a, a + g, p)), 1e-10) << a << " " << g << " " << p;
            }
        }
    }
}

TEST(IncBeta, TwoSidedMatchesQuadrature) {
    const double bounds[][2] = {{0.1, 0.4}, {0.3, 0.7}, {0.05, 0.95}, {0.45, 0.55}};
    for (double a : kAlphas) {
        for (double g : kGaps) {
            for (const auto& bd : bounds) {
                const double got = eval_I_two_sided(a, a + g, bd[0], bd[1]);
                EXPECT_LT(rel(got, oracle::I_two_sided(a, a + g, bd[0], bd[1])), 1e-10);
            }
        }
    }
}

TEST(IncBeta, TwoSidedTendsToOneSided) {
    EXPECT_LT(rel(eval_I_two_sided(2.0, 4.0, 1e-9, 0.6), eval_I(2.0, 4.0, 0.6)), 1e-9);
}

TEST(IncBeta, IncompleteBetaAgainstQuadrature) {
    auto f = [](double t) { return std::pow(t, 1.5) * std::pow(1.0 - t, 2.5); };
    const double q = oracle::gauss_kronrod(f, 0.0, 0.8);
    EXPECT_LT(rel(inc_beta_lower(2.5, 3.5, 0.8), q), 1e-12);
    EXPECT_LT(rel(std::exp(log_inc_beta_interval(2.5, 3.5, 0.2, 0.8)), oracle::gauss_kronrod(f, 0.2, 0.8)), 1e-12);
    EXPECT_LT(rel(inc_beta_lower(2.5, 3.5, 1.0), std::exp(log_beta(2.5, 3.5))), 1e-14);
}

TEST(IncBeta, RecurrenceIdentities) {
    for (double a : kAlphas) {
        for (double g0 : kGaps) {
            for (double p : kUppers) {
                const double g = a + g0;
                const double I0 = eval_I(a, g, p);
                const double I11 = eval_I(a + 1.0, g + 1.0, p);
                const double I01 = eval_I(a, g + 1.0, p);
                EXPECT_LT(rel(a * I0, 1.0 + p * g * I11), 1e-12);
                const double lhs = (1.0 + 1.0 / ((g - a) * I0)) * (1.0 + 1.0 / (p * g * I11));
                EXPECT_LT(rel(lhs, 1.0 + 1.0 / (p * (g - a) * I11)), 1e-12);
                EXPECT_LT(rel(1.0 + p * (g - a) * I11, (1.0 - p) * a * I01), 1e-12);
                EXPECT_LE(1.0 / I11, 1.0 + 1.0 / I01 + 1e-12);
            }
        }
    }
}

TEST(IncBeta, SmallUpperBoundStaysAccurate) {
    // Near p_bar = 0 the integral tends to 1/alpha.
    EXPECT_LT(rel(eval_I(3.0, 10.0, 1e-10), 1.0 / 3.0), 1e-8);
    EXPECT_LT(rel(eval_I(3.0, 10.0, 1e-6), oracle::I(3.0, 10.0, 1e-6)), 1e-12);
}

TEST(IncBeta, JMatchesQuadratureAndEndpoints) {
    for (int n : {1, 4, 9}) {
        for (double p : {0.01, 0.2, 0.4}) {
            EXPECT_LT(rel(eval_J(p, n, 1.0, 1.0, 0.4), oracle::J(p, n, 1.0, 1.0, 0.4)), 1e-10);
            EXPECT_LT(rel(eval_J(p, n, 0.5, 2.0, 0.4), oracle::J(p, n, 0.5, 2.0, 0.4)), 1e-10);
        }
        EXPECT_LT(rel(eval_J(0.0, n, 1.0, 1.0, 0.3), eval_I(1.0, n + 3.0, 0.3)), 1e-13);
        // At p = p_bar the n-dependence cancels.
        EXPECT_LT(rel(eval_J(0.3, n, 1.5, 2.0, 0.3), eval_I(1.5, 4.5, 0.3)), 1e-12);
    }
}

TEST(IncBeta, BracketTerm) {
    // Symmetric bounds, alpha = gamma / 2: rho^alpha ((1-p_lo)/(1-p_bar))^gamma = 1.
    EXPECT_EQ(bracket_term(1.5, 3.0, 0.3, 0.7), 0.0);
    const double p_lo = 0.1;
    const double p_bar = 0.4;
    const double rho = (p_lo / (1 - p_lo)) / (p_bar / (1 - p_bar));
    const double direct = 1.0 - std::pow(rho, 2.0) / std::pow(1.0 - p_bar * (1.0 - rho), 5.0);
    EXPECT_LT(rel(bracket_term(2.0, 5.0, p_lo, p_bar), direct), 1e-13);
}

TEST(IncBeta, OddsTriple) {
    const auto o = OddsTriple::from_bounds(0.2, 0.5);
    EXPECT_DOUBLE_EQ(o.r_lo, 0.25);
    EXPECT_DOUBLE_EQ(o.r_bar, 1.0);
    EXPECT_NEAR(o.rho, 0.25, 1e-15);
    EXPECT_THROW((void)OddsTriple::from_bounds(0.5, 0.2), DomainError);
}

TEST(IncBeta, Errors) {
    EXPECT_THROW((void)eval_I(2.0, 1.0, 0.5), DomainError);
    EXPECT_THROW((void)eval_I(0.0, 1.0, 0.5), DomainError);
    EXPECT_THROW((void)eval_I(1.0, 2.0, 1.0), DomainError);
    EXPECT_THROW((void)eval_I(1.0, 2.0, -0.1), DomainError);
    EXPECT_THROW((void)eval_I(1.0, 2.0, 1.0 - 1e-13), OverflowError);
    EXPECT_THROW((void)eval_I_two_sided(1.0, 2.0, 0.6, 0.5), DomainError);
    EXPECT_THROW((void)eval_I(IntegralParams{1.0, 2.0, 0.5, 0.7}), DomainError);
    EXPECT_NO_THROW((void)eval_I(IntegralParams{1.0, 2.0, 0.5, 0.2}));
    EXPECT_THROW((void)eval_J(0.5, 0, 1.0, 1.0, 0.5), DomainError);
}

TEST(IncBeta, ReferenceValues) {
    EXPECT_NEAR(inc_beta_lower(1.0, 1.0, 0.3), 0.3, 1e-15);
    EXPECT_NEAR(inc_beta_lower(2.0, 1.0, 1.0), 0.5, 1e-15);
    EXPECT_NEAR(inc_beta_lower(0.5, 0.5, 0.5), std::numbers::pi / 2.0, 1e-13);
    EXPECT_NEAR(eval_I(0.5, 2.0, 0.5), 2.0 + std::numbers::pi, 1e-12);
    // \int_{1/3}^1 dt / (0.5 + 0.5 t)^2 = 1.
    EXPECT_NEAR(eval_I_two_sided(1.0, 2.0, 0.25, 0.5), 1.0, 1e-13);
    EXPECT_LT(rel(eval_I_two_sided(2.0, 3.0, 0.4, 0.6), oracle::I_two_sided(2.0, 3.0, 0.4, 0.6)), 1e-12);
    const double rho = 1.0 / 3.0;
    EXPECT_NEAR(bracket_term(1.0, 2.0, 0.25, 0.5), 1.0 - rho / std::pow(1.0 - 0.5 * (1.0 - rho), 2.0), 1e-14);
    EXPECT_NEAR(bracket_term(1.0, 2.0, 1e-300, 0.5), 1.0, 1e-14);
}
