#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "rbinom/error.hpp"
#include "rbinom/poisson_limit.hpp"

using namespace rbinom;

TEST(Poisson, PosteriorMean) {
    EXPECT_DOUBLE_EQ(poisson_posterior_mean(2, PoissonConfig{2.0, 1.0, 1.0, std::nullopt}), 1.5);
    EXPECT_NEAR(poisson_posterior_mean(2, PoissonConfig{2.0, 1.0, 1.0, 1e6}), 1.5, 1e-12);
    const double e = std::exp(-1.0);
    EXPECT_NEAR(poisson_posterior_mean(0, PoissonConfig{1.0, 1.0, 1.0, 1.0}), (1.0 - 2.0 * e) / (1.0 - e), 1e-15);
    for (int x = 0; x < 30; ++x) {
        const double m = poisson_posterior_mean(x, PoissonConfig{1.5, 1.0, 0.5, 2.0});
        EXPECT_GT(m, 0.0);
        EXPECT_LT(m, 2.0);
    }
}

TEST(Poisson, PredictiveNormalizedAndNegativeBinomial) {
    for (const auto& cfg : {PoissonConfig{1.0, 1.0, 1.0, std::nullopt}, PoissonConfig{1.0, 2.0, 0.5, 1.0}}) {
        for (int x : {0, 1, 3}) {
            double s = 0.0;
            for (int y = 0; y < 400; ++y) s += poisson_predictive(y, x, cfg);
            EXPECT_NEAR(s, 1.0, 1e-12);
        }
    }
    const PoissonConfig plain{2.0, 3.0, 1.0, std::nullopt};
    for (int y = 0; y < 20; ++y) {
        EXPECT_NEAR(poisson_predictive(y, 2, plain), oracle::negative_binomial(y, 3.0, 2.0, 3.0), 1e-14);
    }
    EXPECT_NEAR(poisson_predictive(0, 2, PoissonConfig{1.0, 1e-9, 1.0, 1.0}), 1.0, 1e-8);
}

TEST(Poisson, PredictiveTruncatedMatchesQuadrature) {
    const PoissonConfig cfg{1.0, 2.0, 1.5, 1.2};
    const int x = 2;
    auto post = [&](double l) { return std::pow(l, x + cfg.a - 1.0) * std::exp(-cfg.r * l); };
    const double den = oracle::gauss_kronrod(post, 0.0, 1.2);
    for (int y = 0; y < 6; ++y) {
        const double num = oracle::gauss_kronrod(
            [&](double l) { return post(l) * oracle::poisson_pmf(y, cfg.s * l); }, 0.0, 1.2);
        EXPECT_NEAR(poisson_predictive(y, x, cfg), num / den, 1e-14);
    }
}

TEST(Poisson, Risk) {
    EXPECT_EQ(poisson_entropy_risk([](int) { return 0.7; }, 1.0, 0.7), 0.0);
    const PoissonConfig cfg{1.0, 1.0, 1.0, std::nullopt};
    double brute = 0.0;
    for (int x = 0; x < 200; ++x) {
        const double d = x + 1.0;
        brute += oracle::poisson_pmf(x, 0.5) * (d - 0.5 - 0.5 * std::log(d / 0.5));
    }
    EXPECT_NEAR(poisson_entropy_risk(cfg, 0.5), brute, 1e-14);
    for (double lambda : {0.01, 0.5, 0.99}) EXPECT_GE(poisson_entropy_risk(PoissonConfig{1, 1, 1, 1.0}, lambda), 0.0);
    EXPECT_THROW((void)poisson_entropy_risk(PoissonConfig{1, 1, 1, 1.0}, 1.5), DomainError);
}

TEST(Poisson, BinomialImageUsesUnitSecondExponent) {
    const auto img = binomial_image(PoissonConfig{2.0, 3.0, 0.7, 1.0}, 100.0);
    EXPECT_EQ(img.setup.n, 200);
    EXPECT_EQ(img.setup.l, 300);
    EXPECT_EQ(img.prior.a, 0.7);
    EXPECT_EQ(img.prior.b, 1.0);
    EXPECT_EQ(img.prior.restriction.kind(), RestrictionKind::upper);
    EXPECT_DOUBLE_EQ(img.prior.restriction.upper(), 0.01);
    EXPECT_THROW((void)binomial_image(PoissonConfig{1.0, 1.0, 1.0, 5.0}, 2.0), DomainError);
}

TEST(Poisson, LimitReport) {
    for (const auto& cfg : {PoissonConfig{1.0, 1.0, 1.0, std::nullopt}, PoissonConfig{1.0, 1.0, 1.0, 1.0}}) {
        const auto r = limit_convergence_report({10, 100, 1000, 10000}, 0.5, cfg, 1);
        EXPECT_TRUE(r.monotone());
        EXPECT_LT(r.estimator_errors.back(), 1e-3);
        EXPECT_LT(r.predictive_errors.back(), 1e-3);
        EXPECT_LT(r.risk_errors.back(), 1e-3);
    }
    EXPECT_THROW((void)limit_convergence_report({100, 10}, 0.5, PoissonConfig{}, 0), DomainError);
    EXPECT_THROW((void)limit_convergence_report({10}, 2.0, PoissonConfig{1, 1, 1, 1.0}, 0), DomainError);
}

TEST(Poisson, ConfigValidation) {
    EXPECT_THROW((PoissonConfig{0.0, 1.0, 1.0, std::nullopt}.validate()), DomainError);
    EXPECT_THROW((PoissonConfig{1.0, 1.0, 1.0, -1.0}.validate()), DomainError);
    EXPECT_THROW((void)poisson_posterior_mean(-1, PoissonConfig{}), DomainError);
}
