#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "rbinom/error.hpp"
#include "rbinom/estimators.hpp"
#include "rbinom/predictive.hpp"

using namespace rbinom;

namespace {

const PriorSpec kPriors[] = {
    {1.0, 1.0, Restriction::unrestricted()},
    {0.5, 2.0, Restriction::upper(0.3)},
    {2.0, 0.5, Restriction::interval(0.1, 0.4)},
};

}  // namespace

TEST(Predictive, UniformPriorOneTrial) {
    const BinomialSetup setup{1, 1};
    const PriorSpec uniform{1.0, 1.0, {}};
    EXPECT_NEAR(bayes_predictive(1, 1, setup, uniform), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(bayes_predictive(0, 1, setup, uniform), 1.0 / 3.0, 1e-15);
}

TEST(Predictive, MatchesQuadrature) {
    // l = 2, n = 2, x = 1, uniform prior on (0, 1/2].
    const BinomialSetup setup{2, 2};
    const PriorSpec prior{1.0, 1.0, Restriction::upper(0.5)};
    auto post = [](double p) { return p * (1.0 - p); };
    const double den = oracle::gauss_kronrod(post, 0.0, 0.5);
    const double expected[] = {
        oracle::gauss_kronrod([&](double p) { return post(p) * (1 - p) * (1 - p); }, 0.0, 0.5) / den,
        oracle::gauss_kronrod([&](double p) { return post(p) * 2 * p * (1 - p); }, 0.0, 0.5) / den,
        oracle::gauss_kronrod([&](double p) { return post(p) * p * p; }, 0.0, 0.5) / den,
    };
    for (int y = 0; y <= 2; ++y) EXPECT_NEAR(bayes_predictive(y, 1, setup, prior), expected[y], 1e-14);
}

TEST(Predictive, Normalized) {
    for (const auto& prior : kPriors) {
        for (int n : {1, 4, 8}) {
            for (int l : {1, 3, 5}) {
                const BinomialSetup setup{n, l};
                for (const auto& t : make_predictive_tables(setup, prior)) {
                    double s = 0.0;
                    for (double f : t.density) {
                        EXPECT_GT(f, 0.0);
                        s += f;
                    }
                    EXPECT_NEAR(s, 1.0, 1e-12);
                }
            }
        }
    }
}

TEST(Predictive, PlugIn) {
    EXPECT_NEAR(plug_in_density(0, 1, 0.5), 0.5, 1e-15);
    EXPECT_NEAR(plug_in_density(2, 2, 0.3), 0.09, 1e-15);
    EXPECT_THROW((void)plug_in_density(0, 1, 1.0), DomainError);
    const BinomialSetup setup{3, 4};
    const auto est = make_estimate_table(3, kPriors[1]);
    const auto tables = make_plug_in_tables(setup, est.view());
    ASSERT_EQ(tables.size(), 4u);
    for (int x = 0; x <= 3; ++x) {
        double s = 0.0;
        for (int y = 0; y <= 4; ++y) {
            EXPECT_NEAR(tables[x].density[y], plug_in_density(y, 4, est[x]), 1e-15);
            s += tables[x].density[y];
        }
        EXPECT_NEAR(s, 1.0, 1e-13);
        EXPECT_FALSE(tables[x].prior.has_value());
    }
}

TEST(Predictive, Errors) {
    const BinomialSetup setup{2, 2};
    EXPECT_THROW((void)bayes_predictive(3, 0, setup, kPriors[0]), DomainError);
    EXPECT_THROW((void)bayes_predictive(0, 3, setup, kPriors[0]), DomainError);
    const double bad[] = {0.5, 0.5};
    EXPECT_THROW((void)make_plug_in_tables(setup, bad), DomainError);
}
