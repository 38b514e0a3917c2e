#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rbinom/binom_core.hpp"

namespace rbinom {

/// Density estimate for the future count Y in {0, ..., l} given X = x.
struct PredictiveTable {
    BinomialSetup setup;
    std::optional<PriorSpec> prior;  // empty for plug-in densities
    int x = 0;
    std::vector<double> density;
    std::vector<double> log_density;
};

/// Bayesian predictive density C(l,y) \int p^{y+x}(1-p)^{l-y+n-x} pi / \int p^x (1-p)^{n-x} pi.
[[nodiscard]] double bayes_predictive(int y, int x, const BinomialSetup& setup, const PriorSpec& prior);
[[nodiscard]] double log_bayes_predictive(int y, int x, const BinomialSetup& setup, const PriorSpec& prior);

/// f(y | l, d).
[[nodiscard]] double plug_in_density(int y, int l, double d);

[[nodiscard]] PredictiveTable make_predictive_table(int x, const BinomialSetup& setup, const PriorSpec& prior);

/// One table per x in {0, ..., n}.
[[nodiscard]] std::vector<PredictiveTable> make_predictive_tables(const BinomialSetup& setup, const PriorSpec& prior);

/// Plug-in tables f(. | l, estimates[x]); `estimates` has n + 1 entries.
[[nodiscard]] std::vector<PredictiveTable> make_plug_in_tables(const BinomialSetup& setup,
                                                               std::span<const double> estimates);

}  // namespace rbinom
