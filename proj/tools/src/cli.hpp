#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rbinom/binom_core.hpp"

namespace rbinom::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kNumerical = 2 };

struct RunConfig {
    std::string subcommand;
    int n = 1;
    int l = 1;
    double a = 1.0;
    double b = 1.0;
    std::optional<double> p_bar;
    std::optional<double> p_lo;
    int grid = 512;
    std::uint64_t seed = 0;
    std::int64_t mc_samples = 0;
    std::optional<int> x;
    std::string out;
    // poisson-limit
    double lambda = 0.5;
    std::optional<double> lambda_bar;
    double r = 1.0;
    double s = 1.0;
    int k_decades = 4;

    [[nodiscard]] Restriction restriction() const;
    void validate() const;
};

/// Parses argv-style arguments (without the program name) and runs the
/// subcommand. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already-parsed config.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace rbinom::cli
