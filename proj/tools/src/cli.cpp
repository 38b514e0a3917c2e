#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "csv.hpp"
#include "rbinom/dominance.hpp"
#include "rbinom/error.hpp"
#include "rbinom/estimators.hpp"
#include "rbinom/poisson_limit.hpp"
#include "rbinom/predictive.hpp"
#include "rbinom/risk.hpp"

namespace rbinom::cli {
namespace {

std::string flag_text(const std::optional<bool>& f) {
    if (!f) return "n/a";
    return *f ? "true" : "false";
}

// Sends CSV to --out when given, otherwise to the console stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& console) : console_(console) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
            if (!*file_) throw std::ios_base::failure("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : console_; }
    [[nodiscard]] bool to_file() const { return file_ != nullptr; }
    void finish() {
        if (file_) {
            file_->flush();
            if (!*file_) throw std::ios_base::failure("write failed");
        }
    }

private:
    std::ostream& console_;
    std::unique_ptr<std::ofstream> file_;
};

PriorSpec prior_of(const RunConfig& c) { return {c.a, c.b, c.restriction()}; }

void run_estimate(const RunConfig& c, std::ostream& out) {
    const auto prior = prior_of(c);
    const auto restricted = make_estimate_table(c.n, prior);
    const auto plain = make_estimate_table(c.n, prior.untruncated());
    Sink sink(c.out, out);
    CsvWriter csv(sink.stream(), {"x", "estimate_unrestricted", "estimate_restricted"});
    for (int x = 0; x <= c.n; ++x) csv.row({double(x), plain[x], restricted[x]});
    sink.finish();
}

void run_predictive(const RunConfig& c, std::ostream& out) {
    const auto prior = prior_of(c);
    const BinomialSetup setup{c.n, c.l};
    const auto estimates = make_estimate_table(c.n, prior);
    const auto plug = make_plug_in_tables(setup, estimates.view());
    Sink sink(c.out, out);
    CsvWriter csv(sink.stream(), {"x", "y", "bayes_predictive", "plug_in"});
    const int x_lo = c.x.value_or(0);
    const int x_hi = c.x.value_or(c.n);
    for (int x = x_lo; x <= x_hi; ++x) {
        const auto bayes = make_predictive_table(x, setup, prior);
        for (int y = 0; y <= c.l; ++y) {
            csv.row({double(x), double(y), bayes.density[std::size_t(y)], plug[std::size_t(x)].density[std::size_t(y)]});
        }
    }
    sink.finish();
}

void run_risk_curve(const RunConfig& c, std::ostream& out) {
    const auto prior = prior_of(c);
    const auto& restriction = prior.restriction;
    const auto grid = restriction_grid(restriction, c.grid);
    const std::vector<PriorSpec> priors{prior.untruncated(), prior};
    const std::vector<std::string> labels{"unrestricted", "truncated"};
    const auto curve = make_risk_curve(c.n, priors, labels, grid);
    const bool with_bound = restriction.kind() == RestrictionKind::upper;
    const bool with_mc = c.mc_samples > 0;
    const auto truncated = make_estimate_table(c.n, prior);

    std::vector<std::string> columns{"p", "risk_unrestricted", "risk_truncated", "thm32_bound"};
    if (with_mc) {
        columns.emplace_back("mc_risk_truncated");
        columns.emplace_back("mc_std_error");
    }
    Sink sink(c.out, out);
    CsvWriter csv(sink.stream(), columns);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double p = grid[i];
        std::optional<double> bound;
        if (with_bound) bound = risk_difference_bound(p, c.n, c.a, c.b, restriction.upper());
        std::vector<std::optional<double>> row{p, curve.values[0][i], curve.values[1][i], bound};
        if (with_mc) {
            const auto mc = mc_risk(truncated.view(), p, c.mc_samples, c.seed + i);
            row.emplace_back(mc.estimate);
            row.emplace_back(mc.std_error);
        }
        csv.row(row);
    }
    sink.finish();
}

void run_dominance(const RunConfig& c, std::ostream& out) {
    const auto restriction = c.restriction();
    if (restriction.kind() == RestrictionKind::none) throw DomainError("dominance needs --p-bar");
    const auto report = exhaustive_dominance_check(c.n, c.a, c.b, restriction, c.grid);
    const auto& f = report.flags;
    out << "verdict: " << to_string(report.verdict) << '\n'
        << "max_difference: " << format_number(report.max_difference) << '\n'
        << "min_difference: " << format_number(report.min_difference) << '\n'
        << "worst_p: " << format_number(report.worst_p) << '\n'
        << "upper_necessary: " << flag_text(f.upper_necessary) << '\n'
        << "upper_necessary_b1: " << flag_text(f.upper_necessary_b1) << '\n'
        << "small_upper_general: " << flag_text(f.small_upper_general) << '\n'
        << "small_upper_inverse_n: " << flag_text(f.small_upper_inverse_n) << '\n'
        << "interval_upper_cap: " << flag_text(f.interval_upper_cap) << '\n'
        << "interval_log_balance: " << flag_text(f.interval_log_balance) << '\n';
    if (c.out.empty()) return;

    const bool upper = restriction.kind() == RestrictionKind::upper;
    Sink sink(c.out, out);
    CsvWriter csv(sink.stream(), {"p", "risk_unrestricted", "risk_restricted", "risk_difference", "thm32_bound",
                                  "standardized_difference"});
    for (std::size_t i = 0; i < report.p_grid.size(); ++i) {
        std::optional<double> bound;
        std::optional<double> standardized;
        if (upper) {
            bound = report.bound_curve[i];
            standardized = report.standardized_curve[i];
        }
        csv.row({report.p_grid[i], report.risk_unrestricted[i], report.risk_restricted[i], report.risk_difference[i],
                 bound, standardized});
    }
    sink.finish();
}

void run_threshold(const RunConfig& c, std::ostream& out) {
    if (c.n != 1) throw DomainError("threshold is defined for n = 1 only");
    const double root = dominance_threshold_n1(c.a);
    Sink sink(c.out, out);
    CsvWriter csv(sink.stream(), {"p_bar", "max_risk_difference"});
    for (int i = 0; i < c.grid; ++i) {
        const double p_bar = 0.5 + 0.5 * (i + 1.0) / (c.grid + 1.0);
        csv.row({p_bar, max_risk_diff_symmetric_n1(c.a, p_bar)});
    }
    sink.finish();
    out << "# root: " << format_number(root) << '\n';
}

void run_poisson_limit(const RunConfig& c, std::ostream& out) {
    PoissonConfig pc{c.r, c.s, c.a, c.lambda_bar};
    std::vector<double> K_grid;
    for (int d = 1; d <= c.k_decades; ++d) K_grid.push_back(std::pow(10.0, d));
    const auto report = limit_convergence_report(K_grid, c.lambda, pc, c.x.value_or(0));
    Sink sink(c.out, out);
    CsvWriter csv(sink.stream(), {"K", "estimator_error", "predictive_error", "risk_error"});
    for (std::size_t i = 0; i < K_grid.size(); ++i) {
        csv.row({K_grid[i], report.estimator_errors[i], report.predictive_errors[i], report.risk_errors[i]});
    }
    sink.finish();
    out << "# monotone: " << (report.monotone() ? "true" : "false") << '\n';
}

void add_model_options(CLI::App& app, RunConfig& c) {
    app.add_option("--n", c.n, "current trials");
    app.add_option("--a", c.a, "first prior exponent");
    app.add_option("--b", c.b, "second prior exponent");
    app.add_option("--p-bar", c.p_bar, "upper bound of p");
    app.add_option("--p-lo", c.p_lo, "lower bound of p (needs --p-bar)");
    app.add_option("--out", c.out, "output CSV path");
}

}  // namespace

Restriction RunConfig::restriction() const {
    if (p_lo && !p_bar) throw DomainError("--p-lo requires --p-bar");
    if (p_lo) return Restriction::interval(*p_lo, *p_bar);
    if (p_bar) return Restriction::upper(*p_bar);
    return Restriction::unrestricted();
}

void RunConfig::validate() const {
    if (n < 1) throw DomainError("--n must be at least 1");
    if (l < 1) throw DomainError("--l must be at least 1");
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("--a and --b must be positive");
    if (grid < 2) throw DomainError("--grid must be at least 2");
    if (mc_samples < 0) throw DomainError("--mc-samples must be nonnegative");
    if (x && (*x < 0 || (subcommand != "poisson-limit" && *x > n))) throw DomainError("--x must lie in {0, ..., n}");
    if (k_decades < 1 || k_decades > 7) throw DomainError("--k-decades must lie in 1..7");
    if (subcommand != "poisson-limit") (void)restriction();
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        config.validate();
        static const std::vector<std::pair<std::string, std::function<void(const RunConfig&, std::ostream&)>>> table{
            {"estimate", run_estimate},     {"predictive", run_predictive}, {"risk-curve", run_risk_curve},
            {"dominance", run_dominance},   {"threshold", run_threshold},   {"poisson-limit", run_poisson_limit}};
        for (const auto& [name, fn] : table) {
            if (name == config.subcommand) {
                fn(config, out);
                return kOk;
            }
        }
        err << "error: unknown subcommand '" << config.subcommand << "'\n";
        return kValidation;
    } catch (const OverflowError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kNumerical;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kNumerical;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bayes estimation for restricted binomial parameters"};
    app.require_subcommand(1);
    RunConfig c;

    auto* estimate = app.add_subcommand("estimate", "posterior means for every x");
    add_model_options(*estimate, c);

    auto* predictive = app.add_subcommand("predictive", "Bayesian and plug-in predictive densities");
    add_model_options(*predictive, c);
    predictive->add_option("--l", c.l, "future trials");
    predictive->add_option("--x", c.x, "observed count (default: all)");

    auto* curve = app.add_subcommand("risk-curve", "exact entropy risks over a p grid");
    add_model_options(*curve, c);
    curve->add_option("--grid", c.grid, "grid size");
    curve->add_option("--mc-samples", c.mc_samples, "Monte Carlo samples per point (0: off)");
    curve->add_option("--seed", c.seed, "Monte Carlo seed");

    auto* dominance = app.add_subcommand("dominance", "exhaustive dominance check and condition flags");
    add_model_options(*dominance, c);
    dominance->add_option("--grid", c.grid, "grid size");

    auto* threshold = app.add_subcommand("threshold", "maximum risk difference for n = 1, symmetric bounds");
    threshold->add_option("--n", c.n, "must be 1");
    threshold->add_option("--a", c.a, "prior exponent (a = b)");
    threshold->add_option("--grid", c.grid, "number of p_bar points");
    threshold->add_option("--out", c.out, "output CSV path");

    auto* poisson = app.add_subcommand("poisson-limit", "binomial to Poisson convergence errors");
    poisson->add_option("--a", c.a, "prior exponent");
    poisson->add_option("--r", c.r, "current exposure");
    poisson->add_option("--s", c.s, "future exposure");
    poisson->add_option("--lambda", c.lambda, "true rate");
    poisson->add_option("--lambda-bar", c.lambda_bar, "upper bound of the rate");
    poisson->add_option("--x", c.x, "observed count");
    poisson->add_option("--k-decades", c.k_decades, "K = 10, ..., 10^d");
    poisson->add_option("--out", c.out, "output CSV path");

    std::vector<std::string> argv_store{"rbinom"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kValidation;
    }
    c.subcommand = app.get_subcommands().front()->get_name();
    return dispatch(c, out, err);
}

}  // namespace rbinom::cli
