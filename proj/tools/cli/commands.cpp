#include "cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli/suites.hpp"
#include "cli/symbol_parser.hpp"

namespace shiftreal::cli {
namespace {

struct Common {
    std::string symbol;
    int n = 16384;
    double dt = 1.0 / 256.0;
    double tol = 1e-6;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "json";
    bool timing = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_common(CLI::App* app, Common& c, bool needs_symbol)
{
    auto* sym = app->add_option("--symbol", c.symbol, "transfer symbol literal, e.g. rational:1/1,1 or delay:1");
    if (needs_symbol) sym->required();
    app->add_option("--n", c.n, "number of grid samples (power of two)")->capture_default_str();
    app->add_option("--dt", c.dt, "grid spacing")->capture_default_str();
    app->add_option("--tol", c.tol, "membership tolerance for inner and model-space checks")->capture_default_str();
    app->add_option("--seed", c.seed, "seed for random inputs")->capture_default_str();
    app->add_option("--out", c.out, "report file (default: standard output)");
    app->add_option("--format", c.format, "report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app->add_flag("--timing", c.timing, "record wall time in the report (breaks byte determinism)");
}

GridConfig make_grid(const Common& c)
{
    GridConfig g;
    g.n = c.n;
    g.dt = c.dt;
    try {
        g.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return g;
}

SuiteInput make_input(const Common& c)
{
    try {
        return SuiteInput{c.symbol, parse_symbol(c.symbol), make_grid(c), c.seed, c.tol};
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
}

// Reads rows t,re,im; row k must sit at t = k*dt.
TimeSignal read_input(const std::string& path, const GridConfig& g)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open input file '" + path + "'");
    std::string line;
    std::vector<cplx> values;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line.find_first_of("0123456789") != 0 && line[0] != '-' && line[0] != '.') continue;  // header
        }
        std::stringstream ss(line);
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c, ','))
            throw UsageError("input rows need three columns t,re,im: '" + line + "'");
        double t, re, im;
        try {
            t = std::stod(a);
            re = std::stod(b);
            im = std::stod(c);
        } catch (const std::exception&) {
            throw UsageError("input row is not numeric: '" + line + "'");
        }
        const double expect = g.time(static_cast<int>(values.size()));
        if (std::abs(t - expect) > 1e-9 * std::max(1.0, std::abs(expect)))
            throw UsageError("input row " + std::to_string(values.size()) + " is at t = " + a + ", expected " +
                             format_double(expect) + " (rows must follow the grid from t = 0)");
        values.emplace_back(re, im);
    }
    if (static_cast<int>(values.size()) > g.half()) throw UsageError("input is longer than the causal grid (n/2 rows)");
    CVector v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) v[Eigen::Index(i)] = values[i];
    return TimeSignal::causal_from(g, v);
}

int emit(SuiteReport report, const Common& c, double seconds, std::ostream& out)
{
    if (c.timing) report.wall_seconds = seconds;
    const std::string text = c.format == "csv" ? to_csv(report) : to_json(report);
    if (c.out.empty()) {
        out << text;
    } else {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) throw UsageError("cannot write '" + c.out + "'");
        f << text;
    }
    return report.any_fail() ? 1 : 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Shift realizations of transfer functions on a sampled Hardy space"};
    app.require_subcommand(1);

    Common c;
    int dim = 64;
    double alpha = 1.0, rho = 1.0;
    std::string mu_text = "1";
    std::string input;
    int n_max = 5;

    auto* verify = app.add_subcommand("verify", "full identity suite for one symbol");
    add_common(verify, c, true);
    auto* hankel = app.add_subcommand("hankel-svd", "singular values of the discretized Hankel operator");
    add_common(hankel, c, true);
    hankel->add_option("--dim", dim, "number of singular values reported")->capture_default_str();
    auto* stab = app.add_subcommand("stability", "exponential stability and group verdicts");
    add_common(stab, c, true);
    stab->add_option("--alpha", alpha, "strip width")->capture_default_str();
    stab->add_option("--rho", rho, "half-plane abscissa")->capture_default_str();
    auto* sim = app.add_subcommand("simulate", "output of the realization for an input read from CSV");
    add_common(sim, c, true);
    sim->add_option("--input", input, "CSV with columns t,re,im on the grid")->required();
    sim->add_option("--mu", mu_text, "point of the resolvent set used in the output formula")->capture_default_str();
    auto* model = app.add_subcommand("model-space", "suite for inner symbols");
    add_common(model, c, true);
    auto* weighted = app.add_subcommand("weighted-demo", "weighted norm growth and inequivalence table");
    add_common(weighted, c, false);
    weighted->add_option("--n-max", n_max, "last bump index")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
    try {
        SuiteReport report;
        if (*verify) {
            report = verify_suite(make_input(c));
        } else if (*hankel) {
            report = hankel_svd_report(make_input(c), dim);
        } else if (*stab) {
            report = stability_report(make_input(c), alpha, rho);
        } else if (*sim) {
            SuiteInput in = make_input(c);
            cplx mu;
            try {
                mu = parse_complex(mu_text);
            } catch (const ParseError& e) {
                throw UsageError(e.what());
            }
            report = simulate_report(in, read_input(input, in.grid), mu);
        } else if (*model) {
            report = model_space_suite(make_input(c));
        } else {
            report = weighted_demo_report(make_grid(c), c.seed, n_max);
        }
        return emit(std::move(report), c, elapsed(), out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace shiftreal::cli
