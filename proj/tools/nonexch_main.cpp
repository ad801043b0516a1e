// nonexch -- asymmetry measures, bounds and the coordinate-swap permutation
// test for bivariate copula data.
//
// Subcommands: measure, sample, test, simulate-level, simulate-power, demo.
// Exit codes: 0 success, 2 configuration error, 3 data error (ties/NaN),
// 4 I/O error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nonexch/errors.hpp"
#include "nonexch/experiments.hpp"
#include "nonexch/measures.hpp"

namespace {

using namespace nonexch;

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitIo = 4;

PNorm parse_pnorm(const std::string& text) {
    if (text == "inf" || text == "infinity") return PNorm::inf();
    char* end = nullptr;
    const double p = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size())
        throw ConfigError("invalid p '" + text + "' (expected a real >= 1 or 'inf')");
    return PNorm(p);
}

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    throw ConfigError("unknown format '" + text + "' (expected csv or json)");
}

void write_text(const std::string& path, const std::string& body) {
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << body;
    if (!out) throw IoError("failed to write '" + path + "'");
}

std::string fmt6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

double round6(double x) { return std::strtod(fmt6(x).c_str(), nullptr); }

int cmd_measure(const std::string& expr, const std::string& p_text, int grid, bool normalized,
                const std::string& format, const std::string& out) {
    const Copula c = parse_copula(expr);
    const PNorm p = parse_pnorm(p_text);
    const MeasureReport rep = bound_report(c, p, GridSpec{grid});
    const double mu_norm = normalized ? mu_p_normalized(c, p, GridSpec{grid})
                                      : std::numeric_limits<double>::quiet_NaN();

    if (parse_format(format) == OutputFormat::json) {
        nlohmann::ordered_json o;
        o["copula"] = c.describe();
        o["p"] = p.is_inf() ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(p.value());
        o["grid"] = rep.grid;
        o["mu_p"] = round6(rep.mu_p);
        if (normalized) o["mu_p_normalized"] = round6(mu_norm);
        o["sigma_p"] = round6(rep.sigma_p);
        o["rho"] = round6(rep.rho);
        o["bound1_slack"] = round6(rep.bound1_slack);
        if (rep.bound2_slack) o["bound2_slack"] = round6(*rep.bound2_slack);
        write_text(out, o.dump(2) + "\n");
    } else {
        std::string header = "copula,p,grid,mu_p,sigma_p,rho,bound1_slack,bound2_slack";
        std::string row = c.describe() + "," + (p.is_inf() ? "inf" : fmt6(p.value())) + "," +
                          std::to_string(rep.grid) + "," + fmt6(rep.mu_p) + "," +
                          fmt6(rep.sigma_p) + "," + fmt6(rep.rho) + "," + fmt6(rep.bound1_slack) +
                          "," + (rep.bound2_slack ? fmt6(*rep.bound2_slack) : "");
        if (normalized) {
            header += ",mu_p_normalized";
            row += "," + fmt6(mu_norm);
        }
        write_text(out, header + "\n" + row + "\n");
    }
    return 0;
}

int cmd_sample(const std::string& family, double param, int n, std::uint64_t seed,
               const std::string& out) {
    RngStream rng(seed);
    Sample s;
    if (family == "m1_mixture") {
        s = sample_m1_mixture(param, n, rng);
    } else {
        s = sample(parse_family(family, param), n, rng);
    }
    write_sample_csv(s, out);
    return 0;
}

int cmd_test(const std::string& input, const std::string& delim, const TestConfig& cfg,
             const std::string& tie_policy, const std::string& format, const std::string& out) {
    if (delim.size() != 1) throw ConfigError("delimiter must be a single character");
    const Sample s = read_csv_sample(input, delim[0]);

    PseudoSample ps = [&] {
        if (tie_policy == "error") return pseudo_observations(s);
        if (tie_policy != "random")
            throw ConfigError("unknown tie policy '" + tie_policy + "' (error|random)");
        RngStream tie_rng = RngStream(cfg.seed).split(0);
        bool broke = false;
        PseudoSample r = pseudo_observations(s, TiePolicy::random, &tie_rng, &broke);
        if (broke)
            std::cerr << "warning: tied values were broken by random jitter; "
                         "the statistic's null distribution assumes continuous data\n";
        return r;
    }();

    const TestResult res = run_test(ps, cfg);
    nlohmann::ordered_json o;
    o["t_n"] = round6(res.t_n);
    o["critical_value"] = round6(res.critical_value);
    o["p_value"] = round6(res.p_value);
    o["reject"] = res.reject;
    o["tau_hat"] = round6(sample_kendall(ps));
    o["rho_hat"] = round6(sample_spearman(ps));
    o["n"] = ps.size();
    o["B"] = res.B;
    o["seed"] = res.seed;
    if (res.permuted_stats) {
        auto arr = nlohmann::ordered_json::array();
        for (double t : *res.permuted_stats) arr.push_back(round6(t));
        o["permuted_stats"] = std::move(arr);
    }
    if (parse_format(format) == OutputFormat::csv) {
        std::string header, row;
        for (auto it = o.begin(); it != o.end(); ++it) {
            if (it.key() == "permuted_stats") continue;
            if (!header.empty()) {
                header += ',';
                row += ',';
            }
            header += it.key();
            row += it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
        }
        write_text(out, header + "\n" + row + "\n");
    } else {
        write_text(out, o.dump(2) + "\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-exchangeability measures and the permutation test of copula symmetry"};
    app.require_subcommand(1);

    std::string expr = "pi", p_text = "1", format = "json", out = "-";
    int grid = 200;
    bool normalized = false;
    auto* measure = app.add_subcommand("measure", "Asymmetry/dependence report for a copula");
    measure->add_option("--copula", expr, "Copula expression, e.g. mix_t:0.75:clayton:2")
        ->required();
    measure->add_option("--p", p_text, "L^p exponent (real >= 1 or 'inf')");
    measure->add_option("--grid", grid, "Grid points per axis");
    measure->add_flag("--normalized", normalized, "Also report mu_p / K_mu(p)");
    measure->add_option("--format", format, "Output format: json|csv");
    measure->add_option("--out", out, "Output path ('-' = stdout)");

    std::string family = "independence", sample_out = "-";
    double param = 0.0;
    int n = 1000;
    std::uint64_t seed = 0;
    auto* smp = app.add_subcommand("sample", "Draw a seeded sample from a copula family");
    smp->add_option("--family", family,
                    "independence|gaussian|clayton|fgm|m_theta|m1_mixture")
        ->required();
    smp->add_option("--param", param, "Family parameter (mixture weight for m1_mixture)");
    smp->add_option("--n", n, "Sample size")->required();
    smp->add_option("--seed", seed, "RNG seed");
    smp->add_option("--out", sample_out, "Output CSV path ('-' = stdout)");

    std::string input, delim = ",", ties = "error", test_format = "json", test_out = "-";
    TestConfig tc;
    auto* tst = app.add_subcommand("test", "Permutation test of exchangeability on CSV data");
    tst->add_option("--input", input, "CSV file with two numeric columns")->required();
    tst->add_option("--delimiter", delim, "Field delimiter");
    tst->add_option("--p", tc.stat.p, "Statistic exponent (finite)");
    tst->add_option("--grid", tc.stat.grid.points, "Riemann grid points per axis");
    tst->add_option("--B", tc.B, "Permutation replicates");
    tst->add_option("--alpha", tc.alpha, "Significance level");
    tst->add_option("--seed", tc.seed, "RNG seed");
    tst->add_option("--jobs", tc.jobs, "Worker threads (0 = hardware)");
    tst->add_flag("--keep-replicates", tc.keep_replicates, "Include permuted statistics");
    tst->add_flag("--rerank-permuted", tc.rerank_permuted,
                  "Re-rank margins after each swap (sensitivity analysis)");
    tst->add_option("--break-ties", ties, "Tie policy: error|random");
    tst->add_option("--format", test_format, "Output format: json|csv");
    tst->add_option("--out", test_out, "Output path ('-' = stdout)");

    // Monte Carlo subcommands share a config skeleton.
    std::string mc_out = "-", mc_format = "csv", mc_families;
    std::string mc_thetas, mc_sizes;
    int mc_R = -1, mc_B = -1, mc_grid = -1, mc_n = -1, mc_jobs = 0, mc_repeat = 1;
    double mc_alpha = -1.0, mc_p = -1.0;
    std::uint64_t mc_seed = 0;
    auto add_mc_options = [&](CLI::App* cmd) {
        cmd->add_option("--seed", mc_seed, "Master seed");
        cmd->add_option("--R", mc_R, "Monte Carlo replications");
        cmd->add_option("--B", mc_B, "Permutation replicates per test");
        cmd->add_option("--alpha", mc_alpha, "Significance level");
        cmd->add_option("--p", mc_p, "Statistic exponent");
        cmd->add_option("--grid", mc_grid, "Riemann grid points per axis");
        cmd->add_option("--jobs", mc_jobs, "Worker threads (0 = hardware)");
        cmd->add_option("--out", mc_out, "Output path ('-' = stdout)");
        cmd->add_option("--format", mc_format, "Output format: csv|json");
    };
    auto* lvl = app.add_subcommand("simulate-level", "Empirical level under symmetric copulas");
    lvl->add_option("--families", mc_families,
                    "Comma list family:param (default gaussian:0.5,clayton:2,fgm:0.5)");
    lvl->add_option("--n", mc_n, "Sample size (default 100)");
    add_mc_options(lvl);
    auto* pwr = app.add_subcommand("simulate-power", "Empirical power against m_theta");
    pwr->add_option("--thetas", mc_thetas, "Comma list (default 0.166...,0.25,0.333...)");
    pwr->add_option("--sizes", mc_sizes, "Comma list (default 50,100,200,400)");
    add_mc_options(pwr);
    auto* dmo = app.add_subcommand("demo", "Three illustrative tests at n = 300");
    dmo->add_option("--n", mc_n, "Sample size (default 300)");
    dmo->add_option("--repeat", mc_repeat, "Repeat each scenario and report frequencies");
    add_mc_options(dmo);

    try {
        app.parse(argc, argv);

        auto apply_overrides = [&](ExperimentConfig cfg) {
            if (mc_R > 0) cfg.replications = mc_R;
            if (mc_B > 0) cfg.test.B = mc_B;
            if (mc_alpha > 0.0) cfg.test.alpha = mc_alpha;
            if (mc_p > 0.0) cfg.test.stat.p = mc_p;
            if (mc_grid > 0) cfg.test.stat.grid.points = mc_grid;
            if (mc_n > 0) cfg.sizes = {mc_n};
            cfg.jobs = mc_jobs;
            return cfg;
        };
        auto split_list = [](const std::string& text) {
            std::vector<std::string> out;
            std::string cur;
            for (char c : text) {
                if (c == ',') {
                    out.push_back(cur);
                    cur.clear();
                } else {
                    cur.push_back(c);
                }
            }
            if (!cur.empty()) out.push_back(cur);
            return out;
        };

        if (measure->parsed())
            return cmd_measure(expr, p_text, grid, normalized, format, out);
        if (smp->parsed()) return cmd_sample(family, param, n, seed, sample_out);
        if (tst->parsed()) return cmd_test(input, delim, tc, ties, test_format, test_out);
        if (lvl->parsed()) {
            ExperimentConfig cfg = apply_overrides(level_defaults(mc_seed));
            if (!mc_families.empty()) {
                cfg.families.clear();
                for (const auto& item : split_list(mc_families)) {
                    const auto pos = item.find(':');
                    if (pos == std::string::npos)
                        throw ConfigError("family spec must be name:param, got '" + item + "'");
                    cfg.families.push_back(parse_family(
                        item.substr(0, pos),
                        std::strtod(item.substr(pos + 1).c_str(), nullptr)));
                }
            }
            write_results(run_level(cfg), parse_format(mc_format), mc_out);
            return 0;
        }
        if (pwr->parsed()) {
            ExperimentConfig cfg = apply_overrides(power_defaults(mc_seed));
            if (!mc_thetas.empty()) {
                cfg.thetas.clear();
                for (const auto& item : split_list(mc_thetas))
                    cfg.thetas.push_back(std::strtod(item.c_str(), nullptr));
            }
            if (!mc_sizes.empty()) {
                cfg.sizes.clear();
                for (const auto& item : split_list(mc_sizes))
                    cfg.sizes.push_back(static_cast<int>(std::strtol(item.c_str(), nullptr, 10)));
            }
            write_results(run_power(cfg), parse_format(mc_format), mc_out);
            return 0;
        }
        if (dmo->parsed()) {
            ExperimentConfig cfg = apply_overrides(demo_defaults(mc_seed));
            cfg.replications = mc_repeat;
            write_results(run_demo(cfg), parse_format(mc_format), mc_out);
            return 0;
        }
        return kExitConfig;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    } catch (const TieError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
}
