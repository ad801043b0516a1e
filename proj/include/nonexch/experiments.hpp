#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nonexch/permutation_test.hpp"
#include "nonexch/samplers.hpp"

namespace nonexch {

enum class Scenario { level, power, demo };
enum class OutputFormat { csv, json };

/// Declarative Monte Carlo scenario. Replicate r of a row draws all of its
/// randomness from streams keyed by (test.seed, row content, r), so rows can
/// be dropped or reordered without disturbing the others.
struct ExperimentConfig {
    Scenario scenario = Scenario::level;
    std::vector<FamilySpec> families;  ///< level/demo rows
    std::vector<double> thetas;        ///< power rows (m_theta family)
    std::vector<int> sizes;            ///< sample sizes; level/demo use sizes[0]
    int replications = 100;
    TestConfig test{};                 ///< p, grid, B, alpha and the master seed
    int jobs = 0;
};

/// Table-reproduction defaults: level (n=100, R=100, B=299), power
/// (theta in {1/6,1/4,1/3} x n in {50,100,200,400}, R=80), demo
/// (gaussian 0.6, m_theta 1/6, m_theta 1/3 at n=300, B=399).
ExperimentConfig level_defaults(std::uint64_t seed);
ExperimentConfig power_defaults(std::uint64_t seed);
ExperimentConfig demo_defaults(std::uint64_t seed);

struct ResultRow {
    std::string scenario;
    std::string family;
    double param = 0.0;
    int n = 0;
    int R = 0;
    int B = 0;
    int rejections = 0;
    double rate = 0.0;
    double mean_tn = 0.0;
    std::uint64_t seed = 0;
    // demo detail (first replicate)
    std::optional<double> t_n, critical_value, p_value;
    std::optional<bool> reject;
    std::optional<double> tau_hat, rho_hat;
};

std::vector<ResultRow> run_level(const ExperimentConfig& cfg);
std::vector<ResultRow> run_power(const ExperimentConfig& cfg);
std::vector<ResultRow> run_demo(const ExperimentConfig& cfg);

/// Fixed-schema CSV (header always present, floats at 6 significant digits,
/// LF newlines) or a JSON array with the same fields.
void write_results(const std::vector<ResultRow>& rows, OutputFormat format, std::ostream& os);
/// path "-" writes to stdout; throws IoError on failure.
void write_results(const std::vector<ResultRow>& rows, OutputFormat format,
                   const std::string& path);

/// Textual copula constructor syntax used by the CLI. Prefix notation with
/// ':' separators:
///   pi | m | w | gaussian:R | clayton:T | fgm:T | m_theta:T | perturbed:C
///   transpose:EXPR | survival:EXPR | mix_t:A:EXPR | mix_s:A:EXPR:SEXPR
///   convex3:B:G:EXPR:SEXPR
/// e.g. "mix_t:0.75:clayton:2". Round-trips with Copula::describe().
Copula parse_copula(const std::string& text);

/// Two numeric columns, optional single header line, configurable delimiter.
Sample read_csv_sample(std::istream& in, char delimiter = ',');
Sample read_csv_sample(const std::string& path, char delimiter = ',');

/// Emit a sample as CSV ("x,y" header, full round-trip precision).
void write_sample_csv(const Sample& s, std::ostream& os);
void write_sample_csv(const Sample& s, const std::string& path);

}  // namespace nonexch
