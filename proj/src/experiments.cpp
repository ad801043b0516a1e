#include "nonexch/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "nonexch/errors.hpp"
#include "parallel.hpp"

namespace nonexch {

namespace {

std::string fmt6(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

double round6(double x) {
    return std::strtod(fmt6(x).c_str(), nullptr);
}

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::level: return "level";
        case Scenario::power: return "power";
        case Scenario::demo: return "demo";
    }
    return "?";
}

// Content-derived row key: reordering or dropping rows leaves the streams of
// the remaining rows untouched.
std::uint64_t row_key(const std::string& scenario, const std::string& family, double param,
                      int n) {
    std::uint64_t h = 1469598103934665603ull;
    auto feed_bytes = [&h](const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) h = (h ^ p[i]) * 1099511628211ull;
    };
    feed_bytes(scenario.data(), scenario.size());
    feed_bytes("|", 1);
    feed_bytes(family.data(), family.size());
    std::uint64_t pb;
    static_assert(sizeof(pb) == sizeof(param));
    std::memcpy(&pb, &param, sizeof(pb));
    feed_bytes(&pb, sizeof(pb));
    feed_bytes(&n, sizeof(n));
    return h;
}

struct ReplicateSeeds {
    RngStream data;
    std::uint64_t test;
};

ReplicateSeeds replicate_seeds(std::uint64_t master, std::uint64_t key, int r) {
    const auto rr = static_cast<std::uint64_t>(r);
    return {RngStream(master, mix64(key)).split(2 * rr),
            mix64(master ^ mix64(key ^ (2 * rr + 1)))};
}

void validate_common(const ExperimentConfig& cfg, Scenario expected) {
    if (cfg.scenario != expected)
        throw ConfigError("experiment config is tagged for a different scenario");
    if (cfg.replications < 1) throw ConfigError("need at least one replication");
    if (cfg.sizes.empty()) throw ConfigError("no sample sizes configured");
    for (int n : cfg.sizes)
        if (n < 2) throw ConfigError("sample sizes must be at least 2");
}

// One Monte Carlo row: R replicate tests on fresh samples of size n.
ResultRow run_row(const ExperimentConfig& cfg, const FamilySpec& spec, int n) {
    ResultRow row;
    row.scenario = scenario_name(cfg.scenario);
    row.family = spec.name();
    row.param = spec.param;
    row.n = n;
    row.R = cfg.replications;
    row.B = cfg.test.B;
    row.seed = cfg.test.seed;

    const std::uint64_t key = row_key(row.scenario, row.family, row.param, n);
    const int R = cfg.replications;
    std::vector<double> tn(static_cast<std::size_t>(R));
    std::vector<std::uint8_t> rejected(static_cast<std::size_t>(R));
    const bool demo_detail = cfg.scenario == Scenario::demo;

    detail::parallel_for(static_cast<std::size_t>(R), cfg.jobs, [&](std::size_t r) {
        auto seeds = replicate_seeds(cfg.test.seed, key, static_cast<int>(r));
        const Sample s = sample(spec, n, seeds.data);
        TestConfig tc = cfg.test;
        tc.seed = seeds.test;
        tc.jobs = 1;  // replicate-level parallelism only
        const PseudoSample ps = pseudo_observations(s);
        const TestResult res = run_test(ps, tc);
        tn[r] = res.t_n;
        rejected[r] = res.reject ? 1 : 0;
        if (demo_detail && r == 0) {
            row.t_n = res.t_n;
            row.critical_value = res.critical_value;
            row.p_value = res.p_value;
            row.reject = res.reject;
            row.tau_hat = sample_kendall(ps);
            row.rho_hat = sample_spearman(ps);
        }
    });

    int rej = 0;
    double sum = 0.0;
    for (int r = 0; r < R; ++r) {
        rej += rejected[static_cast<std::size_t>(r)];
        sum += tn[static_cast<std::size_t>(r)];
    }
    row.rejections = rej;
    row.rate = static_cast<double>(rej) / R;
    row.mean_tn = sum / R;
    return row;
}

}  // namespace

ExperimentConfig level_defaults(std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.scenario = Scenario::level;
    cfg.families = {{Family::gaussian, 0.5}, {Family::clayton, 2.0}, {Family::fgm, 0.5}};
    cfg.sizes = {100};
    cfg.replications = 100;
    cfg.test = TestConfig{.stat = {1.0, GridSpec{35}}, .B = 299, .alpha = 0.05, .seed = seed};
    return cfg;
}

ExperimentConfig power_defaults(std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.scenario = Scenario::power;
    cfg.thetas = {1.0 / 6.0, 1.0 / 4.0, 1.0 / 3.0};
    cfg.sizes = {50, 100, 200, 400};
    cfg.replications = 80;
    cfg.test = TestConfig{.stat = {1.0, GridSpec{35}}, .B = 299, .alpha = 0.05, .seed = seed};
    return cfg;
}

ExperimentConfig demo_defaults(std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.scenario = Scenario::demo;
    cfg.families = {{Family::gaussian, 0.6}, {Family::m_theta, 1.0 / 6.0},
                    {Family::m_theta, 1.0 / 3.0}};
    cfg.sizes = {300};
    cfg.replications = 1;
    cfg.test = TestConfig{.stat = {1.0, GridSpec{35}}, .B = 399, .alpha = 0.05, .seed = seed};
    return cfg;
}

std::vector<ResultRow> run_level(const ExperimentConfig& cfg) {
    validate_common(cfg, Scenario::level);
    if (cfg.families.empty()) throw ConfigError("no families configured");
    std::vector<ResultRow> rows;
    rows.reserve(cfg.families.size());
    for (const auto& spec : cfg.families) rows.push_back(run_row(cfg, spec, cfg.sizes.front()));
    return rows;
}

std::vector<ResultRow> run_power(const ExperimentConfig& cfg) {
    validate_common(cfg, Scenario::power);
    if (cfg.thetas.empty()) throw ConfigError("no asymmetry parameters configured");
    std::vector<ResultRow> rows;
    rows.reserve(cfg.thetas.size() * cfg.sizes.size());
    for (double theta : cfg.thetas)
        for (int n : cfg.sizes) rows.push_back(run_row(cfg, {Family::m_theta, theta}, n));
    return rows;
}

std::vector<ResultRow> run_demo(const ExperimentConfig& cfg) {
    validate_common(cfg, Scenario::demo);
    if (cfg.families.empty()) throw ConfigError("no families configured");
    std::vector<ResultRow> rows;
    rows.reserve(cfg.families.size());
    for (const auto& spec : cfg.families) rows.push_back(run_row(cfg, spec, cfg.sizes.front()));
    return rows;
}

namespace {

constexpr const char* kCsvHeader =
    "scenario,family,param,n,R,B,rejections,rate,mean_tn,seed,"
    "t_n,critical_value,p_value,reject,tau_hat,rho_hat";

void write_csv(const std::vector<ResultRow>& rows, std::ostream& os) {
    os << kCsvHeader << "\n";
    for (const auto& r : rows) {
        os << r.scenario << ',' << r.family << ',' << fmt6(r.param) << ',' << r.n << ',' << r.R
           << ',' << r.B << ',' << r.rejections << ',' << fmt6(r.rate) << ',' << fmt6(r.mean_tn)
           << ',' << r.seed << ',';
        auto opt = [&](const std::optional<double>& v) { if (v) os << fmt6(*v); };
        opt(r.t_n);
        os << ',';
        opt(r.critical_value);
        os << ',';
        opt(r.p_value);
        os << ',';
        if (r.reject) os << (*r.reject ? "true" : "false");
        os << ',';
        opt(r.tau_hat);
        os << ',';
        opt(r.rho_hat);
        os << "\n";
    }
}

void write_json(const std::vector<ResultRow>& rows, std::ostream& os) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["scenario"] = r.scenario;
        o["family"] = r.family;
        o["param"] = round6(r.param);
        o["n"] = r.n;
        o["R"] = r.R;
        o["B"] = r.B;
        o["rejections"] = r.rejections;
        o["rate"] = round6(r.rate);
        o["mean_tn"] = round6(r.mean_tn);
        o["seed"] = r.seed;
        if (r.t_n) o["t_n"] = round6(*r.t_n);
        if (r.critical_value) o["critical_value"] = round6(*r.critical_value);
        if (r.p_value) o["p_value"] = round6(*r.p_value);
        if (r.reject) o["reject"] = *r.reject;
        if (r.tau_hat) o["tau_hat"] = round6(*r.tau_hat);
        if (r.rho_hat) o["rho_hat"] = round6(*r.rho_hat);
        arr.push_back(std::move(o));
    }
    os << arr.dump(2) << "\n";
}

}  // namespace

void write_results(const std::vector<ResultRow>& rows, OutputFormat format, std::ostream& os) {
    if (format == OutputFormat::csv)
        write_csv(rows, os);
    else
        write_json(rows, os);
    if (!os) throw IoError("failed to write results");
}

void write_results(const std::vector<ResultRow>& rows, OutputFormat format,
                   const std::string& path) {
    if (path.empty() || path == "-") {
        write_results(rows, format, std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);  // binary: keep LF on every platform
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_results(rows, format, out);
}

namespace {

std::vector<std::string> split_tokens(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string& tok, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size() || std::isnan(v))
        throw ConfigError(std::string("expected a number for ") + what + ", got '" + tok + "'");
    return v;
}

Copula parse_expr(const std::vector<std::string>& toks, std::size_t& pos) {
    if (pos >= toks.size()) throw ConfigError("truncated copula expression");
    const std::string op = toks[pos++];
    auto num = [&](const char* what) {
        if (pos >= toks.size()) throw ConfigError("truncated copula expression");
        return parse_number(toks[pos++], what);
    };
    if (op == "pi" || op == "independence") return Copula::independence();
    if (op == "m" || op == "frechet_upper") return Copula::frechet_upper();
    if (op == "w" || op == "frechet_lower") return Copula::frechet_lower();
    if (op == "gaussian") return Copula::gaussian(num("gaussian correlation"));
    if (op == "clayton") return Copula::clayton(num("clayton parameter"));
    if (op == "fgm") return Copula::fgm(num("fgm parameter"));
    if (op == "m_theta") return Copula::m_theta(num("m_theta parameter"));
    if (op == "perturbed") return Copula::perturbed_product(num("perturbation coefficient"));
    if (op == "transpose") return parse_expr(toks, pos).transpose();
    if (op == "survival") return parse_expr(toks, pos).survival();
    if (op == "mix_t") {
        const double a = num("mixing weight");
        return mix_transpose(parse_expr(toks, pos), a);
    }
    if (op == "mix_s") {
        const double a = num("mixing weight");
        Copula c = parse_expr(toks, pos);
        Copula s = parse_expr(toks, pos);
        return mix_symmetric(c, s, a);
    }
    if (op == "convex3") {
        const double beta = num("beta");
        const double gamma = num("gamma");
        Copula c = parse_expr(toks, pos);
        Copula s = parse_expr(toks, pos);
        return convex3(c, beta, gamma, s);
    }
    throw ConfigError("unknown copula constructor '" + op + "'");
}

}  // namespace

Copula parse_copula(const std::string& text) {
    const auto toks = split_tokens(text, ':');
    std::size_t pos = 0;
    Copula c = parse_expr(toks, pos);
    if (pos != toks.size())
        throw ConfigError("trailing tokens in copula expression '" + text + "'");
    return c;
}

Sample read_csv_sample(std::istream& in, char delimiter) {
    Sample s;
    std::string line;
    bool first = true;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_tokens(line, delimiter);
        if (fields.size() < 2)
            throw DataError("line " + std::to_string(lineno) + ": expected two columns");
        auto parse_field = [&](const std::string& f, double& out) {
            char* end = nullptr;
            out = std::strtod(f.c_str(), &end);
            while (end && (*end == ' ' || *end == '\t')) ++end;
            return !f.empty() && end == f.c_str() + f.size();
        };
        double x = 0.0, y = 0.0;
        const bool ok = parse_field(fields[0], x) && parse_field(fields[1], y);
        if (!ok) {
            if (first) {  // single header line
                first = false;
                continue;
            }
            throw DataError("line " + std::to_string(lineno) + ": non-numeric value");
        }
        first = false;
        if (std::isnan(x) || std::isnan(y))
            throw DataError("line " + std::to_string(lineno) + ": NaN entry");
        s.xy.emplace_back(x, y);
    }
    if (s.size() < 2) throw DataError("sample must contain at least 2 observations");
    return s;
}

Sample read_csv_sample(const std::string& path, char delimiter) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_csv_sample(in, delimiter);
}

void write_sample_csv(const Sample& s, std::ostream& os) {
    os << "x,y\n";
    char buf[64];
    for (const auto& [x, y] : s.xy) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", x, y);
        os << buf;
    }
    if (!os) throw IoError("failed to write sample");
}

void write_sample_csv(const Sample& s, const std::string& path) {
    if (path.empty() || path == "-") {
        write_sample_csv(s, std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_sample_csv(s, out);
}

}  // namespace nonexch
