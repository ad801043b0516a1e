// Python bindings for the nonexch core: copula expressions, asymmetry
// measures, the empirical statistic, the permutation test, samplers and the
// Monte Carlo harness.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>

#include "nonexch/errors.hpp"
#include "nonexch/experiments.hpp"
#include "nonexch/measures.hpp"
#include "nonexch/normal.hpp"
#include "nonexch/permutation_test.hpp"

namespace py = pybind11;
using namespace nonexch;

namespace {

PNorm pnorm_from(double p) { return std::isinf(p) ? PNorm::inf() : PNorm(p); }

Sample sample_from(const std::vector<std::pair<double, double>>& xy) {
    return Sample{xy};
}

py::dict row_to_dict(const ResultRow& r) {
    py::dict d;
    d["scenario"] = r.scenario;
    d["family"] = r.family;
    d["param"] = r.param;
    d["n"] = r.n;
    d["R"] = r.R;
    d["B"] = r.B;
    d["rejections"] = r.rejections;
    d["rate"] = r.rate;
    d["mean_tn"] = r.mean_tn;
    d["seed"] = r.seed;
    if (r.t_n) d["t_n"] = *r.t_n;
    if (r.critical_value) d["critical_value"] = *r.critical_value;
    if (r.p_value) d["p_value"] = *r.p_value;
    if (r.reject) d["reject"] = *r.reject;
    if (r.tau_hat) d["tau_hat"] = *r.tau_hat;
    if (r.rho_hat) d["rho_hat"] = *r.rho_hat;
    return d;
}

}  // namespace

PYBIND11_MODULE(_nonexch, m) {
    m.doc() = "Non-exchangeability measures, sharp bounds and the coordinate-swap "
              "permutation test for bivariate copulas";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

    py::class_<Rect>(m, "Rect")
        .def(py::init<double, double, double, double>(), py::arg("u_lo"), py::arg("u_hi"),
             py::arg("v_lo"), py::arg("v_hi"));

    py::class_<Copula>(m, "Copula")
        .def_static("independence", &Copula::independence)
        .def_static("frechet_upper", &Copula::frechet_upper)
        .def_static("frechet_lower", &Copula::frechet_lower)
        .def_static("gaussian", &Copula::gaussian, py::arg("r"))
        .def_static("clayton", &Copula::clayton, py::arg("theta"))
        .def_static("fgm", &Copula::fgm, py::arg("theta"))
        .def_static("m_theta", &Copula::m_theta, py::arg("theta"))
        .def_static("perturbed_product", &Copula::perturbed_product, py::arg("c"))
        .def("eval", &Copula::eval, py::arg("u"), py::arg("v"))
        .def("__call__", &Copula::eval, py::arg("u"), py::arg("v"))
        .def("volume", &Copula::volume, py::arg("rect"))
        .def("transpose", &Copula::transpose)
        .def("survival", &Copula::survival)
        .def("symmetric_by_construction", &Copula::symmetric_by_construction)
        .def("grid_asymmetry", &Copula::grid_asymmetry, py::arg("grid_points") = 48)
        .def("describe", &Copula::describe)
        .def("__repr__", [](const Copula& c) { return "Copula(" + c.describe() + ")"; });

    m.attr("PERTURBATION_C_MAX") = kPerturbationCmax;

    m.def("mix_transpose", &mix_transpose, py::arg("c"), py::arg("alpha"));
    m.def("mix_symmetric", &mix_symmetric, py::arg("c"), py::arg("s"), py::arg("alpha"));
    m.def("convex3", &convex3, py::arg("c"), py::arg("beta"), py::arg("gamma"), py::arg("s"));
    m.def("parse_copula", &parse_copula, py::arg("text"));

    m.def("norm_cdf", &norm_cdf, py::arg("x"));
    m.def("norm_quantile", &norm_quantile, py::arg("p"));

    m.def(
        "c_p", [](double p) { return c_p(pnorm_from(p)); }, py::arg("p"));
    m.def(
        "k_mu", [](double p) { return k_mu(pnorm_from(p)); }, py::arg("p"));
    m.def(
        "mu_p",
        [](const Copula& c, double p, int grid) { return mu_p(c, pnorm_from(p), GridSpec{grid}); },
        py::arg("c"), py::arg("p") = 1.0, py::arg("grid") = 200);
    m.def(
        "mu_p_normalized",
        [](const Copula& c, double p, int grid) {
            return mu_p_normalized(c, pnorm_from(p), GridSpec{grid});
        },
        py::arg("c"), py::arg("p") = 1.0, py::arg("grid") = 200);
    m.def(
        "sigma_p",
        [](const Copula& c, double p, int grid) {
            return sigma_p(c, pnorm_from(p), GridSpec{grid});
        },
        py::arg("c"), py::arg("p") = 1.0, py::arg("grid") = 200);
    m.def(
        "spearman_rho",
        [](const Copula& c, int grid) { return spearman_rho(c, GridSpec{grid}); }, py::arg("c"),
        py::arg("grid") = 200);
    m.def("rho_m_theta", &rho_m_theta, py::arg("theta"));
    m.def("tau_m_theta", &tau_m_theta, py::arg("theta"));
    m.def(
        "bound_report",
        [](const Copula& c, double p, int grid) {
            const MeasureReport r = bound_report(c, pnorm_from(p), GridSpec{grid});
            py::dict d;
            d["mu_p"] = r.mu_p;
            d["sigma_p"] = r.sigma_p;
            d["rho"] = r.rho;
            d["p"] = r.p.value();
            d["grid"] = r.grid;
            d["bound1_slack"] = r.bound1_slack;
            if (r.bound2_slack) d["bound2_slack"] = *r.bound2_slack;
            return d;
        },
        py::arg("c"), py::arg("p") = 1.0, py::arg("grid") = 200);
    m.def("feasible_rho_range", &feasible_rho_range, py::arg("mu0"));
    m.def("prescribe_alpha", &prescribe_alpha, py::arg("mu0"), py::arg("muC"));
    m.def("prescribe_alpha_symmetric", &prescribe_alpha_symmetric, py::arg("mu0"),
          py::arg("muC"));

    py::class_<PseudoSample>(m, "PseudoSample")
        .def(py::init<std::vector<std::pair<double, double>>, bool>(), py::arg("uv"),
             py::arg("ranked"))
        .def_property_readonly("ranked", &PseudoSample::ranked)
        .def("points", [](const PseudoSample& ps) { return ps.points(); })
        .def("__len__", &PseudoSample::size);

    m.def(
        "pseudo_observations",
        [](const std::vector<std::pair<double, double>>& xy, const std::string& ties,
           std::uint64_t seed) {
            const Sample s = sample_from(xy);
            if (ties == "error") return pseudo_observations(s);
            if (ties != "random") throw ConfigError("tie policy must be 'error' or 'random'");
            RngStream rng = RngStream(seed).split(0);
            return pseudo_observations(s, TiePolicy::random, &rng);
        },
        py::arg("xy"), py::arg("ties") = "error", py::arg("seed") = 0);
    m.def("empirical_copula", &empirical_copula, py::arg("ps"), py::arg("u"), py::arg("v"));
    m.def(
        "t_statistic",
        [](const PseudoSample& ps, double p, int grid) {
            return t_statistic(ps, StatConfig{p, GridSpec{grid}});
        },
        py::arg("ps"), py::arg("p") = 1.0, py::arg("grid") = 35);
    m.def("sample_spearman", &sample_spearman, py::arg("ps"));
    m.def("sample_kendall", &sample_kendall, py::arg("ps"));

    py::class_<TestResult>(m, "TestResult")
        .def_readonly("t_n", &TestResult::t_n)
        .def_readonly("critical_value", &TestResult::critical_value)
        .def_readonly("p_value", &TestResult::p_value)
        .def_readonly("reject", &TestResult::reject)
        .def_readonly("B", &TestResult::B)
        .def_readonly("seed", &TestResult::seed)
        .def_readonly("permuted_stats", &TestResult::permuted_stats)
        .def("__repr__", [](const TestResult& r) {
            return "TestResult(t_n=" + std::to_string(r.t_n) +
                   ", p_value=" + std::to_string(r.p_value) +
                   ", reject=" + (r.reject ? std::string("True") : std::string("False")) + ")";
        });

    m.def(
        "run_test",
        [](const std::vector<std::pair<double, double>>& xy, double p, int grid, int B,
           double alpha, std::uint64_t seed, bool keep_replicates, bool rerank_permuted,
           int jobs) {
            TestConfig cfg{.stat = {p, GridSpec{grid}},
                           .B = B,
                           .alpha = alpha,
                           .seed = seed,
                           .keep_replicates = keep_replicates,
                           .rerank_permuted = rerank_permuted,
                           .jobs = jobs};
            return run_test(sample_from(xy), cfg);
        },
        py::arg("xy"), py::arg("p") = 1.0, py::arg("grid") = 35, py::arg("B") = 299,
        py::arg("alpha") = 0.05, py::arg("seed") = 0, py::arg("keep_replicates") = false,
        py::arg("rerank_permuted") = false, py::arg("jobs") = 0);

    m.def(
        "sample_family",
        [](const std::string& family, double param, int n, std::uint64_t seed) {
            RngStream rng(seed);
            if (family == "m1_mixture") return sample_m1_mixture(param, n, rng).xy;
            return sample(parse_family(family, param), n, rng).xy;
        },
        py::arg("family"), py::arg("param"), py::arg("n"), py::arg("seed") = 0);

    m.def(
        "run_level",
        [](std::uint64_t seed, int R, int n, int B, int jobs) {
            ExperimentConfig cfg = level_defaults(seed);
            if (R > 0) cfg.replications = R;
            if (n > 0) cfg.sizes = {n};
            if (B > 0) cfg.test.B = B;
            cfg.jobs = jobs;
            py::list rows;
            for (const auto& r : run_level(cfg)) rows.append(row_to_dict(r));
            return rows;
        },
        py::arg("seed") = 0, py::arg("R") = -1, py::arg("n") = -1, py::arg("B") = -1,
        py::arg("jobs") = 0);
    m.def(
        "run_power",
        [](std::uint64_t seed, int R, int B, std::vector<double> thetas, std::vector<int> sizes,
           int jobs) {
            ExperimentConfig cfg = power_defaults(seed);
            if (R > 0) cfg.replications = R;
            if (B > 0) cfg.test.B = B;
            if (!thetas.empty()) cfg.thetas = std::move(thetas);
            if (!sizes.empty()) cfg.sizes = std::move(sizes);
            cfg.jobs = jobs;
            py::list rows;
            for (const auto& r : run_power(cfg)) rows.append(row_to_dict(r));
            return rows;
        },
        py::arg("seed") = 0, py::arg("R") = -1, py::arg("B") = -1,
        py::arg("thetas") = std::vector<double>{}, py::arg("sizes") = std::vector<int>{},
        py::arg("jobs") = 0);
    m.def(
        "run_demo",
        [](std::uint64_t seed, int repeat, int n, int B, int jobs) {
            ExperimentConfig cfg = demo_defaults(seed);
            if (repeat > 0) cfg.replications = repeat;
            if (n > 0) cfg.sizes = {n};
            if (B > 0) cfg.test.B = B;
            cfg.jobs = jobs;
            py::list rows;
            for (const auto& r : run_demo(cfg)) rows.append(row_to_dict(r));
            return rows;
        },
        py::arg("seed") = 0, py::arg("repeat") = -1, py::arg("n") = -1, py::arg("B") = -1,
        py::arg("jobs") = 0);

#ifdef NONEXCH_VERSION
    m.attr("__version__") = NONEXCH_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
