#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lgcb/experiment.hpp"
#include "lgcb/verification.hpp"

namespace py = pybind11;
using namespace lgcb;

namespace {

Matrix matrix_from_rows(const std::vector<Vec>& rows) {
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    return m;
}

std::vector<Vec> matrix_to_rows(const Matrix& m) {
    std::vector<Vec> rows(m.rows(), Vec(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    return rows;
}

py::dict result_to_dict(const ExperimentResult& result) {
    py::dict out;
    py::list rounds;
    for (std::int64_t r : result.checkpoints) rounds.append(r);
    out["round"] = rounds;
    for (const AlgorithmResult& algo : result.algorithms) {
        py::dict curve;
        py::list mean, stddev;
        for (std::int64_t r : result.checkpoints) {
            mean.append(algo.curve.mean[static_cast<std::size_t>(r) - 1]);
            stddev.append(algo.curve.stddev[static_cast<std::size_t>(r) - 1]);
        }
        curve["mean_regret"] = mean;
        curve["std_regret"] = stddev;
        curve["trials"] = algo.curve.trials;
        out[py::str(algo.selector)] = curve;
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Adversarial linear contextual bandits with graph-structured side observations";

    py::class_<FeedbackGraph>(m, "FeedbackGraph")
        .def(py::init<int, bool, const std::vector<std::pair<int, int>>&>(), py::arg("num_actions"),
             py::arg("undirected"), py::arg("edges"))
        .def_static("edgeless", &FeedbackGraph::edgeless, py::arg("num_actions"))
        .def_static("complete", &FeedbackGraph::complete, py::arg("num_actions"))
        .def_static("complete_plus_isolated", &FeedbackGraph::complete_plus_isolated,
                    py::arg("clique"), py::arg("isolated"))
        .def_property_readonly("num_actions", &FeedbackGraph::num_actions)
        .def_property_readonly("undirected", &FeedbackGraph::undirected)
        .def("edges", &FeedbackGraph::edges)
        .def("hash", &FeedbackGraph::hash)
        .def("__repr__", [](const FeedbackGraph& g) {
            std::ostringstream out;
            out << "FeedbackGraph(K=" << g.num_actions() << ", edges=" << g.num_edges() << ")";
            return out.str();
        });

    m.def(
        "observation_set",
        [](const FeedbackGraph& g, int action) { return observation_set(g, action).members; },
        py::arg("graph"), py::arg("action"),
        "Indices whose losses are revealed when `action` is played (0-based).");
    m.def("observation_probabilities", &observation_probabilities, py::arg("graph"),
          py::arg("pi"));
    m.def("independence_number_exact", &independence_number_exact, py::arg("graph"));
    m.def("independence_number_greedy_bound", &independence_number_greedy_bound,
          py::arg("graph"));

    py::class_<ContextDistribution>(m, "ContextDistribution")
        .def_static("bernoulli_scaled", &ContextDistribution::bernoulli_scaled,
                    py::arg("dimension"), py::arg("p"))
        .def_static("custom_discrete", &ContextDistribution::custom_discrete, py::arg("points"),
                    py::arg("probabilities"))
        .def_property_readonly("dimension", &ContextDistribution::dimension)
        .def_property_readonly("norm_bound", &ContextDistribution::norm_bound)
        .def_property_readonly("smallest_eigenvalue", &ContextDistribution::smallest_eigenvalue)
        .def("second_moment",
             [](const ContextDistribution& d) { return matrix_to_rows(d.second_moment()); })
        .def("second_moment_inverse",
             [](const ContextDistribution& d) {
                 return matrix_to_rows(d.second_moment_inverse());
             })
        .def(
            "sample",
            [](const ContextDistribution& d, std::uint64_t seed, std::uint64_t round) {
                Prng rng(seed, round, StreamTag::kContext);
                return d.sample(rng);
            },
            py::arg("seed"), py::arg("round") = 0);

    m.def(
        "schedule_u_undirected",
        [](int k, double sigma, double lambda_min, int d, std::int64_t horizon,
           std::vector<double> alpha_bounds) {
            UParams p = schedule_u_undirected(k, sigma, lambda_min, d, horizon, alpha_bounds);
            return std::make_pair(p.eta, p.gamma);
        },
        py::arg("num_actions"), py::arg("sigma"), py::arg("lambda_min"), py::arg("dimension"),
        py::arg("horizon"), py::arg("alpha_bounds"), "Returns (eta, gamma).");
    m.def(
        "schedule_u_directed",
        [](int k, double sigma, double lambda_min, int d, std::int64_t horizon,
           std::vector<double> alpha_bounds) {
            UParams p = schedule_u_directed(k, sigma, lambda_min, d, horizon, alpha_bounds);
            return std::make_pair(p.eta, p.gamma);
        },
        py::arg("num_actions"), py::arg("sigma"), py::arg("lambda_min"), py::arg("dimension"),
        py::arg("horizon"), py::arg("alpha_bounds"), "Returns (eta, gamma).");
    m.def("schedule_ix", &schedule_ix, py::arg("t"), py::arg("num_actions"), py::arg("dimension"),
          py::arg("q_running_sum"), "Returns (eta_t, beta_t).");
    m.def("q_value_ix", &q_value_ix, py::arg("alpha"), py::arg("num_actions"), py::arg("beta_t"));
    m.def("q_bound_u_directed", &q_bound_u_directed, py::arg("alpha"), py::arg("num_actions"),
          py::arg("gamma"));

    m.def(
        "run_experiment",
        [](const std::string& config_json, int threads) {
            ExperimentConfig config = parse_config_text(config_json);
            return result_to_dict(run_experiment(config, threads));
        },
        py::arg("config_json"), py::arg("threads") = 1,
        "Runs the configured experiment; returns {round: [...], selector: {mean_regret, "
        "std_regret, trials}}.");
    m.def(
        "run_preset",
        [](const std::string& name, int threads) {
            ExperimentConfig config = resolve_config(name);
            return result_to_dict(run_experiment(config, threads));
        },
        py::arg("name"), py::arg("threads") = 1);
    m.def("preset_names", &preset_names);
    m.def(
        "preset_json",
        [](const std::string& name) {
            const char* text = preset_text(name);
            if (!text) throw std::invalid_argument("unknown preset \"" + name + "\"");
            return std::string(text);
        },
        py::arg("name"));

    m.def(
        "run_verification",
        []() {
            std::ostringstream out;
            bool ok = verify::run_full_audit(out);
            return std::make_pair(ok, out.str());
        },
        "Runs the brute-force audit battery; returns (passed, table_text).");
    m.def(
        "unbiasedness_deviation",
        [](const Vec& pi, const FeedbackGraph& graph, int dimension, double p,
           const std::vector<Vec>& theta) {
            verify::DiscreteSupport support = verify::bernoulli_support(dimension, p);
            Matrix sigma(dimension, dimension);
            for (std::size_t s = 0; s < support.points.size(); ++s)
                add_scaled_outer(sigma, support.points[s], support.probabilities[s]);
            return verify::unbiasedness_deviation(pi, graph, support, theta, invert(sigma));
        },
        py::arg("pi"), py::arg("graph"), py::arg("dimension"), py::arg("p"), py::arg("theta"),
        "Max componentwise gap between the enumerated estimator expectation and theta.");

    m.attr("__version__") = "0.1.0";
}
