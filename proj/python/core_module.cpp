// Python bindings.  Structured inputs (function specs, boundary sets,
// measures) travel as JSON strings and are parsed by the same io routines the
// CLI uses, so Python and C++ callers can never disagree about a format.
// Arrays cross the boundary as NumPy via pybind11's Eigen caster.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "json.hpp"

#include "barron/classifier.hpp"
#include "barron/common.hpp"
#include "barron/erm.hpp"
#include "barron/io.hpp"
#include "barron/measure.hpp"
#include "barron/network.hpp"
#include "barron/representation.hpp"
#include "barron/shallow.hpp"
#include "barron/spectral.hpp"
#include "barron/threads.hpp"

namespace py = pybind11;
using namespace barron;

namespace {

nlohmann::json parse(const std::string& text, const char* what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error(std::string(what) + ": " + e.what());
  }
}

BarronFunctionSpec spec_arg(const std::string& j) {
  return barron_spec_from_json(parse(j, "spec"));
}
BarronBoundarySet omega_arg(const std::string& j) {
  return boundary_set_from_json(parse(j, "boundary set"));
}
MeasureSpec measure_arg(const std::string& j) {
  return measure_from_json(parse(j, "measure"));
}

py::dict estimate_dict(const Estimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["half_width"] = e.half_width;
  d["n"] = e.n;
  return d;
}

py::dict classifier_report_dict(const ClassifierBuildReport& r, bool verified) {
  py::dict d;
  d["architecture"] = r.architecture;
  d["num_neurons"] = r.num_neurons;
  d["num_nonzero_weights"] = r.num_nonzero_weights;
  d["max_abs_weight"] = r.max_abs_weight;
  d["bound_architecture"] = r.bound_architecture;
  d["bound_neurons"] = r.bound_neurons;
  d["bound_weights"] = r.bound_weights;
  d["bound_magnitude"] = r.bound_magnitude;
  d["clip_radius"] = r.clip_radius;
  d["small_rectangle_flags"] = r.small_rectangle_flags;
  d["subnet_sup_error"] = r.subnet_sup_error;
  d["verified"] = verified;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Constructive ReLU approximation of spectral functions and horizon "
            "indicators, with the matching estimation and audit tools.";
  m.attr("__version__") = "0.1.0";

  py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);

  py::class_<NeuralNetwork>(m, "Network")
      .def_static(
          "from_json",
          [](const std::string& text) { return network_from_json(parse(text, "network")); },
          py::arg("text"), "Parse a network from its JSON serialization.")
      .def(
          "to_json",
          [](const NeuralNetwork& net) { return network_to_json(net).dump(2); },
          "Serialize to JSON (weights round-trip bit-exactly).")
      .def_property_readonly("input_dim", &NeuralNetwork::input_dim)
      .def_property_readonly("output_dim", &NeuralNetwork::output_dim)
      .def_property_readonly("architecture", &NeuralNetwork::architecture)
      .def(
          "evaluate",
          [](const NeuralNetwork& net, const Eigen::MatrixXd& X) {
            return evaluate_batch(net, X);
          },
          py::arg("X"), "Forward pass; one input point per row, one output per row.")
      .def("__call__",
           [](const NeuralNetwork& net, const Eigen::MatrixXd& X) {
             return evaluate_batch(net, X);
           })
      .def(
          "stats",
          [](const NeuralNetwork& net) {
            const NetworkStats s = stats(net);
            py::dict d;
            d["architecture"] = s.architecture;
            d["num_layers"] = s.num_layers;
            d["num_neurons"] = s.num_neurons;
            d["num_nonzero_weights"] = s.num_nonzero_weights;
            d["max_abs_weight"] = s.max_abs_weight;
            return d;
          },
          "Architecture, neuron count, nonzero weight count, max |weight|.")
      .def(
          "quantize",
          [](const NeuralNetwork& net, int tau, double eps) { return quantize(net, tau, eps); },
          py::arg("tau"), py::arg("eps"),
          "Round every weight to the grid 2^(-tau*ceil(log2(1/eps))) * Z clipped "
          "to [-eps^-tau, eps^-tau]; ties round toward zero.");

  m.def(
      "synthesize_shallow",
      [](const std::string& spec_json, int N, int K, std::uint64_t seed,
         const std::optional<Eigen::MatrixXd>& grid) {
        BarronFunctionSpec f = spec_arg(spec_json);
        Eigen::MatrixXd g = grid ? *grid : default_validation_grid(f.domain, seed);
        ShallowSynthesisResult r = synthesize_shallow(f, N, K, seed, g);
        py::dict rep;
        rep["sup_error"] = r.report.sup_error;
        rep["weight_bound"] = r.report.weight_bound;
        rep["max_abs_weight"] = r.report.max_abs_weight;
        rep["candidates"] = r.report.candidates;
        rep["selected"] = r.report.selected;
        rep["sampling_mass"] = r.report.v;
        return py::make_tuple(std::move(r.net), rep);
      },
      py::arg("spec_json"), py::arg("N"), py::arg("K") = 8, py::arg("seed") = 0,
      py::arg("grid") = std::nullopt,
      "One-hidden-layer approximant of a spectral function spec (JSON).  Draws "
      "K candidates and keeps the best sup error over the validation grid "
      "(default grid when none is given).  Returns (network, report).");

  m.def(
      "synthesize_classifier",
      [](const std::string& omega_json, int N, int K, std::uint64_t seed) {
        BarronBoundarySet omega = omega_arg(omega_json);
        ClassifierSynthesisResult r = synthesize_classifier(omega, N, K, seed);
        const bool ok = verify_architecture(r.net, r.report);
        return py::make_tuple(std::move(r.net), classifier_report_dict(r.report, ok));
      },
      py::arg("omega_json"), py::arg("N"), py::arg("K") = 8, py::arg("seed") = 0,
      "Indicator approximant of a horizon boundary set (JSON) with architecture "
      "exactly (d, M(N+2d+2), M(4d+2), M, 1).  Returns (network, report); "
      "report['verified'] re-checks the architecture and weight bounds.");

  m.def(
      "indicator",
      [](const std::string& omega_json, const Eigen::MatrixXd& X) {
        return indicator_eval_batch(omega_arg(omega_json), X);
      },
      py::arg("omega_json"), py::arg("X"),
      "Exact 0/1 membership of each row of X in the boundary set.");

  m.def(
      "eval_spec",
      [](const std::string& spec_json, const Eigen::MatrixXd& X) {
        return eval_barron_batch(spec_arg(spec_json), X);
      },
      py::arg("spec_json"), py::arg("X"), "Evaluate a spectral function spec row-wise.");

  m.def(
      "spec_constant",
      [](const std::string& spec_json) { return barron_constant(spec_arg(spec_json)); },
      py::arg("spec_json"),
      "Class constant of a spec: max(|constant|, sum of modulus * seminorm).");

  m.def("choose_width", &choose_width, py::arg("B"), py::arg("C"), py::arg("M"),
        py::arg("d"), py::arg("m"), py::arg("alpha"),
        "Sample-size-driven width: ceil(((BC)^2 d m / log(BCMdm))^(1/(1+alpha))).");

  m.def(
      "sample",
      [](const std::string& measure_json, std::int64_t n, std::uint64_t seed) {
        return sample(measure_arg(measure_json), n, seed);
      },
      py::arg("measure_json"), py::arg("n"), py::arg("seed") = 0,
      "n i.i.d. draws, one per row; chunked streams make the result "
      "independent of worker count.");

  m.def(
      "tube_params",
      [](const std::string& measure_json) {
        const TubeCertificate c = tube_params(measure_arg(measure_json));
        return py::make_tuple(c.alpha, c.C);
      },
      py::arg("measure_json"),
      "Certificate (alpha, C) with mu(|x_i - f| <= eps) <= C eps^alpha.");

  m.def(
      "tube_mass_estimate",
      [](const std::string& measure_json, const std::function<double(const Eigen::VectorXd&)>& f,
         int axis, double eps, std::int64_t n, std::uint64_t seed) {
        return estimate_dict(tube_mass_estimate(measure_arg(measure_json), f, axis, eps, n, seed));
      },
      py::arg("measure_json"), py::arg("f"), py::arg("axis"), py::arg("eps"), py::arg("n"),
      py::arg("seed") = 0,
      "Monte-Carlo mass of the tube |x_axis - f(rest)| <= eps; f maps the "
      "remaining coordinates (1-d array) to a float.");

  m.def(
      "disagreement_probability",
      [](const std::string& measure_json, const std::string& omega_json,
         const NeuralNetwork& net, std::int64_t n, std::uint64_t seed, double threshold) {
        return estimate_dict(disagreement_probability(measure_arg(measure_json),
                                                      omega_arg(omega_json), net, n, seed,
                                                      threshold));
      },
      py::arg("measure_json"), py::arg("omega_json"), py::arg("net"), py::arg("n"),
      py::arg("seed") = 0, py::arg("threshold") = 0.5,
      "P(indicator != [net >= threshold]) with a Wilson 95% half-width.");

  m.def(
      "lp_error",
      [](const std::string& measure_json, const std::string& omega_json,
         const NeuralNetwork& net, double p, std::int64_t n, std::uint64_t seed) {
        return estimate_dict(
            lp_error(measure_arg(measure_json), omega_arg(omega_json), net, p, n, seed));
      },
      py::arg("measure_json"), py::arg("omega_json"), py::arg("net"), py::arg("p"),
      py::arg("n"), py::arg("seed") = 0,
      "(E |indicator - net|^p)^(1/p) with a delta-method 95% half-width.");

  m.def(
      "generate_dataset",
      [](const std::string& omega_json, const std::string& measure_json, std::int64_t m,
         std::uint64_t seed) {
        LabeledSample s = generate_dataset(omega_arg(omega_json), measure_arg(measure_json),
                                           m, seed);
        return py::make_tuple(std::move(s.X), std::move(s.y));
      },
      py::arg("omega_json"), py::arg("measure_json"), py::arg("m"), py::arg("seed") = 0,
      "Labeled sample (X, y) with y in {-1, +1}, +1 iff the row lies in omega.");

  m.def(
      "approximate_erm",
      [](const Eigen::MatrixXd& X, const Eigen::VectorXi& y, const std::vector<int>& architecture,
         int restarts, int steps, double step_initial, double step_decay, std::uint64_t seed,
         const std::optional<NeuralNetwork>& warm_start) {
        ErmConfig cfg;
        cfg.restarts = restarts;
        cfg.steps = steps;
        cfg.step_initial = step_initial;
        cfg.step_decay = step_decay;
        cfg.seed = seed;
        ErmResult r = approximate_erm(LabeledSample{X, y}, architecture, cfg, warm_start);
        py::dict rep;
        rep["empirical01"] = r.empirical01;
        rep["best_restart"] = r.best_restart;
        rep["best_step"] = r.best_step;
        return py::make_tuple(std::move(r.net), rep);
      },
      py::arg("X"), py::arg("y"), py::arg("architecture"), py::arg("restarts") = 8,
      py::arg("steps") = 5000, py::arg("step_initial") = 0.1, py::arg("step_decay") = 1e-3,
      py::arg("seed") = 0, py::arg("warm_start") = std::nullopt,
      "Multi-restart gradient descent on the logistic surrogate, tracking the "
      "best empirical 0-1 loss ever seen.  Returns (network, report).");

  m.def("to_pm1", &to_pm1, py::arg("net"),
        "Affine relabeling 2*output - 1 of a [0,1]-valued indicator approximant.");

  m.def(
      "risk_estimate",
      [](const NeuralNetwork& net, const std::string& omega_json,
         const std::string& measure_json, std::int64_t n, std::uint64_t seed) {
        return estimate_dict(
            risk_estimate(net, omega_arg(omega_json), measure_arg(measure_json), n, seed));
      },
      py::arg("net"), py::arg("omega_json"), py::arg("measure_json"), py::arg("n"),
      py::arg("seed") = 0, "P(sign(net) != 2*indicator - 1) with Wilson half-width.");

  m.def(
      "shattering_demo",
      [](int n, int d) {
        const ShatterResult r = shattering_demo(n, d);
        py::dict out;
        out["n"] = r.n;
        out["d"] = r.d;
        out["function_constant"] = r.function_constant;
        out["labelings_realized"] = r.labelings_realized;
        return out;
      },
      py::arg("n"), py::arg("d"),
      "Counts how many of the 2^n labelings of n aligned points horizon "
      "functions realize (all of them for n <= 10).");

  m.def(
      "fourier_gap_demo",
      [](const std::vector<int>& n_list, double eps) {
        py::list rows;
        for (const GapRow& r : fourier_gap_demo(n_list, eps)) {
          py::dict d;
          d["n"] = r.n;
          d["second_derivative_l1"] = r.second_derivative_l1;
          d["exact_value"] = r.exact_value;
          d["fourier_norm_estimate"] = r.fourier_norm_estimate;
          rows.append(d);
        }
        return rows;
      },
      py::arg("n_list"), py::arg("eps"),
      "Oscillation table: |f_n''|_L1 grows like 8 pi n^2/eps while the "
      "spectral norm estimate grows only linearly in n.");

  m.def("set_max_threads", &set_max_threads, py::arg("n"),
        "Cap worker threads; never changes numerical results.");
}
