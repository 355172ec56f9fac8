#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "barron/classifier.hpp"
#include "barron/erm.hpp"
#include "barron/io.hpp"
#include "barron/measure.hpp"
#include "barron/representation.hpp"
#include "barron/rng.hpp"
#include "barron/shallow.hpp"
#include "barron/threads.hpp"

namespace {

using namespace barron;

std::string iso_timestamp() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Header row, data rows, then "# toolversion,seed,timestamp".  The trailer is
// the only line excluded from byte-identity checks, so everything else must
// be formatted deterministically (format_double is shortest-round-trip).
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows, const std::string& seed_field) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot open " + path + " for writing");
  out << header << '\n';
  for (const std::string& row : rows) out << row << '\n';
  out << "# " << kToolVersion << ',' << seed_field << ',' << iso_timestamp() << '\n';
  if (!out) throw config_error("failed writing " + path);
}

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
  std::string s;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) s += '+';
    s += std::to_string(seeds[i]);
  }
  return s;
}

// Shared by rate-sweep and erm-sweep: the boundary set, the sampling measure
// with its tube certificate, and the class constants entering the bounds.
struct SweepInputs {
  BarronBoundarySet omega;
  MeasureSpec mu;
  TubeCertificate tube;
  double B = 1.0;       // max patch constant
  long long M = 0;      // patch count
  long long d = 0;
};

SweepInputs load_sweep_inputs(const std::string& omega_path, const std::string& measure_path) {
  SweepInputs in{load_boundary_set(omega_path), load_measure(measure_path), {}, 1.0, 0, 0};
  if (in.mu.dim() != in.omega.dim)
    throw config_error("dimension mismatch: boundary set has d=" + std::to_string(in.omega.dim) +
                       " but the measure has d=" + std::to_string(in.mu.dim()));
  in.tube = tube_params(in.mu);
  in.M = static_cast<long long>(in.omega.patches.size());
  in.d = in.omega.dim;
  for (const HorizonPatch& p : in.omega.patches) in.B = std::max(in.B, p.constant_B);
  return in;
}

int run_synth_barron(const std::string& spec_path, int N, int K, std::uint64_t seed,
                     const std::string& out_path) {
  const BarronFunctionSpec f = load_barron_spec(spec_path);
  const Eigen::MatrixXd grid = default_validation_grid(f.domain, seed);
  const ShallowSynthesisResult res = synthesize_shallow(f, N, K, seed, grid);
  nlohmann::json meta{{"tool", kToolVersion},
                      {"command", "synth-barron"},
                      {"N", N},
                      {"K", K},
                      {"seed", seed},
                      {"sup_error", res.report.sup_error},
                      {"weight_bound", res.report.weight_bound},
                      {"max_abs_weight", res.report.max_abs_weight},
                      {"sampling_mass", res.report.v},
                      {"selected_candidate", res.report.selected}};
  save_network(out_path, res.net, meta);
  std::cout << "synth-barron: sup-error=" << format_double(res.report.sup_error)
            << " weight-audit=ok (max|w|=" << format_double(res.report.max_abs_weight)
            << " <= " << format_double(res.report.weight_bound)
            << ") hidden-width=" << 8 * N << " candidate=" << res.report.selected + 1 << "/" << K
            << " -> " << out_path << '\n';
  return 0;
}

int run_rate_sweep(const std::string& omega_path, const std::string& measure_path,
                   const std::vector<int>& N_list, std::int64_t mc,
                   const std::vector<std::uint64_t>& seeds, int K, int threads,
                   const std::string& out_csv) {
  const SweepInputs in = load_sweep_inputs(omega_path, measure_path);
  set_max_threads(threads);
  const double coeff = 6.0 * in.tube.C * static_cast<double>(in.M) *
                       std::pow(in.B, in.tube.alpha) * std::pow(static_cast<double>(in.d), 1.5);
  std::vector<std::string> rows;
  for (int N : N_list) {
    for (std::uint64_t seed : seeds) {
      const std::uint64_t base = mix(seed, static_cast<std::uint64_t>(N));
      const ClassifierSynthesisResult built =
          synthesize_classifier(in.omega, N, K, mix(base, 1));
      const Estimate est =
          disagreement_probability(in.mu, in.omega, built.net, mc, mix(base, 2));
      const double bound = coeff * std::pow(static_cast<double>(N), -in.tube.alpha / 2.0);
      rows.push_back(std::to_string(N) + "," + std::to_string(seed) + "," +
                     format_double(est.value) + "," + format_double(est.half_width) + "," +
                     format_double(bound));
    }
  }
  write_csv(out_csv, "N,seed,disagreement,half_width,bound", rows, join_seeds(seeds));
  std::cout << "rate-sweep: " << rows.size() << " rows -> " << out_csv << '\n';
  return 0;
}

int run_erm_sweep(const std::string& omega_path, const std::string& measure_path,
                  const std::vector<long long>& m_list, const std::vector<std::uint64_t>& seeds,
                  std::int64_t mc, int restarts, int steps, int K, int threads,
                  const std::string& out_csv) {
  const SweepInputs in = load_sweep_inputs(omega_path, measure_path);
  set_max_threads(threads);
  const double BC = in.B * in.tube.C;
  const double gamma = in.tube.alpha / (1.0 + in.tube.alpha);
  std::vector<std::string> rows;
  for (long long m : m_list) {
    const long long N = choose_width(in.B, in.tube.C, in.M, in.d, m, in.tube.alpha);
    const std::vector<int> arch{
        static_cast<int>(in.d), static_cast<int>(in.M * (N + 2 * in.d + 2)),
        static_cast<int>(in.M * (4 * in.d + 2)), static_cast<int>(in.M), 1};
    const double bound_rhs =
        BC * static_cast<double>(in.M) * std::pow(static_cast<double>(in.d), 1.5) *
        std::pow(std::log(BC * static_cast<double>(in.M * in.d * m)) /
                     (BC * BC * static_cast<double>(in.d * m)),
                 gamma / 2.0);
    for (std::uint64_t seed : seeds) {
      const std::uint64_t base = mix(seed, static_cast<std::uint64_t>(m));
      const LabeledSample data = generate_dataset(in.omega, in.mu, m, mix(base, 1));
      // The constructive net seeds one restart, but it only exists for
      // N >= 8 (it needs at least one spectral sample per patch subnet).
      std::optional<NeuralNetwork> warm;
      if (N >= 8)
        warm = to_pm1(synthesize_classifier(in.omega, static_cast<int>(N), K, mix(base, 4)).net);
      ErmConfig cfg;
      cfg.restarts = restarts;
      cfg.steps = steps;
      cfg.seed = mix(base, 2);
      const ErmResult res = approximate_erm(data, arch, cfg, warm);
      const Estimate risk = risk_estimate(res.net, in.omega, in.mu, mc, mix(base, 3));
      rows.push_back(std::to_string(m) + "," + std::to_string(N) + "," + std::to_string(seed) +
                     "," + format_double(res.empirical01) + "," + format_double(risk.value) +
                     "," + format_double(risk.half_width) + "," + format_double(bound_rhs));
      std::cout << "erm-sweep: m=" << m << " N=" << N << " seed=" << seed
                << " empirical01=" << format_double(res.empirical01)
                << " risk=" << format_double(risk.value) << '\n';
    }
  }
  write_csv(out_csv, "m,N,seed,empirical01,risk_estimate,risk_half_width,bound_rhs", rows,
            join_seeds(seeds));
  std::cout << "erm-sweep: " << rows.size() << " rows -> " << out_csv << '\n';
  return 0;
}

int run_demo_shatter(int n, int d, const std::string& out_path) {
  const ShatterResult res = shattering_demo(n, d);
  const long long total = 1LL << n;
  if (!out_path.empty())
    write_csv(out_path, "n,d,labelings_realized,labelings_total,function_constant",
              {std::to_string(res.n) + "," + std::to_string(res.d) + "," +
               std::to_string(res.labelings_realized) + "," + std::to_string(total) + "," +
               format_double(res.function_constant)},
              "0");
  std::cout << res.labelings_realized << "/" << total << " labelings realized (n=" << n
            << ", d=" << d << ", class constant " << format_double(res.function_constant)
            << ")\n";
  return 0;
}

int run_demo_gap(const std::vector<int>& n_list, double eps, const std::string& out_path) {
  const std::vector<GapRow> table = fourier_gap_demo(n_list, eps);
  std::vector<std::string> rows;
  for (const GapRow& r : table) {
    const double rel = std::fabs(r.second_derivative_l1 - r.exact_value) / r.exact_value;
    rows.push_back(std::to_string(r.n) + "," + format_double(eps) + "," +
                   format_double(r.second_derivative_l1) + "," + format_double(r.exact_value) +
                   "," + format_double(rel) + "," + format_double(r.fourier_norm_estimate));
    std::cout << "gap n=" << r.n << " eps=" << format_double(eps)
              << " integral=" << format_double(r.second_derivative_l1)
              << " exact=" << format_double(r.exact_value) << " rel-err=" << format_double(rel)
              << " norm-estimate=" << format_double(r.fourier_norm_estimate) << '\n';
  }
  if (!out_path.empty())
    write_csv(out_path, "n,eps,second_derivative_l1,exact_value,rel_error,fourier_norm_estimate",
              rows, "0");
  return 0;
}

int run_demo_heaviside(long long Q, const std::string& out_path) {
  // Single unit atom relu(x) on [-1, 1]; conversion uses R = 1, so C = 2.
  ReluAtom atom;
  atom.a = 1.0;
  atom.w = Eigen::VectorXd::Ones(1);
  atom.c = 0.0;
  const std::vector<ReluAtom> atoms{atom};
  const HeavisideRepresentation rep = relu_to_heaviside(atoms, 1, 1.0, Q);
  // Probe a uniform grid plus the quadrature thresholds themselves; a uniform
  // grid alone can alias onto the points where the staircase is exact and
  // report a deviation far below the real C/(2Q) midpoint-rule scale.
  std::vector<double> probes;
  const int grid = 201;
  for (int j = 0; j < grid; ++j) probes.push_back(-1.0 + 2.0 * j / (grid - 1));
  for (const HeavisideAtom& h : rep.atoms)
    if (std::fabs(h.c) <= 1.0) probes.push_back(-h.c);
  double max_dev = 0.0;
  Eigen::VectorXd x(1);
  for (double p : probes) {
    x(0) = p;
    max_dev = std::max(max_dev, std::fabs(eval_heaviside(rep, x) - eval_relu_atoms(atoms, x)));
  }
  if (!out_path.empty())
    write_csv(out_path, "Q,max_deviation,tv_norm,relu_norm,C",
              {std::to_string(Q) + "," + format_double(max_dev) + "," +
               format_double(rep.tv_norm()) + "," + format_double(relu_norm(atoms)) + "," +
               format_double(rep.C)},
              "0");
  std::cout << "heaviside Q=" << Q << " max-deviation=" << format_double(max_dev)
            << " tv-norm=" << format_double(rep.tv_norm())
            << " C*relu-norm=" << format_double(rep.C * relu_norm(atoms)) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constructive ReLU approximation of spectral functions and horizon "
               "classifiers, with seeded Monte-Carlo sweeps"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  // synth-barron
  std::string spec_path, out_path;
  int N = 64, K = 8;
  std::uint64_t seed = 0;
  CLI::App* synth = app.add_subcommand(
      "synth-barron", "Build a one-hidden-layer approximant of a spectral function spec");
  synth->add_option("--spec", spec_path, "Spectral function spec (JSON)")->required();
  synth->add_option("--N", N, "Samples per sign class (hidden width is 8N)")->required();
  synth->add_option("--K", K, "Candidate draws; the best on the validation grid is kept");
  synth->add_option("--seed", seed, "Base RNG seed");
  synth->add_option("--out", out_path, "Output network JSON path")->required();
  synth->callback([&] { run_synth_barron(spec_path, N, K, seed, out_path); });

  // rate-sweep
  std::string omega_path, measure_path, out_csv;
  std::vector<int> N_list;
  std::vector<std::uint64_t> seeds{0};
  std::int64_t mc = 100000;
  int threads = 1;
  CLI::App* rate = app.add_subcommand(
      "rate-sweep", "Disagreement of synthesized classifiers vs. the width-N rate bound");
  rate->add_option("--omega", omega_path, "Boundary set (JSON)")->required();
  rate->add_option("--measure", measure_path, "Sampling measure (JSON)")->required();
  rate->add_option("--N", N_list, "Width parameters, comma separated")
      ->required()
      ->delimiter(',');
  rate->add_option("--mc", mc, "Monte-Carlo points per estimate");
  rate->add_option("--seeds", seeds, "Seeds, comma separated")->delimiter(',');
  rate->add_option("--K", K, "Candidate draws per patch subnet");
  rate->add_option("--threads", threads, "Worker threads (never changes results)");
  rate->add_option("--out", out_csv, "Output CSV path")->required();
  rate->callback(
      [&] { run_rate_sweep(omega_path, measure_path, N_list, mc, seeds, K, threads, out_csv); });

  // erm-sweep
  std::vector<long long> m_list;
  int restarts = 8, steps = 5000;
  CLI::App* erm = app.add_subcommand(
      "erm-sweep", "Sample-size sweep of approximate empirical risk minimization");
  erm->add_option("--omega", omega_path, "Boundary set (JSON)")->required();
  erm->add_option("--measure", measure_path, "Sampling measure (JSON)")->required();
  erm->add_option("--m", m_list, "Sample sizes, comma separated")->required()->delimiter(',');
  erm->add_option("--seeds", seeds, "Seeds, comma separated")->delimiter(',');
  erm->add_option("--mc", mc, "Monte-Carlo points for the risk estimate");
  erm->add_option("--restarts", restarts, "Optimizer restarts");
  erm->add_option("--steps", steps, "Gradient steps per restart");
  erm->add_option("--K", K, "Candidate draws for the warm-start build");
  erm->add_option("--threads", threads, "Worker threads (never changes results)");
  erm->add_option("--out", out_csv, "Output CSV path")->required();
  erm->callback([&] {
    run_erm_sweep(omega_path, measure_path, m_list, seeds, mc, restarts, steps, K, threads,
                  out_csv);
  });

  // demo
  CLI::App* demo = app.add_subcommand("demo", "Small self-contained demonstrations");
  demo->require_subcommand(1);
  int shatter_n = 8, shatter_d = 2;
  std::string demo_out;
  CLI::App* shatter = demo->add_subcommand(
      "shatter", "Realize every labeling of n points with horizon classifiers");
  shatter->add_option("--n", shatter_n, "Number of test points (<= 10)");
  shatter->add_option("--d", shatter_d, "Ambient dimension (>= 2)");
  shatter->add_option("--out", demo_out, "Optional CSV path");
  shatter->callback([&] { run_demo_shatter(shatter_n, shatter_d, demo_out); });

  std::vector<int> gap_n{1, 2, 4, 8};
  double gap_eps = 0.25;
  CLI::App* gap = demo->add_subcommand(
      "gap", "Oscillation integral vs. its closed form, with a spectral-norm estimate");
  gap->add_option("--n", gap_n, "Oscillation counts, comma separated")->delimiter(',');
  gap->add_option("--eps", gap_eps, "Plateau half-width parameter");
  gap->add_option("--out", demo_out, "Optional CSV path");
  gap->callback([&] { run_demo_gap(gap_n, gap_eps, demo_out); });

  long long heaviside_Q = 10000;
  CLI::App* heaviside = demo->add_subcommand(
      "heaviside", "Midpoint-rule conversion of a ReLU atom to Heaviside atoms");
  heaviside->add_option("--Q", heaviside_Q, "Quadrature points");
  heaviside->add_option("--out", demo_out, "Optional CSV path");
  heaviside->callback([&] { run_demo_heaviside(heaviside_Q, demo_out); });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const barron::config_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const barron::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  }
}
