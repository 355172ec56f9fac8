#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <vector>

#include "barron/classifier.hpp"
#include "barron/common.hpp"
#include "barron/erm.hpp"
#include "barron/measure.hpp"
#include "barron/network.hpp"
#include "barron/rng.hpp"

using namespace barron;

namespace {

DomainBox box_from(std::initializer_list<double> lo, std::initializer_list<double> hi) {
  DomainBox b;
  b.lower = Eigen::VectorXd::Map(lo.begin(), static_cast<Eigen::Index>(lo.size()));
  b.upper = Eigen::VectorXd::Map(hi.begin(), static_cast<Eigen::Index>(hi.size()));
  return b;
}

HorizonPatch flat_patch(DomainBox rect, int axis, int sign, double level = 0.0) {
  HorizonPatch p;
  p.rect = std::move(rect);
  p.axis = axis;
  p.sign = sign;
  p.boundary.domain = p.face_box();
  p.boundary.base_point =
      0.5 * (p.boundary.domain.lower + p.boundary.domain.upper);
  p.boundary.constant = level;
  p.constant_B = std::max(1.0, std::abs(level));
  return p;
}

BarronBoundarySet lower_half_omega() {
  BarronBoundarySet omega;
  omega.dim = 2;
  omega.patches = {flat_patch(box_from({-1, -1}, {1, 1}), 2, 1)};
  return omega;
}

BarronBoundarySet full_box_omega() {
  BarronBoundarySet omega;
  omega.dim = 2;
  omega.patches = {flat_patch(box_from({-1, -1}, {1, 1}), 2, 1, 2.0)};
  return omega;
}

double zero_one_loss(const NeuralNetwork& net, const LabeledSample& s) {
  Eigen::MatrixXd out = evaluate_batch(net, s.X);
  long long wrong = 0;
  for (Eigen::Index i = 0; i < s.y.size(); ++i) {
    int pred = out(i, 0) >= 0.0 ? 1 : -1;
    if (pred != s.y(i)) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(s.y.size());
}

}  // namespace

TEST_CASE("choose_width: worked values and parameter screening") {
  CHECK(choose_width(1.0, 1.0, 1, 2, 100, 1.0) == 7);
  CHECK(choose_width(1.0, 1.0, 1, 2, 1, 1.0) == 2);

  CHECK_THROWS_AS(choose_width(0.5, 1.0, 1, 2, 100, 1.0), config_error);
  CHECK_THROWS_AS(choose_width(1.0, 0.0, 1, 2, 100, 1.0), config_error);
  CHECK_THROWS_AS(choose_width(1.0, 1.0, 0, 2, 100, 1.0), config_error);
  CHECK_THROWS_AS(choose_width(1.0, 1.0, 1, 2, 0, 1.0), config_error);
  CHECK_THROWS_AS(choose_width(1.0, 1.0, 1, 2, 100, 0.0), config_error);
  CHECK_THROWS_AS(choose_width(1.0, 1.0, 1, 2, 100, 1.5), config_error);
  CHECK_THROWS_AS(choose_width(1.0, 1.0, 1, 1, 1, 1.0), config_error);  // log(1)
}

TEST_CASE("choose_width: long-double oracle and growth in m") {
  Rng rng(123);
  int compared = 0;
  for (int t = 0; t < 200; ++t) {
    double B = 1.0 + rng.uniform(0.0, 9.0);
    double C = 1.0 + rng.uniform(0.0, 9.0);
    long long M = 1 + static_cast<long long>(rng.uniform(0.0, 4.0));
    long long d = 2 + static_cast<long long>(rng.uniform(0.0, 3.0));
    long long m = 1 + static_cast<long long>(rng.uniform(0.0, 1e6));
    double alpha = (t % 3 == 0) ? 1.0 : (t % 3 == 1 ? 0.5 : 0.25);

    long double prod = static_cast<long double>(B) * C * M * d * m;
    long double bc = static_cast<long double>(B) * C;
    long double value = powl(bc * bc * d * m / logl(prod),
                             1.0L / (1.0L + static_cast<long double>(alpha)));
    long double frac = value - floorl(value);
    if (frac < 1e-9L || frac > 1.0L - 1e-9L) continue;  // avoid rounding ties
    ++compared;
    CHECK(choose_width(B, C, M, d, m, alpha) == static_cast<long long>(ceill(value)));
  }
  CHECK(compared >= 150);

  long long prev = 0;
  for (long long m : {1, 10, 100, 1000, 10000, 100000}) {
    long long N = choose_width(1.0, 1.0, 1, 2, m, 1.0);
    CHECK(N >= prev);
    prev = N;
  }
  CHECK(prev > 100);  // sqrt-like growth reaches triple digits by m = 1e5
}

TEST_CASE("generate_dataset labels by set membership") {
  MeasureSpec mu = MeasureSpec::uniform(box_from({-1, -1}, {1, 1}));

  LabeledSample all = generate_dataset(full_box_omega(), mu, 500, 0);
  CHECK(all.X.rows() == 500);
  CHECK((all.y.array() == 1).all());

  // A set living in a rectangle disjoint from the support: all -1.
  BarronBoundarySet far;
  far.dim = 2;
  far.patches = {flat_patch(box_from({2, 2}, {3, 3}), 2, 1)};
  LabeledSample none = generate_dataset(far, mu, 500, 1);
  CHECK((none.y.array() == -1).all());

  BarronBoundarySet omega = lower_half_omega();
  LabeledSample s = generate_dataset(omega, mu, 100000, 2);
  double frac = (s.y.array() == 1).cast<double>().mean();
  CHECK(std::abs(frac - 0.5) <= 3.0 * std::sqrt(0.25 / 100000.0));
  for (Eigen::Index i = 0; i < 200; ++i) {
    int want = indicator_eval(omega, s.X.row(i).transpose()) == 1 ? 1 : -1;
    CHECK(s.y(i) == want);
  }

  // The draw is the measure's own stream: same seed, same points.
  LabeledSample again = generate_dataset(omega, mu, 1000, 2);
  CHECK(again.X == sample(mu, 1000, 2));

  MeasureSpec mu3 = MeasureSpec::uniform(box_from({-1, -1, -1}, {1, 1, 1}));
  CHECK_THROWS_AS(generate_dataset(omega, mu3, 10, 0), config_error);
}

TEST_CASE("approximate_erm: degenerate fits and input screening") {
  MeasureSpec mu = MeasureSpec::uniform(box_from({-1, -1}, {1, 1}));
  std::vector<int> arch{2, 22, 10, 1, 1};
  ErmConfig light;
  light.restarts = 2;
  light.steps = 60;

  // All-positive labels are fit immediately by some iterate.
  LabeledSample easy = generate_dataset(full_box_omega(), mu, 64, 0);
  ErmResult r = approximate_erm(easy, arch, light);
  CHECK(r.empirical01 == 0.0);
  CHECK(r.net.architecture() == arch);

  LabeledSample one = generate_dataset(lower_half_omega(), mu, 1, 1);
  CHECK(approximate_erm(one, arch, light).empirical01 == 0.0);

  LabeledSample bad = easy;
  bad.y(3) = 0;
  CHECK_THROWS_AS(approximate_erm(bad, arch, light), config_error);
  CHECK_THROWS_AS(approximate_erm(easy, {2, 22, 10, 1, 2}, light), config_error);
  CHECK_THROWS_AS(approximate_erm(easy, {3, 22, 10, 1, 1}, light), config_error);
  CHECK_THROWS_AS(approximate_erm(easy, {2, 0, 1}, light), config_error);
  LabeledSample empty;
  empty.X = Eigen::MatrixXd(0, 2);
  empty.y = Eigen::VectorXi(0);
  CHECK_THROWS_AS(approximate_erm(empty, arch, light), config_error);
  ErmConfig broken = light;
  broken.steps = -1;  // steps = 0 is legal: it scores the raw initializations
  CHECK_THROWS_AS(approximate_erm(easy, arch, broken), config_error);
  broken.steps = 10;
  broken.restarts = 0;
  CHECK_THROWS_AS(approximate_erm(easy, arch, broken), config_error);
}

TEST_CASE("approximate_erm: reproducible and warm starts dominate") {
  MeasureSpec mu = MeasureSpec::uniform(box_from({-1, -1}, {1, 1}));
  BarronBoundarySet omega = lower_half_omega();
  LabeledSample s = generate_dataset(omega, mu, 256, 7);
  std::vector<int> arch{2, 22, 10, 1, 1};

  ErmConfig cfg;
  cfg.restarts = 3;
  cfg.steps = 400;
  cfg.seed = 5;
  ErmResult a = approximate_erm(s, arch, cfg);
  ErmResult b = approximate_erm(s, arch, cfg);
  CHECK(a.empirical01 == b.empirical01);
  CHECK(a.best_restart == b.best_restart);
  CHECK(a.best_step == b.best_step);
  for (std::size_t l = 0; l < a.net.layers().size(); ++l)
    CHECK(a.net.layers()[l].W == b.net.layers()[l].W);

  // The constructive classifier, recentered to +/-1 scores, seeds restart 0;
  // its own 0-1 loss is an upper bound for the tracked best.
  NeuralNetwork warm = to_pm1(synthesize_classifier(omega, 16, 2, 3).net);
  REQUIRE(warm.architecture() == arch);
  double warm_loss = zero_one_loss(warm, s);
  ErmConfig short_run;
  short_run.restarts = 1;
  short_run.steps = 30;
  ErmResult w = approximate_erm(s, arch, short_run, warm);
  CHECK(w.empirical01 <= warm_loss);
  CHECK(w.empirical01 <= 0.05);  // the flat horizon is classified almost perfectly

  NeuralNetwork wrong = to_pm1(synthesize_classifier(omega, 24, 1, 3).net);
  CHECK_THROWS_AS(approximate_erm(s, arch, short_run, wrong), config_error);
}

TEST_CASE("approximate_erm: random restarts fit the flat horizon") {
  MeasureSpec mu = MeasureSpec::uniform(box_from({-1, -1}, {1, 1}));
  LabeledSample s = generate_dataset(lower_half_omega(), mu, 64, 11);
  ErmConfig cfg;
  cfg.restarts = 8;
  cfg.steps = 1500;
  cfg.seed = 1;
  ErmResult r = approximate_erm(s, {2, 22, 10, 1, 1}, cfg);
  CHECK(r.empirical01 <= 0.1);
  CHECK(r.best_restart >= 0);
  CHECK(r.best_restart < 8);
  CHECK(r.best_step <= 1500);
}

TEST_CASE("to_pm1 doubles and shifts") {
  BarronBoundarySet omega = lower_half_omega();
  NeuralNetwork net = synthesize_classifier(omega, 16, 1, 0).net;
  NeuralNetwork pm = to_pm1(net);
  CHECK(pm.architecture() == net.architecture());
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXd x(2);
    x << rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0);
    CHECK(evaluate(pm, x)(0) ==
          doctest::Approx(2.0 * evaluate(net, x)(0) - 1.0).epsilon(1e-12));
  }
}

TEST_CASE("risk_estimate thresholds at zero") {
  MeasureSpec mu = MeasureSpec::uniform(box_from({-1, -1}, {1, 1}));
  Layer out{Eigen::MatrixXd::Zero(1, 2), Eigen::VectorXd::Constant(1, 1.0)};
  NeuralNetwork plus_one(2, {out});

  Estimate full = risk_estimate(plus_one, full_box_omega(), mu, 20000, 0);
  CHECK(full.value == 0.0);

  Estimate half = risk_estimate(plus_one, lower_half_omega(), mu, 50000, 1);
  CHECK(std::abs(half.value - 0.5) <= 3.0 * half.half_width);

  // Two independent seeds agree within their joint uncertainty.
  Estimate again = risk_estimate(plus_one, lower_half_omega(), mu, 50000, 2);
  CHECK(std::abs(half.value - again.value) <= 3.0 * (half.half_width + again.half_width));
}

TEST_CASE("shattering_demo realizes every labeling") {
  ShatterResult one = shattering_demo(1, 2);
  CHECK(one.labelings_realized == 2);

  ShatterResult three = shattering_demo(3, 3);
  CHECK(three.labelings_realized == 8);
  REQUIRE(three.bumps.size() == 3);
  CHECK(three.bumps[0].sigma == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  // Certified constant: n bumps, each with moment (d-1)/sigma * sqrt(2/pi).
  double moment = (3 - 1) * 12.0 * std::sqrt(2.0 / kPi);
  CHECK(three.bumps[0].moment_constant == doctest::Approx(moment).epsilon(1e-13));
  CHECK(three.function_constant == doctest::Approx(3.0 * moment).epsilon(1e-13));

  ShatterResult eight = shattering_demo(8, 2);
  CHECK(eight.labelings_realized == 256);

  CHECK_THROWS_AS(shattering_demo(0, 2), config_error);
  CHECK_THROWS_AS(shattering_demo(11, 2), config_error);
  CHECK_THROWS_AS(shattering_demo(3, 1), config_error);
}
