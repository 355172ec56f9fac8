#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "barron/classifier.hpp"
#include "barron/common.hpp"
#include "barron/rng.hpp"
#include "barron/spectral.hpp"

using namespace barron;

namespace {

DomainBox box_from(std::initializer_list<double> lo, std::initializer_list<double> hi) {
  DomainBox b;
  b.lower = Eigen::VectorXd::Map(lo.begin(), static_cast<Eigen::Index>(lo.size()));
  b.upper = Eigen::VectorXd::Map(hi.begin(), static_cast<Eigen::Index>(hi.size()));
  return b;
}

// Points below the flat horizon x_axis = 0 inside rect.
HorizonPatch flat_patch(DomainBox rect, int axis, int sign) {
  HorizonPatch p;
  p.rect = std::move(rect);
  p.axis = axis;
  p.sign = sign;
  p.constant_B = 1.0;
  p.boundary.domain = p.face_box();
  p.boundary.base_point =
      0.5 * (p.boundary.domain.lower + p.boundary.domain.upper);
  p.boundary.constant = 0.0;
  return p;
}

BarronBoundarySet lower_half_omega() {
  BarronBoundarySet omega;
  omega.dim = 2;
  omega.patches = {flat_patch(box_from({-1, -1}, {1, 1}), 2, 1)};
  return omega;
}

Eigen::VectorXd pt(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("indicator_eval: membership and patch precedence") {
  BarronBoundarySet omega = lower_half_omega();
  CHECK(indicator_eval(omega, pt(0.0, -0.5)) == 1);
  CHECK(indicator_eval(omega, pt(0.0, 0.5)) == 0);
  CHECK(indicator_eval(omega, pt(0.0, 0.0)) == 1);  // horizon itself belongs
  CHECK(indicator_eval(omega, pt(2.0, 0.0)) == 0);  // outside every rectangle

  Eigen::MatrixXd X(3, 2);
  X << 0, -0.5, 0, 0.5, 2, 0;
  Eigen::VectorXi y = indicator_eval_batch(omega, X);
  CHECK(y(0) == 1);
  CHECK(y(1) == 0);
  CHECK(y(2) == 0);

  // Two rectangles sharing the face x1 = 0 with opposite halves: points on
  // the shared face are resolved by the first containing rectangle.
  BarronBoundarySet two;
  two.dim = 2;
  two.patches = {flat_patch(box_from({-1, -1}, {0, 1}), 2, 1),
                 flat_patch(box_from({0, -1}, {1, 1}), 2, -1)};
  two.validate();
  CHECK(indicator_eval(two, pt(0.0, -0.5)) == 1);  // patch 1 says below-horizon
  CHECK(indicator_eval(two, pt(0.0, 0.5)) == 0);   // patch 1 decides, not patch 2
  CHECK(indicator_eval(two, pt(0.5, 0.5)) == 1);   // interior of patch 2
}

TEST_CASE("boundary-set validation") {
  BarronBoundarySet omega = lower_half_omega();
  CHECK_NOTHROW(omega.validate());

  BarronBoundarySet empty;
  empty.dim = 2;
  CHECK_THROWS_AS(empty.validate(), config_error);

  BarronBoundarySet low = lower_half_omega();
  low.dim = 1;
  CHECK_THROWS_AS(low.validate(), config_error);

  // Overlapping interiors are rejected and the offending pair is named.
  BarronBoundarySet overlap;
  overlap.dim = 2;
  overlap.patches = {flat_patch(box_from({-1, -1}, {0.2, 1}), 2, 1),
                     flat_patch(box_from({0, -1}, {1, 1}), 2, 1)};
  try {
    overlap.validate();
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("overlap") != std::string::npos);
    CHECK(std::string(e.what()).find("(1,2)") != std::string::npos);
  }

  HorizonPatch bad = flat_patch(box_from({-1, -1}, {1, 1}), 2, 1);
  bad.axis = 3;
  CHECK_THROWS_AS(bad.validate(2), config_error);
  bad.axis = 2;
  bad.sign = 2;
  CHECK_THROWS_AS(bad.validate(2), config_error);
  bad.sign = 1;
  bad.constant_B = 0.0;
  CHECK_THROWS_AS(bad.validate(2), config_error);

  // constant_B must dominate the boundary's own spectral constant.
  HorizonPatch wavy = flat_patch(box_from({-1, -1}, {1, 1}), 2, 1);
  SpectralAtom a;
  a.freq = Eigen::VectorXd::Constant(1, 2.0);
  a.modulus = 0.8;  // seminorm 2 * modulus 0.8 = 1.6 > 1
  wavy.boundary.atoms = {a};
  CHECK_THROWS_AS(wavy.validate(2), config_error);
  wavy.constant_B = 2.0;
  CHECK_NOTHROW(wavy.validate(2));

  HorizonPatch off = flat_patch(box_from({-1, -1}, {1, 1}), 2, 1);
  off.boundary.domain = box_from({-2}, {2});  // not the face box
  off.boundary.base_point = Eigen::VectorXd::Zero(1);
  CHECK_THROWS_AS(off.validate(2), config_error);
}

TEST_CASE("approx_heaviside_gadget") {
  NeuralNetwork h = approx_heaviside_gadget(0.5);
  CHECK(h.architecture() == std::vector<int>{1, 2, 1});
  auto at = [&](double t) {
    return evaluate(h, Eigen::VectorXd::Constant(1, t))(0);
  };
  CHECK(at(-1.0) == 0.0);
  CHECK(at(0.0) == 0.0);
  CHECK(at(0.25) == 0.5);
  CHECK(at(0.5) == 1.0);
  CHECK(at(3.0) == 1.0);
  CHECK_THROWS_AS(approx_heaviside_gadget(0.0), config_error);
  CHECK_THROWS_AS(approx_heaviside_gadget(-0.1), config_error);
}

TEST_CASE("localize_gadget") {
  DomainBox rect = box_from({-1, -1}, {1, 1});
  NeuralNetwork g = localize_gadget(rect, 0.1);
  CHECK(g.input_dim() == 3);  // (x, y)
  auto at = [&](double x1, double x2, double y) {
    Eigen::VectorXd v(3);
    v << x1, x2, y;
    return evaluate(g, v)(0);
  };
  CHECK(at(0.0, 0.0, 0.7) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(at(0.5, -0.3, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(at(0.0, 0.0, 0.0) == 0.0);
  CHECK(at(2.0, 0.0, 0.7) == 0.0);   // outside the rectangle
  CHECK(at(1.0, 0.0, 0.7) == 0.0);   // on the boundary the ramps cancel
  CHECK(at(-0.95, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));  // mid-ramp

  Rng rng(13);
  for (int t = 0; t < 300; ++t) {
    double v = at(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform01());
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-12);
  }

  CHECK_THROWS_AS(localize_gadget(rect, 0.0), config_error);
  CHECK_THROWS_AS(localize_gadget(rect, 1.01), config_error);  // > half the side
  DomainBox thin = box_from({-1, 0}, {1, 0.5});
  CHECK_THROWS_AS(localize_gadget(thin, 0.3), config_error);
  CHECK_NOTHROW(localize_gadget(thin, 0.25));
}

TEST_CASE("synthesize_classifier: the (2,22,10,1,1) worked shape") {
  BarronBoundarySet omega = lower_half_omega();
  ClassifierSynthesisResult r = synthesize_classifier(omega, 16, 2, 0);
  CHECK(r.net.architecture() == std::vector<int>{2, 22, 10, 1, 1});
  CHECK(r.report.bound_architecture == std::vector<int>{2, 22, 10, 1, 1});
  CHECK(r.report.bound_neurons == 7 * 1 * (16 + 2));
  CHECK(r.report.bound_weights == 54 * 4 * 16);
  CHECK(r.report.clip_radius == 1.0);
  CHECK(r.report.small_rectangle_flags == std::vector<bool>{false});
  CHECK(r.report.subnet_sup_error[0] == 0.0);  // constant horizon is exact
  CHECK(verify_architecture(r.net, r.report));

  CHECK_THROWS_AS(synthesize_classifier(omega, 7, 1, 0), config_error);
  CHECK_THROWS_AS(synthesize_classifier(omega, 16, 0, 0), config_error);
}

TEST_CASE("synthesize_classifier: values live in [0,1] and match the set away from the horizon") {
  BarronBoundarySet omega = lower_half_omega();
  ClassifierSynthesisResult r = synthesize_classifier(omega, 64, 2, 1);
  Rng rng(2);
  for (int t = 0; t < 500; ++t) {
    Eigen::VectorXd x = pt(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
    double v = evaluate(r.net, x)(0);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-12);
  }
  // eps = delta = 1/8 at N = 64, B = 1: away from the horizon and the
  // rectangle collar the net reproduces the indicator almost exactly.
  for (int t = 0; t < 200; ++t) {
    double x1 = rng.uniform(-0.7, 0.7);
    double x2 = rng.uniform(0.3, 0.7) * (t % 2 == 0 ? 1.0 : -1.0);
    double v = evaluate(r.net, pt(x1, x2))(0);
    CHECK(std::abs(v - indicator_eval(omega, pt(x1, x2))) <= 1e-9);
  }
}

TEST_CASE("synthesize_classifier: points outside every rectangle evaluate to zero") {
  BarronBoundarySet omega;
  omega.dim = 2;
  omega.patches = {flat_patch(box_from({-1, -1}, {0, 1}), 2, 1)};
  ClassifierSynthesisResult r = synthesize_classifier(omega, 16, 1, 3);
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    // Stay to the right of the rectangle by more than eps = 1/4.
    Eigen::VectorXd x = pt(rng.uniform(0.3, 2.0), rng.uniform(-2.0, 2.0));
    CHECK(std::abs(evaluate(r.net, x)(0)) <= 1e-12);
  }
}

TEST_CASE("synthesize_classifier: short rectangles become structural zero blocks") {
  BarronBoundarySet omega;
  omega.dim = 2;
  omega.patches = {flat_patch(box_from({-1, -1}, {0, 1}), 2, 1),
                   flat_patch(box_from({0, -1}, {0.2, 1}), 2, 1)};
  // Threshold at N=16, B=1 is 2/sqrt(16) = 0.5: the second side (0.2) is short.
  ClassifierSynthesisResult r = synthesize_classifier(omega, 16, 1, 5);
  CHECK(r.report.small_rectangle_flags == std::vector<bool>{false, true});
  CHECK(r.report.subnet_sup_error[1] == 0.0);
  CHECK(verify_architecture(r.net, r.report));
  // Deep inside the dropped patch the net must answer exactly zero.
  CHECK(evaluate(r.net, pt(0.1, -0.9))(0) == 0.0);
  // The live patch still works (eps = 1/4: stay clear of the edge collar).
  CHECK(evaluate(r.net, pt(-0.5, -0.5))(0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("synthesize_classifier: same seed, same network") {
  BarronBoundarySet omega = lower_half_omega();
  ClassifierSynthesisResult a = synthesize_classifier(omega, 16, 3, 11);
  ClassifierSynthesisResult b = synthesize_classifier(omega, 16, 3, 11);
  for (std::size_t l = 0; l < a.net.layers().size(); ++l) {
    CHECK(a.net.layers()[l].W == b.net.layers()[l].W);
    CHECK(a.net.layers()[l].b == b.net.layers()[l].b);
  }
}

TEST_CASE("verify_architecture rejects tampered reports") {
  BarronBoundarySet omega = lower_half_omega();
  ClassifierSynthesisResult r = synthesize_classifier(omega, 16, 1, 0);
  REQUIRE(verify_architecture(r.net, r.report));

  ClassifierBuildReport tight = r.report;
  tight.bound_neurons = r.report.num_neurons - 1;
  CHECK_FALSE(verify_architecture(r.net, tight));

  ClassifierBuildReport weak = r.report;
  weak.bound_magnitude = r.report.max_abs_weight * 0.5;
  CHECK_FALSE(verify_architecture(r.net, weak));

  ClassifierBuildReport wrong = r.report;
  wrong.bound_architecture[1] += 1;
  CHECK_FALSE(verify_architecture(r.net, wrong));
}
