#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "linfrac/errors.hpp"
#include "linfrac/metrics.hpp"

using namespace linfrac;

namespace {

const std::vector<std::string> kBuiltinNames = {"accuracy", "f-beta", "jaccard", "am",
                                                "weighted"};

FractionalMetric builtin_at(const std::string& name, double prior) {
  return builtin(name, prior, /*beta=*/1.0, /*w1=*/2.0, /*w2=*/1.0);
}

}  // namespace

TEST_CASE("evaluate matches hand-computed values") {
  const auto acc = make_accuracy(0.5);
  CHECK(std::fabs(acc.evaluate(ConfusionRates(0.1, 0.2, 0.5)) - 0.7) < 1e-15);

  const auto f1 = make_f_beta(1.0, 0.5);
  const double v = f1.evaluate(ConfusionRates(0.25, 0.0, 0.5));
  CHECK(std::fabs(v - 0.8) < 1e-15);
  // cross-check against the counting form TP/(TP + (FP+FN)/2), TP = P - FN
  const double tp = 0.5 - 0.0;
  CHECK(std::fabs(v - tp / (tp + 0.5 * (0.25 + 0.0))) < 1e-15);

  const auto am = make_am(0.3);
  CHECK(std::fabs(am.evaluate(ConfusionRates(0.0, 0.0, 0.3)) - 1.0) < 1e-15);
}

TEST_CASE("builtin coefficient layouts") {
  const auto acc = make_accuracy(0.4);
  CHECK(acc.a0 == 1.0);
  CHECK(acc.a1 == -1.0);
  CHECK(acc.a2 == -1.0);
  CHECK(acc.b0 == 1.0);
  CHECK(acc.b1 == 0.0);
  CHECK(acc.b2 == 0.0);

  const auto f1 = make_f_beta(1.0, 0.5);
  CHECK(f1.a0 == 1.0);
  CHECK(f1.a1 == 0.0);
  CHECK(f1.a2 == -2.0);
  CHECK(f1.b0 == 1.0);
  CHECK(f1.b1 == 1.0);
  CHECK(f1.b2 == -1.0);

  CHECK(make_am(0.5).evaluate(ConfusionRates(0.0, 0.0, 0.5)) == 1.0);
}

TEST_CASE("cost-sensitive risk is the weighted error sum") {
  CHECK(std::fabs(cost_sensitive_risk(ConfusionRates(0.1, 0.2, 0.5), 0.5) - 0.15) < 1e-15);
  CHECK(cost_sensitive_risk(ConfusionRates(0.0, 0.0, 0.5), 0.33) == 0.0);
  CHECK(std::fabs(cost_sensitive_risk(ConfusionRates(0.2, 0.1, 0.5), 0.75) - 0.175) < 1e-15);
}

TEST_CASE("constants: closed forms for every builtin at several priors") {
  for (double p : {0.1, 0.3, 0.5}) {
    const auto acc = make_accuracy(p);
    const auto ca = constants(acc, 0.9);
    CHECK(std::fabs(ca.gamma - 1.0) < 1e-12);
    CHECK(std::fabs(ca.cee - 2.0) < 1e-12);
    CHECK(std::fabs(ca.alpha - 0.5) < 1e-12);

    for (double beta : {0.5, 1.0, 2.0}) {
      const auto fb = make_f_beta(beta, p);
      const auto cf = constants(fb, 0.7);
      CHECK(std::fabs(cf.gamma - beta * beta * p) < 1e-12);
      CHECK(std::fabs(cf.cee - (1.0 + beta * beta) / (beta * beta * p)) < 1e-12);
    }

    // alpha for the F-measure at beta=1 is half the optimal value
    const auto f1 = make_f_beta(1.0, p);
    CHECK(std::fabs(constants(f1, 0.6).alpha - 0.3) < 1e-12);

    const auto jac = make_jaccard(p);
    const auto cj = constants(jac, 0.6);
    CHECK(std::fabs(cj.gamma - p) < 1e-12);
    CHECK(std::fabs(cj.cee - (0.6 + 1.0) / p) < 1e-12);

    const auto am = make_am(p);
    const auto cm = constants(am, 0.8);
    CHECK(std::fabs(cm.gamma - 2.0 * p * (1.0 - p)) < 1e-12);
    CHECK(std::fabs(cm.cee - 1.0 / (2.0 * p * (1.0 - p))) < 1e-12);

    const auto wa = make_weighted_accuracy(2.0, 1.0, p);
    const auto cw = constants(wa, 0.75);
    const double gw = 2.0 * (1.0 - p) + 1.0 * p;
    CHECK(std::fabs(cw.gamma - gw) < 1e-12);
    CHECK(std::fabs(cw.cee - (2.0 + 1.0) / gw) < 1e-12);
  }
}

TEST_CASE("deviation-bound constants for accuracy") {
  const auto acc = make_accuracy(0.5);
  const auto c = constants(acc, 1.0);
  CHECK(std::fabs(c.d_bound - 1.0) < 1e-9);  // sup over the box of |b_i Psi - a_i| is 1
  CHECK(c.alpha == 0.5);
}

TEST_CASE("optimal threshold in probability space") {
  const auto acc = make_accuracy(0.5);
  CHECK(optimal_threshold_eta(acc, 0.73) == 0.5);
  const auto f1 = make_f_beta(1.0, 0.4);
  CHECK(std::fabs(optimal_threshold_eta(f1, 0.6) - 0.3) < 1e-15);
  // equal-weight weighted accuracy is symmetric, so the threshold is 1/2
  const auto wa = make_weighted_accuracy(1.5, 1.5, 0.3);
  CHECK(std::fabs(optimal_threshold_eta(wa, 0.8) - 0.5) < 1e-12);
  // the constants' alpha is the same formula
  for (const auto& name : kBuiltinNames) {
    const auto m = builtin_at(name, 0.35);
    for (double psi_star : {0.4, 0.65, 0.9}) {
      CHECK(constants(m, psi_star).alpha == optimal_threshold_eta(m, psi_star));
    }
  }
}

TEST_CASE("metric is non-increasing in both rates and maximal at zero error") {
  for (const auto& name : kBuiltinNames) {
    for (double p : {0.2, 0.5, 0.7}) {
      const auto m = builtin_at(name, p);
      const double fp_max = 1.0 - p;
      const double fn_max = p;
      const double top = m.evaluate(ConfusionRates(0.0, 0.0, p));
      const int ni = static_cast<int>(std::floor(fp_max / 0.01));
      const int nj = static_cast<int>(std::floor(fn_max / 0.01));
      double grid_max = -1e300;
      for (int i = 0; i <= ni; ++i) {
        for (int j = 0; j <= nj; ++j) {
          const double fp = i * 0.01;
          const double fn = j * 0.01;
          const double v = m.evaluate(ConfusionRates(fp, fn, p));
          CHECK(std::isfinite(v));
          grid_max = std::max(grid_max, v);
          if (i > 0) {
            CHECK(v - m.evaluate(ConfusionRates(fp - 0.01, fn, p)) <= 1e-9);
          }
          if (j > 0) {
            CHECK(v - m.evaluate(ConfusionRates(fp, fn - 0.01, p)) <= 1e-9);
          }
        }
      }
      CHECK(top >= grid_max - 1e-12);
    }
  }
}

TEST_CASE("custom metrics are invariant under coefficient rescaling") {
  const std::array<double, 6> base = {0.8, -0.5, -1.1, 1.0, 0.3, 0.2};
  std::array<double, 6> scaled{};
  for (std::size_t i = 0; i < 6; ++i) scaled[i] = 3.0 * base[i];
  const auto m1 = make_custom(base, 0.4);
  const auto m2 = make_custom(scaled, 0.4);
  for (double fp : {0.0, 0.2, 0.5}) {
    for (double fn : {0.0, 0.1, 0.35}) {
      const ConfusionRates r(fp, fn, 0.4);
      CHECK(std::fabs(m1.evaluate(r) - m2.evaluate(r)) < 1e-12);
    }
  }
}

TEST_CASE("with_prior re-derives prior-dependent coefficients") {
  const auto f1 = make_f_beta(1.0, 0.5);
  const auto moved = f1.with_prior(0.25);
  const auto direct = make_f_beta(1.0, 0.25);
  CHECK(moved.a0 == direct.a0);
  CHECK(moved.a2 == direct.a2);
  CHECK(moved.b0 == direct.b0);
  CHECK(moved.prior == 0.25);

  // accuracy has prior-free coefficients and accepts boundary priors
  const auto acc = make_accuracy(0.5).with_prior(0.0);
  CHECK(acc.evaluate(ConfusionRates(0.3, 0.0, 0.0)) == doctest::Approx(0.7));

  // a custom metric keeps its coefficients verbatim
  const std::array<double, 6> coeffs = {1.0, -1.0, -1.0, 1.0, 0.0, 0.0};
  const auto cust = make_custom(coeffs, 0.5).with_prior(0.2);
  CHECK(cust.a0 == 1.0);
  CHECK(cust.b0 == 1.0);
  CHECK(cust.prior == 0.2);
}

TEST_CASE("metric grammar") {
  CHECK(parse_metric("accuracy").kind == MetricKind::kAccuracy);
  CHECK(parse_metric("f-beta:2").beta == 2.0);
  CHECK(parse_metric("jaccard").kind == MetricKind::kJaccard);
  CHECK(parse_metric("am").kind == MetricKind::kAM);
  const auto wa = parse_metric("weighted:2,1");
  CHECK(wa.w1 == 2.0);
  CHECK(wa.w2 == 1.0);
  const auto cu = parse_metric("custom:1,-1,-1,1,0,0");
  CHECK(cu.coeffs[0] == 1.0);
  CHECK(cu.coeffs[5] == 0.0);
  CHECK(parse_metric("f-beta:1").text == "f-beta:1");
  CHECK(parse_metric("f-beta:1").instantiate(0.5).name == "f-beta");

  CHECK_THROWS_AS((void)parse_metric("nope"), UnknownMetric);
  CHECK_THROWS_AS((void)parse_metric("f-beta:0,1"), InvalidParam);
  CHECK_THROWS_AS((void)parse_metric("weighted:1"), InvalidParam);
  CHECK_THROWS_AS((void)parse_metric("custom:1,2"), InvalidParam);
  CHECK_THROWS_AS((void)parse_metric("accuracy:3"), InvalidParam);
}

TEST_CASE("construction guards") {
  CHECK_THROWS_AS((void)make_f_beta(0.0, 0.5), InvalidParam);
  CHECK_THROWS_AS((void)make_f_beta(1.0, 0.0), InvalidParam);   // needs an open prior
  CHECK_THROWS_AS((void)make_am(1.0), InvalidParam);
  CHECK_THROWS_AS((void)make_weighted_accuracy(-1.0, 1.0, 0.5), InvalidParam);
  CHECK_THROWS_AS((void)builtin("mystery", 0.5), UnknownMetric);
  CHECK_THROWS_AS(ConfusionRates(0.6, 0.0, 0.5), InvalidParam);  // fp beyond 1 - prior
  CHECK_THROWS_AS(ConfusionRates(0.0, 0.6, 0.5), InvalidParam);  // fn beyond prior

  // a custom metric whose denominator vanishes on the feasible box
  const std::array<double, 6> bad = {1.0, 0.0, 0.0, 0.0, 0.0, 1.0};
  CHECK_THROWS_AS((void)make_custom(bad, 0.5), InvalidParam);
  // a custom metric that increases in fn is rejected
  const std::array<double, 6> rising = {0.0, 0.0, 1.0, 1.0, 0.0, 0.0};
  CHECK_THROWS_AS((void)make_custom(rising, 0.5), InvalidParam);

  // constants() recomputes the denominator bound at the metric's current
  // prior; a custom metric carried to a prior where the box breaks the
  // denominator has no positive gamma there
  const std::array<double, 6> fragile = {0.15, 0.0, -1.0, 0.3, 0.0, -1.0};
  const auto m = make_custom(fragile, 0.1);
  CHECK(constants(m, 0.5).gamma > 0.0);
  CHECK_THROWS_AS((void)constants(m.with_prior(0.5), 0.5), NonPositiveGamma);
}
