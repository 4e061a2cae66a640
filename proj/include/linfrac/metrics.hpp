#pragma once

#include <array>
#include <string>

#include "linfrac/errors.hpp"

namespace linfrac {

// |denominator| at or below this floor counts as degenerate.
inline constexpr double kDenomEpsilon = 1e-12;

// A point in rate space: false-positive rate, false-negative rate, and the
// positive-class prior P the rates were measured against. Feasibility means
// 0 <= fp <= 1-P and 0 <= fn <= P; the constructor enforces it with a small
// slack for accumulated roundoff but stores the values as given.
struct ConfusionRates {
  double fp = 0.0;
  double fn = 0.0;
  double prior = 0.0;

  ConfusionRates() = default;
  ConfusionRates(double fp_in, double fn_in, double prior_in);
};

enum class MetricKind { kAccuracy, kFBeta, kJaccard, kAM, kWeighted, kCustom };

// Performance metric of the form
//   Psi(fp, fn) = (a0 + a1*fp + a2*fn) / (b0 + b1*fp + b2*fn),
// non-increasing in both rates, with the denominator positive over the
// feasible box for the prior it was built against. Construction goes through
// the factory functions below, which validate both properties (the box
// extremes of a ratio of affine functions sit at the four corners).
struct FractionalMetric {
  MetricKind kind = MetricKind::kCustom;
  std::string name = "custom";
  double a0 = 0, a1 = 0, a2 = 0;
  double b0 = 1, b1 = 0, b2 = 0;
  double prior = 0.5;
  // Family parameters, kept so the metric can be re-instantiated at the
  // empirical prior of a validation sample.
  double beta = 1.0;
  double w1 = 1.0, w2 = 1.0;

  // Psi at the given rates. Throws DegenerateDenominator when |den| <= 1e-12.
  double evaluate(const ConfusionRates& rates) const;

  // Same family at a different prior. Built-ins re-derive their coefficients
  // (prior-dependent families require new_prior in (0,1)); custom coefficient
  // sets are returned unchanged apart from the recorded prior, since their
  // coefficients do not depend on it.
  FractionalMetric with_prior(double new_prior) const;
};

FractionalMetric make_accuracy(double prior);
FractionalMetric make_f_beta(double beta, double prior);
FractionalMetric make_jaccard(double prior);
FractionalMetric make_am(double prior);
FractionalMetric make_weighted_accuracy(double w1, double w2, double prior);
FractionalMetric make_custom(const std::array<double, 6>& coeffs, double prior,
                             const std::string& name = "custom");

// Factory by name: "accuracy", "f-beta" (uses beta), "jaccard", "am",
// "weighted" (uses w1, w2). Throws UnknownMetric / InvalidParam.
FractionalMetric builtin(const std::string& metric_name, double prior,
                         double beta = 1.0, double w1 = 1.0, double w2 = 1.0);

// Prior-free metric description, as written on a command line:
//   accuracy | f-beta:B | jaccard | am | weighted:W1,W2
//   | custom:a0,a1,a2,b0,b1,b2
struct MetricSpec {
  MetricKind kind = MetricKind::kAccuracy;
  std::string text = "accuracy";
  double beta = 1.0;
  double w1 = 1.0, w2 = 1.0;
  std::array<double, 6> coeffs{};

  FractionalMetric instantiate(double prior) const;
};

MetricSpec parse_metric(const std::string& text);

// Constants of the regret transfer for a metric with optimal value psi_star:
//   gamma   lower bound of the denominator over the feasible box,
//   cee     (psi_star*(b1+b2) - (a1+a2)) / gamma,
//   alpha   optimal conditional-probability threshold
//           (psi_star*b1 - a1) / (psi_star*(b1+b2) - (a1+a2)),
//   d_bound max over i of sup |b_i*Psi - a_i| on the feasible box.
struct MetricConstants {
  double gamma = 0.0;
  double cee = 0.0;
  double alpha = 0.0;
  double d_bound = 0.0;
};

// gamma comes from the closed form of the metric family (accuracy 1,
// F-beta beta^2*P, Jaccard P, AM 2P(1-P), weighted w1*(1-P)+w2*P); for custom
// coefficients it is the minimum denominator over the four box corners.
// Throws NonPositiveGamma if that bound is <= 1e-12.
MetricConstants constants(const FractionalMetric& metric, double psi_star);

// The alpha of constants() on its own.
double optimal_threshold_eta(const FractionalMetric& metric, double psi_star);

// Cost-sensitive risk alpha*fp + (1-alpha)*fn.
double cost_sensitive_risk(const ConfusionRates& rates, double alpha);

}  // namespace linfrac
