#include "linfrac/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace linfrac {

namespace {

constexpr double kEtaClamp = 1e-12;
// exp() overflows past ~709; scores are capped before exponentiation.
constexpr double kScoreCap = 700.0;

double clamp_eta(double eta) {
  return std::clamp(eta, kEtaClamp, 1.0 - kEtaClamp);
}

// log(1 + exp(x)) without overflow.
double log1p_exp(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

}  // namespace

double SurrogateLoss::partial_pos(double f) const {
  switch (kind) {
    case LossKind::kLogistic:
      return log1p_exp(-f);
    case LossKind::kSquared:
      return (1.0 - f) * (1.0 - f);
    case LossKind::kExponential:
      return std::exp(std::min(-f, kScoreCap));
    case LossKind::kHinge:
      return std::max(0.0, 1.0 - f);
  }
  throw std::logic_error("partial_pos: bad loss kind");
}

double SurrogateLoss::partial_neg(double f) const {
  switch (kind) {
    case LossKind::kLogistic:
      return log1p_exp(f);
    case LossKind::kSquared:
      return (1.0 + f) * (1.0 + f);
    case LossKind::kExponential:
      return std::exp(std::min(f, kScoreCap));
    case LossKind::kHinge:
      return std::max(0.0, 1.0 + f);
  }
  throw std::logic_error("partial_neg: bad loss kind");
}

double SurrogateLoss::link(double eta) const {
  const double e = clamp_eta(eta);
  switch (kind) {
    case LossKind::kLogistic:
      return std::log(e / (1.0 - e));
    case LossKind::kSquared:
      return 2.0 * e - 1.0;
    case LossKind::kExponential:
      return 0.5 * std::log(e / (1.0 - e));
    case LossKind::kHinge:
      break;
  }
  throw std::logic_error("hinge loss has no link");
}

double SurrogateLoss::inv_link(double f) const {
  switch (kind) {
    case LossKind::kLogistic:
      return clamp_eta(1.0 / (1.0 + std::exp(std::min(-f, kScoreCap))));
    case LossKind::kSquared:
      return clamp_eta(0.5 * (f + 1.0));
    case LossKind::kExponential:
      return clamp_eta(1.0 / (1.0 + std::exp(std::min(-2.0 * f, kScoreCap))));
    case LossKind::kHinge:
      break;
  }
  throw std::logic_error("hinge loss has no link");
}

SurrogateLoss builtin_loss(const std::string& name) {
  SurrogateLoss loss;
  loss.name = name;
  if (name == "logistic") {
    loss.kind = LossKind::kLogistic;
    loss.lambda = 4.0;
  } else if (name == "squared") {
    loss.kind = LossKind::kSquared;
    loss.lambda = 8.0;
  } else if (name == "exponential") {
    loss.kind = LossKind::kExponential;
    loss.lambda = 4.0;
  } else if (name == "hinge") {
    loss.kind = LossKind::kHinge;
    loss.lambda = 0.0;
  } else {
    throw UnknownLoss("unknown loss name '" + name + "'");
  }
  return loss;
}

double conditional_risk(const SurrogateLoss& loss, double eta, double f) {
  return eta * loss.partial_pos(f) + (1.0 - eta) * loss.partial_neg(f);
}

double optimal_conditional_risk(const SurrogateLoss& loss, double eta) {
  if (loss.is_proper()) return conditional_risk(loss, eta, loss.link(eta));
  return 2.0 * std::min(eta, 1.0 - eta);
}

double conditional_regret(const SurrogateLoss& loss, double eta, double f) {
  if (!loss.is_proper()) {
    throw std::logic_error("conditional_regret requires a proper loss");
  }
  const bool diverging_link =
      loss.kind == LossKind::kLogistic || loss.kind == LossKind::kExponential;
  if (diverging_link && (eta <= 0.0 || eta >= 1.0)) {
    throw EtaAtBoundary("conditional_regret at eta=" + std::to_string(eta) +
                        " where the link diverges");
  }
  return conditional_risk(loss, eta, f) - conditional_risk(loss, eta, loss.link(eta));
}

double cpe_partials(const SurrogateLoss& loss, int y, double eta_hat) {
  if (eta_hat <= 0.0 || eta_hat >= 1.0) {
    throw EtaAtBoundary("cpe_partials requires eta_hat in (0,1), got " +
                        std::to_string(eta_hat));
  }
  if (!loss.is_proper()) {
    throw std::logic_error("cpe_partials requires a proper loss");
  }
  return loss.partial(y, loss.link(eta_hat));
}

}  // namespace linfrac
