#pragma once

#include <string>

#include "linfrac/errors.hpp"

namespace linfrac {

enum class LossKind { kLogistic, kSquared, kExponential, kHinge };

// Margin-based surrogate loss ell(y, f) for y in {-1, +1}. The proper losses
// (logistic, squared, exponential) come with a strictly increasing link
// psi mapping class probabilities to scores and a strong-properness modulus
// lambda; hinge is a margin loss only: it has no link and downstream code
// treats its raw scores as the thresholding scale.
struct SurrogateLoss {
  LossKind kind = LossKind::kLogistic;
  std::string name = "logistic";
  double lambda = 4.0;

  bool is_proper() const { return kind != LossKind::kHinge; }

  // ell(+1, f) and ell(-1, f).
  double partial_pos(double f) const;
  double partial_neg(double f) const;
  double partial(int y, double f) const { return y > 0 ? partial_pos(f) : partial_neg(f); }

  // psi(eta). Inputs are clamped to [1e-12, 1-1e-12] so boundary probabilities
  // yield large finite scores. Throws std::logic_error for hinge.
  double link(double eta) const;

  // psi^{-1}(f); outputs clamped to [1e-12, 1-1e-12]. Throws std::logic_error
  // for hinge.
  double inv_link(double f) const;
};

// "logistic" | "squared" | "exponential" | "hinge". Throws UnknownLoss.
SurrogateLoss builtin_loss(const std::string& name);

// eta * ell(+1, f) + (1-eta) * ell(-1, f).
double conditional_risk(const SurrogateLoss& loss, double eta, double f);

// inf over f of the conditional risk: proper losses evaluate at psi(eta)
// (eta clamped as in link); hinge has the closed form 2*min(eta, 1-eta).
double optimal_conditional_risk(const SurrogateLoss& loss, double eta);

// conditional_risk(eta, f) - conditional_risk(eta, psi(eta)); proper losses
// only. Throws EtaAtBoundary at eta in {0,1} for losses whose link diverges
// there (logistic, exponential), std::logic_error for hinge.
double conditional_regret(const SurrogateLoss& loss, double eta, double f);

// Class-probability partial losses c(y, eta_hat) = ell(y, psi(eta_hat)).
// Requires eta_hat in (0,1); throws EtaAtBoundary otherwise.
double cpe_partials(const SurrogateLoss& loss, int y, double eta_hat);

}  // namespace linfrac
