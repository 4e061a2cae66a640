#pragma once

#include <cstdint>
#include <vector>

#include "linfrac/losses.hpp"
#include "linfrac/oracle.hpp"
#include "linfrac/random.hpp"

namespace linfrac {

// One draw from a finite-domain model: domain index and label in {-1, +1}.
struct IndexedSample {
  int x = 0;
  int y = 1;
};

// Per-point empirical fit over a finite domain.
//   eta_hat[i]  raw positive fraction among samples at i (prior for unseen i),
//   counts[i]   samples observed at i,
//   scores[i]   link(clamped eta_hat) for proper losses; sign(2*eta_hat - 1)
//               for hinge (-1 at exactly 1/2, and -1 for unseen points).
// The clamp keeps boundary fractions off the diverging link ends:
// eta_hat is pulled into [1/(2c+2), 1 - 1/(2c+2)] where c is the count backing
// the estimate (the global count for unseen points).
struct TabularFit {
  std::vector<double> scores;
  std::vector<double> eta_hat;
  std::vector<std::int64_t> counts;
};

TabularFit fit_tabular(const std::vector<IndexedSample>& samples,
                       const SurrogateLoss& loss, std::size_t domain_size);

// Dense row-major feature matrix.
struct DenseData {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * d + j]; }
};

struct LinearModel {
  std::vector<double> weights;
  double intercept = 0.0;

  double score(const DenseData& data, std::size_t i) const;
};

struct TrainConfig {
  int max_iters = 500;
  double learning_rate = 1.0;  // initial step for the backtracking search
  double reg = 1e-6;           // L2 strength (1e-2 is the hinge default)
  double tol = 1e-8;           // relative objective-change stopping rule
};

TrainConfig default_train_config(const SurrogateLoss& loss);

// Regularized empirical objective and its gradient:
//   (1/n) sum_i ell(y_i, w.x_i + w0) + (reg/2) (||w||^2 + w0^2).
// For hinge the gradient entries are subgradients (0 at the kink).
struct ObjectiveEval {
  double value = 0.0;
  std::vector<double> grad_w;
  double grad_w0 = 0.0;
};

ObjectiveEval eval_objective(const DenseData& data, const std::vector<int>& labels,
                             const SurrogateLoss& loss, const std::vector<double>& w,
                             double w0, double reg);

// Deterministic full-batch training from the all-zeros start. Smooth losses
// (logistic, squared, exponential) use gradient descent with a backtracking
// line search, so the objective never increases; hinge uses averaged
// subgradient descent with step 1/(reg*t), returning whichever of the
// averaged iterate, final iterate, or zero start has the lowest objective.
// Throws NonFiniteLoss if the objective or gradient leaves the finite range.
LinearModel fit_linear(const DenseData& data, const std::vector<int>& labels,
                       const SurrogateLoss& loss, const TrainConfig& cfg);

// Uniform Pr(x) over {0, ..., size-1} with eta(x) i.i.d. uniform on [0,1].
DiscreteModel generate_discrete(std::size_t size, std::uint64_t seed);

// I.i.d. draws (x, y) with x ~ Pr and y = +1 with probability eta(x).
std::vector<IndexedSample> sample_from(const DiscreteModel& model, std::size_t n,
                                       std::uint64_t seed);

// Ground-truth linear-logistic model: eta(x) = 1/(1 + exp(-(a0 + a.x))),
// all coefficients standard Gaussian.
struct LogisticGroundTruth {
  double a0 = 0.0;
  std::vector<double> a;

  double eta(const double* x) const;
};

LogisticGroundTruth generate_logistic_model(std::size_t d, std::uint64_t seed);

// Draws x ~ N(0, I_d), labels y ~ Bernoulli(eta(x)); eta values are returned
// alongside so population quantities can be estimated against the truth.
struct GaussianSample {
  DenseData x;
  std::vector<int> y;
  std::vector<double> eta;
};

GaussianSample sample_logistic_data(const LogisticGroundTruth& truth, std::size_t n,
                                    std::uint64_t seed);

}  // namespace linfrac
