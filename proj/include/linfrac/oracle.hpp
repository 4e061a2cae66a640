#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linfrac/losses.hpp"
#include "linfrac/metrics.hpp"

namespace linfrac {

// Finite-domain distribution: point x = i has mass probs[i] and conditional
// positive-class probability etas[i]. Everything downstream of it is computed
// in closed form, which is what makes exact regret checks possible.
struct DiscreteModel {
  std::vector<double> probs;
  std::vector<double> etas;

  std::size_t size() const { return probs.size(); }
  double prior() const;
};

// Deterministic predictions / real scores, one entry per domain point.
using TabularClassifier = std::vector<int>;
using TabularScorer = std::vector<double>;

struct OptimalClassifier {
  TabularClassifier classifier;
  double psi_star = 0.0;
};

struct PopulationTuned {
  double theta = 0.0;
  double psi_value = 0.0;
};

// End-to-end regret transfer check on one (model, metric, loss, scorer)
// instance: threshold the scores at theta_star = psi(alpha) and compare the
// metric regret against cee * sqrt(2/lambda) * sqrt(surrogate regret), plus
// the intermediate cost-regret link for the same classifier.
struct RegretTransferReport {
  double psi_star = 0.0;
  double alpha = 0.0;
  double theta_star = 0.0;
  double lhs = 0.0;            // metric regret of the thresholded scorer
  double rhs = 0.0;            // cee * sqrt(2/lambda) * sqrt(surrogate regret)
  bool holds = false;
  double cost_lhs = 0.0;       // same metric regret
  double cost_rhs = 0.0;       // cee * cost-sensitive regret at alpha
  bool cost_holds = false;
  double surrogate_regret = 0.0;
  double cost_regret = 0.0;
};

void check_model(const DiscreteModel& model);

ConfusionRates population_rates(const DiscreteModel& model, const TabularClassifier& h);

// Maximizes the metric over all thresholdings of eta (sentinels plus the
// midpoints between consecutive distinct eta values; the optimum is always of
// this form). Rates for each candidate are computed from scratch so the value
// agrees bit for bit with a brute-force enumeration that scores the same
// classifier. The metric is re-instantiated at the model's prior.
OptimalClassifier optimal_classifier(const DiscreteModel& model,
                                     const FractionalMetric& metric);

// Population surrogate regret of a scorer: mean conditional risk minus the
// pointwise-optimal risk. Proper losses use psi(eta) as the pointwise
// optimum; hinge uses its closed-form optimal risk 2*min(eta, 1-eta).
double surrogate_regret(const DiscreteModel& model, const SurrogateLoss& loss,
                        const TabularScorer& f);

// psi_star - Psi(rates of h); the overload with psi_star skips recomputing
// the optimum.
double psi_regret(const DiscreteModel& model, const FractionalMetric& metric,
                  const TabularClassifier& h);
double psi_regret(const DiscreteModel& model, const FractionalMetric& metric,
                  const TabularClassifier& h, double psi_star);

// Sum over x of Pr(x) * |eta(x) - alpha| where h differs from the optimal
// cost-sensitive rule sign(eta - alpha) (ties predict -1).
double cost_sensitive_regret(const DiscreteModel& model, double alpha,
                             const TabularClassifier& h);

// Thresholds the scorer at theta (predict +1 iff f > theta).
TabularClassifier threshold_scorer(const TabularScorer& f, double theta);

// Best thresholding of the scorer measured on the population (candidates are
// the scorer's midpoints plus sentinels).
PopulationTuned tune_threshold_population(const DiscreteModel& model,
                                          const TabularScorer& f,
                                          const FractionalMetric& metric);

RegretTransferReport verify_regret_transfer(const DiscreteModel& model,
                                            const FractionalMetric& metric,
                                            const SurrogateLoss& loss,
                                            const TabularScorer& f);

// CSV round trip for models (columns: prob, eta).
std::string model_to_csv(const DiscreteModel& model);
DiscreteModel model_from_csv(const std::string& text);

}  // namespace linfrac
