#include "linfrac/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace linfrac {

void check_model(const DiscreteModel& model) {
  if (model.probs.empty()) throw EmptySample("model has no domain points");
  if (model.probs.size() != model.etas.size()) {
    throw DimensionMismatch("model probs/etas size mismatch");
  }
  double total = 0.0;
  for (double p : model.probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidParam("model probabilities must be >= 0");
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw InvalidParam("model probabilities sum to " + std::to_string(total));
  }
  for (double e : model.etas) {
    if (!(e >= 0.0 && e <= 1.0)) throw InvalidParam("model etas must lie in [0,1]");
  }
}

double DiscreteModel::prior() const {
  double p = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) p += probs[i] * etas[i];
  return p;
}

ConfusionRates population_rates(const DiscreteModel& model, const TabularClassifier& h) {
  check_model(model);
  if (h.size() != model.size()) {
    throw DimensionMismatch("classifier size " + std::to_string(h.size()) +
                            " does not match model size " + std::to_string(model.size()));
  }
  double fp = 0.0, fn = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    if (h[i] > 0) {
      fp += model.probs[i] * (1.0 - model.etas[i]);
    } else {
      fn += model.probs[i] * model.etas[i];
    }
  }
  return ConfusionRates(fp, fn, model.prior());
}

OptimalClassifier optimal_classifier(const DiscreteModel& model,
                                     const FractionalMetric& metric) {
  check_model(model);
  const FractionalMetric m = metric.with_prior(model.prior());

  std::vector<double> etas = model.etas;
  std::sort(etas.begin(), etas.end());
  etas.erase(std::unique(etas.begin(), etas.end()), etas.end());

  std::vector<double> cut_points;
  cut_points.push_back(etas.front() - 1.0);
  for (std::size_t i = 0; i + 1 < etas.size(); ++i) {
    cut_points.push_back(etas[i] + 0.5 * (etas[i + 1] - etas[i]));
  }
  cut_points.push_back(etas.back() + 1.0);

  OptimalClassifier best;
  double best_value = -std::numeric_limits<double>::infinity();
  bool found = false;
  // Rates are recomputed from scratch per candidate (the domain is small), so
  // any classifier enumerated elsewhere scores through the identical code path.
  for (double cut : cut_points) {
    TabularClassifier h(model.size());
    for (std::size_t i = 0; i < model.size(); ++i) h[i] = model.etas[i] > cut ? 1 : -1;
    double value;
    try {
      value = m.evaluate(population_rates(model, h));
    } catch (const DegenerateDenominator&) {
      continue;
    }
    if (!found || value > best_value) {
      found = true;
      best_value = value;
      best.classifier = std::move(h);
    }
  }
  if (!found) {
    throw AllCandidatesDegenerate("no thresholding of eta has a well-defined value for '" +
                                  m.name + "'");
  }
  best.psi_star = best_value;
  return best;
}

double surrogate_regret(const DiscreteModel& model, const SurrogateLoss& loss,
                        const TabularScorer& f) {
  check_model(model);
  if (f.size() != model.size()) {
    throw DimensionMismatch("scorer size does not match model size");
  }
  double regret = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    regret += model.probs[i] * (conditional_risk(loss, model.etas[i], f[i]) -
                                optimal_conditional_risk(loss, model.etas[i]));
  }
  return regret;
}

double psi_regret(const DiscreteModel& model, const FractionalMetric& metric,
                  const TabularClassifier& h) {
  return psi_regret(model, metric, h, optimal_classifier(model, metric).psi_star);
}

double psi_regret(const DiscreteModel& model, const FractionalMetric& metric,
                  const TabularClassifier& h, double psi_star) {
  const FractionalMetric m = metric.with_prior(model.prior());
  return psi_star - m.evaluate(population_rates(model, h));
}

double cost_sensitive_regret(const DiscreteModel& model, double alpha,
                             const TabularClassifier& h) {
  check_model(model);
  if (h.size() != model.size()) {
    throw DimensionMismatch("classifier size does not match model size");
  }
  double regret = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const int optimal = model.etas[i] > alpha ? 1 : -1;
    const int predicted = h[i] > 0 ? 1 : -1;
    if (predicted != optimal) regret += model.probs[i] * std::fabs(model.etas[i] - alpha);
  }
  return regret;
}

TabularClassifier threshold_scorer(const TabularScorer& f, double theta) {
  TabularClassifier h(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) h[i] = f[i] > theta ? 1 : -1;
  return h;
}

PopulationTuned tune_threshold_population(const DiscreteModel& model,
                                          const TabularScorer& f,
                                          const FractionalMetric& metric) {
  check_model(model);
  if (f.size() != model.size()) {
    throw DimensionMismatch("scorer size does not match model size");
  }
  const FractionalMetric m = metric.with_prior(model.prior());

  std::vector<double> scores = f;
  std::sort(scores.begin(), scores.end());
  scores.erase(std::unique(scores.begin(), scores.end()), scores.end());

  std::vector<double> cut_points;
  cut_points.push_back(scores.front() - 1.0);
  for (std::size_t i = 0; i + 1 < scores.size(); ++i) {
    cut_points.push_back(scores[i] + 0.5 * (scores[i + 1] - scores[i]));
  }
  cut_points.push_back(scores.back() + 1.0);

  PopulationTuned best;
  double best_value = -std::numeric_limits<double>::infinity();
  bool found = false;
  for (double cut : cut_points) {
    double value;
    try {
      value = m.evaluate(population_rates(model, threshold_scorer(f, cut)));
    } catch (const DegenerateDenominator&) {
      continue;
    }
    if (!found || value > best_value) {
      found = true;
      best_value = value;
      best.theta = cut;
    }
  }
  if (!found) {
    throw AllCandidatesDegenerate("no thresholding of the scorer has a well-defined value");
  }
  best.psi_value = best_value;
  return best;
}

RegretTransferReport verify_regret_transfer(const DiscreteModel& model,
                                            const FractionalMetric& metric,
                                            const SurrogateLoss& loss,
                                            const TabularScorer& f) {
  if (!loss.is_proper()) {
    throw InvalidParam("regret transfer needs a proper loss with a link");
  }
  RegretTransferReport report;
  const FractionalMetric m = metric.with_prior(model.prior());
  const auto optimum = optimal_classifier(model, m);
  report.psi_star = optimum.psi_star;
  const MetricConstants consts = constants(m, optimum.psi_star);
  report.alpha = consts.alpha;
  report.theta_star = loss.link(consts.alpha);

  const TabularClassifier h = threshold_scorer(f, report.theta_star);
  report.lhs = psi_regret(model, m, h, optimum.psi_star);
  report.surrogate_regret = surrogate_regret(model, loss, f);
  report.rhs =
      consts.cee * std::sqrt(2.0 / loss.lambda) * std::sqrt(report.surrogate_regret);
  report.holds = report.lhs <= report.rhs + 1e-12;

  report.cost_regret = cost_sensitive_regret(model, consts.alpha, h);
  report.cost_lhs = report.lhs;
  report.cost_rhs = consts.cee * report.cost_regret;
  report.cost_holds = report.cost_lhs <= report.cost_rhs + 1e-12;
  return report;
}

std::string model_to_csv(const DiscreteModel& model) {
  check_model(model);
  std::ostringstream out;
  out << "prob,eta";
  char buf[64];
  for (std::size_t i = 0; i < model.size(); ++i) {
    std::snprintf(buf, sizeof buf, "\n%.17g,%.17g", model.probs[i], model.etas[i]);
    out << buf;
  }
  return out.str();
}

DiscreteModel model_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  DiscreteModel model;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "prob,eta") throw MalformedLine("expected header 'prob,eta'", line_no);
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw MalformedLine("expected 'prob,eta' row", line_no);
    try {
      model.probs.push_back(std::stod(line.substr(0, comma)));
      model.etas.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw MalformedLine("bad number in model row", line_no);
    }
    if (!std::isfinite(model.probs.back()) || !std::isfinite(model.etas.back())) {
      throw NonFiniteValue("non-finite model entry", line_no);
    }
  }
  check_model(model);
  return model;
}

}  // namespace linfrac
