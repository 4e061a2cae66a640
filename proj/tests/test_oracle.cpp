#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "linfrac/errors.hpp"
#include "linfrac/learners.hpp"
#include "linfrac/losses.hpp"
#include "linfrac/metrics.hpp"
#include "linfrac/oracle.hpp"
#include "linfrac/random.hpp"

using namespace linfrac;

namespace {

const DiscreteModel kTwoPoint{{0.5, 0.5}, {0.9, 0.2}};

// Exhaustive search over all 2^|X| classifiers, scored through the same
// population_rates + evaluate path as the sweep.
double exhaustive_psi_star(const DiscreteModel& model, const FractionalMetric& metric) {
  const auto at_prior = metric.with_prior(model.prior());
  const std::size_t k = model.size();
  double best = -1e300;
  bool found = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    TabularClassifier h(k);
    for (std::size_t i = 0; i < k; ++i) h[i] = (mask >> i) & 1 ? 1 : -1;
    const auto rates = population_rates(model, h);
    const double den = at_prior.b0 + at_prior.b1 * rates.fp + at_prior.b2 * rates.fn;
    if (std::fabs(den) <= 1e-12) continue;
    const double v = at_prior.evaluate(rates);
    if (!found || v > best) {
      found = true;
      best = v;
    }
  }
  REQUIRE(found);
  return best;
}

}  // namespace

TEST_CASE("population rates") {
  const auto r = population_rates(kTwoPoint, {1, -1});
  CHECK(std::fabs(r.fp - 0.05) < 1e-15);
  CHECK(std::fabs(r.fn - 0.1) < 1e-15);
  CHECK(std::fabs(r.prior - 0.55) < 1e-15);

  const auto all_neg = population_rates(kTwoPoint, {-1, -1});
  CHECK(all_neg.fp == 0.0);
  CHECK(std::fabs(all_neg.fn - all_neg.prior) < 1e-15);

  const auto all_pos = population_rates(kTwoPoint, {1, 1});
  CHECK(std::fabs(all_pos.fp - (1.0 - all_pos.prior)) < 1e-15);
  CHECK(all_pos.fn == 0.0);
}

TEST_CASE("optimal classifier on small models") {
  const auto best = optimal_classifier(kTwoPoint, make_accuracy(0.5));
  CHECK(best.classifier == TabularClassifier{1, -1});
  CHECK(std::fabs(best.psi_star - 0.85) < 1e-15);

  const DiscreteModel confident{{0.25, 0.25, 0.5}, {0.6, 0.8, 0.95}};
  const auto pos = optimal_classifier(confident, make_accuracy(0.5));
  CHECK(pos.classifier == TabularClassifier{1, 1, 1});

  const DiscreteModel single{{1.0}, {0.7}};
  const auto f1 = optimal_classifier(single, make_f_beta(1.0, 0.5));
  CHECK(f1.classifier == TabularClassifier{1});
  CHECK(std::fabs(f1.psi_star - 0.8235294117647058) < 1e-15);
}

TEST_CASE("optimal classifier matches exhaustive search bit for bit") {
  Rng rng(777);
  for (int trial = 0; trial < 60; ++trial) {
    const auto model = generate_discrete(2 + rng.below(9), 500 + trial);
    for (const auto* name : {"accuracy", "f-beta", "jaccard", "am", "weighted"}) {
      const auto metric = builtin(name, 0.5, 2.0, 2.0, 1.0);
      const auto sweep = optimal_classifier(model, metric);
      CHECK(sweep.psi_star == exhaustive_psi_star(model, metric));
      const auto at_prior = metric.with_prior(model.prior());
      CHECK(at_prior.evaluate(population_rates(model, sweep.classifier)) ==
            sweep.psi_star);
    }
  }
}

TEST_CASE("surrogate regret of tabular scorers") {
  const auto logistic = builtin_loss("logistic");

  TabularScorer perfect = {logistic.link(0.9), logistic.link(0.2)};
  CHECK(surrogate_regret(kTwoPoint, logistic, perfect) == 0.0);

  const TabularScorer zeros = {0.0, 0.0};
  const double expected = 0.5 * conditional_regret(logistic, 0.9, 0.0) +
                          0.5 * conditional_regret(logistic, 0.2, 0.0);
  CHECK(std::fabs(surrogate_regret(kTwoPoint, logistic, zeros) - expected) < 1e-15);

  const auto squared = builtin_loss("squared");
  const TabularScorer off = {squared.link(0.7), squared.link(0.35)};
  const double closed = 0.5 * 4.0 * (0.9 - 0.7) * (0.9 - 0.7) +
                        0.5 * 4.0 * (0.2 - 0.35) * (0.2 - 0.35);
  CHECK(std::fabs(surrogate_regret(kTwoPoint, squared, off) - closed) < 1e-12);
}

TEST_CASE("metric regret of classifiers") {
  const auto metric = make_accuracy(0.5);
  const auto best = optimal_classifier(kTwoPoint, metric);
  CHECK(psi_regret(kTwoPoint, metric, best.classifier) == 0.0);
  CHECK(std::fabs(psi_regret(kTwoPoint, metric, {-1, -1}) - 0.40) < 1e-15);

  // flipping a zero-probability point changes nothing
  const DiscreteModel degenerate{{1.0, 0.0}, {0.9, 0.2}};
  const auto opt = optimal_classifier(degenerate, metric);
  TabularClassifier flipped = opt.classifier;
  flipped[1] = -flipped[1];
  CHECK(psi_regret(degenerate, metric, flipped) == 0.0);
}

TEST_CASE("cost-sensitive regret") {
  // thresholding eta at alpha is pointwise optimal
  TabularClassifier at_alpha = {1, -1};
  CHECK(cost_sensitive_regret(kTwoPoint, 0.5, at_alpha) == 0.0);
  CHECK(std::fabs(cost_sensitive_regret(kTwoPoint, 0.5, {-1, -1}) - 0.2) < 1e-15);
  CHECK(cost_sensitive_regret(kTwoPoint, 0.0, {1, 1}) == 0.0);
}

TEST_CASE("scorer thresholding") {
  const TabularScorer f = {0.3, -0.2, 0.7};
  CHECK(threshold_scorer(f, 0.25) == TabularClassifier{1, -1, 1});
  CHECK(threshold_scorer(f, 0.7) == TabularClassifier{-1, -1, -1});  // strict >
}

TEST_CASE("population threshold tuning dominates any fixed threshold") {
  Rng rng(5150);
  for (int trial = 0; trial < 40; ++trial) {
    const auto model = generate_discrete(2 + rng.below(10), rng.below(1u << 30));
    TabularScorer f(model.size());
    for (double& v : f) v = rng.normal();
    const auto metric = make_am(0.5);
    const auto tuned = tune_threshold_population(model, f, metric);
    for (double theta : {-10.0, -0.5, 0.0, 0.5, 10.0}) {
      const auto rates = population_rates(model, threshold_scorer(f, theta));
      const auto at_prior = metric.with_prior(model.prior());
      const double den = at_prior.b0 + at_prior.b1 * rates.fp + at_prior.b2 * rates.fn;
      if (std::fabs(den) <= 1e-12) continue;
      CHECK(tuned.psi_value >= at_prior.evaluate(rates) - 1e-12);
    }
  }
}

TEST_CASE("regret transfer holds with zero slack at the optimum") {
  const auto metric = make_accuracy(0.5);
  const auto logistic = builtin_loss("logistic");
  const TabularScorer perfect = {logistic.link(0.9), logistic.link(0.2)};
  const auto report = verify_regret_transfer(kTwoPoint, metric, logistic, perfect);
  CHECK(report.surrogate_regret == 0.0);
  CHECK(report.lhs == 0.0);
  CHECK(report.rhs == 0.0);
  CHECK(report.holds);
  CHECK(report.cost_holds);
  CHECK(std::fabs(report.alpha - 0.5) < 1e-15);
  CHECK(std::fabs(report.theta_star - logistic.link(0.5)) < 1e-15);
}

TEST_CASE("regret transfer holds on random models and scorers") {
  Rng rng(31337);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto model = generate_discrete(2 + rng.below(24), 1000 + trial);
    for (const auto* metric_name : {"accuracy", "f-beta", "am", "jaccard"}) {
      const auto metric = builtin(metric_name, model.prior());
      for (const auto* loss_name : {"logistic", "squared", "exponential"}) {
        const auto loss = builtin_loss(loss_name);
        TabularScorer f(model.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
          f[i] = loss.link(std::clamp(model.etas[i] + 0.25 * rng.normal(), 0.01, 0.99));
        }
        const auto report = verify_regret_transfer(model, metric, loss, f);
        CHECK(report.holds);
        CHECK(report.cost_holds);
        CHECK(report.lhs >= -1e-12);
        CHECK(report.rhs >= -1e-12);
        ++checked;
      }
    }
  }
  CHECK(checked == 60 * 4 * 3);
}

TEST_CASE("hinge scorers have a well-defined surrogate regret") {
  const auto hinge = builtin_loss("hinge");
  // the all-ones scorer is pointwise optimal when every eta exceeds 1/2
  const DiscreteModel sure{{0.5, 0.5}, {0.8, 0.7}};
  CHECK(surrogate_regret(sure, hinge, {1.0, 1.0}) == 0.0);
  // and suboptimal on the two-point model with a low-eta point
  CHECK(surrogate_regret(kTwoPoint, hinge, {1.0, 1.0}) > 0.0);
}

TEST_CASE("model checks and CSV round trip") {
  CHECK_THROWS_AS(check_model(DiscreteModel{{0.5, 0.4}, {0.5, 0.5}}), InvalidParam);
  CHECK_THROWS_AS(check_model(DiscreteModel{{0.5, 0.5}, {1.5, 0.5}}), InvalidParam);
  CHECK_THROWS_AS(check_model(DiscreteModel{{}, {}}), EmptySample);
  CHECK_THROWS_AS(check_model(DiscreteModel{{1.0}, {0.5, 0.5}}), DimensionMismatch);

  const auto model = generate_discrete(7, 99);
  const auto back = model_from_csv(model_to_csv(model));
  CHECK(back.probs == model.probs);
  CHECK(back.etas == model.etas);
}
