#include "linfrac/thresholding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace linfrac {

namespace {

void check_sample(const ScoredSample& sample) {
  if (sample.scores.empty()) throw EmptySample("sample has no points");
  if (sample.scores.size() != sample.labels.size()) {
    throw DimensionMismatch("scores/labels size mismatch: " +
                            std::to_string(sample.scores.size()) + " vs " +
                            std::to_string(sample.labels.size()));
  }
  for (int y : sample.labels) {
    if (y != 1 && y != -1) {
      throw InvalidParam("labels must be -1 or +1, got " + std::to_string(y));
    }
  }
  for (double s : sample.scores) {
    if (!std::isfinite(s)) throw InvalidParam("scores must be finite");
  }
}

struct SweepBest {
  bool found = false;
  double theta = 0.0;
  double value = -std::numeric_limits<double>::infinity();
  std::size_t candidates = 0;
};

// Walk the candidate thresholds in increasing order, maintaining integer
// error counts, and keep the best (strictly better value wins; the first
// best seen has the smallest theta, which is the tie rule). The evaluation
// per candidate is count/n division plus one metric call, identical to what
// empirical_rates would produce at that theta.
template <typename Eval>
SweepBest sweep_candidates(const ScoredSample& sample, Eval&& evaluate_counts) {
  const std::size_t n = sample.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return sample.scores[i] < sample.scores[j];
  });

  std::size_t pos_total = 0;
  for (int y : sample.labels) pos_total += y > 0;
  const std::size_t neg_total = n - pos_total;

  SweepBest best;
  auto consider = [&](double theta, std::size_t fp_count, std::size_t fn_count) {
    ++best.candidates;
    double value;
    if (!evaluate_counts(fp_count, fn_count, value)) return;
    if (!best.found || value > best.value) {
      best.found = true;
      best.value = value;
      best.theta = theta;
    }
  };

  const double lo = sample.scores[order.front()] - 1.0;
  const double hi = sample.scores[order.back()] + 1.0;

  // Below every score: everything predicted +1.
  std::size_t fp_count = neg_total;
  std::size_t fn_count = 0;
  consider(lo, fp_count, fn_count);

  std::size_t i = 0;
  while (i < n) {
    const double v = sample.scores[order[i]];
    std::size_t j = i;
    while (j < n && sample.scores[order[j]] == v) {
      if (sample.labels[order[j]] > 0) {
        ++fn_count;
      } else {
        --fp_count;
      }
      ++j;
    }
    const double theta =
        j < n ? v + 0.5 * (sample.scores[order[j]] - v) : hi;
    consider(theta, fp_count, fn_count);
    i = j;
  }
  return best;
}

TunedThreshold tune_on(const ScoredSample& sample, const FractionalMetric& metric_at_prior) {
  const std::size_t n = sample.size();
  std::size_t pos_total = 0;
  for (int y : sample.labels) pos_total += y > 0;
  const double prior = static_cast<double>(pos_total) / static_cast<double>(n);

  const auto best = sweep_candidates(
      sample, [&](std::size_t fp_count, std::size_t fn_count, double& value) {
        const ConfusionRates rates(static_cast<double>(fp_count) / static_cast<double>(n),
                                   static_cast<double>(fn_count) / static_cast<double>(n),
                                   prior);
        const double den =
            metric_at_prior.b0 + metric_at_prior.b1 * rates.fp + metric_at_prior.b2 * rates.fn;
        if (std::fabs(den) <= kDenomEpsilon) return false;
        value = metric_at_prior.evaluate(rates);
        return true;
      });

  if (!best.found) {
    throw AllCandidatesDegenerate("every candidate threshold for metric '" +
                                  metric_at_prior.name + "' has a degenerate denominator");
  }
  TunedThreshold out;
  out.theta = best.theta;
  out.metric_value = best.value;
  out.candidates_evaluated = best.candidates;
  return out;
}

}  // namespace

ConfusionRates empirical_rates(const ScoredSample& sample, double theta) {
  check_sample(sample);
  const std::size_t n = sample.size();
  std::size_t fp_count = 0, fn_count = 0, pos_total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool positive = sample.labels[i] > 0;
    const bool predicted_positive = sample.scores[i] > theta;
    pos_total += positive;
    fp_count += predicted_positive && !positive;
    fn_count += !predicted_positive && positive;
  }
  const double dn = static_cast<double>(n);
  return ConfusionRates(static_cast<double>(fp_count) / dn,
                        static_cast<double>(fn_count) / dn,
                        static_cast<double>(pos_total) / dn);
}

TunedThreshold tune_threshold(const ScoredSample& sample, const FractionalMetric& metric) {
  check_sample(sample);
  std::size_t pos_total = 0;
  for (int y : sample.labels) pos_total += y > 0;
  const double prior =
      static_cast<double>(pos_total) / static_cast<double>(sample.size());
  return tune_on(sample, metric.with_prior(prior));
}

MacroTuned tune_macro(const MultilabelScores& scores, const FractionalMetric& metric) {
  if (scores.per_label.empty()) throw EmptySample("no labels to tune");
  const std::size_t n = scores.per_label.front().size();
  MacroTuned out;
  double sum = 0.0;
  for (const auto& sample : scores.per_label) {
    check_sample(sample);
    if (sample.size() != n) {
      throw DimensionMismatch("all labels must have the same sample size");
    }
    out.per_label.push_back(tune_threshold(sample, metric));
    sum += out.per_label.back().metric_value;
  }
  out.macro_value = sum / static_cast<double>(out.per_label.size());
  return out;
}

TunedThreshold tune_micro(const MultilabelScores& scores, const FractionalMetric& metric) {
  if (scores.per_label.empty()) throw EmptySample("no labels to tune");
  const std::size_t n = scores.per_label.front().size();
  ScoredSample pooled;
  for (const auto& sample : scores.per_label) {
    check_sample(sample);
    if (sample.size() != n) {
      throw DimensionMismatch("all labels must have the same sample size");
    }
    pooled.scores.insert(pooled.scores.end(), sample.scores.begin(), sample.scores.end());
    pooled.labels.insert(pooled.labels.end(), sample.labels.begin(), sample.labels.end());
  }
  // With equal per-label sizes, the label-average of (fp_i, fn_i, prior_i) at
  // a shared theta equals the pooled sample's rates, so the shared-threshold
  // sweep is exactly a binary sweep over the pooled points.
  return tune_threshold(pooled, metric);
}

double tuning_deviation_bound(std::size_t n, double delta, const MetricConstants& consts) {
  if (n == 0) throw InvalidParam("deviation bound needs n >= 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidParam("delta must lie in (0,1), got " + std::to_string(delta));
  }
  const double dn = static_cast<double>(n);
  const double inside = (4.0 * (1.0 + std::log(dn)) + 2.0 * std::log(16.0 / delta)) / dn;
  return 16.0 * consts.d_bound / consts.gamma * std::sqrt(inside);
}

}  // namespace linfrac
