#pragma once

#include <cstddef>
#include <vector>

#include "linfrac/metrics.hpp"

namespace linfrac {

// Real-valued scores with labels in {-1, +1}. Predictions threshold the score:
// predict +1 iff f > theta (a score exactly at the threshold predicts -1).
struct ScoredSample {
  std::vector<double> scores;
  std::vector<int> labels;

  std::size_t size() const { return scores.size(); }
};

// Per-label samples over the same instances; every label must have the same
// sample size.
struct MultilabelScores {
  std::vector<ScoredSample> per_label;
};

struct TunedThreshold {
  double theta = 0.0;
  double metric_value = 0.0;
  std::size_t candidates_evaluated = 0;
};

struct MacroTuned {
  std::vector<TunedThreshold> per_label;
  double macro_value = 0.0;
};

// Empirical (fp, fn, prior) of thresholding the sample at theta. Counts are
// integer-exact; each rate is a single count/n division.
ConfusionRates empirical_rates(const ScoredSample& sample, double theta);

// Maximize the empirical metric over the finite candidate set: midpoints of
// consecutive distinct sorted scores plus sentinels min-1 and max+1 (every
// achievable thresholding of the sample appears exactly once). The metric is
// re-instantiated at the sample's empirical prior before evaluation.
// Candidates with a degenerate denominator are skipped; ties in value resolve
// to the smallest theta. Throws AllCandidatesDegenerate if nothing survives.
TunedThreshold tune_threshold(const ScoredSample& sample, const FractionalMetric& metric);

// Per-label tuning; each label gets its own threshold and its own empirical
// prior, and macro_value is the plain average of the per-label tuned values.
MacroTuned tune_macro(const MultilabelScores& scores, const FractionalMetric& metric);

// One shared threshold for all labels, chosen to maximize the metric applied
// to the label-averaged rates (equivalently: the pooled sample's rates, since
// all labels have equal size). Candidates are the pooled midpoints/sentinels.
TunedThreshold tune_micro(const MultilabelScores& scores, const FractionalMetric& metric);

// Deviation bound for threshold tuning on n validation points at confidence
// 1 - delta: (16*D/gamma) * sqrt((4*(1 + ln n) + 2*ln(16/delta)) / n).
double tuning_deviation_bound(std::size_t n, double delta, const MetricConstants& consts);

}  // namespace linfrac
