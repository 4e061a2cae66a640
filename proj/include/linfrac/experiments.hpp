#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "linfrac/data_io.hpp"
#include "linfrac/learners.hpp"
#include "linfrac/oracle.hpp"
#include "linfrac/thresholding.hpp"

namespace linfrac {

// Finite-domain experiment: per repetition draw a fresh model, per n draw a
// training sample and an equally sized validation sample, fit the per-point
// surrogate minimizer on the training half, tune the threshold on the
// validation half, and measure exact population regrets.
// Output columns: n, rep, loss, metric, psi_regret, surrogate_regret.
struct DiscreteConfig {
  std::vector<long> n_grid{100, 316, 1000, 3162, 10000};
  int reps = 200;
  std::vector<std::string> losses{"logistic", "hinge"};
  std::vector<std::string> metrics{"f-beta:1", "am"};
  std::uint64_t seed = 1;
  std::size_t domain_size = 25;
  int threads = 0;  // 0 = hardware concurrency
};

CsvTable run_discrete(const DiscreteConfig& cfg);

// Gaussian-features experiment: per model draw ground-truth coefficients and
// one fixed test draw; per repetition and n draw training data, learn a
// linear scorer on 2/3, tune the threshold on 1/3, and estimate regrets on
// the test draw against the known eta.
// Output columns: n, rep, model_seed, loss, metric, psi_regret, surrogate_regret.
struct LinearConfig {
  std::vector<long> n_grid{100, 300, 1000, 3000};
  int models = 20;
  int reps = 20;
  std::vector<std::string> losses{"logistic", "hinge"};
  std::vector<std::string> metrics{"f-beta:1", "am"};
  std::size_t test_size = 100000;
  std::size_t dims = 2;
  std::uint64_t seed = 1;
  TrainConfig train;
  bool reg_overridden = false;  // false: per-loss default reg is used
  int threads = 0;
};

CsvTable run_linear(const LinearConfig& cfg);

// Monte-Carlo verification of the regret bounds on random discrete models.
// Rows: check, seed, metric, loss, lhs, rhs, holds, with check one of
//   combined          metric regret of the scorer thresholded at psi(alpha)
//                     vs cee*sqrt(2/lambda)*sqrt(surrogate regret)
//   cost-to-metric    metric regret of a random classifier vs cee * its
//                     cost-sensitive regret at alpha
//   surrogate-to-cost cost regret at a random alpha of the scorer thresholded
//                     at psi(alpha) vs sqrt(2/lambda)*sqrt(surrogate regret)
//   tuned-dominance   metric regret of the population-tuned threshold vs the
//                     fixed threshold psi(alpha)
struct VerifyConfig {
  int trials = 1000;
  int prop_models = 200;
  int classifiers_per_model = 100;
  std::uint64_t seed = 1;
  std::size_t max_domain = 25;
  int threads = 0;
};

struct VerifyOutcome {
  CsvTable csv;
  long violations = 0;
  double max_excess = 0.0;  // max over rows of lhs - rhs
};

VerifyOutcome run_verify_bounds(const VerifyConfig& cfg);

// File-driven threshold tuning. Scores and labels are n x m matrices (m = 1
// for binary); labels may come from a plain matrix or a LibSVM file. Reports
// the tuned threshold(s), the tuned metric value, and the deviation-bound
// term at the given n and delta.
struct TuneRequest {
  std::string scores_path;
  std::string labels_path;
  std::string labels_format = "auto";
  std::string metric_text = "accuracy";
  std::string averaging = "binary";  // binary | macro | micro
  double delta = 0.05;
};

struct TuneOutcome {
  CsvTable csv;
  std::string summary;
};

TuneOutcome run_tune(const TuneRequest& req);

// Evaluate the metric at caller-supplied threshold(s) instead of tuning.
// thetas: one value for binary/micro, one per label for macro.
struct EvaluateRequest {
  std::string scores_path;
  std::string labels_path;
  std::string labels_format = "auto";
  std::string metric_text = "accuracy";
  std::string averaging = "binary";
  std::vector<double> thetas{0.0};
};

TuneOutcome run_evaluate(const EvaluateRequest& req);

// Mean of `column` over rows matching the given n / loss / metric (pass -1 or
// "" to match everything); used by tests and reporting.
double mean_where(const CsvTable& table, long n, const std::string& loss,
                  const std::string& metric, const std::string& column);

// write_results plus a trailing newline, written to `path`.
void save_csv(const CsvTable& table, const std::string& path);

// Deterministic helper: runs fn(i) for i in [0, count) across threads and
// rethrows the first exception.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace linfrac
