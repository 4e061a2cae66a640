#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "doctest.h"
#include "linfrac/data_io.hpp"
#include "linfrac/errors.hpp"
#include "linfrac/experiments.hpp"

using namespace linfrac;

namespace {

double cell(const CsvTable& t, std::size_t row, std::size_t col) {
  const auto& v = t.rows[row][col];
  if (std::holds_alternative<double>(v)) return std::get<double>(v);
  return static_cast<double>(std::get<std::int64_t>(v));
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::ofstream out(name);
  out << text;
  return name;
}

}  // namespace

TEST_CASE("finite-domain experiment: schema, shape, determinism") {
  DiscreteConfig cfg;
  cfg.n_grid = {100, 316};
  cfg.reps = 4;
  cfg.seed = 42;
  cfg.threads = 1;

  const auto table = run_discrete(cfg);
  CHECK(table.columns == std::vector<std::string>{"n", "rep", "loss", "metric",
                                                  "psi_regret", "surrogate_regret"});
  CHECK(table.rows.size() == 2 * 4 * 2 * 2);

  // regrets are exact population quantities: non-negative up to rounding
  const std::size_t psi_col = 4, sur_col = 5;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    CHECK(cell(table, r, psi_col) >= -1e-12);
    CHECK(cell(table, r, sur_col) >= -1e-12);
  }

  const std::string first = write_results(table);
  CHECK(write_results(run_discrete(cfg)) == first);
  DiscreteConfig threaded = cfg;
  threaded.threads = 4;
  CHECK(write_results(run_discrete(threaded)) == first);

  DiscreteConfig reseeded = cfg;
  reseeded.seed = 43;
  CHECK(write_results(run_discrete(reseeded)) != first);
}

TEST_CASE("finite-domain experiment: squared-loss regret shrinks with n") {
  DiscreteConfig cfg;
  cfg.n_grid = {100, 1000};
  cfg.reps = 60;
  cfg.losses = {"squared"};
  cfg.metrics = {"f-beta:1"};
  cfg.seed = 7;

  const auto table = run_discrete(cfg);
  const double small_n = mean_where(table, 100, "squared", "f-beta:1", "psi_regret");
  const double large_n = mean_where(table, 1000, "squared", "f-beta:1", "psi_regret");
  CHECK(large_n < small_n);
  const double sur_small = mean_where(table, 100, "squared", "f-beta:1", "surrogate_regret");
  const double sur_large = mean_where(table, 1000, "squared", "f-beta:1", "surrogate_regret");
  CHECK(sur_large < sur_small);
}

TEST_CASE("gaussian-features experiment: schema, shape, determinism") {
  LinearConfig cfg;
  cfg.n_grid = {100};
  cfg.models = 2;
  cfg.reps = 2;
  cfg.test_size = 4000;
  cfg.seed = 9;
  cfg.threads = 1;

  const auto table = run_linear(cfg);
  CHECK(table.columns ==
        std::vector<std::string>{"n", "rep", "model_seed", "loss", "metric", "psi_regret",
                                 "surrogate_regret"});
  CHECK(table.rows.size() == 1 * 2 * 2 * 2 * 2);

  const std::string first = write_results(table);
  LinearConfig threaded = cfg;
  threaded.threads = 3;
  CHECK(write_results(run_linear(threaded)) == first);
}

TEST_CASE("bound verification suite reports no violations") {
  VerifyConfig cfg;
  cfg.trials = 40;
  cfg.prop_models = 4;
  cfg.classifiers_per_model = 25;
  cfg.seed = 1234;

  const auto outcome = run_verify_bounds(cfg);
  CHECK(outcome.csv.columns == std::vector<std::string>{"check", "seed", "metric", "loss",
                                                        "lhs", "rhs", "holds"});
  CHECK(outcome.csv.rows.size() == 40 * 4 + 4 * 25);
  CHECK(outcome.violations == 0);
  CHECK(outcome.max_excess <= 1e-12);

  VerifyConfig threaded = cfg;
  threaded.threads = 3;
  CHECK(write_results(run_verify_bounds(threaded).csv) == write_results(outcome.csv));
}

TEST_CASE("file-level tune and evaluate agree") {
  const auto scores = write_temp("exp_scores.txt", "0.9\n0.2\n0.8\n0.1\n");
  const auto labels = write_temp("exp_labels.txt", "1\n1\n-1\n-1\n");

  TuneRequest treq;
  treq.scores_path = scores;
  treq.labels_path = labels;
  treq.metric_text = "f-beta:1";
  treq.averaging = "binary";
  treq.delta = 0.1;
  const auto tuned = run_tune(treq);
  CHECK(tuned.csv.columns == std::vector<std::string>{"mode", "label", "theta", "value",
                                                      "n", "delta", "bound"});
  REQUIRE(tuned.csv.rows.size() == 1);
  const double theta = cell(tuned.csv, 0, 2);
  const double value = cell(tuned.csv, 0, 3);
  CHECK(std::fabs(theta - 0.15) < 1e-12);
  CHECK(std::fabs(value - 0.8) < 1e-15);
  CHECK(cell(tuned.csv, 0, 4) == 4.0);           // n
  CHECK(cell(tuned.csv, 0, 6) > 0.0);            // bound
  CHECK(!tuned.summary.empty());

  EvaluateRequest ereq;
  ereq.scores_path = scores;
  ereq.labels_path = labels;
  ereq.metric_text = "f-beta:1";
  ereq.averaging = "binary";
  ereq.thetas = {theta};
  const auto evaluated = run_evaluate(ereq);
  CHECK(evaluated.csv.columns ==
        std::vector<std::string>{"mode", "label", "theta", "value"});
  CHECK(cell(evaluated.csv, 0, 3) == value);

  // micro on a single label column is the binary result
  TuneRequest micro = treq;
  micro.averaging = "micro";
  const auto micro_out = run_tune(micro);
  CHECK(cell(micro_out.csv, 0, 2) == theta);
  CHECK(cell(micro_out.csv, 0, 3) == value);

  std::remove(scores.c_str());
  std::remove(labels.c_str());
}

TEST_CASE("file-level macro tuning over multilabel files") {
  const auto scores = write_temp("exp_scores2.txt",
                                 "-1 1\n-1 1\n1 1\n1 1\n1 1\n1 1\n1 -1\n-1 -1\n-1 -1\n-1 -1\n");
  const auto labels = write_temp(
      "exp_labels2.txt", "1 1\n1 1\n1 1\n1 -1\n1 -1\n1 -1\n-1 -1\n-1 -1\n-1 -1\n-1 -1\n");

  TuneRequest treq;
  treq.scores_path = scores;
  treq.labels_path = labels;
  treq.metric_text = "accuracy";
  treq.averaging = "macro";
  const auto tuned = run_tune(treq);
  REQUIRE(tuned.csv.rows.size() == 2);
  CHECK(std::fabs(cell(tuned.csv, 0, 3) - 0.7) < 1e-12);
  CHECK(std::fabs(cell(tuned.csv, 1, 3) - 0.7) < 1e-12);

  EvaluateRequest ereq;
  ereq.scores_path = scores;
  ereq.labels_path = labels;
  ereq.metric_text = "accuracy";
  ereq.averaging = "micro";
  ereq.thetas = {0.0};
  const auto micro = run_evaluate(ereq);
  CHECK(std::fabs(cell(micro.csv, 0, 3) - 0.7) < 1e-12);

  std::remove(scores.c_str());
  std::remove(labels.c_str());
}

TEST_CASE("run_tune validates shapes and formats") {
  const auto scores = write_temp("exp_scores3.txt", "0.5\n-0.5\n");
  const auto labels = write_temp("exp_labels3.txt", "1 -1\n-1 1\n");
  TuneRequest treq;
  treq.scores_path = scores;
  treq.labels_path = labels;
  treq.averaging = "binary";
  CHECK_THROWS_AS((void)run_tune(treq), DimensionMismatch);
  treq.averaging = "sideways";
  CHECK_THROWS_AS((void)run_tune(treq), InvalidParam);
  std::remove(scores.c_str());
  std::remove(labels.c_str());

  EvaluateRequest ereq;
  ereq.scores_path = "missing_scores.txt";
  ereq.labels_path = "missing_labels.txt";
  CHECK_THROWS_AS((void)run_evaluate(ereq), InvalidParam);
}

TEST_CASE("mean_where filters by key columns") {
  CsvTable t;
  t.columns = {"n", "rep", "loss", "metric", "psi_regret", "surrogate_regret"};
  t.rows.push_back({std::int64_t{100}, std::int64_t{0}, std::string("logistic"),
                    std::string("am"), 0.5, 0.1});
  t.rows.push_back({std::int64_t{100}, std::int64_t{1}, std::string("logistic"),
                    std::string("am"), 0.3, 0.2});
  t.rows.push_back({std::int64_t{200}, std::int64_t{0}, std::string("hinge"),
                    std::string("am"), 0.9, 0.3});

  CHECK(mean_where(t, 100, "logistic", "am", "psi_regret") == doctest::Approx(0.4));
  CHECK(mean_where(t, -1, "", "am", "psi_regret") ==
        doctest::Approx((0.5 + 0.3 + 0.9) / 3.0));
  CHECK(mean_where(t, 200, "hinge", "", "surrogate_regret") == doctest::Approx(0.3));
  CHECK_THROWS_AS((void)mean_where(t, 500, "logistic", "am", "psi_regret"),
                  InvalidParam);
}
