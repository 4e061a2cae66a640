// Command-line harness: experiment drivers and the file-level tune/evaluate
// pipeline. Every command emits CSV (stdout by default, --out to a file) and
// is fully deterministic given its flags.

#include <cstdio>
#include <exception>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "linfrac/data_io.hpp"
#include "linfrac/errors.hpp"
#include "linfrac/experiments.hpp"

namespace {

void emit(const linfrac::CsvTable& table, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << linfrac::write_results(table) << '\n';
  } else {
    linfrac::save_csv(table, out_path);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linfrac: threshold-tuned classification under linear-fractional metrics"};
  app.require_subcommand(1);

  // ---- run-discrete ----------------------------------------------------
  linfrac::DiscreteConfig dcfg;
  std::string discrete_out;
  auto* discrete = app.add_subcommand(
      "run-discrete",
      "Finite-domain experiment with exact regrets: fit a tabular class-probability "
      "model per loss, tune the threshold on a validation draw, report exact metric "
      "and surrogate regrets");
  discrete->add_option("--n-grid", dcfg.n_grid, "Training sizes (validation matches)")
      ->delimiter(',');
  discrete->add_option("--reps", dcfg.reps, "Repetitions")->check(CLI::PositiveNumber);
  discrete->add_option("--loss", dcfg.losses, "Surrogate losses (repeatable)");
  discrete->add_option("--metric", dcfg.metrics, "Metrics (repeatable)");
  discrete->add_option("--seed", dcfg.seed, "Master seed");
  discrete->add_option("--domain-size", dcfg.domain_size, "Instance-space size")
      ->check(CLI::PositiveNumber);
  discrete->add_option("--threads", dcfg.threads, "Worker threads (0 = auto)");
  discrete->add_option("--out", discrete_out, "Output CSV path (default stdout)");

  // ---- run-linear ------------------------------------------------------
  linfrac::LinearConfig lcfg;
  std::string linear_out;
  auto* linear = app.add_subcommand(
      "run-linear",
      "Gaussian-features experiment: train linear scorers against a logistic "
      "ground truth, tune thresholds on a held-out third, estimate regrets on a "
      "fixed test draw");
  linear->add_option("--n-grid", lcfg.n_grid, "Total sample sizes (2/3 train, 1/3 validation)")
      ->delimiter(',');
  linear->add_option("--models", lcfg.models, "Ground-truth models")->check(CLI::PositiveNumber);
  linear->add_option("--reps", lcfg.reps, "Repetitions per model")->check(CLI::PositiveNumber);
  linear->add_option("--loss", lcfg.losses, "Surrogate losses (repeatable)");
  linear->add_option("--metric", lcfg.metrics, "Metrics (repeatable)");
  linear->add_option("--test-size", lcfg.test_size, "Test-draw size per model")
      ->check(CLI::PositiveNumber);
  linear->add_option("--dims", lcfg.dims, "Feature dimension")->check(CLI::PositiveNumber);
  linear->add_option("--seed", lcfg.seed, "Master seed");
  linear->add_option("--iters", lcfg.train.max_iters, "Max optimizer iterations")
      ->check(CLI::PositiveNumber);
  linear->add_option("--lr", lcfg.train.learning_rate, "Initial step size");
  auto* reg_opt = linear->add_option("--reg", lcfg.train.reg, "L2 regularization weight");
  linear->add_option("--tol", lcfg.train.tol, "Relative-decrease stopping tolerance");
  linear->add_option("--threads", lcfg.threads, "Worker threads (0 = auto)");
  linear->add_option("--out", linear_out, "Output CSV path (default stdout)");

  // ---- tune ------------------------------------------------------------
  linfrac::TuneRequest treq;
  std::string tune_out;
  auto* tune = app.add_subcommand(
      "tune", "Tune the decision threshold(s) for a metric on a scored sample");
  tune->alias("tune-threshold");
  tune->add_option("--scores-file", treq.scores_path, "Whitespace-separated score matrix")
      ->required();
  tune->add_option("--labels-file", treq.labels_path, "Label file")->required();
  tune->add_option("--labels-format", treq.labels_format, "auto | plain | libsvm")
      ->check(CLI::IsMember({"auto", "plain", "libsvm"}));
  tune->add_option("--metric", treq.metric_text,
                   "accuracy | f-beta:B | jaccard | am | weighted:W1,W2 | "
                   "custom:a0,a1,a2,b0,b1,b2");
  tune->add_option("--averaging", treq.averaging, "binary | micro | macro")
      ->check(CLI::IsMember({"binary", "micro", "macro"}));
  tune->add_option("--delta", treq.delta, "Confidence level for the deviation bound")
      ->check(CLI::Range(1e-12, 1.0 - 1e-12));
  tune->add_option("--out", tune_out, "Output CSV path (default stdout)");

  // ---- evaluate ----------------------------------------------------------
  linfrac::EvaluateRequest ereq;
  std::string eval_out;
  auto* evaluate = app.add_subcommand(
      "evaluate", "Evaluate a metric at caller-supplied threshold(s)");
  evaluate->add_option("--scores-file", ereq.scores_path, "Whitespace-separated score matrix")
      ->required();
  evaluate->add_option("--labels-file", ereq.labels_path, "Label file")->required();
  evaluate->add_option("--labels-format", ereq.labels_format, "auto | plain | libsvm")
      ->check(CLI::IsMember({"auto", "plain", "libsvm"}));
  evaluate->add_option("--metric", ereq.metric_text, "Metric (same grammar as tune)");
  evaluate->add_option("--averaging", ereq.averaging, "binary | micro | macro")
      ->check(CLI::IsMember({"binary", "micro", "macro"}));
  evaluate->add_option("--theta", ereq.thetas, "Threshold (repeat per label for macro)")
      ->delimiter(',');
  evaluate->add_option("--out", eval_out, "Output CSV path (default stdout)");

  // ---- verify-bounds -----------------------------------------------------
  linfrac::VerifyConfig vcfg;
  std::string verify_out;
  auto* verify = app.add_subcommand(
      "verify-bounds",
      "Monte-Carlo check of the regret inequalities on random finite-domain models");
  verify->add_option("--trials", vcfg.trials, "Scorer-based trials")->check(CLI::PositiveNumber);
  verify->add_option("--prop-models", vcfg.prop_models, "Models for the classifier-based check")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--classifiers-per-model", vcfg.classifiers_per_model,
                     "Random classifiers per model")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", vcfg.seed, "Master seed");
  verify->add_option("--max-domain", vcfg.max_domain, "Largest instance-space size")
      ->check(CLI::Range(std::size_t{2}, std::size_t{10000}));
  verify->add_option("--threads", vcfg.threads, "Worker threads (0 = auto)");
  verify->add_option("--out", verify_out, "Output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (discrete->parsed()) {
      emit(linfrac::run_discrete(dcfg), discrete_out);
    } else if (linear->parsed()) {
      lcfg.reg_overridden = reg_opt->count() > 0;
      emit(linfrac::run_linear(lcfg), linear_out);
    } else if (tune->parsed()) {
      const linfrac::TuneOutcome outcome = linfrac::run_tune(treq);
      emit(outcome.csv, tune_out);
      std::cerr << outcome.summary;
    } else if (evaluate->parsed()) {
      const linfrac::TuneOutcome outcome = linfrac::run_evaluate(ereq);
      emit(outcome.csv, eval_out);
      std::cerr << outcome.summary;
    } else if (verify->parsed()) {
      const linfrac::VerifyOutcome outcome = linfrac::run_verify_bounds(vcfg);
      emit(outcome.csv, verify_out);
      std::cerr << "checks: " << outcome.csv.rows.size() << "  violations: " << outcome.violations
                << "  max lhs-rhs excess: " << outcome.max_excess << '\n';
      if (outcome.violations > 0) {
        std::cerr << "bound violation detected\n";
        return 2;
      }
    }
  } catch (const linfrac::ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
