#include "linfrac/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace linfrac {

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {

// Instantiate a parsed metric at an empirical prior. Boundary priors are only
// meaningful for prior-independent coefficient sets, which with_prior lets
// through; prior-dependent families throw InvalidParam as they should.
FractionalMetric metric_at_prior(const MetricSpec& spec, double prior) {
  if (prior > 0.0 && prior < 1.0) return spec.instantiate(prior);
  return spec.instantiate(0.5).with_prior(prior);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Finite-domain experiment.

CsvTable run_discrete(const DiscreteConfig& cfg) {
  if (cfg.reps <= 0) throw InvalidParam("reps must be >= 1");
  if (cfg.n_grid.empty()) throw InvalidParam("n grid must not be empty");
  for (long n : cfg.n_grid) {
    if (n <= 0) throw InvalidParam("n grid entries must be >= 1");
  }
  std::vector<MetricSpec> metric_specs;
  for (const auto& text : cfg.metrics) metric_specs.push_back(parse_metric(text));
  std::vector<SurrogateLoss> losses;
  for (const auto& name : cfg.losses) losses.push_back(builtin_loss(name));

  struct Row {
    long n;
    int rep, loss, metric;
    double psi_regret, surrogate_regret;
  };
  std::vector<std::vector<Row>> per_rep(cfg.reps);

  parallel_for(cfg.reps, cfg.threads, [&](std::size_t rep) {
    const std::uint64_t rep_seed = cfg.seed ^ static_cast<std::uint64_t>(rep);
    const DiscreteModel model =
        generate_discrete(cfg.domain_size, mix_seed(rep_seed, 1));

    // The model is fixed for the repetition, so each metric's exact optimum
    // is shared across the whole n grid.
    std::vector<FractionalMetric> metrics;
    std::vector<double> psi_stars;
    for (const auto& spec : metric_specs) {
      metrics.push_back(spec.instantiate(model.prior()));
      psi_stars.push_back(optimal_classifier(model, metrics.back()).psi_star);
    }

    auto& rows = per_rep[rep];
    for (long n : cfg.n_grid) {
      const auto train = sample_from(model, static_cast<std::size_t>(n),
                                     mix_seed(rep_seed, 2 * static_cast<std::uint64_t>(n)));
      const auto val = sample_from(model, static_cast<std::size_t>(n),
                                   mix_seed(rep_seed, 2 * static_cast<std::uint64_t>(n) + 1));
      ScoredSample val_sample;
      val_sample.scores.resize(val.size());
      val_sample.labels.resize(val.size());

      for (std::size_t li = 0; li < losses.size(); ++li) {
        const TabularFit fit = fit_tabular(train, losses[li], cfg.domain_size);
        const double sreg = surrogate_regret(model, losses[li], fit.scores);
        for (std::size_t i = 0; i < val.size(); ++i) {
          val_sample.scores[i] = fit.scores[val[i].x];
          val_sample.labels[i] = val[i].y;
        }
        for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
          const TunedThreshold tuned = tune_threshold(val_sample, metrics[mi]);
          const TabularClassifier h = threshold_scorer(fit.scores, tuned.theta);
          const double preg = psi_regret(model, metrics[mi], h, psi_stars[mi]);
          rows.push_back(Row{n, static_cast<int>(rep), static_cast<int>(li),
                             static_cast<int>(mi), preg, sreg});
        }
      }
    }
  });

  CsvTable table;
  table.columns = {"n", "rep", "loss", "metric", "psi_regret", "surrogate_regret"};
  for (long n : cfg.n_grid) {
    for (int rep = 0; rep < cfg.reps; ++rep) {
      for (const auto& row : per_rep[rep]) {
        if (row.n != n) continue;
        table.rows.push_back({static_cast<std::int64_t>(row.n),
                              static_cast<std::int64_t>(row.rep), cfg.losses[row.loss],
                              cfg.metrics[row.metric], row.psi_regret,
                              row.surrogate_regret});
      }
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Gaussian-features experiment.

namespace {

DenseData slice_rows(const DenseData& data, std::size_t begin, std::size_t end) {
  DenseData out;
  out.n = end - begin;
  out.d = data.d;
  out.values.assign(data.values.begin() + begin * data.d,
                    data.values.begin() + end * data.d);
  return out;
}

std::vector<double> scores_of(const LinearModel& model, const DenseData& data) {
  std::vector<double> out(data.n);
  for (std::size_t i = 0; i < data.n; ++i) out[i] = model.score(data, i);
  return out;
}

}  // namespace

CsvTable run_linear(const LinearConfig& cfg) {
  if (cfg.models <= 0 || cfg.reps <= 0) throw InvalidParam("models and reps must be >= 1");
  if (cfg.test_size == 0) throw InvalidParam("test size must be >= 1");
  std::vector<MetricSpec> metric_specs;
  for (const auto& text : cfg.metrics) metric_specs.push_back(parse_metric(text));
  std::vector<SurrogateLoss> losses;
  std::vector<TrainConfig> train_cfgs;
  for (const auto& name : cfg.losses) {
    losses.push_back(builtin_loss(name));
    TrainConfig tc = cfg.train;
    if (!cfg.reg_overridden) tc.reg = default_train_config(losses.back()).reg;
    train_cfgs.push_back(tc);
  }

  struct Row {
    long n;
    int model, rep, loss, metric;
    double psi_regret, surrogate_regret;
  };
  std::vector<std::vector<Row>> per_model(cfg.models);

  parallel_for(cfg.models, cfg.threads, [&](std::size_t mod) {
    const std::uint64_t model_seed = cfg.seed + mod;
    const LogisticGroundTruth truth =
        generate_logistic_model(cfg.dims, mix_seed(model_seed, 11));
    const GaussianSample test =
        sample_logistic_data(truth, cfg.test_size, mix_seed(model_seed, 12));

    ScoredSample test_sample;
    test_sample.labels = test.y;

    // Reference points on the fixed test draw: the best thresholding of the
    // true eta per metric, and the pointwise-optimal surrogate risk per loss.
    std::vector<double> psi_star_test(metric_specs.size());
    for (std::size_t mi = 0; mi < metric_specs.size(); ++mi) {
      test_sample.scores = test.eta;
      psi_star_test[mi] =
          tune_threshold(test_sample, metric_specs[mi].instantiate(0.5)).metric_value;
    }
    std::vector<double> ref_risk(losses.size(), 0.0);
    for (std::size_t li = 0; li < losses.size(); ++li) {
      double acc = 0.0;
      for (double eta : test.eta) acc += optimal_conditional_risk(losses[li], eta);
      ref_risk[li] = acc / static_cast<double>(test.eta.size());
    }
    std::size_t test_pos = 0;
    for (int y : test.y) test_pos += y > 0;
    const double test_prior =
        static_cast<double>(test_pos) / static_cast<double>(test.y.size());

    auto& rows = per_model[mod];
    for (long n : cfg.n_grid) {
      for (int rep = 0; rep < cfg.reps; ++rep) {
        const std::uint64_t draw_seed =
            mix_seed(mix_seed(model_seed, 20 + static_cast<std::uint64_t>(rep)),
                     static_cast<std::uint64_t>(n));
        const GaussianSample draw =
            sample_logistic_data(truth, static_cast<std::size_t>(n), draw_seed);
        const std::size_t n_train = static_cast<std::size_t>(
            std::llround(static_cast<double>(n) * (2.0 / 3.0)));
        const DenseData train_x = slice_rows(draw.x, 0, n_train);
        const std::vector<int> train_y(draw.y.begin(), draw.y.begin() + n_train);
        const DenseData val_x = slice_rows(draw.x, n_train, draw.x.n);
        ScoredSample val_sample;
        val_sample.labels.assign(draw.y.begin() + n_train, draw.y.end());

        for (std::size_t li = 0; li < losses.size(); ++li) {
          const LinearModel fit = fit_linear(train_x, train_y, losses[li], train_cfgs[li]);
          val_sample.scores = scores_of(fit, val_x);
          const std::vector<double> test_scores = scores_of(fit, test.x);

          double sreg = 0.0;
          for (std::size_t i = 0; i < test.eta.size(); ++i) {
            sreg += conditional_risk(losses[li], test.eta[i], test_scores[i]);
          }
          sreg = sreg / static_cast<double>(test.eta.size()) - ref_risk[li];

          for (std::size_t mi = 0; mi < metric_specs.size(); ++mi) {
            const TunedThreshold tuned =
                tune_threshold(val_sample, metric_specs[mi].instantiate(0.5));
            std::size_t fp_count = 0, fn_count = 0;
            for (std::size_t i = 0; i < test_scores.size(); ++i) {
              const bool predicted_positive = test_scores[i] > tuned.theta;
              const bool positive = test.y[i] > 0;
              fp_count += predicted_positive && !positive;
              fn_count += !predicted_positive && positive;
            }
            const double dn = static_cast<double>(test.y.size());
            const ConfusionRates test_rates(static_cast<double>(fp_count) / dn,
                                            static_cast<double>(fn_count) / dn,
                                            test_prior);
            const double value =
                metric_at_prior(metric_specs[mi], test_prior).evaluate(test_rates);
            rows.push_back(Row{n, static_cast<int>(mod), rep, static_cast<int>(li),
                               static_cast<int>(mi), psi_star_test[mi] - value, sreg});
          }
        }
      }
    }
  });

  CsvTable table;
  table.columns = {"n",      "rep",        "model_seed",      "loss",
                   "metric", "psi_regret", "surrogate_regret"};
  for (long n : cfg.n_grid) {
    for (int mod = 0; mod < cfg.models; ++mod) {
      for (const auto& row : per_model[mod]) {
        if (row.n != n) continue;
        table.rows.push_back({static_cast<std::int64_t>(row.n),
                              static_cast<std::int64_t>(row.rep),
                              static_cast<std::int64_t>(cfg.seed + row.model),
                              cfg.losses[row.loss], cfg.metrics[row.metric],
                              row.psi_regret, row.surrogate_regret});
      }
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Bound verification.

namespace {

constexpr double kBoundTol = 1e-12;

struct CheckRow {
  std::string check;
  std::int64_t seed;
  std::string metric;
  std::string loss;
  double lhs, rhs;
};

const std::vector<std::string>& verify_metric_cycle() {
  static const std::vector<std::string> cycle{"accuracy",     "f-beta:1", "jaccard",
                                              "am",           "weighted:2,1",
                                              "f-beta:0.5"};
  return cycle;
}

}  // namespace

VerifyOutcome run_verify_bounds(const VerifyConfig& cfg) {
  if (cfg.trials <= 0) throw InvalidParam("trials must be >= 1");
  const std::vector<std::string> loss_cycle{"logistic", "squared", "exponential"};

  std::vector<std::vector<CheckRow>> per_trial(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    const std::int64_t trial_seed = static_cast<std::int64_t>(cfg.seed) + static_cast<std::int64_t>(t);
    Rng rng(mix_seed(static_cast<std::uint64_t>(trial_seed), 31));
    const std::size_t domain = 2 + rng.below(cfg.max_domain - 1);
    const DiscreteModel model =
        generate_discrete(domain, mix_seed(static_cast<std::uint64_t>(trial_seed), 32));
    const std::string metric_text = verify_metric_cycle()[t % verify_metric_cycle().size()];
    const std::string loss_name = loss_cycle[(t / verify_metric_cycle().size()) % loss_cycle.size()];
    const FractionalMetric metric = parse_metric(metric_text).instantiate(model.prior());
    const SurrogateLoss loss = builtin_loss(loss_name);

    // Scorers alternate between a perturbation of the truth (small regret,
    // near the tight region) and an unrelated random scorer (large regret).
    TabularScorer f(model.size());
    for (std::size_t i = 0; i < model.size(); ++i) {
      const double eta_tilde =
          (t % 2 == 0)
              ? std::clamp(model.etas[i] + 0.3 * rng.normal(), 1e-6, 1.0 - 1e-6)
              : std::clamp(0.001 + 0.998 * rng.uniform(), 1e-6, 1.0 - 1e-6);
      f[i] = loss.link(eta_tilde);
    }

    auto& rows = per_trial[t];
    const RegretTransferReport report = verify_regret_transfer(model, metric, loss, f);
    rows.push_back(
        {"combined", trial_seed, metric_text, loss_name, report.lhs, report.rhs});
    rows.push_back({"cost-to-metric", trial_seed, metric_text, "-", report.cost_lhs,
                    report.cost_rhs});

    const PopulationTuned tuned = tune_threshold_population(model, f, metric);
    rows.push_back({"tuned-dominance", trial_seed, metric_text, loss_name,
                    report.psi_star - tuned.psi_value, report.lhs});

    // Cost regret at an arbitrary alpha against the same scorer.
    const double alpha = rng.uniform();
    const TabularClassifier h_alpha = threshold_scorer(f, loss.link(alpha));
    rows.push_back({"surrogate-to-cost", trial_seed, "alpha=" + format_double(alpha),
                    loss_name, cost_sensitive_regret(model, alpha, h_alpha),
                    std::sqrt(2.0 / loss.lambda) * std::sqrt(report.surrogate_regret)});
  });

  // Random fixed classifiers against the cost-transfer constant.
  std::vector<std::vector<CheckRow>> per_model(cfg.prop_models);
  parallel_for(cfg.prop_models, cfg.threads, [&](std::size_t j) {
    const std::int64_t model_seed =
        static_cast<std::int64_t>(cfg.seed) + 1000000 + static_cast<std::int64_t>(j);
    Rng rng(mix_seed(static_cast<std::uint64_t>(model_seed), 41));
    const std::size_t domain = 2 + rng.below(cfg.max_domain - 1);
    const DiscreteModel model =
        generate_discrete(domain, mix_seed(static_cast<std::uint64_t>(model_seed), 42));
    const std::string metric_text = verify_metric_cycle()[j % verify_metric_cycle().size()];
    const FractionalMetric metric = parse_metric(metric_text).instantiate(model.prior());
    const auto optimum = optimal_classifier(model, metric);
    const MetricConstants consts = constants(metric, optimum.psi_star);

    auto& rows = per_model[j];
    for (int k = 0; k < cfg.classifiers_per_model; ++k) {
      TabularClassifier h(model.size());
      for (auto& v : h) v = rng.uniform() < 0.5 ? 1 : -1;
      rows.push_back({"cost-to-metric", model_seed, metric_text, "-",
                      psi_regret(model, metric, h, optimum.psi_star),
                      consts.cee * cost_sensitive_regret(model, consts.alpha, h)});
    }
  });

  VerifyOutcome out;
  out.csv.columns = {"check", "seed", "metric", "loss", "lhs", "rhs", "holds"};
  auto emit = [&](const CheckRow& row) {
    const bool holds = row.lhs <= row.rhs + kBoundTol;
    if (!holds) ++out.violations;
    out.max_excess = std::max(out.max_excess, row.lhs - row.rhs);
    out.csv.rows.push_back({row.check, row.seed, row.metric, row.loss, row.lhs, row.rhs,
                            static_cast<std::int64_t>(holds)});
  };
  for (const auto& rows : per_trial) {
    for (const auto& row : rows) emit(row);
  }
  for (const auto& rows : per_model) {
    for (const auto& row : rows) emit(row);
  }
  return out;
}

// ---------------------------------------------------------------------------
// File-driven tuning and evaluation.

namespace {

struct LoadedMatrices {
  ScoreMatrix scores;
  LabelMatrix labels;
  MultilabelScores columns;
};

LoadedMatrices load_matrices(const std::string& scores_path, const std::string& labels_path,
                             const std::string& labels_format) {
  LoadedMatrices out;
  out.scores = read_score_matrix_file(scores_path);
  out.labels = read_label_matrix_file(labels_path, labels_format);
  if (out.scores.n != out.labels.n || out.scores.m != out.labels.m) {
    throw DimensionMismatch("scores are " + std::to_string(out.scores.n) + "x" +
                            std::to_string(out.scores.m) + " but labels are " +
                            std::to_string(out.labels.n) + "x" +
                            std::to_string(out.labels.m));
  }
  out.columns.per_label.resize(out.scores.m);
  for (std::size_t j = 0; j < out.scores.m; ++j) {
    auto& sample = out.columns.per_label[j];
    sample.scores.resize(out.scores.n);
    sample.labels.resize(out.scores.n);
    for (std::size_t i = 0; i < out.scores.n; ++i) {
      sample.scores[i] = out.scores.at(i, j);
      sample.labels[i] = out.labels.at(i, j);
    }
  }
  return out;
}

double sample_prior(const ScoredSample& sample) {
  std::size_t pos = 0;
  for (int y : sample.labels) pos += y > 0;
  return static_cast<double>(pos) / static_cast<double>(sample.size());
}

ScoredSample pool_labels(const MultilabelScores& columns) {
  ScoredSample pooled;
  for (const auto& sample : columns.per_label) {
    pooled.scores.insert(pooled.scores.end(), sample.scores.begin(), sample.scores.end());
    pooled.labels.insert(pooled.labels.end(), sample.labels.begin(), sample.labels.end());
  }
  return pooled;
}

void require_averaging(const std::string& averaging) {
  if (averaging != "binary" && averaging != "macro" && averaging != "micro") {
    throw InvalidParam("averaging must be binary, macro, or micro, got '" + averaging +
                       "'");
  }
}

}  // namespace

TuneOutcome run_tune(const TuneRequest& req) {
  require_averaging(req.averaging);
  const MetricSpec spec = parse_metric(req.metric_text);
  const LoadedMatrices data = load_matrices(req.scores_path, req.labels_path,
                                            req.labels_format);
  const std::size_t n = data.scores.n;

  TuneOutcome out;
  out.csv.columns = {"mode", "label", "theta", "value", "n", "delta", "bound"};
  std::ostringstream summary;

  auto bound_for = [&](const ScoredSample& sample, double tuned_value) {
    const FractionalMetric at_prior = metric_at_prior(spec, sample_prior(sample));
    return tuning_deviation_bound(n, req.delta, constants(at_prior, tuned_value));
  };
  auto add_row = [&](const std::string& label, const TunedThreshold& tuned, double bound) {
    out.csv.rows.push_back({req.averaging, label, tuned.theta, tuned.metric_value,
                            static_cast<std::int64_t>(n), req.delta, bound});
  };

  const FractionalMetric proto = spec.instantiate(0.5);
  if (req.averaging == "binary") {
    if (data.scores.m != 1) {
      throw DimensionMismatch("binary averaging expects one score column, got " +
                              std::to_string(data.scores.m));
    }
    const auto& sample = data.columns.per_label[0];
    const TunedThreshold tuned = tune_threshold(sample, proto);
    const double bound = bound_for(sample, tuned.metric_value);
    add_row("0", tuned, bound);
    summary << "binary " << spec.text << ": theta=" << format_double(tuned.theta)
            << " value=" << format_double(tuned.metric_value)
            << " bound(n=" << n << ",delta=" << format_double(req.delta)
            << ")=" << format_double(bound) << "\n";
  } else if (req.averaging == "macro") {
    const MacroTuned macro = tune_macro(data.columns, proto);
    double bound_sum = 0.0;
    for (std::size_t j = 0; j < macro.per_label.size(); ++j) {
      const double bound = bound_for(data.columns.per_label[j],
                                     macro.per_label[j].metric_value);
      bound_sum += bound;
      add_row(std::to_string(j), macro.per_label[j], bound);
    }
    summary << "macro " << spec.text << ": value=" << format_double(macro.macro_value)
            << " mean-bound=" << format_double(bound_sum /
                                               static_cast<double>(macro.per_label.size()))
            << " labels=" << macro.per_label.size() << "\n";
  } else {
    const TunedThreshold tuned = tune_micro(data.columns, proto);
    const double bound = bound_for(pool_labels(data.columns), tuned.metric_value);
    add_row("pooled", tuned, bound);
    summary << "micro " << spec.text << ": theta=" << format_double(tuned.theta)
            << " value=" << format_double(tuned.metric_value)
            << " bound(n=" << n << ",delta=" << format_double(req.delta)
            << ")=" << format_double(bound) << "\n";
  }
  out.summary = summary.str();
  return out;
}

TuneOutcome run_evaluate(const EvaluateRequest& req) {
  require_averaging(req.averaging);
  const MetricSpec spec = parse_metric(req.metric_text);
  const LoadedMatrices data = load_matrices(req.scores_path, req.labels_path,
                                            req.labels_format);
  const std::size_t m = data.scores.m;

  std::vector<double> thetas = req.thetas;
  if (req.averaging == "macro" && thetas.size() == 1) {
    thetas.assign(m, thetas[0]);
  }
  const std::size_t expected = req.averaging == "macro" ? m : 1;
  if (thetas.size() != expected) {
    throw DimensionMismatch("expected " + std::to_string(expected) +
                            " threshold(s), got " + std::to_string(thetas.size()));
  }

  TuneOutcome out;
  out.csv.columns = {"mode", "label", "theta", "value"};
  std::ostringstream summary;

  auto value_at = [&](const ScoredSample& sample, double theta) {
    const ConfusionRates rates = empirical_rates(sample, theta);
    return metric_at_prior(spec, rates.prior).evaluate(rates);
  };

  if (req.averaging == "binary") {
    if (m != 1) {
      throw DimensionMismatch("binary averaging expects one score column, got " +
                              std::to_string(m));
    }
    const double value = value_at(data.columns.per_label[0], thetas[0]);
    out.csv.rows.push_back({req.averaging, std::string("0"), thetas[0], value});
    summary << "binary " << spec.text << " at theta=" << format_double(thetas[0])
            << ": value=" << format_double(value) << "\n";
  } else if (req.averaging == "macro") {
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double value = value_at(data.columns.per_label[j], thetas[j]);
      sum += value;
      out.csv.rows.push_back({req.averaging, std::to_string(j), thetas[j], value});
    }
    summary << "macro " << spec.text << ": value=" << format_double(sum / m) << " labels="
            << m << "\n";
  } else {
    const double value = value_at(pool_labels(data.columns), thetas[0]);
    out.csv.rows.push_back({req.averaging, std::string("pooled"), thetas[0], value});
    summary << "micro " << spec.text << " at theta=" << format_double(thetas[0])
            << ": value=" << format_double(value) << "\n";
  }
  out.summary = summary.str();
  return out;
}

// ---------------------------------------------------------------------------

double mean_where(const CsvTable& table, long n, const std::string& loss,
                  const std::string& metric, const std::string& column) {
  auto index_of = [&](const std::string& name) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (table.columns[c] == name) return c;
    }
    throw InvalidParam("no column named '" + name + "'");
  };
  const std::size_t target = index_of(column);
  const std::size_t n_col = index_of("n");
  const std::size_t loss_col = index_of("loss");
  const std::size_t metric_col = index_of("metric");

  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& row : table.rows) {
    if (n >= 0 && std::get<std::int64_t>(row[n_col]) != n) continue;
    if (!loss.empty() && std::get<std::string>(row[loss_col]) != loss) continue;
    if (!metric.empty() && std::get<std::string>(row[metric_col]) != metric) continue;
    if (const auto* d = std::get_if<double>(&row[target])) {
      sum += *d;
    } else {
      sum += static_cast<double>(std::get<std::int64_t>(row[target]));
    }
    ++count;
  }
  if (count == 0) throw InvalidParam("mean_where matched no rows");
  return sum / static_cast<double>(count);
}

void save_csv(const CsvTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidParam("cannot write '" + path + "'");
  out << write_results(table) << '\n';
}

}  // namespace linfrac
