#include "linfrac/learners.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace linfrac {

namespace {

double clamp_fraction(double eta, std::int64_t count) {
  const double margin = 1.0 / (2.0 * static_cast<double>(count) + 2.0);
  return std::clamp(eta, margin, 1.0 - margin);
}

double hinge_vote(double eta_hat) { return 2.0 * eta_hat - 1.0 > 0.0 ? 1.0 : -1.0; }

double loss_derivative(const SurrogateLoss& loss, int y, double f) {
  const double dy = y > 0 ? 1.0 : -1.0;
  switch (loss.kind) {
    case LossKind::kLogistic:
      return -dy / (1.0 + std::exp(std::min(dy * f, 700.0)));
    case LossKind::kSquared:
      return 2.0 * (f - dy);
    case LossKind::kExponential:
      return -dy * std::exp(std::min(-dy * f, 700.0));
    case LossKind::kHinge:
      return dy * f < 1.0 ? -dy : 0.0;
  }
  throw std::logic_error("loss_derivative: bad loss kind");
}

void check_training_inputs(const DenseData& data, const std::vector<int>& labels) {
  if (data.n == 0) throw EmptySample("no training points");
  if (labels.size() != data.n) {
    throw DimensionMismatch("labels size " + std::to_string(labels.size()) +
                            " does not match n = " + std::to_string(data.n));
  }
  if (data.values.size() != data.n * data.d) {
    throw DimensionMismatch("feature matrix storage does not match n*d");
  }
  for (int y : labels) {
    if (y != 1 && y != -1) throw InvalidParam("labels must be -1 or +1");
  }
}

}  // namespace

TabularFit fit_tabular(const std::vector<IndexedSample>& samples,
                       const SurrogateLoss& loss, std::size_t domain_size) {
  if (samples.empty()) throw EmptySample("fit_tabular needs at least one sample");
  std::vector<std::int64_t> counts(domain_size, 0);
  std::vector<std::int64_t> positives(domain_size, 0);
  std::int64_t total_pos = 0;
  for (const auto& s : samples) {
    if (s.x < 0 || static_cast<std::size_t>(s.x) >= domain_size) {
      throw InvalidParam("sample index " + std::to_string(s.x) + " outside domain of size " +
                         std::to_string(domain_size));
    }
    if (s.y != 1 && s.y != -1) throw InvalidParam("labels must be -1 or +1");
    counts[s.x] += 1;
    positives[s.x] += s.y > 0;
    total_pos += s.y > 0;
  }
  const std::int64_t total = static_cast<std::int64_t>(samples.size());
  const double global_prior =
      static_cast<double>(total_pos) / static_cast<double>(total);

  TabularFit fit;
  fit.counts = counts;
  fit.eta_hat.resize(domain_size);
  fit.scores.resize(domain_size);
  for (std::size_t i = 0; i < domain_size; ++i) {
    if (counts[i] > 0) {
      fit.eta_hat[i] =
          static_cast<double>(positives[i]) / static_cast<double>(counts[i]);
      if (loss.is_proper()) {
        fit.scores[i] = loss.link(clamp_fraction(fit.eta_hat[i], counts[i]));
      } else {
        fit.scores[i] = hinge_vote(fit.eta_hat[i]);
      }
    } else {
      // Never-seen point: back off to the global prior.
      fit.eta_hat[i] = global_prior;
      fit.scores[i] = loss.is_proper()
                          ? loss.link(clamp_fraction(global_prior, total))
                          : -1.0;
    }
  }
  return fit;
}

double LinearModel::score(const DenseData& data, std::size_t i) const {
  double s = intercept;
  for (std::size_t j = 0; j < data.d; ++j) s += weights[j] * data.at(i, j);
  return s;
}

TrainConfig default_train_config(const SurrogateLoss& loss) {
  TrainConfig cfg;
  cfg.reg = loss.kind == LossKind::kHinge ? 1e-2 : 1e-6;
  return cfg;
}

ObjectiveEval eval_objective(const DenseData& data, const std::vector<int>& labels,
                             const SurrogateLoss& loss, const std::vector<double>& w,
                             double w0, double reg) {
  check_training_inputs(data, labels);
  if (w.size() != data.d) throw DimensionMismatch("weight vector size does not match d");
  ObjectiveEval out;
  out.grad_w.assign(data.d, 0.0);
  const double inv_n = 1.0 / static_cast<double>(data.n);
  for (std::size_t i = 0; i < data.n; ++i) {
    double f = w0;
    for (std::size_t j = 0; j < data.d; ++j) f += w[j] * data.at(i, j);
    out.value += loss.partial(labels[i], f);
    const double g = loss_derivative(loss, labels[i], f) * inv_n;
    out.grad_w0 += g;
    for (std::size_t j = 0; j < data.d; ++j) out.grad_w[j] += g * data.at(i, j);
  }
  out.value *= inv_n;
  double sq = w0 * w0;
  for (std::size_t j = 0; j < data.d; ++j) {
    sq += w[j] * w[j];
    out.grad_w[j] += reg * w[j];
  }
  out.grad_w0 += reg * w0;
  out.value += 0.5 * reg * sq;
  if (!std::isfinite(out.value) || !std::isfinite(out.grad_w0)) {
    throw NonFiniteLoss("objective left the finite range");
  }
  return out;
}

namespace {

LinearModel fit_smooth(const DenseData& data, const std::vector<int>& labels,
                       const SurrogateLoss& loss, const TrainConfig& cfg) {
  std::vector<double> w(data.d, 0.0);
  double w0 = 0.0;
  ObjectiveEval cur = eval_objective(data, labels, loss, w, w0, cfg.reg);
  double step = cfg.learning_rate;
  bool converged = false;
  for (int iter = 0; iter < cfg.max_iters && !converged; ++iter) {
    double grad_sq = cur.grad_w0 * cur.grad_w0;
    for (double g : cur.grad_w) grad_sq += g * g;
    if (grad_sq <= cfg.tol * cfg.tol) break;

    // Backtracking line search with a sufficient-decrease test; the step is
    // allowed to grow back so one conservative iteration does not pin the
    // whole run to tiny steps.
    step = std::min(step * 2.0, cfg.learning_rate * 1024.0);
    bool moved = false;
    std::vector<double> w_next(data.d);
    for (int halving = 0; halving < 60; ++halving) {
      for (std::size_t j = 0; j < data.d; ++j) w_next[j] = w[j] - step * cur.grad_w[j];
      const double w0_next = w0 - step * cur.grad_w0;
      const ObjectiveEval next =
          eval_objective(data, labels, loss, w_next, w0_next, cfg.reg);
      if (next.value <= cur.value - 1e-4 * step * grad_sq) {
        const double decrease = cur.value - next.value;
        converged = decrease <= cfg.tol * std::max(1.0, std::fabs(cur.value));
        w.swap(w_next);
        w0 = w0_next;
        cur = next;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  LinearModel model;
  model.weights = std::move(w);
  model.intercept = w0;
  return model;
}

LinearModel fit_hinge(const DenseData& data, const std::vector<int>& labels,
                      const SurrogateLoss& loss, const TrainConfig& cfg) {
  std::vector<double> w(data.d, 0.0), avg_w(data.d, 0.0);
  double w0 = 0.0, avg_w0 = 0.0;
  for (int t = 1; t <= cfg.max_iters; ++t) {
    const ObjectiveEval g = eval_objective(data, labels, loss, w, w0, cfg.reg);
    const double step = 1.0 / (cfg.reg * static_cast<double>(t));
    for (std::size_t j = 0; j < data.d; ++j) w[j] -= step * g.grad_w[j];
    w0 -= step * g.grad_w0;
    for (std::size_t j = 0; j < data.d; ++j) avg_w[j] += (w[j] - avg_w[j]) / t;
    avg_w0 += (w0 - avg_w0) / t;
  }
  // The averaged iterate is the estimator; fall back to the final iterate or
  // the zero start if either scores better, so the returned objective is
  // never above the initialization.
  const std::vector<double> zero(data.d, 0.0);
  const double v_avg = eval_objective(data, labels, loss, avg_w, avg_w0, cfg.reg).value;
  const double v_fin = eval_objective(data, labels, loss, w, w0, cfg.reg).value;
  const double v_zero = eval_objective(data, labels, loss, zero, 0.0, cfg.reg).value;
  LinearModel model;
  if (v_avg <= v_fin && v_avg <= v_zero) {
    model.weights = std::move(avg_w);
    model.intercept = avg_w0;
  } else if (v_fin <= v_zero) {
    model.weights = std::move(w);
    model.intercept = w0;
  } else {
    model.weights = zero;
    model.intercept = 0.0;
  }
  return model;
}

}  // namespace

LinearModel fit_linear(const DenseData& data, const std::vector<int>& labels,
                       const SurrogateLoss& loss, const TrainConfig& cfg) {
  check_training_inputs(data, labels);
  if (cfg.reg < 0.0) throw InvalidParam("regularization must be non-negative");
  if (loss.kind == LossKind::kHinge) {
    if (!(cfg.reg > 0.0)) throw InvalidParam("hinge training requires reg > 0");
    return fit_hinge(data, labels, loss, cfg);
  }
  return fit_smooth(data, labels, loss, cfg);
}

DiscreteModel generate_discrete(std::size_t size, std::uint64_t seed) {
  if (size == 0) throw InvalidParam("model size must be >= 1");
  DiscreteModel model;
  model.probs.assign(size, 1.0 / static_cast<double>(size));
  model.etas.resize(size);
  Rng rng(mix_seed(seed, 0x6d6f64656cULL));
  for (auto& e : model.etas) e = rng.uniform();
  return model;
}

std::vector<IndexedSample> sample_from(const DiscreteModel& model, std::size_t n,
                                       std::uint64_t seed) {
  check_model(model);
  std::vector<double> cdf(model.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    acc += model.probs[i];
    cdf[i] = acc;
  }
  cdf.back() = 1.0;
  Rng rng(mix_seed(seed, 0x73616d706c65ULL));
  std::vector<IndexedSample> out(n);
  for (auto& s : out) {
    const double u = rng.uniform();
    s.x = static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    // lower_bound returns the first cdf entry >= u; u == cdf[i] exactly lands
    // on i, which is the half-open convention [cdf[i-1], cdf[i]).
    if (u >= cdf[s.x]) s.x = static_cast<int>(model.size()) - 1;
    s.y = rng.uniform() < model.etas[s.x] ? 1 : -1;
  }
  return out;
}

double LogisticGroundTruth::eta(const double* x) const {
  double t = a0;
  for (std::size_t j = 0; j < a.size(); ++j) t += a[j] * x[j];
  return 1.0 / (1.0 + std::exp(std::min(-t, 700.0)));
}

LogisticGroundTruth generate_logistic_model(std::size_t d, std::uint64_t seed) {
  LogisticGroundTruth truth;
  Rng rng(mix_seed(seed, 0x7472757468ULL));
  truth.a0 = rng.normal();
  truth.a.resize(d);
  for (auto& c : truth.a) c = rng.normal();
  return truth;
}

GaussianSample sample_logistic_data(const LogisticGroundTruth& truth, std::size_t n,
                                    std::uint64_t seed) {
  const std::size_t d = truth.a.size();
  GaussianSample out;
  out.x.n = n;
  out.x.d = d;
  out.x.values.resize(n * d);
  out.y.resize(n);
  out.eta.resize(n);
  Rng rng(mix_seed(seed, 0x64617461ULL));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) out.x.values[i * d + j] = rng.normal();
    out.eta[i] = truth.eta(&out.x.values[i * d]);
    out.y[i] = rng.uniform() < out.eta[i] ? 1 : -1;
  }
  return out;
}

}  // namespace linfrac
