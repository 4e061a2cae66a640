#include "linfrac/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace linfrac {

namespace {

constexpr double kRateSlack = 1e-9;

// The four corners of the feasible box [0, 1-P] x [0, P].
std::array<ConfusionRates, 4> box_corners(double prior) {
  const double nfp = 1.0 - prior;
  return {ConfusionRates(0.0, 0.0, prior), ConfusionRates(nfp, 0.0, prior),
          ConfusionRates(0.0, prior, prior), ConfusionRates(nfp, prior, prior)};
}

double denominator(const FractionalMetric& m, const ConfusionRates& r) {
  return m.b0 + m.b1 * r.fp + m.b2 * r.fn;
}

// Construction-time validation. The denominator is affine, so positivity over
// the box reduces to the corners; Psi is a ratio of affine functions with a
// positive denominator, hence quasilinear, so its box extremes also sit at
// corners, and the monotonicity conditions a_i - b_i*Psi <= 0 (affine in Psi)
// only need checking at the extreme Psi values.
void validate(const FractionalMetric& m) {
  if (!(m.prior >= 0.0 && m.prior <= 1.0)) {
    throw InvalidParam("metric prior must lie in [0,1], got " + std::to_string(m.prior));
  }
  for (double c : {m.a0, m.a1, m.a2, m.b0, m.b1, m.b2}) {
    if (!std::isfinite(c)) throw InvalidParam("metric coefficients must be finite");
  }
  double psi_min = std::numeric_limits<double>::infinity();
  double psi_max = -psi_min;
  for (const auto& corner : box_corners(m.prior)) {
    const double den = denominator(m, corner);
    if (den <= kDenomEpsilon) {
      throw InvalidParam("metric '" + m.name +
                         "' denominator is not positive over the feasible box");
    }
    const double psi = (m.a0 + m.a1 * corner.fp + m.a2 * corner.fn) / den;
    psi_min = std::min(psi_min, psi);
    psi_max = std::max(psi_max, psi);
  }
  constexpr double kMonoTol = 1e-9;
  for (double psi : {psi_min, psi_max}) {
    if (m.a1 - m.b1 * psi > kMonoTol || m.a2 - m.b2 * psi > kMonoTol) {
      throw InvalidParam("metric '" + m.name +
                         "' is not non-increasing in the error rates");
    }
  }
}

void require_open_prior(double prior, const std::string& name) {
  if (!(prior > 0.0 && prior < 1.0)) {
    throw InvalidParam("metric '" + name + "' requires prior in (0,1), got " +
                       std::to_string(prior));
  }
}

FractionalMetric finish(FractionalMetric m) {
  validate(m);
  return m;
}

}  // namespace

ConfusionRates::ConfusionRates(double fp_in, double fn_in, double prior_in)
    : fp(fp_in), fn(fn_in), prior(prior_in) {
  if (!(prior >= -kRateSlack && prior <= 1.0 + kRateSlack) ||
      !(fp >= -kRateSlack && fp <= 1.0 - prior + kRateSlack) ||
      !(fn >= -kRateSlack && fn <= prior + kRateSlack)) {
    std::ostringstream os;
    os << "infeasible rates fp=" << fp << " fn=" << fn << " prior=" << prior;
    throw InvalidParam(os.str());
  }
}

double FractionalMetric::evaluate(const ConfusionRates& rates) const {
  const double den = denominator(*this, rates);
  if (std::fabs(den) <= kDenomEpsilon) {
    throw DegenerateDenominator("metric '" + name + "' denominator " +
                                std::to_string(den) + " at fp=" + std::to_string(rates.fp) +
                                " fn=" + std::to_string(rates.fn));
  }
  return (a0 + a1 * rates.fp + a2 * rates.fn) / den;
}

FractionalMetric FractionalMetric::with_prior(double new_prior) const {
  switch (kind) {
    case MetricKind::kAccuracy: {
      // Coefficients are prior-free; allow boundary priors so single-class
      // samples can still be scored.
      FractionalMetric m = *this;
      m.prior = new_prior;
      return finish(m);
    }
    case MetricKind::kFBeta:
      return make_f_beta(beta, new_prior);
    case MetricKind::kJaccard:
      return make_jaccard(new_prior);
    case MetricKind::kAM:
      return make_am(new_prior);
    case MetricKind::kWeighted:
      return make_weighted_accuracy(w1, w2, new_prior);
    case MetricKind::kCustom: {
      FractionalMetric m = *this;
      m.prior = new_prior;
      // Custom coefficients were validated against their declared prior; the
      // box at new_prior may differ, and sweep code skips any degenerate
      // candidate it meets there.
      return m;
    }
  }
  throw InvalidParam("with_prior: bad metric kind");
}

FractionalMetric make_accuracy(double prior) {
  require_open_prior(prior, "accuracy");
  FractionalMetric m;
  m.kind = MetricKind::kAccuracy;
  m.name = "accuracy";
  m.a0 = 1.0;
  m.a1 = -1.0;
  m.a2 = -1.0;
  m.b0 = 1.0;
  m.b1 = 0.0;
  m.b2 = 0.0;
  m.prior = prior;
  return finish(m);
}

FractionalMetric make_f_beta(double beta, double prior) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw InvalidParam("f-beta requires beta > 0, got " + std::to_string(beta));
  }
  require_open_prior(prior, "f-beta");
  const double s = 1.0 + beta * beta;
  FractionalMetric m;
  m.kind = MetricKind::kFBeta;
  m.name = "f-beta";
  m.beta = beta;
  m.a0 = s * prior;
  m.a1 = 0.0;
  m.a2 = -s;
  m.b0 = s * prior;
  m.b1 = 1.0;
  m.b2 = -1.0;
  m.prior = prior;
  return finish(m);
}

FractionalMetric make_jaccard(double prior) {
  require_open_prior(prior, "jaccard");
  FractionalMetric m;
  m.kind = MetricKind::kJaccard;
  m.name = "jaccard";
  m.a0 = prior;
  m.a1 = 0.0;
  m.a2 = -1.0;
  m.b0 = prior;
  m.b1 = 1.0;
  m.b2 = 0.0;
  m.prior = prior;
  return finish(m);
}

FractionalMetric make_am(double prior) {
  require_open_prior(prior, "am");
  const double norm = 2.0 * prior * (1.0 - prior);
  FractionalMetric m;
  m.kind = MetricKind::kAM;
  m.name = "am";
  m.a0 = norm;
  m.a1 = -prior;
  m.a2 = -(1.0 - prior);
  m.b0 = norm;
  m.b1 = 0.0;
  m.b2 = 0.0;
  m.prior = prior;
  return finish(m);
}

FractionalMetric make_weighted_accuracy(double w1, double w2, double prior) {
  if (!(w1 > 0.0) || !(w2 > 0.0) || !std::isfinite(w1) || !std::isfinite(w2)) {
    throw InvalidParam("weighted accuracy requires positive weights");
  }
  require_open_prior(prior, "weighted");
  const double norm = w1 * (1.0 - prior) + w2 * prior;
  FractionalMetric m;
  m.kind = MetricKind::kWeighted;
  m.name = "weighted";
  m.w1 = w1;
  m.w2 = w2;
  m.a0 = norm;
  m.a1 = -w1;
  m.a2 = -w2;
  m.b0 = norm;
  m.b1 = 0.0;
  m.b2 = 0.0;
  m.prior = prior;
  return finish(m);
}

FractionalMetric make_custom(const std::array<double, 6>& c, double prior,
                             const std::string& name) {
  FractionalMetric m;
  m.kind = MetricKind::kCustom;
  m.name = name;
  m.a0 = c[0];
  m.a1 = c[1];
  m.a2 = c[2];
  m.b0 = c[3];
  m.b1 = c[4];
  m.b2 = c[5];
  m.prior = prior;
  return finish(m);
}

FractionalMetric builtin(const std::string& metric_name, double prior, double beta,
                         double w1, double w2) {
  if (metric_name == "accuracy") return make_accuracy(prior);
  if (metric_name == "f-beta") return make_f_beta(beta, prior);
  if (metric_name == "jaccard") return make_jaccard(prior);
  if (metric_name == "am") return make_am(prior);
  if (metric_name == "weighted") return make_weighted_accuracy(w1, w2, prior);
  throw UnknownMetric("unknown metric name '" + metric_name + "'");
}

FractionalMetric MetricSpec::instantiate(double prior) const {
  switch (kind) {
    case MetricKind::kAccuracy:
      return make_accuracy(prior);
    case MetricKind::kFBeta:
      return make_f_beta(beta, prior);
    case MetricKind::kJaccard:
      return make_jaccard(prior);
    case MetricKind::kAM:
      return make_am(prior);
    case MetricKind::kWeighted:
      return make_weighted_accuracy(w1, w2, prior);
    case MetricKind::kCustom:
      return make_custom(coeffs, prior, text);
  }
  throw InvalidParam("instantiate: bad metric kind");
}

namespace {

std::vector<double> parse_number_list(const std::string& text, const std::string& where) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(token, &used));
      while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) {
        ++used;
      }
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw InvalidParam("bad number '" + token + "' in " + where);
    }
  }
  return out;
}

}  // namespace

MetricSpec parse_metric(const std::string& text) {
  MetricSpec spec;
  spec.text = text;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);

  if (head == "accuracy" || head == "jaccard" || head == "am") {
    if (!args.empty()) throw InvalidParam("metric '" + head + "' takes no parameters");
    spec.kind = head == "accuracy" ? MetricKind::kAccuracy
                : head == "jaccard" ? MetricKind::kJaccard
                                    : MetricKind::kAM;
    return spec;
  }
  if (head == "f-beta") {
    const auto v = parse_number_list(args, "f-beta");
    if (v.size() != 1) throw InvalidParam("f-beta:B takes exactly one parameter");
    spec.kind = MetricKind::kFBeta;
    spec.beta = v[0];
    return spec;
  }
  if (head == "weighted") {
    const auto v = parse_number_list(args, "weighted");
    if (v.size() != 2) throw InvalidParam("weighted:W1,W2 takes exactly two parameters");
    spec.kind = MetricKind::kWeighted;
    spec.w1 = v[0];
    spec.w2 = v[1];
    return spec;
  }
  if (head == "custom") {
    const auto v = parse_number_list(args, "custom");
    if (v.size() != 6) throw InvalidParam("custom:a0,a1,a2,b0,b1,b2 takes six parameters");
    spec.kind = MetricKind::kCustom;
    std::copy(v.begin(), v.end(), spec.coeffs.begin());
    return spec;
  }
  throw UnknownMetric("unknown metric '" + text + "'");
}

MetricConstants constants(const FractionalMetric& metric, double psi_star) {
  MetricConstants out;
  const double p = metric.prior;
  switch (metric.kind) {
    case MetricKind::kAccuracy:
      out.gamma = 1.0;
      break;
    case MetricKind::kFBeta:
      out.gamma = metric.beta * metric.beta * p;
      break;
    case MetricKind::kJaccard:
      out.gamma = p;
      break;
    case MetricKind::kAM:
      out.gamma = 2.0 * p * (1.0 - p);
      break;
    case MetricKind::kWeighted:
      out.gamma = metric.w1 * (1.0 - p) + metric.w2 * p;
      break;
    case MetricKind::kCustom: {
      double lo = std::numeric_limits<double>::infinity();
      for (const auto& corner : box_corners(p)) {
        lo = std::min(lo, denominator(metric, corner));
      }
      out.gamma = lo;
      break;
    }
  }
  if (!(out.gamma > kDenomEpsilon)) {
    throw NonPositiveGamma("metric '" + metric.name + "' denominator bound " +
                           std::to_string(out.gamma) + " at prior " + std::to_string(p));
  }

  const double scale = psi_star * (metric.b1 + metric.b2) - (metric.a1 + metric.a2);
  out.cee = scale / out.gamma;
  out.alpha = (psi_star * metric.b1 - metric.a1) / scale;

  // sup |b_i*Psi - a_i| over the box: corners plus a 0.01-step grid.
  double d1 = 0.0, d2 = 0.0;
  auto take = [&](const ConfusionRates& r) {
    const double psi = metric.evaluate(r);
    d1 = std::max(d1, std::fabs(metric.b1 * psi - metric.a1));
    d2 = std::max(d2, std::fabs(metric.b2 * psi - metric.a2));
  };
  for (const auto& corner : box_corners(p)) take(corner);
  for (double fp = 0.0; fp <= 1.0 - p + 1e-15; fp += 0.01) {
    for (double fn = 0.0; fn <= p + 1e-15; fn += 0.01) {
      take(ConfusionRates(std::min(fp, 1.0 - p), std::min(fn, p), p));
    }
  }
  out.d_bound = std::max(d1, d2);
  return out;
}

double optimal_threshold_eta(const FractionalMetric& metric, double psi_star) {
  return constants(metric, psi_star).alpha;
}

double cost_sensitive_risk(const ConfusionRates& rates, double alpha) {
  return alpha * rates.fp + (1.0 - alpha) * rates.fn;
}

}  // namespace linfrac
