#include "distsketch/plan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "distsketch/errors.hpp"

namespace distsketch {
namespace {

bool in_unit_interval(double v) { return std::isfinite(v) && v > 0.0 && v < 1.0; }

// log(x) clamped at zero so that thresholds stay defined when x <= 1.
double log_floor0(double x) { return std::max(0.0, std::log(x)); }

std::uint64_t stream_length(double raw) {
  if (!(raw < 1.8e19)) {
    throw ConfigError("planned minimum stream length exceeds 64-bit range");
  }
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(raw)));
}

void require_width(double bucket_width) {
  if (!std::isfinite(bucket_width) || bucket_width <= 0.0) {
    throw ConfigError("bucket width must be finite and positive");
  }
}

void require_epsilon(double epsilon) {
  if (!in_unit_interval(epsilon)) throw ConfigError("epsilon must lie in (0, 1)");
}

}  // namespace

void EstimatorConfig::validate() const {
  require_epsilon(epsilon);
  if (!in_unit_interval(delta)) throw ConfigError("delta must lie in (0, 1)");
  distsketch::validate(tail);
  if (tail_b) distsketch::validate(*tail_b);
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(lipschitz) || (lipschitz_b && !positive(*lipschitz_b))) {
    throw ConfigError("Lipschitz constant must be finite and positive");
  }
  if (!positive(constant)) throw ConfigError("threshold constant must be finite and positive");
}

TailModel EstimatorConfig::effective_tail() const {
  return tail_b ? combine(tail, *tail_b) : tail;
}

double EstimatorConfig::effective_lipschitz() const {
  return lipschitz_b ? std::max(lipschitz, *lipschitz_b) : lipschitz;
}

std::size_t even_counters(double raw) {
  if (std::isnan(raw)) throw ConfigError("counter budget is undefined for these parameters");
  if (!(raw < 4.0e9)) throw ConfigError("counter budget exceeds the supported range");
  auto k = static_cast<std::size_t>(std::ceil(std::max(raw, 4.0)));
  return k % 2 == 0 ? k : k + 1;
}

EstimatePlan plan_wasserstein(const EstimatorConfig& cfg) {
  cfg.validate();
  const double eps = cfg.epsilon;
  const double ell = cfg.effective_lipschitz();
  const double log_inv_delta = std::log(1.0 / cfg.delta);
  const double lipschitz_term = std::max(1.0 / (ell * ell), ell * ell);

  EstimatePlan plan;
  plan.bucket_width =
      cfg.bucket_rule == WassersteinBucketRule::kQuarterEpsilon ? eps / 4.0 : eps / 2.0;

  const TailModel tail = cfg.effective_tail();
  double kappa = 0.0;
  double n_raw = 0.0;
  if (const auto* g = std::get_if<SubGaussian>(&tail)) {
    kappa = g->sigma / eps * log_floor0(ell / eps);
    n_raw = log_inv_delta * std::max(1.0 / (eps * eps), lipschitz_term);
  } else {
    const auto& w = std::get<SubWeibull>(tail);
    kappa = std::pow(log_floor0(ell / eps), w.alpha) / eps;
    n_raw = log_inv_delta * std::max({1.0 / (eps * eps),
                                      std::pow(log_inv_delta, 2.0 * w.alpha - 1.0),
                                      lipschitz_term});
  }
  plan.counters = even_counters(cfg.constant * kappa);
  plan.n_min = stream_length(cfg.constant * n_raw);
  return plan;
}

EstimatePlan plan_tv(const EstimatorConfig& cfg) {
  cfg.validate();
  const double eps = cfg.epsilon;
  const double ell = cfg.effective_lipschitz();
  const double log_inv_eps = std::log(1.0 / eps);
  const double log_inv_delta = std::log(1.0 / cfg.delta);

  EstimatePlan plan;
  const TailModel tail = cfg.effective_tail();
  double kappa = 0.0;
  double n_pac = 0.0;
  double n_concentration = 0.0;
  if (const auto* g = std::get_if<SubGaussian>(&tail)) {
    const double sigma = g->sigma;
    plan.bucket_width = eps / (sigma * ell * std::sqrt(std::log(2.0 / eps)));
    kappa = sigma * sigma * ell / eps * log_inv_eps;
    n_pac = std::max(sigma * sigma * ell * log_inv_eps / eps, log_inv_delta) / (eps * eps);
    n_concentration =
        std::max(4.0 * sigma * std::sqrt(M_PI) / plan.bucket_width, log_inv_delta) / (eps * eps);
  } else {
    const auto& w = std::get<SubWeibull>(tail);
    const double log_term = std::log(2.0 * w.c_alpha / eps);
    if (!(log_term > 0.0)) {
      throw ConfigError("sub-Weibull c_alpha must exceed epsilon/2 for TV bucket planning");
    }
    plan.bucket_width = eps / (ell * std::pow(log_term, w.alpha));
    kappa = ell / eps * std::pow(log_inv_eps, 2.0 * w.alpha);
    const double gamma = std::tgamma(1.0 + w.alpha);
    n_pac = std::max(ell * std::pow(log_inv_eps, w.alpha) * gamma / eps, log_inv_delta) /
            (eps * eps);
    n_concentration =
        std::max(2.0 * w.c_alpha / plan.bucket_width * gamma, log_inv_delta) / (eps * eps);
  }
  plan.counters = even_counters(cfg.constant * kappa);
  plan.n_min = stream_length(cfg.constant * std::max(n_pac, n_concentration));
  return plan;
}

namespace {

std::size_t learner_counters(const TailModel& tail, double epsilon, double bucket_width,
                             double constant, double log_numerator, double weibull_divisor) {
  validate(tail);
  require_epsilon(epsilon);
  require_width(bucket_width);
  const double log_term = std::log(log_numerator / epsilon);
  if (const auto* g = std::get_if<SubGaussian>(&tail)) {
    return even_counters(constant * std::ceil(8.0 * g->sigma / bucket_width *
                                              std::sqrt(std::max(0.0, log_term))));
  }
  const auto& w = std::get<SubWeibull>(tail);
  return even_counters(std::ceil(constant / (weibull_divisor * bucket_width) *
                                 std::pow(std::max(0.0, log_term), w.alpha)));
}

}  // namespace

std::size_t counters_for_pdf(const TailModel& tail, double epsilon, double bucket_width,
                             double constant) {
  return learner_counters(tail, epsilon, bucket_width, constant, 1.0, 1.0);
}

std::size_t counters_for_cdf(const TailModel& tail, double epsilon, double bucket_width,
                             double constant) {
  return learner_counters(tail, epsilon, bucket_width, constant, 4.0, 2.0);
}

std::size_t counters_for_l1(const TailModel& tail, double epsilon, double bucket_width,
                            double constant) {
  return learner_counters(tail, epsilon, bucket_width, constant, 6.0, 1.0);
}

std::uint64_t samples_for_learner(const TailModel& tail, double epsilon, double delta,
                                  double constant) {
  validate(tail);
  require_epsilon(epsilon);
  if (!in_unit_interval(delta)) throw ConfigError("delta must lie in (0, 1)");
  const double base = constant * std::log(1.0 / delta);
  return stream_length(std::holds_alternative<SubGaussian>(tail) ? base : base / epsilon);
}

}  // namespace distsketch
