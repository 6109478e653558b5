#include "distsketch/experiment.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "distsketch/errors.hpp"
#include "distsketch/estimators.hpp"
#include "parse_util.hpp"

namespace distsketch {
namespace {

std::size_t parse_count(std::string_view text) {
  const auto v = detail::parse_double(text);
  if (!v || *v < 1.0 || *v != std::floor(*v) || *v > 4.0e9) {
    throw ConfigError("bad counter value '" + std::string(text) + "'");
  }
  return static_cast<std::size_t>(*v);
}

}  // namespace

std::vector<std::size_t> parse_counters_grid(std::string_view text) {
  std::vector<std::size_t> grid;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = detail::split(text, ':');
    if (parts.size() != 3) throw ConfigError("counter grid must be START:STOP:STEP");
    const auto start = parse_count(parts[0]);
    const auto stop = parse_count(parts[1]);
    const auto step = parse_count(parts[2]);
    if (stop < start) throw ConfigError("counter grid STOP is below START");
    for (auto k = start; k <= stop; k += step) grid.push_back(k);
  } else {
    for (const auto part : detail::split(text, ',')) grid.push_back(parse_count(part));
  }
  return grid;
}

std::uint64_t side_seed(std::uint64_t seed, int side) {
  return side == 0 ? seed : seed ^ 0x9E3779B97F4A7C15ULL;
}

std::vector<ExperimentRow> run_synthetic_experiment(const ExperimentConfig& cfg) {
  if (cfg.metric != Metric::kWasserstein && cfg.metric != Metric::kTotalVariation) {
    throw ConfigError("synthetic experiments support the wasserstein and tv metrics");
  }
  if (cfg.counters_grid.empty()) throw ConfigError("empty counter grid");
  const auto a = generate({cfg.dist_a, side_seed(cfg.seed, 0), cfg.n});
  const auto b = generate({cfg.dist_b, side_seed(cfg.seed, 1), cfg.n});
  if (a.empty() || b.empty()) throw DataError("experiment streams are empty");
  const auto parts_a = split_sources(a, cfg.sources);
  const auto parts_b = split_sources(b, cfg.sources);
  const BucketSpec spec(cfg.bucket_width);

  double oracle = 0.0;
  if (cfg.metric == Metric::kWasserstein) {
    oracle = (cfg.p == 1.0 && a.size() == b.size())
                 ? oracle_wasserstein1(a, b)
                 : wasserstein_p(StepQuantile::from_samples(a), StepQuantile::from_samples(b),
                                 cfg.p)
                       .value;
  } else {
    oracle = oracle_tv(bucketize_exact(a, spec), bucketize_exact(b, spec));
  }

  std::vector<ExperimentRow> rows;
  for (const auto k : cfg.counters_grid) {
    const EstimatePlan plan{cfg.bucket_width, k, 1};
    const auto started = std::chrono::steady_clock::now();
    const auto report = cfg.metric == Metric::kWasserstein ? swa(parts_a, parts_b, plan, cfg.p)
                                                           : stva(parts_a, parts_b, plan);
    const auto elapsed = std::chrono::steady_clock::now() - started;

    ExperimentRow row;
    row.counters = k;
    row.estimate = report.distance.value;
    row.oracle = oracle;
    row.abs_error = std::fabs(row.estimate - oracle);
    row.rel_error = oracle != 0.0 ? row.abs_error / std::fabs(oracle)
                                  : (row.abs_error == 0.0 ? 0.0
                                                          : std::numeric_limits<double>::infinity());
    row.wall_ms = std::chrono::duration<double, std::milli>(elapsed).count();
    row.assigned_a = report.summary_a.assigned_buckets();
    row.assigned_b = report.summary_b.assigned_buckets();
    rows.push_back(row);
  }
  return rows;
}

void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  const auto precision = out.precision(10);
  out << "k,estimate,oracle,abs_error,rel_error,wall_ms\n";
  for (const auto& r : rows) {
    out << r.counters << ',' << r.estimate << ',' << r.oracle << ',' << r.abs_error << ','
        << r.rel_error << ',' << r.wall_ms << '\n';
  }
  out.precision(precision);
}

}  // namespace distsketch
