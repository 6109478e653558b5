#pragma once

#include <cstdint>
#include <ostream>
#include <string_view>
#include <vector>

#include "distsketch/distances.hpp"
#include "distsketch/streams.hpp"

namespace distsketch {

struct ExperimentConfig {
  Generator dist_a = GaussianSource{0.0, 5.0};
  Generator dist_b = GaussianSource{1.0, 5.0};
  std::size_t n = 100000;
  double bucket_width = 0.05;
  std::vector<std::size_t> counters_grid;
  std::size_t sources = 10;
  std::uint64_t seed = 7;
  Metric metric = Metric::kWasserstein;  ///< kWasserstein or kTotalVariation
  double p = 1.0;
};

struct ExperimentRow {
  std::size_t counters = 0;
  double estimate = 0.0;
  double oracle = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double wall_ms = 0.0;
  std::size_t assigned_a = 0;
  std::size_t assigned_b = 0;
};

/// "START:STOP:STEP" (inclusive) or a comma list "K1,K2,...".
std::vector<std::size_t> parse_counters_grid(std::string_view text);

/// Seeds of the two sides derived from the experiment seed.
std::uint64_t side_seed(std::uint64_t seed, int side);

/**
 * Sweeps the counter budget on a fixed pair of synthetic streams. The oracle
 * is the exact empirical distance on the raw samples (Wasserstein) or the
 * exact bucketed TV (TV).
 */
std::vector<ExperimentRow> run_synthetic_experiment(const ExperimentConfig& cfg);

/// Columns: k, estimate, oracle, abs_error, rel_error, wall_ms.
void write_experiment_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

}  // namespace distsketch
