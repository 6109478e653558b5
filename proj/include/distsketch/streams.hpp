#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "distsketch/tail_model.hpp"

namespace distsketch {

struct GaussianSource {
  double mean = 0.0;
  double sigma = 1.0;
};

/// Samples t >= 0 with survival P[X >= t] = exp(-t^(1/alpha)).
struct WeibullTailSource {
  double alpha = 1.0;
};

/// Unit-rate exponential.
struct ExponentialSource {};

struct FileSource {
  std::filesystem::path path;
};

using Generator = std::variant<GaussianSource, WeibullTailSource, ExponentialSource, FileSource>;

/// A reproducible sample stream: identical (generator, seed, length) yields
/// identical samples bit for bit (for a given C math library).
struct SourceStream {
  Generator generator;
  std::uint64_t seed = 0;
  std::size_t length = 0;
};

/// Parses "gaussian:MEAN,SIGMA", "weibull:ALPHA", "exponential" or "file:PATH".
Generator parse_generator(std::string_view text);

/// For file sources the whole file is read and `length` is ignored.
/// Throws DataError for unreadable or malformed files.
std::vector<double> generate(const SourceStream& stream);

/// Contiguous partition into `sources` pieces; earlier pieces get the
/// remainder. Throws ConfigError if sources == 0 or sources > samples.size().
std::vector<std::span<const double>> split_sources(std::span<const double> samples,
                                                   std::size_t sources);

/// One finite decimal per line; blank lines are skipped.
std::vector<double> read_samples(const std::filesystem::path& path);

/// "group,value" lines, an optional non-numeric header line, groups ordered
/// by name.
std::map<std::string, std::vector<double>> read_grouped_samples(const std::filesystem::path& path);

struct TailDiagnostic {
  bool consistent = true;
  /// Sub-Gaussian: raw second moment and the bound it was checked against.
  /// Sub-Weibull: largest exceedance ratio seen on the grid and its bound.
  double statistic = 0.0;
  double bound = 0.0;
  /// Sub-Weibull only: largest grid point where the survival bound failed.
  std::optional<double> worst_t;
};

struct TailDiagnosticOptions {
  double slack = 0.5;          ///< sub-Gaussian second-moment slack
  double sigma_constant = 1.0; ///< multiplier on (1 + slack)^2 sigma^2
  double survival_margin = 1.5;
  double delta = 0.05;         ///< sets the largest checked t
  std::size_t grid_points = 256;
};

/**
 * Heuristic check that a sample set is compatible with a declared tail model.
 *
 * Sub-Gaussian(sigma): mean(x^2) <= sigma_constant (1 + slack)^2 sigma^2.
 * Sub-Weibull(alpha, c): empirical survival S(t) <= margin * c exp(-t^(1/alpha))
 * on a uniform grid over [0, t_max], where t_max keeps the expected tail count
 * n c exp(-t^(1/alpha)) at least 12 log(1/delta).
 *
 * Throws DataError when fewer than two samples are given.
 */
TailDiagnostic tail_diagnostic(std::span<const double> samples, const TailModel& model,
                               const TailDiagnosticOptions& options = {});

}  // namespace distsketch
