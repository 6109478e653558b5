#include "distsketch/streams.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <string>

#include "distsketch/errors.hpp"
#include "parse_util.hpp"

namespace distsketch {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

// std::mt19937_64 output is fully specified by the standard; the standard
// distributions are not, so the conversions below are done by hand.
class Uniform01 {
 public:
  explicit Uniform01(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on the open interval (0, 1).
  double operator()() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53; }

 private:
  std::mt19937_64 engine_;
};

std::vector<double> gaussian(const GaussianSource& g, std::uint64_t seed, std::size_t n) {
  if (!std::isfinite(g.mean) || !std::isfinite(g.sigma) || g.sigma <= 0.0) {
    throw ConfigError("gaussian source needs a finite mean and a positive sigma");
  }
  Uniform01 uniform(seed);
  std::vector<double> out;
  out.reserve(n);
  while (out.size() < n) {
    // Box-Muller: one pair of uniforms gives two independent normals.
    const double radius = std::sqrt(-2.0 * std::log(uniform()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    out.push_back(g.mean + g.sigma * radius * std::cos(angle));
    if (out.size() < n) out.push_back(g.mean + g.sigma * radius * std::sin(angle));
  }
  return out;
}

std::vector<double> weibull_tail(double alpha, std::uint64_t seed, std::size_t n) {
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw ConfigError("weibull source needs a positive alpha");
  }
  Uniform01 uniform(seed);
  std::vector<double> out(n);
  // Inverse of the survival function exp(-t^(1/alpha)).
  for (auto& x : out) x = std::pow(-std::log(uniform()), alpha);
  return out;
}

double parse_finite(std::string_view text, const std::filesystem::path& path, std::size_t line) {
  const auto value = detail::parse_double(text);
  if (!value || !std::isfinite(*value)) {
    throw DataError(path.string() + ":" + std::to_string(line) + ": expected a finite number, got '" +
                    std::string(text) + "'");
  }
  return *value;
}

}  // namespace

Generator parse_generator(std::string_view text) {
  const auto colon = text.find(':');
  const auto kind = text.substr(0, colon);
  const auto rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto numbers = [&](std::size_t expected) {
    std::vector<double> values;
    for (const auto part : detail::split(rest, ',')) {
      const auto v = detail::parse_double(part);
      if (!v) throw ConfigError("bad generator parameter in '" + std::string(text) + "'");
      values.push_back(*v);
    }
    if (values.size() != expected) {
      throw ConfigError("generator '" + std::string(text) + "' expects " +
                        std::to_string(expected) + " parameter(s)");
    }
    return values;
  };
  if (kind == "gaussian") {
    const auto v = numbers(2);
    if (!(v[1] > 0.0)) throw ConfigError("gaussian sigma must be positive");
    return GaussianSource{v[0], v[1]};
  }
  if (kind == "weibull") {
    const auto v = numbers(1);
    if (!(v[0] > 0.0)) throw ConfigError("weibull alpha must be positive");
    return WeibullTailSource{v[0]};
  }
  if (kind == "exponential" && rest.empty()) return ExponentialSource{};
  if (kind == "file" && !rest.empty()) return FileSource{std::filesystem::path(std::string(rest))};
  throw ConfigError("unknown generator '" + std::string(text) + "'");
}

std::vector<double> generate(const SourceStream& stream) {
  return std::visit(
      Overloaded{
          [&](const GaussianSource& g) { return gaussian(g, stream.seed, stream.length); },
          [&](const WeibullTailSource& w) { return weibull_tail(w.alpha, stream.seed, stream.length); },
          [&](const ExponentialSource&) { return weibull_tail(1.0, stream.seed, stream.length); },
          [&](const FileSource& f) { return read_samples(f.path); },
      },
      stream.generator);
}

std::vector<std::span<const double>> split_sources(std::span<const double> samples,
                                                   std::size_t sources) {
  if (sources == 0) throw ConfigError("number of sources must be positive");
  if (sources > samples.size()) {
    throw ConfigError("cannot split " + std::to_string(samples.size()) + " samples into " +
                      std::to_string(sources) + " sources");
  }
  const std::size_t base = samples.size() / sources;
  const std::size_t extra = samples.size() % sources;
  std::vector<std::span<const double>> parts;
  parts.reserve(sources);
  std::size_t offset = 0;
  for (std::size_t s = 0; s < sources; ++s) {
    const std::size_t size = base + (s < extra ? 1 : 0);
    parts.push_back(samples.subspan(offset, size));
    offset += size;
  }
  return parts;
}

std::vector<double> read_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open sample file '" + path.string() + "'");
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    out.push_back(parse_finite(text, path, line_no));
  }
  return out;
}

std::map<std::string, std::vector<double>> read_grouped_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open score file '" + path.string() + "'");
  std::map<std::string, std::vector<double>> groups;
  std::string line;
  std::size_t line_no = 0;
  bool seen_row = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    const auto fields = detail::split(text, ',');
    if (fields.size() != 2) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": expected two columns 'group,value'");
    }
    const auto value = detail::parse_double(fields[1]);
    if (!seen_row && !value) {
      seen_row = true;  // header
      continue;
    }
    seen_row = true;
    const auto group = detail::trim(fields[0]);
    if (group.empty()) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": empty group label");
    }
    groups[std::string(group)].push_back(parse_finite(fields[1], path, line_no));
  }
  return groups;
}

TailDiagnostic tail_diagnostic(std::span<const double> samples, const TailModel& model,
                               const TailDiagnosticOptions& options) {
  validate(model);
  if (samples.size() < 2) throw DataError("tail diagnostic needs at least two samples");
  for (const double x : samples) {
    if (!std::isfinite(x)) throw DataError("tail diagnostic on non-finite samples");
  }
  const auto n = static_cast<double>(samples.size());
  TailDiagnostic report;

  if (const auto* g = std::get_if<SubGaussian>(&model)) {
    double second_moment = 0.0;
    for (const double x : samples) second_moment += x * x;
    second_moment /= n;
    const double scale = 1.0 + options.slack;
    report.statistic = second_moment;
    report.bound = options.sigma_constant * scale * scale * g->sigma * g->sigma;
    report.consistent = second_moment <= report.bound;
    return report;
  }

  const auto& w = std::get<SubWeibull>(model);
  std::vector<double> sorted(samples.size());
  std::transform(samples.begin(), samples.end(), sorted.begin(),
                 [](double x) { return std::fabs(x); });
  std::sort(sorted.begin(), sorted.end());
  const double required_tail = 12.0 * std::log(1.0 / options.delta);
  const double log_arg = n * w.c_alpha / required_tail;
  const double t_max = log_arg > 1.0 ? std::pow(std::log(log_arg), w.alpha) : 0.0;
  const std::size_t points = std::max<std::size_t>(options.grid_points, 2);

  report.bound = options.survival_margin;
  for (std::size_t k = 0; k < points; ++k) {
    const double t = t_max * static_cast<double>(k) / static_cast<double>(points - 1);
    const auto above = sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), t);
    const double survival = static_cast<double>(above) / n;
    const double envelope = w.c_alpha * std::exp(-std::pow(t, 1.0 / w.alpha));
    const double excess = survival / envelope;
    report.statistic = std::max(report.statistic, excess);
    if (excess > options.survival_margin) {
      report.consistent = false;
      report.worst_t = t;
    }
  }
  return report;
}

}  // namespace distsketch
