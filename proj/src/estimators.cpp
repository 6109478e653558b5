#include "distsketch/estimators.hpp"

#include <exception>
#include <optional>

#include "distsketch/errors.hpp"

namespace distsketch {
namespace {

std::uint64_t total_length(SourceSpans sources) {
  std::uint64_t n = 0;
  for (const auto& s : sources) n += s.size();
  return n;
}

struct Sides {
  DistributionSummary a;
  DistributionSummary b;
  std::uint64_t n_a;
  std::uint64_t n_b;
};

Sides summarize_sides(SourceSpans a, SourceSpans b, const EstimatePlan& plan) {
  const auto n_a = total_length(a);
  const auto n_b = total_length(b);
  if (n_a == 0 || n_b == 0) throw DataError("estimator needs samples on both sides");
  const BucketSpec spec(plan.bucket_width);
  return {summarize_sources(a, spec, plan.counters), summarize_sources(b, spec, plan.counters),
          n_a, n_b};
}

}  // namespace

DistributionSummary summarize_sources_serial(SourceSpans sources, const BucketSpec& spec,
                                             std::size_t capacity) {
  DistributionSummary merged(spec, capacity);
  for (const auto& source : sources) {
    DistributionSummary part(spec, capacity);
    part.update(source);
    merged.merge(part);
  }
  return merged;
}

DistributionSummary summarize_sources(SourceSpans sources, const BucketSpec& spec,
                                      std::size_t capacity) {
  DistributionSummary merged(spec, capacity);
  const auto count = static_cast<std::ptrdiff_t>(sources.size());
  std::vector<std::optional<DistributionSummary>> parts(sources.size());
  std::vector<std::exception_ptr> errors(sources.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t s = 0; s < count; ++s) {
    const auto idx = static_cast<std::size_t>(s);
    try {
      DistributionSummary part(spec, capacity);
      part.update(sources[idx]);
      parts[idx] = std::move(part);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }

  for (std::size_t s = 0; s < parts.size(); ++s) {
    if (errors[s]) std::rethrow_exception(errors[s]);
    merged.merge(*parts[s]);
  }
  return merged;
}

EstimateReport swa(SourceSpans a, SourceSpans b, const EstimatePlan& plan, double p) {
  auto sides = summarize_sides(a, b, plan);
  auto distance = wasserstein_p(sides.a, sides.b, p);
  const bool below = sides.n_a < plan.n_min || sides.n_b < plan.n_min;
  return {distance, plan, sides.n_a, sides.n_b, below, std::move(sides.a), std::move(sides.b)};
}

EstimateReport swa(SourceSpans a, SourceSpans b, const EstimatorConfig& cfg, double p) {
  return swa(a, b, plan_wasserstein(cfg), p);
}

EstimateReport stva(SourceSpans a, SourceSpans b, const EstimatePlan& plan) {
  auto sides = summarize_sides(a, b, plan);
  auto distance = tv(sides.a, sides.b);
  const bool below = sides.n_a < plan.n_min || sides.n_b < plan.n_min;
  return {distance, plan, sides.n_a, sides.n_b, below, std::move(sides.a), std::move(sides.b)};
}

EstimateReport stva(SourceSpans a, SourceSpans b, const EstimatorConfig& cfg) {
  return stva(a, b, plan_tv(cfg));
}

}  // namespace distsketch
