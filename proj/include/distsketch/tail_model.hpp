#pragma once

#include <string>
#include <string_view>
#include <variant>

namespace distsketch {

/// Tail bound P[|X - E X| >= t] <= 2 exp(-t^2 / sigma^2).
struct SubGaussian {
  double sigma = 1.0;
  friend bool operator==(const SubGaussian&, const SubGaussian&) = default;
};

/// Tail bound P[X >= t] <= c_alpha exp(-t^(1/alpha)).
struct SubWeibull {
  double alpha = 1.0;
  double c_alpha = 1.0;
  friend bool operator==(const SubWeibull&, const SubWeibull&) = default;
};

using TailModel = std::variant<SubGaussian, SubWeibull>;

/// Throws ConfigError unless every parameter is finite and positive.
void validate(const TailModel& tail);

/// Worst-case combination of two sides: the larger sigma, or the larger
/// alpha and c_alpha. Mixing families is a ConfigError.
TailModel combine(const TailModel& a, const TailModel& b);

/// Parses "subgaussian:SIGMA" or "subweibull:ALPHA[,CALPHA]".
TailModel parse_tail_model(std::string_view text);

std::string to_string(const TailModel& tail);

}  // namespace distsketch
