#include "distsketch/tail_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "distsketch/errors.hpp"
#include "parse_util.hpp"

namespace distsketch {
namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

void validate(const TailModel& tail) {
  std::visit(Overloaded{
                 [](const SubGaussian& g) {
                   if (!positive_finite(g.sigma)) {
                     throw ConfigError("sub-Gaussian sigma must be finite and positive");
                   }
                 },
                 [](const SubWeibull& w) {
                   if (!positive_finite(w.alpha) || !positive_finite(w.c_alpha)) {
                     throw ConfigError("sub-Weibull alpha and c_alpha must be finite and positive");
                   }
                 },
             },
             tail);
}

TailModel combine(const TailModel& a, const TailModel& b) {
  validate(a);
  validate(b);
  if (a.index() != b.index()) {
    throw ConfigError("cannot combine a sub-Gaussian and a sub-Weibull tail model");
  }
  if (const auto* ga = std::get_if<SubGaussian>(&a)) {
    return SubGaussian{std::max(ga->sigma, std::get<SubGaussian>(b).sigma)};
  }
  const auto& wa = std::get<SubWeibull>(a);
  const auto& wb = std::get<SubWeibull>(b);
  return SubWeibull{std::max(wa.alpha, wb.alpha), std::max(wa.c_alpha, wb.c_alpha)};
}

TailModel parse_tail_model(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("tail model must look like subgaussian:SIGMA or subweibull:ALPHA[,CALPHA]");
  }
  const auto kind = detail::trim(text.substr(0, colon));
  const auto params = detail::split(text.substr(colon + 1), ',');
  std::vector<double> values;
  for (const auto p : params) {
    const auto v = detail::parse_double(p);
    if (!v) throw ConfigError("bad tail model parameter '" + std::string(p) + "'");
    values.push_back(*v);
  }
  TailModel tail;
  if (kind == "subgaussian" && values.size() == 1) {
    tail = SubGaussian{values[0]};
  } else if (kind == "subweibull" && (values.size() == 1 || values.size() == 2)) {
    tail = SubWeibull{values[0], values.size() == 2 ? values[1] : 1.0};
  } else {
    throw ConfigError("unrecognised tail model '" + std::string(text) + "'");
  }
  validate(tail);
  return tail;
}

std::string to_string(const TailModel& tail) {
  std::ostringstream out;
  out.precision(17);
  if (const auto* g = std::get_if<SubGaussian>(&tail)) {
    out << "subgaussian:" << g->sigma;
  } else {
    const auto& w = std::get<SubWeibull>(tail);
    out << "subweibull:" << w.alpha << ',' << w.c_alpha;
  }
  return out.str();
}

}  // namespace distsketch
