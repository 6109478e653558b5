#include "distsketch/mmg.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "distsketch/errors.hpp"

namespace distsketch {
namespace {

CounterSketch::Count checked_add(CounterSketch::Count a, CounterSketch::Count b) {
  if (a > std::numeric_limits<CounterSketch::Count>::max() - b) {
    throw std::overflow_error("counter sketch: 64-bit counter overflow");
  }
  return a + b;
}

}  // namespace

CounterSketch::CounterSketch(std::size_t capacity) : capacity_(capacity) {
  if (capacity < 4 || capacity % 2 != 0) {
    throw ConfigError("counter sketch capacity must be even and >= 4, got " +
                      std::to_string(capacity));
  }
}

CounterSketch CounterSketch::from_state(std::size_t capacity, Counters counters,
                                        Count processed_weight) {
  CounterSketch sketch(capacity);
  if (counters.size() > capacity) {
    throw ConfigError("counter sketch state holds more counters than capacity");
  }
  Count total = 0;
  for (const auto& [item, count] : counters) {
    if (count == 0) throw ConfigError("counter sketch state holds a zero counter");
    total = checked_add(total, count);
  }
  if (total > processed_weight) {
    throw ConfigError("counter sketch state: counter sum exceeds processed weight");
  }
  sketch.counters_ = std::move(counters);
  sketch.total_ = total;
  sketch.processed_weight_ = processed_weight;
  return sketch;
}

void CounterSketch::update(Item item, Count weight) {
  if (weight == 0) throw DataError("counter sketch: update weight must be positive");
  processed_weight_ = checked_add(processed_weight_, weight);
  fold(item, weight);
}

void CounterSketch::merge(const CounterSketch& other) {
  if (other.capacity_ != capacity_) {
    throw ConfigError("counter sketch merge: capacity mismatch (" +
                      std::to_string(capacity_) + " vs " +
                      std::to_string(other.capacity_) + ")");
  }
  // Copy first so that merging a sketch into itself is well defined.
  const Counters incoming = other.counters_;
  const Count incoming_weight = other.processed_weight_;
  processed_weight_ = checked_add(processed_weight_, incoming_weight);
  for (const auto& [item, count] : incoming) fold(item, count);
}

void CounterSketch::fold(Item item, Count weight) {
  if (auto it = counters_.find(item); it != counters_.end()) {
    it->second = checked_add(it->second, weight);
    total_ += weight;
    return;
  }
  if (counters_.size() < capacity_) {
    counters_.emplace(item, weight);
    total_ = checked_add(total_, weight);
    return;
  }
  decrement_and_admit(item, weight);
}

void CounterSketch::decrement_and_admit(Item item, Count weight) {
  std::vector<Count> values;
  values.reserve(counters_.size());
  for (const auto& entry : counters_) values.push_back(entry.second);
  const auto rank = static_cast<std::ptrdiff_t>(decrement_rank()) - 1;
  std::nth_element(values.begin(), values.begin() + rank, values.end(),
                   std::greater<>());
  const Count threshold = values[static_cast<std::size_t>(rank)];

  Count total = 0;
  for (auto it = counters_.begin(); it != counters_.end();) {
    if (it->second <= threshold) {
      it = counters_.erase(it);
    } else {
      it->second -= threshold;
      total += it->second;
      ++it;
    }
  }
  // Only counters strictly above the threshold survive, at most rank of them,
  // so there is always room for the incoming item here.
  if (weight > threshold) {
    counters_.emplace(item, weight - threshold);
    total += weight - threshold;
  }
  total_ = total;
}

CounterSketch::Count CounterSketch::estimate(Item item) const {
  const auto it = counters_.find(item);
  return it == counters_.end() ? 0 : it->second;
}

CounterSketch::Count CounterSketch::estimate_cumulate(Item item) const {
  Count sum = 0;
  for (auto it = counters_.begin(); it != counters_.end() && it->first <= item; ++it) {
    sum += it->second;
  }
  return sum;
}

}  // namespace distsketch
