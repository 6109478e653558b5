#pragma once

#include <cstddef>
#include <cstdint>
#include <map>

namespace distsketch {

/**
 * Mergeable Misra-Gries counter sketch over signed 64-bit items.
 *
 * Holds at most `capacity()` counters. When a new item arrives at full
 * capacity, every counter is reduced by c*, the (capacity/2)-th largest
 * counter value counting multiplicity; counters reaching zero are released.
 * The new item is then admitted with weight - c* if that is positive.
 *
 * Guarantees, with F_res(t) the total weight minus the t largest true
 * frequencies:
 *   0 <= f_j - estimate(j)           <= 4 F_res(k/4) / k
 *   0 <= C_i - estimate_cumulate(i)  <= 2 F_res(k/4)
 * and both survive merge() against the concatenated stream.
 *
 * Counters live in an ordered map so prefix sums are a forward scan and
 * merge order is deterministic.
 */
class CounterSketch {
 public:
  using Item = std::int64_t;
  using Count = std::uint64_t;
  using Counters = std::map<Item, Count>;

  /// Throws ConfigError unless capacity >= 4 and even.
  explicit CounterSketch(std::size_t capacity);

  /// Rebuilds a sketch from persisted state; validates every invariant.
  static CounterSketch from_state(std::size_t capacity, Counters counters,
                                  Count processed_weight);

  /// Throws DataError for weight 0, std::overflow_error past 2^64 - 1.
  void update(Item item, Count weight = 1);

  /// Folds `other` into this sketch in ascending item order.
  void merge(const CounterSketch& other);

  Count estimate(Item item) const;
  Count estimate_cumulate(Item item) const;

  /// Sum of all counters, i.e. estimate_cumulate at the largest item.
  Count total() const { return total_; }

  std::size_t capacity() const { return capacity_; }
  std::size_t decrement_rank() const { return capacity_ / 2; }
  std::size_t size() const { return counters_.size(); }
  bool empty() const { return counters_.empty(); }
  Count processed_weight() const { return processed_weight_; }
  const Counters& counters() const { return counters_; }

  friend bool operator==(const CounterSketch&, const CounterSketch&) = default;

 private:
  void fold(Item item, Count weight);
  void decrement_and_admit(Item item, Count weight);

  std::size_t capacity_;
  Counters counters_;
  Count total_ = 0;
  Count processed_weight_ = 0;
};

}  // namespace distsketch
