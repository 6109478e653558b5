#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "distsketch/summary.hpp"

namespace distsketch {

/*
 * Binary summary file, little-endian throughout:
 *
 *   offset  size  field
 *   0       4     magic "SLDS"
 *   4       2     version (u16) = 1
 *   6       1     tail tag (u8): 0 none, 1 sub-Gaussian, 2 sub-Weibull
 *   7       8     tail parameter 0 (f64): sigma or alpha, 0 when untagged
 *   15      8     tail parameter 1 (f64): c_alpha for sub-Weibull, else 0
 *   23      8     origin x0 (f64)
 *   31      8     bucket width b (f64)
 *   39      4     capacity (u32)
 *   43      8     n (u64)
 *   51      4     entry count (u32)
 *   55      16*m  entries sorted by index: (index i64, count u64)
 */
inline constexpr std::size_t kSummaryHeaderBytes = 55;
inline constexpr std::size_t kSummaryEntryBytes = 16;
inline constexpr std::uint16_t kSummaryFormatVersion = 1;

std::vector<std::byte> serialize(const DistributionSummary& summary);

/// Throws FormatError on bad magic, unknown version, truncation, trailing
/// bytes or any violated summary invariant.
DistributionSummary deserialize(std::span<const std::byte> bytes);

/// JSON mirror with the same fields as the binary layout.
std::string to_json(const DistributionSummary& summary);
DistributionSummary from_json(std::string_view text);

/// Writes JSON when the path ends in ".json", binary otherwise.
void save_summary(const DistributionSummary& summary, const std::filesystem::path& path);

/// Accepts either encoding, detected by the magic bytes.
DistributionSummary load_summary(const std::filesystem::path& path);

}  // namespace distsketch
