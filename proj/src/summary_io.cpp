#include "distsketch/summary_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include <json.hpp>

#include "distsketch/errors.hpp"

namespace distsketch {
namespace {

constexpr char kMagic[4] = {'S', 'L', 'D', 'S'};

enum class TailTag : std::uint8_t { kNone = 0, kSubGaussian = 1, kSubWeibull = 2 };

struct TailFields {
  TailTag tag = TailTag::kNone;
  double p0 = 0.0;
  double p1 = 0.0;
};

TailFields tail_fields(const std::optional<TailModel>& tail) {
  if (!tail) return {};
  if (const auto* g = std::get_if<SubGaussian>(&*tail)) {
    return {TailTag::kSubGaussian, g->sigma, 0.0};
  }
  const auto& w = std::get<SubWeibull>(*tail);
  return {TailTag::kSubWeibull, w.alpha, w.c_alpha};
}

std::optional<TailModel> tail_from_fields(std::uint8_t tag, double p0, double p1) {
  switch (tag) {
    case 0: return std::nullopt;
    case 1: return SubGaussian{p0};
    case 2: return SubWeibull{p0, p1};
    default: throw FormatError("summary: unknown tail-model tag " + std::to_string(tag));
  }
}

class Writer {
 public:
  explicit Writer(std::size_t reserve) { out_.reserve(reserve); }

  template <class T>
  void put(T value) {
    using U = std::make_unsigned_t<
        std::conditional_t<std::is_floating_point_v<T>, std::uint64_t, T>>;
    U bits;
    if constexpr (std::is_floating_point_v<T>) {
      bits = std::bit_cast<std::uint64_t>(value);
    } else {
      bits = static_cast<U>(value);
    }
    for (std::size_t i = 0; i < sizeof(U); ++i) {
      out_.push_back(static_cast<std::byte>((bits >> (8 * i)) & 0xFFu));
    }
  }

  void put_raw(const char* data, std::size_t size) {
    for (std::size_t i = 0; i < size; ++i) out_.push_back(static_cast<std::byte>(data[i]));
  }

  std::vector<std::byte> take() { return std::move(out_); }

 private:
  std::vector<std::byte> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::byte> in) : in_(in) {}

  template <class T>
  T get() {
    using U = std::make_unsigned_t<
        std::conditional_t<std::is_floating_point_v<T>, std::uint64_t, T>>;
    need(sizeof(U));
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
      bits |= static_cast<U>(static_cast<U>(in_[pos_ + i]) << (8 * i));
    }
    pos_ += sizeof(U);
    if constexpr (std::is_floating_point_v<T>) {
      return std::bit_cast<double>(static_cast<std::uint64_t>(bits));
    } else {
      return static_cast<T>(bits);
    }
  }

  void need(std::size_t size) const {
    if (in_.size() - pos_ < size) throw FormatError("summary: truncated input");
  }

  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  std::span<const std::byte> in_;
  std::size_t pos_ = 0;
};

// Shared by both decoders so the binary and JSON paths enforce the same rules.
DistributionSummary assemble(std::uint8_t tail_tag, double tail_p0, double tail_p1,
                             double origin, double width, std::uint64_t capacity,
                             std::uint64_t n,
                             const std::vector<std::pair<std::int64_t, std::uint64_t>>& entries) {
  try {
    CounterSketch::Counters counters;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i > 0 && entries[i].first <= entries[i - 1].first) {
        throw FormatError("summary: entries are not strictly ascending by index");
      }
      counters.emplace_hint(counters.end(), entries[i].first, entries[i].second);
    }
    auto tail = tail_from_fields(tail_tag, tail_p0, tail_p1);
    BucketSpec spec(width, origin);
    auto sketch = CounterSketch::from_state(static_cast<std::size_t>(capacity),
                                            std::move(counters), n);
    return DistributionSummary(spec, std::move(sketch), std::move(tail));
  } catch (const FormatError&) {
    throw;
  } catch (const ConfigError& e) {
    throw FormatError(std::string("summary: invalid content: ") + e.what());
  } catch (const std::overflow_error& e) {
    throw FormatError(std::string("summary: invalid content: ") + e.what());
  }
}

}  // namespace

std::vector<std::byte> serialize(const DistributionSummary& summary) {
  const auto& counters = summary.sketch().counters();
  Writer w(kSummaryHeaderBytes + kSummaryEntryBytes * counters.size());
  const auto tail = tail_fields(summary.tail());
  w.put_raw(kMagic, sizeof(kMagic));
  w.put(kSummaryFormatVersion);
  w.put(static_cast<std::uint8_t>(tail.tag));
  w.put(tail.p0);
  w.put(tail.p1);
  w.put(summary.spec().origin());
  w.put(summary.spec().width());
  w.put(static_cast<std::uint32_t>(summary.capacity()));
  w.put(summary.n());
  w.put(static_cast<std::uint32_t>(counters.size()));
  for (const auto& [index, count] : counters) {
    w.put(index);
    w.put(count);
  }
  return w.take();
}

DistributionSummary deserialize(std::span<const std::byte> bytes) {
  Reader r(bytes);
  r.need(sizeof(kMagic));
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw FormatError("summary: bad magic");
  }
  for (std::size_t i = 0; i < sizeof(kMagic); ++i) r.get<std::uint8_t>();
  const auto version = r.get<std::uint16_t>();
  if (version != kSummaryFormatVersion) {
    throw FormatError("summary: unsupported version " + std::to_string(version));
  }
  const auto tag = r.get<std::uint8_t>();
  const auto p0 = r.get<double>();
  const auto p1 = r.get<double>();
  const auto origin = r.get<double>();
  const auto width = r.get<double>();
  const auto capacity = r.get<std::uint32_t>();
  const auto n = r.get<std::uint64_t>();
  const auto entry_count = r.get<std::uint32_t>();
  if (r.remaining() != kSummaryEntryBytes * std::size_t{entry_count}) {
    throw FormatError(r.remaining() < kSummaryEntryBytes * std::size_t{entry_count}
                          ? "summary: truncated input"
                          : "summary: trailing bytes after entries");
  }
  std::vector<std::pair<std::int64_t, std::uint64_t>> entries;
  entries.reserve(entry_count);
  for (std::uint32_t i = 0; i < entry_count; ++i) {
    const auto index = r.get<std::int64_t>();
    const auto count = r.get<std::uint64_t>();
    entries.emplace_back(index, count);
  }
  return assemble(tag, p0, p1, origin, width, capacity, n, entries);
}

std::string to_json(const DistributionSummary& summary) {
  using nlohmann::json;
  const auto tail = tail_fields(summary.tail());
  json entries = json::array();
  for (const auto& [index, count] : summary.sketch().counters()) {
    entries.push_back(json::array({index, count}));
  }
  json doc = {
      {"magic", "SLDS"},
      {"version", kSummaryFormatVersion},
      {"tail", {{"tag", static_cast<int>(tail.tag)}, {"param0", tail.p0}, {"param1", tail.p1}}},
      {"origin", summary.spec().origin()},
      {"width", summary.spec().width()},
      {"capacity", summary.capacity()},
      {"n", summary.n()},
      {"entries", std::move(entries)},
  };
  return doc.dump(2);
}

DistributionSummary from_json(std::string_view text) {
  using nlohmann::json;
  try {
    const json doc = json::parse(text);
    if (doc.at("magic").get<std::string>() != "SLDS") throw FormatError("summary: bad magic");
    if (doc.at("version").get<int>() != kSummaryFormatVersion) {
      throw FormatError("summary: unsupported version");
    }
    const auto& tail = doc.at("tail");
    const auto tag = tail.at("tag").get<int>();
    if (tag < 0 || tag > 255) throw FormatError("summary: unknown tail-model tag");
    std::vector<std::pair<std::int64_t, std::uint64_t>> entries;
    for (const auto& e : doc.at("entries")) {
      if (!e.is_array() || e.size() != 2) throw FormatError("summary: malformed entry");
      entries.emplace_back(e.at(0).get<std::int64_t>(), e.at(1).get<std::uint64_t>());
    }
    const auto capacity = doc.at("capacity").get<std::uint64_t>();
    if (capacity > std::numeric_limits<std::uint32_t>::max()) {
      throw FormatError("summary: capacity out of range");
    }
    return assemble(static_cast<std::uint8_t>(tag), tail.at("param0").get<double>(),
                    tail.at("param1").get<double>(), doc.at("origin").get<double>(),
                    doc.at("width").get<double>(), capacity,
                    doc.at("n").get<std::uint64_t>(), entries);
  } catch (const json::exception& e) {
    throw FormatError(std::string("summary: malformed JSON: ") + e.what());
  }
}

void save_summary(const DistributionSummary& summary, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  if (path.extension() == ".json") {
    out << to_json(summary) << '\n';
  } else {
    const auto bytes = serialize(summary);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
  }
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

DistributionSummary load_summary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open summary '" + path.string() + "'");
  const std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (raw.size() >= sizeof(kMagic) && std::memcmp(raw.data(), kMagic, sizeof(kMagic)) == 0) {
    return deserialize(std::as_bytes(std::span(raw.data(), raw.size())));
  }
  return from_json(raw);
}

}  // namespace distsketch
