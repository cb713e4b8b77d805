// Serialization of segment trees, split profiles, and baselines. Output is
// byte-stable for fixed inputs: fixed key order, shortest round-trip number
// rendering.

#pragma once

#include "jsseg/play.h"
#include "jsseg/segmentation.h"

namespace jsseg {

inline constexpr const char* kToolVersion = "0.1.0";

/// Provenance recorded into every tree document.
struct RunMetadata {
  std::string tool_version = kToolVersion;
  SegmentationConfig config;
  std::string input_digest;  // "fnv1a64:<16 hex digits>" of the normalized input
  std::string generator = kGeneratorName;

  bool operator==(const RunMetadata&) const = default;
};

struct TreeDocument {
  RunMetadata meta;
  std::vector<Marker> markers;
  SegmentNode root;
};

/// JSON document `{meta, markers, node}`. `levels` caps the reported depth:
/// nodes `levels` splits below the root keep their statistics but lose their
/// children. Returns text ending in a newline.
std::string emitTree(const SegmentNode& root, const RunMetadata& meta,
                     std::span<const Marker> markers,
                     std::optional<int> levels = std::nullopt);

/// Parses and validates a tree document; rejects missing spans, dangling or
/// mispartitioned children, and malformed metadata.
TreeDocument parseTree(std::string_view json_text);

/// One profile CSV row; columns n,d,mean,mean_plus_sigma,mean_minus_sigma.
struct ProfileCsvRow {
  std::size_t n = 0;
  double d = 0.0;
  double mean = 0.0;
  double mean_plus_sigma = 0.0;
  double mean_minus_sigma = 0.0;
};

std::string emitProfileCsv(const SplitProfile& profile, const BaselineStats& baseline);
std::string emitProfileCsv(std::span<const ProfileCsvRow> rows);
std::vector<ProfileCsvRow> parseProfileCsv(std::string_view csv_text);

/// BaselineStats as a small JSON document.
std::string emitBaseline(const BaselineStats& baseline);

std::uint64_t fnv1a64(std::string_view bytes);

/// Digest of the normalized sequence content (counts table plus markers), so
/// ingest-then-segment and direct segmentation agree byte for byte.
std::string sequenceDigest(const WeightedSequence& seq, std::span<const Marker> markers);

}  // namespace jsseg
