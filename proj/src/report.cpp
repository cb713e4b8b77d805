#include "jsseg/report.h"

#include <charconv>

#include <json.hpp>

#include "jsseg/textio.h"

namespace jsseg {
namespace {

using Json = nlohmann::ordered_json;

std::string formatDouble(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

double parseDouble(std::string_view field, std::size_t line_number) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error("malformed number \"" + std::string(field) + "\" on line " +
                std::to_string(line_number));
  }
  return value;
}

Json configToJson(const SegmentationConfig& config) {
  Json j;
  j["min_split_length"] = config.min_split_length;
  j["threshold_multiplier"] = config.threshold_multiplier;
  j["shuffle_replicates"] = config.shuffle_replicates;
  j["seed"] = config.seed;
  j["max_depth"] = config.max_depth;
  j["weight_mode"] = weightModeName(config.weight_mode);
  return j;
}

const Json& field(const Json& j, const char* key, const char* where) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw Error(std::string("tree document: missing \"") + key + "\" in " + where);
  }
  return *it;
}

SegmentationConfig configFromJson(const Json& j) {
  SegmentationConfig config;
  config.min_split_length = field(j, "min_split_length", "config").get<std::size_t>();
  config.threshold_multiplier = field(j, "threshold_multiplier", "config").get<double>();
  config.shuffle_replicates = field(j, "shuffle_replicates", "config").get<int>();
  config.seed = field(j, "seed", "config").get<std::uint64_t>();
  config.max_depth = field(j, "max_depth", "config").get<int>();
  const auto mode = weightModeFromName(field(j, "weight_mode", "config").get<std::string>());
  if (!mode.has_value()) {
    throw Error("tree document: unknown weight_mode");
  }
  config.weight_mode = *mode;
  config.validate();
  return config;
}

Json nodeToJson(const SegmentNode& node, std::optional<int> levels, int depth) {
  Json j;
  j["start"] = node.span.start;
  j["end"] = node.span.end;
  if (node.split_after.has_value()) {
    j["split_after"] = *node.split_after;
  }
  if (node.d_max.has_value()) {
    j["d_max"] = *node.d_max;
  }
  if (node.baseline.has_value()) {
    Json b;
    b["mean"] = node.baseline->mean;
    b["sigma"] = node.baseline->sigma;
    b["replicates"] = node.baseline->replicates;
    j["baseline"] = std::move(b);
  }
  j["significant"] = node.significant;
  if (!node.children.empty() && (!levels.has_value() || depth < *levels)) {
    Json children = Json::array();
    for (const SegmentNode& child : node.children) {
      children.push_back(nodeToJson(child, levels, depth + 1));
    }
    j["children"] = std::move(children);
  }
  return j;
}

SegmentNode nodeFromJson(const Json& j, std::uint64_t config_seed, int replicates) {
  if (!j.is_object()) {
    throw Error("tree document: node must be an object");
  }
  SegmentNode node;
  node.span.start = field(j, "start", "node").get<std::size_t>();
  node.span.end = field(j, "end", "node").get<std::size_t>();
  if (node.span.start >= node.span.end) {
    throw Error("tree document: node span is empty");
  }
  if (const auto it = j.find("split_after"); it != j.end()) {
    node.split_after = it->get<std::size_t>();
    if (*node.split_after < 1 || *node.split_after >= node.span.length()) {
      throw Error("tree document: split_after outside the span");
    }
  }
  if (const auto it = j.find("d_max"); it != j.end()) {
    node.d_max = it->get<double>();
    if (*node.d_max < 0.0) {
      throw Error("tree document: negative d_max");
    }
  }
  if (const auto it = j.find("baseline"); it != j.end()) {
    BaselineStats baseline;
    baseline.mean = field(*it, "mean", "baseline").get<double>();
    baseline.sigma = field(*it, "sigma", "baseline").get<double>();
    baseline.replicates = field(*it, "replicates", "baseline").get<int>();
    baseline.seed = config_seed;
    if (baseline.replicates != replicates) {
      throw Error("tree document: baseline replicates disagree with config");
    }
    node.baseline = baseline;
  }
  node.significant = field(j, "significant", "node").get<bool>();
  if (const auto it = j.find("children"); it != j.end()) {
    if (!it->is_array() || it->size() != 2) {
      throw Error("tree document: children must be a two-element array");
    }
    node.children.push_back(nodeFromJson((*it)[0], config_seed, replicates));
    node.children.push_back(nodeFromJson((*it)[1], config_seed, replicates));
  }
  return node;
}

}  // namespace

std::string emitTree(const SegmentNode& root, const RunMetadata& meta,
                     std::span<const Marker> markers, std::optional<int> levels) {
  Json doc;
  Json meta_json;
  meta_json["tool_version"] = meta.tool_version;
  meta_json["config"] = configToJson(meta.config);
  meta_json["input_digest"] = meta.input_digest;
  meta_json["generator"] = meta.generator;
  doc["meta"] = std::move(meta_json);

  Json marker_array = Json::array();
  for (const Marker& marker : markers) {
    Json m;
    m["kind"] = markerKindName(marker.kind);
    m["label"] = marker.label;
    m["position"] = marker.position;
    marker_array.push_back(std::move(m));
  }
  doc["markers"] = std::move(marker_array);
  doc["node"] = nodeToJson(root, levels, 0);
  return doc.dump(2) + "\n";
}

TreeDocument parseTree(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw Error(std::string("tree document: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error("tree document: root must be an object");
  }

  TreeDocument tree;
  const Json& meta = field(doc, "meta", "document");
  tree.meta.tool_version = field(meta, "tool_version", "meta").get<std::string>();
  tree.meta.config = configFromJson(field(meta, "config", "meta"));
  tree.meta.input_digest = field(meta, "input_digest", "meta").get<std::string>();
  tree.meta.generator = field(meta, "generator", "meta").get<std::string>();

  const Json& markers = field(doc, "markers", "document");
  if (!markers.is_array()) {
    throw Error("tree document: markers must be an array");
  }
  for (const Json& m : markers) {
    const auto kind = markerKindFromName(field(m, "kind", "marker").get<std::string>());
    if (!kind.has_value()) {
      throw Error("tree document: unknown marker kind");
    }
    tree.markers.push_back({*kind, field(m, "label", "marker").get<std::string>(),
                            field(m, "position", "marker").get<std::size_t>()});
  }

  tree.root = nodeFromJson(field(doc, "node", "document"), tree.meta.config.seed,
                           tree.meta.config.shuffle_replicates);
  checkTree(tree.root);
  return tree;
}

std::string emitProfileCsv(const SplitProfile& profile, const BaselineStats& baseline) {
  if (profile.values.empty()) {
    throw Error("empty split profile");
  }
  std::vector<ProfileCsvRow> rows;
  rows.reserve(profile.values.size());
  for (std::size_t i = 0; i < profile.values.size(); ++i) {
    rows.push_back({i + 1, profile.values[i], baseline.mean, baseline.mean + baseline.sigma,
                    baseline.mean - baseline.sigma});
  }
  return emitProfileCsv(rows);
}

std::string emitProfileCsv(std::span<const ProfileCsvRow> rows) {
  std::string out = "n,d,mean,mean_plus_sigma,mean_minus_sigma\n";
  for (const ProfileCsvRow& row : rows) {
    out += std::to_string(row.n);
    out += ',';
    out += formatDouble(row.d);
    out += ',';
    out += formatDouble(row.mean);
    out += ',';
    out += formatDouble(row.mean_plus_sigma);
    out += ',';
    out += formatDouble(row.mean_minus_sigma);
    out += '\n';
  }
  return out;
}

std::vector<ProfileCsvRow> parseProfileCsv(std::string_view csv_text) {
  std::vector<ProfileCsvRow> rows;
  std::size_t pos = 0;
  std::size_t line_number = 0;
  bool saw_header = false;
  while (pos < csv_text.size()) {
    const std::size_t eol = csv_text.find('\n', pos);
    std::string_view line = csv_text.substr(
        pos, eol == std::string_view::npos ? csv_text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? csv_text.size() : eol + 1;
    ++line_number;
    if (line.empty()) {
      continue;
    }
    if (!saw_header) {
      if (line != "n,d,mean,mean_plus_sigma,mean_minus_sigma") {
        throw Error("profile CSV: unexpected header");
      }
      saw_header = true;
      continue;
    }
    std::vector<std::string_view> fields;
    std::size_t field_pos = 0;
    for (;;) {
      const std::size_t comma = line.find(',', field_pos);
      if (comma == std::string_view::npos) {
        fields.push_back(line.substr(field_pos));
        break;
      }
      fields.push_back(line.substr(field_pos, comma - field_pos));
      field_pos = comma + 1;
    }
    if (fields.size() != 5) {
      throw Error("profile CSV: row on line " + std::to_string(line_number) +
                  " must have five fields");
    }
    ProfileCsvRow row;
    row.n = static_cast<std::size_t>(parseDouble(fields[0], line_number));
    row.d = parseDouble(fields[1], line_number);
    row.mean = parseDouble(fields[2], line_number);
    row.mean_plus_sigma = parseDouble(fields[3], line_number);
    row.mean_minus_sigma = parseDouble(fields[4], line_number);
    rows.push_back(row);
  }
  if (!saw_header) {
    throw Error("profile CSV: missing header");
  }
  return rows;
}

std::string emitBaseline(const BaselineStats& baseline) {
  Json j;
  j["mean"] = baseline.mean;
  j["sigma"] = baseline.sigma;
  j["replicates"] = baseline.replicates;
  j["seed"] = baseline.seed;
  return j.dump(2) + "\n";
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string sequenceDigest(const WeightedSequence& seq, std::span<const Marker> markers) {
  const std::string content = emitCountsText(seq) + emitMarkersText(markers);
  const std::uint64_t hash = fnv1a64(content);
  char buffer[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 0; i < 16; ++i) {
    buffer[i] = digits[(hash >> (60 - 4 * i)) & 0xF];
  }
  buffer[16] = '\0';
  return std::string("fnv1a64:") + buffer;
}

}  // namespace jsseg
