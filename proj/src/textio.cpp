#include "jsseg/textio.h"

#include <charconv>
#include <fstream>
#include <sstream>

namespace jsseg {
namespace {

std::string_view trimRight(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

std::string_view trim(std::string_view s) {
  s = trimRight(s);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  return s;
}

std::vector<std::string_view> splitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, eol - pos));
    pos = eol + 1;
  }
  return lines;
}

std::vector<std::string_view> splitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

std::int64_t parseInt(std::string_view field, std::size_t line_number) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error("malformed integer \"" + std::string(field) + "\" on line " +
                std::to_string(line_number));
  }
  return value;
}

}  // namespace

std::vector<std::string> parseTokensText(std::string_view text) {
  std::vector<std::string> tokens;
  for (std::string_view line : splitLines(text)) {
    const std::string_view token = trim(line);
    if (token.empty() || token.front() == '#') {
      continue;
    }
    tokens.emplace_back(token);
  }
  return tokens;
}

std::string emitTokensText(const WeightedSequence& seq) {
  std::string out;
  for (std::size_t p = 0; p < seq.size(); ++p) {
    const auto entries = seq.entries(p);
    if (entries.size() != 1 || entries[0].count != 1) {
      throw Error("sequence is not one-hot; emit counts instead");
    }
    out += seq.alphabet().label(entries[0].symbol);
    out += '\n';
  }
  return out;
}

WeightedSequence parseCountsText(std::string_view text) {
  const std::vector<std::string_view> lines = splitLines(text);
  std::size_t row = 0;
  while (row < lines.size() && trim(lines[row]).empty()) {
    ++row;
  }
  if (row == lines.size()) {
    throw Error("empty counts table");
  }

  std::vector<std::string> labels;
  for (std::string_view field : splitTabs(trimRight(lines[row]))) {
    labels.emplace_back(field);
  }
  Alphabet alphabet(std::move(labels));
  ++row;

  std::vector<CountVector> positions;
  for (; row < lines.size(); ++row) {
    const std::string_view line = trimRight(lines[row]);
    if (trim(line).empty()) {
      continue;
    }
    const std::vector<std::string_view> fields = splitTabs(line);
    if (fields.size() != alphabet.size()) {
      throw Error("row on line " + std::to_string(row + 1) + " has " +
                  std::to_string(fields.size()) + " fields, expected " +
                  std::to_string(alphabet.size()));
    }
    CountVector counts;
    counts.reserve(fields.size());
    for (std::string_view field : fields) {
      counts.push_back(parseInt(field, row + 1));
    }
    positions.push_back(std::move(counts));
  }
  return WeightedSequence(std::move(alphabet), positions);
}

std::string emitCountsText(const WeightedSequence& seq) {
  std::string out;
  const Alphabet& alphabet = seq.alphabet();
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (i > 0) {
      out += '\t';
    }
    out += alphabet.label(i);
  }
  out += '\n';
  for (std::size_t p = 0; p < seq.size(); ++p) {
    const CountVector counts = seq.positionCounts(p);
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (i > 0) {
        out += '\t';
      }
      out += std::to_string(counts[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<Marker> parseMarkersText(std::string_view text) {
  std::vector<Marker> markers;
  const std::vector<std::string_view> lines = splitLines(text);
  for (std::size_t row = 0; row < lines.size(); ++row) {
    const std::string_view line = trimRight(lines[row]);
    if (trim(line).empty() || trim(line).front() == '#') {
      continue;
    }
    const std::vector<std::string_view> fields = splitTabs(line);
    if (fields.size() != 3) {
      throw Error("marker row on line " + std::to_string(row + 1) +
                  " must have kind, label, position");
    }
    const auto kind = markerKindFromName(fields[0]);
    if (!kind.has_value()) {
      throw Error("unknown marker kind \"" + std::string(fields[0]) + "\" on line " +
                  std::to_string(row + 1));
    }
    const std::int64_t position = parseInt(fields[2], row + 1);
    if (position < 0) {
      throw Error("negative marker position on line " + std::to_string(row + 1));
    }
    markers.push_back({*kind, std::string(fields[1]), static_cast<std::size_t>(position)});
  }
  return markers;
}

std::string emitMarkersText(std::span<const Marker> markers) {
  std::string out;
  for (const Marker& marker : markers) {
    out += markerKindName(marker.kind);
    out += '\t';
    out += marker.label;
    out += '\t';
    out += std::to_string(marker.position);
    out += '\n';
  }
  return out;
}

std::string readFileText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot read file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

std::vector<std::uint8_t> readFileBytes(const std::string& path) {
  const std::string text = readFileText(path);
  return std::vector<std::uint8_t>(text.begin(), text.end());
}

void writeFileText(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write file: " + path);
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw Error("failed writing file: " + path);
  }
}

}  // namespace jsseg
