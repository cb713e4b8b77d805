#include "jsseg/play.h"

namespace jsseg {
namespace {

bool isRomanNumeral(std::string_view s) {
  if (s.empty()) {
    return false;
  }
  for (char c : s) {
    if (std::string_view("IVXLCDM").find(c) == std::string_view::npos) {
      return false;
    }
  }
  return true;
}

std::string_view trimRight(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

std::string_view firstWord(std::string_view s) {
  const std::size_t space = s.find(' ');
  return space == std::string_view::npos ? s : s.substr(0, space);
}

// `ACT I` / `SCENE II. A street.` -> marker label, or nullopt.
std::optional<std::string> matchMarker(std::string_view line, std::string_view keyword) {
  if (!line.starts_with(keyword)) {
    return std::nullopt;
  }
  std::string_view rest = line.substr(keyword.size());
  if (rest.empty() || rest.front() != ' ') {
    return std::nullopt;
  }
  while (!rest.empty() && rest.front() == ' ') {
    rest.remove_prefix(1);
  }
  std::string_view numeral = firstWord(rest);
  const bool terminated = numeral.ends_with('.');
  if (terminated) {
    numeral.remove_suffix(1);
  }
  if (!isRomanNumeral(numeral)) {
    return std::nullopt;
  }
  // After the numeral: nothing, or a period-introduced description.
  std::string_view tail = rest.substr(numeral.size() + (terminated ? 1 : 0));
  if (!tail.empty() && !terminated) {
    return std::nullopt;
  }
  return std::string(numeral);
}

// All-caps letters, spaces, and apostrophes terminated by a period.
bool isSpeakerHeading(std::string_view line) {
  if (line.size() < 2 || line.back() != '.') {
    return false;
  }
  std::string_view name = line.substr(0, line.size() - 1);
  bool has_letter = false;
  for (char c : name) {
    if (c >= 'A' && c <= 'Z') {
      has_letter = true;
    } else if (c != ' ' && c != '\'') {
      return false;
    }
  }
  return has_letter && name.front() != ' ';
}

// Collapses inner whitespace runs to single spaces.
std::string normalizeSpeaker(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  bool pending_space = false;
  for (char c : name) {
    if (c == ' ') {
      pending_space = !out.empty();
    } else {
      if (pending_space) {
        out.push_back(' ');
        pending_space = false;
      }
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

const char* markerKindName(MarkerKind kind) {
  return kind == MarkerKind::kAct ? "act" : "scene";
}

std::optional<MarkerKind> markerKindFromName(std::string_view name) {
  if (name == "act") {
    return MarkerKind::kAct;
  }
  if (name == "scene") {
    return MarkerKind::kScene;
  }
  return std::nullopt;
}

PlayScript parsePlay(std::string_view text) {
  PlayScript script;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    line = trimRight(line);

    if (line.empty()) {
      continue;
    }
    std::string_view stripped = line;
    while (!stripped.empty() && (stripped.front() == ' ' || stripped.front() == '\t')) {
      stripped.remove_prefix(1);
    }
    if (stripped.empty() || stripped.front() == '[') {
      continue;  // stage direction
    }

    if (auto label = matchMarker(line, "ACT")) {
      script.markers.push_back({MarkerKind::kAct, *label, script.speeches.size()});
      continue;
    }
    if (auto label = matchMarker(line, "SCENE")) {
      script.markers.push_back({MarkerKind::kScene, *label, script.speeches.size()});
      continue;
    }
    if (isSpeakerHeading(line)) {
      Speech speech;
      speech.speaker = normalizeSpeaker(line.substr(0, line.size() - 1));
      script.speeches.push_back(std::move(speech));
      continue;
    }

    if (!script.speeches.empty()) {
      Speech& current = script.speeches.back();
      if (!current.text.empty()) {
        current.text.push_back('\n');
      }
      current.text.append(line);
    }
    // Text before the first heading is preamble and is dropped.
  }

  if (script.speeches.empty()) {
    throw Error("no speeches found");
  }
  return script;
}

PlaySequence playToSequence(const PlayScript& script) {
  if (script.speeches.empty()) {
    throw Error("no speeches found");
  }
  std::vector<std::string> tokens;
  tokens.reserve(script.speeches.size());
  for (const Speech& speech : script.speeches) {
    tokens.push_back(speech.speaker);
  }
  std::vector<std::string> labels;
  labels.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    labels.push_back(std::to_string(i + 1));
  }
  const Alphabet alphabet = buildAlphabet(tokens);
  return PlaySequence{oneHot(tokens, alphabet, std::move(labels)), script.markers};
}

}  // namespace jsseg
