// Play-script parsing: speaker-tagged speeches plus act/scene markers.

#pragma once

#include <optional>

#include "jsseg/core.h"

namespace jsseg {

enum class MarkerKind { kAct, kScene };

const char* markerKindName(MarkerKind kind);
std::optional<MarkerKind> markerKindFromName(std::string_view name);

/// Act or scene heading, anchored to the first speech at or after it.
struct Marker {
  MarkerKind kind = MarkerKind::kAct;
  std::string label;       // numeral as written in the heading
  std::size_t position = 0;

  bool operator==(const Marker&) const = default;
};

struct Speech {
  std::string speaker;
  std::string text;

  bool operator==(const Speech&) const = default;
};

struct PlayScript {
  std::vector<Speech> speeches;
  std::vector<Marker> markers;
};

/// Parses a regularized play text. A speech starts at a heading line: an
/// all-caps run of letters, spaces, and apostrophes terminated by a period at
/// line start (e.g. `IAGO.`). `ACT <roman>` and `SCENE <roman>[. description]`
/// lines emit markers. Bracketed stage directions and blank lines are
/// skipped; anything else is speech text. Lines that almost look like
/// headings are treated as text, never as errors.
PlayScript parsePlay(std::string_view text);

struct PlaySequence {
  WeightedSequence sequence;
  std::vector<Marker> markers;
};

/// One symbol per distinct speaker (first-appearance order), one one-hot
/// position per speech, 1-based speech numbers as position labels.
PlaySequence playToSequence(const PlayScript& script);

}  // namespace jsseg
