// Standard MIDI File parsing and per-bar pitch-class binning.

#pragma once

#include <array>
#include <optional>
#include <set>

#include "jsseg/core.h"

namespace jsseg {

/// Note onset. Note-offs, velocities, and durations are not kept; bars count
/// occurrences only.
struct NoteEvent {
  std::int64_t tick = 0;
  int pitch = 0;    // 0..127
  int channel = 0;  // 0..15
  int track = 0;

  bool operator==(const NoteEvent&) const = default;
};

struct TimeSignature {
  std::int64_t tick = 0;
  int numerator = 4;
  int denominator_pow2 = 2;  // denominator = 2^denominator_pow2

  bool operator==(const TimeSignature&) const = default;
};

/// Metric grid: PPQ resolution plus the time-signature timeline. Bars are
/// metric units; tempo plays no role.
struct TimeGrid {
  int ticks_per_quarter = 480;
  std::vector<TimeSignature> signatures;  // strictly increasing ticks, first at 0

  /// Bar length in ticks under `sig`: numerator * tpq * 4 / 2^pow. Throws if
  /// that is not an integer.
  std::int64_t barLengthTicks(const TimeSignature& sig) const;
};

struct SmfData {
  std::vector<NoteEvent> events;  // merged across tracks, ordered by tick
  TimeGrid grid;
};

/// Parses SMF formats 0 and 1 with PPQ timing. Note-ons with velocity > 0
/// become events; running status is honored; unknown chunk types are
/// skipped. SMPTE division and truncated chunks are errors.
SmfData parseSmf(std::span<const std::uint8_t> bytes);

inline constexpr std::array<const char*, 12> kPitchClassNames = {
    "C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"};

/// The fixed 12-symbol pitch-class alphabet (index = pitch mod 12).
Alphabet pitchClassAlphabet();

struct BinOptions {
  /// Channels to keep. Unset: all channels except 10 (index 9, percussion),
  /// or all 16 when include_percussion is set.
  std::optional<std::set<int>> channel_filter;
  bool include_percussion = false;
  /// Added to the 1-based bar numbers used as position labels, for matching
  /// score editions with pickup bars.
  int bar_offset = 0;
};

/// Bins note onsets into per-bar pitch-class counts. The sequence spans bar 0
/// through the bar containing the last onset; bars without onsets are
/// all-zero positions.
WeightedSequence binToBars(const std::vector<NoteEvent>& events, const TimeGrid& grid,
                           const BinOptions& options = {});

}  // namespace jsseg
