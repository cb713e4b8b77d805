#include "jsseg/midi.h"

#include <algorithm>

namespace jsseg {
namespace {

constexpr int kPercussionChannel = 9;  // MIDI channel 10

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const { return offset_; }
  std::size_t remaining() const { return bytes_.size() - offset_; }

  std::uint8_t u8(const char* what) {
    require(1, what);
    return bytes_[offset_++];
  }

  std::uint16_t u16(const char* what) {
    require(2, what);
    const std::uint16_t v = (static_cast<std::uint16_t>(bytes_[offset_]) << 8) |
                            bytes_[offset_ + 1];
    offset_ += 2;
    return v;
  }

  std::uint32_t u32(const char* what) {
    require(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v = (v << 8) | bytes_[offset_ + static_cast<std::size_t>(i)];
    }
    offset_ += 4;
    return v;
  }

  /// Variable-length quantity, at most four bytes.
  std::uint32_t vlq(const char* what) {
    std::uint32_t value = 0;
    for (int i = 0; i < 4; ++i) {
      const std::uint8_t b = u8(what);
      value = (value << 7) | (b & 0x7F);
      if ((b & 0x80) == 0) {
        return value;
      }
    }
    throw Error("variable-length quantity longer than four bytes at byte " +
                std::to_string(offset_));
  }

  void skip(std::size_t n, const char* what) {
    require(n, what);
    offset_ += n;
  }

  void require(std::size_t n, const char* what) const {
    if (remaining() < n) {
      throw Error(std::string("truncated ") + what + " at byte " + std::to_string(offset_));
    }
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t offset_ = 0;
};

int dataByteCount(std::uint8_t status) {
  switch (status >> 4) {
    case 0xC:  // program change
    case 0xD:  // channel pressure
      return 1;
    default:
      return 2;
  }
}

void parseTrack(ByteReader& reader, std::uint32_t track_length, int track_index,
                std::vector<NoteEvent>& events, std::vector<TimeSignature>& signatures) {
  const std::size_t track_end = reader.offset() + track_length;
  std::int64_t tick = 0;
  std::uint8_t running_status = 0;

  while (reader.offset() < track_end) {
    tick += reader.vlq("track event");
    std::uint8_t status = reader.u8("track event");

    if (status == 0xFF) {  // meta
      const std::uint8_t type = reader.u8("meta event");
      const std::uint32_t length = reader.vlq("meta event");
      reader.require(length, "meta event");
      if (type == 0x58 && length >= 2) {
        const std::uint8_t numerator = reader.u8("time signature");
        const std::uint8_t pow2 = reader.u8("time signature");
        reader.skip(length - 2, "time signature");
        if (numerator >= 1) {
          signatures.push_back({tick, numerator, pow2});
        }
      } else {
        reader.skip(length, "meta event");
      }
      running_status = 0;
      continue;
    }
    if (status == 0xF0 || status == 0xF7) {  // sysex
      const std::uint32_t length = reader.vlq("sysex event");
      reader.skip(length, "sysex event");
      running_status = 0;
      continue;
    }
    if (status >= 0xF1) {
      throw Error("unsupported status byte in track at byte " +
                  std::to_string(reader.offset() - 1));
    }

    std::uint8_t data0;
    if (status & 0x80) {
      running_status = status;
      data0 = reader.u8("channel event");
    } else {
      // Running status: the byte read was already the first data byte.
      if (running_status == 0) {
        throw Error("running status without a prior status byte at byte " +
                    std::to_string(reader.offset() - 1));
      }
      data0 = status;
      status = running_status;
    }

    if (dataByteCount(status) == 2) {
      const std::uint8_t data1 = reader.u8("channel event");
      if ((status >> 4) == 0x9 && data1 > 0) {  // note-on with velocity
        events.push_back({tick, data0 & 0x7F, status & 0x0F, track_index});
      }
    }
  }

  if (reader.offset() != track_end) {
    throw Error("track events overran the chunk at byte " + std::to_string(reader.offset()));
  }
}

}  // namespace

std::int64_t TimeGrid::barLengthTicks(const TimeSignature& sig) const {
  const std::int64_t numerator_ticks =
      static_cast<std::int64_t>(sig.numerator) * ticks_per_quarter * 4;
  const std::int64_t denominator = std::int64_t{1} << sig.denominator_pow2;
  if (numerator_ticks % denominator != 0) {
    throw Error("unrepresentable bar length");
  }
  const std::int64_t length = numerator_ticks / denominator;
  if (length <= 0) {
    throw Error("unrepresentable bar length");
  }
  return length;
}

SmfData parseSmf(std::span<const std::uint8_t> bytes) {
  ByteReader reader(bytes);

  if (reader.u32("header chunk") != 0x4D546864) {  // 'MThd'
    throw Error("not a standard MIDI file (missing MThd)");
  }
  const std::uint32_t header_length = reader.u32("header chunk");
  if (header_length < 6) {
    throw Error("malformed MThd chunk");
  }
  const std::uint16_t format = reader.u16("header chunk");
  const std::uint16_t declared_tracks = reader.u16("header chunk");
  const std::uint16_t division = reader.u16("header chunk");
  reader.skip(header_length - 6, "header chunk");

  if (format > 1) {
    throw Error("unsupported SMF format " + std::to_string(format));
  }
  if (division & 0x8000) {
    throw Error("SMPTE timing unsupported");
  }
  if (division == 0) {
    throw Error("zero ticks-per-quarter division");
  }

  SmfData smf;
  smf.grid.ticks_per_quarter = division;
  std::vector<TimeSignature> signatures;

  int tracks_parsed = 0;
  while (tracks_parsed < declared_tracks && reader.remaining() > 0) {
    const std::uint32_t chunk_id = reader.u32("chunk header");
    const std::uint32_t chunk_length = reader.u32("chunk header");
    if (chunk_id != 0x4D54726B) {  // 'MTrk'
      reader.skip(chunk_length, "chunk");
      continue;
    }
    reader.require(chunk_length, "track chunk");
    parseTrack(reader, chunk_length, tracks_parsed, smf.events, signatures);
    ++tracks_parsed;
  }
  if (tracks_parsed < declared_tracks) {
    throw Error("truncated file: expected " + std::to_string(declared_tracks) +
                " tracks, found " + std::to_string(tracks_parsed));
  }

  // Merge order is already track-major; stable sort keeps it on tied ticks.
  std::stable_sort(smf.events.begin(), smf.events.end(),
                   [](const NoteEvent& a, const NoteEvent& b) { return a.tick < b.tick; });

  std::stable_sort(signatures.begin(), signatures.end(),
                   [](const TimeSignature& a, const TimeSignature& b) {
                     return a.tick < b.tick;
                   });
  // Keep the last signature declared at any tick; guarantee an entry at 0.
  for (const TimeSignature& sig : signatures) {
    if (!smf.grid.signatures.empty() && smf.grid.signatures.back().tick == sig.tick) {
      smf.grid.signatures.back() = sig;
    } else {
      smf.grid.signatures.push_back(sig);
    }
  }
  if (smf.grid.signatures.empty() || smf.grid.signatures.front().tick != 0) {
    smf.grid.signatures.insert(smf.grid.signatures.begin(), TimeSignature{0, 4, 2});
  }
  return smf;
}

Alphabet pitchClassAlphabet() {
  std::vector<std::string> labels(kPitchClassNames.begin(), kPitchClassNames.end());
  return Alphabet(std::move(labels));
}

WeightedSequence binToBars(const std::vector<NoteEvent>& events, const TimeGrid& grid,
                           const BinOptions& options) {
  if (grid.ticks_per_quarter <= 0) {
    throw Error("ticks per quarter must be positive");
  }
  if (grid.signatures.empty() || grid.signatures.front().tick != 0) {
    throw Error("time grid must start with a signature at tick 0");
  }

  auto keep = [&](const NoteEvent& e) {
    if (options.channel_filter.has_value()) {
      return options.channel_filter->contains(e.channel);
    }
    return options.include_percussion || e.channel != kPercussionChannel;
  };

  // Bar segments: [start tick, first bar index, bar length].
  struct BarSegment {
    std::int64_t start_tick;
    std::int64_t first_bar;
    std::int64_t bar_length;
  };
  std::vector<BarSegment> segments;
  std::int64_t bar_base = 0;
  for (std::size_t i = 0; i < grid.signatures.size(); ++i) {
    const TimeSignature& sig = grid.signatures[i];
    const std::int64_t bar_length = grid.barLengthTicks(sig);
    segments.push_back({sig.tick, bar_base, bar_length});
    if (i + 1 < grid.signatures.size()) {
      const std::int64_t segment_ticks = grid.signatures[i + 1].tick - sig.tick;
      if (segment_ticks <= 0) {
        throw Error("time signatures out of order");
      }
      // A signature change mid-bar closes the bar early.
      bar_base += (segment_ticks + bar_length - 1) / bar_length;
    }
  }

  auto barIndex = [&](std::int64_t tick) {
    std::size_t seg = segments.size() - 1;
    while (segments[seg].start_tick > tick) {
      --seg;
    }
    return segments[seg].first_bar + (tick - segments[seg].start_tick) / segments[seg].bar_length;
  };

  std::int64_t last_bar = -1;
  std::vector<std::pair<std::int64_t, int>> onsets;  // (bar, pitch class)
  for (const NoteEvent& e : events) {
    if (!keep(e)) {
      continue;
    }
    if (e.tick < 0 || e.pitch < 0 || e.pitch > 127) {
      throw Error("note event out of range");
    }
    const std::int64_t bar = barIndex(e.tick);
    onsets.emplace_back(bar, e.pitch % 12);
    last_bar = std::max(last_bar, bar);
  }
  if (onsets.empty()) {
    throw Error("no note events after channel filtering");
  }

  const std::size_t bar_count = static_cast<std::size_t>(last_bar + 1);
  std::vector<CountVector> positions(bar_count, CountVector(12, 0));
  for (const auto& [bar, pitch_class] : onsets) {
    ++positions[static_cast<std::size_t>(bar)][static_cast<std::size_t>(pitch_class)];
  }

  std::vector<std::string> labels;
  labels.reserve(bar_count);
  for (std::size_t i = 0; i < bar_count; ++i) {
    labels.push_back(std::to_string(static_cast<std::int64_t>(i) + 1 + options.bar_offset));
  }
  return WeightedSequence(pitchClassAlphabet(), positions, std::move(labels));
}

}  // namespace jsseg
