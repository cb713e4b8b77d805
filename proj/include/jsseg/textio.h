// File formats: token lists, count tables, marker sidecars.
//
//   tokens  — UTF-8 text, one symbol per line; blank lines and lines starting
//             with '#' are ignored.
//   counts  — UTF-8 TSV; first row holds the symbol labels, each further row
//             one position's integer counts.
//   markers — UTF-8 TSV sidecar; rows of kind<TAB>label<TAB>position.

#pragma once

#include "jsseg/core.h"
#include "jsseg/play.h"

namespace jsseg {

std::vector<std::string> parseTokensText(std::string_view text);
std::string emitTokensText(const WeightedSequence& seq);

WeightedSequence parseCountsText(std::string_view text);
std::string emitCountsText(const WeightedSequence& seq);

std::vector<Marker> parseMarkersText(std::string_view text);
std::string emitMarkersText(std::span<const Marker> markers);

std::string readFileText(const std::string& path);
std::vector<std::uint8_t> readFileBytes(const std::string& path);
void writeFileText(const std::string& path, std::string_view content);

}  // namespace jsseg
