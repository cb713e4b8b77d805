#include "jsseg/core.h"

#include <algorithm>
#include <utility>

namespace jsseg {

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) {
    throw Error("alphabet must contain at least one symbol");
  }
  index_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) {
      throw Error("alphabet labels must be nonempty");
    }
    auto [it, inserted] = index_.emplace(labels_[i], i);
    if (!inserted) {
      throw Error("duplicate alphabet label \"" + labels_[i] + "\"");
    }
  }
}

std::size_t Alphabet::indexOf(std::string_view label) const {
  auto it = index_.find(label);
  return it == index_.end() ? labels_.size() : it->second;
}

WeightedSequence::WeightedSequence(Alphabet alphabet,
                                   const std::vector<CountVector>& positions,
                                   std::vector<std::string> position_labels)
    : alphabet_(std::move(alphabet)) {
  const std::size_t k = alphabet_.size();
  offsets_.reserve(positions.size() + 1);
  offsets_.push_back(0);
  for (std::size_t p = 0; p < positions.size(); ++p) {
    const CountVector& counts = positions[p];
    if (counts.size() != k) {
      throw Error("count vector at position " + std::to_string(p + 1) + " has " +
                  std::to_string(counts.size()) + " entries, expected " + std::to_string(k));
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (counts[i] < 0) {
        throw Error("negative count at position " + std::to_string(p + 1));
      }
      if (counts[i] > 0) {
        entries_.push_back({static_cast<std::uint32_t>(i), counts[i]});
      }
    }
    offsets_.push_back(entries_.size());
  }
  finalize(std::move(position_labels));
}

WeightedSequence WeightedSequence::fromSymbolIndices(
    Alphabet alphabet, const std::vector<std::uint32_t>& symbols,
    std::vector<std::string> position_labels) {
  WeightedSequence seq(std::move(alphabet));
  const std::size_t k = seq.alphabet_.size();
  seq.offsets_.reserve(symbols.size() + 1);
  seq.entries_.reserve(symbols.size());
  seq.offsets_.push_back(0);
  for (std::size_t p = 0; p < symbols.size(); ++p) {
    if (symbols[p] >= k) {
      throw Error("symbol index out of range at position " + std::to_string(p + 1));
    }
    seq.entries_.push_back({symbols[p], 1});
    seq.offsets_.push_back(seq.entries_.size());
  }
  seq.finalize(std::move(position_labels));
  return seq;
}

void WeightedSequence::finalize(std::vector<std::string> position_labels) {
  if (offsets_.size() < 2) {
    throw Error("empty sequence");
  }
  prefix_mass_.reserve(offsets_.size());
  prefix_mass_.push_back(0);
  std::int64_t running = 0;
  for (std::size_t p = 0; p + 1 < offsets_.size(); ++p) {
    for (std::size_t e = offsets_[p]; e < offsets_[p + 1]; ++e) {
      running += entries_[e].count;
    }
    prefix_mass_.push_back(running);
  }
  if (running < 1) {
    throw Error("sequence has zero total mass");
  }
  if (!position_labels.empty() && position_labels.size() != size()) {
    throw Error("position label count does not match sequence length");
  }
  position_labels_ = std::move(position_labels);
}

CountVector WeightedSequence::positionCounts(std::size_t position) const {
  CountVector counts(alphabet_.size(), 0);
  for (const Entry& e : entries(position)) {
    counts[e.symbol] = e.count;
  }
  return counts;
}

CountVector WeightedSequence::tally(Span span) const {
  checkSpan(span);
  CountVector counts(alphabet_.size(), 0);
  for (std::size_t e = offsets_[span.start]; e < offsets_[span.end]; ++e) {
    counts[entries_[e].symbol] += entries_[e].count;
  }
  return counts;
}

void WeightedSequence::checkSpan(Span span) const {
  if (span.start >= span.end || span.end > size()) {
    throw Error("invalid span [" + std::to_string(span.start) + ", " +
                std::to_string(span.end) + ") for sequence of length " +
                std::to_string(size()));
  }
}

Alphabet buildAlphabet(const std::vector<std::string>& tokens) {
  if (tokens.empty()) {
    throw Error("empty sequence");
  }
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> seen;
  for (const std::string& token : tokens) {
    if (token.empty()) {
      throw Error("alphabet labels must be nonempty");
    }
    if (seen.emplace(token, labels.size()).second) {
      labels.push_back(token);
    }
  }
  return Alphabet(std::move(labels));
}

WeightedSequence oneHot(const std::vector<std::string>& tokens, const Alphabet& alphabet,
                        std::vector<std::string> position_labels) {
  if (tokens.empty()) {
    throw Error("empty sequence");
  }
  std::vector<std::uint32_t> symbols;
  symbols.reserve(tokens.size());
  for (std::size_t p = 0; p < tokens.size(); ++p) {
    const std::size_t index = alphabet.indexOf(tokens[p]);
    if (index >= alphabet.size()) {
      throw Error("unknown token \"" + tokens[p] + "\" at position " + std::to_string(p + 1));
    }
    symbols.push_back(static_cast<std::uint32_t>(index));
  }
  return WeightedSequence::fromSymbolIndices(alphabet, symbols, std::move(position_labels));
}

}  // namespace jsseg
