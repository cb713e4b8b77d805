// Core domain types: alphabets, count-vector sequences, and spans.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace jsseg {

/// Error raised for invalid inputs and contract violations. The message is
/// what the CLI prints on the error stream.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};

/// Ordered set of k distinct, nonempty symbol labels with index lookup.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t index) const { return labels_[index]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Returns the index of `label`, or size() if the label is unknown.
  std::size_t indexOf(std::string_view label) const;
  bool contains(std::string_view label) const { return indexOf(label) < size(); }

  bool operator==(const Alphabet& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> index_;
};

/// Per-position occurrence counts over an alphabet. Counts are exact
/// integers; frequencies are formed only at divergence time.
using CountVector = std::vector<std::int64_t>;

/// Half-open position range [start, end).
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  bool operator==(const Span&) const = default;
};

/// Ordered positions, each holding a nonnegative count vector over the
/// alphabet. Immutable after construction. Positions are stored sparsely so
/// one-hot sequences of a few million positions stay compact.
class WeightedSequence {
 public:
  struct Entry {
    std::uint32_t symbol;
    std::int64_t count;
    bool operator==(const Entry&) const = default;
  };

  /// Builds from dense per-position count vectors. Every vector must have
  /// alphabet-size entries, all nonnegative; at least one position and one
  /// occurrence overall are required.
  WeightedSequence(Alphabet alphabet, const std::vector<CountVector>& positions,
                   std::vector<std::string> position_labels = {});

  /// Builds a one-hot sequence directly from symbol indices.
  static WeightedSequence fromSymbolIndices(Alphabet alphabet,
                                            const std::vector<std::uint32_t>& symbols,
                                            std::vector<std::string> position_labels = {});

  std::size_t size() const { return offsets_.size() - 1; }  // N
  std::size_t alphabetSize() const { return alphabet_.size(); }
  const Alphabet& alphabet() const { return alphabet_; }
  std::int64_t totalMass() const { return prefix_mass_.back(); }
  Span fullSpan() const { return Span{0, size()}; }

  /// Nonzero counts of one position.
  std::span<const Entry> entries(std::size_t position) const {
    return {entries_.data() + offsets_[position],
            offsets_[position + 1] - offsets_[position]};
  }

  /// Dense copy of one position's counts.
  CountVector positionCounts(std::size_t position) const;

  std::int64_t positionMass(std::size_t position) const {
    return prefix_mass_[position + 1] - prefix_mass_[position];
  }

  /// Componentwise sum of counts over `span`.
  CountVector tally(Span span) const;

  /// Total count mass inside `span`.
  std::int64_t mass(Span span) const {
    checkSpan(span);
    return prefix_mass_[span.end] - prefix_mass_[span.start];
  }

  /// Optional 1-based display labels (line numbers, bar numbers). Empty when
  /// the producer did not assign any. Not part of value identity.
  const std::vector<std::string>& positionLabels() const { return position_labels_; }

  /// Throws Error unless 0 <= start < end <= size().
  void checkSpan(Span span) const;

  /// Content equality: alphabet plus per-position counts. Display labels are
  /// ignored.
  bool operator==(const WeightedSequence& other) const {
    return alphabet_ == other.alphabet_ && offsets_ == other.offsets_ &&
           entries_ == other.entries_;
  }

 private:
  explicit WeightedSequence(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
  void finalize(std::vector<std::string> position_labels);

  Alphabet alphabet_;
  std::vector<std::size_t> offsets_;   // size N+1; entry range per position
  std::vector<Entry> entries_;         // nonzero counts, position-major
  std::vector<std::int64_t> prefix_mass_;  // size N+1
  std::vector<std::string> position_labels_;
};

/// Distinct tokens in order of first appearance.
Alphabet buildAlphabet(const std::vector<std::string>& tokens);

/// One occurrence of the matching symbol per token. Unknown tokens are an
/// error naming the token and its 1-based position.
WeightedSequence oneHot(const std::vector<std::string>& tokens, const Alphabet& alphabet,
                        std::vector<std::string> position_labels = {});

}  // namespace jsseg
