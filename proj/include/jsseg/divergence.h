// Shannon entropy, weighted Jensen-Shannon divergence, and split-divergence
// profiles over spans of a weighted sequence.

#pragma once

#include <optional>

#include "jsseg/core.h"

namespace jsseg {

/// Tolerance for probability normalization checks.
inline constexpr double kProbabilitySumTolerance = 1e-9;

/// Probability distribution over alphabet indices, normalized to unity.
struct Distribution {
  std::vector<double> probs;

  /// counts / mass, componentwise. mass must be positive and cover the counts.
  static Distribution fromCounts(const CountVector& counts, std::int64_t mass);

  /// Throws Error unless entries are nonnegative and sum to 1 within
  /// kProbabilitySumTolerance.
  void validate() const;
};

/// Weighting of the two subsequences in the split divergence.
///   kPositions: weight = position count of the side / span length.
///   kMass:      weight = count mass of the side / span mass.
/// The two agree on one-hot sequences; they differ when positions carry more
/// than one occurrence (multi-note bars).
enum class WeightMode { kPositions, kMass };

const char* weightModeName(WeightMode mode);
std::optional<WeightMode> weightModeFromName(std::string_view name);

/// Divergence value for every interior split of a span. values[i] holds the
/// divergence when the left side contains i+1 positions.
struct SplitProfile {
  Span span;
  WeightMode weight_mode = WeightMode::kPositions;
  std::vector<double> values;

  /// Number of interior splits (span length - 1).
  std::size_t splitCount() const { return values.size(); }
};

/// Shannon entropy in bits, with the 0 * log2(0) = 0 convention.
double shannonEntropyBits(const Distribution& p);

/// Jensen-Shannon divergence in bits between p and q with weight weight_p on
/// p and 1 - weight_p on q. Nonnegative; zero iff p == q (for an interior
/// weight); bounded by the entropy of the weight pair, hence by 1 bit.
double jensenShannonBits(const Distribution& p, const Distribution& q, double weight_p);

/// Divergence between left and right symbol frequencies for every interior
/// split of `span`. A side with zero count mass contributes divergence 0.
/// Computed in one pass over integer count tallies; results are bit-identical
/// for any `threads` >= 1.
SplitProfile splitProfile(const WeightedSequence& seq, Span span,
                          WeightMode mode = WeightMode::kPositions, int threads = 1);

namespace detail {

/// Profile values over `span` with an optional position permutation applied
/// (perm maps window offsets to window offsets; nullptr = identity). Used by
/// both splitProfile and the shuffle baseline.
std::vector<double> profileValues(const WeightedSequence& seq, Span span, WeightMode mode,
                                  const std::uint32_t* perm, int threads);

}  // namespace detail

}  // namespace jsseg
