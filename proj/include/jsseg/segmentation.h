// Split selection, shuffle-based significance baselines, and the recursive
// segmentation driver.

#pragma once

#include <utility>

#include "jsseg/divergence.h"
#include "jsseg/rng.h"

namespace jsseg {

/// Mean and dispersion of the split divergence over shuffled replicates of a
/// span. `seed` echoes the master seed the replicate streams were derived
/// from.
struct BaselineStats {
  double mean = 0.0;
  double sigma = 0.0;
  int replicates = 0;
  std::uint64_t seed = 0;

  bool operator==(const BaselineStats&) const = default;
};

struct SegmentationConfig {
  std::size_t min_split_length = 3;  // spans shorter than this stay leaves
  double threshold_multiplier = 1.0;
  int shuffle_replicates = 10;
  std::uint64_t seed = 42;
  int max_depth = 32;  // number of split levels allowed below the root
  WeightMode weight_mode = WeightMode::kPositions;

  void validate() const;
  bool operator==(const SegmentationConfig&) const = default;
};

/// Binary recursion record. Children, when present, partition the span at
/// split_after positions from its start.
struct SegmentNode {
  Span span;
  std::optional<std::size_t> split_after;
  std::optional<double> d_max;
  std::optional<BaselineStats> baseline;
  bool significant = false;
  std::vector<SegmentNode> children;  // empty or exactly two

  bool isLeaf() const { return children.empty(); }
};

/// Smallest split-after count attaining the maximal divergence, with that
/// value. Ties break to the leftmost split.
std::pair<std::size_t, double> bestSplit(const SplitProfile& profile);

/// Shuffles the span's position vectors config.shuffle_replicates times
/// (Fisher-Yates over whole positions), recomputes the split profile of each
/// replicate, and pools every interior-split value. Deterministic for fixed
/// (seed, span, replicates); independent of `threads`.
BaselineStats shuffleBaseline(const WeightedSequence& seq, Span span,
                              const SegmentationConfig& config, int threads = 1);

/// Recursively segments `span`: profile, best split, baseline; splits while
/// d_max exceeds mean + threshold_multiplier * sigma (strict), the span has
/// at least min_split_length positions, and max_depth is not exhausted.
SegmentNode segmentSpan(const WeightedSequence& seq, Span span,
                        const SegmentationConfig& config, int threads = 1);

SegmentNode segmentSequence(const WeightedSequence& seq, const SegmentationConfig& config,
                            int threads = 1);

/// Throws Error if the tree violates structural invariants (children must
/// partition the parent span, internal nodes must be significant, spans must
/// be nonempty).
void checkTree(const SegmentNode& root);

/// Leaf spans in position order; they tile the root span.
std::vector<Span> leafSpans(const SegmentNode& root);

}  // namespace jsseg
