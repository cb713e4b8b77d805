#include "jsseg/segmentation.h"

#include <cmath>
#include <numeric>

#include "jsseg/parallel.h"

namespace jsseg {

void SegmentationConfig::validate() const {
  if (min_split_length < 2) {
    throw Error("min_split_length must be at least 2");
  }
  if (threshold_multiplier < 0.0) {
    throw Error("threshold_multiplier must be nonnegative");
  }
  if (shuffle_replicates < 1) {
    throw Error("shuffle_replicates must be at least 1");
  }
  if (max_depth < 1) {
    throw Error("max_depth must be at least 1");
  }
}

std::pair<std::size_t, double> bestSplit(const SplitProfile& profile) {
  if (profile.values.empty()) {
    throw Error("empty split profile");
  }
  std::size_t best = 0;
  double best_value = profile.values[0];
  for (std::size_t i = 1; i < profile.values.size(); ++i) {
    if (profile.values[i] > best_value) {
      best = i;
      best_value = profile.values[i];
    }
  }
  return {best + 1, best_value};
}

BaselineStats shuffleBaseline(const WeightedSequence& seq, Span span,
                              const SegmentationConfig& config, int threads) {
  config.validate();
  seq.checkSpan(span);
  const std::size_t window = span.length();
  if (window < 2) {
    throw Error("span too short to split");
  }

  const int replicates = config.shuffle_replicates;
  std::vector<std::vector<double>> replicate_values(static_cast<std::size_t>(replicates));

  detail::parallelChunks(static_cast<std::size_t>(replicates), threads,
                         [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      SplitMix64 rng(deriveStreamSeed(config.seed, span.start, span.end, r + 1));
      std::vector<std::uint32_t> perm(window);
      std::iota(perm.begin(), perm.end(), 0U);
      fisherYatesShuffle(perm, rng);
      replicate_values[r] = detail::profileValues(seq, span, config.weight_mode,
                                                  perm.data(), /*threads=*/1);
    }
  });

  // Pool all interior-split values in replicate order, then mean and
  // population dispersion over the pool.
  std::size_t count = 0;
  double sum = 0.0;
  for (const std::vector<double>& values : replicate_values) {
    for (double v : values) {
      sum += v;
    }
    count += values.size();
  }
  const double mean = sum / static_cast<double>(count);
  double sq = 0.0;
  for (const std::vector<double>& values : replicate_values) {
    for (double v : values) {
      const double dev = v - mean;
      sq += dev * dev;
    }
  }
  const double sigma = std::sqrt(sq / static_cast<double>(count));
  return BaselineStats{mean, sigma, replicates, config.seed};
}

namespace {

SegmentNode buildNode(const WeightedSequence& seq, Span span,
                      const SegmentationConfig& config, int depth, int threads) {
  SegmentNode node;
  node.span = span;
  if (span.length() < config.min_split_length || depth >= config.max_depth) {
    return node;
  }

  const SplitProfile profile = splitProfile(seq, span, config.weight_mode, threads);
  const auto [split_after, d_max] = bestSplit(profile);
  node.d_max = d_max;
  node.baseline = shuffleBaseline(seq, span, config, threads);
  node.significant =
      d_max > node.baseline->mean + config.threshold_multiplier * node.baseline->sigma;
  if (node.significant) {
    node.split_after = split_after;
    const Span left{span.start, span.start + split_after};
    const Span right{span.start + split_after, span.end};
    node.children.push_back(buildNode(seq, left, config, depth + 1, threads));
    node.children.push_back(buildNode(seq, right, config, depth + 1, threads));
  }
  return node;
}

void checkSubtree(const SegmentNode& node) {
  if (node.span.start >= node.span.end) {
    throw Error("segment node has an empty span");
  }
  if (node.children.empty()) {
    return;
  }
  if (node.children.size() != 2) {
    throw Error("segment node must have zero or two children");
  }
  if (!node.significant) {
    throw Error("internal segment node must be significant");
  }
  if (!node.split_after.has_value()) {
    throw Error("internal segment node is missing split_after");
  }
  const std::size_t boundary = node.span.start + *node.split_after;
  if (boundary <= node.span.start || boundary >= node.span.end) {
    throw Error("split_after does not fall inside the span");
  }
  if (node.children[0].span != Span{node.span.start, boundary} ||
      node.children[1].span != Span{boundary, node.span.end}) {
    throw Error("children do not partition the parent span");
  }
  checkSubtree(node.children[0]);
  checkSubtree(node.children[1]);
}

void collectLeaves(const SegmentNode& node, std::vector<Span>& out) {
  if (node.children.empty()) {
    out.push_back(node.span);
    return;
  }
  for (const SegmentNode& child : node.children) {
    collectLeaves(child, out);
  }
}

}  // namespace

SegmentNode segmentSpan(const WeightedSequence& seq, Span span,
                        const SegmentationConfig& config, int threads) {
  config.validate();
  seq.checkSpan(span);
  return buildNode(seq, span, config, 0, threads);
}

SegmentNode segmentSequence(const WeightedSequence& seq, const SegmentationConfig& config,
                            int threads) {
  return segmentSpan(seq, seq.fullSpan(), config, threads);
}

void checkTree(const SegmentNode& root) {
  checkSubtree(root);
}

std::vector<Span> leafSpans(const SegmentNode& root) {
  std::vector<Span> spans;
  collectLeaves(root, spans);
  return spans;
}

}  // namespace jsseg
