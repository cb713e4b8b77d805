#include "jsseg/divergence.h"

#include <cmath>

#include "jsseg/parallel.h"

namespace jsseg {
namespace {

// Above this count the c*log2(c) table is not materialized; desk-scale spans
// stay below it.
constexpr std::int64_t kXlog2TableCap = std::int64_t{1} << 22;

// c * log2(c) for integer counts, table-backed for the common range.
class Xlog2Table {
 public:
  explicit Xlog2Table(std::int64_t max_count) {
    const std::int64_t limit = std::min(max_count, kXlog2TableCap);
    table_.resize(static_cast<std::size_t>(limit) + 1, 0.0);
    for (std::int64_t c = 2; c <= limit; ++c) {
      table_[static_cast<std::size_t>(c)] =
          static_cast<double>(c) * std::log2(static_cast<double>(c));
    }
  }

  double operator()(std::int64_t c) const {
    if (c < static_cast<std::int64_t>(table_.size())) {
      return table_[static_cast<std::size_t>(c)];
    }
    return static_cast<double>(c) * std::log2(static_cast<double>(c));
  }

 private:
  std::vector<double> table_;
};

double entropyBits(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) {
      h -= p * std::log2(p);
    }
  }
  return h < 0.0 ? 0.0 : h;
}

}  // namespace

Distribution Distribution::fromCounts(const CountVector& counts, std::int64_t mass) {
  if (mass <= 0) {
    throw Error("distribution requires positive mass");
  }
  Distribution d;
  d.probs.reserve(counts.size());
  for (std::int64_t c : counts) {
    if (c < 0) {
      throw Error("negative count in distribution");
    }
    d.probs.push_back(static_cast<double>(c) / static_cast<double>(mass));
  }
  d.validate();
  return d;
}

void Distribution::validate() const {
  if (probs.empty()) {
    throw Error("distribution must have at least one entry");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0) {
      throw Error("distribution entries must be nonnegative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
    throw Error("distribution does not sum to 1");
  }
}

const char* weightModeName(WeightMode mode) {
  return mode == WeightMode::kPositions ? "positions" : "mass";
}

std::optional<WeightMode> weightModeFromName(std::string_view name) {
  if (name == "positions") {
    return WeightMode::kPositions;
  }
  if (name == "mass") {
    return WeightMode::kMass;
  }
  return std::nullopt;
}

double shannonEntropyBits(const Distribution& p) {
  p.validate();
  return entropyBits(p.probs);
}

double jensenShannonBits(const Distribution& p, const Distribution& q, double weight_p) {
  p.validate();
  q.validate();
  if (p.probs.size() != q.probs.size()) {
    throw Error("distributions have different sizes");
  }
  if (weight_p < 0.0 || weight_p > 1.0) {
    throw Error("weight must lie in [0, 1]");
  }
  const double weight_q = 1.0 - weight_p;
  if (p.probs == q.probs) {
    return 0.0;
  }
  std::vector<double> mix(p.probs.size());
  for (std::size_t i = 0; i < mix.size(); ++i) {
    mix[i] = weight_p * p.probs[i] + weight_q * q.probs[i];
  }
  // The weighted side term is summed before subtraction so that swapping
  // (p, q, w) with (q, p, 1-w) yields the identical double.
  const double d =
      entropyBits(mix) - (weight_p * entropyBits(p.probs) + weight_q * entropyBits(q.probs));
  return d < 0.0 ? 0.0 : d;
}

namespace detail {

std::vector<double> profileValues(const WeightedSequence& seq, Span span, WeightMode mode,
                                  const std::uint32_t* perm, int threads) {
  seq.checkSpan(span);
  const std::size_t window = span.length();
  if (window < 2) {
    throw Error("span too short to split");
  }

  const std::size_t k = seq.alphabetSize();
  const CountVector total = seq.tally(span);  // permutation-invariant
  const std::int64_t window_mass = seq.mass(span);
  const Xlog2Table xlog2(window_mass);
  const double window_positions = static_cast<double>(window);

  std::vector<double> values(window - 1);

  auto worker = [&](std::size_t begin, std::size_t end) {
    // Chunk handles splits n in [begin+1, end+1); left tallies are exact
    // integers, so chunk boundaries cannot change any value.
    CountVector left(k, 0);
    std::int64_t left_mass = 0;
    auto addPosition = [&](std::size_t offset) {
      const std::size_t pos = span.start + (perm != nullptr ? perm[offset] : offset);
      for (const WeightedSequence::Entry& e : seq.entries(pos)) {
        left[e.symbol] += e.count;
        left_mass += e.count;
      }
    };
    for (std::size_t t = 0; t < begin; ++t) {
      addPosition(t);
    }
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t n = i + 1;  // positions in the left side
      addPosition(n - 1);
      const std::int64_t right_mass = window_mass - left_mass;
      if (left_mass == 0 || right_mass == 0) {
        values[i] = 0.0;  // a side with no occurrences carries no evidence
        continue;
      }
      // Equal rational frequencies (cl/ml == cr/mr componentwise) mean zero
      // divergence; detect them exactly in integers so constant compositions
      // yield 0.0, not rounding residue.
      bool equal_frequencies = true;
      for (std::size_t s = 0; s < k; ++s) {
        if (left[s] * right_mass != (total[s] - left[s]) * left_mass) {
          equal_frequencies = false;
          break;
        }
      }
      if (equal_frequencies) {
        values[i] = 0.0;
        continue;
      }
      double weight_left;
      double weight_right;
      if (mode == WeightMode::kPositions) {
        weight_left = static_cast<double>(n) / window_positions;
        weight_right = static_cast<double>(window - n) / window_positions;
      } else {
        weight_left = static_cast<double>(left_mass) / static_cast<double>(window_mass);
        weight_right = static_cast<double>(right_mass) / static_cast<double>(window_mass);
      }
      const double inv_left = 1.0 / static_cast<double>(left_mass);
      const double inv_right = 1.0 / static_cast<double>(right_mass);
      double sum_left = 0.0;   // sum of c * log2(c) over left counts
      double sum_right = 0.0;
      double mix_entropy = 0.0;
      for (std::size_t s = 0; s < k; ++s) {
        const std::int64_t cl = left[s];
        const std::int64_t cr = total[s] - cl;
        if (cl > 0) {
          sum_left += xlog2(cl);
        }
        if (cr > 0) {
          sum_right += xlog2(cr);
        }
        if (cl > 0 || cr > 0) {
          const double mix = weight_left * (static_cast<double>(cl) * inv_left) +
                             weight_right * (static_cast<double>(cr) * inv_right);
          mix_entropy -= mix * std::log2(mix);
        }
      }
      const double entropy_left = std::log2(static_cast<double>(left_mass)) - sum_left * inv_left;
      const double entropy_right =
          std::log2(static_cast<double>(right_mass)) - sum_right * inv_right;
      const double d = mix_entropy - (weight_left * entropy_left + weight_right * entropy_right);
      values[i] = d < 0.0 ? 0.0 : d;
    }
  };

  parallelChunks(values.size(), threads, worker);
  return values;
}

}  // namespace detail

SplitProfile splitProfile(const WeightedSequence& seq, Span span, WeightMode mode,
                          int threads) {
  SplitProfile profile;
  profile.span = span;
  profile.weight_mode = mode;
  profile.values = detail::profileValues(seq, span, mode, nullptr, threads);
  return profile;
}

}  // namespace jsseg
