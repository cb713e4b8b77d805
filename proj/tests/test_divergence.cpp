// Tests for entropy, Jensen-Shannon divergence, and split profiles. Derived
// expected values were computed with the brute-force oracle in
// support/oracle.h and with high-precision evaluation of the formulas.

#include "jsseg/divergence.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "support/oracle.h"

using namespace jsseg;
using jsseg_test::naiveProfile;
using jsseg_test::randomCountSequence;

namespace {

WeightedSequence tokensSequence(const std::vector<std::string>& tokens) {
  return oneHot(tokens, buildAlphabet(tokens));
}

}  // namespace

// ===========================================================================
// Shannon entropy
// ===========================================================================

TEST_CASE("entropy of a uniform pair is one bit") {
  CHECK(shannonEntropyBits({{0.5, 0.5}}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("entropy of a degenerate distribution is zero") {
  CHECK(shannonEntropyBits({{1.0, 0.0, 0.0}}) == 0.0);
}

TEST_CASE("entropy of (1/3, 2/3)") {
  const double h = shannonEntropyBits({{1.0 / 3.0, 2.0 / 3.0}});
  CHECK(std::abs(h - 0.9182958340544896) < 1e-12);
}

TEST_CASE("entropy is bounded by log2 k") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(rng() % 8);
    std::vector<double> probs(k);
    double sum = 0.0;
    for (auto& p : probs) {
      p = unit(rng);
      sum += p;
    }
    for (auto& p : probs) {
      p /= sum;
    }
    const double h = shannonEntropyBits({probs});
    CHECK(h >= 0.0);
    CHECK(h <= std::log2(static_cast<double>(k)) + 1e-12);
  }
}

TEST_CASE("entropy rejects invalid distributions") {
  CHECK_THROWS_AS(shannonEntropyBits({{0.5, 0.4}}), Error);
  CHECK_THROWS_AS(shannonEntropyBits({{-0.1, 1.1}}), Error);
  CHECK_THROWS_AS(shannonEntropyBits({{}}), Error);
}

// ===========================================================================
// Jensen-Shannon divergence
// ===========================================================================

TEST_CASE("identical distributions diverge by zero at any weight") {
  const Distribution p{{0.3, 0.7}};
  for (double w : {0.0, 0.25, 0.5, 0.9, 1.0}) {
    CHECK(jensenShannonBits(p, p, w) == 0.0);
  }
}

TEST_CASE("disjoint supports at equal weights give one bit") {
  CHECK(jensenShannonBits({{1.0, 0.0}}, {{0.0, 1.0}}, 0.5) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("weighted divergence against a mixed distribution") {
  // p = (1,0), q = (1/3,2/3), w_p = 0.25; mixture is (0.5, 0.5).
  const double d = jensenShannonBits({{1.0, 0.0}}, {{1.0 / 3.0, 2.0 / 3.0}}, 0.25);
  CHECK(std::abs(d - 0.3112781244591329) < 1e-12);
}

TEST_CASE("swap symmetry is exact for exact complementary weights") {
  const Distribution p{{0.8, 0.15, 0.05}};
  const Distribution q{{0.1, 0.2, 0.7}};
  for (double w : {0.0, 0.125, 0.25, 0.5, 0.75, 1.0}) {
    CHECK(jensenShannonBits(p, q, w) == jensenShannonBits(q, p, 1.0 - w));
  }
}

TEST_CASE("divergence at endpoint weights vanishes") {
  const Distribution p{{0.9, 0.1}};
  const Distribution q{{0.2, 0.8}};
  CHECK(jensenShannonBits(p, q, 0.0) == 0.0);
  CHECK(jensenShannonBits(p, q, 1.0) == 0.0);
}

TEST_CASE("divergence is bounded by the weight-pair entropy") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> p(4);
    std::vector<double> q(4);
    double sp = 0.0;
    double sq = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      p[i] = unit(rng);
      q[i] = unit(rng);
      sp += p[i];
      sq += q[i];
    }
    for (std::size_t i = 0; i < 4; ++i) {
      p[i] /= sp;
      q[i] /= sq;
    }
    const double w = unit(rng);
    const double d = jensenShannonBits({p}, {q}, w);
    const double weight_entropy = shannonEntropyBits({{w, 1.0 - w}});
    CHECK(d >= 0.0);
    CHECK(d <= weight_entropy + 1e-12);
  }
}

TEST_CASE("alphabet permutation leaves the divergence unchanged") {
  const std::vector<double> p = {0.5, 0.3, 0.1, 0.1};
  const std::vector<double> q = {0.05, 0.15, 0.45, 0.35};
  const std::vector<std::size_t> perm = {2, 0, 3, 1};
  std::vector<double> pp(4);
  std::vector<double> qp(4);
  for (std::size_t i = 0; i < 4; ++i) {
    pp[perm[i]] = p[i];
    qp[perm[i]] = q[i];
  }
  const double base = jensenShannonBits({p}, {q}, 0.4);
  const double permuted = jensenShannonBits({pp}, {qp}, 0.4);
  CHECK(std::abs(base - permuted) < 1e-12);
}

TEST_CASE("Distribution::fromCounts normalizes and validates") {
  const Distribution d = Distribution::fromCounts({2, 0, 2}, 4);
  CHECK(d.probs == std::vector<double>{0.5, 0.0, 0.5});
  CHECK_THROWS_AS(Distribution::fromCounts({1}, 0), Error);
  CHECK_THROWS_AS(Distribution::fromCounts({-1, 2}, 1), Error);
}

// ===========================================================================
// Split profiles
// ===========================================================================

TEST_CASE("profile of A A B B") {
  const WeightedSequence seq = tokensSequence({"A", "A", "B", "B"});
  const SplitProfile profile = splitProfile(seq, seq.fullSpan());
  REQUIRE(profile.values.size() == 3);
  CHECK(std::abs(profile.values[0] - 0.3112781244591329) < 1e-12);
  CHECK(std::abs(profile.values[1] - 1.0) < 1e-12);
  CHECK(std::abs(profile.values[2] - 0.3112781244591329) < 1e-12);
}

TEST_CASE("profile of a constant sequence is identically zero") {
  const WeightedSequence seq = tokensSequence({"A", "A", "A", "A"});
  const SplitProfile profile = splitProfile(seq, seq.fullSpan());
  for (double v : profile.values) {
    CHECK(v == 0.0);
  }
}

TEST_CASE("weight modes differ on multi-count positions") {
  const Alphabet a = buildAlphabet({"A", "B"});
  const WeightedSequence seq(a, {{2, 0}, {0, 1}});
  const SplitProfile positions = splitProfile(seq, seq.fullSpan(), WeightMode::kPositions);
  REQUIRE(positions.values.size() == 1);
  CHECK(std::abs(positions.values[0] - 1.0) < 1e-12);

  const SplitProfile mass = splitProfile(seq, seq.fullSpan(), WeightMode::kMass);
  CHECK(std::abs(mass.values[0] - 0.9182958340544896) < 1e-12);
}

TEST_CASE("a zero-mass side contributes zero divergence") {
  const Alphabet a = buildAlphabet({"A", "B"});
  const WeightedSequence seq(a, {{0, 0}, {3, 1}, {2, 2}});
  const SplitProfile profile = splitProfile(seq, seq.fullSpan());
  CHECK(profile.values[0] == 0.0);   // left side empty
  CHECK(profile.values[1] > 0.0);
}

TEST_CASE("spans shorter than two positions cannot be profiled") {
  const WeightedSequence seq = tokensSequence({"A", "B"});
  CHECK_THROWS_WITH_AS(splitProfile(seq, {0, 1}), "span too short to split", Error);
}

TEST_CASE("profile matches the brute-force oracle on random sequences") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t length = 2 + rng() % 60;
    const std::size_t k = 1 + rng() % 6;
    const WeightedSequence seq = randomCountSequence(rng, length, k, 5);
    for (WeightMode mode : {WeightMode::kPositions, WeightMode::kMass}) {
      const SplitProfile profile = splitProfile(seq, seq.fullSpan(), mode);
      const std::vector<double> expected = naiveProfile(seq, seq.fullSpan(), mode);
      REQUIRE(profile.values.size() == expected.size());
      for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(std::abs(profile.values[i] - expected[i]) < 1e-12);
      }
    }
  }
}

TEST_CASE("profile over a sub-span matches the oracle") {
  std::mt19937_64 rng(77);
  const WeightedSequence seq = randomCountSequence(rng, 30, 4, 3);
  const Span span{5, 21};
  const SplitProfile profile = splitProfile(seq, span);
  const std::vector<double> expected = naiveProfile(seq, span, WeightMode::kPositions);
  REQUIRE(profile.values.size() == span.length() - 1);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(std::abs(profile.values[i] - expected[i]) < 1e-12);
  }
}

TEST_CASE("reversing the sequence mirrors the profile") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const WeightedSequence seq = randomCountSequence(rng, 24, 4, 4);
    std::vector<CountVector> reversed;
    for (std::size_t p = seq.size(); p > 0; --p) {
      reversed.push_back(seq.positionCounts(p - 1));
    }
    const WeightedSequence mirrored(seq.alphabet(), reversed);
    const SplitProfile forward = splitProfile(seq, seq.fullSpan());
    const SplitProfile backward = splitProfile(mirrored, mirrored.fullSpan());
    const std::size_t count = forward.values.size();
    for (std::size_t i = 0; i < count; ++i) {
      CHECK(std::abs(forward.values[i] - backward.values[count - 1 - i]) < 1e-12);
    }
  }
}

TEST_CASE("profile values do not exceed one bit") {
  std::mt19937_64 rng(5150);
  const WeightedSequence seq = randomCountSequence(rng, 64, 5, 4);
  for (WeightMode mode : {WeightMode::kPositions, WeightMode::kMass}) {
    for (double v : splitProfile(seq, seq.fullSpan(), mode).values) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("thread count does not change profile bits") {
  std::mt19937_64 rng(8);
  const WeightedSequence seq = randomCountSequence(rng, 150, 5, 3);
  const SplitProfile serial = splitProfile(seq, seq.fullSpan(), WeightMode::kPositions, 1);
  for (int threads : {2, 3, 8}) {
    const SplitProfile parallel =
        splitProfile(seq, seq.fullSpan(), WeightMode::kPositions, threads);
    CHECK(serial.values == parallel.values);
  }
}
