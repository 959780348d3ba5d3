#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "grand/errors.hpp"
#include "grand/oracle.hpp"
#include "grand/patterns.hpp"

using namespace grand;

namespace {

std::vector<double> gaussian_llr(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d(2.0, 2.0);
  std::vector<double> llr(n);
  for (double& v : llr) v = d(rng);
  return llr;
}

std::uint64_t mask_of(const std::vector<std::size_t>& support) {
  std::uint64_t m = 0;
  for (std::size_t i : support) m |= std::uint64_t{1} << i;
  return m;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("reliability order of a hand example") {
  const std::vector<double> llr{-0.1, 0.9, -0.3};
  const ReliabilityOrder ord = sort_reliability(llr);
  CHECK(ord.ind == std::vector<std::size_t>{0, 2, 1});
  CHECK(ord.rank == std::vector<std::size_t>{1, 3, 2});
  CHECK(ord.hard == BitVector::from_string("101"));
  CHECK(ord.magnitude_at_rank(2) == doctest::Approx(0.3));
}

TEST_CASE("reliability ties keep index order") {
  CHECK(sort_reliability(std::vector<double>{0.5, -0.5}).ind == std::vector<std::size_t>{0, 1});
  CHECK(sort_reliability(std::vector<double>{0.1, 0.2, 0.3}).ind == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("reliability order rejects bad input") {
  CHECK_THROWS_AS(sort_reliability(std::vector<double>{}), InvalidParameter);
  CHECK_THROWS_AS(sort_reliability(std::vector<double>{1.0, std::nan("")}), InvalidParameter);
  CHECK_THROWS_AS(sort_reliability(std::vector<double>{std::numeric_limits<double>::infinity()}), InvalidParameter);
}

TEST_CASE("reliability order agrees with counting ranks") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    auto llr = gaussian_llr(1 + rng() % 60, rng);
    if (trial % 2) for (double& v : llr) v = std::round(v);
    const ReliabilityOrder ord = sort_reliability(llr);
    CHECK(ord.rank == reference_ranks(llr));
    for (std::size_t r = 1; r < ord.size(); ++r)
      CHECK(std::fabs(llr[ord.ind[r - 1]]) <= std::fabs(llr[ord.ind[r]]));
  }
}

TEST_CASE("distinct partitions of 5") {
  const auto parts = distinct_partitions(5, 5, 5);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0].parts == std::vector<int>{5});
  CHECK(parts[1].parts == std::vector<int>{4, 1});
  CHECK(parts[2].parts == std::vector<int>{3, 2});
}

TEST_CASE("partition edge cases") {
  const auto zero = distinct_partitions(0, 10, 10);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].parts.empty());
  const auto single = distinct_partitions(3, 10, 1);
  REQUIRE(single.size() == 1);
  CHECK(single[0].parts == std::vector<int>{3});
  CHECK(distinct_partitions(10, 10, 2).size() == 5);
  CHECK(distinct_partitions(7, 3, 3).empty());  // 1+2+3 = 6 < 7
  CHECK(distinct_partitions(4, 2, 5).empty());
}

TEST_CASE("partitions are distinct, decreasing, capped and in descending lexicographic order") {
  for (int m = 0; m <= 30; ++m) {
    for (int max_part : {3, 7, 30}) {
      for (int max_parts : {1, 2, 4, 30}) {
        const auto parts = distinct_partitions(m, max_part, max_parts);
        CHECK(parts.size() == count_distinct_partitions(m, max_part, max_parts));
        for (std::size_t i = 0; i < parts.size(); ++i) {
          const auto& p = parts[i].parts;
          CHECK(parts[i].sum() == m);
          CHECK(static_cast<int>(p.size()) <= max_parts);
          for (std::size_t j = 0; j < p.size(); ++j) {
            CHECK(p[j] <= max_part);
            if (j) CHECK(p[j - 1] > p[j]);
          }
          if (i) CHECK(std::lexicographical_compare(p.begin(), p.end(), parts[i - 1].parts.begin(),
                                                    parts[i - 1].parts.end()));
        }
      }
    }
  }
}

TEST_CASE("lowering the part cap mid-stream skips wider partitions") {
  DistinctPartitionStream s(10, 10, 4);
  std::vector<IntegerPartition> seen;
  seen.push_back(*s.next());  // [10]
  s.set_max_parts(2);
  while (const auto* p = s.next()) seen.push_back(*p);
  CHECK(seen.size() == 5);
  for (const auto& p : seen) CHECK(p.count() <= 2);
}

TEST_CASE("pattern from partition maps ranks through ind") {
  // magnitudes chosen so that ind = [7, 2, 5, 0, 1, 3, 4, 6]
  std::vector<double> llr(8);
  const std::size_t ind[] = {7, 2, 5, 0, 1, 3, 4, 6};
  for (std::size_t r = 0; r < 8; ++r) llr[ind[r]] = 0.1 * static_cast<double>(r + 1);
  const ReliabilityOrder ord = sort_reliability(llr);
  REQUIRE(ord.ind == std::vector<std::size_t>(std::begin(ind), std::end(ind)));

  const TestErrorPattern e = pattern_from_partition(IntegerPartition{{3, 1}}, ord);
  CHECK(e.support == std::vector<std::size_t>{5, 7});
  CHECK(e.logistic_weight == 4);
  CHECK(e.hamming_weight() == 2);
  CHECK(e.soft_weight == doctest::Approx(0.4));

  CHECK(pattern_from_partition(IntegerPartition{}, ord).support.empty());
  CHECK(pattern_from_partition(IntegerPartition{{8}}, ord).support == std::vector<std::size_t>{6});
  CHECK_THROWS_AS(pattern_from_partition(IntegerPartition{{9}}, ord), InvalidParameter);
}

TEST_CASE("soft weight") {
  const std::vector<double> llr{-0.1, 0.9, -0.3};
  CHECK(soft_weight(std::vector<std::size_t>{}, llr) == 0.0);
  CHECK(soft_weight(std::vector<std::size_t>{0, 2}, llr) == doctest::Approx(0.4));
  TestErrorPattern e;
  e.support = {1};
  CHECK(soft_weight(e, llr) == doctest::Approx(0.9));
}

TEST_CASE("soft weight never decreases when a position is added") {
  std::mt19937_64 rng(3);
  const auto llr = gaussian_llr(40, rng);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < 40; ++i)
      if (rng() % 4 == 0) support.push_back(i);
    const double before = soft_weight(support, llr);
    std::vector<std::size_t> bigger = support;
    const std::size_t extra = rng() % 40;
    if (std::find(bigger.begin(), bigger.end(), extra) != bigger.end()) continue;
    bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), extra), extra);
    CHECK(soft_weight(bigger, llr) >= before);
  }
}

TEST_CASE("GRANDAB counts") {
  auto count_nonzero = [](std::size_t n, std::size_t ab) {
    GrandabStream s(n, ab);
    std::uint64_t c = 0;
    while (s.next_support()) ++c;
    return c - 1;
  };
  CHECK(count_nonzero(4, 2) == 10);
  CHECK(count_nonzero(4, 0) == 0);
  CHECK(count_nonzero(128, 3) == 349632);
  for (std::size_t n = 1; n <= 12; ++n)
    for (std::size_t ab = 0; ab <= n; ++ab) {
      std::uint64_t expected = 0;
      for (std::size_t w = 1; w <= ab; ++w) expected += binomial(n, w);
      CHECK(count_nonzero(n, ab) == expected);
    }
}

TEST_CASE("GRANDAB order is weight then lexicographic") {
  GrandabStream s(5, 5);
  std::vector<std::vector<std::size_t>> seen;
  while (const auto* sup = s.next_support()) seen.push_back(*sup);
  REQUIRE(seen.size() == 32);
  CHECK(seen.front().empty());
  for (std::size_t i = 1; i < seen.size(); ++i) {
    const bool ordered = seen[i - 1].size() < seen[i].size() ||
                         (seen[i - 1].size() == seen[i].size() && seen[i - 1] < seen[i]);
    CHECK(ordered);
  }
}

TEST_CASE("ORBGRAND stream starts with the zero pattern") {
  std::mt19937_64 rng(5);
  const auto llr = gaussian_llr(16, rng);
  const ReliabilityOrder ord = sort_reliability(llr);
  OrbgrandStream s(ord, 50, 4);
  TestErrorPattern e;
  REQUIRE(s.next(e));
  CHECK(e.support.empty());
  CHECK(s.current_logistic_weight() == 0);
}

TEST_CASE("ORBGRAND on n=4 with LW_max=10 visits all 16 subsets") {
  const std::vector<double> llr{0.4, -0.1, 0.3, 0.2};
  const ReliabilityOrder ord = sort_reliability(llr);
  OrbgrandStream s(ord, 10, 4);
  std::set<std::uint64_t> seen;
  TestErrorPattern e;
  while (s.next(e)) CHECK(seen.insert(mask_of(e.support)).second);
  CHECK(seen.size() == 16);
}

TEST_CASE("ORBGRAND on n=8 up to LW 3") {
  std::vector<double> llr{0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1};  // rank r at position 8-r
  const ReliabilityOrder ord = sort_reliability(llr);
  OrbgrandStream s(ord, 3, 8);
  std::vector<std::vector<int>> parts;
  while (const auto* p = s.next_partition()) parts.push_back(p->parts);
  const std::vector<std::vector<int>> expected{{}, {1}, {2}, {3}, {2, 1}};
  CHECK(parts == expected);
}

TEST_CASE("ORBGRAND respects the Hamming cap and nondecreasing logistic weight") {
  std::mt19937_64 rng(6);
  const auto llr = gaussian_llr(20, rng);
  const ReliabilityOrder ord = sort_reliability(llr);
  OrbgrandStream s(ord, 60, 3);
  TestErrorPattern e;
  std::uint64_t last = 0;
  std::uint64_t count = 0;
  while (s.next(e)) {
    CHECK(e.hamming_weight() <= 3);
    CHECK(e.logistic_weight >= last);
    CHECK(e.logistic_weight == logistic_weight(e.support, ord));
    last = e.logistic_weight;
    ++count;
  }
  std::uint64_t expected = 0;
  for (int m = 0; m <= 60; ++m) expected += count_distinct_partitions(m, 20, 3);
  CHECK(count == expected);
}

TEST_CASE("ORBGRAND parameter validation") {
  const ReliabilityOrder ord = sort_reliability(std::vector<double>{1, 2, 3});
  CHECK_THROWS_AS(OrbgrandStream(ord, 7, 3), InvalidParameter);
  CHECK_THROWS_AS(OrbgrandStream(ord, 6, 0), InvalidParameter);
  CHECK_NOTHROW(OrbgrandStream(ord, 6, 3));
}

TEST_CASE("SGRAND order on a three-bit example") {
  const std::vector<double> llr{0.1, -0.2, 0.4};
  const ReliabilityOrder ord = sort_reliability(llr);
  SgrandStream s(ord);
  const std::vector<std::vector<std::size_t>> expected{{}, {0}, {1}, {0, 1}, {2}, {0, 2}, {1, 2}, {0, 1, 2}};
  const double weights[] = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
  TestErrorPattern e;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    REQUIRE(s.next(e));
    CHECK(e.support == expected[i]);
    CHECK(e.soft_weight == doctest::Approx(weights[i]));
    CHECK(s.current_soft_weight() == doctest::Approx(weights[i]));
  }
  CHECK_FALSE(s.next(e));
}

TEST_CASE("SGRAND visits every subset once in nondecreasing soft weight") {
  std::mt19937_64 rng(7);
  for (std::size_t n = 1; n <= 11; ++n) {
    auto llr = gaussian_llr(n, rng);
    if (n % 2) for (double& v : llr) v = std::round(v);
    const ReliabilityOrder ord = sort_reliability(llr);
    SgrandStream s(ord);
    std::set<std::uint64_t> seen;
    double last = -1.0;
    TestErrorPattern e;
    while (s.next(e)) {
      CHECK(seen.insert(mask_of(e.support)).second);
      CHECK(s.current_soft_weight() >= last);
      last = s.current_soft_weight();
    }
    CHECK(seen.size() == (std::size_t{1} << n));
  }
}

TEST_CASE("SGRAND prefixes match the exhaustive soft-weight sort") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 11;
    const auto llr = gaussian_llr(n, rng);
    const auto oracle = sort_all_patterns(llr, PatternMetric::soft);
    const ReliabilityOrder ord = sort_reliability(llr);
    SgrandStream s(ord);
    TestErrorPattern e;
    for (std::size_t i = 0; i < std::min<std::size_t>(300, oracle.size()); ++i) {
      REQUIRE(s.next(e));
      CHECK(e.soft_weight == doctest::Approx(oracle[i].soft_weight).epsilon(1e-12));
    }
  }
}

TEST_CASE("SGRAND budget limits emitted patterns") {
  const ReliabilityOrder ord = sort_reliability(std::vector<double>{1, 2, 3, 4});
  SgrandStream s(ord, 5);
  TestErrorPattern e;
  int count = 0;
  while (s.next(e)) ++count;
  CHECK(count == 5);
  CHECK(s.emitted() == 5);
}
