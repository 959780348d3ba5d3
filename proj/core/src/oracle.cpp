#include "grand/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace grand {

double correlation_metric(const BitVector& codeword, std::span<const double> llr) {
  if (codeword.size() != llr.size()) throw ShapeError("codeword and LLR lengths differ");
  double total = 0.0;
  for (std::size_t i = 0; i < llr.size(); ++i) total += codeword.get(i) ? -llr[i] : llr[i];
  return total;
}

BitVector ml_decode_bruteforce(std::span<const double> llr, const LinearCode& code, OracleLimit limit) {
  const std::size_t k = code.k();
  if (k > limit.max_k)
    throw OracleLimitError("brute-force ML refused: k = " + std::to_string(k) + " > " + std::to_string(limit.max_k));
  if (llr.size() != code.n()) throw ShapeError("LLR length does not match the code");

  const BitMatrix& g = code.generator();
  BitVector c(code.n());
  BitVector best = c;
  double best_metric = correlation_metric(c, llr);
  // Gray-code walk: step s toggles message bit ctz(s)
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t s = 1; s < total; ++s) {
    std::size_t bit = 0;
    while (((s >> bit) & 1U) == 0) ++bit;
    c ^= g.row(bit);
    const double metric = correlation_metric(c, llr);
    if (metric > best_metric || (metric == best_metric && lex_less(c, best))) {
      best_metric = metric;
      best = c;
    }
  }
  return best;
}

std::vector<std::size_t> reference_ranks(std::span<const double> llr) {
  std::vector<std::size_t> ranks(llr.size());
  for (std::size_t i = 0; i < llr.size(); ++i) {
    std::size_t below = 0;
    for (std::size_t j = 0; j < llr.size(); ++j) {
      const double a = std::fabs(llr[j]);
      const double b = std::fabs(llr[i]);
      if (a < b || (a == b && j < i)) ++below;
    }
    ranks[i] = below + 1;
  }
  return ranks;
}

std::vector<TestErrorPattern> sort_all_patterns(std::span<const double> llr, PatternMetric metric,
                                                OracleLimit limit) {
  const std::size_t n = llr.size();
  if (n > limit.max_subset_bits)
    throw OracleLimitError("pattern sort refused: n = " + std::to_string(n) + " > " +
                           std::to_string(limit.max_subset_bits));
  const auto ranks = reference_ranks(llr);
  std::vector<TestErrorPattern> all(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < all.size(); ++mask) {
    TestErrorPattern& e = all[mask];
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) {
        e.support.push_back(i);
        e.soft_weight += std::fabs(llr[i]);
        e.logistic_weight += ranks[i];
      }
    }
  }
  std::stable_sort(all.begin(), all.end(), [metric](const TestErrorPattern& a, const TestErrorPattern& b) {
    if (metric == PatternMetric::soft) {
      if (a.soft_weight != b.soft_weight) return a.soft_weight < b.soft_weight;
    } else if (a.logistic_weight != b.logistic_weight) {
      return a.logistic_weight < b.logistic_weight;
    }
    if (a.support.size() != b.support.size()) return a.support.size() < b.support.size();
    return a.support < b.support;
  });
  return all;
}

namespace {

std::uint64_t count_from(int part, int remaining, int slots_left, int max_part) {
  if (remaining == 0) return 1;
  if (part > max_part || part > remaining || slots_left == 0) return 0;
  // include `part`, or skip it
  return count_from(part + 1, remaining - part, slots_left - 1, max_part) +
         count_from(part + 1, remaining, slots_left, max_part);
}

}  // namespace

std::uint64_t count_distinct_partitions(int m, int max_part, int max_parts) {
  if (m > 60) throw OracleLimitError("partition count refused: m = " + std::to_string(m) + " > 60");
  if (m < 0) return 0;
  return count_from(1, m, max_parts, max_part);
}

}  // namespace grand
