#pragma once

// Test error pattern generation in the query orders used by the GRAND
// decoders: Hamming-weight order, logistic-weight order over distinct integer
// partitions, and maximum-likelihood (soft weight) order.
//
// Streams are lazy and single-consumer. They hold a pointer to the
// ReliabilityOrder they were built from, which must outlive them.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "grand/bits.hpp"

namespace grand {

/// Channel LLRs with hard decisions and positions ranked by ascending |LLR|.
struct ReliabilityOrder {
  std::vector<double> llr;
  BitVector hard;                  // hard[i] = 1 iff llr[i] < 0
  std::vector<std::size_t> ind;    // ind[r] = position holding rank r+1
  std::vector<std::size_t> rank;   // rank[i] = 1-based rank of position i

  std::size_t size() const noexcept { return llr.size(); }
  /// |LLR| of the position with 1-based rank r.
  double magnitude_at_rank(std::size_t r) const noexcept;
};

/// Stable sort by |LLR|; ties keep ascending position order.
/// Throws InvalidParameter on an empty vector or non-finite entries.
ReliabilityOrder sort_reliability(std::span<const double> llr);

/// Largest logistic weight on n positions, n(n+1)/2.
constexpr std::uint64_t max_logistic_weight(std::size_t n) noexcept {
  return static_cast<std::uint64_t>(n) * (n + 1) / 2;
}

/// Partition of m into strictly decreasing positive parts. Empty for m = 0.
struct IntegerPartition {
  std::vector<int> parts;

  int sum() const noexcept;
  std::size_t count() const noexcept { return parts.size(); }
  friend bool operator==(const IntegerPartition&, const IntegerPartition&) = default;
};

/// Lazily enumerates the distinct-part partitions of m with every part at
/// most max_part and at most max_parts parts, in descending lexicographic
/// order ([5], [4,1], [3,2] for m = 5).
class DistinctPartitionStream {
 public:
  DistinctPartitionStream(int m, int max_part, int max_parts);

  /// Next partition or nullptr when exhausted. The pointer is valid until the
  /// next call.
  const IntegerPartition* next();

  /// Lowers (or raises) the part-count cap for the remaining partitions.
  void set_max_parts(int max_parts) noexcept { max_parts_ = max_parts; }
  int max_parts() const noexcept { return max_parts_; }

 private:
  bool fill_greedy(int remainder, int bound, int slots);

  int m_;
  int max_part_;
  int max_parts_;
  bool started_ = false;
  bool done_ = false;
  IntegerPartition current_;
};

/// Materializes a DistinctPartitionStream.
std::vector<IntegerPartition> distinct_partitions(int m, int max_part, int max_parts);

struct TestErrorPattern {
  std::vector<std::size_t> support;  // flipped positions, ascending
  std::uint64_t logistic_weight = 0; // sum of 1-based reliability ranks
  double soft_weight = 0.0;          // sum of |LLR| over the support

  std::size_t hamming_weight() const noexcept { return support.size(); }
  BitVector to_bits(std::size_t n) const;
};

/// Sum of |llr[i]| over the support, accumulated in ascending position order.
double soft_weight(std::span<const std::size_t> support, std::span<const double> llr);
double soft_weight(const TestErrorPattern& e, std::span<const double> llr);
std::uint64_t logistic_weight(std::span<const std::size_t> support, const ReliabilityOrder& ord);

/// Fills logistic and soft weight of a pattern from its support.
void annotate(TestErrorPattern& e, const ReliabilityOrder& ord);

/// Flips positions ind[part - 1]. Throws InvalidParameter if a part exceeds n.
TestErrorPattern pattern_from_partition(const IntegerPartition& p, const ReliabilityOrder& ord);

/// Zero pattern, then every support of weight 1..max_weight in lexicographic
/// order. Hard-input: patterns carry no logistic or soft weight.
class GrandabStream {
 public:
  GrandabStream(std::size_t n, std::size_t max_weight);
  bool next(TestErrorPattern& out);
  /// Positions of the next pattern, or nullptr when exhausted.
  const std::vector<std::size_t>* next_support();

 private:
  std::size_t n_;
  std::size_t max_weight_;
  bool started_ = false;
  bool done_ = false;
  std::vector<std::size_t> support_;
};

/// Patterns of logistic weight 0, 1, ..., limit, each weight expanded through
/// its distinct partitions with at most hamming_cap parts and no part above n.
/// The limit and cap may be changed while iterating.
class OrbgrandStream {
 public:
  /// Throws InvalidParameter when lw_max exceeds n(n+1)/2 or hamming_cap < 1.
  OrbgrandStream(const ReliabilityOrder& ord, std::uint64_t lw_max, int hamming_cap);

  /// Next partition (parts are 1-based reliability ranks), or nullptr.
  const IntegerPartition* next_partition();
  bool next(TestErrorPattern& out);

  /// Logistic weight of the partition most recently returned.
  std::uint64_t current_logistic_weight() const noexcept { return weight_; }
  std::uint64_t logistic_limit() const noexcept { return limit_; }
  int hamming_cap() const noexcept { return cap_; }
  void set_logistic_limit(std::uint64_t limit) noexcept { limit_ = limit; }
  void set_hamming_cap(int cap) noexcept;

  const ReliabilityOrder& order() const noexcept { return *ord_; }

 private:
  const ReliabilityOrder* ord_;
  std::uint64_t limit_;
  int cap_;
  std::uint64_t weight_ = 0;
  DistinctPartitionStream parts_;
};

inline constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();

/// Every subset of positions exactly once, in nondecreasing soft weight.
/// Subsets are sorted rank sets; popping a set whose largest rank is j
/// schedules the set with rank j+1 appended and, for j >= 1, the set with j
/// replaced by j+1. Equal weights break by Hamming weight, then by the rank
/// sequence lexicographically.
class SgrandStream {
 public:
  SgrandStream(const ReliabilityOrder& ord, std::uint64_t budget = kUnlimited);

  /// 1-based reliability ranks of the next pattern, ascending, or nullptr.
  const std::vector<std::size_t>* next_ranks();
  bool next(TestErrorPattern& out);
  /// Soft weight of the pattern most recently returned.
  double current_soft_weight() const noexcept { return weight_; }
  std::uint64_t emitted() const noexcept { return emitted_; }

 private:
  struct Node {
    std::uint32_t prefix;  // node holding every rank but the last
    std::uint32_t last;    // largest rank, 0 for the empty set
    std::uint32_t hamming;
    double weight;
  };

  bool before(std::uint32_t a, std::uint32_t b) const;
  void collect_ranks(std::uint32_t node, std::vector<std::size_t>& out) const;
  void push(std::uint32_t prefix, std::uint32_t last, std::uint32_t hw);

  const ReliabilityOrder* ord_;
  std::uint64_t budget_;
  std::uint64_t emitted_ = 0;
  double weight_ = 0.0;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> heap_;
  std::vector<std::size_t> ranks_;
  mutable std::vector<std::size_t> scratch_a_;
  mutable std::vector<std::size_t> scratch_b_;
};

}  // namespace grand
