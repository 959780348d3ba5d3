#pragma once

// Exhaustive reference implementations. They share no code path with the
// decoders and pattern streams they are used to check.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "grand/bits.hpp"
#include "grand/codes.hpp"
#include "grand/patterns.hpp"

namespace grand {

struct OracleLimit {
  std::size_t max_k = 20;
  std::size_t max_subset_bits = 20;
};

/// Σ (1 - 2c_i)·llr_i; larger means more likely under BPSK/AWGN.
double correlation_metric(const BitVector& codeword, std::span<const double> llr);

/// Maximum-correlation codeword over all 2^k codewords; ties go to the
/// lexicographically smallest codeword. Throws OracleLimitError when
/// k > limit.max_k.
BitVector ml_decode_bruteforce(std::span<const double> llr, const LinearCode& code, OracleLimit limit = {});

enum class PatternMetric { soft, logistic };

/// All 2^n subsets of positions sorted by the metric, ties broken by Hamming
/// weight, then lexicographic support. Both weight fields are filled.
/// Throws OracleLimitError when n > limit.max_subset_bits.
std::vector<TestErrorPattern> sort_all_patterns(std::span<const double> llr, PatternMetric metric,
                                                OracleLimit limit = {});

/// 1-based reliability ranks by counting, ties to the lower position.
std::vector<std::size_t> reference_ranks(std::span<const double> llr);

/// Number of partitions of m into distinct parts from {1..max_part} with at
/// most max_parts parts, by include/exclude recursion over the parts.
/// Throws OracleLimitError for m > 60.
std::uint64_t count_distinct_partitions(int m, int max_part, int max_parts);

}  // namespace grand
