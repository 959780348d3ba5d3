#pragma once

// Oracle-equivalence suites: stream and decoder outputs checked against the
// exhaustive references in oracle.hpp. Failures carry counterexamples.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "grand/patterns.hpp"

namespace grand {

struct SuiteReport {
  std::string name;
  bool passed = true;
  std::uint64_t cases = 0;
  std::string summary;
  std::vector<std::string> counterexamples;  // at most a handful are kept

  void fail(std::string what);
};

struct VerifyOptions {
  std::size_t n = 12;             // largest length for the pattern-order suites
  std::size_t prefix = 500;       // SGRAND prefix compared against the oracle
  std::uint64_t frames = 10'000;  // frames for ml-decode
  double ebn0_db = 3.0;
  std::uint64_t seed = 1;
  int trials = 4;                 // random LLR vectors per length
};

/// "partitions", "logistic-order", "sgrand-ml", "ml-decode", "code-invariants".
const std::vector<std::string>& suite_names();

/// Throws InvalidParameter for an unknown suite name.
SuiteReport run_suite(std::string_view name, const VerifyOptions& opts);

/// Stream length equals the oracle count for every m <= max_m over a grid
/// of part-size and part-count caps.
SuiteReport verify_partitions(int max_m = 30);

/// Produces every pattern of a length-n word in query order.
using PatternSource = std::function<std::vector<TestErrorPattern>(const ReliabilityOrder&)>;

/// The full ORBGRAND order, LW_max = n(n+1)/2 and no Hamming cap.
std::vector<TestErrorPattern> orbgrand_full_order(const ReliabilityOrder& ord);

/// For n <= min(opts.n, 8): the source emits each of the 2^n subsets once,
/// reports logistic weights matching independently computed ranks, and never
/// decreases in logistic weight.
SuiteReport verify_logistic_order(const VerifyOptions& opts, const PatternSource& source = orbgrand_full_order);

/// For lengths 1..opts.n: the first opts.prefix SGRAND patterns match the
/// oracle soft-weight order up to permutations among equal weights.
SuiteReport verify_sgrand_prefix(const VerifyOptions& opts);

/// SGRAND against brute-force ML on Hamming(15,11) over shared noise;
/// disagreement allowed only on equal correlation metric.
SuiteReport verify_ml_decode(const VerifyOptions& opts);

/// Dimensions and H·Gᵀ = 0, G·Ginv = I for the shipped code families.
SuiteReport verify_code_invariants();

}  // namespace grand
