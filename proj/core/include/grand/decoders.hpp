#pragma once

// GRAND decoders: GRANDAB (hard input, Hamming-weight order), ORBGRAND
// (logistic-weight order), SGRAND (exact ML order) and List-GRAND.
//
// Every syndrome evaluation counts as one query, the zero pattern included.
// Running out of patterns is reported through DecodeResult::abandoned.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "grand/bits.hpp"
#include "grand/codes.hpp"
#include "grand/patterns.hpp"

namespace grand {

struct DecodeResult {
  BitVector message;   // k bits
  BitVector codeword;  // n bits
  TestErrorPattern pattern;
  std::uint64_t queries = 0;
  std::size_t list_size = 0;
  bool abandoned = false;
  double soft_weight = 0.0;  // of the winning pattern
};

/// Incremental codebook-membership test for one received hard decision.
class MembershipTest {
 public:
  using Word = SyndromeTable::Word;

  MembershipTest(const SyndromeTable& table, const BitVector& hard);

  /// Whether hard ⊕ e is a codeword, e given by its positions.
  template <class Positions>
  bool accepts(const Positions& positions) const noexcept {
    if (words_ == 1) {
      Word s = base_[0];
      for (auto p : positions) s ^= table_->column(static_cast<std::size_t>(p))[0];
      return s == 0;
    }
    scratch_.assign(base_.begin(), base_.end());
    for (auto p : positions) {
      const auto col = table_->column(static_cast<std::size_t>(p));
      for (std::size_t w = 0; w < words_; ++w) scratch_[w] ^= col[w];
    }
    return std::all_of(scratch_.begin(), scratch_.end(), [](Word x) { return x == 0; });
  }

  /// Same test with e given as 1-based reliability ranks.
  template <class Ranks>
  bool accepts_ranks(const Ranks& ranks, const ReliabilityOrder& ord) const noexcept {
    if (words_ == 1) {
      Word s = base_[0];
      for (auto r : ranks) s ^= table_->column(ord.ind[static_cast<std::size_t>(r) - 1])[0];
      return s == 0;
    }
    scratch_.assign(base_.begin(), base_.end());
    for (auto r : ranks) {
      const auto col = table_->column(ord.ind[static_cast<std::size_t>(r) - 1]);
      for (std::size_t w = 0; w < words_; ++w) scratch_[w] ^= col[w];
    }
    return std::all_of(scratch_.begin(), scratch_.end(), [](Word x) { return x == 0; });
  }

 private:
  const SyndromeTable* table_;
  std::size_t words_;
  std::vector<Word> base_;
  mutable std::vector<Word> scratch_;
};

DecodeResult decode_grandab(const ReliabilityOrder& ord, const LinearCode& code, std::size_t max_weight);

DecodeResult decode_orbgrand(const ReliabilityOrder& ord, const LinearCode& code, std::uint64_t lw_max,
                             int hw_cap);

DecodeResult decode_sgrand(const ReliabilityOrder& ord, const LinearCode& code,
                           std::uint64_t budget = kUnlimited);

struct LgrandParams {
  std::uint64_t lw_max = 0;
  int hw_max = 1;
  std::uint64_t delta = 0;
};

/// Throws InvalidParameter unless LW_max <= n(n+1)/2 and 1 <= HW_max <= n.
void validate(const LgrandParams& params, std::size_t n);

/// Search state: the logistic-weight budget Lambda and Hamming cap Delta.
/// Both are set once, on the first codebook hit, and frozen afterwards.
struct DecodeState {
  std::uint64_t lambda = 0;
  int delta = 0;
  std::optional<std::uint64_t> first_hit_weight;
};

/// Optional instrumentation for the list search.
struct LgrandTrace {
  struct Query {
    std::uint64_t logistic_weight;
    int hamming_weight;
  };
  DecodeState initial;
  DecodeState final_state;
  int state_updates = 0;
  bool record_queries = false;
  std::vector<Query> queries;  // filled when record_queries is set
};

struct Candidate {
  BitVector codeword;
  TestErrorPattern pattern;
  double soft_weight = 0.0;
  std::uint64_t found_at_query = 0;
};
using CandidateList = std::vector<Candidate>;

/// Entry with the smallest soft weight, i.e. the largest p(y|c) under
/// BPSK/AWGN; ties go to the earliest entry. Throws InvalidParameter on an
/// empty list.
const Candidate& likelihood_select(const CandidateList& list);

/// Hit found by the list search, before codewords are formed.
struct ListHit {
  TestErrorPattern pattern;
  std::uint64_t found_at_query;
};

/// The List-GRAND search loop over an arbitrary membership predicate
/// `is_member(const IntegerPartition&)` (parts are 1-based ranks). Returns
/// the hits in discovery order and the query count.
template <class Member>
std::vector<ListHit> list_search(const ReliabilityOrder& ord, const LgrandParams& params, Member&& is_member,
                                 std::uint64_t& queries, LgrandTrace* trace = nullptr) {
  validate(params, ord.size());
  DecodeState state{params.lw_max, params.hw_max, std::nullopt};
  if (trace) {
    trace->initial = state;
    trace->state_updates = 0;
    trace->queries.clear();
  }
  std::vector<ListHit> hits;
  OrbgrandStream stream(ord, params.lw_max, params.hw_max);
  queries = 0;
  while (const IntegerPartition* p = stream.next_partition()) {
    ++queries;
    if (trace && trace->record_queries)
      trace->queries.push_back({stream.current_logistic_weight(), static_cast<int>(p->count())});
    if (!is_member(*p)) continue;
    hits.push_back({pattern_from_partition(*p, ord), queries});
    if (!state.first_hit_weight) {
      const std::uint64_t i = stream.current_logistic_weight();
      state.first_hit_weight = i;
      state.lambda = std::min(i + params.delta, max_logistic_weight(ord.size()));
      state.delta = static_cast<int>(p->count());
      stream.set_logistic_limit(state.lambda);
      stream.set_hamming_cap(state.delta);
      if (trace) ++trace->state_updates;
    }
  }
  if (trace) trace->final_state = state;
  return hits;
}

DecodeResult decode_lgrand(const ReliabilityOrder& ord, const LinearCode& code, const LgrandParams& params,
                           LgrandTrace* trace = nullptr);

/// c·Ginv. Throws IntegrityError when c fails the parity check.
BitVector recover_message(const BitVector& codeword, const LinearCode& code);

}  // namespace grand
