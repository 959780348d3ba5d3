#include "grand/decoders.hpp"

#include <string>

namespace grand {

MembershipTest::MembershipTest(const SyndromeTable& table, const BitVector& hard)
    : table_(&table), words_(table.words_per_column()), base_(table.words_per_column(), 0) {
  table.syndrome_of(hard, base_);
}

namespace {

DecodeResult finish(const ReliabilityOrder& ord, const LinearCode& code, TestErrorPattern pattern,
                    std::uint64_t queries) {
  DecodeResult r;
  annotate(pattern, ord);
  r.codeword = ord.hard;
  for (std::size_t i : pattern.support) r.codeword.flip(i);
  r.message = multiply(r.codeword, code.right_inverse());
  r.soft_weight = pattern.soft_weight;
  r.pattern = std::move(pattern);
  r.queries = queries;
  r.list_size = 1;
  return r;
}

DecodeResult abandoned(const LinearCode& code, std::uint64_t queries) {
  DecodeResult r;
  r.message = BitVector(code.k());
  r.codeword = BitVector(code.n());
  r.queries = queries;
  r.abandoned = true;
  return r;
}

void check_length(const ReliabilityOrder& ord, const LinearCode& code) {
  if (ord.size() != code.n())
    throw ShapeError("received " + std::to_string(ord.size()) + " LLRs for a code of length " +
                     std::to_string(code.n()));
}

}  // namespace

DecodeResult decode_grandab(const ReliabilityOrder& ord, const LinearCode& code, std::size_t max_weight) {
  check_length(ord, code);
  const MembershipTest member(code.syndrome_table(), ord.hard);
  GrandabStream stream(code.n(), max_weight);
  std::uint64_t queries = 0;
  while (const auto* support = stream.next_support()) {
    ++queries;
    if (member.accepts(*support)) {
      TestErrorPattern e;
      e.support = *support;
      return finish(ord, code, std::move(e), queries);
    }
  }
  return abandoned(code, queries);
}

DecodeResult decode_orbgrand(const ReliabilityOrder& ord, const LinearCode& code, std::uint64_t lw_max,
                             int hw_cap) {
  check_length(ord, code);
  const MembershipTest member(code.syndrome_table(), ord.hard);
  OrbgrandStream stream(ord, lw_max, hw_cap);
  std::uint64_t queries = 0;
  while (const IntegerPartition* p = stream.next_partition()) {
    ++queries;
    if (member.accepts_ranks(p->parts, ord)) return finish(ord, code, pattern_from_partition(*p, ord), queries);
  }
  return abandoned(code, queries);
}

DecodeResult decode_sgrand(const ReliabilityOrder& ord, const LinearCode& code, std::uint64_t budget) {
  check_length(ord, code);
  const MembershipTest member(code.syndrome_table(), ord.hard);
  SgrandStream stream(ord, budget);
  std::uint64_t queries = 0;
  while (const auto* ranks = stream.next_ranks()) {
    ++queries;
    if (member.accepts_ranks(*ranks, ord)) {
      TestErrorPattern e;
      for (std::size_t r : *ranks) e.support.push_back(ord.ind[r - 1]);
      std::sort(e.support.begin(), e.support.end());
      return finish(ord, code, std::move(e), queries);
    }
  }
  return abandoned(code, queries);
}

void validate(const LgrandParams& params, std::size_t n) {
  if (params.lw_max > max_logistic_weight(n))
    throw InvalidParameter("LW_max " + std::to_string(params.lw_max) + " exceeds n(n+1)/2 = " +
                           std::to_string(max_logistic_weight(n)));
  if (params.hw_max < 1 || static_cast<std::size_t>(params.hw_max) > n)
    throw InvalidParameter("HW_max " + std::to_string(params.hw_max) + " outside [1, " + std::to_string(n) + "]");
}

const Candidate& likelihood_select(const CandidateList& list) {
  if (list.empty()) throw InvalidParameter("likelihood selection over an empty list");
  const Candidate* best = &list.front();
  for (const Candidate& c : list)
    if (c.soft_weight < best->soft_weight) best = &c;
  return *best;
}

DecodeResult decode_lgrand(const ReliabilityOrder& ord, const LinearCode& code, const LgrandParams& params,
                           LgrandTrace* trace) {
  check_length(ord, code);
  const MembershipTest member(code.syndrome_table(), ord.hard);
  std::uint64_t queries = 0;
  auto hits = list_search(
      ord, params, [&](const IntegerPartition& p) { return member.accepts_ranks(p.parts, ord); }, queries, trace);
  if (hits.empty()) return abandoned(code, queries);

  CandidateList list;
  list.reserve(hits.size());
  for (ListHit& h : hits) {
    Candidate c;
    c.codeword = ord.hard;
    for (std::size_t i : h.pattern.support) c.codeword.flip(i);
    c.soft_weight = h.pattern.soft_weight;
    c.pattern = std::move(h.pattern);
    c.found_at_query = h.found_at_query;
    list.push_back(std::move(c));
  }
  const Candidate& best = likelihood_select(list);
  DecodeResult r;
  r.codeword = best.codeword;
  r.message = multiply(r.codeword, code.right_inverse());
  r.pattern = best.pattern;
  r.soft_weight = best.soft_weight;
  r.queries = queries;
  r.list_size = list.size();
  return r;
}

BitVector recover_message(const BitVector& codeword, const LinearCode& code) {
  if (codeword.size() != code.n())
    throw ShapeError("codeword length " + std::to_string(codeword.size()) + " != n = " + std::to_string(code.n()));
  if (!code.is_codeword(codeword)) throw IntegrityError("vector is not a codeword of " + code.name());
  return multiply(codeword, code.right_inverse());
}

}  // namespace grand
