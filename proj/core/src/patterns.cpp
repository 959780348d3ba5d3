#include "grand/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "grand/errors.hpp"

namespace grand {

double ReliabilityOrder::magnitude_at_rank(std::size_t r) const noexcept { return std::fabs(llr[ind[r - 1]]); }

ReliabilityOrder sort_reliability(std::span<const double> llr) {
  if (llr.empty()) throw InvalidParameter("empty LLR vector");
  ReliabilityOrder ord;
  ord.llr.assign(llr.begin(), llr.end());
  ord.hard = BitVector(llr.size());
  for (std::size_t i = 0; i < llr.size(); ++i) {
    if (!std::isfinite(llr[i])) throw InvalidParameter("non-finite LLR at position " + std::to_string(i));
    if (llr[i] < 0) ord.hard.set(i);
  }
  ord.ind.resize(llr.size());
  std::iota(ord.ind.begin(), ord.ind.end(), std::size_t{0});
  std::stable_sort(ord.ind.begin(), ord.ind.end(),
                   [&](std::size_t a, std::size_t b) { return std::fabs(llr[a]) < std::fabs(llr[b]); });
  ord.rank.resize(llr.size());
  for (std::size_t r = 0; r < ord.ind.size(); ++r) ord.rank[ord.ind[r]] = r + 1;
  return ord;
}

int IntegerPartition::sum() const noexcept { return std::accumulate(parts.begin(), parts.end(), 0); }

namespace {

// Whether `remainder` is a sum of at most `slots` distinct parts from
// {1..bound}; those sums cover 0..(top `slots` parts) without gaps.
bool fillable(long long remainder, long long bound, long long slots) {
  if (remainder == 0) return true;
  if (remainder < 0 || bound <= 0 || slots <= 0) return false;
  const long long c = std::min(slots, bound);
  return remainder <= c * bound - c * (c - 1) / 2;
}

}  // namespace

DistinctPartitionStream::DistinctPartitionStream(int m, int max_part, int max_parts)
    : m_(m), max_part_(max_part), max_parts_(max_parts) {
  if (m < 0) throw InvalidParameter("partitioned integer must be >= 0");
}

bool DistinctPartitionStream::fill_greedy(int remainder, int bound, int slots) {
  if (!fillable(remainder, bound, slots)) return false;
  while (remainder > 0) {
    const int p = std::min(bound, remainder);
    current_.parts.push_back(p);
    remainder -= p;
    bound = p - 1;
  }
  return true;
}

const IntegerPartition* DistinctPartitionStream::next() {
  if (done_) return nullptr;
  if (!started_) {
    started_ = true;
    current_.parts.clear();
    if (!fill_greedy(m_, max_part_, max_parts_)) {
      done_ = true;
      return nullptr;
    }
    return &current_;
  }
  // Reverse-lexicographic successor: decrement the rightmost part that still
  // admits a completion, then complete greedily with the largest parts.
  auto& parts = current_.parts;
  int prefix = std::accumulate(parts.begin(), parts.end(), 0);
  for (std::size_t j = parts.size(); j-- > 0;) {
    prefix -= parts[j];
    if (static_cast<int>(j) + 1 > max_parts_) continue;
    const int v = parts[j] - 1;
    if (v < 1) continue;
    const int remainder = m_ - prefix - v;
    const int slots = max_parts_ - static_cast<int>(j) - 1;
    if (!fillable(remainder, v - 1, slots)) continue;
    parts.resize(j);
    parts.push_back(v);
    fill_greedy(remainder, v - 1, slots);
    return &current_;
  }
  done_ = true;
  return nullptr;
}

std::vector<IntegerPartition> distinct_partitions(int m, int max_part, int max_parts) {
  std::vector<IntegerPartition> out;
  DistinctPartitionStream stream(m, max_part, max_parts);
  while (const IntegerPartition* p = stream.next()) out.push_back(*p);
  return out;
}

BitVector TestErrorPattern::to_bits(std::size_t n) const {
  BitVector v(n);
  for (std::size_t i : support) v.set(i);
  return v;
}

double soft_weight(std::span<const std::size_t> support, std::span<const double> llr) {
  double total = 0.0;
  for (std::size_t i : support) total += std::fabs(llr[i]);
  return total;
}

double soft_weight(const TestErrorPattern& e, std::span<const double> llr) { return soft_weight(e.support, llr); }

std::uint64_t logistic_weight(std::span<const std::size_t> support, const ReliabilityOrder& ord) {
  std::uint64_t lw = 0;
  for (std::size_t i : support) lw += ord.rank[i];
  return lw;
}

void annotate(TestErrorPattern& e, const ReliabilityOrder& ord) {
  e.logistic_weight = logistic_weight(e.support, ord);
  e.soft_weight = soft_weight(e.support, ord.llr);
}

TestErrorPattern pattern_from_partition(const IntegerPartition& p, const ReliabilityOrder& ord) {
  TestErrorPattern e;
  e.support.reserve(p.parts.size());
  for (int part : p.parts) {
    if (part < 1 || static_cast<std::size_t>(part) > ord.size())
      throw InvalidParameter("partition part " + std::to_string(part) + " outside [1, " + std::to_string(ord.size()) + "]");
    e.support.push_back(ord.ind[static_cast<std::size_t>(part) - 1]);
  }
  std::sort(e.support.begin(), e.support.end());
  e.logistic_weight = static_cast<std::uint64_t>(p.sum());
  e.soft_weight = soft_weight(e.support, ord.llr);
  return e;
}

GrandabStream::GrandabStream(std::size_t n, std::size_t max_weight) : n_(n), max_weight_(max_weight) {
  if (max_weight > n) throw InvalidParameter("abandonment weight exceeds code length");
}

const std::vector<std::size_t>* GrandabStream::next_support() {
  if (done_) return nullptr;
  if (!started_) {
    started_ = true;
    support_.clear();
    return &support_;
  }
  const std::size_t w = support_.size();
  // advance to the next combination of the same size
  for (std::size_t j = w; j-- > 0;) {
    if (support_[j] < n_ - (w - j)) {
      ++support_[j];
      for (std::size_t t = j + 1; t < w; ++t) support_[t] = support_[t - 1] + 1;
      return &support_;
    }
  }
  if (w + 1 > max_weight_) {
    done_ = true;
    return nullptr;
  }
  support_.resize(w + 1);
  std::iota(support_.begin(), support_.end(), std::size_t{0});
  return &support_;
}

bool GrandabStream::next(TestErrorPattern& out) {
  const auto* s = next_support();
  if (!s) return false;
  out.support = *s;
  out.logistic_weight = 0;
  out.soft_weight = 0.0;
  return true;
}

OrbgrandStream::OrbgrandStream(const ReliabilityOrder& ord, std::uint64_t lw_max, int hamming_cap)
    : ord_(&ord), limit_(lw_max), cap_(hamming_cap), parts_(0, static_cast<int>(ord.size()), hamming_cap) {
  if (lw_max > max_logistic_weight(ord.size()))
    throw InvalidParameter("LW_max " + std::to_string(lw_max) + " exceeds n(n+1)/2 = " +
                           std::to_string(max_logistic_weight(ord.size())));
  if (hamming_cap < 1) throw InvalidParameter("Hamming weight cap must be >= 1");
}

void OrbgrandStream::set_hamming_cap(int cap) noexcept {
  cap_ = cap;
  parts_.set_max_parts(cap);
}

const IntegerPartition* OrbgrandStream::next_partition() {
  while (true) {
    if (const IntegerPartition* p = parts_.next()) return p;
    if (weight_ >= limit_) return nullptr;
    ++weight_;
    parts_ = DistinctPartitionStream(static_cast<int>(weight_), static_cast<int>(ord_->size()), cap_);
  }
}

bool OrbgrandStream::next(TestErrorPattern& out) {
  const IntegerPartition* p = next_partition();
  if (!p) return false;
  out.support.clear();
  for (int part : p->parts) out.support.push_back(ord_->ind[static_cast<std::size_t>(part) - 1]);
  std::sort(out.support.begin(), out.support.end());
  out.logistic_weight = weight_;
  out.soft_weight = soft_weight(out.support, ord_->llr);
  return true;
}

SgrandStream::SgrandStream(const ReliabilityOrder& ord, std::uint64_t budget) : ord_(&ord), budget_(budget) {
  if (budget == 0) throw InvalidParameter("SGRAND budget must be >= 1");
  nodes_.push_back(Node{0, 0, 0, 0.0});
  heap_.push_back(0);
}

void SgrandStream::collect_ranks(std::uint32_t node, std::vector<std::size_t>& out) const {
  out.clear();
  while (node != 0) {
    out.push_back(nodes_[node].last);
    node = nodes_[node].prefix;
  }
  std::reverse(out.begin(), out.end());
}

bool SgrandStream::before(std::uint32_t a, std::uint32_t b) const {
  const Node& na = nodes_[a];
  const Node& nb = nodes_[b];
  if (na.weight != nb.weight) return na.weight < nb.weight;
  if (na.hamming != nb.hamming) return na.hamming < nb.hamming;
  collect_ranks(a, scratch_a_);
  collect_ranks(b, scratch_b_);
  return scratch_a_ < scratch_b_;
}

void SgrandStream::push(std::uint32_t prefix, std::uint32_t last, std::uint32_t hw) {
  const double w = nodes_[prefix].weight + ord_->magnitude_at_rank(last);
  nodes_.push_back(Node{prefix, last, hw, w});
  heap_.push_back(static_cast<std::uint32_t>(nodes_.size() - 1));
  std::push_heap(heap_.begin(), heap_.end(), [this](std::uint32_t x, std::uint32_t y) { return before(y, x); });
}

const std::vector<std::size_t>* SgrandStream::next_ranks() {
  if (heap_.empty() || emitted_ >= budget_) return nullptr;
  const auto cmp = [this](std::uint32_t x, std::uint32_t y) { return before(y, x); };
  std::pop_heap(heap_.begin(), heap_.end(), cmp);
  const std::uint32_t top = heap_.back();
  heap_.pop_back();
  ++emitted_;

  const Node node = nodes_[top];
  weight_ = node.weight;
  const auto n = static_cast<std::uint32_t>(ord_->size());
  if (node.last < n) {
    push(top, node.last + 1, node.hamming + 1);
    if (node.last >= 1) push(node.prefix, node.last + 1, node.hamming);
  }
  collect_ranks(top, ranks_);
  return &ranks_;
}

bool SgrandStream::next(TestErrorPattern& out) {
  const auto* ranks = next_ranks();
  if (!ranks) return false;
  out.support.clear();
  for (std::size_t r : *ranks) out.support.push_back(ord_->ind[r - 1]);
  std::sort(out.support.begin(), out.support.end());
  out.logistic_weight = 0;
  for (std::size_t r : *ranks) out.logistic_weight += r;
  out.soft_weight = soft_weight(out.support, ord_->llr);
  return true;
}

}  // namespace grand
