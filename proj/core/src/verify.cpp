#include "grand/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "grand/channel.hpp"
#include "grand/codes.hpp"
#include "grand/decoders.hpp"
#include "grand/errors.hpp"
#include "grand/oracle.hpp"

namespace grand {

void SuiteReport::fail(std::string what) {
  passed = false;
  if (counterexamples.size() < 5) counterexamples.push_back(std::move(what));
}

namespace {

constexpr std::size_t kMaxLogisticSuiteLength = 8;

std::string support_text(const std::vector<std::size_t>& support) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < support.size(); ++i) os << (i ? "," : "") << support[i];
  os << '}';
  return os.str();
}

bool weights_equal(double a, double b) { return std::fabs(a - b) <= 1e-9 * (1.0 + std::fabs(a) + std::fabs(b)); }

// Even trials draw Gaussian LLRs; odd trials round them to a coarse grid so
// that equal weights actually occur.
std::vector<double> trial_llr(std::size_t n, std::uint64_t seed, int trial) {
  FrameRng rng = make_frame_rng(seed, static_cast<std::uint64_t>(trial) * 1000 + n);
  GaussianSource gauss;
  std::vector<double> llr(n);
  for (double& v : llr) {
    v = 2.0 + 2.0 * gauss(rng);
    if (trial % 2 == 1) v = std::round(v);
  }
  return llr;
}

std::uint64_t mask_of(const std::vector<std::size_t>& support) {
  std::uint64_t m = 0;
  for (std::size_t i : support) m |= std::uint64_t{1} << i;
  return m;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"partitions", "logistic-order", "sgrand-ml", "ml-decode",
                                              "code-invariants"};
  return names;
}

SuiteReport run_suite(std::string_view name, const VerifyOptions& opts) {
  if (name == "partitions") return verify_partitions();
  if (name == "logistic-order") return verify_logistic_order(opts);
  if (name == "sgrand-ml") return verify_sgrand_prefix(opts);
  if (name == "ml-decode") return verify_ml_decode(opts);
  if (name == "code-invariants") return verify_code_invariants();
  throw InvalidParameter("unknown suite '" + std::string(name) + "'");
}

SuiteReport verify_partitions(int max_m) {
  SuiteReport rep;
  rep.name = "partitions";
  const int part_caps[] = {1, 2, 3, 5, 8, 13, 30};
  const int count_caps[] = {1, 2, 3, 4, 6, 30};
  for (int m = 0; m <= max_m; ++m) {
    for (int max_part : part_caps) {
      for (int max_parts : count_caps) {
        ++rep.cases;
        std::uint64_t streamed = 0;
        DistinctPartitionStream stream(m, max_part, max_parts);
        while (stream.next()) ++streamed;
        const std::uint64_t expected = count_distinct_partitions(m, max_part, max_parts);
        if (streamed != expected) {
          std::ostringstream os;
          os << "m=" << m << " max_part=" << max_part << " max_parts=" << max_parts << ": stream gave " << streamed
             << ", oracle counts " << expected;
          rep.fail(os.str());
        }
      }
    }
  }
  rep.summary = std::to_string(rep.cases) + " (m, caps) combinations checked";
  return rep;
}

std::vector<TestErrorPattern> orbgrand_full_order(const ReliabilityOrder& ord) {
  const std::size_t n = ord.size();
  OrbgrandStream stream(ord, max_logistic_weight(n), static_cast<int>(n));
  std::vector<TestErrorPattern> out;
  TestErrorPattern e;
  while (stream.next(e)) out.push_back(e);
  return out;
}

SuiteReport verify_logistic_order(const VerifyOptions& opts, const PatternSource& source) {
  SuiteReport rep;
  rep.name = "logistic-order";
  const std::size_t top = std::min(opts.n, kMaxLogisticSuiteLength);
  for (std::size_t n = 1; n <= top; ++n) {
    for (int trial = 0; trial < opts.trials; ++trial) {
      ++rep.cases;
      const auto llr = trial_llr(n, opts.seed, trial);
      const auto ranks = reference_ranks(llr);
      const ReliabilityOrder ord = sort_reliability(llr);
      const auto patterns = source(ord);
      const std::string where = "n=" + std::to_string(n) + " trial " + std::to_string(trial);

      if (patterns.size() != (std::size_t{1} << n))
        rep.fail(where + ": " + std::to_string(patterns.size()) + " patterns, expected " +
                 std::to_string(std::size_t{1} << n));
      std::set<std::uint64_t> seen;
      std::uint64_t previous = 0;
      for (std::size_t i = 0; i < patterns.size(); ++i) {
        const auto& e = patterns[i];
        std::uint64_t lw = 0;
        for (std::size_t p : e.support) lw += ranks[p];
        if (e.logistic_weight != lw) {
          rep.fail(where + " index " + std::to_string(i) + ": pattern " + support_text(e.support) + " reports LW " +
                   std::to_string(e.logistic_weight) + ", ranks give " + std::to_string(lw));
        }
        if (lw < previous) {
          rep.fail(where + " index " + std::to_string(i) + ": LW drops from " + std::to_string(previous) + " to " +
                   std::to_string(lw) + " at " + support_text(e.support));
        }
        previous = std::max(previous, lw);
        if (!seen.insert(mask_of(e.support)).second)
          rep.fail(where + ": pattern " + support_text(e.support) + " emitted twice");
      }
    }
  }
  rep.summary = std::to_string(rep.cases) + " reliability orders, lengths 1.." + std::to_string(top);
  return rep;
}

SuiteReport verify_sgrand_prefix(const VerifyOptions& opts) {
  SuiteReport rep;
  rep.name = "sgrand-ml";
  if (opts.n > OracleLimit{}.max_subset_bits)
    throw InvalidParameter("sgrand-ml suite supports n <= " + std::to_string(OracleLimit{}.max_subset_bits));
  for (std::size_t n = 1; n <= opts.n; ++n) {
    for (int trial = 0; trial < opts.trials; ++trial) {
      ++rep.cases;
      const auto llr = trial_llr(n, opts.seed, trial);
      const ReliabilityOrder ord = sort_reliability(llr);
      const auto oracle = sort_all_patterns(llr, PatternMetric::soft);
      const std::size_t len = std::min(opts.prefix, oracle.size());
      const std::string where = "n=" + std::to_string(n) + " trial " + std::to_string(trial);

      SgrandStream stream(ord);
      std::set<std::uint64_t> seen;
      TestErrorPattern e;
      for (std::size_t i = 0; i < len; ++i) {
        if (!stream.next(e)) {
          rep.fail(where + ": stream ended after " + std::to_string(i) + " patterns");
          break;
        }
        double w = 0.0;
        for (std::size_t p : e.support) w += std::fabs(llr[p]);
        if (!weights_equal(w, stream.current_soft_weight()))
          rep.fail(where + " index " + std::to_string(i) + ": reported weight " +
                   std::to_string(stream.current_soft_weight()) + " but support sums to " + std::to_string(w));
        if (!weights_equal(w, oracle[i].soft_weight)) {
          std::ostringstream os;
          os << where << " index " << i << ": SGRAND " << support_text(e.support) << " weight " << w << " vs oracle "
             << support_text(oracle[i].support) << " weight " << oracle[i].soft_weight;
          rep.fail(os.str());
        }
        if (!seen.insert(mask_of(e.support)).second)
          rep.fail(where + ": pattern " + support_text(e.support) + " emitted twice");
      }
    }
  }
  rep.summary = std::to_string(rep.cases) + " reliability orders, lengths 1.." + std::to_string(opts.n) +
                ", prefix " + std::to_string(opts.prefix);
  return rep;
}

SuiteReport verify_ml_decode(const VerifyOptions& opts) {
  SuiteReport rep;
  rep.name = "ml-decode";
  const LinearCode code = bch_code(4, 1);  // Hamming(15,11)
  ChannelConfig cfg;
  cfg.ebn0_db = opts.ebn0_db;
  cfg.rate = code.rate();
  cfg.seed = opts.seed;
  std::uint64_t sgrand_errors = 0;
  std::uint64_t ml_errors = 0;
  std::uint64_t ties = 0;
  for (std::uint64_t f = 0; f < opts.frames; ++f) {
    ++rep.cases;
    FrameRng rng = make_frame_rng(cfg.seed, f);
    const Frame frame = transmit_frame(code, cfg, rng);
    const DecodeResult sg = decode_sgrand(sort_reliability(frame.llr), code);
    const BitVector ml = ml_decode_bruteforce(frame.llr, code);
    sgrand_errors += sg.codeword != frame.codeword ? 1 : 0;
    ml_errors += ml != frame.codeword ? 1 : 0;
    if (sg.codeword == ml) continue;
    const double a = correlation_metric(sg.codeword, frame.llr);
    const double b = correlation_metric(ml, frame.llr);
    if (weights_equal(a, b)) {
      ++ties;
    } else {
      std::ostringstream os;
      os << "frame " << f << ": SGRAND " << sg.codeword.to_string() << " (metric " << a << ") vs ML "
         << ml.to_string() << " (metric " << b << ")";
      rep.fail(os.str());
    }
  }
  std::ostringstream os;
  os << opts.frames << " frames of " << code.name() << " at " << opts.ebn0_db << " dB; frame errors SGRAND "
     << sgrand_errors << ", ML " << ml_errors << "; equal-metric disagreements " << ties;
  rep.summary = os.str();
  return rep;
}

SuiteReport verify_code_invariants() {
  SuiteReport rep;
  rep.name = "code-invariants";
  struct Expected {
    const char* spec;
    std::size_t n;
    std::size_t k;
  };
  const Expected table[] = {
      {"bch:4:1", 15, 11},         {"bch:7:3", 127, 106},          {"bch:7:2", 127, 113},
      {"crc:128:0x1021", 128, 112}, {"crc:128:0xB2B117", 128, 104}, {"polar:128:105:0x621:11", 128, 105},
  };
  for (const Expected& x : table) {
    ++rep.cases;
    const LinearCode code = code_from_spec(x.spec);
    const std::string where = std::string(x.spec) + " (" + code.name() + ")";
    if (code.n() != x.n || code.k() != x.k)
      rep.fail(where + ": got (" + std::to_string(code.n()) + "," + std::to_string(code.k()) + "), expected (" +
               std::to_string(x.n) + "," + std::to_string(x.k) + ")");
    if (!multiply(code.parity_check(), transpose(code.generator())).is_zero()) rep.fail(where + ": H·Gᵀ != 0");
    if (!(multiply(code.generator(), code.right_inverse()) == BitMatrix::identity(code.k())))
      rep.fail(where + ": G·Ginv != I");
    if (rank(code.generator()) != code.k()) rep.fail(where + ": G is rank deficient");
    if (rank(code.parity_check()) != code.n() - code.k()) rep.fail(where + ": H is rank deficient");
  }
  rep.summary = std::to_string(rep.cases) + " codes checked";
  return rep;
}

}  // namespace grand
