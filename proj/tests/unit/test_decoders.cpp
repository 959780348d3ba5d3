#include <doctest.h>

#include <random>

#include "grand/channel.hpp"
#include "grand/codes.hpp"
#include "grand/decoder_spec.hpp"
#include "grand/decoders.hpp"
#include "grand/errors.hpp"

using namespace grand;

namespace {

BitVector random_vector(std::size_t n, std::mt19937_64& rng) {
  BitVector v(n);
  for (std::size_t i = 0; i < n; ++i)
    if (rng() & 1U) v.set(i);
  return v;
}

// LLRs of a noiseless codeword with distinct magnitudes 1..n (position i has magnitude n - i + 0.5).
std::vector<double> clean_llr(const BitVector& c) {
  std::vector<double> llr(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double mag = static_cast<double>(c.size() - i) + 0.5;
    llr[i] = c.get(i) ? -mag : mag;
  }
  return llr;
}

std::vector<double> noisy_llr(const LinearCode& code, double ebn0, std::uint64_t seed, std::uint64_t frame,
                              BitVector* sent = nullptr) {
  ChannelConfig cfg;
  cfg.ebn0_db = ebn0;
  cfg.rate = code.rate();
  cfg.seed = seed;
  FrameRng rng = make_frame_rng(seed, frame);
  Frame f = transmit_frame(code, cfg, rng);
  if (sent) *sent = f.codeword;
  return f.llr;
}

void check_result(const DecodeResult& r, const LinearCode& code, const ReliabilityOrder& ord) {
  if (r.abandoned) return;
  CHECK(code.is_codeword(r.codeword));
  BitVector e = ord.hard;
  e ^= r.codeword;
  CHECK(e == r.pattern.to_bits(code.n()));
  CHECK(r.message == multiply(r.codeword, code.right_inverse()));
  CHECK(r.soft_weight == doctest::Approx(soft_weight(r.pattern.support, ord.llr)).epsilon(1e-12));
}

LinearCode repetition(std::size_t n) {
  BitMatrix g(1, n);
  for (std::size_t i = 0; i < n; ++i) g.set(0, i);
  return LinearCode::from_generator(g, "Repetition");
}

}  // namespace

TEST_CASE("every decoder accepts a clean codeword with one query") {
  const LinearCode code = bch_code(5, 2);
  std::mt19937_64 rng(1);
  const BitVector u = random_vector(code.k(), rng);
  const BitVector c = code.encode(u);
  const ReliabilityOrder ord = sort_reliability(clean_llr(c));
  for (const DecodeResult& r : {decode_grandab(ord, code, 2), decode_orbgrand(ord, code, 100, 5),
                                decode_sgrand(ord, code), decode_lgrand(ord, code, LgrandParams{100, 5, 0})}) {
    CHECK_FALSE(r.abandoned);
    CHECK(r.queries == 1);
    CHECK(r.pattern.support.empty());
    CHECK(r.codeword == c);
    CHECK(r.message == u);
  }
}

TEST_CASE("GRANDAB corrects a single flip within 1 + n queries") {
  const LinearCode code = bch_code(4, 1);
  std::mt19937_64 rng(2);
  for (std::size_t pos = 0; pos < code.n(); ++pos) {
    const BitVector c = code.encode(random_vector(code.k(), rng));
    auto llr = clean_llr(c);
    llr[pos] = -llr[pos];
    const ReliabilityOrder ord = sort_reliability(llr);
    const DecodeResult r = decode_grandab(ord, code, 1);
    CHECK_FALSE(r.abandoned);
    CHECK(r.codeword == c);
    CHECK(r.queries == 2 + pos);
    CHECK(r.queries <= 1 + code.n());
  }
}

TEST_CASE("GRANDAB abandons after every pattern up to AB fails") {
  const LinearCode code = repetition(5);
  // 00111 is at distance 3 from 00000 and 2 from 11111
  const ReliabilityOrder ord = sort_reliability(std::vector<double>{1, 1, -1, -1, -1});
  const DecodeResult r = decode_grandab(ord, code, 1);
  CHECK(r.abandoned);
  CHECK(r.queries == 1 + 5);
  const DecodeResult r2 = decode_grandab(ord, code, 2);
  CHECK_FALSE(r2.abandoned);
  CHECK(r2.codeword == BitVector::from_string("11111"));
}

TEST_CASE("ORBGRAND finds a rank-one flip at the second query") {
  const LinearCode code = bch_code(5, 2);
  std::mt19937_64 rng(3);
  const BitVector c = code.encode(random_vector(code.k(), rng));
  auto llr = clean_llr(c);
  // position n-1 has the smallest magnitude; flip its sign
  llr[code.n() - 1] = -llr[code.n() - 1];
  const ReliabilityOrder ord = sort_reliability(llr);
  const DecodeResult r = decode_orbgrand(ord, code, 50, 4);
  CHECK(r.queries == 2);
  CHECK(r.codeword == c);
  CHECK(r.pattern.logistic_weight == 1);
}

TEST_CASE("ORBGRAND with the full pattern set always returns a codeword") {
  BitMatrix g = BitMatrix::from_rows({"1000110", "0100011", "0010111", "0001101"});
  const LinearCode code = LinearCode::from_generator(g, "Hamming(7,4)");
  std::mt19937_64 rng(4);
  std::normal_distribution<double> noise(0.0, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> llr(7);
    for (double& v : llr) v = noise(rng);
    const ReliabilityOrder ord = sort_reliability(llr);
    const DecodeResult r = decode_orbgrand(ord, code, 28, 7);
    CHECK_FALSE(r.abandoned);
    check_result(r, code, ord);
  }
}

TEST_CASE("SGRAND with budget one abandons a non-codeword") {
  const LinearCode code = bch_code(4, 1);
  auto llr = clean_llr(BitVector(15));
  llr[3] = -llr[3];
  const ReliabilityOrder ord = sort_reliability(llr);
  const DecodeResult r = decode_sgrand(ord, code, 1);
  CHECK(r.abandoned);
  CHECK(r.queries == 1);
}

TEST_CASE("LGRAND with delta zero and a single candidate matches ORBGRAND") {
  const LinearCode code = crc_code(64, CrcPolynomial::from_hex("0x1021"));
  std::mt19937_64 rng(5);
  int compared = 0;
  for (std::uint64_t f = 0; f < 300; ++f) {
    const auto llr = noisy_llr(code, 4.0, 99, f);
    const ReliabilityOrder ord = sort_reliability(llr);
    const DecodeResult o = decode_orbgrand(ord, code, 200, 8);
    const DecodeResult l = decode_lgrand(ord, code, LgrandParams{200, 8, 0});
    if (l.list_size != 1) continue;
    ++compared;
    CHECK(l.codeword == o.codeword);
    CHECK(l.pattern.support == o.pattern.support);
  }
  CHECK(compared > 200);
}

TEST_CASE("LGRAND on a clean frame with delta zero stops after weight zero") {
  const LinearCode code = bch_code(5, 2);
  const BitVector c = code.encode(BitVector(code.k()));
  const ReliabilityOrder ord = sort_reliability(clean_llr(c));
  LgrandTrace trace;
  const DecodeResult r = decode_lgrand(ord, code, LgrandParams{100, 5, 0}, &trace);
  CHECK(r.queries == 1);
  CHECK(r.list_size == 1);
  CHECK(r.codeword == c);
  CHECK(trace.final_state.lambda == 0);
  CHECK(trace.final_state.delta == 0);
}

TEST_CASE("LGRAND state changes once and clamps Lambda") {
  const ReliabilityOrder ord = sort_reliability(std::vector<double>{0.3, 0.1, 0.2, 0.5, 0.4});
  LgrandTrace trace;
  std::uint64_t queries = 0;
  int hits = 0;
  // every pattern of logistic weight 3 or 5 is a member
  const auto hits_list = list_search(
      ord, LgrandParams{15, 5, 100},
      [&](const IntegerPartition& p) {
        const bool member = p.sum() == 3 || p.sum() == 5;
        hits += member;
        return member;
      },
      queries, &trace);
  CHECK(trace.state_updates == 1);
  CHECK(trace.final_state.first_hit_weight == 3U);
  CHECK(trace.final_state.lambda == 15U);  // 3 + 100 clamped to n(n+1)/2
  CHECK(trace.final_state.delta == 1);    // [3] is the first partition of 3
  CHECK(hits_list.size() == static_cast<std::size_t>(hits));
  for (const ListHit& h : hits_list) CHECK(h.pattern.hamming_weight() <= 1);
}

TEST_CASE("per-frame ordering of SGRAND, LGRAND and ORBGRAND") {
  const LinearCode code = crc_code(64, CrcPolynomial::from_hex("0x1021"));
  for (std::uint64_t f = 0; f < 400; ++f) {
    const auto llr = noisy_llr(code, 3.0, 7, f);
    const ReliabilityOrder ord = sort_reliability(llr);
    const DecodeResult s = decode_sgrand(ord, code);
    const DecodeResult l = decode_lgrand(ord, code, LgrandParams{96, 8, 15});
    const DecodeResult o = decode_orbgrand(ord, code, 96, 8);
    check_result(s, code, ord);
    check_result(l, code, ord);
    check_result(o, code, ord);
    CHECK(l.queries >= o.queries);
    CHECK(l.abandoned == o.abandoned);
    if (o.abandoned) continue;
    CHECK(s.soft_weight <= l.soft_weight + 1e-12);
    CHECK(l.soft_weight <= o.soft_weight + 1e-12);
  }
}

TEST_CASE("LGRAND list contains the ORBGRAND answer") {
  const LinearCode code = bch_code(5, 2);
  for (std::uint64_t f = 0; f < 200; ++f) {
    const auto llr = noisy_llr(code, 3.0, 8, f);
    const ReliabilityOrder ord = sort_reliability(llr);
    const DecodeResult o = decode_orbgrand(ord, code, 96, 6);
    if (o.abandoned) continue;
    std::uint64_t q = 0;
    const auto hits = list_search(
        ord, LgrandParams{96, 6, 10},
        [&](const IntegerPartition& p) {
          BitVector v = ord.hard;
          for (int r : p.parts) v.flip(ord.ind[static_cast<std::size_t>(r) - 1]);
          return code.is_codeword(v);
        },
        q);
    REQUIRE_FALSE(hits.empty());
    CHECK(hits.front().pattern.support == o.pattern.support);
    CHECK(hits.front().found_at_query == o.queries);
  }
}

TEST_CASE("likelihood selection") {
  Candidate a;
  a.soft_weight = 0.9;
  a.found_at_query = 1;
  Candidate b;
  b.soft_weight = 0.5;
  b.found_at_query = 2;
  CHECK(likelihood_select({a}).found_at_query == 1);
  CHECK(likelihood_select({a, b}).found_at_query == 2);
  Candidate c = b;
  c.found_at_query = 3;
  CHECK(likelihood_select({b, c}).found_at_query == 2);
  CHECK_THROWS_AS(likelihood_select({}), InvalidParameter);
}

TEST_CASE("LGRAND parameter validation") {
  CHECK_THROWS_AS(validate(LgrandParams{8129, 8, 1}, 127), InvalidParameter);
  CHECK_THROWS_AS(validate(LgrandParams{96, 0, 1}, 127), InvalidParameter);
  CHECK_THROWS_AS(validate(LgrandParams{96, 128, 1}, 127), InvalidParameter);
  CHECK_NOTHROW(validate(LgrandParams{8128, 127, 0}, 127));
}

TEST_CASE("message recovery") {
  const LinearCode code = crc_code(128, CrcPolynomial::from_hex("0x1021"));
  CHECK(recover_message(BitVector(128), code).is_zero());
  BitVector bad(128);
  bad.set(5);
  CHECK_THROWS_AS(recover_message(bad, code), IntegrityError);
  CHECK_THROWS_AS(recover_message(BitVector(127), code), ShapeError);
}

TEST_CASE("decoded CRC(128,112) frames carry the message in the first 112 bits") {
  const LinearCode code = crc_code(128, CrcPolynomial::from_hex("0x1021"));
  for (std::uint64_t f = 0; f < 100; ++f) {
    BitVector sent;
    const auto llr = noisy_llr(code, 6.0, 3, f, &sent);
    const DecodeResult r = decode_orbgrand(sort_reliability(llr), code, 96, 8);
    if (r.abandoned) continue;
    for (std::size_t i = 0; i < 112; ++i) CHECK(r.message.get(i) == r.codeword.get(i));
  }
}

TEST_CASE("decoders work with syndromes wider than one word") {
  const LinearCode code = bch_code(7, 11);
  REQUIRE(code.n() - code.k() > 64);
  std::mt19937_64 rng(9);
  const BitVector c = code.encode(random_vector(code.k(), rng));
  auto llr = clean_llr(c);
  // the two least reliable positions but one
  llr[126] = -llr[126];
  llr[124] = -llr[124];
  const ReliabilityOrder ord = sort_reliability(llr);
  const DecodeResult r = decode_grandab(ord, code, 2);
  CHECK(r.codeword == c);
  CHECK(decode_sgrand(ord, code).codeword == c);
  CHECK(decode_orbgrand(ord, code, 200, 4).codeword == c);
}

TEST_CASE("decoder spec dispatch and descriptions") {
  const LinearCode code = bch_code(4, 1);
  CHECK(describe(GrandabParams{3}) == "GRANDAB(AB=3)");
  CHECK(describe(OrbgrandParams{96, 8}) == "ORBGRAND(LW_max=96,HW_max=8)");
  CHECK(describe(SgrandParams{}) == "SGRAND(budget=unlimited)");
  CHECK(describe(LgrandParams{96, 8, 15}) == "LGRAND(LW_max=96,HW_max=8,delta=15)");
  CHECK(describe(MlParams{}) == "ML");
  CHECK_THROWS_AS(validate(DecoderSpec{GrandabParams{16}}, code), InvalidParameter);
  CHECK_THROWS_AS(validate(DecoderSpec{OrbgrandParams{121, 3}}, code), InvalidParameter);
  CHECK_THROWS_AS(validate(DecoderSpec{SgrandParams{0}}, code), InvalidParameter);
  CHECK_THROWS_AS(validate(DecoderSpec{MlParams{}}, bch_code(7, 2)), InvalidParameter);

  const auto llr = noisy_llr(code, 2.0, 4, 0);
  const DecodeResult ml = decode(MlParams{}, llr, code);
  CHECK(ml.queries == 2048);
  CHECK(code.is_codeword(ml.codeword));
  CHECK(decode(SgrandParams{}, llr, code).codeword == ml.codeword);
}
