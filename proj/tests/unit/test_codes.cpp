#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "grand/codes.hpp"
#include "grand/data_files.hpp"
#include "grand/errors.hpp"

using namespace grand;

namespace {

BitVector random_vector(std::size_t n, std::mt19937_64& rng) {
  BitVector v(n);
  for (std::size_t i = 0; i < n; ++i)
    if (rng() & 1U) v.set(i);
  return v;
}

void check_invariants(const LinearCode& code) {
  CHECK(multiply(code.parity_check(), transpose(code.generator())).is_zero());
  CHECK(multiply(code.generator(), code.right_inverse()) == BitMatrix::identity(code.k()));
  CHECK(rank(code.generator()) == code.k());
  CHECK(rank(code.parity_check()) == code.n() - code.k());
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("grand_test_" + name);
}

}  // namespace

TEST_CASE("CRC hex literals carry an implicit leading term") {
  const CrcPolynomial p = CrcPolynomial::from_hex("0x1021");
  CHECK(p.degree() == 16);
  const Gf2Poly& c = p.coefficients();
  CHECK(c[16] == 1);
  CHECK(c[12] == 1);
  CHECK(c[5] == 1);
  CHECK(c[0] == 1);
  CHECK(std::count(c.begin(), c.end(), 1) == 4);
  CHECK(CrcPolynomial::from_hex("0xB2B117").degree() == 24);
  CHECK(CrcPolynomial::from_hex("0x621", 11).degree() == 11);
  CHECK(CrcPolynomial::from_hex("1021").to_hex() == "0x1021");
}

TEST_CASE("malformed CRC polynomials are rejected") {
  CHECK_THROWS_AS(CrcPolynomial::from_hex("0xZZ"), InvalidParameter);
  CHECK_THROWS_AS(CrcPolynomial::from_hex(""), InvalidParameter);
  CHECK_THROWS_AS(CrcPolynomial::from_hex("0x1020"), InvalidParameter);  // no constant term
  CHECK_THROWS_AS(CrcPolynomial::from_hex("0x1021", 8), InvalidParameter);
}

TEST_CASE("CRC codes of the experiments") {
  const LinearCode a = crc_code(128, CrcPolynomial::from_hex("0x1021"));
  CHECK(a.n() == 128);
  CHECK(a.k() == 112);
  CHECK(a.name() == "CRC(128,112)");
  check_invariants(a);
  const LinearCode b = crc_code(128, CrcPolynomial::from_hex("0xB2B117"));
  CHECK(b.k() == 104);
  check_invariants(b);
  CHECK(a.encode(BitVector(112)).is_zero());
  CHECK_THROWS_AS(crc_code(16, CrcPolynomial::from_hex("0x1021")), InvalidParameter);
}

TEST_CASE("CRC codewords are the message followed by its remainder") {
  const LinearCode code = crc_code(40, CrcPolynomial::from_hex("0x07", 8));  // x^8+x^2+x+1
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const BitVector u = random_vector(code.k(), rng);
    const BitVector c = code.encode(u);
    // message bits come first
    for (std::size_t i = 0; i < code.k(); ++i) CHECK(c.get(i) == u.get(i));
    // remainder by long division of u(x)·x^8, highest power first
    std::vector<int> work(40, 0);
    for (std::size_t i = 0; i < code.k(); ++i) work[i] = u.get(i);
    const int g[9] = {1, 0, 0, 0, 0, 0, 1, 1, 1};
    for (std::size_t i = 0; i < code.k(); ++i)
      if (work[i])
        for (std::size_t j = 0; j < 9; ++j) work[i + j] ^= g[j];
    for (std::size_t j = 0; j < 8; ++j) CHECK(c.get(code.k() + j) == static_cast<bool>(work[code.k() + j]));
  }
}

TEST_CASE("BCH codes of the experiments") {
  const LinearCode a = bch_code(7, 3);
  CHECK(a.n() == 127);
  CHECK(a.k() == 106);
  check_invariants(a);
  const LinearCode b = bch_code(7, 2);
  CHECK(b.k() == 113);
  check_invariants(b);
  const LinearCode h = bch_code(4, 1);
  CHECK(h.n() == 15);
  CHECK(h.k() == 11);
  CHECK_THROWS_AS(bch_code(11, 1), InvalidParameter);
  CHECK_THROWS_AS(bch_code(3, 0), InvalidParameter);
  CHECK_THROWS_AS(bch_code(3, 4), InvalidParameter);
}

TEST_CASE("BCH codes are cyclic") {
  const LinearCode code = bch_code(5, 2);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const BitVector c = code.encode(random_vector(code.k(), rng));
    BitVector shifted(code.n());
    for (std::size_t i = 0; i < code.n(); ++i)
      if (c.get(i)) shifted.set((i + 1) % code.n());
    CHECK(code.is_codeword(shifted));
  }
}

TEST_CASE("BCH(15,7) has minimum distance 5") {
  const LinearCode code = bch_code(4, 2);
  REQUIRE(code.k() == 7);
  std::size_t min_weight = code.n();
  for (std::uint32_t m = 1; m < (1U << code.k()); ++m) {
    BitVector u(code.k());
    for (std::size_t i = 0; i < code.k(); ++i)
      if ((m >> i) & 1U) u.set(i);
    min_weight = std::min(min_weight, code.encode(u).popcount());
  }
  CHECK(min_weight == 5);
}

TEST_CASE("polar transform is an involution") {
  std::mt19937_64 rng(12);
  for (std::size_t n : {2U, 8U, 64U, 128U}) {
    const BitVector u = random_vector(n, rng);
    BitVector v = u;
    polar_transform(v);
    polar_transform(v);
    CHECK(v == u);
  }
}

TEST_CASE("two-bit polar code repeats its message bit") {
  PolarSpec spec;
  spec.length = 2;
  spec.info_indices = {1};
  const LinearCode code = polar_ca_code(spec);
  CHECK(code.k() == 1);
  CHECK(code.encode(BitVector::from_string("1")) == BitVector::from_string("11"));
}

TEST_CASE("polar length must be a power of two") {
  PolarSpec spec;
  spec.length = 3;
  spec.info_indices = {2};
  CHECK_THROWS_AS(polar_ca_code(spec), InvalidParameter);
  spec.length = 4;
  spec.info_indices = {4};
  CHECK_THROWS_AS(polar_ca_code(spec), InvalidParameter);
}

TEST_CASE("CRC-aided polar code (128,105+11)") {
  const LinearCode code = code_from_spec("polar:128:105:0x621:11");
  CHECK(code.n() == 128);
  CHECK(code.k() == 105);
  CHECK(code.name() == "Polar(128,105+11)");
  check_invariants(code);

  const auto info = polar_info_indices(default_polar_sequence(), 128, 116);
  REQUIRE(info.size() == 116);
  const std::set<std::size_t> info_set(info.begin(), info.end());
  const LinearCode crc = crc_code(116, CrcPolynomial::from_hex("0x621", 11));
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const BitVector u = random_vector(105, rng);
    BitVector v = code.encode(u);
    polar_transform(v);  // back to the input side
    BitVector placed(116);
    for (std::size_t i = 0; i < 128; ++i) {
      if (!info_set.count(i)) {
        CHECK_FALSE(v.get(i));  // frozen
      }
    }
    for (std::size_t j = 0; j < info.size(); ++j)
      if (v.get(info[j])) placed.set(j);
    CHECK(placed == crc.encode(u));
  }
}

TEST_CASE("polar info set takes the most reliable indices below N") {
  const auto& seq = default_polar_sequence();
  CHECK(seq.size() == 1024);
  const auto info = polar_info_indices(seq, 8, 4);
  // the NR order restricted to indices below 8 is 0 1 2 4 3 5 6 7
  CHECK(info == std::vector<std::size_t>{3, 5, 6, 7});
  CHECK_THROWS_AS(polar_info_indices(seq, 8, 9), InvalidParameter);
}

TEST_CASE("reliability sequence loader validates permutations") {
  const auto path = temp_file("bad_sequence.txt");
  {
    std::ofstream f(path);
    f << "0 1 1 3\n";
  }
  CHECK_THROWS_AS(load_polar_sequence(path), ParseError);
  std::filesystem::remove(path);
}

TEST_CASE("encode then recover through the right inverse") {
  std::mt19937_64 rng(21);
  for (const char* spec : {"crc:128:0x1021", "crc:128:0xB2B117", "bch:7:3", "bch:7:2", "polar:128:105:0x621:11"}) {
    const LinearCode code = code_from_spec(spec);
    for (int trial = 0; trial < 1000; ++trial) {
      const BitVector u = random_vector(code.k(), rng);
      REQUIRE(multiply(code.encode(u), code.right_inverse()) == u);
    }
  }
}

TEST_CASE("code files round trip") {
  const LinearCode code = crc_code(128, CrcPolynomial::from_hex("0x1021"));
  const auto path = temp_file("crc.txt");
  save_code(path, code);
  const LinearCode back = load_code(path);
  CHECK(back.generator() == code.generator());
  CHECK(back.parity_check() == code.parity_check());
  CHECK(back.right_inverse() == code.right_inverse());
  std::filesystem::remove(path);
}

TEST_CASE("code file with inconsistent H is corrupt") {
  const LinearCode code = bch_code(4, 1);
  std::stringstream ss;
  BitMatrix h = code.parity_check();
  h.row(0).flip(0);
  write_matrix(ss, code.generator());
  write_matrix(ss, h);
  CHECK_THROWS_AS(read_code(ss, "corrupt"), CorruptCodeError);
}

TEST_CASE("generator-only Hamming(7,4) file") {
  std::stringstream ss("4 7\n1 0 0 0 1 1 0\n0 1 0 0 0 1 1\n0 0 1 0 1 1 1\n0 0 0 1 1 0 1\n");
  const LinearCode code = read_code(ss, "Hamming(7,4)");
  CHECK(code.parity_check().rows() == 3);
  std::set<std::uint32_t> encoded;
  for (std::uint32_t m = 0; m < 16; ++m) {
    BitVector u(4);
    for (std::size_t i = 0; i < 4; ++i)
      if ((m >> i) & 1U) u.set(i);
    const BitVector c = code.encode(u);
    std::uint32_t packed = 0;
    for (std::size_t i = 0; i < 7; ++i) packed |= static_cast<std::uint32_t>(c.get(i)) << i;
    encoded.insert(packed);
  }
  // exactly the 16 encodings have zero syndrome
  int members = 0;
  for (std::uint32_t v = 0; v < 128; ++v) {
    BitVector x(7);
    for (std::size_t i = 0; i < 7; ++i)
      if ((v >> i) & 1U) x.set(i);
    if (code.is_codeword(x)) {
      ++members;
      CHECK(encoded.count(v) == 1);
    }
  }
  CHECK(members == 16);
}

TEST_CASE("code references") {
  CHECK(code_from_spec("crc:128:0x1021").k() == 112);
  CHECK(code_from_spec("bch:4:1").k() == 11);
  CHECK(code_from_spec("polar:8:4").k() == 4);
  CHECK_THROWS_AS(code_from_spec("ldpc:1:2"), InvalidParameter);
  CHECK_THROWS_AS(code_from_spec("crc:x:0x1021"), InvalidParameter);
  CHECK_THROWS_AS(code_from_spec("bch:7"), InvalidParameter);
  CHECK_THROWS_AS(code_from_spec("file:/nonexistent/code.txt"), ParseError);
}

TEST_CASE("data files are found") {
  CHECK(std::filesystem::exists(data_path("primitive_polynomials.txt")));
  CHECK(std::filesystem::exists(data_path("nr_polar_reliability.txt")));
  CHECK(version_string().rfind("grand ", 0) == 0);
}
