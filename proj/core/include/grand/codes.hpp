#pragma once

// Binary linear block codes and the constructors for the code families the
// decoders are exercised on: CRC codes, narrow-sense binary BCH codes and
// CRC-aided polar codes.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grand/bits.hpp"
#include "grand/galois.hpp"

namespace grand {

/// An (n, k) code with generator G (k×n), parity-check H ((n-k)×n) and a
/// right inverse Ginv (n×k). Instances always satisfy H·Gᵀ = 0,
/// G·Ginv = I_k, rank(G) = k and rank(H) = n - k.
class LinearCode {
 public:
  /// Derives H and Ginv from G.
  static LinearCode from_generator(BitMatrix g, std::string name);
  /// Validates the supplied pair and derives Ginv. Throws CorruptCodeError.
  static LinearCode from_matrices(BitMatrix g, BitMatrix h, std::string name);

  std::size_t n() const noexcept { return g_.cols(); }
  std::size_t k() const noexcept { return g_.rows(); }
  double rate() const noexcept { return static_cast<double>(k()) / static_cast<double>(n()); }
  const std::string& name() const noexcept { return name_; }
  const BitMatrix& generator() const noexcept { return g_; }
  const BitMatrix& parity_check() const noexcept { return h_; }
  const BitMatrix& right_inverse() const noexcept { return ginv_; }

  BitVector encode(const BitVector& message) const { return multiply(message, g_); }
  bool is_codeword(const BitVector& v) const { return syndrome(h_, v).is_zero(); }
  const SyndromeTable& syndrome_table() const noexcept { return table_; }

 private:
  LinearCode(BitMatrix g, BitMatrix h, BitMatrix ginv, std::string name)
      : g_(std::move(g)), h_(std::move(h)), ginv_(std::move(ginv)), name_(std::move(name)), table_(h_) {}

  BitMatrix g_;
  BitMatrix h_;
  BitMatrix ginv_;
  std::string name_;
  SyndromeTable table_;
};

/// Generator polynomial g(x) of a CRC code with g_degree and g_0 both set.
class CrcPolynomial {
 public:
  /// Accepts a polynomial with explicit leading term.
  explicit CrcPolynomial(Gf2Poly coefficients);

  /// Hex literal with an implicit leading x^degree term, e.g. "0x1021" with
  /// degree 16 is x^16+x^12+x^5+1. When degree is omitted it is taken as four
  /// times the number of hex digits.
  static CrcPolynomial from_hex(std::string_view hex, std::optional<int> degree = std::nullopt);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const Gf2Poly& coefficients() const noexcept { return coeffs_; }
  /// Hex form without the leading term.
  std::string to_hex() const;

 private:
  Gf2Poly coeffs_;
};

/// Systematic code with codeword [message | message·x^r mod g(x)]; bit i of
/// the codeword is the coefficient of x^(n-1-i).
LinearCode cyclic_systematic_code(std::size_t n, const Gf2Poly& g, std::string name);

/// Throws InvalidParameter when degree >= n.
LinearCode crc_code(std::size_t n, const CrcPolynomial& poly);

/// Narrow-sense BCH generator: lcm of the minimal polynomials of
/// alpha, alpha^2, ..., alpha^(2t).
Gf2Poly bch_generator_polynomial(const GaloisField& field, int t);
/// Primitive-length binary BCH code, n = 2^m - 1, primitive polynomial from
/// the shipped table. Throws InvalidParameter for m outside [2, 10] or a
/// designed distance that leaves no information bits.
LinearCode bch_code(int m, int t);
LinearCode bch_code(const GaloisField& field, int t);

struct PolarSpec {
  std::size_t length = 0;                   // N, a power of two
  std::vector<std::size_t> info_indices;    // k + crc degree positions
  std::optional<CrcPolynomial> crc;         // outer CRC precoder
};

/// u·F^{⊗log2 N} in place with F = [[1,0],[1,1]].
void polar_transform(BitVector& u);

/// CRC-precodes k message bits, places them at the sorted info indices and
/// applies the Kronecker transform.
LinearCode polar_ca_code(const PolarSpec& spec);

/// The `count` most reliable indices below `length` in a reliability
/// sequence listed from least to most reliable, returned in ascending order.
std::vector<std::size_t> polar_info_indices(const std::vector<std::size_t>& reliability_sequence,
                                            std::size_t length, std::size_t count);

// Data-file assets.

/// Primitive polynomial table: lines "m 0xHEX" with the x^m term included.
std::map<int, std::uint32_t> load_primitive_polynomials(const std::filesystem::path& path);
std::uint32_t default_primitive_polynomial(int m);
/// Whitespace-separated reliability sequence; must be a permutation of 0..N-1.
std::vector<std::size_t> load_polar_sequence(const std::filesystem::path& path);
const std::vector<std::size_t>& default_polar_sequence();

// Code files: G in the matrix format, optionally followed by H.

void write_code(std::ostream& os, const LinearCode& code);
LinearCode read_code(std::istream& is, std::string name);
void save_code(const std::filesystem::path& path, const LinearCode& code);
/// Throws ParseError on malformed input and CorruptCodeError on invariant failure.
LinearCode load_code(const std::filesystem::path& path);

/// Builds a code from a compact reference:
///   crc:<n>:<hex>[:<degree>]  bch:<m>:<t>  polar:<N>:<k>[:<crc hex>:<crc degree>]
///   file:<path>
LinearCode code_from_spec(std::string_view spec);

}  // namespace grand
