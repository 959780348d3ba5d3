#pragma once

#include <cstdint>
#include <vector>

#include "grand/errors.hpp"

namespace grand {

/// Binary polynomial, coefficient i holds the x^i term. Kept trimmed so the
/// last entry is the leading 1 (the zero polynomial is empty).
using Gf2Poly = std::vector<std::uint8_t>;

Gf2Poly poly_multiply(const Gf2Poly& a, const Gf2Poly& b);
/// Remainder of a modulo b (b nonzero).
Gf2Poly poly_mod(const Gf2Poly& a, const Gf2Poly& b);
int poly_degree(const Gf2Poly& p);  // -1 for the zero polynomial

/// GF(2^m) built from a primitive polynomial, elements as m-bit integers in
/// the polynomial basis.
class GaloisField {
 public:
  /// primitive_poly includes the x^m term (e.g. 0x89 for x^7+x^3+1).
  /// Throws InvalidParameter when the polynomial is not primitive of degree m.
  GaloisField(int m, std::uint32_t primitive_poly);

  int m() const noexcept { return m_; }
  std::uint32_t order() const noexcept { return order_; }  // 2^m - 1
  std::uint32_t primitive_poly() const noexcept { return poly_; }

  std::uint32_t alpha_pow(long long e) const;
  std::uint32_t log(std::uint32_t x) const;  // x != 0
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;

  /// Evaluates a binary polynomial at alpha^e.
  std::uint32_t eval_at_alpha_pow(const Gf2Poly& p, long long e) const;

  /// Minimal polynomial of alpha^e over GF(2), via its cyclotomic coset.
  Gf2Poly minimal_polynomial(long long e) const;
  std::vector<std::uint32_t> cyclotomic_coset(long long e) const;

 private:
  int m_;
  std::uint32_t poly_;
  std::uint32_t order_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

}  // namespace grand
