#include "grand/galois.hpp"

#include <algorithm>
#include <string>

namespace grand {

namespace {

void trim(Gf2Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

}  // namespace

int poly_degree(const Gf2Poly& p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i]) return static_cast<int>(i);
  return -1;
}

Gf2Poly poly_multiply(const Gf2Poly& a, const Gf2Poly& b) {
  if (a.empty() || b.empty()) return {};
  Gf2Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] ^= b[j];
  }
  trim(out);
  return out;
}

Gf2Poly poly_mod(const Gf2Poly& a, const Gf2Poly& b) {
  const int db = poly_degree(b);
  if (db < 0) throw InvalidParameter("polynomial division by zero");
  Gf2Poly r = a;
  trim(r);
  for (int d = poly_degree(r); d >= db; d = poly_degree(r)) {
    const int shift = d - db;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(shift + j)] ^= b[static_cast<std::size_t>(j)];
    trim(r);
  }
  return r;
}

GaloisField::GaloisField(int m, std::uint32_t primitive_poly) : m_(m), poly_(primitive_poly) {
  if (m < 2 || m > 16) throw InvalidParameter("GF(2^m) requires 2 <= m <= 16, got m = " + std::to_string(m));
  if ((primitive_poly >> m) != 1U)
    throw InvalidParameter("primitive polynomial must have degree exactly " + std::to_string(m));
  order_ = (1U << m) - 1;
  exp_.assign(order_, 0);
  log_.assign(order_ + 1, 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < order_; ++i) {
    if (i > 0 && x == 1) throw InvalidParameter("polynomial is not primitive (alpha has order " + std::to_string(i) + ")");
    exp_[i] = x;
    log_[x] = i;
    x <<= 1;
    if (x & (1U << m)) x ^= primitive_poly;
  }
  if (x != 1) throw InvalidParameter("polynomial is not primitive");
}

std::uint32_t GaloisField::alpha_pow(long long e) const {
  long long r = e % static_cast<long long>(order_);
  if (r < 0) r += order_;
  return exp_[static_cast<std::size_t>(r)];
}

std::uint32_t GaloisField::log(std::uint32_t x) const {
  if (x == 0 || x > order_) throw InvalidParameter("log of zero or out-of-field element");
  return log_[x];
}

std::uint32_t GaloisField::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(log_[a] + log_[b]) % order_];
}

std::uint32_t GaloisField::eval_at_alpha_pow(const Gf2Poly& p, long long e) const {
  std::uint32_t acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i]) acc ^= alpha_pow(e * static_cast<long long>(i));
  return acc;
}

std::vector<std::uint32_t> GaloisField::cyclotomic_coset(long long e) const {
  long long r = e % static_cast<long long>(order_);
  if (r < 0) r += order_;
  std::vector<std::uint32_t> coset;
  auto x = static_cast<std::uint32_t>(r);
  do {
    coset.push_back(x);
    x = static_cast<std::uint32_t>((2ULL * x) % order_);
  } while (x != coset.front());
  return coset;
}

Gf2Poly GaloisField::minimal_polynomial(long long e) const {
  // prod over the coset of (x + alpha^j), computed with GF(2^m) coefficients
  std::vector<std::uint32_t> coeffs{1};
  for (std::uint32_t j : cyclotomic_coset(e)) {
    const std::uint32_t root = exp_[j];
    std::vector<std::uint32_t> next(coeffs.size() + 1, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i + 1] ^= coeffs[i];
      next[i] ^= mul(coeffs[i], root);
    }
    coeffs = std::move(next);
  }
  Gf2Poly out(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] > 1) throw InvalidParameter("minimal polynomial has a coefficient outside GF(2)");
    out[i] = static_cast<std::uint8_t>(coeffs[i]);
  }
  return out;
}

}  // namespace grand
