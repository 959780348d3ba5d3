#include "grand/codes.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "grand/data_files.hpp"

namespace grand {

namespace {

std::string code_label(std::string_view family, std::size_t n, std::size_t k) {
  return std::string(family) + "(" + std::to_string(n) + "," + std::to_string(k) + ")";
}

std::uint64_t parse_hex(std::string_view hex) {
  std::string_view digits = hex;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) digits.remove_prefix(2);
  if (digits.empty() || digits.size() > 16) throw InvalidParameter("bad hex literal '" + std::string(hex) + "'");
  std::uint64_t value = 0;
  for (char ch : digits) {
    int d;
    if (ch >= '0' && ch <= '9')
      d = ch - '0';
    else if (ch >= 'a' && ch <= 'f')
      d = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F')
      d = ch - 'A' + 10;
    else
      throw InvalidParameter("bad hex literal '" + std::string(hex) + "'");
    value = (value << 4) | static_cast<std::uint64_t>(d);
  }
  return value;
}

std::size_t hex_digit_count(std::string_view hex) {
  if (hex.size() > 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) return hex.size() - 2;
  return hex.size();
}

long long parse_int(std::string_view s, std::string_view what) {
  long long value = 0;
  std::size_t used = 0;
  try {
    value = std::stoll(std::string(s), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InvalidParameter("bad " + std::string(what) + " '" + std::string(s) + "'");
  return value;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

LinearCode LinearCode::from_generator(BitMatrix g, std::string name) {
  if (g.rows() == 0 || g.cols() == 0) throw InvalidParameter("generator must be non-empty");
  BitMatrix h = parity_check_from_generator(g);
  BitMatrix ginv = grand::right_inverse(g);
  if (!multiply(h, transpose(g)).is_zero()) throw CorruptCodeError("derived H violates H*G^T = 0");
  return LinearCode(std::move(g), std::move(h), std::move(ginv), std::move(name));
}

LinearCode LinearCode::from_matrices(BitMatrix g, BitMatrix h, std::string name) {
  if (g.rows() == 0 || g.cols() == 0) throw CorruptCodeError("generator must be non-empty");
  if (h.cols() != g.cols())
    throw CorruptCodeError("H has " + std::to_string(h.cols()) + " columns, G has " + std::to_string(g.cols()));
  const std::size_t n = g.cols();
  const std::size_t k = g.rows();
  if (h.rows() != n - k)
    throw CorruptCodeError("H has " + std::to_string(h.rows()) + " rows, expected n-k = " + std::to_string(n - k));
  BitMatrix ginv;
  try {
    ginv = grand::right_inverse(g);
  } catch (const SingularMatrixError& e) {
    throw CorruptCodeError(std::string("G is rank deficient: ") + e.what());
  }
  if (rank(h) != n - k) throw CorruptCodeError("H is rank deficient");
  if (!multiply(h, transpose(g)).is_zero()) throw CorruptCodeError("H*G^T != 0");
  return LinearCode(std::move(g), std::move(h), std::move(ginv), std::move(name));
}

CrcPolynomial::CrcPolynomial(Gf2Poly coefficients) : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.size() < 2) throw InvalidParameter("CRC polynomial must have degree >= 1");
  if (coeffs_.front() != 1) throw InvalidParameter("CRC polynomial must have a constant term");
  for (auto c : coeffs_)
    if (c > 1) throw InvalidParameter("CRC polynomial coefficients must be 0 or 1");
}

CrcPolynomial CrcPolynomial::from_hex(std::string_view hex, std::optional<int> degree) {
  const std::uint64_t low = parse_hex(hex);
  const int deg = degree.value_or(static_cast<int>(4 * hex_digit_count(hex)));
  if (deg < 1 || deg > 64) throw InvalidParameter("CRC degree must be in [1, 64]");
  if (deg < 64 && (low >> deg) != 0)
    throw InvalidParameter("hex literal " + std::string(hex) + " does not fit below x^" + std::to_string(deg));
  Gf2Poly coeffs(static_cast<std::size_t>(deg) + 1, 0);
  for (int i = 0; i < deg; ++i) coeffs[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((low >> i) & 1U);
  coeffs[static_cast<std::size_t>(deg)] = 1;
  return CrcPolynomial(std::move(coeffs));
}

std::string CrcPolynomial::to_hex() const {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  const int deg = degree();
  const int ndigits = (deg + 3) / 4;
  std::string out = "0x";
  for (int d = ndigits - 1; d >= 0; --d) {
    int nibble = 0;
    for (int b = 0; b < 4; ++b) {
      const int power = 4 * d + b;
      if (power < deg && coeffs_[static_cast<std::size_t>(power)]) nibble |= 1 << b;
    }
    out += kDigits[nibble];
  }
  return out;
}

LinearCode cyclic_systematic_code(std::size_t n, const Gf2Poly& g, std::string name) {
  const int r_signed = poly_degree(g);
  if (r_signed < 1) throw InvalidParameter("generator polynomial must have degree >= 1");
  const auto r = static_cast<std::size_t>(r_signed);
  if (r >= n)
    throw InvalidParameter("polynomial degree " + std::to_string(r) + " leaves no information bits at n = " +
                           std::to_string(n));
  if (g[0] != 1) throw InvalidParameter("generator polynomial must have a constant term");
  const std::size_t k = n - r;

  // remainders[e] = x^e mod g(x), as r coefficients (index = power)
  std::vector<std::vector<std::uint8_t>> remainders(n, std::vector<std::uint8_t>(r, 0));
  std::vector<std::uint8_t> cur(r, 0);
  cur[0] = 1;
  for (std::size_t e = 0; e < n; ++e) {
    remainders[e] = cur;
    const std::uint8_t carry = cur[r - 1];
    for (std::size_t i = r - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (carry)
      for (std::size_t i = 0; i < r; ++i) cur[i] ^= g[i];
  }

  BitMatrix gen(k, n);
  for (std::size_t i = 0; i < k; ++i) {
    gen.set(i, i);
    const auto& rem = remainders[n - 1 - i];
    for (std::size_t j = 0; j < r; ++j)
      if (rem[r - 1 - j]) gen.set(i, k + j);
  }
  if (name.empty()) name = code_label("Cyclic", n, k);
  return LinearCode::from_generator(std::move(gen), std::move(name));
}

LinearCode crc_code(std::size_t n, const CrcPolynomial& poly) {
  const auto r = static_cast<std::size_t>(poly.degree());
  if (r >= n)
    throw InvalidParameter("CRC degree " + std::to_string(r) + " must be below n = " + std::to_string(n));
  return cyclic_systematic_code(n, poly.coefficients(), code_label("CRC", n, n - r));
}

Gf2Poly bch_generator_polynomial(const GaloisField& field, int t) {
  if (t < 1) throw InvalidParameter("BCH correction capability t must be >= 1");
  std::set<std::uint32_t> seen;
  Gf2Poly g{1};
  for (long long i = 1; i <= 2LL * t; ++i) {
    const auto coset = field.cyclotomic_coset(i);
    if (seen.count(coset.front())) continue;
    seen.insert(coset.begin(), coset.end());
    g = poly_multiply(g, field.minimal_polynomial(i));
  }
  return g;
}

LinearCode bch_code(const GaloisField& field, int t) {
  const std::size_t n = field.order();
  const Gf2Poly g = bch_generator_polynomial(field, t);
  const int r = poly_degree(g);
  if (static_cast<std::size_t>(r) >= n)
    throw InvalidParameter("t = " + std::to_string(t) + " is too large for n = " + std::to_string(n));
  return cyclic_systematic_code(n, g, code_label("BCH", n, n - static_cast<std::size_t>(r)));
}

LinearCode bch_code(int m, int t) {
  if (m < 2 || m > 10) throw InvalidParameter("BCH extension degree m must be in [2, 10]");
  return bch_code(GaloisField(m, default_primitive_polynomial(m)), t);
}

void polar_transform(BitVector& u) {
  const std::size_t n = u.size();
  for (std::size_t h = 1; h < n; h *= 2)
    for (std::size_t i = 0; i < n; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j)
        if (u.get(j + h)) u.flip(j);
}

LinearCode polar_ca_code(const PolarSpec& spec) {
  const std::size_t big_n = spec.length;
  if (big_n < 2 || (big_n & (big_n - 1)) != 0)
    throw InvalidParameter("polar length " + std::to_string(big_n) + " is not a power of two");
  std::vector<std::size_t> info = spec.info_indices;
  std::sort(info.begin(), info.end());
  if (std::adjacent_find(info.begin(), info.end()) != info.end())
    throw InvalidParameter("duplicate polar info index");
  if (!info.empty() && info.back() >= big_n) throw InvalidParameter("polar info index out of range");
  const std::size_t crc_bits = spec.crc ? static_cast<std::size_t>(spec.crc->degree()) : 0;
  if (info.size() <= crc_bits)
    throw InvalidParameter("polar info set of size " + std::to_string(info.size()) +
                           " leaves no message bits after a " + std::to_string(crc_bits) + "-bit CRC");
  const std::size_t k = info.size() - crc_bits;

  BitMatrix precoder = spec.crc ? crc_code(info.size(), *spec.crc).generator() : BitMatrix::identity(k);

  BitMatrix g(k, big_n);
  for (std::size_t i = 0; i < k; ++i) {
    BitVector u(big_n);
    for (std::size_t j = 0; j < info.size(); ++j)
      if (precoder.get(i, j)) u.set(info[j]);
    polar_transform(u);
    g.row(i) = std::move(u);
  }
  std::string name = "Polar(" + std::to_string(big_n) + "," + std::to_string(k);
  if (crc_bits) name += "+" + std::to_string(crc_bits);
  name += ")";
  return LinearCode::from_generator(std::move(g), std::move(name));
}

std::vector<std::size_t> polar_info_indices(const std::vector<std::size_t>& reliability_sequence,
                                            std::size_t length, std::size_t count) {
  std::vector<std::size_t> filtered;
  for (std::size_t idx : reliability_sequence)
    if (idx < length) filtered.push_back(idx);
  if (filtered.size() != length)
    throw InvalidParameter("reliability sequence does not cover every index below " + std::to_string(length));
  if (count > length) throw InvalidParameter("more info bits than polar length");
  std::vector<std::size_t> info(filtered.end() - static_cast<std::ptrdiff_t>(count), filtered.end());
  std::sort(info.begin(), info.end());
  return info;
}

std::map<int, std::uint32_t> load_primitive_polynomials(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::map<int, std::uint32_t> table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int m = 0;
    std::string hex;
    if (!(ls >> m)) continue;
    if (!(ls >> hex)) throw ParseError(path.string() + ":" + std::to_string(lineno) + ": missing polynomial");
    const std::uint64_t value = parse_hex(hex);
    if ((value >> m) != 1U)
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": polynomial degree is not " + std::to_string(m));
    table[m] = static_cast<std::uint32_t>(value);
  }
  return table;
}

std::uint32_t default_primitive_polynomial(int m) {
  static const std::map<int, std::uint32_t> table = load_primitive_polynomials(data_path("primitive_polynomials.txt"));
  const auto it = table.find(m);
  if (it == table.end()) throw InvalidParameter("no primitive polynomial for m = " + std::to_string(m));
  return it->second;
}

std::vector<std::size_t> load_polar_sequence(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::vector<std::size_t> seq;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long v = 0;
    while (ls >> v) {
      if (v < 0) throw ParseError("negative index in reliability sequence");
      seq.push_back(static_cast<std::size_t>(v));
    }
    if (!ls.eof()) throw ParseError("non-numeric token in reliability sequence");
  }
  std::vector<std::size_t> sorted = seq;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw ParseError("reliability sequence is not a permutation of 0.." + std::to_string(seq.size() - 1));
  return seq;
}

const std::vector<std::size_t>& default_polar_sequence() {
  static const std::vector<std::size_t> seq = load_polar_sequence(data_path("nr_polar_reliability.txt"));
  return seq;
}

void write_code(std::ostream& os, const LinearCode& code) {
  write_matrix(os, code.generator());
  write_matrix(os, code.parity_check());
}

LinearCode read_code(std::istream& is, std::string name) {
  BitMatrix g = read_matrix(is);
  std::string rest;
  bool has_more = false;
  while (is >> std::ws && is.peek() != std::char_traits<char>::eof()) {
    if (is.peek() == '#') {
      std::getline(is, rest);
      continue;
    }
    has_more = true;
    break;
  }
  if (!has_more) {
    try {
      return LinearCode::from_generator(std::move(g), std::move(name));
    } catch (const SingularMatrixError& e) {
      throw CorruptCodeError(std::string("G is rank deficient: ") + e.what());
    }
  }
  BitMatrix h = read_matrix(is);
  return LinearCode::from_matrices(std::move(g), std::move(h), std::move(name));
}

void save_code(const std::filesystem::path& path, const LinearCode& code) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_code(out, code);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

LinearCode load_code(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_code(in, path.stem().string());
}

LinearCode code_from_spec(std::string_view spec) {
  if (spec.rfind("file:", 0) == 0) return load_code(std::filesystem::path(std::string(spec.substr(5))));
  const auto parts = split(spec, ':');
  const std::string& family = parts[0];
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo || parts.size() > hi)
      throw InvalidParameter("bad code reference '" + std::string(spec) + "'");
  };
  if (family == "crc") {
    need(3, 4);
    const long long n = parse_int(parts[1], "code length");
    if (n < 2) throw InvalidParameter("code length must be >= 2");
    std::optional<int> degree;
    if (parts.size() == 4) degree = static_cast<int>(parse_int(parts[3], "CRC degree"));
    return crc_code(static_cast<std::size_t>(n), CrcPolynomial::from_hex(parts[2], degree));
  }
  if (family == "bch") {
    need(3, 3);
    return bch_code(static_cast<int>(parse_int(parts[1], "m")), static_cast<int>(parse_int(parts[2], "t")));
  }
  if (family == "polar") {
    if (parts.size() != 3 && parts.size() != 5) throw InvalidParameter("bad code reference '" + std::string(spec) + "'");
    PolarSpec ps;
    const long long big_n = parse_int(parts[1], "polar length");
    const long long k = parse_int(parts[2], "message length");
    if (big_n < 2 || k < 1) throw InvalidParameter("bad polar parameters in '" + std::string(spec) + "'");
    ps.length = static_cast<std::size_t>(big_n);
    if (parts.size() == 5)
      ps.crc = CrcPolynomial::from_hex(parts[3], static_cast<int>(parse_int(parts[4], "CRC degree")));
    const std::size_t crc_bits = ps.crc ? static_cast<std::size_t>(ps.crc->degree()) : 0;
    ps.info_indices = polar_info_indices(default_polar_sequence(), ps.length, static_cast<std::size_t>(k) + crc_bits);
    return polar_ca_code(ps);
  }
  throw InvalidParameter("unknown code family '" + family + "' in '" + std::string(spec) + "'");
}

}  // namespace grand
