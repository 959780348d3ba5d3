#include "grand/bits.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>

namespace grand {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + BitVector::kWordBits - 1) / BitVector::kWordBits; }

}  // namespace

BitVector::BitVector(std::size_t size) : size_(size), words_(word_count(size), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
  std::size_t n = 0;
  for (char ch : bits) {
    if (ch == '0' || ch == '1')
      ++n;
    else if (ch != ' ' && ch != '\t' && ch != '\n' && ch != '\r')
      throw ParseError(std::string("invalid bit character '") + ch + "'");
  }
  BitVector v(n);
  std::size_t i = 0;
  for (char ch : bits) {
    if (ch == '0' || ch == '1') v.set(i++, ch == '1');
  }
  return v;
}

BitVector BitVector::from_bits(std::span<const std::uint8_t> bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw ParseError("bit value outside {0,1}");
    v.set(i, bits[i] != 0);
  }
  return v;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.size_ != size_)
    throw ShapeError("xor of vectors with lengths " + std::to_string(size_) + " and " +
                     std::to_string(other.size_));
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

bool lex_less(const BitVector& a, const BitVector& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.get(i) != b.get(i)) return !a.get(i);
  }
  return a.size() < b.size();
}

std::size_t BitVector::popcount() const noexcept {
  std::size_t count = 0;
  for (Word w : words_) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

bool BitVector::is_zero() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

bool BitVector::dot(const BitVector& other) const {
  if (other.size_ != size_) throw ShapeError("inner product of vectors with different lengths");
  Word acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
  return (std::popcount(acc) & 1) != 0;
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

std::ostream& operator<<(std::ostream& os, const BitVector& v) { return os << v.to_string(); }

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::from_rows(std::initializer_list<std::string_view> rows) {
  BitMatrix m;
  bool first = true;
  for (std::string_view r : rows) {
    BitVector v = BitVector::from_string(r);
    if (first) {
      m.cols_ = v.size();
      first = false;
    } else if (v.size() != m.cols_) {
      throw ShapeError("ragged matrix rows");
    }
    m.rows_.push_back(std::move(v));
  }
  return m;
}

BitVector BitMatrix::column(std::size_t c) const {
  BitVector v(rows());
  for (std::size_t r = 0; r < rows(); ++r) v.set(r, get(r, c));
  return v;
}

bool BitMatrix::is_zero() const noexcept {
  return std::all_of(rows_.begin(), rows_.end(), [](const BitVector& r) { return r.is_zero(); });
}

std::ostream& operator<<(std::ostream& os, const BitMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) os << m.row(r) << '\n';
  return os;
}

BitMatrix transpose(const BitMatrix& m) {
  BitMatrix t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) t.set(c, r);
  return t;
}

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows())
    throw ShapeError("matrix product " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " * " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t t = 0; t < a.cols(); ++t)
      if (a.get(i, t)) out.row(i) ^= b.row(t);
  return out;
}

BitVector multiply(const BitVector& v, const BitMatrix& m) {
  if (v.size() != m.rows())
    throw ShapeError("vector of length " + std::to_string(v.size()) + " times matrix with " +
                     std::to_string(m.rows()) + " rows");
  BitVector out(m.cols());
  for (std::size_t t = 0; t < v.size(); ++t)
    if (v.get(t)) out ^= m.row(t);
  return out;
}

BitVector syndrome(const BitMatrix& h, const BitVector& v) {
  if (h.cols() != v.size())
    throw ShapeError("syndrome: H has " + std::to_string(h.cols()) + " columns, vector has length " +
                     std::to_string(v.size()));
  BitVector s(h.rows());
  for (std::size_t r = 0; r < h.rows(); ++r) s.set(r, h.row(r).dot(v));
  return s;
}

EchelonForm row_reduce(BitMatrix m) {
  EchelonForm out;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    std::size_t r = pivot_row;
    while (r < m.rows() && !m.get(r, c)) ++r;
    if (r == m.rows()) continue;
    std::swap(m.row(r), m.row(pivot_row));
    for (std::size_t other = 0; other < m.rows(); ++other)
      if (other != pivot_row && m.get(other, c)) m.row(other) ^= m.row(pivot_row);
    out.pivot_cols.push_back(c);
    ++pivot_row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(BitMatrix m) { return row_reduce(std::move(m)).pivot_cols.size(); }

BitMatrix right_inverse(const BitMatrix& g) {
  const std::size_t k = g.rows();
  const std::size_t n = g.cols();
  // Reduce [G | I_k]; the pivot columns of G form an information set and the
  // right block then holds (G restricted to those columns)^-1.
  BitMatrix aug(k, n + k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < n; ++c)
      if (g.get(r, c)) aug.set(r, c);
    aug.set(r, n + r);
  }
  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < n && pivot_row < k; ++c) {
    std::size_t r = pivot_row;
    while (r < k && !aug.get(r, c)) ++r;
    if (r == k) continue;
    std::swap(aug.row(r), aug.row(pivot_row));
    for (std::size_t other = 0; other < k; ++other)
      if (other != pivot_row && aug.get(other, c)) aug.row(other) ^= aug.row(pivot_row);
    pivots.push_back(c);
    ++pivot_row;
  }
  if (pivots.size() < k)
    throw SingularMatrixError("generator has rank " + std::to_string(pivots.size()) + " < k = " +
                              std::to_string(k));
  // The right block B satisfies B * G_P = I for the pivot submatrix G_P, so
  // B = G_P^-1 and its row i becomes the Ginv row at position p_i.
  BitMatrix ginv(n, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (aug.get(i, n + j)) ginv.set(pivots[i], j);
  return ginv;
}

BitMatrix parity_check_from_generator(const BitMatrix& g) {
  const std::size_t k = g.rows();
  const std::size_t n = g.cols();
  EchelonForm ef = row_reduce(g);
  if (ef.pivot_cols.size() < k)
    throw SingularMatrixError("generator has rank " + std::to_string(ef.pivot_cols.size()) +
                              " < k = " + std::to_string(k));
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : ef.pivot_cols) is_pivot[c] = true;

  BitMatrix h(n - k, n);
  std::size_t hr = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    h.set(hr, f);
    for (std::size_t i = 0; i < k; ++i)
      if (ef.reduced.get(i, f)) h.set(hr, ef.pivot_cols[i]);
    ++hr;
  }
  return h;
}

void write_matrix(std::ostream& os, const BitMatrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << (m.get(r, c) ? '1' : '0');
    }
    os << '\n';
  }
}

namespace {

bool next_content_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

BitMatrix read_matrix(std::istream& is) {
  std::string line;
  if (!next_content_line(is, line)) throw ParseError("missing matrix header");
  std::istringstream header(line);
  long long rows = -1;
  long long cols = -1;
  std::string extra;
  if (!(header >> rows >> cols) || (header >> extra) || rows < 0 || cols <= 0)
    throw ParseError("bad matrix header '" + line + "'");
  BitMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (long long r = 0; r < rows; ++r) {
    if (!next_content_line(is, line))
      throw ParseError("matrix truncated after " + std::to_string(r) + " of " + std::to_string(rows) + " rows");
    std::istringstream row(line);
    std::string tok;
    long long c = 0;
    while (row >> tok) {
      if (tok != "0" && tok != "1") throw ParseError("bad entry '" + tok + "' in row " + std::to_string(r));
      if (c >= cols) throw ParseError("row " + std::to_string(r) + " has more than " + std::to_string(cols) + " entries");
      if (tok == "1") m.set(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      ++c;
    }
    if (c != cols)
      throw ParseError("row " + std::to_string(r) + " has " + std::to_string(c) + " entries, expected " +
                       std::to_string(cols));
  }
  return m;
}

}  // namespace grand

namespace grand {

SyndromeTable::SyndromeTable(const BitMatrix& h)
    : bits_(h.rows()), words_(std::max<std::size_t>(1, (h.rows() + 63) / 64)), cols_(h.cols()),
      columns_(h.cols() * words_, 0) {
  for (std::size_t r = 0; r < h.rows(); ++r)
    for (std::size_t c = 0; c < h.cols(); ++c)
      if (h.get(r, c)) columns_[c * words_ + r / 64] |= Word{1} << (r % 64);
}

void SyndromeTable::syndrome_of(const BitVector& v, std::span<Word> out) const {
  if (v.size() != cols_) throw ShapeError("syndrome table and vector lengths differ");
  std::fill(out.begin(), out.end(), Word{0});
  for (std::size_t c = 0; c < cols_; ++c) {
    if (!v.get(c)) continue;
    for (std::size_t w = 0; w < words_; ++w) out[w] ^= columns_[c * words_ + w];
  }
}

}  // namespace grand
