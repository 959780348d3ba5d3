#pragma once

// Packed bit vectors and bit matrices over GF(2).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "grand/errors.hpp"

namespace grand {

class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t size);
  /// Parses a string of '0'/'1' characters; whitespace is skipped.
  static BitVector from_string(std::string_view bits);
  static BitVector from_bits(std::span<const std::uint8_t> bits);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool get(std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }
  bool operator[](std::size_t i) const noexcept { return get(i); }
  void set(std::size_t i, bool value = true) noexcept {
    const Word mask = Word{1} << (i % kWordBits);
    if (value)
      words_[i / kWordBits] |= mask;
    else
      words_[i / kWordBits] &= ~mask;
  }
  void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend bool operator==(const BitVector& a, const BitVector& b) = default;
  /// Lexicographic comparison with position 0 most significant.
  friend bool lex_less(const BitVector& a, const BitVector& b);

  std::size_t popcount() const noexcept;
  bool is_zero() const noexcept;
  /// Parity of the bitwise AND, i.e. the GF(2) inner product.
  bool dot(const BitVector& other) const;

  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  std::string to_string() const;

 private:
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

std::ostream& operator<<(std::ostream& os, const BitVector& v);

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);
  static BitMatrix identity(std::size_t n);
  /// Rows given as '0'/'1' strings of equal length.
  static BitMatrix from_rows(std::initializer_list<std::string_view> rows);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const noexcept { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool value = true) noexcept { rows_[r].set(c, value); }

  const BitVector& row(std::size_t r) const noexcept { return rows_[r]; }
  BitVector& row(std::size_t r) noexcept { return rows_[r]; }
  BitVector column(std::size_t c) const;

  bool is_zero() const noexcept;
  friend bool operator==(const BitMatrix& a, const BitMatrix& b) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

std::ostream& operator<<(std::ostream& os, const BitMatrix& m);

BitMatrix transpose(const BitMatrix& m);
/// A·B over GF(2). Throws ShapeError when A.cols != B.rows.
BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);
/// Row vector times matrix, v·M.
BitVector multiply(const BitVector& v, const BitMatrix& m);
/// H·vᵀ. Throws ShapeError on length mismatch.
BitVector syndrome(const BitMatrix& h, const BitVector& v);

std::size_t rank(BitMatrix m);

/// Reduced row echelon form. Pivots are chosen by first available row,
/// scanning columns left to right; pivot column indices are returned.
struct EchelonForm {
  BitMatrix reduced;
  std::vector<std::size_t> pivot_cols;
};
EchelonForm row_reduce(BitMatrix m);

/// Ginv (n×k) with G·Ginv = I_k. Throws SingularMatrixError if rank(G) < k.
BitMatrix right_inverse(const BitMatrix& g);

/// H of rank n-k with H·Gᵀ = 0, columns in the original order of G.
/// Throws SingularMatrixError if rank(G) < k.
BitMatrix parity_check_from_generator(const BitMatrix& g);

/// H stored column by column as packed syndromes, so the syndrome of
/// v ⊕ e is the syndrome of v XOR the columns selected by e.
class SyndromeTable {
 public:
  using Word = BitVector::Word;

  SyndromeTable() = default;
  explicit SyndromeTable(const BitMatrix& h);

  std::size_t syndrome_bits() const noexcept { return bits_; }
  std::size_t words_per_column() const noexcept { return words_; }
  std::size_t columns() const noexcept { return cols_; }
  std::span<const Word> column(std::size_t c) const noexcept {
    return {columns_.data() + c * words_, words_};
  }
  /// Packed H·vᵀ written to out (words_per_column() words).
  void syndrome_of(const BitVector& v, std::span<Word> out) const;

 private:
  std::size_t bits_ = 0;
  std::size_t words_ = 0;
  std::size_t cols_ = 0;
  std::vector<Word> columns_;
};

// Plain-text matrix format: "rows cols" followed by one row per line of
// space-separated 0/1 entries.
void write_matrix(std::ostream& os, const BitMatrix& m);
/// Reads one matrix; lines starting with '#' are skipped. Throws ParseError.
BitMatrix read_matrix(std::istream& is);

}  // namespace grand
