#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace regma {

using Int = mpz_class;
// mpq_class keeps num/den in lowest terms with den > 0 after every operation.
using Rat = mpq_class;

std::string to_string(const Rat& r);
Rat parse_rat(std::string_view s);

class BitMatrix;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  IntMatrix transpose() const;
  IntMatrix select_cols(const std::vector<int>& cols) const;
  IntMatrix select_rows(const std::vector<int>& rows) const;
  std::vector<Int> col(int j) const;
  BitMatrix mod2() const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> a_;
};

// Dense F2 matrix, each row packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols);
  static BitMatrix identity(int n);
  static BitMatrix from_rows(const std::vector<std::vector<int>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool get(int i, int j) const {
    return (bits_[static_cast<size_t>(i) * words_ + (j >> 6)] >> (j & 63)) & 1u;
  }
  void set(int i, int j, bool v);
  void flip(int i, int j);
  void add_row(int dst, int src);
  void swap_rows(int a, int b);

  // Column j as a bitmask over rows; requires rows <= 64.
  uint64_t col_mask(int j) const;
  BitMatrix transpose() const;
  BitMatrix select_cols(const std::vector<int>& cols) const;
  bool row_is_zero(int i) const;

  friend bool operator==(const BitMatrix& a, const BitMatrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  int words_ = 0;
  std::vector<uint64_t> bits_;
};

Int det(const IntMatrix& m);
int rank_q(const IntMatrix& m);
int rank_f2(const BitMatrix& m);
// Rank of a set of F2 vectors given as bitmasks.
int rank_f2_masks(std::vector<uint64_t> v);

struct OddDetVerdict {
  bool ok = true;
  std::vector<int> cols;  // first offending column subset in lex order
  Int determinant;
};

OddDetVerdict odd_determinant_check(const IntMatrix& h);

struct SmithForm {
  IntMatrix U, D, V;  // U * m * V == D
};

SmithForm smith_normal_form(const IntMatrix& m);

// Row-style Hermite normal form: upper echelon, positive pivots,
// entries above each pivot reduced into [0, pivot).
IntMatrix hermite_normal_form(const IntMatrix& m);

// Columns form a lattice basis of the integer kernel, canonical up to column HNF.
IntMatrix kernel_lattice_basis(const IntMatrix& m);

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);
std::ostream& operator<<(std::ostream& os, const BitMatrix& m);
IntMatrix parse_int_matrix(std::istream& in);
BitMatrix parse_bit_matrix(std::istream& in);

}  // namespace regma
