#include "regma/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "regma/error.hpp"

namespace regma {

bool guard_override() {
  const char* v = std::getenv("REGMA_GUARD_OVERRIDE");
  return v != nullptr && *v != '\0' && std::string(v) != "0";
}

std::string to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat parse_rat(std::string_view s) {
  std::string t(s);
  auto trim = [](std::string& x) {
    size_t a = x.find_first_not_of(" \t\r\n");
    size_t b = x.find_last_not_of(" \t\r\n");
    x = (a == std::string::npos) ? std::string() : x.substr(a, b - a + 1);
  };
  trim(t);
  if (t.empty()) throw ParseError("empty rational");
  auto valid_int = [](const std::string& x) {
    size_t i = (!x.empty() && (x[0] == '-' || x[0] == '+')) ? 1 : 0;
    if (i == x.size()) return false;
    for (; i < x.size(); ++i)
      if (x[i] < '0' || x[i] > '9') return false;
    return true;
  };
  size_t slash = t.find('/');
  std::string num = t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("malformed rational '" + t + "'");
  Int d(den);
  if (d == 0) throw ParseError("zero denominator in '" + t + "'");
  Rat r(Int(num), d);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Int(0)) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
  a_.reserve(static_cast<size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw DimensionError("ragged matrix literal");
    for (long x : r) a_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw DimensionError("ragged rows");
    for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::select_cols(const std::vector<int>& cols) const {
  IntMatrix s(rows_, static_cast<int>(cols.size()));
  for (int i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols.size(); ++k) s.at(i, static_cast<int>(k)) = at(i, cols[k]);
  return s;
}

IntMatrix IntMatrix::select_rows(const std::vector<int>& rows) const {
  IntMatrix s(static_cast<int>(rows.size()), cols_);
  for (size_t k = 0; k < rows.size(); ++k)
    for (int j = 0; j < cols_; ++j) s.at(static_cast<int>(k), j) = at(rows[k], j);
  return s;
}

std::vector<Int> IntMatrix::col(int j) const {
  std::vector<Int> c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

BitMatrix IntMatrix::mod2() const {
  BitMatrix b(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (mpz_odd_p(at(i, j).get_mpz_t())) b.set(i, j, true);
  return b;
}

bool IntMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Int& x = a.at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols_; ++j) c.at(i, j) += x * b.at(k, j);
    }
  return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix::BitMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64),
      bits_(static_cast<size_t>(rows) * ((cols + 63) / 64), 0) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
}

BitMatrix BitMatrix::identity(int n) {
  BitMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  BitMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw DimensionError("ragged rows");
    for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j] & 1);
  }
  return m;
}

void BitMatrix::set(int i, int j, bool v) {
  uint64_t& w = bits_[static_cast<size_t>(i) * words_ + (j >> 6)];
  uint64_t bit = uint64_t{1} << (j & 63);
  w = v ? (w | bit) : (w & ~bit);
}

void BitMatrix::flip(int i, int j) {
  bits_[static_cast<size_t>(i) * words_ + (j >> 6)] ^= uint64_t{1} << (j & 63);
}

void BitMatrix::add_row(int dst, int src) {
  for (int w = 0; w < words_; ++w)
    bits_[static_cast<size_t>(dst) * words_ + w] ^= bits_[static_cast<size_t>(src) * words_ + w];
}

void BitMatrix::swap_rows(int a, int b) {
  for (int w = 0; w < words_; ++w)
    std::swap(bits_[static_cast<size_t>(a) * words_ + w], bits_[static_cast<size_t>(b) * words_ + w]);
}

uint64_t BitMatrix::col_mask(int j) const {
  if (rows_ > 64) throw DimensionError("col_mask needs at most 64 rows");
  uint64_t m = 0;
  for (int i = 0; i < rows_; ++i)
    if (get(i, j)) m |= uint64_t{1} << i;
  return m;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (get(i, j)) t.set(j, i, true);
  return t;
}

BitMatrix BitMatrix::select_cols(const std::vector<int>& cols) const {
  BitMatrix s(rows_, static_cast<int>(cols.size()));
  for (int i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols.size(); ++k)
      if (get(i, cols[k])) s.set(i, static_cast<int>(k), true);
  return s;
}

bool BitMatrix::row_is_zero(int i) const {
  for (int w = 0; w < words_; ++w)
    if (bits_[static_cast<size_t>(i) * words_ + w]) return false;
  return true;
}

bool operator==(const BitMatrix& a, const BitMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.bits_ == b.bits_;
}

// ---------------------------------------------------------------- determinants

namespace {

// Bareiss on machine integers. Every intermediate is a minor, so the caller
// must guarantee the Hadamard bound fits comfortably in 62 bits.
long long det_small(std::vector<long long> a, int n) {
  long long prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k * n + k] == 0) {
      int p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    long long piv = a[k * n + k];
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        __int128 v = static_cast<__int128>(a[i * n + j]) * piv -
                     static_cast<__int128>(a[i * n + k]) * a[k * n + j];
        a[i * n + j] = static_cast<long long>(v / prev);
      }
    prev = piv;
  }
  return sign * a[(n - 1) * n + (n - 1)];
}

Int det_big(std::vector<Int> a, int n) {
  Int prev = 1;
  int sign = 1;
  Int t;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k * n + k] == 0) {
      int p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    const Int piv = a[k * n + k];
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        t = a[i * n + j] * piv - a[i * n + k] * a[k * n + j];
        mpz_divexact(a[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = piv;
  }
  Int r = a[(n - 1) * n + (n - 1)];
  return sign < 0 ? Int(-r) : r;
}

bool hadamard_small(const IntMatrix& m) {
  double logb = 0;
  for (int i = 0; i < m.rows(); ++i) {
    double s = 0;
    for (int j = 0; j < m.cols(); ++j) {
      if (!m.at(i, j).fits_slong_p()) return false;
      double x = m.at(i, j).get_d();
      s += x * x;
    }
    if (s > 0) logb += 0.5 * std::log2(s);
  }
  return logb < 60.0;
}

}  // namespace

Int det(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("det of non-square matrix");
  int n = m.rows();
  if (n == 0) return 1;
  if (hadamard_small(m)) {
    std::vector<long long> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[i * n + j] = m.at(i, j).get_si();
    return Int(static_cast<long>(det_small(std::move(a), n)));
  }
  std::vector<Int> a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i * n + j] = m.at(i, j);
  return det_big(std::move(a), n);
}

int rank_q(const IntMatrix& m) {
  int r = m.rows(), c = m.cols();
  std::vector<Int> a(static_cast<size_t>(r) * c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) a[i * c + j] = m.at(i, j);
  Int prev = 1, t;
  int rank = 0;
  for (int col = 0; col < c && rank < r; ++col) {
    int p = rank;
    while (p < r && a[p * c + col] == 0) ++p;
    if (p == r) continue;
    if (p != rank)
      for (int j = 0; j < c; ++j) std::swap(a[p * c + j], a[rank * c + j]);
    const Int piv = a[rank * c + col];
    for (int i = rank + 1; i < r; ++i) {
      for (int j = col + 1; j < c; ++j) {
        t = a[i * c + j] * piv - a[i * c + col] * a[rank * c + j];
        mpz_divexact(a[i * c + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * c + col] = 0;
    }
    prev = piv;
    ++rank;
  }
  return rank;
}

int rank_f2(const BitMatrix& m0) {
  BitMatrix m = m0;
  int rank = 0;
  for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
    int p = rank;
    while (p < m.rows() && !m.get(p, col)) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, rank);
    for (int i = 0; i < m.rows(); ++i)
      if (i != rank && m.get(i, col)) m.add_row(i, rank);
    ++rank;
  }
  return rank;
}

int rank_f2_masks(std::vector<uint64_t> v) {
  int rank = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    uint64_t x = v[i];
    if (!x) continue;
    ++rank;
    uint64_t low = x & (~x + 1);
    for (size_t j = i + 1; j < v.size(); ++j)
      if (v[j] & low) v[j] ^= x;
  }
  return rank;
}

// ---------------------------------------------------------------- odd determinants

namespace {

struct OddDetSearch {
  const IntMatrix& h;
  int d, n;
  std::vector<uint64_t> masks;
  std::vector<int> chosen;
  std::vector<uint64_t> basis;
  std::vector<int> pivot;
  bool small;
  OddDetVerdict verdict;

  bool leaf() {
    IntMatrix sub = h.select_cols(chosen);
    Int dv;
    if (small) {
      std::vector<long long> a(static_cast<size_t>(d) * d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a[i * d + j] = sub.at(i, j).get_si();
      dv = Int(static_cast<long>(det_small(std::move(a), d)));
    } else {
      dv = det(sub);
    }
    if (dv == 0) return false;
    // F2 rank < d, so a nonzero determinant here is even.
    verdict.ok = false;
    verdict.cols = chosen;
    verdict.determinant = dv;
    return true;
  }

  bool rec(int start, int depth, bool dependent) {
    if (depth == d) return dependent ? leaf() : false;
    for (int c = start; c <= n - (d - depth); ++c) {
      chosen[depth] = c;
      bool dep = dependent;
      if (!dep) {
        uint64_t v = masks[c];
        for (int k = 0; k < depth; ++k)
          if ((v >> pivot[k]) & 1u) v ^= basis[k];
        if (v == 0) {
          dep = true;
        } else {
          basis[depth] = v;
          pivot[depth] = 63 - std::countl_zero(v);
        }
      }
      if (rec(c + 1, depth + 1, dep)) return true;
    }
    return false;
  }
};

double log2_binom(int n, int k) {
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) / std::log(2.0);
}

}  // namespace

OddDetVerdict odd_determinant_check(const IntMatrix& h) {
  int d = h.rows(), n = h.cols();
  if (rank_q(h) != d)
    throw RankError("odd_determinant_check: weight matrix does not have full row rank");
  if (d == 0) return {};
  if (d > 64) throw DimensionError("odd_determinant_check supports at most 64 rows");
  if (log2_binom(n, d) > 28.0 && !guard_override())
    throw GuardError("odd_determinant_check: too many column subsets");
  OddDetSearch s{h, d, n, {}, std::vector<int>(d), std::vector<uint64_t>(d), std::vector<int>(d),
                 hadamard_small(h), {}};
  BitMatrix b = h.mod2();
  s.masks.resize(n);
  for (int j = 0; j < n; ++j) s.masks[j] = b.col_mask(j);
  s.rec(0, 0, false);
  return s.verdict;
}

// ---------------------------------------------------------------- Smith / Hermite

namespace {

void row_axpy(IntMatrix& m, int dst, int src, const Int& q) {
  // row dst -= q * row src
  for (int j = 0; j < m.cols(); ++j)
    if (m.at(src, j) != 0) m.at(dst, j) -= q * m.at(src, j);
}

void col_axpy(IntMatrix& m, int dst, int src, const Int& q) {
  for (int i = 0; i < m.rows(); ++i)
    if (m.at(i, src) != 0) m.at(i, dst) -= q * m.at(i, src);
}

void swap_rows(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(IntMatrix& m, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

void negate_row(IntMatrix& m, int r) {
  for (int j = 0; j < m.cols(); ++j) m.at(r, j) = -m.at(r, j);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  int r = m.rows(), c = m.cols();
  IntMatrix A = m, U = IntMatrix::identity(r), V = IntMatrix::identity(c);
  Int q;
  for (int t = 0; t < std::min(r, c); ++t) {
    for (;;) {
      int bi = -1, bj = -1;
      for (int i = t; i < r; ++i)
        for (int j = t; j < c; ++j)
          if (A.at(i, j) != 0 && (bi < 0 || abs(A.at(i, j)) < abs(A.at(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi < 0) goto done;
      swap_rows(A, t, bi);
      swap_rows(U, t, bi);
      swap_cols(A, t, bj);
      swap_cols(V, t, bj);
      bool clean = true;
      for (int i = t + 1; i < r; ++i) {
        if (A.at(i, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), A.at(i, t).get_mpz_t(), A.at(t, t).get_mpz_t());
        row_axpy(A, i, t, q);
        row_axpy(U, i, t, q);
        if (A.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < c; ++j) {
        if (A.at(t, j) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), A.at(t, j).get_mpz_t(), A.at(t, t).get_mpz_t());
        col_axpy(A, j, t, q);
        col_axpy(V, j, t, q);
        if (A.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < r && bad < 0; ++i)
        for (int j = t + 1; j < c; ++j)
          if (A.at(i, j) % A.at(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      // Fold the offending row into the pivot row; the next pass shrinks the pivot.
      row_axpy(A, t, bad, Int(-1));
      row_axpy(U, t, bad, Int(-1));
    }
    if (A.at(t, t) < 0) {
      negate_row(A, t);
      negate_row(U, t);
    }
  }
done:
  return {U, A, V};
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix H = m;
  int rows = H.rows(), cols = H.cols();
  int r = 0;
  Int q;
  for (int col = 0; col < cols && r < rows; ++col) {
    for (;;) {
      int best = -1;
      for (int i = r; i < rows; ++i)
        if (H.at(i, col) != 0 && (best < 0 || abs(H.at(i, col)) < abs(H.at(best, col)))) best = i;
      if (best < 0) break;
      swap_rows(H, r, best);
      bool clean = true;
      for (int i = r + 1; i < rows; ++i) {
        if (H.at(i, col) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), H.at(i, col).get_mpz_t(), H.at(r, col).get_mpz_t());
        row_axpy(H, i, r, q);
        if (H.at(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H.at(r, col) == 0) continue;
    if (H.at(r, col) < 0) negate_row(H, r);
    for (int i = 0; i < r; ++i) {
      mpz_fdiv_q(q.get_mpz_t(), H.at(i, col).get_mpz_t(), H.at(r, col).get_mpz_t());
      if (q != 0) row_axpy(H, i, r, q);
    }
    ++r;
  }
  return H;
}

IntMatrix kernel_lattice_basis(const IntMatrix& m) {
  int c = m.cols();
  if (m.rows() == 0) return IntMatrix::identity(c);
  SmithForm s = smith_normal_form(m);
  int rank = 0;
  for (int i = 0; i < std::min(m.rows(), c); ++i)
    if (s.D.at(i, i) != 0) ++rank;
  std::vector<int> kcols;
  for (int j = rank; j < c; ++j) kcols.push_back(j);
  IntMatrix B = s.V.select_cols(kcols);
  if (B.cols() == 0) return B;
  return hermite_normal_form(B.transpose()).transpose();
}

// ---------------------------------------------------------------- I/O

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m.at(i, j).get_str();
    os << '\n';
  }
  return os;
}

std::ostream& operator<<(std::ostream& os, const BitMatrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << (m.get(i, j) ? 1 : 0);
    os << '\n';
  }
  return os;
}

namespace {

void read_header(std::istream& in, int& r, int& c) {
  if (!(in >> r >> c) || r < 0 || c < 0) throw ParseError("expected 'rows cols' header");
}

}  // namespace

IntMatrix parse_int_matrix(std::istream& in) {
  int r, c;
  read_header(in, r, c);
  IntMatrix m(r, c);
  std::string tok;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      if (!(in >> tok)) throw ParseError("matrix ended early");
      try {
        m.at(i, j) = Int(tok);
      } catch (const std::invalid_argument&) {
        throw ParseError("bad integer '" + tok + "'");
      }
    }
  return m;
}

BitMatrix parse_bit_matrix(std::istream& in) {
  int r, c;
  read_header(in, r, c);
  BitMatrix m(r, c);
  std::string tok;
  for (int i = 0; i < r; ++i) {
    int j = 0;
    while (j < c) {
      if (!(in >> tok)) throw ParseError("bit matrix ended early");
      for (char ch : tok) {
        if (ch != '0' && ch != '1') throw ParseError("bad bit '" + tok + "'");
        if (j >= c) throw ParseError("row too long");
        m.set(i, j++, ch == '1');
      }
    }
  }
  return m;
}

}  // namespace regma
