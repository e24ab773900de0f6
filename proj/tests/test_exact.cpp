#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "regma/error.hpp"
#include "regma/exact.hpp"

using namespace regma;

namespace {

IntMatrix a_r10() {
  return IntMatrix{{1, 0, 0, 0, 0, -1, 1, 0, 0, 1},
                   {0, 1, 0, 0, 0, 1, -1, 1, 0, 0},
                   {0, 0, 1, 0, 0, 0, 1, -1, 1, 0},
                   {0, 0, 0, 1, 0, 0, 0, 1, -1, 1},
                   {0, 0, 0, 0, 1, 1, 0, 0, 1, -1}};
}

// Cofactor expansion; independent of the Bareiss code path.
Int cofactor_det(const IntMatrix& m) {
  int n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m.at(0, 0);
  Int s = 0;
  for (int j = 0; j < n; ++j) {
    if (m.at(0, j) == 0) continue;
    std::vector<int> rows, cols;
    for (int i = 1; i < n; ++i) rows.push_back(i);
    for (int k = 0; k < n; ++k)
      if (k != j) cols.push_back(k);
    Int sub = cofactor_det(m.select_rows(rows).select_cols(cols));
    s += (j % 2 ? -1 : 1) * m.at(0, j) * sub;
  }
  return s;
}

IntMatrix random_matrix(std::mt19937& rng, int r, int c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = d(rng);
  return m;
}

// Solves b * c = x over Q for full-column-rank b; nullopt if inconsistent.
std::optional<std::vector<Rat>> solve_q(const IntMatrix& b, const std::vector<Int>& x) {
  int r = b.rows(), c = b.cols();
  std::vector<std::vector<Rat>> a(r, std::vector<Rat>(c + 1));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) a[i][j] = b.at(i, j);
    a[i][c] = x[i];
  }
  int row = 0;
  std::vector<int> piv;
  for (int j = 0; j < c && row < r; ++j) {
    int p = -1;
    for (int i = row; i < r; ++i)
      if (a[i][j] != 0) p = i;
    if (p < 0) continue;
    std::swap(a[p], a[row]);
    for (int i = 0; i < r; ++i) {
      if (i == row || a[i][j] == 0) continue;
      Rat f = a[i][j] / a[row][j];
      for (int k = j; k <= c; ++k) a[i][k] -= f * a[row][k];
    }
    piv.push_back(j);
    ++row;
  }
  for (int i = row; i < r; ++i)
    if (a[i][c] != 0) return std::nullopt;
  std::vector<Rat> sol(c, 0);
  for (int i = 0; i < row; ++i) sol[piv[i]] = a[i][c] / a[i][piv[i]];
  return sol;
}

}  // namespace

TEST(Rat, CanonicalFormAndParsing) {
  EXPECT_EQ(to_string(parse_rat("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rat("-0/7")), "0");
  EXPECT_EQ(to_string(parse_rat("5")), "5");
  EXPECT_EQ(to_string(parse_rat("-2/4")), "-1/2");
  EXPECT_THROW(parse_rat("2/-4"), ParseError);
  EXPECT_THROW(parse_rat("1/0"), ParseError);
  EXPECT_THROW(parse_rat("x"), ParseError);
}

TEST(Det, Examples) {
  EXPECT_EQ(det(IntMatrix::identity(3)), 1);
  EXPECT_EQ(det(IntMatrix{{2, 0}, {0, 2}}), 4);
  EXPECT_EQ(det(a_r10().select_cols({0, 1, 2, 3, 4})), 1);
  EXPECT_THROW(det(IntMatrix(2, 3)), DimensionError);
}

TEST(Det, MatchesCofactorExpansionAndParity) {
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    IntMatrix m = random_matrix(rng, 6, 6, -9, 9);
    Int d = det(m);
    EXPECT_EQ(d, cofactor_det(m));
    bool odd = mpz_odd_p(d.get_mpz_t());
    EXPECT_EQ(odd, rank_f2(m.mod2()) == 6);
  }
}

TEST(Det, LargeEntriesUseBigIntegers) {
  IntMatrix m(2, 2);
  m.at(0, 0) = Int("123456789012345678901234567890");
  m.at(0, 1) = 3;
  m.at(1, 0) = 5;
  m.at(1, 1) = Int("98765432109876543210");
  EXPECT_EQ(det(m), cofactor_det(m));
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank_q(IntMatrix(2, 3)), 0);
  EXPECT_EQ(rank_q(a_r10()), 5);
  EXPECT_EQ(rank_q(IntMatrix{{1, 2}, {1, 2}}), 1);
  EXPECT_EQ(rank_f2(BitMatrix::identity(6)), 6);
  EXPECT_EQ(rank_f2(a_r10().mod2()), 5);
  EXPECT_EQ(rank_f2(BitMatrix::from_rows({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}})), 1);
  EXPECT_EQ(rank_q(IntMatrix{{2, 0}, {0, 2}}), 2);
  EXPECT_EQ(rank_f2(IntMatrix{{2, 0}, {0, 2}}.mod2()), 0);
}

TEST(OddDeterminant, Examples) {
  EXPECT_TRUE(odd_determinant_check(a_r10()).ok);
  // Signed incidence of K4 with vertex 0 deleted, edges in lex order.
  IntMatrix k4{{-1, 0, 0, 1, 1, 0}, {0, -1, 0, -1, 0, 1}, {0, 0, -1, 0, -1, -1}};
  EXPECT_TRUE(odd_determinant_check(k4).ok);
  IntMatrix fano{{1, 0, 0, 1, 1, 0, 1}, {0, 1, 0, 1, 0, 1, 1}, {0, 0, 1, 0, 1, 1, 1}};
  auto v = odd_determinant_check(fano);
  EXPECT_FALSE(v.ok);
  // Columns 3,4,5 = (1,1,0),(1,0,1),(0,1,1): determinant -2, the first even
  // nonzero subset in lex order.
  EXPECT_EQ(v.cols, (std::vector<int>{3, 4, 5}));
  EXPECT_EQ(v.determinant, -2);
  EXPECT_THROW(odd_determinant_check(IntMatrix{{1, 1}, {2, 2}}), RankError);
}

TEST(OddDeterminant, AgreesWithSubsetRankFormulation) {
  std::mt19937 rng(11);
  int agree_ok = 0, agree_bad = 0;
  for (int t = 0; t < 300; ++t) {
    IntMatrix h = random_matrix(rng, 3, 6, -2, 2);
    if (rank_q(h) < 3) continue;
    bool naive = true;
    std::vector<int> first;
    for (int a = 0; a < 6 && naive; ++a)
      for (int b = a + 1; b < 6 && naive; ++b)
        for (int c = b + 1; c < 6 && naive; ++c) {
          IntMatrix s = h.select_cols({a, b, c});
          if ((rank_q(s) == 3) != (rank_f2(s.mod2()) == 3)) {
            naive = false;
            first = {a, b, c};
          }
        }
    auto v = odd_determinant_check(h);
    EXPECT_EQ(v.ok, naive);
    if (!naive) {
      EXPECT_EQ(v.cols, first);
      ++agree_bad;
    } else {
      ++agree_ok;
    }
  }
  EXPECT_GT(agree_ok, 0);
  EXPECT_GT(agree_bad, 0);
}

TEST(Smith, Examples) {
  auto s = smith_normal_form(IntMatrix::identity(3));
  EXPECT_EQ(s.D, IntMatrix::identity(3));
  auto t = smith_normal_form(IntMatrix{{2, 4}, {6, 8}});
  EXPECT_EQ(t.D, (IntMatrix{{2, 0}, {0, 4}}));
  auto z = smith_normal_form(IntMatrix{{0}});
  EXPECT_EQ(z.D, (IntMatrix{{0}}));
}

TEST(Smith, RandomProperties) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> dim(1, 5);
  for (int t = 0; t < 150; ++t) {
    IntMatrix m = random_matrix(rng, dim(rng), dim(rng), -6, 6);
    auto s = smith_normal_form(m);
    EXPECT_EQ(s.U * m * s.V, s.D);
    EXPECT_EQ(abs(det(s.U)), 1);
    EXPECT_EQ(abs(det(s.V)), 1);
    int k = std::min(m.rows(), m.cols());
    for (int i = 0; i < s.D.rows(); ++i)
      for (int j = 0; j < s.D.cols(); ++j)
        if (i != j) EXPECT_EQ(s.D.at(i, j), 0);
    for (int i = 0; i + 1 < k; ++i) {
      EXPECT_GE(s.D.at(i, i), 0);
      if (s.D.at(i, i) != 0)
        EXPECT_TRUE(mpz_divisible_p(s.D.at(i + 1, i + 1).get_mpz_t(), s.D.at(i, i).get_mpz_t()));
      else
        EXPECT_EQ(s.D.at(i + 1, i + 1), 0);
    }
  }
}

TEST(Hermite, Shape) {
  IntMatrix h = hermite_normal_form(IntMatrix{{2, 3, 4}, {4, 6, 9}, {0, 0, 0}});
  EXPECT_EQ(h, (IntMatrix{{2, 3, 0}, {0, 0, 1}, {0, 0, 0}}));
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel_lattice_basis(IntMatrix{{1, -1}}), (IntMatrix{{1}, {1}}));
  EXPECT_EQ(kernel_lattice_basis(IntMatrix{{2, -2}}), (IntMatrix{{1}, {1}}));
  EXPECT_EQ(kernel_lattice_basis(IntMatrix{{1, 2}, {3, 4}}).cols(), 0);
}

TEST(Kernel, SpansEveryIntegerKernelVectorInBox) {
  std::mt19937 rng(5);
  for (int t = 0; t < 40; ++t) {
    IntMatrix m = random_matrix(rng, 2, 4, -3, 3);
    IntMatrix b = kernel_lattice_basis(m);
    EXPECT_TRUE((m * b).is_zero());
    EXPECT_EQ(b.cols(), 4 - rank_q(m));
    std::vector<Int> x(4);
    for (int i0 = -3; i0 <= 3; ++i0)
      for (int i1 = -3; i1 <= 3; ++i1)
        for (int i2 = -3; i2 <= 3; ++i2)
          for (int i3 = -3; i3 <= 3; ++i3) {
            x = {i0, i1, i2, i3};
            bool in_kernel = true;
            for (int r = 0; r < 2; ++r) {
              Int s = 0;
              for (int j = 0; j < 4; ++j) s += m.at(r, j) * x[j];
              if (s != 0) in_kernel = false;
            }
            if (!in_kernel) continue;
            auto c = solve_q(b, x);
            ASSERT_TRUE(c.has_value());
            for (const Rat& q : *c) EXPECT_EQ(q.get_den(), 1);
          }
  }
}

TEST(MatrixIO, RoundTrip) {
  IntMatrix m{{1, -2, 3}, {0, 5, -6}};
  std::stringstream ss;
  ss << m;
  EXPECT_EQ(parse_int_matrix(ss), m);
  BitMatrix b = BitMatrix::from_rows({{1, 0, 1}, {0, 1, 1}});
  std::stringstream sb;
  sb << b;
  EXPECT_EQ(parse_bit_matrix(sb), b);
  std::stringstream bad("2 2\n1 0\n");
  EXPECT_THROW(parse_int_matrix(bad), ParseError);
}
