#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "schublc/sparse.hpp"

using namespace schublc;

namespace {

using Dense = std::vector<std::vector<long long>>;

// Leibniz determinant, fine up to 5x5.
long long det(const Dense& m) {
  std::vector<int> perm(m.size());
  std::iota(perm.begin(), perm.end(), 0);
  long long total = 0;
  do {
    long long term = 1;
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      term *= m[i][static_cast<std::size_t>(perm[i])];
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    }
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Largest r with a nonzero r x r minor.
int rank_by_minors(const Dense& m, int rows, int cols) {
  for (int r = std::min(rows, cols); r > 0; --r) {
    std::vector<bool> rs(static_cast<std::size_t>(rows)), cs(static_cast<std::size_t>(cols));
    std::fill(rs.begin(), rs.begin() + r, true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + r, true);
      do {
        Dense sub;
        for (int i = 0; i < rows; ++i) {
          if (!rs[static_cast<std::size_t>(i)]) continue;
          sub.emplace_back();
          for (int j = 0; j < cols; ++j) {
            if (cs[static_cast<std::size_t>(j)]) sub.back().push_back(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
          }
        }
        if (det(sub) != 0) return r;
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
  }
  return 0;
}

SparseMatrix to_sparse(const Dense& d, int rows, int cols) {
  SparseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m.add(i, j, d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  return m;
}

}  // namespace

TEST(SparseMatrix, AddCancelsToZero) {
  SparseMatrix m(2, 3);
  m.add(0, 1, 4);
  m.add(0, 1, -4);
  EXPECT_TRUE(m.is_zero());
  m.add(1, 2, -1);
  EXPECT_EQ(m.at(1, 2), -1);
  EXPECT_EQ(m.nonzeros(), 1u);
  EXPECT_THROW(m.add(2, 0, 1), Error);
}

TEST(SparseMatrix, TransposeAndMultiply) {
  SparseMatrix m(2, 2);
  m.add(0, 0, 1);
  m.add(0, 1, 2);
  m.add(1, 1, 3);
  auto t = m.transpose();
  EXPECT_EQ(t.at(1, 0), 2);
  auto p = m.multiply(t);  // [[5,6],[6,9]]
  EXPECT_EQ(p.at(0, 0), 5);
  EXPECT_EQ(p.at(0, 1), 6);
  EXPECT_EQ(p.at(1, 1), 9);
  EXPECT_THROW(m.multiply(SparseMatrix(3, 1)), Error);
}

TEST(Rank, SmallCases) {
  EXPECT_EQ(rank_checked(SparseMatrix(0, 0)), 0);
  EXPECT_EQ(rank_checked(SparseMatrix(3, 4)), 0);
  SparseMatrix m(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m.add(i, j, i + j + 1);  // rank 2
  }
  EXPECT_EQ(rank_checked(m), 2);
}

TEST(Rank, SmallPrimeSeesTorsion) {
  SparseMatrix m(2, 2);
  m.add(0, 0, 2);
  m.add(1, 1, 2);
  EXPECT_EQ(rank_exact(m), 2);
  EXPECT_EQ(rank_mod_prime(m, 2), 0);
  EXPECT_EQ(rank_mod_prime(m, 3), 2);
}

TEST(Rank, LargeEntriesStayExact) {
  // rows (1, N), (N, N*N + 1): determinant 1 although entries overflow 32 bits
  const std::int64_t N = 3000000007LL;
  SparseMatrix m(2, 2);
  m.add(0, 0, 1);
  m.add(0, 1, N);
  m.add(1, 0, N);
  m.add(1, 1, N * 100 + 1);
  EXPECT_EQ(rank_checked(m), 2);
}

TEST(Rank, MatchesMinorsOnRandomMatrices) {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 400; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 5);
    int cols = 1 + static_cast<int>(rng() % 5);
    Dense d(static_cast<std::size_t>(rows), std::vector<long long>(static_cast<std::size_t>(cols)));
    // sparse, small entries, frequent dependencies
    for (auto& row : d) {
      for (auto& v : row) v = rng() % 3 == 0 ? static_cast<long long>(rng() % 5) - 2 : 0;
    }
    if (rows > 2 && trial % 3 == 0) {
      for (int j = 0; j < cols; ++j) d[2][static_cast<std::size_t>(j)] = d[0][static_cast<std::size_t>(j)] - 2 * d[1][static_cast<std::size_t>(j)];
    }
    auto m = to_sparse(d, rows, cols);
    int want = rank_by_minors(d, rows, cols);
    EXPECT_EQ(rank_checked(m), want) << "trial " << trial;
    EXPECT_EQ(rank_exact(m.transpose()), want);
  }
}

TEST(Rank, CheckPrimesArePrime) {
  for (std::uint64_t p : kCheckPrimes) {
    // Miller-Rabin with the deterministic base set for 64-bit inputs
    auto mulmod = [p](std::uint64_t a, std::uint64_t b) {
      return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e) {
      std::uint64_t r = 1;
      for (; e; e >>= 1, a = mulmod(a, a)) {
        if (e & 1) r = mulmod(r, a);
      }
      return r;
    };
    std::uint64_t d = p - 1;
    int s = 0;
    while (d % 2 == 0) {
      d /= 2;
      ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
      std::uint64_t x = powmod(a, d);
      bool ok = x == 1 || x == p - 1;
      for (int r = 1; r < s && !ok; ++r) {
        x = mulmod(x, x);
        ok = x == p - 1;
      }
      EXPECT_TRUE(ok) << p << " base " << a;
    }
  }
}
