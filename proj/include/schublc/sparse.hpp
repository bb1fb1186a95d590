#pragma once

// Sparse integer matrices and exact rank.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "schublc/error.hpp"

namespace schublc {

using BigInt = boost::multiprecision::cpp_int;

/// Row-major sparse matrix; each row holds (column, value) sorted by column
/// with no zero values.
class SparseMatrix {
 public:
  using Entry = std::pair<int, std::int64_t>;

  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : cols_(cols), rows_(static_cast<std::size_t>(rows)) {}

  int rows() const noexcept { return static_cast<int>(rows_.size()); }
  int cols() const noexcept { return cols_; }

  /// Adds v to entry (r, c).
  void add(int r, int c, std::int64_t v) {
    if (r < 0 || r >= rows() || c < 0 || c >= cols_) throw Error(Errc::InternalInconsistency, "matrix index out of range");
    auto& row = rows_[static_cast<std::size_t>(r)];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, int col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
      it->second += v;
      if (it->second == 0) row.erase(it);
    } else if (v != 0) {
      row.insert(it, {c, v});
    }
  }

  std::int64_t at(int r, int c) const {
    const auto& row = rows_[static_cast<std::size_t>(r)];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, int col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? it->second : 0;
  }

  const std::vector<Entry>& row(int r) const { return rows_[static_cast<std::size_t>(r)]; }

  std::size_t nonzeros() const noexcept {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  bool is_zero() const noexcept { return nonzeros() == 0; }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows());
    for (int r = 0; r < rows(); ++r) {
      for (const auto& [c, v] : row(r)) t.rows_[static_cast<std::size_t>(c)].push_back({r, v});
    }
    return t;
  }

  /// this * other.
  SparseMatrix multiply(const SparseMatrix& other) const {
    if (cols_ != other.rows()) throw Error(Errc::InternalInconsistency, "matrix shapes do not compose");
    SparseMatrix out(rows(), other.cols());
    for (int r = 0; r < rows(); ++r) {
      std::map<int, std::int64_t> acc;
      for (const auto& [k, v] : row(r)) {
        for (const auto& [c, w] : other.row(k)) acc[c] += v * w;
      }
      for (const auto& [c, v] : acc) {
        if (v != 0) out.rows_[static_cast<std::size_t>(r)].push_back({c, v});
      }
    }
    return out;
  }

 private:
  int cols_ = 0;
  std::vector<std::vector<Entry>> rows_;
};

namespace detail {

/// Incremental row echelon form: each row is reduced against the pivots found
/// so far and becomes a new pivot if anything survives. Rows are fed shortest
/// first to limit fill-in.
template <class Scalar, class Field>
int echelon_rank(const SparseMatrix& m, Field&& field) {
  using Row = std::vector<std::pair<int, Scalar>>;
  std::vector<int> order(static_cast<std::size_t>(m.rows()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return m.row(x).size() < m.row(y).size(); });
  std::map<int, Row> pivots;  // leading column -> row
  for (int r : order) {
    Row cur;
    for (const auto& [c, v] : m.row(r)) {
      Scalar s = field.from(v);
      if (!field.is_zero(s)) cur.push_back({c, s});
    }
    while (!cur.empty()) {
      auto it = pivots.find(cur.front().first);
      if (it == pivots.end()) break;
      cur = field.eliminate(cur, it->second);
    }
    if (!cur.empty()) {
      field.normalize(cur);
      int lead = cur.front().first;
      pivots.emplace(lead, std::move(cur));
    }
  }
  return static_cast<int>(pivots.size());
}

/// Integers, fraction free: row <- p*row - r*pivot, then divide by the content.
struct IntegerField {
  using Row = std::vector<std::pair<int, BigInt>>;
  BigInt from(std::int64_t v) const { return BigInt(v); }
  bool is_zero(const BigInt& v) const { return v.is_zero(); }
  Row eliminate(const Row& row, const Row& piv) const {
    const BigInt& a = piv.front().second;
    const BigInt& b = row.front().second;
    BigInt g = boost::multiprecision::gcd(a, b);
    BigInt fa = a / g;
    BigInt fb = b / g;
    Row out;
    out.reserve(row.size() + piv.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < piv.size()) {
      if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
        out.push_back({row[i].first, fa * row[i].second});
        ++i;
      } else if (i == row.size() || piv[j].first < row[i].first) {
        out.push_back({piv[j].first, -fb * piv[j].second});
        ++j;
      } else {
        BigInt v = fa * row[i].second - fb * piv[j].second;
        if (!v.is_zero()) out.push_back({row[i].first, std::move(v)});
        ++i;
        ++j;
      }
    }
    return out;
  }
  void normalize(Row& row) const {
    BigInt g = 0;
    for (const auto& e : row) g = boost::multiprecision::gcd(g, e.second);
    if (g > 1) {
      for (auto& e : row) e.second /= g;
    }
  }
};

struct PrimeField {
  using Row = std::vector<std::pair<int, std::uint64_t>>;
  std::uint64_t p;
  std::uint64_t from(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
  }
  bool is_zero(std::uint64_t v) const { return v == 0; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  }
  std::uint64_t inv(std::uint64_t a) const {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  // pivots are normalized to leading coefficient 1
  Row eliminate(const Row& row, const Row& piv) const {
    const std::uint64_t f = row.front().second;
    Row out;
    out.reserve(row.size() + piv.size());
    std::size_t i = 0, j = 0;
    while (i < row.size() || j < piv.size()) {
      if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
        out.push_back(row[i]);
        ++i;
      } else if (i == row.size() || piv[j].first < row[i].first) {
        out.push_back({piv[j].first, (p - mul(f, piv[j].second)) % p});
        ++j;
      } else {
        std::uint64_t v = (row[i].second + p - mul(f, piv[j].second)) % p;
        if (v) out.push_back({row[i].first, v});
        ++i;
        ++j;
      }
    }
    return out;
  }
  void normalize(Row& row) const {
    std::uint64_t f = inv(row.front().second);
    for (auto& e : row) e.second = mul(e.second, f);
  }
};

}  // namespace detail

/// Rank over the rationals by fraction-free elimination in big integers.
inline int rank_exact(const SparseMatrix& m) { return detail::echelon_rank<BigInt>(m, detail::IntegerField{}); }

/// Rank over Z/p for a prime p < 2^63.
inline int rank_mod_prime(const SparseMatrix& m, std::uint64_t p) {
  return detail::echelon_rank<std::uint64_t>(m, detail::PrimeField{p});
}

/// Two fixed large primes used as an independent rank cross-check.
inline constexpr std::uint64_t kCheckPrimes[2] = {4611686018427387847ULL, 2305843009213693951ULL};

/// Exact rank, asserted equal to the rank modulo two large primes. The
/// modular rank can only drop below the rational one, and for these small
/// matrices a drop would signal an elimination bug rather than bad luck.
inline int rank_checked(const SparseMatrix& m) {
  int r = rank_exact(m);
  for (std::uint64_t p : kCheckPrimes) {
    int rp = rank_mod_prime(m, p);
    if (rp != r) {
      throw Error(Errc::InternalInconsistency,
                  "rank over Q is " + std::to_string(r) + " but " + std::to_string(rp) + " mod " + std::to_string(p));
    }
  }
  return r;
}

}  // namespace schublc
