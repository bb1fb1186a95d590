#pragma once

// Integer polynomials in q, Gaussian binomials, the determinantal varieties
// Z_p ⊂ C^{m×n} seen as Schubert varieties (m^p, p^{n-p}) in Gr(n, n+m), and
// the multiplicities of the singular-locus factors L(a^i).

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "schublc/cousin.hpp"

namespace schublc {

/// Exponent -> coefficient, zero coefficients never stored.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  static IntPolynomial monomial(int exp, long long coef = 1) {
    IntPolynomial p;
    p.add(exp, coef);
    return p;
  }

  void add(int exp, long long coef) {
    if (coef == 0) return;
    auto& c = coef_[exp];
    c += coef;
    if (c == 0) coef_.erase(exp);
  }

  long long coef(int exp) const {
    auto it = coef_.find(exp);
    return it == coef_.end() ? 0 : it->second;
  }
  const std::map<int, long long>& terms() const noexcept { return coef_; }
  bool is_zero() const noexcept { return coef_.empty(); }
  int degree() const { return coef_.empty() ? -1 : coef_.rbegin()->first; }
  int low_degree() const { return coef_.empty() ? -1 : coef_.begin()->first; }

  /// Value at q = 1.
  long long at_one() const {
    long long s = 0;
    for (const auto& [e, c] : coef_) s += c;
    return s;
  }

  IntPolynomial operator+(const IntPolynomial& o) const {
    IntPolynomial r = *this;
    for (const auto& [e, c] : o.coef_) r.add(e, c);
    return r;
  }
  IntPolynomial operator*(const IntPolynomial& o) const {
    IntPolynomial r;
    for (const auto& [e1, c1] : coef_) {
      for (const auto& [e2, c2] : o.coef_) r.add(e1 + e2, c1 * c2);
    }
    return r;
  }
  /// q -> q^k
  IntPolynomial substitute_power(int k) const {
    IntPolynomial r;
    for (const auto& [e, c] : coef_) r.add(e * k, c);
    return r;
  }

  /// Coefficients read the same from both ends.
  bool palindromic() const {
    if (coef_.empty()) return true;
    int lo = low_degree(), hi = degree();
    for (const auto& [e, c] : coef_) {
      if (coef(lo + hi - e) != c) return false;
    }
    return true;
  }
  /// All exponents share one parity.
  bool single_parity() const {
    if (coef_.empty()) return true;
    int par = std::abs(low_degree()) % 2;
    return std::all_of(coef_.begin(), coef_.end(), [&](const auto& t) { return std::abs(t.first) % 2 == par; });
  }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  std::map<int, long long> coef_;
};

inline std::string to_string(const IntPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& [e, c] : p.terms()) {
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    long long a = c < 0 ? -c : c;
    if (e == 0) {
      s += std::to_string(a);
      continue;
    }
    if (a != 1) s += std::to_string(a);
    s += e == 1 ? "q" : "q^" + std::to_string(e);
  }
  return s;
}

/// [a choose b] in q (or q^2 when squared): partitions inside a b×(a-b)
/// rectangle counted by size. [a choose 0] = 1 for every a, including a < 0;
/// otherwise zero unless 0 <= b <= a.
inline IntPolynomial gaussian_binomial(int a, int b, bool squared = false) {
  if (b == 0) return IntPolynomial::monomial(0);
  if (b < 0 || a < 0 || b > a) return {};
  // q-Pascal: [a,b] = [a-1,b-1] + q^b [a-1,b]
  std::vector<IntPolynomial> row{IntPolynomial::monomial(0)};  // row[t] = [r, t]
  for (int r = 1; r <= a; ++r) {
    std::vector<IntPolynomial> nxt(static_cast<std::size_t>(std::min(r, b) + 1));
    for (int t = 0; t < static_cast<int>(nxt.size()); ++t) {
      IntPolynomial v;
      if (t > 0) v = row[static_cast<std::size_t>(t - 1)];
      if (t < static_cast<int>(row.size())) v = v + IntPolynomial::monomial(t) * row[static_cast<std::size_t>(t)];
      nxt[static_cast<std::size_t>(t)] = std::move(v);
    }
    row = std::move(nxt);
  }
  IntPolynomial p = row[static_cast<std::size_t>(b)];
  return squared ? p.substitute_power(2) : p;
}

/// Matrices of rank <= p in C^{m×n} (m >= n): the Schubert variety of
/// p̂ = (m^p, p^{n-p}) in Gr(n, n+m) restricted to the opposite big cell.
class DetInstance {
 public:
  DetInstance(int m, int n, int p) : m_(m), n_(n), p_(p) {
    if (n < 1 || m < n) throw Error(Errc::InvalidContext, "need 1 <= n <= m");
    if (p < 0 || p > n) throw Error(Errc::RankOutOfRange, "need 0 <= p <= n, got p=" + std::to_string(p));
  }

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  int rank() const noexcept { return p_; }
  GrassContext context() const { return GrassContext(n_, n_ + m_); }
  /// (m^s, s^{n-s}); s = p gives p̂.
  Partition stratum(int s) const {
    std::vector<int> parts(static_cast<std::size_t>(n_), s);
    for (int i = 0; i < s; ++i) parts[static_cast<std::size_t>(i)] = m_;
    return Partition(std::move(parts));
  }
  Partition partition() const { return stratum(p_); }
  int codim() const noexcept { return (m_ - p_) * (n_ - p_); }

 private:
  int m_, n_, p_;
};

/// q^{(n-p)^2 + (n-s)(m-n)} [n-s-1 choose p-s]_{q^2}
inline IntPolynomial det_multiplicity_closed_form(const DetInstance& inst, int s) {
  if (s < 0 || s > inst.rank()) {
    throw Error(Errc::RankOutOfRange, "need 0 <= s <= p, got s=" + std::to_string(s));
  }
  const int m = inst.m(), n = inst.n(), p = inst.rank();
  return IntPolynomial::monomial((n - p) * (n - p) + (n - s) * (m - n)) * gaussian_binomial(n - s - 1, p - s, true);
}

/// (m-p)(n-p) + (p-s)(m-n) == (n-p)^2 + (n-s)(m-n)
inline bool det_exponent_identity(int m, int n, int p, int s) {
  return (m - p) * (n - p) + (p - s) * (m - n) == (n - p) * (n - p) + (n - s) * (m - n);
}

struct DetStratum {
  int s = 0;
  IntPolynomial gen_poly;  // Σ_j [H^j : L(ŝ)] q^j
  bool weights_ok = true;  // every factor has weight mn + p - s + j
};

/// Per-stratum generating polynomials read off the pattern formula for p̂.
inline std::vector<DetStratum> det_multiplicity_enumerated(const DetInstance& inst) {
  const auto ctx = inst.context();
  std::map<Partition, int> which;
  std::vector<DetStratum> out;
  for (int s = 0; s <= inst.rank(); ++s) {
    which.emplace(inst.stratum(s), s);
    out.push_back(DetStratum{s, {}, true});
  }
  const int mn = inst.m() * inst.n();
  for (const auto& [j, mod] : local_cohomology_formula(ctx, inst.partition())) {
    for (const auto& [w, fs] : mod.layers()) {
      for (const auto& f : fs) {
        auto it = which.find(f.label);
        if (it == which.end()) {
          throw Error(Errc::UnexpectedFactorLabel, "L" + to_string(f.label) + " in H^" + std::to_string(j) +
                                                       " is not a determinantal stratum");
        }
        auto& st = out[static_cast<std::size_t>(it->second)];
        st.gen_poly.add(j, f.multiplicity);
        if (w != mn + inst.rank() - st.s + j) st.weights_ok = false;
      }
    }
  }
  return out;
}

/// The blocks (ã_i, d_i) of a, widths strictly decreasing, zero parts dropped.
inline std::vector<std::pair<int, int>> partition_blocks(const Partition& a) {
  std::vector<std::pair<int, int>> out;
  for (int v : a.parts()) {
    if (!out.empty() && out.back().first == v) ++out.back().second;
    else out.push_back({v, 1});
  }
  return out;
}

struct SingularFactor {
  int index = 0;  // i, 1-based
  Partition label;  // a^i
  IntPolynomial gen_poly;
};

/// For 1 <= i < t: a^i (the hook around the corner between blocks i and i+1
/// removed) and q^c (q^{|x-d|} + q^{|x-d|+2} + ... + q^{x+d-2}), x = ã_i - ã_{i+1}, d = d_{i+1}.
inline std::vector<SingularFactor> singular_locus_multiplicities(const GrassContext& ctx, const Partition& a) {
  require_fits(a, ctx);
  auto blocks = partition_blocks(a);
  std::vector<SingularFactor> out;
  const int c = a.codim(ctx);
  for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
    std::vector<int> parts;
    for (std::size_t t = 0; t < blocks.size(); ++t) {
      int width = blocks[t].first, reps = blocks[t].second;
      if (t == i) {
        parts.insert(parts.end(), static_cast<std::size_t>(reps - 1), width);
      } else if (t == i + 1) {
        parts.insert(parts.end(), static_cast<std::size_t>(reps + 1), width - 1);
      } else {
        parts.insert(parts.end(), static_cast<std::size_t>(reps), width);
      }
    }
    const int x = blocks[i].first - blocks[i + 1].first;
    const int d = blocks[i + 1].second;
    IntPolynomial poly;
    for (int e = std::abs(x - d); e <= x + d - 2; e += 2) poly.add(c + e, 1);
    out.push_back(SingularFactor{static_cast<int>(i) + 1, Partition(std::move(parts)), std::move(poly)});
  }
  return out;
}

/// Σ_j [H^j : L(label)] q^j from the pattern formula.
inline IntPolynomial factor_generating_polynomial(const LocalCohomology& h, const Partition& label) {
  IntPolynomial poly;
  for (const auto& [j, mod] : h) {
    for (const auto& [w, fs] : mod.layers()) {
      for (const auto& f : fs) {
        if (f.label == label) poly.add(j, f.multiplicity);
      }
    }
  }
  return poly;
}

}  // namespace schublc
