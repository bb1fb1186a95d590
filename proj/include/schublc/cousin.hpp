#pragma once

// The Cousin complex of a Schubert variety Z_a, local cohomology by the
// pattern formula, the Koszul decomposition of its weight-graded pieces, and
// an independent oracle computing the same cohomology by exact linear algebra.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "schublc/dyck.hpp"
#include "schublc/sparse.hpp"
#include "schublc/verma.hpp"

namespace schublc {

/// Local cohomology H^q_{Z_a}: degree q -> weight-graded factors.
using LocalCohomology = std::map<int, WeightGradedModule>;

inline std::string to_string(const LocalCohomology& h) {
  std::string s;
  for (const auto& [q, m] : h) {
    s += "H^" + std::to_string(q) + "\n" + to_string(m);
  }
  return s;
}

/// Two local cohomology computations agree degree by degree, weight by weight
/// and label by label, with multiplicity.
inline bool same_cohomology(const LocalCohomology& x, const LocalCohomology& y) {
  auto nonempty = [](const LocalCohomology& h) {
    std::map<int, std::map<int, std::vector<GradedFactor>>> out;
    for (const auto& [q, m] : h) {
      if (!m.empty()) out[q] = m.layers();
    }
    return out;
  };
  return nonempty(x) == nonempty(y);
}

struct CousinComplex {
  GrassContext ctx;
  Partition top;
  std::map<int, std::vector<Partition>> terms;            // j -> b with |b| = d_X - j
  std::vector<std::pair<Partition, Partition>> differentials;  // (b', b'minus a corner)
};

/// GC^j_a = sum of N(b) over b ⊆ a with |b| = d_X - j, for c(a) <= j <= d_X.
inline CousinComplex gc_terms(const GrassContext& ctx, const Partition& a) {
  require_fits(a, ctx);
  CousinComplex gc{ctx, a, {}, {}};
  for (int j = a.codim(ctx); j <= ctx.dim(); ++j) gc.terms[j] = subpartitions(a, ctx.dim() - j);
  for (const auto& [j, bs] : gc.terms) {
    for (const auto& b : bs) {
      for (const Box& k : corners(b)) gc.differentials.push_back({b, *remove_boxes(b, {k})});
    }
  }
  return gc;
}

/// gr_p H^q = sum over A_p(a;q) of L(a^D), twisted by (|a^D| - p)/2.
inline LocalCohomology local_cohomology_formula(const GrassContext& ctx, const Partition& a) {
  require_fits(a, ctx);
  LocalCohomology h;
  for (const auto& d : enumerate_patterns(a, PatternQuery::augmented(3))) {
    int q = pattern_degree(ctx, d);
    auto it = h.try_emplace(q, ModuleRole::LocalCohomology, a).first;
    it->second.add(d.quotient(), pattern_weight(ctx, d));
  }
  return h;
}

/// Paths of D together with one singleton path per box of J, as a pattern in b.
inline std::optional<DyckPattern> with_singletons(const Partition& b, const DyckPattern& d, std::span<const Box> j) {
  std::vector<DyckPath> paths(d.paths().begin(), d.paths().end());
  for (const Box& x : j) paths.push_back(DyckPath{x});
  try {
    DyckPattern out(b, std::move(paths));
    return out;
  } catch (const Error&) {
    return std::nullopt;
  }
}

struct ExtensionSet {
  Partition a;
  Partition b;
  DyckPattern d;
  std::vector<Box> boxes;  // I(a,b,D)
};

/// I(a,b,D): boxes x of a/b with b ∪ x a partition and D ∪ {{x}} admissible
/// in b ∪ x. D must be an admissible bullet-free pattern in b ⊆ a.
inline ExtensionSet extension_set(const Partition& a, const Partition& b, const DyckPattern& d) {
  if (!a.contains(b)) throw Error(Errc::InvalidPair, to_string(b) + " is not contained in " + to_string(a));
  if (d.shape() != b) throw Error(Errc::InvalidPair, "pattern lives in " + to_string(d.shape()) + ", not " + to_string(b));
  if (!d.admissible() || d.has_bullets()) throw Error(Errc::InvalidPair, "pattern must be admissible without bullets");
  ExtensionSet ext{a, b, d, {}};
  for (const Box& x : addable_boxes(b, a)) {
    Partition bx = *add_box(b, x);
    auto e = with_singletons(bx, d, std::span<const Box>(&x, 1));
    if (e && e->admissible()) ext.boxes.push_back(x);
  }
  return ext;
}

/// Every J ⊆ I can be added at once: b ∪ J is a partition and D ∪ {{x} : x ∈ J}
/// is admissible in it.
inline bool extension_closed(const ExtensionSet& ext) {
  const auto& I = ext.boxes;
  if (I.size() > 20) throw Error(Errc::BudgetExceeded, "extension set too large to check all subsets");
  for (unsigned long mask = 0; mask < (1UL << I.size()); ++mask) {
    std::vector<Box> j;
    for (std::size_t t = 0; t < I.size(); ++t) {
      if (mask & (1UL << t)) j.push_back(I[t]);
    }
    std::set<Box> all;
    for (const Box& x : ext.b.boxes()) all.insert(x);
    all.insert(j.begin(), j.end());
    std::vector<int> rows(static_cast<std::size_t>(ext.a.length()), 0);
    for (const Box& x : all) rows[static_cast<std::size_t>(x.row - 1)]++;
    for (const Box& x : all) {
      if (x.col > rows[static_cast<std::size_t>(x.row - 1)]) return false;  // row not left-justified
    }
    if (!std::is_sorted(rows.rbegin(), rows.rend())) return false;
    Partition bj(rows);
    auto e = with_singletons(bj, ext.d, j);
    if (!e || !e->admissible()) return false;
  }
  return true;
}

struct KoszulBlock {
  Partition b;
  DyckPattern d;
  std::vector<Box> extension;  // I(a,b,D)
  int q = 0;                   // top degree, d_X - |b|
  int weight = 0;
  Partition label;             // b^D

  int size() const noexcept { return static_cast<int>(extension.size()); }
  int bottom_degree() const noexcept { return q - size(); }

  /// binomial(|I|, q - j)
  long long term_dim(int j) const noexcept {
    int t = q - j;
    if (t < 0 || t > size()) return 0;
    long long r = 1;
    for (int i = 1; i <= t; ++i) r = r * (size() - t + i) / i;
    return r;
  }

  /// Basis (b ∪ J, D ∪ J) of the term in degree q - |J|.
  std::vector<std::pair<Partition, DyckPattern>> basis(int j) const {
    std::vector<std::pair<Partition, DyckPattern>> out;
    const int t = q - j;
    for (unsigned long mask = 0; mask < (1UL << extension.size()); ++mask) {
      if (std::popcount(mask) != t) continue;
      Partition cur = b;
      std::vector<Box> picked;
      for (std::size_t s = 0; s < extension.size(); ++s) {
        if (!(mask & (1UL << s))) continue;
        picked.push_back(extension[s]);
      }
      // add in row order so each intermediate step stays a partition
      std::sort(picked.begin(), picked.end());
      for (const Box& x : picked) {
        auto nxt = add_box(cur, x);
        if (!nxt) throw Error(Errc::InternalInconsistency, "extension boxes are not jointly addable");
        cur = *nxt;
      }
      auto e = with_singletons(cur, d, picked);
      if (!e) throw Error(Errc::InternalInconsistency, "extension pattern is malformed");
      out.emplace_back(cur, *e);
    }
    return out;
  }
};

/// Blocks K(a,b,D) over all (b,D): b ⊆ a, D ∈ Dyck(b) with paths >= 3 and
/// |D| = p - q - d_X where q = d_X - |b|.
inline std::vector<KoszulBlock> koszul_decomposition(const GrassContext& ctx, const Partition& a, int p) {
  require_fits(a, ctx);
  std::vector<KoszulBlock> out;
  for (const auto& b : subpartitions(a)) {
    int q = ctx.dim() - b.size();
    int r = p - q - ctx.dim();
    if (r < 0) continue;
    PatternQuery query{3, false, std::nullopt, r};
    for (const auto& d : enumerate_patterns(b, query)) {
      auto ext = extension_set(a, b, d);
      out.push_back(KoszulBlock{b, d, ext.boxes, q, p, d.quotient()});
    }
  }
  return out;
}

/// Pairs (b,D) ∈ Y_p(a;q) with empty extension set.
inline std::vector<std::pair<Partition, DyckPattern>> bijection_pairs(const GrassContext& ctx, const Partition& a, int q,
                                                                      int p) {
  require_fits(a, ctx);
  std::vector<std::pair<Partition, DyckPattern>> out;
  int size = ctx.dim() - q;
  int r = p - q - ctx.dim();
  if (size < 0 || r < 0) return out;
  for (const auto& b : subpartitions(a, size)) {
    for (const auto& d : enumerate_patterns(b, PatternQuery{3, false, std::nullopt, r})) {
      if (extension_set(a, b, d).boxes.empty()) out.emplace_back(b, d);
    }
  }
  return out;
}

/// (b, D) -> (paths of D; bullets a/b) as a pattern in a.
inline DyckPattern bijection_image(const Partition& a, const Partition& b, const DyckPattern& d) {
  std::vector<Box> bullets;
  for (const Box& x : a.boxes()) {
    if (!b.contains(x)) bullets.push_back(x);
  }
  return DyckPattern(a, std::vector<DyckPath>(d.paths().begin(), d.paths().end()), std::move(bullets));
}

/// A basis vector (b, X) of gr_p GC^j_a: X ∈ Dyck(b).
struct CousinBasis {
  Partition b;
  std::vector<DyckPath> paths;

  friend auto operator<=>(const CousinBasis& x, const CousinBasis& y) {
    if (auto c = x.b <=> y.b; c != 0) return c;
    if (x.paths == y.paths) return std::strong_ordering::equal;
    return std::lexicographical_compare(x.paths.begin(), x.paths.end(), y.paths.begin(), y.paths.end())
               ? std::strong_ordering::less
               : std::strong_ordering::greater;
  }
  friend bool operator==(const CousinBasis&, const CousinBasis&) = default;
};

/// One (label, weight) piece of gr^W GC^•_a.
struct GradedChainComplex {
  Partition label;
  int weight = 0;
  std::map<int, std::vector<CousinBasis>> basis;  // j -> sorted basis
  std::map<int, SparseMatrix> differential;       // j -> matrix from degree j to j+1

  int dim(int j) const {
    auto it = basis.find(j);
    return it == basis.end() ? 0 : static_cast<int>(it->second.size());
  }
  std::size_t total_dim() const {
    std::size_t n = 0;
    for (const auto& [j, v] : basis) n += v.size();
    return n;
  }
  int rank(int j) const {
    auto it = differential.find(j);
    return it == differential.end() ? 0 : rank_checked(it->second);
  }
  /// j -> dim H^j, nonzero entries only.
  std::map<int, int> cohomology() const {
    std::map<int, int> ranks;
    for (const auto& [j, m] : differential) ranks[j] = rank_checked(m);
    std::map<int, int> out;
    for (const auto& [j, v] : basis) {
      int h = static_cast<int>(v.size());
      if (auto it = ranks.find(j); it != ranks.end()) h -= it->second;
      if (auto it = ranks.find(j - 1); it != ranks.end()) h -= it->second;
      if (h < 0) throw Error(Errc::InternalInconsistency, "negative cohomology dimension");
      if (h) out[j] = h;
    }
    return out;
  }
  /// Whether d^{j+1} d^j vanishes for every j.
  bool d_squared_zero() const {
    for (const auto& [j, m] : differential) {
      auto nxt = differential.find(j + 1);
      if (nxt != differential.end() && !nxt->second.multiply(m).is_zero()) return false;
    }
    return true;
  }
};

/// (-1)^{#{x ∈ a/b' : x <lex k}}
inline int cousin_sign(const Partition& a, const Partition& bprime, const Box& k) {
  int n = 0;
  for (const Box& x : a.boxes()) {
    if (!bprime.contains(x) && x < k) ++n;
  }
  return (n % 2) ? -1 : 1;
}

namespace detail {

struct CousinIndex {
  // (p, label) -> j -> basis
  std::map<std::pair<int, Partition>, std::map<int, std::vector<CousinBasis>>> pieces;
};

inline CousinIndex index_cousin_basis(const GrassContext& ctx, const Partition& a) {
  CousinIndex idx;
  for (const auto& b : subpartitions(a)) {
    int j = ctx.dim() - b.size();
    for (const auto& x : dyck_set(b)) {
      int p = j + ctx.dim() + x.path_count();
      idx.pieces[{p, x.quotient()}][j].push_back(
          CousinBasis{b, std::vector<DyckPath>(x.paths().begin(), x.paths().end())});
    }
  }
  for (auto& [key, by_j] : idx.pieces) {
    for (auto& [j, v] : by_j) std::sort(v.begin(), v.end());
  }
  return idx;
}

inline void fill_differentials(const Partition& a, GradedChainComplex& gc) {
  for (const auto& [j, src] : gc.basis) {
    auto tgt_it = gc.basis.find(j + 1);
    if (tgt_it == gc.basis.end()) continue;
    const auto& tgt = tgt_it->second;
    SparseMatrix m(static_cast<int>(tgt.size()), static_cast<int>(src.size()));
    for (std::size_t col = 0; col < src.size(); ++col) {
      const auto& e = src[col];
      auto cs = corners(e.b);
      for (std::size_t s = 0; s < e.paths.size(); ++s) {
        const auto& path = e.paths[s];
        if (!path.is_singleton()) continue;
        const Box k = path.start();
        if (std::find(cs.begin(), cs.end(), k) == cs.end()) continue;
        CousinBasis image{*remove_boxes(e.b, {k}), e.paths};
        image.paths.erase(image.paths.begin() + static_cast<std::ptrdiff_t>(s));
        auto it = std::lower_bound(tgt.begin(), tgt.end(), image);
        if (it == tgt.end() || !(*it == image)) {
          throw Error(Errc::InternalInconsistency, "differential leaves the graded piece");
        }
        m.add(static_cast<int>(it - tgt.begin()), static_cast<int>(col), cousin_sign(a, e.b, k));
      }
    }
    gc.differential.emplace(j, std::move(m));
  }
}

}  // namespace detail

/// gr_p GC^•_a restricted to the factors labeled c.
inline GradedChainComplex build_graded_complex(const GrassContext& ctx, const Partition& a, int p, const Partition& c) {
  require_fits(a, ctx);
  GradedChainComplex gc{c, p, {}, {}};
  for (const auto& b : subpartitions(a)) {
    int j = ctx.dim() - b.size();
    int r = p - j - ctx.dim();
    if (r < 0 || !b.contains(c)) continue;
    PatternQuery query = PatternQuery::dyck();
    query.path_count = r;
    for (const auto& x : enumerate_patterns(b, query)) {
      if (x.quotient() == c) gc.basis[j].push_back(CousinBasis{b, std::vector<DyckPath>(x.paths().begin(), x.paths().end())});
    }
  }
  for (auto& [j, v] : gc.basis) std::sort(v.begin(), v.end());
  detail::fill_differentials(a, gc);
  return gc;
}

/// Limits on the oracle: d_X and basis elements per (label, weight).
struct OracleBudget {
  int max_dim = 16;
  std::size_t max_basis = 50000;

  /// SCHUBLC_ORACLE_BUDGET = "D" or "D,B"; unset keeps the defaults.
  static OracleBudget from_env() {
    OracleBudget b;
    if (const char* s = std::getenv("SCHUBLC_ORACLE_BUDGET")) b = parse(s);
    return b;
  }

  static OracleBudget parse(std::string_view text) {
    OracleBudget b;
    auto comma = text.find(',');
    auto num = [](std::string_view t) {
      if (t.empty() || t.size() > 9 || !std::all_of(t.begin(), t.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
        throw Error(Errc::ParseError, "bad oracle budget '" + std::string(t) + "'");
      }
      long v = std::stol(std::string(t));
      if (v <= 0) throw Error(Errc::ParseError, "oracle budget must be positive");
      return v;
    };
    b.max_dim = static_cast<int>(num(text.substr(0, comma)));
    if (comma != std::string_view::npos) b.max_basis = static_cast<std::size_t>(num(text.substr(comma + 1)));
    return b;
  }
};

/// Every nonzero graded piece gr_p GC^•_a, split by label, in (p, label) order.
inline std::vector<GradedChainComplex> graded_complexes(const GrassContext& ctx, const Partition& a,
                                                        const OracleBudget& budget = OracleBudget::from_env()) {
  require_fits(a, ctx);
  if (ctx.dim() > budget.max_dim) {
    throw Error(Errc::BudgetExceeded, "Gr(" + std::to_string(ctx.k()) + "," + std::to_string(ctx.n()) + ") a=" +
                                          to_string(a) + ": d_X=" + std::to_string(ctx.dim()) + " exceeds " +
                                          std::to_string(budget.max_dim));
  }
  auto idx = detail::index_cousin_basis(ctx, a);
  std::vector<GradedChainComplex> out;
  for (auto& [key, by_j] : idx.pieces) {
    GradedChainComplex gc{key.second, key.first, std::move(by_j), {}};
    if (gc.total_dim() > budget.max_basis) {
      throw Error(Errc::BudgetExceeded, "a=" + to_string(a) + " weight " + std::to_string(key.first) + " label " +
                                            to_string(key.second) + ": " + std::to_string(gc.total_dim()) +
                                            " basis elements");
    }
    detail::fill_differentials(a, gc);
    out.push_back(std::move(gc));
  }
  return out;
}

/// Runs f(i) for i in [0, n) on a small thread pool.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Cohomology of each graded complex, assembled by degree.
inline LocalCohomology cohomology_of(const Partition& a, const std::vector<GradedChainComplex>& pieces) {
  std::vector<std::map<int, int>> h(pieces.size());
  parallel_for(pieces.size(), [&](std::size_t i) { h[i] = pieces[i].cohomology(); });
  LocalCohomology out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (const auto& [q, dim] : h[i]) {
      auto it = out.try_emplace(q, ModuleRole::LocalCohomology, a).first;
      it->second.add(pieces[i].label, pieces[i].weight, dim);
    }
  }
  return out;
}

/// Local cohomology recomputed as the cohomology of gr^W GC^•_a.
inline LocalCohomology local_cohomology_oracle(const GrassContext& ctx, const Partition& a,
                                               const OracleBudget& budget = OracleBudget::from_env()) {
  return cohomology_of(a, graded_complexes(ctx, a, budget));
}

struct EulerMismatch {
  Partition label;
  int weight = 0;
  long long terms = 0;       // Σ_j (-1)^j dim gr_p GC^j restricted to the label
  long long cohomology = 0;  // Σ_q (-1)^q multiplicity in gr_p H^q
};

struct EulerReport {
  std::vector<EulerMismatch> mismatches;
  std::size_t checked = 0;
  bool ok() const noexcept { return mismatches.empty(); }
};

/// Alternating sums of the Cousin terms against those of the formula's H^q.
inline EulerReport euler_check(const GrassContext& ctx, const Partition& a) {
  require_fits(a, ctx);
  std::map<std::pair<Partition, int>, long long> lhs, rhs;
  for (const auto& b : subpartitions(a)) {
    int j = ctx.dim() - b.size();
    for (const auto& x : dyck_set(b)) {
      lhs[{x.quotient(), j + ctx.dim() + x.path_count()}] += (j % 2) ? -1 : 1;
    }
  }
  for (const auto& [q, m] : local_cohomology_formula(ctx, a)) {
    for (const auto& [p, fs] : m.layers()) {
      for (const auto& f : fs) rhs[{f.label, p}] += ((q % 2) ? -1 : 1) * f.multiplicity;
    }
  }
  EulerReport rep;
  std::set<std::pair<Partition, int>> keys;
  for (const auto& [k, v] : lhs) keys.insert(k);
  for (const auto& [k, v] : rhs) keys.insert(k);
  for (const auto& k : keys) {
    ++rep.checked;
    long long l = lhs.count(k) ? lhs[k] : 0;
    long long r = rhs.count(k) ? rhs[k] : 0;
    if (l != r) rep.mismatches.push_back({k.first, k.second, l, r});
  }
  return rep;
}

/// Whether H^•_{Z_a} is a single L(a) in degree c(a).
inline bool rational_smoothness(const GrassContext& ctx, const Partition& a) {
  auto h = local_cohomology_formula(ctx, a);
  if (h.size() != 1 || h.begin()->first != a.codim(ctx)) return false;
  const auto& m = h.begin()->second;
  if (m.length() != 1) return false;
  return m.layers().begin()->second.front().label == a;
}

}  // namespace schublc
