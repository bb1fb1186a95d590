#pragma once

// Cross-checks of one instance (ctx, a): pattern formula against the oracle,
// d^2 = 0, Koszul blocks (cover and exactness), the bijection between
// surviving blocks and A_p(a;q), and the Euler characteristic.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "schublc/cousin.hpp"

namespace schublc {

struct VerifyReport {
  GrassContext ctx;
  Partition a;
  std::vector<std::string> formula_vs_oracle;  // mismatch descriptions
  std::vector<std::string> dsq_zero;
  std::vector<std::string> koszul_exactness;
  std::vector<std::string> block_cover;
  std::vector<std::string> bijection;
  std::vector<std::string> euler;
  std::size_t complexes = 0;
  std::size_t blocks = 0;

  bool ok() const noexcept {
    return formula_vs_oracle.empty() && dsq_zero.empty() && koszul_exactness.empty() && block_cover.empty() &&
           bijection.empty() && euler.empty();
  }
};

namespace detail {

inline std::string piece_name(int p, const Partition& c) {
  return "p=" + std::to_string(p) + " L" + to_string(c);
}

inline std::string describe_difference(const LocalCohomology& f, const LocalCohomology& o) {
  std::string s;
  std::set<int> qs;
  for (const auto& [q, m] : f) qs.insert(q);
  for (const auto& [q, m] : o) qs.insert(q);
  for (int q : qs) {
    auto fm = f.count(q) ? to_string(f.at(q)) : std::string();
    auto om = o.count(q) ? to_string(o.at(q)) : std::string();
    if (fm != om) s += "H^" + std::to_string(q) + " formula {" + fm + "} oracle {" + om + "} ";
  }
  return s;
}

/// Checks the Koszul blocks of weight p against the graded complexes of that weight.
inline void check_blocks(const GrassContext& ctx, const Partition& a, int p,
                         const std::map<Partition, const GradedChainComplex*>& pieces,
                         const std::map<std::pair<int, int>, std::set<DyckPattern>>& formula_patterns,
                         VerifyReport& rep) {
  auto blocks = koszul_decomposition(ctx, a, p);
  rep.blocks += blocks.size();
  // label -> j -> basis from the blocks
  std::map<Partition, std::map<int, std::vector<CousinBasis>>> cover;
  std::map<int, std::set<DyckPattern>> survivors;  // q -> image patterns
  std::map<std::pair<Partition, int>, SparseMatrix> columns;  // transposed differentials
  for (const auto& blk : blocks) {
    std::map<int, std::vector<CousinBasis>> local;
    for (int j = blk.bottom_degree(); j <= blk.q; ++j) {
      auto basis = blk.basis(j);
      if (static_cast<long long>(basis.size()) != blk.term_dim(j)) {
        rep.block_cover.push_back("block " + to_string(blk.b) + " " + to_string(blk.d) + " degree " +
                                  std::to_string(j) + " has the wrong size");
      }
      for (const auto& [b, x] : basis) {
        CousinBasis e{b, std::vector<DyckPath>(x.paths().begin(), x.paths().end())};
        cover[blk.label][j].push_back(e);
        local[j].push_back(e);
      }
    }
    if (blk.extension.empty()) survivors[blk.q].insert(bijection_image(a, blk.b, blk.d));

    auto it = pieces.find(blk.label);
    if (it == pieces.end()) {
      rep.block_cover.push_back("block label " + piece_name(p, blk.label) + " has no graded piece");
      continue;
    }
    const GradedChainComplex& gc = *it->second;
    // restrict the differential to the block and check it stays inside
    std::map<int, int> h;
    std::map<int, int> ranks;
    for (auto& [j, v] : local) std::sort(v.begin(), v.end());
    for (const auto& [j, src] : local) {
      auto dit = gc.differential.find(j);
      if (dit == gc.differential.end()) continue;
      const auto& full_src = gc.basis.at(j);
      const auto& full_tgt = gc.basis.at(j + 1);
      const auto tgt_it = local.find(j + 1);
      SparseMatrix sub(tgt_it == local.end() ? 0 : static_cast<int>(tgt_it->second.size()), static_cast<int>(src.size()));
      for (std::size_t col = 0; col < src.size(); ++col) {
        auto sit = std::lower_bound(full_src.begin(), full_src.end(), src[col]);
        if (sit == full_src.end() || !(*sit == src[col])) continue;  // reported by the cover check
        int full_col = static_cast<int>(sit - full_src.begin());
        auto cit = columns.find({blk.label, j});
        if (cit == columns.end()) cit = columns.emplace(std::make_pair(blk.label, j), dit->second.transpose()).first;
        for (const auto& [r, v] : cit->second.row(full_col)) {
          const auto& target = full_tgt[static_cast<std::size_t>(r)];
          int row = -1;
          if (tgt_it != local.end()) {
            auto lt = std::lower_bound(tgt_it->second.begin(), tgt_it->second.end(), target);
            if (lt != tgt_it->second.end() && *lt == target) row = static_cast<int>(lt - tgt_it->second.begin());
          }
          if (row < 0) {
            rep.koszul_exactness.push_back("differential leaves block " + to_string(blk.b) + " " + to_string(blk.d));
          } else {
            sub.add(row, static_cast<int>(col), v);
          }
        }
      }
      ranks[j] = rank_checked(sub);
    }
    int total = 0;
    for (const auto& [j, v] : local) {
      int dim = static_cast<int>(v.size()) - (ranks.count(j) ? ranks[j] : 0) - (ranks.count(j - 1) ? ranks[j - 1] : 0);
      if (dim) h[j] = dim;
      total += dim;
    }
    bool want_one = blk.extension.empty();
    bool good = want_one ? (h.size() == 1 && h.begin()->first == blk.q && h.begin()->second == 1) : total == 0 && h.empty();
    if (!good) {
      rep.koszul_exactness.push_back("block " + to_string(blk.b) + " " + to_string(blk.d) + " at " +
                                     piece_name(p, blk.label) + " has unexpected cohomology");
    }
  }
  for (auto& [label, by_j] : cover) {
    for (auto& [j, v] : by_j) std::sort(v.begin(), v.end());
  }
  for (const auto& [label, gc] : pieces) {
    auto it = cover.find(label);
    std::map<int, std::vector<CousinBasis>> got = it == cover.end() ? std::map<int, std::vector<CousinBasis>>{} : it->second;
    if (got != gc->basis) rep.block_cover.push_back("blocks do not cover " + piece_name(p, label));
  }
  for (const auto& [label, by_j] : cover) {
    if (!pieces.count(label)) rep.block_cover.push_back("blocks produce a basis outside " + piece_name(p, label));
  }
  // surviving blocks <-> A_p(a;q)
  std::set<int> qs;
  for (const auto& [q, s] : survivors) qs.insert(q);
  for (const auto& [key, s] : formula_patterns) {
    if (key.second == p) qs.insert(key.first);
  }
  for (int q : qs) {
    auto fit = formula_patterns.find({q, p});
    std::set<DyckPattern> want = fit == formula_patterns.end() ? std::set<DyckPattern>{} : fit->second;
    std::set<DyckPattern> got = survivors.count(q) ? survivors[q] : std::set<DyckPattern>{};
    if (want != got) {
      rep.bijection.push_back("q=" + std::to_string(q) + " p=" + std::to_string(p) + ": |A_p(a;q)|=" +
                              std::to_string(want.size()) + " but " + std::to_string(got.size()) +
                              " surviving blocks map onto it");
    }
  }
}

}  // namespace detail

/// Runs every check on (ctx, a). Throws BudgetExceeded past the oracle budget.
inline VerifyReport verify_instance(const GrassContext& ctx, const Partition& a,
                                    const OracleBudget& budget = OracleBudget::from_env()) {
  require_fits(a, ctx);
  VerifyReport rep{ctx, a, {}, {}, {}, {}, {}, {}, 0, 0};
  auto pieces = graded_complexes(ctx, a, budget);
  rep.complexes = pieces.size();

  auto formula = local_cohomology_formula(ctx, a);
  auto oracle = cohomology_of(a, pieces);
  if (!same_cohomology(formula, oracle)) rep.formula_vs_oracle.push_back(detail::describe_difference(formula, oracle));

  for (const auto& gc : pieces) {
    if (!gc.d_squared_zero()) rep.dsq_zero.push_back(detail::piece_name(gc.weight, gc.label));
  }

  std::map<std::pair<int, int>, std::set<DyckPattern>> by_qp;
  for (const auto& d : enumerate_patterns(a, PatternQuery::augmented(3))) {
    by_qp[{pattern_degree(ctx, d), pattern_weight(ctx, d)}].insert(d);
  }
  std::map<int, std::map<Partition, const GradedChainComplex*>> by_weight;
  for (const auto& gc : pieces) by_weight[gc.weight][gc.label] = &gc;
  std::set<int> weights;
  for (const auto& [p, m] : by_weight) weights.insert(p);
  for (const auto& [key, s] : by_qp) weights.insert(key.second);
  for (int p : weights) detail::check_blocks(ctx, a, p, by_weight[p], by_qp, rep);

  auto e = euler_check(ctx, a);
  for (const auto& m : e.mismatches) {
    rep.euler.push_back(detail::piece_name(m.weight, m.label) + ": terms " + std::to_string(m.terms) +
                        " vs cohomology " + std::to_string(m.cohomology));
  }
  return rep;
}

}  // namespace schublc
