// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "schublc/schublc.hpp"

using namespace schublc;

namespace {

using Clock = std::chrono::steady_clock;
using Factors = std::multiset<std::tuple<int, int, Partition>>;  // (q, p, label) with repetition

Factors flatten(const LocalCohomology& h) {
  Factors out;
  for (const auto& [q, m] : h) {
    for (const auto& [p, fs] : m.layers()) {
      for (const auto& f : fs) {
        for (int i = 0; i < f.multiplicity; ++i) out.insert({q, p, f.label});
      }
    }
  }
  return out;
}

std::vector<std::pair<GrassContext, Partition>> sweep(int max_dim) {
  std::vector<std::pair<GrassContext, Partition>> out;
  for (int n = 2; n <= max_dim + 1; ++n) {
    for (int k = 1; k < n; ++k) {
      if (k * (n - k) > max_dim) continue;
      GrassContext ctx(k, n);
      for (const auto& a : subpartitions(Partition::rectangle(k, n - k))) out.emplace_back(ctx, a);
    }
  }
  return out;
}

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  auto t0 = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs >= limit_s) {
    std::ostringstream os;
    os << "took " << secs << " s, limit " << limit_s << " s";
    out.fail(os.str());
  }
  if (!out.ok) ++failures;
  std::cout << (out.ok ? "PASS" : "FAIL") << "  [" << id << "] " << name << "  (" << secs << " s)";
  if (!out.ok) std::cout << "  " << out.detail;
  std::cout << std::endl;
}

// Shared by criteria 5 and 6 so the sweep runs once.
std::vector<VerifyReport> sweep_reports;
std::string sweep_error;

}  // namespace

int main() {
  std::cout.precision(3);

  criterion(1, "Gr(4,9), a=(5,4,2,2): patterns and H^7..H^12", 5.0, [](Outcome& o) {
    GrassContext ctx(4, 9);
    Partition a({5, 4, 2, 2});
    Factors want{{7, 27, Partition({5, 4, 2, 2})}, {7, 28, Partition({3, 3, 2, 2})}, {7, 28, Partition({3, 1, 1, 1})},
                 {7, 28, Partition({5, 1, 1, 1})}, {8, 30, Partition()},  {9, 30, Partition({5, 1, 1, 1})},
                 {10, 32, Partition()},           {12, 34, Partition()}};
    auto got = flatten(local_cohomology_formula(ctx, a));
    if (got != want) o.fail("formula: " + to_string(local_cohomology_formula(ctx, a)));
    if (enumerate_patterns(a, PatternQuery::augmented(3)).size() != 8) o.fail("pattern count is not 8");
    if (flatten(local_cohomology_oracle(ctx, a, OracleBudget{20, 50000})) != want) o.fail("oracle disagrees");
  });

  criterion(2, "Gr(4,9), a=(5,5,5,4): H^1 only", 1.0, [](Outcome& o) {
    GrassContext ctx(4, 9);
    Factors want{{1, 21, Partition({5, 5, 5, 4})}, {1, 22, Partition({5, 5, 3, 3})}, {1, 23, Partition({5, 2, 2, 2})},
                 {1, 24, Partition({1, 1, 1, 1})}};
    auto h = local_cohomology_formula(ctx, Partition({5, 5, 5, 4}));
    if (flatten(h) != want) o.fail("formula: " + to_string(h));
  });

  criterion(3, "Verma layers of N(3,2,2) and M(3,2,2)", 1.0, [](Outcome& o) {
    GrassContext ctx(3, 6);
    Partition a({3, 2, 2});
    std::map<int, std::multiset<Partition>> want{
        {11, {Partition({3, 2, 2})}},
        {12, {Partition({2, 2, 2}), Partition({3, 2, 1})}},
        {13, {Partition({3}), Partition({2, 2, 1}), Partition({1})}},
        {14, {Partition({2})}}};
    auto collect = [](const WeightGradedModule& m, int sign) {
      std::map<int, std::multiset<Partition>> out;
      for (const auto& [p, fs] : m.layers()) {
        for (const auto& f : fs) {
          for (int i = 0; i < f.multiplicity; ++i) out[sign * p].insert(f.label);
        }
      }
      return out;
    };
    if (collect(verma_weight_filtration(ctx, a, true), 1) != want) o.fail("N(a) layers differ");
    if (collect(verma_weight_filtration(ctx, a, false), -1) != want) o.fail("M(a) is not the reflection");
  });

  criterion(4, "Gr(2,4), a=(2,1): term table, blocks at p=6, H^1", 1.0, [](Outcome& o) {
    GrassContext ctx(2, 4);
    Partition a({2, 1});
    std::map<std::pair<int, int>, std::multiset<Partition>> want{
        {{5, 1}, {Partition({2, 1})}},
        {{6, 1}, {Partition({2}), Partition({1, 1}), Partition()}},
        {{6, 2}, {Partition({2}), Partition({1, 1})}},
        {{7, 1}, {Partition({1})}},
        {{7, 2}, {Partition({1}), Partition({1})}},
        {{7, 3}, {Partition({1})}},
        {{8, 3}, {Partition()}},
        {{8, 4}, {Partition()}}};
    std::map<std::pair<int, int>, std::multiset<Partition>> got;
    for (const auto& gc : graded_complexes(ctx, a)) {
      for (const auto& [j, v] : gc.basis) {
        for (std::size_t i = 0; i < v.size(); ++i) got[{gc.weight, j}].insert(gc.label);
      }
    }
    if (got != want) o.fail("term table differs");

    std::set<std::pair<Partition, DyckPattern>> blocks;
    std::set<Partition> survivors;
    for (const auto& blk : koszul_decomposition(ctx, a, 6)) {
      blocks.insert({blk.b, blk.d});
      if (blk.extension.empty()) survivors.insert(blk.b);
    }
    DyckPattern hook(a, {DyckPath{{2, 1}, {1, 1}, {1, 2}}});
    std::set<std::pair<Partition, DyckPattern>> want_blocks{
        {a, hook}, {Partition({2}), DyckPattern(Partition({2}), {})}, {Partition({1, 1}), DyckPattern(Partition({1, 1}), {})}};
    if (blocks != want_blocks) o.fail("blocks at p=6 differ");
    if (survivors != std::set<Partition>{a}) o.fail("wrong surviving block at p=6");

    Factors h1{{1, 5, a}, {1, 6, Partition()}};
    if (flatten(local_cohomology_formula(ctx, a)) != h1) o.fail("formula H^1 differs");
    if (flatten(local_cohomology_oracle(ctx, a)) != h1) o.fail("oracle H^1 differs");
  });

  criterion(5, "Oracle equivalence on every partition with d_X <= 12", 600.0, [](Outcome& o) {
    try {
      for (const auto& [ctx, a] : sweep(12)) sweep_reports.push_back(verify_instance(ctx, a, OracleBudget{12, 200000}));
    } catch (const std::exception& e) {
      sweep_error = e.what();
      throw;
    }
    std::size_t bad = 0;
    for (const auto& r : sweep_reports) {
      if (!r.formula_vs_oracle.empty()) {
        if (!bad) o.fail("Gr(" + std::to_string(r.ctx.k()) + "," + std::to_string(r.ctx.n()) + ") " + to_string(r.a));
        ++bad;
      }
    }
    if (sweep_reports.size() < 400) o.fail("sweep too small");
    std::cout << "      " << sweep_reports.size() << " instances, " << bad << " mismatches" << std::endl;
  });

  criterion(6, "Structural properties on the same sweep", 60.0, [](Outcome& o) {
    if (!sweep_error.empty()) o.fail("sweep aborted: " + sweep_error);
    std::size_t complexes = 0, blocks = 0;
    for (const auto& r : sweep_reports) {
      complexes += r.complexes;
      blocks += r.blocks;
      auto where = "Gr(" + std::to_string(r.ctx.k()) + "," + std::to_string(r.ctx.n()) + ") " + to_string(r.a) + ": ";
      if (!r.dsq_zero.empty()) o.fail(where + "d^2 != 0 at " + r.dsq_zero.front());
      if (!r.koszul_exactness.empty()) o.fail(where + r.koszul_exactness.front());
      if (!r.block_cover.empty()) o.fail(where + r.block_cover.front());
      if (!r.bijection.empty()) o.fail(where + r.bijection.front());
      if (!r.euler.empty()) o.fail(where + "Euler " + r.euler.front());
    }
    if (sweep_reports.empty()) o.fail("no instances");
    std::cout << "      " << complexes << " graded complexes, " << blocks << " Koszul blocks" << std::endl;
  });

  criterion(7, "Determinantal closed form, 1 <= n <= m <= 6", 900.0, [](Outcome& o) {
    int instances = 0;
    for (int m = 1; m <= 6; ++m) {
      for (int n = 1; n <= m; ++n) {
        for (int p = 0; p <= n; ++p) {
          DetInstance inst(m, n, p);
          auto en = det_multiplicity_enumerated(inst);
          for (int s = 0; s <= p; ++s) {
            ++instances;
            const auto& st = en[static_cast<std::size_t>(s)];
            std::string where = std::to_string(m) + "x" + std::to_string(n) + " p=" + std::to_string(p) + " s=" + std::to_string(s);
            if (st.gen_poly != det_multiplicity_closed_form(inst, s)) o.fail(where + " polynomial " + to_string(st.gen_poly));
            if (!st.weights_ok) o.fail(where + " weight rule");
            if (!det_exponent_identity(m, n, p, s)) o.fail(where + " exponent identity");
          }
        }
      }
    }
    std::cout << "      " << instances << " (m, n, p, s) cases" << std::endl;
  });

  criterion(8, "Singular-locus multiplicities", 60.0, [](Outcome& o) {
    GrassContext ctx(4, 9);
    Partition a({5, 4, 2, 2});
    auto fs = singular_locus_multiplicities(ctx, a);
    IntPolynomial q7 = IntPolynomial::monomial(7), q9 = IntPolynomial::monomial(9);
    if (fs.size() != 2 || fs[0].label != Partition({3, 3, 2, 2}) || fs[0].gen_poly != q7 ||
        fs[1].label != Partition({5, 1, 1, 1}) || fs[1].gen_poly != q7 + q9) {
      o.fail("singular factors of (5,4,2,2) differ");
    }
    std::vector<std::pair<GrassContext, Partition>> pool;
    for (const auto& [c, b] : sweep(16)) {
      if (partition_blocks(b).size() >= 2) pool.emplace_back(c, b);
    }
    std::mt19937 rng(20241016);
    std::shuffle(pool.begin(), pool.end(), rng);
    for (std::size_t i = 0; i < 20 && i < pool.size(); ++i) {
      const auto& [c, b] = pool[i];
      auto h = local_cohomology_formula(c, b);
      for (const auto& f : singular_locus_multiplicities(c, b)) {
        if (factor_generating_polynomial(h, f.label) != f.gen_poly) {
          o.fail("Gr(" + std::to_string(c.k()) + "," + std::to_string(c.n()) + ") " + to_string(b) + " factor " +
                 to_string(f.label));
        }
      }
    }
    if (pool.size() < 20) o.fail("sample pool too small");
  });

  criterion(9, "Rational smoothness iff rectangle in Gr(3,6) and Gr(2,7)", 10.0, [](Outcome& o) {
    for (const GrassContext ctx : {GrassContext(3, 6), GrassContext(2, 7)}) {
      for (const auto& a : subpartitions(Partition::rectangle(ctx.k(), ctx.width()))) {
        bool rect = partition_blocks(a).size() <= 1;
        if (rational_smoothness(ctx, a) != rect) o.fail(to_string(a));
      }
    }
  });

  criterion(10, "Degenerate cases: empty partition and rectangles", 60.0, [](Outcome& o) {
    for (const auto& [ctx, a] : sweep(12)) {
      if (partition_blocks(a).size() > 1) continue;
      int c = a.codim(ctx);
      Factors want{{c, ctx.dim() + c, a}};
      auto where = "Gr(" + std::to_string(ctx.k()) + "," + std::to_string(ctx.n()) + ") " + to_string(a);
      if (flatten(local_cohomology_formula(ctx, a)) != want) o.fail(where + " formula");
      if (flatten(local_cohomology_oracle(ctx, a, OracleBudget{12, 200000})) != want) o.fail(where + " oracle");
    }
  });

  std::cout << (failures ? "FAILED" : "ALL PASSED") << ": " << (10 - failures) << "/10 criteria" << std::endl;
  return failures ? 1 : 0;
}
