// schublc: local cohomology of Grassmannian Schubert varieties from the
// command line.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schublc/schublc.hpp"

namespace {

using namespace schublc;
using nlohmann::json;

enum Exit { kOk = 0, kInternal = 1, kUsage = 2, kBudget = 3, kMismatch = 4 };

struct RunConfig {
  int k = 0;
  int n = 0;
  std::string partition;
  std::string format = "table";
  bool ascii = false;
  std::optional<std::string> oracle_budget;

  OracleBudget budget() const { return oracle_budget ? OracleBudget::parse(*oracle_budget) : OracleBudget::from_env(); }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

GrassContext context_of(const RunConfig& cfg) {
  if (cfg.k == 0 || cfg.n == 0) throw UsageError("--k and --n are required");
  return GrassContext(cfg.k, cfg.n);
}

Partition partition_of(const RunConfig& cfg, const GrassContext& ctx) {
  Partition a = parse_partition(cfg.partition);
  require_fits(a, ctx);
  return a;
}

std::string label(const Partition& a) { return a.empty() ? "0" : to_string(a); }

// paths get letters, bullets a dot
std::string diagram(const DyckPattern& d, bool ascii) {
  std::vector<Overlay> ov;
  for (std::size_t i = 0; i < d.paths().size(); ++i) {
    std::string g(1, static_cast<char>(i < 26 ? 'A' + i : 'a' + (i - 26) % 26));
    ov.push_back({std::vector<Box>(d.paths()[i].boxes().begin(), d.paths()[i].boxes().end()), g});
  }
  ov.push_back({std::vector<Box>(d.bullets().begin(), d.bullets().end()), ascii ? "*" : "●"});
  return render(d.shape(), ov, ascii);
}

void print_module_table(std::ostream& os, const WeightGradedModule& m) {
  for (const auto& [p, fs] : m.layers()) {
    os << "  p=" << std::setw(3) << p << " :";
    for (const auto& f : fs) {
      os << " L" << label(f.label);
      if (f.multiplicity != 1) os << "^" << f.multiplicity;
      os << "(" << f.twist() << ")";
    }
    os << "\n";
  }
}

int cmd_patterns(const RunConfig& cfg, int min_len, std::optional<int> bullets, bool no_bullets, std::optional<int> degree,
                 std::optional<int> weight) {
  auto ctx = context_of(cfg);
  auto a = partition_of(cfg, ctx);
  PatternQuery q{min_len, !no_bullets, bullets, std::nullopt};
  if (degree) {
    int need = *degree + a.size() - ctx.dim();
    if (bullets && *bullets != need) throw UsageError("--bullets contradicts --degree");
    q.allow_bullets = true;
    q.bullet_count = need;
  }
  if (weight) {
    if (!degree) throw UsageError("--weight needs --degree");
    q.path_count = *weight - *degree - ctx.dim();
  }
  std::vector<DyckPattern> pats;
  if ((!q.bullet_count || *q.bullet_count >= 0) && (!q.path_count || *q.path_count >= 0)) pats = enumerate_patterns(a, q);

  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& d : pats) arr.push_back(io::pattern_json(ctx, d));
    std::cout << json{{"count", pats.size()}, {"patterns", arr}}.dump(2) << "\n";
    return kOk;
  }
  std::cout << pats.size() << " pattern(s) in " << label(a) << "\n";
  for (std::size_t i = 0; i < pats.size(); ++i) {
    const auto& d = pats[i];
    std::cout << "#" << i + 1 << "  q=" << pattern_degree(ctx, d) << " p=" << pattern_weight(ctx, d)
              << " quotient=" << label(d.quotient()) << "  " << to_string(d) << "\n";
    if (cfg.format == "diagram") std::cout << diagram(d, cfg.ascii) << "\n";
  }
  return kOk;
}

int cmd_localcoh(const RunConfig& cfg, bool oracle, std::optional<int> degree) {
  auto ctx = context_of(cfg);
  auto a = partition_of(cfg, ctx);
  LocalCohomology h = oracle ? local_cohomology_oracle(ctx, a, cfg.budget()) : local_cohomology_formula(ctx, a);
  if (degree) {
    LocalCohomology only;
    if (h.count(*degree)) only.emplace(*degree, h.at(*degree));
    h = std::move(only);
  }
  if (cfg.format == "json") {
    std::cout << io::localcoh_json(ctx, a, h, oracle ? "oracle" : "formula").dump(2) << "\n";
    return kOk;
  }
  std::cout << "H^q of Gr(" << ctx.k() << "," << ctx.n() << ") along Z" << label(a) << ", codim " << a.codim(ctx)
            << (oracle ? " [oracle]" : "") << "\n";
  for (const auto& [q, m] : h) {
    if (m.empty()) continue;
    std::cout << "H^" << q << ":\n";
    print_module_table(std::cout, m);
  }
  return kOk;
}

int cmd_verma(const RunConfig& cfg, bool dual) {
  auto ctx = context_of(cfg);
  auto a = partition_of(cfg, ctx);
  auto m = verma_weight_filtration(ctx, a, dual);
  if (cfg.format == "json") {
    std::cout << io::module_json(m).dump(2) << "\n";
    return kOk;
  }
  std::cout << (dual ? "N" : "M") << label(a) << ", highest weight " << to_string(highest_weight(ctx, a)) << "\n";
  print_module_table(std::cout, m);
  return kOk;
}

int cmd_gc(const RunConfig& cfg, std::optional<int> weight) {
  auto ctx = context_of(cfg);
  auto a = partition_of(cfg, ctx);
  auto gc = gc_terms(ctx, a);
  std::vector<GradedChainComplex> pieces;
  if (weight) {
    for (auto& piece : graded_complexes(ctx, a, cfg.budget())) {
      if (piece.weight == *weight) pieces.push_back(std::move(piece));
    }
  }
  if (cfg.format == "json") {
    json out = io::gc_json(gc);
    if (weight) {
      json arr = json::array();
      for (const auto& piece : pieces) arr.push_back(io::graded_piece_json(piece));
      out["graded"] = arr;
      json blocks = json::array();
      for (const auto& blk : koszul_decomposition(ctx, a, *weight)) {
        json ext = json::array();
        for (const Box& x : blk.extension) ext.push_back(io::to_json(x));
        blocks.push_back(json{{"b", io::to_json(blk.b)}, {"pattern", io::pattern_json(ctx, blk.d)}, {"extension", ext},
                              {"q", blk.q}, {"label", io::to_json(blk.label)}});
      }
      out["blocks"] = blocks;
    }
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  for (const auto& [j, bs] : gc.terms) {
    std::cout << "GC^" << j << ":";
    for (std::size_t i = 0; i < bs.size(); ++i) std::cout << (i ? " +" : "") << " N" << label(bs[i]);
    std::cout << "\n";
  }
  if (weight) {
    std::cout << "gr_" << *weight << ":\n";
    for (const auto& piece : pieces) {
      std::cout << "  L" << label(piece.label) << "  dims";
      for (const auto& [j, v] : piece.basis) std::cout << " " << j << ":" << v.size();
      std::cout << "  H";
      for (const auto& [j, d] : piece.cohomology()) std::cout << " " << j << ":" << d;
      std::cout << "\n";
    }
    std::cout << "blocks:\n";
    for (const auto& blk : koszul_decomposition(ctx, a, *weight)) {
      std::cout << "  K(" << label(blk.b) << ", " << to_string(blk.d) << ")  |I|=" << blk.size() << " q=" << blk.q
                << " label L" << label(blk.label) << "\n";
    }
  }
  return kOk;
}

int cmd_det(const RunConfig& cfg, int m, int n, int rank, bool closed_only) {
  DetInstance inst(m, n, rank);
  json per_s = json::array();
  bool match = true;
  std::vector<DetStratum> en;
  if (!closed_only) en = det_multiplicity_enumerated(inst);
  for (int s = 0; s <= rank; ++s) {
    auto closed = det_multiplicity_closed_form(inst, s);
    json row{{"s", s}, {"label", io::to_json(inst.stratum(s))}};
    if (closed_only) {
      row["gen_poly"] = io::to_json(closed);
    } else {
      const auto& st = en[static_cast<std::size_t>(s)];
      row["gen_poly"] = io::to_json(st.gen_poly);
      row["closed_form"] = io::to_json(closed);
      row["weights_ok"] = st.weights_ok;
      match = match && st.weights_ok && st.gen_poly == closed;
    }
    per_s.push_back(row);
  }
  if (cfg.format == "json") {
    std::cout << json{{"m", m}, {"n", n}, {"rank", rank}, {"per_s", per_s},
                      {"match", closed_only ? "skipped" : (match ? "ok" : "mismatch")}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "rank <= " << rank << " in " << m << "x" << n << " matrices: partition " << label(inst.partition())
              << " in Gr(" << n << "," << n + m << ")\n";
    for (int s = 0; s <= rank; ++s) {
      std::cout << "  D_" << s << " " << label(inst.stratum(s)) << ": ";
      if (closed_only) {
        std::cout << to_string(det_multiplicity_closed_form(inst, s)) << "\n";
      } else {
        const auto& st = en[static_cast<std::size_t>(s)];
        std::cout << to_string(st.gen_poly) << "  (closed form " << to_string(det_multiplicity_closed_form(inst, s))
                  << ", weights " << (st.weights_ok ? "ok" : "WRONG") << ")\n";
      }
    }
    if (!closed_only) std::cout << "match: " << (match ? "ok" : "mismatch") << "\n";
  }
  return match ? kOk : kMismatch;
}

int cmd_verify(const RunConfig& cfg, bool sweep, int max_dim, std::size_t start) {
  std::vector<std::pair<GrassContext, Partition>> instances;
  if (!sweep) {
    auto ctx = context_of(cfg);
    instances.emplace_back(ctx, partition_of(cfg, ctx));
  } else if (cfg.k && cfg.n) {
    GrassContext ctx(cfg.k, cfg.n);
    for (const auto& a : subpartitions(Partition::rectangle(ctx.k(), ctx.width()))) instances.emplace_back(ctx, a);
  } else {
    if (max_dim <= 0) throw UsageError("--sweep needs --k/--n or --max-dim");
    for (int n = 2; n <= max_dim + 1; ++n) {
      for (int k = 1; k < n; ++k) {
        if (k * (n - k) > max_dim) continue;
        GrassContext ctx(k, n);
        for (const auto& a : subpartitions(Partition::rectangle(k, n - k))) instances.emplace_back(ctx, a);
      }
    }
  }
  const auto budget = cfg.budget();
  std::size_t failures = 0;
  for (std::size_t i = start; i < instances.size(); ++i) {
    const auto& [ctx, a] = instances[i];
    VerifyReport rep = [&] {
      try {
        return verify_instance(ctx, a, budget);
      } catch (const Error& e) {
        if (e.code() == Errc::BudgetExceeded) {
          std::cerr << "instance " << i << ": " << e.what() << "\n";
        }
        throw;
      }
    }();
    if (!rep.ok()) ++failures;
    if (cfg.format == "json") {
      json j = io::verify_json(rep);
      j["index"] = i;
      std::cout << j.dump() << std::endl;
    } else {
      std::cout << "[" << i << "] Gr(" << ctx.k() << "," << ctx.n() << ") a=" << label(a) << "  "
                << (rep.ok() ? "ok" : "MISMATCH") << "  (" << rep.complexes << " complexes, " << rep.blocks
                << " blocks)" << std::endl;
      for (const auto* v : {&rep.formula_vs_oracle, &rep.dsq_zero, &rep.koszul_exactness, &rep.block_cover,
                            &rep.bijection, &rep.euler}) {
        for (const auto& s : *v) std::cout << "    " << s << "\n";
      }
    }
  }
  if (cfg.format != "json") {
    std::cout << (instances.size() > start ? instances.size() - start : 0) << " instance(s), " << failures
              << " with mismatches\n";
  }
  return failures ? kMismatch : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local cohomology of Schubert varieties in Grassmannians"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool needs_partition) {
    sub->add_option("--k", cfg.k, "subspace dimension k");
    sub->add_option("--n", cfg.n, "ambient dimension n");
    auto* p = sub->add_option("--partition", cfg.partition, "partition, e.g. 5,4,2,2 (0 for empty)");
    if (needs_partition) p->required();
    sub->add_option("--format", cfg.format, "table | json | diagram")
        ->check(CLI::IsMember({"table", "json", "diagram"}));
    sub->add_flag("--ascii", cfg.ascii, "plain ASCII diagrams");
    sub->add_option("--oracle-budget", cfg.oracle_budget, "max d_X[,max basis per piece]");
  };

  int min_len = 3;
  std::optional<int> bullets, degree, weight;
  bool no_bullets = false;
  auto* patterns = app.add_subcommand("patterns", "list admissible augmented Dyck patterns");
  common(patterns, true);
  patterns->add_option("--min-path-len", min_len, "shortest allowed path")->check(CLI::PositiveNumber);
  patterns->add_option("--bullets", bullets, "exact number of bullets");
  patterns->add_flag("--no-bullets", no_bullets, "patterns without bullets only");
  patterns->add_option("--degree", degree, "cohomological degree q (sets the bullet count)");
  patterns->add_option("--weight", weight, "weight p (with --degree)");

  bool oracle = false;
  auto* localcoh = app.add_subcommand("localcoh", "local cohomology with support in Z_a");
  common(localcoh, true);
  localcoh->add_flag("--oracle", oracle, "compute by linear algebra instead of the pattern formula");
  localcoh->add_option("--degree", degree, "only this degree");

  bool dual = false;
  auto* verma = app.add_subcommand("verma", "weight filtration of M(a), or N(a) with --dual");
  common(verma, true);
  verma->add_flag("--dual", dual, "dual Verma module N(a)");

  auto* gc = app.add_subcommand("gc", "Cousin complex terms, and its graded piece with --weight");
  common(gc, true);
  gc->add_option("--weight", weight, "weight p");

  int m = 0, dn = 0, rank = -1;
  bool closed_only = false;
  auto* det = app.add_subcommand("det", "determinantal varieties of m x n matrices of rank <= p");
  det->add_option("--m", m, "columns")->required();
  det->add_option("--n", dn, "rows, n <= m")->required();
  det->add_option("--rank", rank, "rank bound p")->required();
  det->add_flag("--closed-form-only", closed_only, "skip the pattern enumeration");
  det->add_option("--format", cfg.format, "table | json")->check(CLI::IsMember({"table", "json"}));

  bool sweep = false;
  int max_dim = 0;
  std::size_t start = 0;
  auto* verify = app.add_subcommand("verify", "formula vs oracle and structural checks");
  common(verify, false);
  verify->add_flag("--sweep", sweep, "every partition of the context (or of every context up to --max-dim)");
  verify->add_option("--max-dim", max_dim, "with --sweep and no context: all Gr(k,n) with d_X <= this");
  verify->add_option("--start-index", start, "resume a sweep at this instance index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*patterns) return cmd_patterns(cfg, min_len, bullets, no_bullets, degree, weight);
    if (*localcoh) return cmd_localcoh(cfg, oracle, degree);
    if (*verma) return cmd_verma(cfg, dual);
    if (*gc) return cmd_gc(cfg, weight);
    if (*det) return cmd_det(cfg, m, dn, rank, closed_only);
    if (*verify) {
      if (!sweep && cfg.partition.empty() && !(cfg.k && cfg.n)) throw UsageError("verify needs --partition or --sweep");
      return cmd_verify(cfg, sweep, max_dim, start);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code()) {
      case Errc::BudgetExceeded: return kBudget;
      case Errc::InternalInconsistency:
      case Errc::UnexpectedFactorLabel: return kMismatch;
      default: return kUsage;
    }
  }
  return kInternal;
}
