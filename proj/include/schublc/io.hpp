#pragma once

// JSON encodings shared by the command-line tool and the tests.

#include <string>
#include <vector>

#include <json.hpp>

#include "schublc/det.hpp"
#include "schublc/verify.hpp"

namespace schublc::io {

using nlohmann::json;

inline json to_json(const Partition& a) { return json(a.parts()); }
inline json to_json(const Box& b) { return json::array({b.row, b.col}); }
inline json to_json(const GrassContext& ctx) { return json{{"k", ctx.k()}, {"n", ctx.n()}}; }

inline json to_json(const IntPolynomial& p) {
  json out = json::array();
  for (const auto& [e, c] : p.terms()) out.push_back(json::array({e, c}));
  return out;
}

inline json pattern_json(const GrassContext& ctx, const DyckPattern& d) {
  json paths = json::array();
  for (const auto& path : d.paths()) {
    json boxes = json::array();
    for (const Box& b : path.boxes()) boxes.push_back(to_json(b));
    paths.push_back(boxes);
  }
  json bullets = json::array();
  for (const Box& b : d.bullets()) bullets.push_back(to_json(b));
  json out{{"context", to_json(ctx)},
           {"partition", to_json(d.shape())},
           {"paths", paths},
           {"bullets", bullets},
           {"r", d.path_count()},
           {"bullets_count", d.bullet_count()},
           {"admissible", d.admissible()}};
  if (d.admissible()) {
    out["quotient"] = to_json(d.quotient());
    out["q"] = pattern_degree(ctx, d);
    out["p"] = pattern_weight(ctx, d);
  }
  return out;
}

inline json module_json(const WeightGradedModule& m) {
  json layers = json::array();
  for (const auto& [p, fs] : m.layers()) {
    json factors = json::array();
    for (const auto& f : fs) {
      factors.push_back(json{{"label", to_json(f.label)}, {"twist", f.twist()}, {"mult", f.multiplicity}});
    }
    layers.push_back(json{{"p", p}, {"factors", factors}});
  }
  return json{{"role", role_tag(m.role())}, {"base", to_json(m.base())}, {"layers", layers}};
}

inline json localcoh_json(const GrassContext& ctx, const Partition& a, const LocalCohomology& h,
                          const std::string& source) {
  json degrees = json::array();
  for (const auto& [q, m] : h) {
    if (!m.empty()) degrees.push_back(json{{"q", q}, {"module", module_json(m)}});
  }
  return json{{"context", to_json(ctx)}, {"partition", to_json(a)}, {"source", source}, {"degrees", degrees}};
}

inline json check_json(const std::vector<std::string>& failures) {
  if (failures.empty()) return "ok";
  return json(failures);
}

inline json verify_json(const VerifyReport& r) {
  return json{{"instance", {{"context", to_json(r.ctx)}, {"partition", to_json(r.a)}}},
              {"formula_vs_oracle", check_json(r.formula_vs_oracle)},
              {"euler", check_json(r.euler)},
              {"dsq_zero", check_json(r.dsq_zero)},
              {"koszul_exactness", check_json(r.koszul_exactness)},
              {"block_cover", check_json(r.block_cover)},
              {"bijection", check_json(r.bijection)},
              {"complexes", r.complexes},
              {"blocks", r.blocks},
              {"ok", r.ok()}};
}

inline json gc_json(const CousinComplex& gc) {
  json terms = json::array();
  for (const auto& [j, bs] : gc.terms) {
    json parts = json::array();
    for (const auto& b : bs) parts.push_back(to_json(b));
    terms.push_back(json{{"j", j}, {"partitions", parts}});
  }
  json diffs = json::array();
  for (const auto& [from, to] : gc.differentials) diffs.push_back(json{{"from", to_json(from)}, {"to", to_json(to)}});
  return json{{"context", to_json(gc.ctx)}, {"partition", to_json(gc.top)}, {"terms", terms}, {"differentials", diffs}};
}

inline json graded_piece_json(const GradedChainComplex& gc) {
  json dims = json::object(), ranks = json::object(), h = json::object();
  for (const auto& [j, v] : gc.basis) dims[std::to_string(j)] = v.size();
  for (const auto& [j, m] : gc.differential) ranks[std::to_string(j)] = rank_checked(m);
  for (const auto& [j, d] : gc.cohomology()) h[std::to_string(j)] = d;
  return json{{"label", to_json(gc.label)}, {"p", gc.weight}, {"dims", dims}, {"ranks", ranks}, {"cohomology", h}};
}

}  // namespace schublc::io
