#pragma once

// Weight-graded modules at the level of composition factors, the weight
// filtrations of the parabolic Verma modules N(a) and M(a), highest weights,
// and the partition <-> Grassmannian permutation dictionary.

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "schublc/dyck.hpp"

namespace schublc {

/// One simple factor L(label) sitting in weight p, repeated `multiplicity` times.
struct GradedFactor {
  Partition label;
  int weight = 0;
  int multiplicity = 1;

  /// Tate twist (|label| - weight) / 2.
  int twist() const noexcept { return (label.size() - weight) / 2; }

  friend bool operator==(const GradedFactor&, const GradedFactor&) = default;
};

enum class ModuleRole { DualVerma, Verma, LocalCohomology };

inline const char* role_tag(ModuleRole r) {
  switch (r) {
    case ModuleRole::DualVerma: return "N";
    case ModuleRole::Verma: return "M";
    case ModuleRole::LocalCohomology: return "H";
  }
  return "?";
}

/// Weight p -> factors, labels sorted, equal labels merged.
class WeightGradedModule {
 public:
  WeightGradedModule() = default;
  WeightGradedModule(ModuleRole role, Partition base) : role_(role), base_(std::move(base)) {}

  ModuleRole role() const noexcept { return role_; }
  const Partition& base() const noexcept { return base_; }

  void add(const Partition& label, int weight, int multiplicity = 1) {
    if (multiplicity == 0) return;
    if ((label.size() - weight) % 2 != 0) {
      throw Error(Errc::InternalInconsistency,
                  "odd Tate twist for " + to_string(label) + " at weight " + std::to_string(weight));
    }
    auto& layer = layers_[weight];
    auto it = std::lower_bound(layer.begin(), layer.end(), label,
                               [](const GradedFactor& f, const Partition& l) { return f.label < l; });
    if (it != layer.end() && it->label == label) {
      it->multiplicity += multiplicity;
      if (it->multiplicity == 0) layer.erase(it);
    } else {
      layer.insert(it, GradedFactor{label, weight, multiplicity});
    }
    if (layer.empty()) layers_.erase(weight);
  }

  const std::map<int, std::vector<GradedFactor>>& layers() const noexcept { return layers_; }
  bool empty() const noexcept { return layers_.empty(); }

  /// Factors in weight p (empty when there are none).
  std::vector<GradedFactor> layer(int p) const {
    auto it = layers_.find(p);
    return it == layers_.end() ? std::vector<GradedFactor>{} : it->second;
  }

  /// Total number of factors counted with multiplicity.
  int length() const noexcept {
    int n = 0;
    for (const auto& [p, fs] : layers_) {
      for (const auto& f : fs) n += f.multiplicity;
    }
    return n;
  }

  /// Same factors, weights negated.
  WeightGradedModule reflected(ModuleRole role) const {
    WeightGradedModule out(role, base_);
    for (const auto& [p, fs] : layers_) {
      for (const auto& f : fs) out.add(f.label, -p, f.multiplicity);
    }
    return out;
  }

  /// Equality of the graded factor multisets (role and base ignored).
  bool same_factors(const WeightGradedModule& other) const { return layers_ == other.layers_; }

 private:
  ModuleRole role_ = ModuleRole::LocalCohomology;
  Partition base_;
  std::map<int, std::vector<GradedFactor>> layers_;
};

inline std::string to_string(const WeightGradedModule& m) {
  std::string s;
  for (const auto& [p, fs] : m.layers()) {
    s += "p=" + std::to_string(p) + ":";
    for (const auto& f : fs) {
      s += " L" + to_string(f.label);
      if (f.multiplicity != 1) s += "^" + std::to_string(f.multiplicity);
    }
    s += "\n";
  }
  return s;
}

/// gr_p N(a) = sum over Z_p(a) of L(a^D); M(a) is the same with p -> -p.
/// L(a) sits in weight 2 d_X - |a| of N(a).
inline WeightGradedModule verma_weight_filtration(const GrassContext& ctx, const Partition& a, bool dual) {
  require_fits(a, ctx);
  WeightGradedModule n(ModuleRole::DualVerma, a);
  for (const auto& d : dyck_set(a)) n.add(d.quotient(), 2 * ctx.dim() - a.size() + d.path_count());
  return dual ? n : n.reflected(ModuleRole::Verma);
}

struct HighestWeight {
  std::vector<int> entries;  // length n
  int split = 0;             // the bar sits after entries[split - 1]
};

/// λ = (-a^c_k, ..., -a^c_1 | (a^c)'_1, ..., (a^c)'_{n-k}).
inline HighestWeight highest_weight(const GrassContext& ctx, const Partition& a) {
  require_fits(a, ctx);
  Partition c = complement(a, ctx);
  Partition ct = conjugate(c);
  HighestWeight hw;
  hw.split = ctx.k();
  for (int i = ctx.k(); i >= 1; --i) hw.entries.push_back(-c.row(i));
  for (int j = 1; j <= ctx.width(); ++j) hw.entries.push_back(ct.row(j));
  return hw;
}

inline std::string to_string(const HighestWeight& hw) {
  std::string s = "(";
  for (std::size_t i = 0; i < hw.entries.size(); ++i) {
    if (i) s += (static_cast<int>(i) == hw.split) ? " | " : ",";
    s += std::to_string(hw.entries[i]);
  }
  return s + ")";
}

/// A minimal coset representative (i_1 < ... < i_k, i_{k+1} < ... < i_n).
class GrassPermutation {
 public:
  GrassPermutation(int k, std::vector<int> images) : k_(k), images_(std::move(images)) {
    const int n = static_cast<int>(images_.size());
    std::vector<int> sorted = images_;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> id(static_cast<std::size_t>(n));
    std::iota(id.begin(), id.end(), 1);
    if (k_ <= 0 || k_ >= n || sorted != id) throw Error(Errc::NotGrassmannian, "not a permutation of 1..n");
    if (!std::is_sorted(images_.begin(), images_.begin() + k_) ||
        !std::is_sorted(images_.begin() + k_, images_.end())) {
      throw Error(Errc::NotGrassmannian, "images must increase on both sides of position k");
    }
  }

  int k() const noexcept { return k_; }
  int n() const noexcept { return static_cast<int>(images_.size()); }
  const std::vector<int>& images() const noexcept { return images_; }

  /// Number of inversions.
  int length() const noexcept {
    int inv = 0;
    for (std::size_t x = 0; x < images_.size(); ++x) {
      for (std::size_t y = x + 1; y < images_.size(); ++y) inv += images_[x] > images_[y];
    }
    return inv;
  }

  friend bool operator==(const GrassPermutation&, const GrassPermutation&) = default;

 private:
  int k_;
  std::vector<int> images_;
};

/// i_m = a_{k+1-m} + m for m = 1..k; the remaining values follow in order.
inline GrassPermutation partition_to_perm(const GrassContext& ctx, const Partition& a) {
  require_fits(a, ctx);
  std::vector<int> images;
  std::vector<bool> used(static_cast<std::size_t>(ctx.n() + 1), false);
  for (int m = 1; m <= ctx.k(); ++m) {
    int v = a.row(ctx.k() + 1 - m) + m;
    images.push_back(v);
    used[static_cast<std::size_t>(v)] = true;
  }
  for (int v = 1; v <= ctx.n(); ++v) {
    if (!used[static_cast<std::size_t>(v)]) images.push_back(v);
  }
  return GrassPermutation(ctx.k(), std::move(images));
}

/// a_j = i_{k+1-j} - (k+1-j).
inline Partition perm_to_partition(const GrassContext& ctx, const GrassPermutation& w) {
  if (w.k() != ctx.k() || w.n() != ctx.n()) throw Error(Errc::NotGrassmannian, "permutation of the wrong shape");
  std::vector<int> parts;
  for (int j = 1; j <= ctx.k(); ++j) {
    parts.push_back(w.images()[static_cast<std::size_t>(ctx.k() - j)] - (ctx.k() + 1 - j));
  }
  return Partition(std::move(parts));
}

}  // namespace schublc
