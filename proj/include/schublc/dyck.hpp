#pragma once

// Dyck paths, augmented Dyck patterns and their admissibility, plus the
// enumeration of the pattern sets Dyck(a), Dyck•(a), Z_p(a), A(a;q), A_p(a;q).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "schublc/young.hpp"

namespace schublc {

enum class DyckViolation {
  OutsideQuadrant,         // some box has row or column < 1
  NotNorthEastWalk,        // a step is neither North nor East
  EndpointsOffAntidiagonal,
  DipsBelowAntidiagonal,
};

inline const char* violation_name(DyckViolation v) {
  switch (v) {
    case DyckViolation::OutsideQuadrant: return "outside the positive quadrant";
    case DyckViolation::NotNorthEastWalk: return "step is not North or East";
    case DyckViolation::EndpointsOffAntidiagonal: return "endpoints on different antidiagonals";
    case DyckViolation::DipsBelowAntidiagonal: return "box below the antidiagonal of the endpoints";
  }
  return "unknown";
}

struct DyckPathReport {
  bool valid = false;
  std::optional<DyckViolation> violation;
  std::size_t witness = 0;  // index of the offending box, when relevant
  int level = 0;
  int length = 0;
};

/// Checks the walk, endpoint and below-the-antidiagonal conditions in that order
/// and names the first one that fails.
inline DyckPathReport validate_dyck_path(std::span<const Box> boxes) {
  if (boxes.empty()) throw Error(Errc::EmptyPath, "a Dyck path needs at least one box");
  DyckPathReport rep;
  rep.length = static_cast<int>(boxes.size());
  rep.level = boxes.front().level();
  for (std::size_t s = 0; s < boxes.size(); ++s) {
    if (boxes[s].row < 1 || boxes[s].col < 1) {
      rep.violation = DyckViolation::OutsideQuadrant;
      rep.witness = s;
      return rep;
    }
  }
  for (std::size_t s = 0; s + 1 < boxes.size(); ++s) {
    if (boxes[s + 1] != boxes[s].north() && boxes[s + 1] != boxes[s].east()) {
      rep.violation = DyckViolation::NotNorthEastWalk;
      rep.witness = s + 1;
      return rep;
    }
  }
  if (boxes.back().level() != rep.level) {
    rep.violation = DyckViolation::EndpointsOffAntidiagonal;
    rep.witness = boxes.size() - 1;
    return rep;
  }
  for (std::size_t s = 0; s < boxes.size(); ++s) {
    if (boxes[s].level() > rep.level) {
      rep.violation = DyckViolation::DipsBelowAntidiagonal;
      rep.witness = s;
      return rep;
    }
  }
  rep.valid = true;
  return rep;
}

inline DyckPathReport validate_dyck_path(std::initializer_list<Box> boxes) {
  return validate_dyck_path(std::span<const Box>(boxes.begin(), boxes.size()));
}

/// A validated Dyck path, boxes in walk order (start at the South-West end).
class DyckPath {
 public:
  explicit DyckPath(std::vector<Box> boxes) : boxes_(std::move(boxes)) {
    auto rep = validate_dyck_path(boxes_);
    if (!rep.valid) {
      throw Error(Errc::InvalidPath, std::string("not a Dyck path: ") + violation_name(*rep.violation));
    }
  }
  DyckPath(std::initializer_list<Box> boxes) : DyckPath(std::vector<Box>(boxes)) {}

  std::span<const Box> boxes() const noexcept { return boxes_; }
  int length() const noexcept { return static_cast<int>(boxes_.size()); }
  int level() const noexcept { return boxes_.front().level(); }
  const Box& start() const noexcept { return boxes_.front(); }
  const Box& end() const noexcept { return boxes_.back(); }
  bool is_singleton() const noexcept { return boxes_.size() == 1; }

  bool contains(const Box& b) const noexcept {
    return std::find(boxes_.begin(), boxes_.end(), b) != boxes_.end();
  }

  /// Canonical order: start row descending, then start column ascending,
  /// then the remaining boxes.
  friend bool operator<(const DyckPath& x, const DyckPath& y) {
    if (x.start().row != y.start().row) return x.start().row > y.start().row;
    if (x.start().col != y.start().col) return x.start().col < y.start().col;
    return x.boxes_ < y.boxes_;
  }
  friend bool operator==(const DyckPath&, const DyckPath&) = default;

 private:
  std::vector<Box> boxes_;
};

/// The boxes directly North, Northwest or West of some box of the path and not
/// on it. Boxes in row 0 or column 0 are kept: they can never be covered by
/// another path, so a path touching the top or left edge cannot be wrapped.
inline std::vector<Box> upper_left_neighbors(const DyckPath& path) {
  std::vector<Box> out;
  for (const Box& b : path.boxes()) {
    for (Box x : {b.north(), b.northwest(), b.west()}) {
      if (!path.contains(x) && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct CoveringWitness {
  std::size_t inner = 0;  // index of D_p
  std::size_t outer = 0;  // index of D_q touching D_p from above/left
  Box uncovered;          // neighbor of D_p in neither D_p nor D_q
};

struct BulletWitness {
  Box bullet;
  Box path_box;  // the bullet lies N/NW/W of this path box
};

struct AdmissibilityReport {
  bool structurally_valid = true;  // paths and bullets disjoint and inside a
  bool bullets_coverable = true;
  bool quotient_is_partition = true;
  std::vector<CoveringWitness> covering;
  std::vector<BulletWitness> bullet_position;

  bool admissible() const noexcept {
    return structurally_valid && bullets_coverable && quotient_is_partition && covering.empty() &&
           bullet_position.empty();
  }
};

class DyckPattern;
AdmissibilityReport pattern_admissible(const DyckPattern& p);
bool bullet_cover_feasible(const DyckPattern& p);

/// An augmented Dyck pattern (D_1, ..., D_r; B) inside a partition a.
class DyckPattern {
 public:
  /// Sorts paths and bullets canonically and caches the admissibility status.
  /// Throws InvalidPattern when boxes overlap or leave the diagram.
  DyckPattern(Partition shape, std::vector<DyckPath> paths, std::vector<Box> bullets = {})
      : shape_(std::move(shape)), paths_(std::move(paths)), bullets_(std::move(bullets)) {
    canonicalize();
    std::set<Box> seen;
    auto claim = [&](const Box& b) {
      if (!shape_.contains(b)) throw Error(Errc::InvalidPattern, to_string(b) + " lies outside " + to_string(shape_));
      if (!seen.insert(b).second) throw Error(Errc::InvalidPattern, to_string(b) + " used twice");
    };
    for (const auto& path : paths_) {
      for (const Box& b : path.boxes()) claim(b);
    }
    for (const Box& b : bullets_) claim(b);
    admissible_ = pattern_admissible(*this).admissible();
  }

  /// The empty pattern in a.
  static DyckPattern empty(Partition shape) { return DyckPattern(std::move(shape), {}, {}); }

  const Partition& shape() const noexcept { return shape_; }
  std::span<const DyckPath> paths() const noexcept { return paths_; }
  std::span<const Box> bullets() const noexcept { return bullets_; }
  /// |𝔻|, the number of paths; bullets are not counted.
  int path_count() const noexcept { return static_cast<int>(paths_.size()); }
  int bullet_count() const noexcept { return static_cast<int>(bullets_.size()); }
  bool admissible() const noexcept { return admissible_; }
  bool has_bullets() const noexcept { return !bullets_.empty(); }

  /// Shortest path length; 0 for a pattern without paths.
  int min_path_len() const noexcept {
    int m = 0;
    for (const auto& p : paths_) m = (m == 0) ? p.length() : std::min(m, p.length());
    return m;
  }

  int support_size() const noexcept {
    int s = bullet_count();
    for (const auto& p : paths_) s += p.length();
    return s;
  }

  std::vector<Box> support() const {
    std::vector<Box> out(bullets_.begin(), bullets_.end());
    for (const auto& p : paths_) out.insert(out.end(), p.boxes().begin(), p.boxes().end());
    std::sort(out.begin(), out.end());
    return out;
  }

  /// a^𝔻 = a \ supp(𝔻); NotAdmissible unless the pattern is admissible.
  Partition quotient() const {
    if (!admissible_) throw Error(Errc::NotAdmissible, "quotient of a non-admissible pattern");
    return *remove_boxes(shape_, support());
  }

  /// Same paths and bullets, re-homed in another diagram (admissibility is
  /// recomputed there).
  DyckPattern rehome(Partition shape) const { return DyckPattern(std::move(shape), paths_, bullets_); }

  friend bool operator==(const DyckPattern& x, const DyckPattern& y) {
    return x.shape_ == y.shape_ && x.paths_ == y.paths_ && x.bullets_ == y.bullets_;
  }
  /// Deterministic listing order: bullet count, path count, paths, bullets.
  friend bool operator<(const DyckPattern& x, const DyckPattern& y) {
    if (x.bullet_count() != y.bullet_count()) return x.bullet_count() < y.bullet_count();
    if (x.path_count() != y.path_count()) return x.path_count() < y.path_count();
    if (x.paths_ != y.paths_) {
      return std::lexicographical_compare(x.paths_.begin(), x.paths_.end(), y.paths_.begin(), y.paths_.end());
    }
    if (x.bullets_ != y.bullets_) return x.bullets_ < y.bullets_;
    return x.shape_ < y.shape_;
  }

 private:
  struct Trusted {};
  DyckPattern(Trusted, Partition shape, std::vector<DyckPath> paths, std::vector<Box> bullets)
      : shape_(std::move(shape)), paths_(std::move(paths)), bullets_(std::move(bullets)), admissible_(true) {
    canonicalize();
  }
  friend class PatternEnumerator;

  void canonicalize() {
    std::sort(paths_.begin(), paths_.end());
    std::sort(bullets_.begin(), bullets_.end());
  }

  Partition shape_;
  std::vector<DyckPath> paths_;
  std::vector<Box> bullets_;
  bool admissible_ = false;
};

inline std::string to_string(const DyckPattern& p) {
  std::string s = "{";
  for (std::size_t i = 0; i < p.paths().size(); ++i) {
    if (i) s += " ";
    s += "[";
    for (const Box& b : p.paths()[i].boxes()) s += to_string(b);
    s += "]";
  }
  if (p.has_bullets()) {
    s += " ;";
    for (const Box& b : p.bullets()) s += " " + to_string(b);
  }
  return s + "}";
}

// Bullet runs. Any decomposition 𝔹 = ∪ B_i into head/tail runs only uses
// boxes of the maximal contiguous runs of bullets East of each path end and
// South of each path start, and those maximal runs are themselves a valid
// decomposition. So 𝔹 is coverable iff the maximal runs exhaust it.
inline bool bullet_cover_feasible(const DyckPattern& p) {
  std::set<Box> bullets(p.bullets().begin(), p.bullets().end());
  std::set<Box> covered;
  for (const auto& path : p.paths()) {
    for (Box x = path.end().east(); bullets.count(x); x = x.east()) covered.insert(x);
    for (Box x = path.start().south(); bullets.count(x); x = x.south()) covered.insert(x);
  }
  return covered.size() == bullets.size();
}

inline AdmissibilityReport pattern_admissible(const DyckPattern& p) {
  AdmissibilityReport rep;
  const auto paths = p.paths();
  std::set<Box> seen;
  for (const Box& b : p.support()) {
    if (!p.shape().contains(b) || !seen.insert(b).second) rep.structurally_valid = false;
  }
  rep.bullets_coverable = bullet_cover_feasible(p);
  if (rep.structurally_valid) rep.quotient_is_partition = remove_boxes(p.shape(), p.support()).has_value();

  for (std::size_t ip = 0; ip < paths.size(); ++ip) {
    const auto around = upper_left_neighbors(paths[ip]);
    for (std::size_t iq = 0; iq < paths.size(); ++iq) {
      if (iq == ip) continue;
      bool touches = std::any_of(around.begin(), around.end(), [&](const Box& x) { return paths[iq].contains(x); });
      if (!touches) continue;
      for (const Box& x : around) {
        if (!paths[iq].contains(x)) {
          rep.covering.push_back({ip, iq, x});
          break;
        }
      }
    }
  }
  for (const Box& bullet : p.bullets()) {
    for (const auto& path : paths) {
      for (const Box& b : path.boxes()) {
        if (bullet == b.north() || bullet == b.northwest() || bullet == b.west()) {
          rep.bullet_position.push_back({bullet, b});
        }
      }
    }
  }
  return rep;
}

/// a^𝔻; throws NotAdmissible.
inline Partition pattern_quotient(const DyckPattern& p) { return p.quotient(); }

namespace detail {

/// Calls emit(path) for every Dyck path starting at `start` whose boxes all
/// satisfy `usable`, with at least min_len boxes.
template <class Usable, class Emit>
void walk_dyck_paths(const Box& start, int min_len, Usable&& usable, Emit&& emit) {
  std::vector<Box> cur{start};
  const int level = start.level();
  std::function<void()> rec = [&]() {
    const Box& here = cur.back();
    if (here.level() == level && static_cast<int>(cur.size()) >= min_len) emit(std::as_const(cur));
    Box up = here.north();
    if (up.row >= 1 && usable(up)) {
      cur.push_back(up);
      rec();
      cur.pop_back();
    }
    Box right = cur.back().east();
    if (right.level() <= level && usable(right)) {
      cur.push_back(right);
      rec();
      cur.pop_back();
    }
  };
  rec();
}

}  // namespace detail

/// Every Dyck path inside a with at least min_len boxes, in canonical order.
inline std::vector<DyckPath> enumerate_dyck_paths(const Partition& a, int min_len = 1) {
  std::vector<DyckPath> out;
  for (const Box& s : a.boxes()) {
    detail::walk_dyck_paths(s, min_len, [&](const Box& b) { return a.contains(b); },
                            [&](const std::vector<Box>& boxes) { out.emplace_back(boxes); });
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Which admissible patterns to enumerate.
struct PatternQuery {
  int min_path_len = 1;
  bool allow_bullets = false;
  std::optional<int> bullet_count;
  std::optional<int> path_count;

  /// Dyck(a): no bullets, paths of any length.
  static PatternQuery dyck() { return {}; }
  /// Dyck•(a) restricted to paths of length >= min_len, any bullet count.
  static PatternQuery augmented(int min_len, std::optional<int> bullets = std::nullopt) {
    return {min_len, true, bullets, std::nullopt};
  }
};

/// Tiles each skew shape a/c (c ⊆ a a partition) by Dyck paths and bullets.
///
/// Boxes are visited column by column from the left, bottom to top inside a
/// column. The first uncovered box met in this order is either a bullet or
/// the start of its path, since a path's start is its lowest box in its
/// leftmost column. All admissibility conditions are checked as soon as the
/// boxes involved are decided:
///   * covering condition: pairwise, when a path is placed;
///   * bullet position: when either the bullet or the path box is placed;
///   * bullet runs: a bullet is a head bullet iff its West neighbor is a path
///     end or a head bullet (already decided); otherwise it must be a tail
///     bullet, which forces the box above it to be a bullet or a path start.
class PatternEnumerator {
 public:
  PatternEnumerator(const Partition& a, PatternQuery query) : a_(a), query_(query) {
    rows_ = a.length() + 2;
    cols_ = a.width() + 2;
    cells_.assign(static_cast<std::size_t>(rows_ * cols_), Cell{});
    for (int j = 1; j <= a.width(); ++j) {
      for (int i = a.column_height(j); i >= 1; --i) order_.push_back({i, j});
    }
  }

  std::vector<DyckPattern> run() {
    out_.clear();
    for (const Partition& c : subpartitions(a_)) {
      for (const Box& b : a_.boxes()) at(b) = Cell{};
      for (const Box& b : a_.boxes()) at(b).state = c.contains(b) ? State::Kept : State::Free;
      paths_.clear();
      bullets_ = 0;
      dfs(0);
    }
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  enum class State : std::uint8_t { Outside, Kept, Free, Path, Bullet };
  struct Cell {
    State state = State::Outside;
    int path = -1;
    bool path_start = false;
    bool path_end = false;
    bool head_run = false;   // bullet reachable East from a path end
    bool needs_tail = false; // bullet that must be part of a tail run
  };
  struct Placed {
    std::vector<Box> boxes;
    std::vector<Box> around;  // upper_left_neighbors
  };

  Cell& at(const Box& b) { return cells_[static_cast<std::size_t>(b.row * cols_ + b.col)]; }
  const Cell& at(const Box& b) const { return cells_[static_cast<std::size_t>(b.row * cols_ + b.col)]; }
  bool in_grid(const Box& b) const { return b.row >= 0 && b.col >= 0 && b.row < rows_ && b.col < cols_; }
  State state(const Box& b) const { return in_grid(b) ? at(b).state : State::Outside; }

  bool pending_tail_below(const Box& b) const {
    Box s = b.south();
    return state(s) == State::Bullet && at(s).needs_tail;
  }

  void dfs(std::size_t idx) {
    if (idx == order_.size()) {
      record();
      return;
    }
    const Box x = order_[idx];
    const bool pending = pending_tail_below(x);
    if (at(x).state != State::Free) {
      if (!pending) dfs(idx + 1);
      return;
    }
    try_bullet(x, idx, pending);
    try_paths(x, idx);
  }

  void try_bullet(const Box& x, std::size_t idx, bool pending) {
    if (!query_.allow_bullets) return;
    if (query_.bullet_count && bullets_ + 1 > *query_.bullet_count) return;
    for (Box y : {x.south(), x.east(), x.south().east()}) {
      if (state(y) == State::Path) return;
    }
    Box w = x.west();
    bool head = state(w) == State::Path ? at(w).path_end : (state(w) == State::Bullet && at(w).head_run);
    bool needs_tail = pending || !head;
    if (needs_tail && x.row == 1) return;
    Cell& c = at(x);
    c.state = State::Bullet;
    c.head_run = head;
    c.needs_tail = needs_tail;
    ++bullets_;
    dfs(idx + 1);
    --bullets_;
    c = Cell{};
    c.state = State::Free;
  }

  void try_paths(const Box& x, std::size_t idx) {
    if (query_.path_count && static_cast<int>(paths_.size()) + 1 > *query_.path_count) return;
    detail::walk_dyck_paths(
        x, query_.min_path_len, [&](const Box& b) { return state(b) == State::Free; },
        [&](const std::vector<Box>& boxes) {
          if (!place(boxes)) return;
          dfs(idx + 1);
          unplace();
        });
  }

  bool place(const std::vector<Box>& boxes) {
    // bullet position: no bullet N/NW/W of a path box
    for (const Box& b : boxes) {
      for (Box y : {b.north(), b.northwest(), b.west()}) {
        if (state(y) == State::Bullet) return false;
      }
    }
    Placed np{boxes, {}};
    for (const Box& b : boxes) {
      for (Box y : {b.north(), b.northwest(), b.west()}) {
        if (std::find(boxes.begin(), boxes.end(), y) == boxes.end() &&
            std::find(np.around.begin(), np.around.end(), y) == np.around.end()) {
          np.around.push_back(y);
        }
      }
    }
    const int id = static_cast<int>(paths_.size());
    for (std::size_t s = 0; s < boxes.size(); ++s) {
      Cell& c = at(boxes[s]);
      c.state = State::Path;
      c.path = id;
      c.path_start = (s == 0);
      c.path_end = (s + 1 == boxes.size());
    }
    if (!covering_ok(np, id)) {
      clear(boxes);
      return false;
    }
    paths_.push_back(std::move(np));
    return true;
  }

  // The new path against every placed path, in both roles.
  bool covering_ok(const Placed& np, int id) const {
    int owner = -2;
    bool touched = false;
    for (const Box& y : np.around) {
      int pid = state(y) == State::Path ? at(y).path : -1;
      if (pid >= 0) touched = true;
      if (owner == -2) owner = pid;
      else if (owner != pid) owner = -3;
    }
    if (touched && owner < 0) return false;
    for (const Placed& old : paths_) {
      std::size_t hits = 0;
      for (const Box& y : old.around) {
        if (state(y) == State::Path && at(y).path == id) ++hits;
      }
      if (hits > 0 && hits != old.around.size()) {
        // the rest of old.around must lie on the new path; anything else fails
        return false;
      }
    }
    return true;
  }

  void clear(const std::vector<Box>& boxes) {
    for (const Box& b : boxes) {
      at(b) = Cell{};
      at(b).state = State::Free;
    }
  }

  void unplace() {
    clear(paths_.back().boxes);
    paths_.pop_back();
  }

  void record() {
    if (query_.bullet_count && bullets_ != *query_.bullet_count) return;
    if (query_.path_count && static_cast<int>(paths_.size()) != *query_.path_count) return;
    std::vector<DyckPath> paths;
    paths.reserve(paths_.size());
    for (const Placed& p : paths_) paths.emplace_back(p.boxes);
    std::vector<Box> bullets;
    for (const Box& b : order_) {
      if (at(b).state == State::Bullet) bullets.push_back(b);
    }
    out_.push_back(DyckPattern(DyckPattern::Trusted{}, a_, std::move(paths), std::move(bullets)));
  }

  Partition a_;
  PatternQuery query_;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Cell> cells_;
  std::vector<Box> order_;
  std::vector<Placed> paths_;
  int bullets_ = 0;
  std::vector<DyckPattern> out_;
};

/// Every admissible pattern in a matching the query, each exactly once.
inline std::vector<DyckPattern> enumerate_patterns(const Partition& a, const PatternQuery& query) {
  return PatternEnumerator(a, query).run();
}

/// Dyck(a): admissible patterns without bullets, any path lengths.
inline std::vector<DyckPattern> dyck_set(const Partition& a) { return enumerate_patterns(a, PatternQuery::dyck()); }

/// Z_p(a) = {𝔻 ∈ Dyck(a) : |𝔻| = p + |a| - 2 d_X}.
inline std::vector<DyckPattern> Z_set(const GrassContext& ctx, const Partition& a, int p) {
  require_fits(a, ctx);
  int r = p + a.size() - 2 * ctx.dim();
  if (r < 0) return {};
  PatternQuery q = PatternQuery::dyck();
  q.path_count = r;
  return enumerate_patterns(a, q);
}

/// A(a;q): admissible augmented patterns with all paths of length >= 3 and
/// |𝔹| = q + |a| - d_X; with p given, additionally |𝔻| = p - q - d_X.
/// Empty when q < c(a).
inline std::vector<DyckPattern> A_set(const GrassContext& ctx, const Partition& a, int q,
                                      std::optional<int> p = std::nullopt) {
  require_fits(a, ctx);
  int bullets = q + a.size() - ctx.dim();
  if (bullets < 0) return {};
  PatternQuery query = PatternQuery::augmented(3, bullets);
  if (p) {
    int r = *p - q - ctx.dim();
    if (r < 0) return {};
    query.path_count = r;
  }
  return enumerate_patterns(a, query);
}

/// Cohomological degree q = |𝔹| + d_X - |a| of a pattern counted in A(a;q).
inline int pattern_degree(const GrassContext& ctx, const DyckPattern& p) {
  return p.bullet_count() + ctx.dim() - p.shape().size();
}

/// Weight p = d_X + q + |𝔻| of a pattern counted in A_p(a;q).
inline int pattern_weight(const GrassContext& ctx, const DyckPattern& p) {
  return ctx.dim() + pattern_degree(ctx, p) + p.path_count();
}

/// Swaps rows and columns: a path is reversed so it still walks North/East,
/// and head bullets become tail bullets.
inline DyckPattern transpose(const DyckPattern& p) {
  auto flip = [](const Box& b) { return Box{b.col, b.row}; };
  std::vector<DyckPath> paths;
  for (const auto& path : p.paths()) {
    std::vector<Box> boxes;
    for (auto it = path.boxes().rbegin(); it != path.boxes().rend(); ++it) boxes.push_back(flip(*it));
    paths.emplace_back(std::move(boxes));
  }
  std::vector<Box> bullets;
  for (const Box& b : p.bullets()) bullets.push_back(flip(b));
  return DyckPattern(conjugate(p.shape()), std::move(paths), std::move(bullets));
}

}  // namespace schublc
