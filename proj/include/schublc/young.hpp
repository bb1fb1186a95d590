#pragma once

// Young diagrams inside the k x (n-k) rectangle of the Grassmannian Gr(k,n).
//
// Conventions: row 1 is the top row and rows grow downward; column 1 is the
// leftmost column. "North" of (i,j) is (i-1,j) and "East" is (i,j+1).

#include <algorithm>
#include <cctype>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "schublc/error.hpp"

namespace schublc {

struct Box {
  int row = 1;
  int col = 1;

  constexpr int level() const noexcept { return row + col; }
  constexpr Box north() const noexcept { return {row - 1, col}; }
  constexpr Box south() const noexcept { return {row + 1, col}; }
  constexpr Box east() const noexcept { return {row, col + 1}; }
  constexpr Box west() const noexcept { return {row, col - 1}; }
  constexpr Box northwest() const noexcept { return {row - 1, col - 1}; }

  friend constexpr auto operator<=>(const Box&, const Box&) = default;
};

inline std::string to_string(const Box& b) {
  return "(" + std::to_string(b.row) + "," + std::to_string(b.col) + ")";
}

/// The pair (k, n) fixing Gr(k,n).
class GrassContext {
 public:
  GrassContext(int k, int n) : k_(k), n_(n) {
    if (k <= 0 || n <= k) {
      throw Error(Errc::InvalidContext,
                  "need 0 < k < n, got k=" + std::to_string(k) + " n=" + std::to_string(n));
    }
  }

  int k() const noexcept { return k_; }
  int n() const noexcept { return n_; }
  /// Number of columns of the ambient rectangle, n - k.
  int width() const noexcept { return n_ - k_; }
  /// d_X = dim Gr(k,n) = k(n-k).
  int dim() const noexcept { return k_ * (n_ - k_); }

  friend bool operator==(const GrassContext&, const GrassContext&) = default;

 private:
  int k_;
  int n_;
};

/// A partition stored without trailing zeros. Rectangle membership is checked
/// against a GrassContext when needed, never encoded in the type.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 0) {
        throw Error(Errc::ParseError, "negative part " + std::to_string(parts_[i]));
      }
      if (i > 0 && parts_[i] > parts_[i - 1]) {
        throw Error(Errc::NotWeaklyDecreasing, "parts must be weakly decreasing");
      }
    }
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  }

  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  static Partition rectangle(int rows, int cols) {
    if (rows <= 0 || cols <= 0) return {};
    return Partition(std::vector<int>(static_cast<std::size_t>(rows), cols));
  }

  const std::vector<int>& parts() const noexcept { return parts_; }
  int length() const noexcept { return static_cast<int>(parts_.size()); }
  bool empty() const noexcept { return parts_.empty(); }

  int size() const noexcept {
    int s = 0;
    for (int p : parts_) s += p;
    return s;
  }

  /// Length of row i (1-based); zero past the last part.
  int row(int i) const noexcept {
    return (i >= 1 && i <= length()) ? parts_[static_cast<std::size_t>(i - 1)] : 0;
  }

  /// Height of column j (1-based), i.e. the j-th part of the conjugate.
  int column_height(int j) const noexcept {
    int h = 0;
    while (h < length() && parts_[static_cast<std::size_t>(h)] >= j) ++h;
    return j >= 1 ? h : 0;
  }

  int width() const noexcept { return parts_.empty() ? 0 : parts_.front(); }

  bool contains(const Box& b) const noexcept {
    return b.row >= 1 && b.col >= 1 && b.col <= row(b.row);
  }

  /// Containment of diagrams, this ⊇ other.
  bool contains(const Partition& other) const noexcept {
    if (other.length() > length()) return false;
    for (int i = 1; i <= other.length(); ++i) {
      if (other.row(i) > row(i)) return false;
    }
    return true;
  }

  bool fits(const GrassContext& ctx) const noexcept {
    return length() <= ctx.k() && width() <= ctx.width();
  }

  /// Empty diagrams count as rectangles.
  bool is_rectangle() const noexcept {
    return parts_.empty() || parts_.front() == parts_.back();
  }

  /// Boxes in row-major order.
  std::vector<Box> boxes() const {
    std::vector<Box> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (int i = 1; i <= length(); ++i) {
      for (int j = 1; j <= row(i); ++j) out.push_back({i, j});
    }
    return out;
  }

  /// Codimension d_X - |a| of the Schubert variety Z_a.
  int codim(const GrassContext& ctx) const noexcept { return ctx.dim() - size(); }

  friend auto operator<=>(const Partition&, const Partition&) = default;
  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// "(5,4,2,2)"; the empty partition prints as "(0)".
inline std::string to_string(const Partition& a) {
  if (a.empty()) return "(0)";
  std::string s = "(";
  for (int i = 1; i <= a.length(); ++i) {
    if (i > 1) s += ",";
    s += std::to_string(a.row(i));
  }
  return s + ")";
}

inline void require_fits(const Partition& a, const GrassContext& ctx) {
  if (!a.fits(ctx)) {
    throw Error(Errc::DoesNotFit, to_string(a) + " does not fit the " + std::to_string(ctx.k()) +
                                      "x" + std::to_string(ctx.width()) + " rectangle");
  }
}

/// Parses "a1,a2,...", separators being commas and/or whitespace.
/// The empty string and "0" both denote the empty partition.
inline Partition parse_partition(std::string_view text) {
  auto is_space = [](char ch) { return std::isspace(static_cast<unsigned char>(ch)) != 0; };
  if (std::all_of(text.begin(), text.end(), is_space)) return {};
  std::vector<int> parts;
  std::size_t field_start = 0;
  while (field_start <= text.size()) {
    std::size_t comma = text.find(',', field_start);
    std::string_view field = text.substr(field_start, comma == std::string_view::npos ? std::string_view::npos
                                                                                      : comma - field_start);
    std::size_t tokens = 0;
    std::size_t pos = 0;
    while (pos < field.size()) {
      while (pos < field.size() && is_space(field[pos])) ++pos;
      std::size_t end = pos;
      while (end < field.size() && !is_space(field[end])) ++end;
      if (end == pos) break;
      std::string token(field.substr(pos, end - pos));
      if (token.size() > 9 || !std::all_of(token.begin(), token.end(),
                                          [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; })) {
        throw Error(Errc::ParseError, "bad token \"" + token + "\"");
      }
      parts.push_back(std::stoi(token));
      ++tokens;
      pos = end;
    }
    if (tokens == 0) throw Error(Errc::ParseError, "empty field in \"" + std::string(text) + "\"");
    if (comma == std::string_view::npos) break;
    field_start = comma + 1;
  }
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i] > parts[i - 1]) {
      throw Error(Errc::NotWeaklyDecreasing, "\"" + std::string(text) + "\" is not weakly decreasing");
    }
  }
  return Partition(std::move(parts));
}

namespace detail {

inline void subpartitions_rec(const Partition& a, int row, int bound, std::vector<int>& cur,
                              std::optional<int> target, int running, std::vector<Partition>& out) {
  if (row > a.length() || bound == 0) {
    if (!target || *target == running) out.emplace_back(cur);
    return;
  }
  int hi = std::min(bound, a.row(row));
  for (int v = 0; v <= hi; ++v) {
    if (target && running + v > *target) break;
    cur.push_back(v);
    subpartitions_rec(a, row + 1, v, cur, target, running + v, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// All b ⊆ a (optionally with |b| = size), in lexicographic order of parts.
inline std::vector<Partition> subpartitions(const Partition& a, std::optional<int> size = std::nullopt) {
  std::vector<Partition> out;
  if (size && (*size < 0 || *size > a.size())) return out;
  std::vector<int> cur;
  detail::subpartitions_rec(a, 1, a.width(), cur, size, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Complement of a in the k x (n-k) rectangle: (a^c)_i = n-k - a_{k+1-i}.
inline Partition complement(const Partition& a, const GrassContext& ctx) {
  require_fits(a, ctx);
  std::vector<int> parts(static_cast<std::size_t>(ctx.k()));
  for (int i = 1; i <= ctx.k(); ++i) {
    parts[static_cast<std::size_t>(i - 1)] = ctx.width() - a.row(ctx.k() + 1 - i);
  }
  return Partition(std::move(parts));
}

inline Partition conjugate(const Partition& a) {
  std::vector<int> parts;
  for (int j = 1; j <= a.width(); ++j) parts.push_back(a.column_height(j));
  return Partition(std::move(parts));
}

/// Removable boxes (i, a_i) with a_i > a_{i+1}, top to bottom.
inline std::vector<Box> corners(const Partition& a) {
  std::vector<Box> out;
  for (int i = 1; i <= a.length(); ++i) {
    if (a.row(i) > a.row(i + 1)) out.push_back({i, a.row(i)});
  }
  return out;
}

/// Boxes that can be added to b while staying inside a.
inline std::vector<Box> addable_boxes(const Partition& b, const Partition& a) {
  std::vector<Box> out;
  for (int i = 1; i <= a.length(); ++i) {
    Box x{i, b.row(i) + 1};
    if (x.col <= a.row(i) && (i == 1 || b.row(i - 1) >= x.col)) out.push_back(x);
  }
  return out;
}

/// Adds a box to a partition; returns nothing if the result is not a partition.
inline std::optional<Partition> add_box(const Partition& b, const Box& x) {
  if (x.row < 1 || x.col != b.row(x.row) + 1) return std::nullopt;
  if (x.row > 1 && b.row(x.row - 1) < x.col) return std::nullopt;
  std::vector<int> parts = b.parts();
  if (static_cast<int>(parts.size()) < x.row) parts.resize(static_cast<std::size_t>(x.row), 0);
  parts[static_cast<std::size_t>(x.row - 1)] += 1;
  return Partition(std::move(parts));
}

/// a \ S when the remaining boxes form a Young diagram; nothing otherwise.
inline std::optional<Partition> remove_boxes(const Partition& a, std::span<const Box> boxes) {
  std::vector<std::vector<char>> removed(static_cast<std::size_t>(a.length()));
  for (int i = 1; i <= a.length(); ++i) removed[static_cast<std::size_t>(i - 1)].assign(static_cast<std::size_t>(a.row(i)), 0);
  for (const Box& b : boxes) {
    if (!a.contains(b)) throw Error(Errc::BoxOutsideDiagram, to_string(b) + " is not a box of " + to_string(a));
    removed[static_cast<std::size_t>(b.row - 1)][static_cast<std::size_t>(b.col - 1)] = 1;
  }
  std::vector<int> parts;
  for (int i = 1; i <= a.length(); ++i) {
    const auto& r = removed[static_cast<std::size_t>(i - 1)];
    int kept = 0;
    while (kept < a.row(i) && !r[static_cast<std::size_t>(kept)]) ++kept;
    for (int j = kept; j < a.row(i); ++j) {
      if (!r[static_cast<std::size_t>(j)]) return std::nullopt;
    }
    if (!parts.empty() && kept > parts.back()) return std::nullopt;
    parts.push_back(kept);
  }
  return Partition(std::move(parts));
}

inline std::optional<Partition> remove_boxes(const Partition& a, std::initializer_list<Box> boxes) {
  return remove_boxes(a, std::span<const Box>(boxes.begin(), boxes.size()));
}

struct Overlay {
  std::vector<Box> boxes;
  std::string glyph;
};

/// Grid rendering of a diagram; later overlays win on shared boxes. Cells are
/// separated by one space, rows by newlines.
inline std::string render(const Partition& a, std::span<const Overlay> overlays, bool ascii = false) {
  if (a.empty()) return ascii ? "0\n" : "∅\n";
  const std::string plain = ascii ? "." : "□";
  std::vector<std::vector<std::string>> grid;
  for (int i = 1; i <= a.length(); ++i) grid.emplace_back(static_cast<std::size_t>(a.row(i)), plain);
  for (const Overlay& ov : overlays) {
    for (const Box& b : ov.boxes) {
      if (a.contains(b)) grid[static_cast<std::size_t>(b.row - 1)][static_cast<std::size_t>(b.col - 1)] = ov.glyph;
    }
  }
  std::string out;
  for (const auto& row : grid) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ' ';
      out += row[j];
    }
    out += '\n';
  }
  return out;
}

inline std::string render(const Partition& a, bool ascii = false) {
  return render(a, std::span<const Overlay>{}, ascii);
}

}  // namespace schublc
