#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dust {

// A cell of a square grid. Columns count from the left, rows from the bottom.
struct Cell {
  int col = 0;
  int row = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// The generator of a carpet modification: a p x p grid and the cells kept at every step.
class Pattern {
public:
  Pattern(int p, std::vector<Cell> kept);

  int p() const noexcept { return p_; }
  int m() const noexcept { return static_cast<int>(kept_.size()); }
  const std::vector<Cell>& kept() const noexcept { return kept_; }
  bool contains(int col, int row) const noexcept {
    return col >= 0 && row >= 0 && col < p_ && row < p_ && mask_[row * p_ + col] != 0;
  }
  bool contains(Cell c) const noexcept { return contains(c.col, c.row); }

  friend bool operator==(const Pattern& a, const Pattern& b) { return a.p_ == b.p_ && a.kept_ == b.kept_; }
  friend auto operator<=>(const Pattern& a, const Pattern& b) {
    if (auto c = a.p_ <=> b.p_; c != 0) return c;
    return a.kept_ <=> b.kept_;
  }

private:
  int p_;
  std::vector<Cell> kept_;  // sorted, distinct
  std::vector<char> mask_;
};

// ASCII rows top to bottom ('#' kept, '.' removed) or {"p": int, "kept": [[col,row],...]}.
Pattern parse_pattern(std::string_view text);
Pattern load_pattern(const std::string& path);
std::string to_ascii(const Pattern& pattern);
std::string to_json(const Pattern& pattern);

// One element of the dihedral group of the square, acting as transpose, then x flip, then y flip.
struct Symmetry {
  bool transpose = false;
  bool flip_x = false;
  bool flip_y = false;

  Cell apply(Cell c, int side) const noexcept {
    if (transpose) std::swap(c.col, c.row);
    if (flip_x) c.col = side - 1 - c.col;
    if (flip_y) c.row = side - 1 - c.row;
    return c;
  }
  // Action on a displacement vector (no translation part).
  std::array<int, 2> apply_vector(int dx, int dy) const noexcept {
    if (transpose) std::swap(dx, dy);
    if (flip_x) dx = -dx;
    if (flip_y) dy = -dy;
    return {dx, dy};
  }
};

const std::array<Symmetry, 8>& all_symmetries();

Pattern transform(const Pattern& pattern, Symmetry s);

// Least pattern over the dihedral orbit, ordered by sorted kept-cell list.
Pattern symmetry_canonical(const Pattern& pattern);

// Number of distinct patterns in the dihedral orbit.
int orbit_size(const Pattern& pattern);

// Square occupancy bitmap, side x side cells.
class CellGrid {
public:
  CellGrid() = default;
  explicit CellGrid(std::int64_t side);

  std::int64_t side() const noexcept { return side_; }
  bool at(std::int64_t col, std::int64_t row) const noexcept {
    if (col < 0 || row < 0 || col >= side_ || row >= side_) return false;
    const auto i = static_cast<std::uint64_t>(row * side_ + col);
    return (bits_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::int64_t col, std::int64_t row, bool value = true) noexcept {
    const auto i = static_cast<std::uint64_t>(row * side_ + col);
    if (value)
      bits_[i >> 6] |= (std::uint64_t{1} << (i & 63));
    else
      bits_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  std::int64_t count() const noexcept;
  std::vector<Cell> kept_cells() const;

  friend bool operator==(const CellGrid&, const CellGrid&) = default;

private:
  std::int64_t side_ = 0;
  std::vector<std::uint64_t> bits_;
};

inline constexpr std::int64_t kDefaultSideBudget = std::int64_t{1} << 15;

std::int64_t ipow(std::int64_t base, int exponent);

// Level-n approximation of the attractor: p^n x p^n cells.
struct Prefractal {
  Pattern pattern;
  int level = 0;
  CellGrid grid;

  std::int64_t side() const noexcept { return grid.side(); }
};

// Cell (c, r) is kept iff every base-p digit pair of (c, r) is a kept pattern cell.
Prefractal build_prefractal(const Pattern& pattern, int level, std::int64_t side_budget = kDefaultSideBudget);

// Subdivides every kept cell with the pattern.
Prefractal refine(const Prefractal& grid, std::int64_t side_budget = kDefaultSideBudget);

}  // namespace dust
