#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dust/pattern.hpp"

namespace dust {

// The nine local configurations in which neighbouring copies can overlap. Corner types are named by the
// quadrants around a grid point that must be occupied.
enum class IntersectionType : std::uint8_t {
  EdgeH,         // two cells sharing a horizontal edge (stacked)
  EdgeV,         // two cells sharing a vertical edge (side by side)
  DiagLuRd,
  DiagLdRu,
  TripleLdRdRu,
  TripleLuRdRu,
  TripleLuLdRu,
  TripleLuLdRd,
  Quad,
};

inline constexpr std::array<IntersectionType, 9> kAllTypes{
    IntersectionType::EdgeH,        IntersectionType::EdgeV,        IntersectionType::DiagLuRd,
    IntersectionType::DiagLdRu,     IntersectionType::TripleLdRdRu, IntersectionType::TripleLuRdRu,
    IntersectionType::TripleLuLdRu, IntersectionType::TripleLuLdRd, IntersectionType::Quad,
};

inline constexpr unsigned kQuadLu = 1, kQuadLd = 2, kQuadRd = 4, kQuadRu = 8;

std::string_view to_string(IntersectionType t);
std::optional<IntersectionType> parse_intersection_type(std::string_view name);
inline std::size_t index_of(IntersectionType t) { return static_cast<std::size_t>(t); }
bool is_edge_type(IntersectionType t);
// Occupied-quadrant mask of a corner type; 0 for edge types.
unsigned quadrant_mask(IntersectionType t);
IntersectionType transform(IntersectionType t, Symmetry s);

std::int64_t count_occurrences(const Prefractal& grid, IntersectionType type);

struct HostCounts {
  std::int64_t interior = 0;
  std::int64_t d = 0;
  std::int64_t h = 0;
  std::int64_t v = 0;

  std::int64_t total() const { return interior + d + h + v; }
  friend bool operator==(const HostCounts&, const HostCounts&) = default;
};

// Splits the occurrences on a level-(k+1) grid by where they sit on the level-k grid: at a level-k corner
// (D), on a level-k horizontal line (H), on a vertical line (V), or strictly inside a level-k cell.
HostCounts classify_hosts(const Prefractal& fine, IntersectionType type);

// Occurrence totals and host splits for all nine types in one pass over a grid of level >= 1.
struct LevelTally {
  int level = 0;
  std::array<std::int64_t, 9> total{};
  std::array<HostCounts, 9> hosts{};
};
LevelTally tally(const Prefractal& grid);

struct TypeCounts {
  IntersectionType type = IntersectionType::EdgeH;
  int m = 0;
  int p = 0;
  std::int64_t I1 = 0;
  std::int64_t D1 = 0, H1 = 0, V1 = 0;
  std::int64_t D2 = 0, H2 = 0, V2 = 0;
  std::int64_t D3 = 0;
  int h = 0;
  int v = 0;
  // Unset when h == v and the counts only determine dH*H1 + dV*V1.
  std::optional<int> dH;
  std::optional<int> dV;
  std::int64_t spawn_h = 0;  // dH*H1, or the combined spawn total when h == v and unresolved
  std::int64_t spawn_v = 0;  // dV*V1
  bool spawn_combined = false;

  bool all_zero() const {
    return I1 == 0 && D1 == 0 && H1 == 0 && V1 == 0 && D2 == 0 && H2 == 0 && V2 == 0 && D3 == 0;
  }
};

// Raw tallies for levels 1..max_level (index 0 is level 1).
std::vector<LevelTally> tally_levels(const Pattern& pattern, int max_level);

TypeCounts extract_parameters(const Pattern& pattern, IntersectionType type);
// Same, reusing tallies for levels 1..4.
TypeCounts extract_parameters(const Pattern& pattern, IntersectionType type, const std::vector<LevelTally>& tallies);

// Explicit count I(k) from the extracted parameters.
std::int64_t closed_form_count(const TypeCounts& tc, int m, int k);

struct ValidationReport {
  IntersectionType type = IntersectionType::EdgeH;
  std::vector<std::int64_t> brute;   // index k-1
  std::vector<std::int64_t> closed;
  std::optional<int> first_mismatch;  // level k

  bool ok() const { return !first_mismatch.has_value(); }
};

ValidationReport validate_model(const Pattern& pattern, IntersectionType type, int k_max = 5);
ValidationReport validate_model(const TypeCounts& tc, const std::vector<LevelTally>& tallies);

}  // namespace dust
