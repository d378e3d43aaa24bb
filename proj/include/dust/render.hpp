#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dust/counting.hpp"
#include "dust/pattern.hpp"

namespace dust {

struct RenderOptions {
  std::vector<std::pair<IntersectionType, std::string>> highlight;  // type, CSS colour
  std::optional<double> contour_t;                                  // in unit-square coordinates
  int canvas = 512;
  int contour_samples = 256;  // lattice points per side for the contour
};

// Marker position of an occurrence, in cell units of the grid (origin bottom left).
struct Site {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Site&, const Site&) = default;
};

// One site per occurrence: edge midpoints for edge types, shared grid corners otherwise.
std::vector<Site> occurrence_sites(const Prefractal& grid, IntersectionType type);

std::string render_svg(const Prefractal& grid, const RenderOptions& options = {});

// Parses "EdgeV:red" style highlight arguments.
std::pair<IntersectionType, std::string> parse_highlight(const std::string& arg);

}  // namespace dust
