#include "dust/render.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "dust/error.hpp"

namespace dust {

std::vector<Site> occurrence_sites(const Prefractal& grid, IntersectionType type) {
  const auto& g = grid.grid;
  const std::int64_t side = g.side();
  std::vector<Site> out;
  if (type == IntersectionType::EdgeV || type == IntersectionType::EdgeH) {
    const bool vertical = type == IntersectionType::EdgeV;
    for (const auto& c : g.kept_cells()) {
      if (vertical && g.at(c.col + 1, c.row)) out.push_back({c.col + 1.0, c.row + 0.5});
      if (!vertical && g.at(c.col, c.row + 1)) out.push_back({c.col + 0.5, c.row + 1.0});
    }
    return out;
  }
  const unsigned need = quadrant_mask(type);
  for (std::int64_t y = 1; y < side; ++y)
    for (std::int64_t x = 1; x < side; ++x) {
      unsigned mask = 0;
      if (g.at(x - 1, y)) mask |= kQuadLu;
      if (g.at(x - 1, y - 1)) mask |= kQuadLd;
      if (g.at(x, y - 1)) mask |= kQuadRd;
      if (g.at(x, y)) mask |= kQuadRu;
      if ((mask & need) == need) out.push_back({static_cast<double>(x), static_cast<double>(y)});
    }
  return out;
}

std::pair<IntersectionType, std::string> parse_highlight(const std::string& arg) {
  const auto colon = arg.find(':');
  const auto type = parse_intersection_type(arg.substr(0, colon));
  if (!type) throw Error(ErrorKind::Parse, "unknown intersection type in '" + arg + "'");
  std::string colour = colon == std::string::npos ? "red" : arg.substr(colon + 1);
  for (char c : colour)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '#')
      throw Error(ErrorKind::Parse, "bad colour in '" + arg + "'");
  if (colour.empty()) throw Error(ErrorKind::Parse, "empty colour in '" + arg + "'");
  return {*type, colour};
}

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  if (std::abs(x) < 5e-5) x = 0.0;
  os << x;
  return os.str();
}

// Lattice points over [-t, 1 + t]^2 lying within distance t of a kept cell.
std::vector<char> contour_mask(const CellGrid& g, double t, int n) {
  const std::int64_t side = g.side();
  const double span = 1.0 + 2.0 * t;
  const auto reach = static_cast<std::int64_t>(std::ceil(t * static_cast<double>(side))) + 1;
  if (static_cast<double>(n + 1) * (n + 1) * (2 * reach + 1) * (2 * reach + 1) > 2e8)
    throw Error(ErrorKind::BudgetExceeded, "contour too fine for this level and radius");
  std::vector<char> inside(static_cast<std::size_t>((n + 1) * (n + 1)), 0);
  const double t2 = t * t * static_cast<double>(side * side);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      const double px = (-t + span * i / n) * static_cast<double>(side);
      const double py = (-t + span * j / n) * static_cast<double>(side);
      const auto cx = static_cast<std::int64_t>(std::floor(px)), cy = static_cast<std::int64_t>(std::floor(py));
      bool hit = false;
      for (auto y = cy - reach; y <= cy + reach && !hit; ++y)
        for (auto x = cx - reach; x <= cx + reach && !hit; ++x) {
          if (!g.at(x, y)) continue;
          const double dx = std::max({static_cast<double>(x) - px, 0.0, px - static_cast<double>(x + 1)});
          const double dy = std::max({static_cast<double>(y) - py, 0.0, py - static_cast<double>(y + 1)});
          hit = dx * dx + dy * dy < t2;
        }
      inside[static_cast<std::size_t>(j * (n + 1) + i)] = hit;
    }
  return inside;
}

}  // namespace

std::string render_svg(const Prefractal& grid, const RenderOptions& options) {
  if (options.canvas <= 0) throw Error(ErrorKind::InvalidArgument, "canvas must be positive");
  if (options.contour_t && !(*options.contour_t >= 0.0))
    throw Error(ErrorKind::InvalidArgument, "contour radius must be non-negative");
  const auto& g = grid.grid;
  const std::int64_t side = g.side();
  if (side * side > (std::int64_t{1} << 20)) throw Error(ErrorKind::BudgetExceeded, "grid too large to render");
  const double margin = options.contour_t.value_or(0.0);
  const double span = 1.0 + 2.0 * margin;
  const double scale = options.canvas / span;
  // Unit-square point to SVG coordinates, y pointing down.
  auto sx = [&](double x) { return (x + margin) * scale; };
  auto sy = [&](double y) { return (1.0 + margin - y) * scale; };
  const double cell = 1.0 / static_cast<double>(side);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.canvas << "\" height=\"" << options.canvas
     << "\" viewBox=\"0 0 " << options.canvas << ' ' << options.canvas << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<g fill=\"black\">\n";
  for (const auto& c : g.kept_cells())
    os << "<rect x=\"" << num(sx(c.col * cell)) << "\" y=\"" << num(sy((c.row + 1) * cell)) << "\" width=\""
       << num(cell * scale) << "\" height=\"" << num(cell * scale) << "\"/>\n";
  os << "</g>\n";

  if (options.contour_t && *options.contour_t > 0.0) {
    const int n = std::max(2, options.contour_samples);
    const auto inside = contour_mask(g, *options.contour_t, n);
    const double h = span / n;
    auto in = [&](int i, int j) {
      return i >= 0 && j >= 0 && i <= n && j <= n && inside[static_cast<std::size_t>(j * (n + 1) + i)];
    };
    os << "<path fill=\"none\" stroke=\"orange\" stroke-width=\"1\" d=\"";
    // Boundary of the union of sample pixels, each centred on its lattice point.
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i) {
        if (!in(i, j)) continue;
        const double x0 = -margin + (i - 0.5) * h, x1 = x0 + h;
        const double y0 = -margin + (j - 0.5) * h, y1 = y0 + h;
        if (!in(i + 1, j)) os << 'M' << num(sx(x1)) << ' ' << num(sy(y0)) << 'L' << num(sx(x1)) << ' ' << num(sy(y1));
        if (!in(i - 1, j)) os << 'M' << num(sx(x0)) << ' ' << num(sy(y0)) << 'L' << num(sx(x0)) << ' ' << num(sy(y1));
        if (!in(i, j + 1)) os << 'M' << num(sx(x0)) << ' ' << num(sy(y1)) << 'L' << num(sx(x1)) << ' ' << num(sy(y1));
        if (!in(i, j - 1)) os << 'M' << num(sx(x0)) << ' ' << num(sy(y0)) << 'L' << num(sx(x1)) << ' ' << num(sy(y0));
      }
    os << "\"/>\n";
  }

  const double radius = std::max(1.5, std::min(6.0, 0.15 * cell * scale));
  for (const auto& [type, colour] : options.highlight) {
    os << "<g class=\"" << to_string(type) << "\" fill=\"" << colour << "\">\n";
    for (const auto& s : occurrence_sites(grid, type))
      os << "<circle cx=\"" << num(sx(s.x * cell)) << "\" cy=\"" << num(sy(s.y * cell)) << "\" r=\"" << num(radius)
         << "\"/>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace dust
