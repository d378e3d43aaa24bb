#include "dust/topology.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "dust/error.hpp"

namespace dust {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Degenerate: return "Degenerate";
    case Verdict::NeverDustGrid: return "NeverDustGrid";
    case Verdict::ConnectedAttractor: return "ConnectedAttractor";
    case Verdict::DustType: return "DustType";
    case Verdict::ComplementObstructed: return "ComplementObstructed";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "Unknown";
}

std::string to_string(const ComplementStatus& s) {
  switch (s.kind) {
    case ComplementStatus::Kind::NotEvaluated: return "NotEvaluated";
    case ComplementStatus::Kind::ConnectedVerifiedToDepth:
      return "ConnectedVerifiedToDepth(" + std::to_string(s.depth) + ")";
    case ComplementStatus::Kind::CertifiedDisconnected:
      return "CertifiedDisconnected(" + std::to_string(s.depth) + ")";
    case ComplementStatus::Kind::UndeterminedAtDepth: return "UndeterminedAtDepth(" + std::to_string(s.depth) + ")";
  }
  return "Unknown";
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

bool prefractal_connected(const Prefractal& grid) {
  const auto& g = grid.grid;
  const auto side = g.side();
  const auto cells = g.kept_cells();
  if (cells.empty()) return false;
  std::vector<char> seen(static_cast<std::size_t>(side * side), 0);
  std::deque<Cell> queue{cells.front()};
  seen[static_cast<std::size_t>(cells.front().row * side + cells.front().col)] = 1;
  std::size_t visited = 0;
  while (!queue.empty()) {
    const auto c = queue.front();
    queue.pop_front();
    ++visited;
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const std::int64_t x = c.col + dx, y = c.row + dy;
        if (!g.at(x, y)) continue;
        auto& s = seen[static_cast<std::size_t>(y * side + x)];
        if (s) continue;
        s = 1;
        queue.push_back({static_cast<int>(x), static_cast<int>(y)});
      }
  }
  return visited == cells.size();
}

namespace {

// Labels removed cells reachable from the border through edge-adjacent removed cells.
std::vector<char> exterior_reach(const CellGrid& g) {
  const auto side = g.side();
  std::vector<char> reached(static_cast<std::size_t>(side * side), 0);
  std::deque<std::pair<std::int64_t, std::int64_t>> queue;
  auto push = [&](std::int64_t x, std::int64_t y) {
    if (x < 0 || y < 0 || x >= side || y >= side || g.at(x, y)) return;
    auto& r = reached[static_cast<std::size_t>(y * side + x)];
    if (r) return;
    r = 1;
    queue.emplace_back(x, y);
  };
  for (std::int64_t i = 0; i < side; ++i) {
    push(i, 0);
    push(i, side - 1);
    push(0, i);
    push(side - 1, i);
  }
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    push(x + 1, y);
    push(x - 1, y);
    push(x, y + 1);
    push(x, y - 1);
  }
  return reached;
}

}  // namespace

bool complement_connected_at_level(const Prefractal& grid) {
  const auto& g = grid.grid;
  const auto reached = exterior_reach(g);
  const auto side = g.side();
  for (std::int64_t y = 0; y < side; ++y)
    for (std::int64_t x = 0; x < side; ++x)
      if (!g.at(x, y) && !reached[static_cast<std::size_t>(y * side + x)]) return false;
  return true;
}

std::vector<int> edge_digits(const Pattern& pattern, Side side) {
  const int p = pattern.p();
  std::vector<int> digits;
  for (int i = 0; i < p; ++i) {
    bool kept = false;
    switch (side) {
      case Side::Left: kept = pattern.contains(0, i); break;
      case Side::Right: kept = pattern.contains(p - 1, i); break;
      case Side::Bottom: kept = pattern.contains(i, 0); break;
      case Side::Top: kept = pattern.contains(i, p - 1); break;
    }
    if (kept) digits.push_back(i);
  }
  return digits;
}

bool trace_intersect(int p, std::span<const int> d1, std::span<const int> d2) {
  if (d1.empty() || d2.empty()) return false;
  // Carry states -1, 0, 1 (index 0..2); v' = p*v + (a - b) must stay in range.
  bool edge[3][3] = {};
  for (int v = -1; v <= 1; ++v)
    for (int a : d1)
      for (int b : d2) {
        const int next = p * v + (a - b);
        if (next >= -1 && next <= 1) edge[v + 1][next + 1] = true;
      }
  // Prune states without successors until stable; an infinite path exists iff the start survives.
  bool alive[3] = {true, true, true};
  for (bool changed = true; changed;) {
    changed = false;
    for (int s = 0; s < 3; ++s) {
      if (!alive[s]) continue;
      bool has_succ = false;
      for (int t = 0; t < 3; ++t) has_succ |= edge[s][t] && alive[t];
      if (!has_succ) {
        alive[s] = false;
        changed = true;
      }
    }
  }
  return alive[1];
}

bool attractor_connected(const Pattern& pattern) {
  const int p = pattern.p();
  const auto& kept = pattern.kept();
  const auto left = edge_digits(pattern, Side::Left);
  const auto right = edge_digits(pattern, Side::Right);
  const auto bottom = edge_digits(pattern, Side::Bottom);
  const auto top = edge_digits(pattern, Side::Top);
  const bool horizontal = trace_intersect(p, right, left);
  const bool vertical = trace_intersect(p, top, bottom);
  // Corner contacts: lower-left copy to upper-right copy, and upper-left copy to lower-right copy.
  const bool rising = pattern.contains(p - 1, p - 1) && pattern.contains(0, 0);
  const bool falling = pattern.contains(p - 1, 0) && pattern.contains(0, p - 1);

  UnionFind uf(pattern.m());
  for (int i = 0; i < pattern.m(); ++i)
    for (int j = 0; j < pattern.m(); ++j) {
      const int dx = kept[j].col - kept[i].col;
      const int dy = kept[j].row - kept[i].row;
      bool contact = false;
      if (dx == 1 && dy == 0) contact = horizontal;
      else if (dx == 0 && dy == 1) contact = vertical;
      else if (dx == 1 && dy == 1) contact = rising;
      else if (dx == 1 && dy == -1) contact = falling;
      if (contact) uf.unite(i, j);
    }
  const int root = uf.find(0);
  for (int i = 1; i < pattern.m(); ++i)
    if (uf.find(i) != root) return false;
  return true;
}

int sealed_level(const Pattern& pattern, int max_level, std::int64_t side_budget) {
  const int p = pattern.p();
  auto full = [&](Side s) { return static_cast<int>(edge_digits(pattern, s).size()) == p; };
  const bool full_left = full(Side::Left), full_right = full(Side::Right);
  const bool full_bottom = full(Side::Bottom), full_top = full(Side::Top);
  if (!(full_left || full_right || full_bottom || full_top)) return 0;

  for (int level = 1; level <= max_level; ++level) {
    if (ipow(p, level) > side_budget) break;
    const auto grid = build_prefractal(pattern, level, side_budget);
    const auto& g = grid.grid;
    const auto side = g.side();
    const auto outside = exterior_reach(g);
    std::vector<char> seen(outside);
    for (std::int64_t y0 = 0; y0 < side; ++y0)
      for (std::int64_t x0 = 0; x0 < side; ++x0) {
        if (g.at(x0, y0) || seen[static_cast<std::size_t>(y0 * side + x0)]) continue;
        // Bounded removed region: sealed iff every kept neighbour faces it with a full side.
        bool sealed = true;
        std::deque<std::pair<std::int64_t, std::int64_t>> queue{{x0, y0}};
        seen[static_cast<std::size_t>(y0 * side + x0)] = 1;
        while (!queue.empty()) {
          auto [x, y] = queue.front();
          queue.pop_front();
          const std::array<std::array<std::int64_t, 2>, 4> steps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
          for (auto [dx, dy] : steps) {
            const auto nx = x + dx, ny = y + dy;
            if (g.at(nx, ny)) {
              // The neighbour's side facing back toward (x, y).
              const bool ok = dx == 1 ? full_left : dx == -1 ? full_right : dy == 1 ? full_bottom : full_top;
              sealed = sealed && ok;
              continue;
            }
            auto& s = seen[static_cast<std::size_t>(ny * side + nx)];
            if (s) continue;
            s = 1;
            queue.emplace_back(nx, ny);
          }
        }
        if (sealed) return level;
      }
  }
  return 0;
}

DustClassification classify(const Pattern& pattern, int depth, std::int64_t side_budget) {
  if (depth < 2) throw Error(ErrorKind::InvalidArgument, "classification depth must be at least 2");
  DustClassification out;
  out.attractor_connected = attractor_connected(pattern);
  if (pattern.m() == 1) {
    out.verdict = Verdict::Degenerate;
    out.evidence.push_back("a single kept cell collapses to a point");
    return out;
  }
  if (pattern.p() == 2) {
    out.verdict = Verdict::NeverDustGrid;
    out.evidence.push_back(std::string("2x2 grid; attractor ") +
                           (out.attractor_connected ? "connected" : "disconnected"));
    return out;
  }
  int max_level = 0;
  while (max_level < depth && ipow(pattern.p(), max_level + 1) <= side_budget) ++max_level;

  // A sealed hole rules out Dust Type whether or not the attractor is connected.
  if (const int level = sealed_level(pattern, max_level, side_budget); level > 0) {
    out.complement = {ComplementStatus::Kind::CertifiedDisconnected, level};
    out.verdict = Verdict::ComplementObstructed;
    out.evidence.push_back("bounded removed region enclosed by full edges at level " + std::to_string(level));
    return out;
  }
  if (out.attractor_connected) {
    out.verdict = Verdict::ConnectedAttractor;
    out.evidence.push_back("contact graph of kept cells is connected");
    return out;
  }
  out.evidence.push_back("contact graph of kept cells is disconnected");

  int failed_at = 0;
  for (int level = 1; level <= max_level && failed_at == 0; ++level)
    if (!complement_connected_at_level(build_prefractal(pattern, level, side_budget))) failed_at = level;
  if (failed_at == 0) {
    out.complement = {ComplementStatus::Kind::ConnectedVerifiedToDepth, max_level};
    out.verdict = Verdict::DustType;
    out.evidence.push_back("complement connected at every level up to " + std::to_string(max_level));
  } else {
    out.complement = {ComplementStatus::Kind::UndeterminedAtDepth, max_level};
    out.verdict = Verdict::Undetermined;
    out.evidence.push_back("complement has an enclosed region at level " + std::to_string(failed_at) +
                           " without a sealing certificate");
  }
  return out;
}

}  // namespace dust
