#include "dust/counting.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "dust/error.hpp"

namespace dust {

namespace {

constexpr std::array<std::string_view, 9> kTypeNames{
    "EdgeH", "EdgeV", "lu+rd", "ld+ru", "ld+rd+ru", "lu+rd+ru", "lu+ld+ru", "lu+ld+rd", "lu+ld+rd+ru",
};

constexpr std::array<unsigned, 9> kMasks{
    0, 0, kQuadLu | kQuadRd, kQuadLd | kQuadRu, kQuadLd | kQuadRd | kQuadRu, kQuadLu | kQuadRd | kQuadRu,
    kQuadLu | kQuadLd | kQuadRu, kQuadLu | kQuadLd | kQuadRd, kQuadLu | kQuadLd | kQuadRd | kQuadRu,
};

using i128 = __int128;

i128 pow128(i128 base, int e) {
  i128 r = 1;  // 0^0 = 1
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

i128 exact_div(i128 num, i128 den, const char* what) {
  if (den == 0 || num % den != 0)
    throw Error(ErrorKind::InternalInconsistency, std::string("inexact division in ") + what);
  return num / den;
}

}  // namespace

std::string_view to_string(IntersectionType t) { return kTypeNames[index_of(t)]; }

std::optional<IntersectionType> parse_intersection_type(std::string_view name) {
  for (auto t : kAllTypes)
    if (to_string(t) == name) return t;
  if (name == "h" || name == "edge-h") return IntersectionType::EdgeH;
  if (name == "v" || name == "edge-v") return IntersectionType::EdgeV;
  return std::nullopt;
}

bool is_edge_type(IntersectionType t) { return t == IntersectionType::EdgeH || t == IntersectionType::EdgeV; }

unsigned quadrant_mask(IntersectionType t) { return kMasks[index_of(t)]; }

IntersectionType transform(IntersectionType t, Symmetry s) {
  if (is_edge_type(t)) {
    if (!s.transpose) return t;
    return t == IntersectionType::EdgeH ? IntersectionType::EdgeV : IntersectionType::EdgeH;
  }
  struct Quadrant {
    unsigned bit;
    int dx, dy;
  };
  constexpr std::array<Quadrant, 4> quads{{{kQuadLu, -1, 1}, {kQuadLd, -1, -1}, {kQuadRd, 1, -1}, {kQuadRu, 1, 1}}};
  unsigned mask = 0;
  for (const auto& q : quads) {
    if (!(quadrant_mask(t) & q.bit)) continue;
    const auto [dx, dy] = s.apply_vector(q.dx, q.dy);
    for (const auto& r : quads)
      if (r.dx == dx && r.dy == dy) mask |= r.bit;
  }
  for (auto u : kAllTypes)
    if (!is_edge_type(u) && quadrant_mask(u) == mask) return u;
  throw Error(ErrorKind::InternalInconsistency, "type transform left the type set");
}

LevelTally tally(const Prefractal& grid) {
  if (grid.level < 1) throw Error(ErrorKind::InvalidArgument, "tally needs level >= 1");
  const auto& g = grid.grid;
  const std::int64_t side = g.side();
  const std::int64_t p = grid.pattern.p();
  LevelTally out;
  out.level = grid.level;
  auto host = [&](HostCounts& hc, bool on_vertical, bool on_horizontal) {
    if (on_vertical && on_horizontal) ++hc.d;
    else if (on_horizontal) ++hc.h;
    else if (on_vertical) ++hc.v;
    else ++hc.interior;
  };
  for (const auto& c : g.kept_cells()) {
    if (g.at(c.col + 1, c.row)) {
      ++out.total[index_of(IntersectionType::EdgeV)];
      host(out.hosts[index_of(IntersectionType::EdgeV)], (c.col + 1) % p == 0, false);
    }
    if (g.at(c.col, c.row + 1)) {
      ++out.total[index_of(IntersectionType::EdgeH)];
      host(out.hosts[index_of(IntersectionType::EdgeH)], false, (c.row + 1) % p == 0);
    }
  }
  for (std::int64_t y = 1; y < side; ++y)
    for (std::int64_t x = 1; x < side; ++x) {
      unsigned mask = 0;
      if (g.at(x - 1, y)) mask |= kQuadLu;
      if (g.at(x - 1, y - 1)) mask |= kQuadLd;
      if (g.at(x, y - 1)) mask |= kQuadRd;
      if (g.at(x, y)) mask |= kQuadRu;
      if (std::popcount(mask) < 2) continue;
      for (std::size_t t = 2; t < 9; ++t) {
        if ((mask & kMasks[t]) != kMasks[t]) continue;
        ++out.total[t];
        host(out.hosts[t], x % p == 0, y % p == 0);
      }
    }
  return out;
}

std::int64_t count_occurrences(const Prefractal& grid, IntersectionType type) {
  return tally(grid).total[index_of(type)];
}

HostCounts classify_hosts(const Prefractal& fine, IntersectionType type) {
  if (fine.level < 2) throw Error(ErrorKind::InvalidArgument, "host classification needs level >= 2");
  const auto hc = tally(fine).hosts[index_of(type)];
  // Inside level-k cells sit m^k copies of the level-1 configuration.
  const auto level1 = tally(build_prefractal(fine.pattern, 1)).total[index_of(type)];
  const auto expected = ipow(fine.pattern.m(), fine.level - 1) * level1;
  if (hc.interior != expected)
    throw Error(ErrorKind::InternalInconsistency,
                "interior count " + std::to_string(hc.interior) + " != m^k I(1) = " + std::to_string(expected));
  return hc;
}

std::vector<LevelTally> tally_levels(const Pattern& pattern, int max_level) {
  std::vector<LevelTally> out;
  Prefractal grid = build_prefractal(pattern, 1);
  for (int level = 1; level <= max_level; ++level) {
    if (level > 1) grid = refine(grid);
    out.push_back(tally(grid));
  }
  return out;
}

TypeCounts extract_parameters(const Pattern& pattern, IntersectionType type) {
  return extract_parameters(pattern, type, tally_levels(pattern, 4));
}

TypeCounts extract_parameters(const Pattern& pattern, IntersectionType type,
                              const std::vector<LevelTally>& tallies) {
  if (tallies.size() < 4) throw Error(ErrorKind::InvalidArgument, "parameter extraction needs levels 1..4");
  const auto t = index_of(type);
  const std::int64_t m = pattern.m();
  TypeCounts tc;
  tc.type = type;
  tc.m = pattern.m();
  tc.p = pattern.p();
  tc.I1 = tallies[0].total[t];
  for (int k = 1; k <= 3; ++k) {
    const auto& hc = tallies[k].hosts[t];
    if (hc.interior != ipow(m, k) * tc.I1)
      throw Error(ErrorKind::InternalInconsistency, "interior occurrences do not replicate I(1)");
  }
  tc.D1 = tallies[1].hosts[t].d;
  tc.H1 = tallies[1].hosts[t].h;
  tc.V1 = tallies[1].hosts[t].v;
  tc.D2 = tallies[2].hosts[t].d;
  tc.H2 = tallies[2].hosts[t].h;
  tc.V2 = tallies[2].hosts[t].v;
  tc.D3 = tallies[3].hosts[t].d;

  auto multiplier = [&](std::int64_t x1, std::int64_t x2, const char* name) {
    if (x1 == 0) return 0;
    const auto num = x2 - m * x1;
    if (num % x1 != 0 || num / x1 < 0 || num / x1 > pattern.p())
      throw Error(ErrorKind::NonIntegralMultiplier,
                  std::string(name) + " = (" + std::to_string(x2) + " - m*" + std::to_string(x1) + ")/" +
                      std::to_string(x1) + " is not an integer in [0, p]");
    return static_cast<int>(num / x1);
  };
  tc.h = multiplier(tc.H1, tc.H2, "h");
  tc.v = multiplier(tc.V1, tc.V2, "v");

  const std::int64_t rhs1 = tc.D2 - (m + 1) * tc.D1;
  const std::int64_t rhs2 = tc.D3 - m * m * tc.D1 - tc.D2;
  auto binary = [](std::int64_t num, std::int64_t den, const char* name) {
    if (den == 0 || num % den != 0 || (num / den != 0 && num / den != 1))
      throw Error(ErrorKind::NonBinaryCoefficient, std::string(name) + " is not 0 or 1");
    return static_cast<int>(num / den);
  };
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::SingularSystem, what);
  };

  if (tc.H1 > 0 && tc.V1 > 0 && tc.h != tc.v) {
    const std::int64_t det = tc.H1 * tc.V2 - tc.V1 * tc.H2;
    require(det != 0, "singular spawn system");
    tc.dH = binary(rhs1 * tc.V2 - rhs2 * tc.V1, det, "dH");
    tc.dV = binary(tc.H1 * rhs2 - tc.H2 * rhs1, det, "dV");
  } else if (tc.H1 > 0 && tc.V1 > 0) {
    require(rhs2 == (m + tc.h) * rhs1, "level-4 spawn count contradicts the recurrence");
    int matches = 0;
    for (int a = 0; a <= 1; ++a)
      for (int b = 0; b <= 1; ++b)
        if (a * tc.H1 + b * tc.V1 == rhs1) {
          ++matches;
          tc.dH = a;
          tc.dV = b;
        }
    if (matches == 0) throw Error(ErrorKind::NonBinaryCoefficient, "no binary dH, dV fit the spawn total");
    if (matches > 1) {
      tc.dH.reset();
      tc.dV.reset();
      tc.spawn_combined = true;
    }
  } else if (tc.H1 > 0) {
    tc.dH = binary(rhs1, tc.H1, "dH");
    tc.dV = 0;
    require(rhs2 == *tc.dH * tc.H2, "level-4 spawn count contradicts the recurrence");
  } else if (tc.V1 > 0) {
    tc.dV = binary(rhs1, tc.V1, "dV");
    tc.dH = 0;
    require(rhs2 == *tc.dV * tc.V2, "level-4 spawn count contradicts the recurrence");
  } else {
    require(rhs1 == 0 && rhs2 == 0, "D sequence grows without H or V hosts");
    tc.dH = 0;
    tc.dV = 0;
  }
  if (tc.spawn_combined) {
    tc.spawn_h = rhs1;
    tc.spawn_v = 0;
  } else {
    tc.spawn_h = *tc.dH * tc.H1;
    tc.spawn_v = *tc.dV * tc.V1;
  }
  return tc;
}

std::int64_t closed_form_count(const TypeCounts& tc, int m_in, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
  if (m_in < 2) throw Error(ErrorKind::Domain, "closed form needs m >= 2");
  const i128 m = m_in, h = tc.h, v = tc.v;
  if ((tc.H1 != 0 && h == m) || (tc.V1 != 0 && v == m))
    throw Error(ErrorKind::Domain, "multiplier equal to m breaks the closed form");
  const int j = k - 1;
  const i128 mj = pow128(m, j);

  // Spawned-D block: X1 * sum_{i<j} (m^i - x^i)/(m - x), with the x -> 1 limit.
  auto spawn_block = [&](i128 x) -> i128 {
    if (x == 1) return exact_div(mj - (j + 1) * (m - 1) + (m - 2), (m - 1) * (m - 1), "spawn limit");
    const i128 xj = pow128(x, j);
    return exact_div(x - xj - m + xj * m + mj - x * mj, (m - 1) * (x - m) * (x - 1), "spawn block");
  };
  auto host_block = [&](i128 x) -> i128 { return exact_div(mj - pow128(x, j), m - x, "host block"); };

  i128 total = 0;
  if (tc.spawn_h != 0) total += tc.spawn_h * spawn_block(h);
  if (tc.spawn_v != 0) total += tc.spawn_v * spawn_block(v);
  if (tc.H1 != 0) total += tc.H1 * host_block(h);
  if (tc.V1 != 0) total += tc.V1 * host_block(v);
  if (tc.D1 != 0) total += tc.D1 * exact_div(mj - 1, m - 1, "corner block");
  total += tc.I1 * mj;
  return static_cast<std::int64_t>(total);
}

ValidationReport validate_model(const TypeCounts& tc, const std::vector<LevelTally>& tallies) {
  ValidationReport r;
  r.type = tc.type;
  for (std::size_t i = 0; i < tallies.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    r.brute.push_back(tallies[i].total[index_of(tc.type)]);
    r.closed.push_back(closed_form_count(tc, tc.m, k));
    if (!r.first_mismatch && r.brute.back() != r.closed.back()) r.first_mismatch = k;
  }
  return r;
}

ValidationReport validate_model(const Pattern& pattern, IntersectionType type, int k_max) {
  const auto tallies = tally_levels(pattern, std::max(k_max, 4));
  const auto tc = extract_parameters(pattern, type, tallies);
  return validate_model(tc, std::vector<LevelTally>(tallies.begin(), tallies.begin() + k_max));
}

}  // namespace dust
