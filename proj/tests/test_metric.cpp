#include <cmath>
#include <random>

#include "doctest.h"
#include "dust/error.hpp"
#include "dust/metric.hpp"
#include "dust/topology.hpp"
#include "oracles.hpp"

using namespace dust;

namespace {

const double kRoot2 = std::sqrt(2.0);

// Bracket on dist(A, A + offset) from explicit level-n cell pairs.
Interval oracle_gap(const Pattern& pat, Offset o, int level) {
  const auto s = oracle::cells(pat, level);
  const std::int64_t side = ipow(pat.p(), level);
  std::int64_t best = INT64_MAX;
  for (auto [ax, ay] : s)
    for (auto [bx, by] : s) {
      const auto dx = std::max<std::int64_t>(0, std::abs(bx + o[0] * side - ax) - 1);
      const auto dy = std::max<std::int64_t>(0, std::abs(by + o[1] * side - ay) - 1);
      best = std::min(best, dx * dx + dy * dy);
    }
  const double lo = std::sqrt(static_cast<double>(best)) / static_cast<double>(side);
  return {lo, lo + 2.0 * kRoot2 / static_cast<double>(side)};
}

std::vector<Pattern> dust_patterns(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<Pattern> out;
  while (static_cast<int>(out.size()) < count) {
    auto pat = oracle::random_pattern(rng, 3);
    if (pat.m() <= 6 && classify(pat, 4).verdict == Verdict::DustType) out.push_back(pat);
  }
  return out;
}

}  // namespace

TEST_CASE("Cantor threshold is 1/6") {
  const auto cantor = parse_pattern("...\n...\n#.#");
  const MetricContext ctx(cantor, 6);
  CHECK(ctx.alpha().interval().contains(1.0 / 6.0));
  CHECK(ctx.alpha().interval().width() <= 2.0 * kRoot2 * std::pow(3.0, -6));
  CHECK(ctx.completely_dusty() == DustyVerdict::Yes);
  CHECK(threshold_cascade_check(cantor, 5));
}

TEST_CASE("four-corner carpet is completely dusty") {
  const auto four = parse_pattern("#.#\n...\n#.#");
  const MetricContext ctx(four, 6);
  CHECK(ctx.alpha().interval().contains(1.0 / 6.0));
  CHECK(ctx.completely_dusty() == DustyVerdict::Yes);
  CHECK(threshold_cascade_check(four, 5));
}

TEST_CASE("a pattern with an isolated cell is not completely dusty") {
  CHECK(completely_dusty(parse_pattern("#..\n.#.\n#.#"), 5) == DustyVerdict::No);
}

TEST_CASE("connected attractors have no threshold") {
  CHECK_THROWS_AS(threshold_alpha(parse_pattern("..#\n.#.\n#.."), 3), Error);
}

TEST_CASE("attractor touching is decided exactly") {
  const auto row = parse_pattern("...\n...\n###");
  CHECK(attractors_touch(row, {1, 0}));
  CHECK_FALSE(attractors_touch(row, {0, 1}));
  const auto cantor = parse_pattern("...\n...\n#.#");
  CHECK(attractors_touch(cantor, {1, 0}));
  CHECK(copy_gap(cantor, {1, 0}, 4).lo == 0.0);
  CHECK(copy_gap(cantor, {0, 1}, 4).contains(1.0));
}

TEST_CASE("copy gaps agree with explicit cell pairs (property)") {
  for (const auto& pat : dust_patterns(25, 41))
    for (Offset o : {Offset{1, 0}, Offset{0, 1}, Offset{1, 1}, Offset{1, -1}}) {
      const auto got = copy_gap(pat, o, 4);
      const auto want = oracle_gap(pat, o, 3);
      CHECK(got.overlaps(want));
      CHECK(got.lo <= want.hi + 1e-12);
    }
}

TEST_CASE("alpha agrees with a brute-force spanning tree (property)") {
  for (const auto& pat : dust_patterns(25, 43)) {
    const MetricContext ctx(pat, 4);
    const auto b2 = oracle::mst_bottleneck2(pat, 3);
    const double lo = std::sqrt(static_cast<double>(b2)) / 27.0 / 2.0;
    const double hi = lo + kRoot2 / 27.0;
    const auto a = ctx.alpha().interval();
    CHECK(a.lo >= lo - 1e-12);
    CHECK(a.hi <= hi + 1e-12);
    CHECK(prefractal_mst(pat, 3).bottleneck2() == b2);
  }
}

TEST_CASE("threshold brackets are nested across levels (property)") {
  for (const auto& pat : dust_patterns(10, 47)) {
    Interval prev = threshold_alpha(pat, 1).interval();
    for (int level = 2; level <= 4; ++level) {
      const auto cur = threshold_alpha(pat, level).interval();
      CHECK(cur.lo >= prev.lo - 1e-12);
      CHECK(cur.hi <= prev.hi + 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("pair minimax radius is half the copy gap (property)") {
  const std::array<std::pair<IntersectionType, Offset>, 4> pairs{{{IntersectionType::EdgeV, {1, 0}},
                                                                   {IntersectionType::EdgeH, {0, 1}},
                                                                   {IntersectionType::DiagLdRu, {1, 1}},
                                                                   {IntersectionType::DiagLuRd, {1, -1}}}};
  for (const auto& pat : dust_patterns(12, 53))
    for (auto [type, o] : pairs) {
      const auto r = minimax_radius(pat, type, 4);
      const auto g = copy_gap(pat, o, 5);
      CHECK(r.overlaps({g.lo / 2.0 - 1e-12, g.hi / 2.0 + 1e-12}));
    }
}

TEST_CASE("alpha and the dusty verdict are invariant under symmetries (property)") {
  for (const auto& pat : dust_patterns(8, 59)) {
    const MetricContext ctx(pat, 4);
    for (const auto& s : all_symmetries()) {
      const MetricContext img(transform(pat, s), 4);
      CHECK(img.alpha().interval().overlaps(ctx.alpha().interval()));
      CHECK(img.completely_dusty() == ctx.completely_dusty());
    }
  }
}

TEST_CASE("condition C verdicts for the Cantor pattern") {
  const auto cantor = parse_pattern("...\n...\n#.#");
  const MetricContext ctx(cantor, 6);
  // Side-by-side copies touch, so the gap is zero and far below 2 alpha.
  const auto v = ctx.condition_c(IntersectionType::EdgeV, true);
  CHECK(v.status == ConditionStatus::Satisfied);
  CHECK(v.gap.hi == doctest::Approx(0.0));
  CHECK(ctx.condition_c(IntersectionType::EdgeH, false).status == ConditionStatus::NotPresent);
}
