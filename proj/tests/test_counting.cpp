#include <random>

#include "doctest.h"
#include "dust/counting.hpp"
#include "dust/error.hpp"
#include "oracles.hpp"

using namespace dust;

TEST_CASE("type names round trip") {
  for (auto t : kAllTypes) CHECK(parse_intersection_type(to_string(t)) == t);
  CHECK(parse_intersection_type("edge-v") == IntersectionType::EdgeV);
  CHECK_FALSE(parse_intersection_type("Pentagon").has_value());
}

TEST_CASE("occurrence counts match the explicit-set oracle (property)") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const auto pat = oracle::random_pattern(rng, 2 + trial % 3);
    for (int level = 1; level <= 3; ++level) {
      const auto grid = build_prefractal(pat, level);
      for (auto t : kAllTypes) CHECK(count_occurrences(grid, t) == oracle::count(pat, level, t));
    }
  }
}

TEST_CASE("bottom row vertical edges: host splits and 3^k - 1 growth") {
  const auto row = parse_pattern("...\n...\n###");
  const auto h2 = classify_hosts(build_prefractal(row, 2), IntersectionType::EdgeV);
  CHECK(h2 == HostCounts{6, 0, 0, 2});
  const auto h3 = classify_hosts(build_prefractal(row, 3), IntersectionType::EdgeV);
  CHECK(h3 == HostCounts{18, 0, 0, 8});
  const auto tc = extract_parameters(row, IntersectionType::EdgeV);
  CHECK(tc.v == 1);
  CHECK(tc.h == 0);
  std::int64_t pow3 = 1;
  for (int k = 1; k <= 8; ++k) {
    pow3 *= 3;
    CHECK(closed_form_count(tc, row.m(), k) == pow3 - 1);
  }
}

TEST_CASE("transformed types count the same on transformed patterns (property)") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pat = oracle::random_pattern(rng, 3);
    const auto grid = tally(build_prefractal(pat, 2));
    for (const auto& s : all_symmetries()) {
      const auto img = tally(build_prefractal(transform(pat, s), 2));
      for (auto t : kAllTypes) CHECK(img.total[index_of(transform(t, s))] == grid.total[index_of(t)]);
    }
  }
}

TEST_CASE("closed form matches brute force and the recurrence identities hold (property)") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    const auto pat = oracle::random_pattern(rng, 3);
    const auto tallies = tally_levels(pat, 5);
    for (auto t : kAllTypes) {
      TypeCounts tc;
      try {
        tc = extract_parameters(pat, t, tallies);
      } catch (const Error& e) {
        CHECK(e.is_model_violation());
        continue;
      }
      CHECK(tc.D2 == (tc.m + 1) * tc.D1 + tc.spawn_h + tc.spawn_v);
      CHECK(tc.H2 == (tc.m + tc.h) * tc.H1);
      CHECK(tc.V2 == (tc.m + tc.v) * tc.V1);
      CHECK(tc.h >= 0);
      CHECK(tc.h <= 3);
      CHECK(tc.v >= 0);
      CHECK(tc.v <= 3);
      for (int k = 1; k <= 5; ++k)
        CHECK(closed_form_count(tc, pat.m(), k) == tallies[static_cast<std::size_t>(k - 1)].total[index_of(t)]);
      CHECK(validate_model(tc, tallies).ok());
    }
  }
}

TEST_CASE("iterating the host recurrences reproduces the closed form") {
  // Occurrences at level k+1: m^k copies of the level-1 configuration plus those hosted on level-k lines.
  // Each host class gains m^k fresh copies per level; edge hosts also multiply and spawn corners.
  for (const char* text : {"#.#\n.#.\n#.#", "...\n...\n###", "#..\n.#.\n#.#", "##.\n#..\n..#"}) {
    const auto pat = parse_pattern(text);
    for (auto t : kAllTypes) {
      const auto tc = extract_parameters(pat, t);
      const std::int64_t m = pat.m();
      const std::int64_t sh = tc.H1 ? tc.spawn_h / tc.H1 : 0, sv = tc.V1 ? tc.spawn_v / tc.V1 : 0;
      std::int64_t D = tc.D1, H = tc.H1, V = tc.V1, mk = m;
      CHECK(closed_form_count(tc, pat.m(), 1) == tc.I1);
      for (int k = 1; k <= 6; ++k) {
        CHECK(closed_form_count(tc, pat.m(), k + 1) == mk * tc.I1 + D + H + V);
        if (tc.spawn_combined) break;
        D = mk * tc.D1 + D + sh * H + sv * V;
        H = mk * tc.H1 + tc.h * H;
        V = mk * tc.V1 + tc.v * V;
        mk *= m;
      }
    }
  }
}
