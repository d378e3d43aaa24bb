#include <random>
#include <set>

#include "doctest.h"
#include "dust/error.hpp"
#include "dust/pattern.hpp"
#include "oracles.hpp"

using namespace dust;

TEST_CASE("ascii rows are read top first") {
  const auto p = parse_pattern("...\n...\n#.#\n");
  CHECK(p.p() == 3);
  CHECK(p.m() == 2);
  CHECK(p.contains(0, 0));
  CHECK(p.contains(2, 0));
  CHECK_FALSE(p.contains(1, 0));
  CHECK(to_ascii(p) == "...\n...\n#.#\n");
}

TEST_CASE("json and ascii agree") {
  const auto a = parse_pattern(R"({"p": 3, "kept": [[0,0],[2,0],[0,2],[2,2]]})");
  const auto b = parse_pattern("#.#\n...\n#.#");
  CHECK(a == b);
  CHECK(parse_pattern(to_json(a)) == a);
}

TEST_CASE("malformed patterns are rejected with the right kind") {
  auto kind = [](const char* text) {
    try {
      parse_pattern(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Domain;
  };
  CHECK(kind("###\n###\n###") == ErrorKind::FullGrid);
  CHECK(kind("...\n...\n...") == ErrorKind::EmptyGrid);
  CHECK(kind("#") == ErrorKind::GridTooSmall);
  CHECK(kind("#.\n#") == ErrorKind::Parse);
  CHECK(kind("#x\n..") == ErrorKind::Parse);
  CHECK(kind(R"({"p": 2, "kept": [[0,0],[0,0]]})") == ErrorKind::Parse);
  CHECK(kind(R"({"p": 2, "kept": [[2,0]]})") == ErrorKind::Parse);
  CHECK(kind("") == ErrorKind::Parse);
}

TEST_CASE("the symmetry group is closed and has eight distinct elements") {
  const auto& g = all_symmetries();
  const auto probe = parse_pattern("#..\n.#.\n##.");
  std::set<std::vector<Cell>> images;
  for (const auto& s : g) images.insert(transform(probe, s).kept());
  CHECK(images.size() == 8);
  for (const auto& a : g)
    for (const auto& b : g) {
      const auto ab = transform(transform(probe, a), b);
      bool found = false;
      for (const auto& c : g) found |= transform(probe, c) == ab;
      CHECK(found);
    }
}

TEST_CASE("canonical form is constant on orbits (property)") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 2 + trial % 3;
    const auto pat = oracle::random_pattern(rng, p);
    const auto canon = symmetry_canonical(pat);
    std::set<std::vector<Cell>> orbit;
    for (const auto& s : all_symmetries()) {
      const auto img = transform(pat, s);
      CHECK(symmetry_canonical(img) == canon);
      CHECK(canon <= img);
      orbit.insert(img.kept());
    }
    CHECK(orbit_size(pat) == static_cast<int>(orbit.size()));
  }
}

TEST_CASE("orbit sizes add up to the Burnside count") {
  for (int p = 2; p <= 3; ++p)
    for (int m = 2; m < p * p; ++m) {
      std::int64_t orbits = 0;
      for (std::uint32_t mask = 0; mask < (1u << (p * p)); ++mask) {
        if (std::popcount(mask) != m) continue;
        std::vector<Cell> kept;
        for (int i = 0; i < p * p; ++i)
          if (mask >> i & 1u) kept.push_back({i % p, i / p});
        const Pattern pat(p, kept);
        orbits += symmetry_canonical(pat) == pat;
      }
      CHECK(orbits == oracle::burnside_orbits(p, m));
    }
}

TEST_CASE("prefractal cells match explicit substitution") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pat = oracle::random_pattern(rng, 3);
    for (int level = 0; level <= 3; ++level) {
      const auto grid = build_prefractal(pat, level);
      CHECK(grid.side() == ipow(3, level));
      CHECK(grid.grid.count() == ipow(pat.m(), level));
      const auto want = oracle::cells(pat, level);
      for (const auto& c : grid.grid.kept_cells()) CHECK(want.count({c.col, c.row}) == 1);
      if (level > 0) CHECK(refine(build_prefractal(pat, level - 1)).grid == grid.grid);
    }
  }
}

TEST_CASE("prefractal budget is enforced") {
  const auto pat = parse_pattern("#.\n.#");
  CHECK_THROWS_AS(build_prefractal(pat, 20, 1 << 10), Error);
  CHECK_THROWS_AS(build_prefractal(pat, -1), Error);
}
