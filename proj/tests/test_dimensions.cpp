#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dust/dimensions.hpp"
#include "oracles.hpp"

using namespace dust;

namespace {

using Seq = std::vector<long double>;

// Applies (E - r) to a sequence, E the shift.
Seq shift_minus(const Seq& s, int r) {
  Seq out;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) out.push_back(s[i + 1] - r * s[i]);
  return out;
}

bool annihilates(Seq s, const RootOrders& roots, int m) {
  s = shift_minus(s, m);
  for (const auto& [r, k] : roots)
    for (int i = 0; i < k; ++i) s = shift_minus(s, r);
  if (s.empty()) return false;
  for (auto x : s)
    if (std::abs(x) > 0.5L) return false;
  return true;
}

std::vector<Pattern> dust_sample(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<Pattern> out;
  while (static_cast<int>(out.size()) < count) {
    auto pat = oracle::random_pattern(rng, 3);
    if (pat.m() <= 6 && classify(pat, 4).verdict == Verdict::DustType) out.push_back(pat);
  }
  return out;
}

}  // namespace

TEST_CASE("Cantor and four-corner combined families") {
  const auto cantor = analyze(parse_pattern("...\n...\n#.#"));
  REQUIRE(cantor.dimensions.status == DimensionStatus::Ok);
  REQUIRE(cantor.dimensions.combined.size() == 1);
  CHECK(cantor.dimensions.combined[0].r == 2);
  CHECK(cantor.dimensions.combined[0].order == 1);
  CHECK(cantor.dimensions.combined[0].sigma() == doctest::Approx(std::log(2.0) / std::log(3.0)));
  CHECK(cantor.dimensions.combined[0].period() == doctest::Approx(2.0 * std::numbers::pi / std::log(3.0)));
  CHECK(cantor.completely_dusty == DustyVerdict::Yes);

  const auto four = analyze(parse_pattern("#.#\n...\n#.#"));
  REQUIRE(four.dimensions.combined.size() == 1);
  CHECK(four.dimensions.combined[0].r == 4);
  CHECK(four.dimensions.combined[0].order == 1);
}

TEST_CASE("non-dust patterns get no dimensions") {
  for (const char* text : {"###\n#.#\n###", "..#\n.#.\n#..", "#.\n.#"}) {
    const auto r = analyze(parse_pattern(text));
    CHECK(r.dimensions.status == DimensionStatus::NotApplicable);
    CHECK(r.dimensions.combined.empty());
    CHECK_FALSE(r.dimensions.caveats.empty());
  }
}

TEST_CASE("table rows") {
  CHECK(table_roots(2, 3, false) == RootOrders{{2, 1}, {3, 1}});
  CHECK(table_roots(2, 3, true) == RootOrders{{1, 1}, {2, 1}, {3, 1}});
  CHECK(table_roots(2, 2, false) == RootOrders{{2, 1}});
  CHECK_FALSE(table_roots(0, 1, false).has_value());
}

TEST_CASE("combine takes the maximum order per root") {
  const PoleFamily base{2, 3, 1, std::nullopt};
  TypeAnalysis a, b;
  a.condition = ConditionVerdict{ConditionStatus::Satisfied, {}, {}};
  a.families = {{1, 3, 2, IntersectionType::EdgeV}, {2, 3, 1, IntersectionType::EdgeV}};
  b.condition = ConditionVerdict{ConditionStatus::Satisfied, {}, {}};
  b.families = {{1, 3, 1, IntersectionType::EdgeH}};
  const auto d = combine(base, {a, b});
  REQUIRE(d.combined.size() == 2);
  CHECK(d.combined[0].r == 1);
  CHECK(d.combined[0].order == 2);
  CHECK(d.combined[1].r == 2);
  CHECK(d.combined[1].order == 1);
}

TEST_CASE("combine keeps Borderline families apart") {
  const PoleFamily base{2, 3, 1, std::nullopt};
  TypeAnalysis a;
  a.condition = ConditionVerdict{ConditionStatus::Borderline, {}, {}};
  a.families = {{1, 3, 1, IntersectionType::EdgeV}};
  TypeAnalysis b;
  b.condition = ConditionVerdict{ConditionStatus::NotSatisfied, {}, {}};
  b.families = {{4, 3, 1, IntersectionType::EdgeH}};
  const auto d = combine(base, {a, b});
  REQUIRE(d.combined.size() == 1);
  CHECK(d.combined[0].r == 2);
  REQUIRE(d.conditional.size() == 1);
  CHECK(d.conditional[0].r == 1);
}

TEST_CASE("pole roots annihilate brute-force count sequences (property)") {
  int not_minimal = 0;
  for (const auto& pat : dust_sample(12, 61)) {
    const auto tallies = tally_levels(pat, 7);
    for (auto t : kAllTypes) {
      TypeCounts tc;
      try {
        tc = extract_parameters(pat, t, tallies);
      } catch (const Error&) {
        continue;
      }
      if (tc.spawn_combined) continue;
      const auto roots = type_pole_roots(tc, pat.m());
      CHECK(roots.size() <= 3);
      Seq s;
      for (std::size_t k = 1; k < tallies.size(); ++k) s.push_back(static_cast<long double>(tallies[k].total[index_of(t)]));
      CHECK(annihilates(s, roots, pat.m()));
      for (const auto& [r, k] : roots) {
        auto fewer = roots;
        if (--fewer[r] == 0) fewer.erase(r);
        not_minimal += annihilates(s, fewer, pat.m());
      }
    }
  }
  CHECK(not_minimal == 0);
}

TEST_CASE("combined families are invariant under symmetries (property)") {
  for (const auto& pat : dust_sample(5, 67)) {
    const auto want = analyze(pat).dimensions.combined;
    for (const auto& s : all_symmetries()) {
      auto got = analyze(transform(pat, s)).dimensions.combined;
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].r == want[i].r);
        CHECK(got[i].order == want[i].order);
      }
    }
  }
}
