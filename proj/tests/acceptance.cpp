// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "dust/counting.hpp"
#include "dust/dimensions.hpp"
#include "dust/error.hpp"
#include "dust/metric.hpp"
#include "dust/survey.hpp"
#include "dust/topology.hpp"
#include "dust/tube.hpp"
#include "oracles.hpp"

using namespace dust;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double time_limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0 && secs >= time_limit) {
    out.pass = false;
    out.detail += " [over time limit " + std::to_string(time_limit) + " s]";
  }
  failures += !out.pass;
  std::printf("%s %2d %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", id, name, out.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(double x, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

const Pattern& cantor() {
  static const Pattern p = parse_pattern("...\n...\n#.#");
  return p;
}
const Pattern& four_corner() {
  static const Pattern p = parse_pattern("#.#\n...\n#.#");
  return p;
}

bool single_family(const AnalysisReport& r, int root) {
  const auto& c = r.dimensions.combined;
  return r.dimensions.status == DimensionStatus::Ok && c.size() == 1 && c[0].r == root && c[0].order == 1 &&
         r.dimensions.conditional.empty();
}

std::vector<Pattern> all_p3() { return enumerate_patterns({3, 2, 8, false}); }

}  // namespace

int main() {
  const double root2 = std::sqrt(2.0);

  criterion(1, "Cantor carpet threshold and dimensions", 5.0, [&] {
    const auto r = analyze(cantor());
    const auto a = r.alpha ? r.alpha->interval() : Interval{NAN, NAN};
    const bool ok = r.classification.verdict == Verdict::DustType && r.completely_dusty == DustyVerdict::Yes &&
                    a.contains(1.0 / 6.0) && a.width() <= 2.0 * root2 * std::pow(3.0, -6) && single_family(r, 2);
    return Outcome{ok, "alpha=[" + fmt(a.lo, 12) + ", " + fmt(a.hi, 12) + "] width=" + fmt(a.width(), 3) +
                           " combined=" + std::to_string(r.dimensions.combined.size()) + " families"};
  });

  criterion(2, "four-corner carpet", 5.0, [&] {
    const auto r = analyze(four_corner());
    const bool ok = r.completely_dusty == DustyVerdict::Yes && single_family(r, 4);
    return Outcome{ok, std::string("completely dusty=") + (r.completely_dusty == DustyVerdict::Yes ? "yes" : "no") +
                           ", combined r=" + (r.dimensions.combined.empty() ? "-" : std::to_string(r.dimensions.combined[0].r))};
  });

  // Shared by criteria 3 to 5: every p=3 pattern and type through level 5.
  struct Extracted {
    Pattern pattern;
    bool dust;
    std::vector<LevelTally> tallies;
  };
  std::vector<Extracted> sweep;

  criterion(3, "closed form equals brute force, all p=3 patterns and types, k=4,5", 300.0, [&] {
    std::int64_t checked = 0, mismatches = 0, model_errors = 0, other_errors = 0;
    for (const auto& pat : all_p3()) {
      sweep.push_back({pat, classify(pat).verdict == Verdict::DustType, tally_levels(pat, 5)});
      const auto& ex = sweep.back();
      // Brute counts from an explicit cell set, independent of the tally code.
      const std::array<std::array<std::int64_t, 9>, 2> brute{oracle::count_all(pat, 4), oracle::count_all(pat, 5)};
      for (auto t : kAllTypes) {
        try {
          const auto tc = extract_parameters(pat, t, ex.tallies);
          for (int k : {4, 5}) {
            mismatches += closed_form_count(tc, pat.m(), k) != brute[static_cast<std::size_t>(k - 4)][index_of(t)];
            ++checked;
          }
        } catch (const Error& e) {
          (e.is_model_violation() && ex.dust ? model_errors : other_errors) += 1;
        }
      }
    }
    return Outcome{mismatches == 0 && model_errors == 0 && other_errors == 0,
                   std::to_string(checked) + " comparisons, " + std::to_string(mismatches) + " mismatches, " +
                       std::to_string(model_errors) + " model errors on dust patterns, " + std::to_string(other_errors) +
                       " other extraction errors"};
  });

  criterion(4, "recurrence identities for D(2), H(2), V(2)", 0.0, [&] {
    std::int64_t checked = 0, broken = 0;
    for (const auto& ex : sweep)
      for (auto t : kAllTypes) {
        TypeCounts tc;
        try {
          tc = extract_parameters(ex.pattern, t, ex.tallies);
        } catch (const Error&) {
          continue;
        }
        const std::int64_t m = ex.pattern.m();
        // With h = v unresolved, spawn_h carries the combined dH*H1 + dV*V1.
        const std::int64_t spawn = tc.spawn_combined ? tc.spawn_h
                                                     : std::int64_t{*tc.dH} * tc.H1 + std::int64_t{*tc.dV} * tc.V1;
        broken += tc.D2 != (m + 1) * tc.D1 + spawn;
        broken += tc.H2 != (m + tc.h) * tc.H1;
        broken += tc.V2 != (m + tc.v) * tc.V1;
        checked += 3;
      }
    return Outcome{checked > 0 && broken == 0, std::to_string(checked) + " identities, " + std::to_string(broken) + " broken"};
  });

  criterion(5, "parameter constraints and per-type family counts", 0.0, [&] {
    std::int64_t range = 0, dust_bad = 0, too_many = 0, dust_types = 0;
    for (const auto& ex : sweep)
      for (auto t : kAllTypes) {
        TypeCounts tc;
        try {
          tc = extract_parameters(ex.pattern, t, ex.tallies);
        } catch (const Error&) {
          continue;
        }
        const int p = ex.pattern.p(), m = ex.pattern.m();
        range += tc.h < 0 || tc.h > p || tc.v < 0 || tc.v > p;
        if (!ex.dust) continue;
        ++dust_types;
        auto binary = [](const std::optional<int>& d) { return !d || *d == 0 || *d == 1; };
        dust_bad += tc.h == m || tc.v == m || !binary(tc.dH) || !binary(tc.dV);
        if (tc.spawn_combined && !(tc.spawn_h == 0 || tc.spawn_h == tc.H1 || tc.spawn_h == tc.V1 ||
                                   tc.spawn_h == tc.H1 + tc.V1))
          ++dust_bad;
        std::set<int> sigmas;
        for (const auto& [r, k] : type_pole_roots(tc, m)) sigmas.insert(r);
        too_many += sigmas.size() > 3;
      }
    return Outcome{range == 0 && dust_bad == 0 && too_many == 0,
                   std::to_string(range) + " h/v out of range, " + std::to_string(dust_bad) + " of " +
                       std::to_string(dust_types) + " dust types violate h,v != m or binary dH,dV, " +
                       std::to_string(too_many) + " with more than 3 sigmas"};
  });

  criterion(6, "attractor connectivity against prefractals to depth 6", 0.0, [&] {
    std::int64_t flagged = 0, connected = 0;
    for (const auto& pat : all_p3()) {
      const bool exact = attractor_connected(pat);
      connected += exact;
      bool seen_disconnected = false;
      bool monotone = true;
      for (int level = 1; level <= 6; ++level) {
        const bool c = prefractal_connected(build_prefractal(pat, level));
        if (c && seen_disconnected) monotone = false;
        seen_disconnected = seen_disconnected || !c;
      }
      if (exact == seen_disconnected || !monotone) {
        ++flagged;
        std::printf("  flagged: %s\n", to_ascii(pat).c_str());
      }
    }
    return Outcome{flagged == 0, "501 patterns, " + std::to_string(connected) + " connected, " +
                                     std::to_string(flagged) + " flagged"};
  });

  criterion(7, "dihedral invariance on 50 random p=3 patterns", 0.0, [&] {
    std::mt19937 rng(20261016);
    int differing = 0;
    for (int i = 0; i < 50; ++i) {
      const auto pat = oracle::random_pattern(rng, 3);
      const auto base = analyze(pat);
      for (const auto& s : all_symmetries()) {
        const auto img = analyze(transform(pat, s));
        bool same = img.classification.verdict == base.classification.verdict &&
                    img.alpha.has_value() == base.alpha.has_value() && img.completely_dusty == base.completely_dusty &&
                    img.dimensions.combined.size() == base.dimensions.combined.size();
        if (same && base.alpha)
          same = std::abs(img.alpha->lower - base.alpha->lower) <= 1e-12 &&
                 std::abs(img.alpha->upper - base.alpha->upper) <= 1e-12;
        for (std::size_t k = 0; same && k < base.dimensions.combined.size(); ++k)
          same = img.dimensions.combined[k].r == base.dimensions.combined[k].r &&
                 img.dimensions.combined[k].order == base.dimensions.combined[k].order;
        differing += !same;
      }
    }
    return Outcome{differing == 0, "400 transformed analyses, " + std::to_string(differing) + " differ"};
  });

  criterion(8, "tube areas: unit square within 0.5%, Cantor level 7 within 1%", 0.0, [&] {
    double worst_square = 0.0, worst_cantor = 0.0;
    const DistanceHistogram square(unit_square_raster(2048), 0.2);
    for (double t : {0.05, 0.1, 0.2}) {
      const double exact = 1.0 + 4.0 * t + std::numbers::pi * t * t;
      worst_square = std::max(worst_square, std::abs(square.sample(t).area - exact) / exact);
    }
    const DistanceHistogram c7(make_raster(build_prefractal(cantor(), 7)), 0.3);
    for (double t : {0.05, 0.1, 0.3}) {
      const double ref = cantor_tube_reference(t);
      worst_cantor = std::max(worst_cantor, std::abs(c7.sample(t).area - ref) / ref);
    }
    return Outcome{worst_square <= 5e-3 && worst_cantor <= 1e-2,
                   "max rel err square " + fmt(worst_square, 3) + ", Cantor " + fmt(worst_cantor, 3)};
  });

  criterion(9, "numerical zeta and the scaling relation", 0.0, [&] {
    const auto raster = unit_square_raster(2048);
    double worst = 0.0;
    for (double s : {3.0, 4.0}) {
      const double exact = std::numbers::pi / s + 4.0 / (s - 1.0) + 1.0 / (s - 2.0);
      worst = std::max(worst, std::abs(zeta_numeric(raster, {s, 0.0}).value.real() - exact) / exact);
    }
    ZetaConfig cfg;
    cfg.delta = 0.5;
    const double residual = scaling_check(make_raster(build_prefractal(cantor(), 6), 3), {2.5, 0.0}, 1.0 / 3.0, cfg);
    return Outcome{worst <= 1e-2 && residual <= 1e-2,
                   "max rel err " + fmt(worst, 3) + ", scaling residual " + fmt(residual, 3)};
  });

  criterion(10, "Minkowski dimension estimates within 0.05", 0.0, [&] {
    const std::pair<const char*, const char*> fixtures[] = {{"cantor", "...\n...\n#.#"},
                                                             {"four-corner", "#.#\n...\n#.#"},
                                                             {"carpet", "###\n#.#\n###"},
                                                             {"bottom-row", "...\n...\n###"},
                                                             {"diagonal", "..#\n.#.\n#.."}};
    bool ok = true;
    std::string detail;
    for (const auto& [name, text] : fixtures) {
      const auto pat = parse_pattern(text);
      const double target = std::log(pat.m()) / std::log(pat.p());
      const double got = minkowski_estimate(pat).dimension;
      ok = ok && std::abs(got - target) <= 0.05;
      detail += std::string(detail.empty() ? "" : ", ") + name + " " + fmt(got, 4) + "/" + fmt(target, 4);
    }
    return Outcome{ok, detail};
  });

  criterion(11, "survey counts, 2x2 grid, and worker determinism", 600.0, [&] {
    SurveyConfig cfg;
    cfg.enumeration = {3, 2, 8, false};
    const auto serial = run_survey(cfg);
    cfg.workers = 8;
    const auto parallel = run_survey(cfg);
    const bool identical = survey_csv(serial) == survey_csv(parallel) &&
                           survey_json(serial).dump() == survey_json(parallel).dump();
    std::int64_t orbits = 0;
    for (int m = 2; m <= 8; ++m) orbits += oracle::burnside_orbits(3, m);
    cfg.enumeration.dedup = true;
    cfg.workers = 1;
    const auto dedup = run_survey(cfg);
    std::int64_t orbit_total = 0;
    for (const auto& r : dedup) orbit_total += r.orbit_size;
    cfg.enumeration = {2, 2, 3, false};
    int dust2 = 0;
    const auto small = run_survey(cfg);
    for (const auto& r : small) dust2 += r.verdict == "DustType";
    int errors = 0;
    for (const auto& r : serial) errors += r.verdict == "Error";
    const bool ok = serial.size() == 501 && static_cast<std::int64_t>(dedup.size()) == orbits && orbit_total == 501 &&
                    small.size() == 10 && dust2 == 0 && identical && errors == 0;
    return Outcome{ok, std::to_string(serial.size()) + " records, " + std::to_string(dedup.size()) + " orbits (Burnside " +
                           std::to_string(orbits) + "), p=2 dust " + std::to_string(dust2) + ", workers 1 vs 8 " +
                           (identical ? "identical" : "differ") + ", " + std::to_string(errors) + " errors"};
  });

  criterion(12, "threshold cascade at level 5", 0.0, [&] {
    const bool a = threshold_cascade_check(cantor(), 5), b = threshold_cascade_check(four_corner(), 5);
    return Outcome{a && b, std::string("Cantor ") + (a ? "ok" : "fails") + ", four-corner " + (b ? "ok" : "fails")};
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
