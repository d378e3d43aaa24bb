#include "dust/dimensions.hpp"

#include <algorithm>
#include <cmath>

namespace dust {

namespace {

constexpr double kPi = 3.14159265358979323846;

void raise(RootOrders& orders, int root, int order) {
  auto& o = orders[root];
  o = std::max(o, order);
}

// Merge families into a root -> order map by maximum order.
std::map<int, int> merge(std::map<int, int> into, const std::vector<PoleFamily>& families) {
  for (const auto& f : families) raise(into, f.r, f.order);
  return into;
}

std::vector<PoleFamily> to_families(const RootOrders& roots, int p, std::optional<IntersectionType> source) {
  std::vector<PoleFamily> out;
  for (const auto& [r, order] : roots) out.push_back({r, p, order, source});
  return out;
}

}  // namespace

double PoleFamily::sigma() const { return std::log(static_cast<double>(r)) / std::log(static_cast<double>(p)); }
double PoleFamily::period() const { return 2.0 * kPi / std::log(static_cast<double>(p)); }

std::string_view to_string(DimensionStatus s) {
  switch (s) {
    case DimensionStatus::Ok: return "Ok";
    case DimensionStatus::NotApplicable: return "NotApplicable";
    case DimensionStatus::ModelViolation: return "ModelViolation";
  }
  return "?";
}

PoleFamily base_family(const Pattern& pattern) {
  if (pattern.m() < 2) throw Error(ErrorKind::Domain, "base family needs m >= 2");
  return {pattern.m(), pattern.p(), 1, std::nullopt};
}

RootOrders type_pole_roots(const TypeCounts& tc, int m) {
  // Each nonzero block of the explicit count contributes one rational term in z = p^s.
  std::vector<std::vector<int>> terms;
  if (tc.spawn_h != 0) terms.push_back({1, tc.h});
  if (tc.spawn_v != 0) terms.push_back({1, tc.v});
  if (tc.H1 != 0) terms.push_back({tc.h});
  if (tc.V1 != 0) terms.push_back({tc.v});
  if (tc.D1 != 0) terms.push_back({1});
  RootOrders out;
  for (const auto& term : terms) {
    RootOrders local;
    for (int r : term)
      if (r != 0 && r != m) ++local[r];
    for (const auto& [r, k] : local) raise(out, r, k);
  }
  return out;
}

std::optional<RootOrders> table_roots(int h, int v, bool corner_hosts) {
  auto big = [](int x) { return x != 0 && x != 1; };
  RootOrders out;
  auto add = [&](int r) { ++out[r]; };
  if (big(h) && big(v) && h != v) {
    add(h);
    add(v);
    if (corner_hosts) add(1);
  } else if (big(h) && h == v) {
    add(h);
    if (corner_hosts) add(1);
  } else if (big(h) && v == 1) {
    add(h);
    add(1);
    if (corner_hosts) add(1);
  } else if (h == 1 && big(v)) {
    add(v);
    add(1);
    if (corner_hosts) add(1);
  } else if (h == 1 && v == 1) {
    add(1);
    if (corner_hosts) add(1);
  } else if (big(h) && v == 0) {
    add(h);
    if (corner_hosts) add(1);
  } else if (h == 0 && big(v)) {
    add(v);
    if (corner_hosts) add(1);
  } else if (h == 0 && v == 0) {
    if (corner_hosts) add(1);
  } else {
    return std::nullopt;
  }
  return out;
}

std::vector<PoleFamily> type_pole_families(const TypeCounts& tc, int m, int p) {
  const auto roots = type_pole_roots(tc, m);
  const bool corner_hosts = tc.D1 != 0 || tc.spawn_h != 0 || tc.spawn_v != 0;
  if (const auto table = table_roots(tc.h, tc.v, corner_hosts)) {
    for (const auto& [r, order] : roots) {
      const auto it = table->find(r);
      if (it == table->end() || it->second < order)
        throw Error(ErrorKind::InternalInconsistency,
                    "pole at log_p(" + std::to_string(r) + ") of order " + std::to_string(order) +
                        " is not in the tabulated multiset");
    }
  }
  return to_families(roots, p, tc.type);
}

DimensionReport combine(const PoleFamily& base, const std::vector<TypeAnalysis>& types) {
  DimensionReport report;
  report.status = DimensionStatus::Ok;
  report.base = base;
  RootOrders combined{{base.r, base.order}};
  RootOrders conditional;
  for (const auto& t : types) {
    if (!t.condition) continue;
    if (t.condition->status == ConditionStatus::Satisfied) combined = merge(combined, t.families);
    if (t.condition->status == ConditionStatus::Borderline) conditional = merge(conditional, t.families);
  }
  report.combined = to_families(combined, base.p, std::nullopt);
  for (const auto& [r, order] : conditional) {
    const auto it = combined.find(r);
    if (it == combined.end() || it->second < order) report.conditional.push_back({r, base.p, order, std::nullopt});
  }
  report.caveats.push_back("pole families are possible complex dimensions; cancellation by zeros is not excluded");
  report.caveats.push_back("orders are upper bounds (maximum over contributing types)");
  if (!report.conditional.empty())
    report.caveats.push_back("some intersection types could not be decided; conditional families listed separately");
  return report;
}

}  // namespace dust

namespace dust {

namespace {

int validation_levels(const Pattern& pattern, int requested) {
  int k = std::max(requested, 4);
  while (k > 4 && ipow(pattern.p(), k) > (std::int64_t{1} << 11)) --k;
  return k;
}

}  // namespace

AnalysisReport analyze(const Pattern& pattern, const AnalysisConfig& config) {
  AnalysisReport report{pattern, classify(pattern, config.classify_depth), {}, {}, {}, {}};
  const bool dust = report.classification.verdict == Verdict::DustType;

  std::vector<LevelTally> tallies;
  if (pattern.m() >= 2) tallies = tally_levels(pattern, validation_levels(pattern, config.validate_levels));

  std::optional<MetricContext> metric;
  if (dust && config.metric) {
    const int level = config.metric_level > 0 ? config.metric_level : default_metric_level(pattern.p());
    metric.emplace(pattern, level);
    report.alpha = metric->alpha();
    report.completely_dusty = metric->completely_dusty();
  }

  bool violation = false;
  for (auto type : kAllTypes) {
    TypeAnalysis ta;
    ta.type = type;
    if (tallies.empty()) {
      report.types.push_back(ta);
      continue;
    }
    for (std::size_t k = 0; k < 3; ++k) ta.present = ta.present || tallies[k].total[index_of(type)] > 0;
    try {
      ta.counts = extract_parameters(pattern, type, tallies);
      ta.validation = validate_model(*ta.counts, tallies);
      if (!ta.validation->ok())
        throw Error(ErrorKind::InternalInconsistency,
                    "closed form disagrees with brute force at level " + std::to_string(*ta.validation->first_mismatch));
      if (dust && (ta.counts->h == pattern.m() || ta.counts->v == pattern.m()))
        throw Error(ErrorKind::NonIntegralMultiplier, "multiplier equals m");
      if (ta.present) ta.families = type_pole_families(*ta.counts, pattern.m(), pattern.p());
    } catch (const Error& e) {
      ta.error = e.kind();
      ta.error_message = e.what();
      ta.families.clear();
    }
    if (metric) {
      ta.condition = metric->condition_c(type, ta.present);
      const auto s = ta.condition->status;
      if (ta.error && (s == ConditionStatus::Satisfied || s == ConditionStatus::Borderline)) violation = true;
    }
    report.types.push_back(std::move(ta));
  }

  if (!dust) {
    report.dimensions.status = DimensionStatus::NotApplicable;
    report.dimensions.caveats.push_back("dimension analysis applies only to Dust Type patterns; classification is " +
                                        std::string(to_string(report.classification.verdict)));
    if (pattern.m() >= 2) report.dimensions.base = base_family(pattern);
    return report;
  }
  const auto base = base_family(pattern);
  if (!metric) {
    report.dimensions.status = DimensionStatus::NotApplicable;
    report.dimensions.base = base;
    report.dimensions.caveats.push_back("metric analysis disabled; intersection conditions unknown");
    return report;
  }
  report.dimensions = combine(base, report.types);
  if (violation) {
    report.dimensions.status = DimensionStatus::ModelViolation;
    report.dimensions.caveats.push_back(
        "an active intersection type violates the recurrence model; the families above are incomplete");
  }
  if (report.completely_dusty == DustyVerdict::Yes && report.dimensions.combined.size() != 1)
    throw Error(ErrorKind::InternalInconsistency, "completely dusty pattern with extra pole families");
  return report;
}

}  // namespace dust
