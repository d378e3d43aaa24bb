#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dust/counting.hpp"
#include "dust/error.hpp"
#include "dust/metric.hpp"
#include "dust/topology.hpp"

namespace dust {

// A vertical line of poles sigma + 2*pi*i*z/ln(p), sigma = log_p(r).
struct PoleFamily {
  int r = 1;
  int p = 2;
  int order = 1;
  std::optional<IntersectionType> source;  // empty for the base family

  double sigma() const;
  double period() const;
  friend bool operator==(const PoleFamily&, const PoleFamily&) = default;
};

PoleFamily base_family(const Pattern& pattern);

// Root r -> pole order.
using RootOrders = std::map<int, int>;

// Poles of the per-type generating function, excluding the base root m.
RootOrders type_pole_roots(const TypeCounts& tc, int m);
// The tabulated multiset for (h, v) with or without corner-hosted occurrences; empty when no row applies.
std::optional<RootOrders> table_roots(int h, int v, bool corner_hosts);
// type_pole_roots as families, cross-checked against the table.
std::vector<PoleFamily> type_pole_families(const TypeCounts& tc, int m, int p);

struct TypeAnalysis {
  IntersectionType type = IntersectionType::EdgeH;
  std::optional<TypeCounts> counts;
  std::optional<ValidationReport> validation;
  std::optional<ErrorKind> error;
  std::string error_message;
  bool present = false;
  std::optional<ConditionVerdict> condition;
  std::vector<PoleFamily> families;
};

enum class DimensionStatus { Ok, NotApplicable, ModelViolation };
std::string_view to_string(DimensionStatus s);

struct DimensionReport {
  DimensionStatus status = DimensionStatus::NotApplicable;
  PoleFamily base;
  std::vector<PoleFamily> combined;     // base plus Satisfied types, max order per root
  std::vector<PoleFamily> conditional;  // extra families contributed only by Borderline types
  std::vector<std::string> caveats;
};

DimensionReport combine(const PoleFamily& base, const std::vector<TypeAnalysis>& types);

struct AnalysisConfig {
  int classify_depth = 6;
  int metric_level = 0;  // 0: per-p default
  int validate_levels = 5;
  bool metric = true;
};

struct AnalysisReport {
  Pattern pattern;
  DustClassification classification;
  std::optional<ThresholdEstimate> alpha;
  std::optional<DustyVerdict> completely_dusty;
  std::vector<TypeAnalysis> types;
  DimensionReport dimensions;
};

AnalysisReport analyze(const Pattern& pattern, const AnalysisConfig& config = {});

}  // namespace dust
