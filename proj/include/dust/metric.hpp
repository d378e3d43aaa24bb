#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dust/counting.hpp"
#include "dust/pattern.hpp"

namespace dust {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return hi - lo; }
  bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct ThresholdEstimate {
  double lower = 0.0;
  double upper = 0.0;
  int level = 0;

  Interval interval() const { return {lower, upper}; }
  friend bool operator==(const ThresholdEstimate&, const ThresholdEstimate&) = default;
};

enum class ConditionStatus { Satisfied, NotSatisfied, NotPresent, Borderline };
std::string_view to_string(ConditionStatus s);

struct ConditionVerdict {
  ConditionStatus status = ConditionStatus::NotPresent;
  Interval gap;  // distance between the participating level-1 copies, copy scale
  ThresholdEstimate alpha;
};

enum class DustyVerdict { Yes, No, Borderline };
std::string_view to_string(DustyVerdict v);

using Offset = std::array<int, 2>;

// Squared distance between the level-n prefractal and its translate by `offset` (unit-square
// cells), measured in level-n cell units.
std::int64_t offset_distance2(const Pattern& pattern, Offset offset, int level);

// Whether the attractor meets its translate by `offset` (exact, via a finite automaton).
bool attractors_touch(const Pattern& pattern, Offset offset);

// Bracket on the attractor distance dist(A, A + offset), unit-square units.
Interval copy_gap(const Pattern& pattern, Offset offset, int level);

struct MstSummary {
  int level = 0;
  std::vector<std::int64_t> weights2;  // sorted squared edge weights, level cell units

  std::int64_t bottleneck2() const { return weights2.empty() ? 0 : weights2.back(); }
};

// Minimum spanning tree over the kept level-n cells, cell-to-cell Euclidean distances.
MstSummary prefractal_mst(const Pattern& pattern, int level);

ThresholdEstimate threshold_alpha(const Pattern& pattern, int level);

bool threshold_cascade_check(const Pattern& pattern, int level);

// Distances between the m level-1 copies of the attractor, grouped into classes of offsets that
// are equal by symmetry (negation and the pattern's own stabilizer).
struct OffsetClass {
  std::vector<Offset> offsets;
  Interval distance;  // copy scale
  bool exact_zero = false;
};

class MetricContext {
public:
  MetricContext(const Pattern& pattern, int mst_level, int fine_level = 0);

  const Pattern& pattern() const { return pattern_; }
  int fine_level() const { return fine_level_; }
  const ThresholdEstimate& alpha() const { return alpha_; }
  const ThresholdEstimate& mst_alpha() const { return mst_alpha_; }
  const std::vector<OffsetClass>& classes() const { return classes_; }
  Interval bottleneck() const { return bottleneck_; }
  std::optional<std::size_t> bottleneck_class() const { return bottleneck_class_; }
  std::optional<std::size_t> class_of(Offset o) const;

  DustyVerdict completely_dusty() const;
  ConditionVerdict condition_c(IntersectionType type, bool present) const;
  // Copy-scale gap of a type's configuration (twice the minimax radius for three or four copies).
  Interval type_gap(IntersectionType type) const;

private:
  Interval offset_interval(Offset o) const;  // copy scale

  Pattern pattern_;
  int fine_level_;
  std::vector<Symmetry> stabilizer_;
  std::vector<OffsetClass> classes_;
  Interval bottleneck_;
  std::optional<std::size_t> bottleneck_class_;
  ThresholdEstimate mst_alpha_;
  ThresholdEstimate alpha_;
};

DustyVerdict completely_dusty(const Pattern& pattern, int level);
ConditionVerdict condition_c(const Pattern& pattern, IntersectionType type, const ThresholdEstimate& alpha, int level);

// Minimax radius min_x max_i dist(x, A + q_i) over the quadrant copies of a corner type, unit scale.
Interval minimax_radius(const Pattern& pattern, IntersectionType type, int level);

int default_metric_level(int p);

}  // namespace dust
