#pragma once

#include <span>
#include <string>
#include <vector>

#include "dust/pattern.hpp"

namespace dust {

enum class Side { Left, Right, Bottom, Top };

enum class Verdict { Degenerate, NeverDustGrid, ConnectedAttractor, DustType, ComplementObstructed, Undetermined };

std::string_view to_string(Verdict v);

struct ComplementStatus {
  enum class Kind { NotEvaluated, ConnectedVerifiedToDepth, CertifiedDisconnected, UndeterminedAtDepth };
  Kind kind = Kind::NotEvaluated;
  int depth = 0;  // verification depth, or the level of the sealing certificate

  friend bool operator==(const ComplementStatus&, const ComplementStatus&) = default;
};

std::string to_string(const ComplementStatus& s);

struct DustClassification {
  Verdict verdict = Verdict::Undetermined;
  bool attractor_connected = false;
  ComplementStatus complement;
  std::vector<std::string> evidence;
};

// Kept closed squares form one connected union (edge or corner contact).
bool prefractal_connected(const Prefractal& grid);

// Every removed cell reaches the outside of the unit square through edge-adjacent removed cells.
bool complement_connected_at_level(const Prefractal& grid);

// Digits of the attractor's trace on one side of the unit square.
std::vector<int> edge_digits(const Pattern& pattern, Side side);

// Whether the base-p digit Cantor sets C(d1) and C(d2) in [0,1] intersect.
bool trace_intersect(int p, std::span<const int> d1, std::span<const int> d2);

// Exact connectivity of the attractor via its contact graph.
bool attractor_connected(const Pattern& pattern);

// Smallest level <= max_level at which some bounded removed region is enclosed by full attractor edges.
// Returns 0 when no such certificate exists.
int sealed_level(const Pattern& pattern, int max_level, std::int64_t side_budget = 1 << 12);

DustClassification classify(const Pattern& pattern, int depth = 6, std::int64_t side_budget = 1 << 12);

}  // namespace dust
