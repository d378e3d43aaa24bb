#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "dust/pattern.hpp"

namespace dust {

// Occupancy grid placed on [0, length]^2 and sampled on the lattice of cell corners refined k times per cell.
struct Raster {
  CellGrid grid;
  double length = 1.0;
  int k = 1;

  double epsilon() const { return length / (static_cast<double>(grid.side()) * k); }
};

Raster make_raster(const Prefractal& prefractal, int k = 1);
Raster unit_square_raster(int k);

struct TubeSample {
  double t = 0.0;
  double area = 0.0;
  double resolution = 0.0;
  double error_bound = 0.0;
};

// Histogram of exact squared lattice distances (lattice units) to the set, truncated at a radius.
class DistanceHistogram {
public:
  DistanceHistogram(const Raster& raster, double t_max);

  double epsilon() const { return epsilon_; }
  double t_max() const { return t_max_; }
  // Lattice points at squared distance exactly d2, for d2 <= cap.
  const std::vector<std::int64_t>& counts() const { return counts_; }
  TubeSample sample(double t) const;

private:
  std::int64_t count_below(double d2) const;  // #points with squared distance < d2

  double epsilon_;
  double t_max_;
  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> cumulative_;
};

TubeSample tube_area(const Raster& raster, double t);
TubeSample tube_area(const CellGrid& grid, double t, double resolution);

// Area between two radius-r discs at centre distance d and their common tangent line, one side.
double cusp_area(double r, double d);

// Tube area of the Cantor set on the unit segment, from the pill-minus-cusps formula.
double cantor_tube_reference(double t, int n_terms = 40);

struct MinkowskiEstimate {
  double dimension = 0.0;
  double residual = 0.0;  // RMS of the log-log fit
  std::vector<TubeSample> samples;
};

MinkowskiEstimate minkowski_estimate(const Raster& raster, const std::vector<double>& radii);
// Picks a prefractal level and radii spanning whole scaling periods.
MinkowskiEstimate minkowski_estimate(const Pattern& pattern);
std::vector<double> default_minkowski_radii(const Pattern& pattern);

struct ZetaConfig {
  double delta = 1.0;
  double tail_factor = 4.0;  // t_min = tail_factor * epsilon
};

struct ZetaValue {
  std::complex<double> value;
  double error = 0.0;
};

ZetaValue zeta_numeric(const Raster& raster, std::complex<double> s, const ZetaConfig& config = {});
ZetaValue zeta_numeric(const DistanceHistogram& hist, std::complex<double> s, const ZetaConfig& config);

// Relative residual of zeta(lambda A, s, lambda delta) against lambda^s zeta(A, s, delta).
double scaling_check(const Raster& raster, std::complex<double> s, double lambda, const ZetaConfig& config = {});

}  // namespace dust
