#include "dust/tube.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dust/error.hpp"

namespace dust {

Raster make_raster(const Prefractal& prefractal, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "lattice refinement must be >= 1");
  return {prefractal.grid, 1.0, k};
}

Raster unit_square_raster(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "lattice refinement must be >= 1");
  CellGrid g(1);
  g.set(0, 0);
  return {std::move(g), 1.0, k};
}

namespace {

struct Run {
  std::int64_t lo, hi;  // closed lattice interval
};

// Kept-cell runs of each lattice column: interior columns share their cell column's runs; columns on a
// cell boundary merge the runs of both neighbouring cell columns.
class ColumnRuns {
public:
  explicit ColumnRuns(const Raster& r) : k_(r.k), side_(r.grid.side()) {
    cell_runs_.resize(side_);
    for (std::int64_t c = 0; c < side_; ++c) {
      auto& runs = cell_runs_[c];
      for (std::int64_t row = 0; row < side_;) {
        if (!r.grid.at(c, row)) {
          ++row;
          continue;
        }
        std::int64_t end = row;
        while (end + 1 < side_ && r.grid.at(c, end + 1)) ++end;
        runs.push_back({row * k_, (end + 1) * k_});
        row = end + 1;
      }
    }
    boundary_runs_.resize(side_ + 1);
    for (std::int64_t b = 0; b <= side_; ++b) {
      std::vector<Run> merged;
      if (b > 0) merged = cell_runs_[b - 1];
      if (b < side_) merged.insert(merged.end(), cell_runs_[b].begin(), cell_runs_[b].end());
      std::sort(merged.begin(), merged.end(), [](const Run& a, const Run& c) { return a.lo < c.lo; });
      auto& out = boundary_runs_[b];
      for (const auto& run : merged) {
        if (!out.empty() && run.lo <= out.back().hi) out.back().hi = std::max(out.back().hi, run.hi);
        else out.push_back(run);
      }
    }
  }

  const std::vector<Run>& at(std::int64_t x) const {
    return x % k_ == 0 ? boundary_runs_[x / k_] : cell_runs_[x / k_];
  }

private:
  std::int64_t k_, side_;
  std::vector<std::vector<Run>> cell_runs_;
  std::vector<std::vector<Run>> boundary_runs_;
};

}  // namespace

DistanceHistogram::DistanceHistogram(const Raster& raster, double t_max) : epsilon_(raster.epsilon()), t_max_(t_max) {
  if (!(t_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
  if (raster.grid.side() <= 0 || raster.grid.count() == 0) throw Error(ErrorKind::EmptyGrid, "empty occupancy grid");
  const double reach = t_max / epsilon_;
  if (reach > 2.0e4 || raster.grid.side() * static_cast<std::int64_t>(raster.k) > 40000)
    throw Error(ErrorKind::BudgetExceeded, "tube lattice too large");
  const std::int64_t n = raster.grid.side() * raster.k;
  const std::int64_t pad = static_cast<std::int64_t>(std::ceil(reach)) + 2;
  const std::int64_t cap = static_cast<std::int64_t>(std::ceil((reach + 1.0) * (reach + 1.0)));
  counts_.assign(static_cast<std::size_t>(cap) + 1, 0);

  const ColumnRuns columns(raster);
  const std::int64_t width = n + 1;
  std::vector<std::size_t> cursor(static_cast<std::size_t>(width), 0);
  constexpr std::int64_t kNone = -1;
  std::vector<std::int64_t> g2(static_cast<std::size_t>(width));
  std::vector<std::int64_t> sites;
  std::vector<double> bounds;

  for (std::int64_t y = -pad; y <= n + pad; ++y) {
    // Squared vertical distance to the set within each lattice column.
    for (std::int64_t x = 0; x < width; ++x) {
      const auto& runs = columns.at(x);
      auto& c = cursor[static_cast<std::size_t>(x)];
      while (c < runs.size() && runs[c].hi < y) ++c;
      std::int64_t best = kNone;
      if (c < runs.size()) best = runs[c].lo <= y ? 0 : runs[c].lo - y;
      if (c > 0) {
        const std::int64_t below = y - runs[c - 1].hi;
        if (best == kNone || below < best) best = below;
      }
      g2[static_cast<std::size_t>(x)] = best == kNone ? kNone : best * best;
    }
    // Lower envelope of the parabolas (x - q)^2 + g2[q].
    sites.clear();
    bounds.clear();
    for (std::int64_t q = 0; q < width; ++q) {
      const std::int64_t f = g2[static_cast<std::size_t>(q)];
      if (f == kNone) continue;
      while (!sites.empty()) {
        const std::int64_t v = sites.back();
        const double fv = static_cast<double>(g2[static_cast<std::size_t>(v)]);
        const double s = ((static_cast<double>(f) + double(q) * q) - (fv + double(v) * v)) / (2.0 * double(q - v));
        if (s <= bounds.back()) {
          sites.pop_back();
          bounds.pop_back();
        } else {
          bounds.push_back(s);
          break;
        }
      }
      if (sites.empty()) bounds.push_back(-std::numeric_limits<double>::infinity());
      sites.push_back(q);
    }
    if (sites.empty()) continue;
    // bounds[i] is where sites[i] takes over; walk all lattice columns including the padding.
    std::size_t j = 0;
    for (std::int64_t x = -pad; x <= n + pad; ++x) {
      while (j + 1 < sites.size() && bounds[j + 1] <= static_cast<double>(x)) ++j;
      const std::int64_t v = sites[j];
      const std::int64_t d2 = (x - v) * (x - v) + g2[static_cast<std::size_t>(v)];
      if (d2 <= cap) ++counts_[static_cast<std::size_t>(d2)];
    }
  }
  cumulative_.resize(counts_.size());
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) cumulative_[i] = acc += counts_[i];
}

std::int64_t DistanceHistogram::count_below(double d2) const {
  if (d2 <= 0.0) return 0;
  const auto last = static_cast<std::int64_t>(std::ceil(d2)) - 1;  // largest integer < d2
  if (last < 0) return 0;
  return cumulative_[static_cast<std::size_t>(std::min<std::int64_t>(last, static_cast<std::int64_t>(cumulative_.size()) - 1))];
}

TubeSample DistanceHistogram::sample(double t) const {
  if (t < 0.0) throw Error(ErrorKind::InvalidArgument, "radius must be nonnegative");
  if (t > t_max_) throw Error(ErrorKind::InvalidArgument, "radius beyond the histogram range");
  const double e2 = epsilon_ * epsilon_;
  const double r = t / epsilon_;
  const double half = std::numbers::sqrt2 / 2.0;
  const double lo = std::max(0.0, r - half);
  const double band = static_cast<double>(count_below(std::nextafter((r + half) * (r + half), INFINITY)) - count_below(lo * lo));
  return {t, e2 * static_cast<double>(count_below(r * r)), epsilon_, e2 * band};
}

TubeSample tube_area(const Raster& raster, double t) {
  if (t < 0.0) throw Error(ErrorKind::InvalidArgument, "radius must be nonnegative");
  return DistanceHistogram(raster, std::max(t, raster.epsilon())).sample(t);
}

TubeSample tube_area(const CellGrid& grid, double t, double resolution) {
  if (!(resolution > 0.0)) throw Error(ErrorKind::InvalidArgument, "resolution must be positive");
  const int k = std::max(1, static_cast<int>(std::lround(1.0 / (resolution * static_cast<double>(grid.side())))));
  return tube_area(Raster{grid, 1.0, k}, t);
}

double cusp_area(double r, double d) {
  if (!(r > 0.0) || d < 0.0) throw Error(ErrorKind::Domain, "cusp needs r > 0 and d >= 0");
  if (d >= 2.0 * r) throw Error(ErrorKind::Domain, "cusp needs d < 2r");
  const double x = d / (2.0 * r);
  if (x >= 0.5) return r * r * (2.0 * x - x * std::sqrt(1.0 - x * x) - std::asin(x));
  // The closed form cancels to O(x^3); sum -(b_j + c_j) x^(2j+1), with b_j from sqrt(1-x^2), c_j from asin.
  double b = 1.0;   // coefficient of x^(2j) in sqrt(1 - x^2)
  double c = 1.0;   // coefficient of x^(2j+1) in asin(x)
  double power = x;
  double sum = 0.0;
  for (int j = 1; j < 200; ++j) {
    b *= -(0.5 - (j - 1)) / j;  // binom(1/2, j) (-1)^j
    c *= (2.0 * j - 1.0) * (2.0 * j - 1.0) / ((2.0 * j) * (2.0 * j + 1.0));
    power *= x * x;
    const double term = -(b + c) * power;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return r * r * sum;
}

double cantor_tube_reference(double t, int n_terms) {
  if (!(t > 0.0)) throw Error(ErrorKind::Domain, "radius must be positive");
  // Regime n: the 2^n pieces of length 3^-n are separate, their inner gaps are bridged.
  int n = 0;
  while (t <= 1.0 / (2.0 * std::pow(3.0, n + 1))) ++n;
  const double piece = std::pow(3.0, -n);
  double cusps = 0.0;
  for (int k = 1; k <= n_terms; ++k) cusps += std::ldexp(1.0, k) * cusp_area(t, piece * std::pow(3.0, -k));
  return std::ldexp(1.0, n) * (2.0 * t * piece + std::numbers::pi * t * t - cusps);
}

namespace {

struct LineFit {
  double slope = 0.0, intercept = 0.0, rms = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (!(std::abs(den) > 1e-300)) throw Error(ErrorKind::InvalidArgument, "degenerate fit");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) ss += std::pow(y[i] - f.intercept - f.slope * x[i], 2);
  f.rms = std::sqrt(ss / n);
  return f;
}

LineFit log_log_fit(const std::vector<TubeSample>& samples) {
  std::vector<double> x, y;
  for (const auto& s : samples) {
    if (!(s.area > 0.0)) throw Error(ErrorKind::InvalidArgument, "degenerate fit: zero tube area");
    x.push_back(std::log(s.t));
    y.push_back(std::log(s.area));
  }
  return least_squares(x, y);
}

int minkowski_level(int p) {
  int n = 0;
  while (ipow(p, n + 1) <= 6561) ++n;
  return n;
}

std::complex<double> cpow(double base, std::complex<double> e) { return std::exp(e * std::log(base)); }

}  // namespace

MinkowskiEstimate minkowski_estimate(const Raster& raster, const std::vector<double>& radii) {
  if (radii.size() < 3) throw Error(ErrorKind::InvalidArgument, "degenerate fit: need at least 3 radii");
  const auto [lo, hi] = std::minmax_element(radii.begin(), radii.end());
  if (*hi < 4.0 * *lo) throw Error(ErrorKind::InvalidArgument, "degenerate fit: radii must span two octaves");
  const DistanceHistogram hist(raster, *hi);
  MinkowskiEstimate est;
  for (double t : radii) est.samples.push_back(hist.sample(t));
  const auto fit = log_log_fit(est.samples);
  est.dimension = 2.0 - fit.slope;
  est.residual = fit.rms;
  return est;
}

std::vector<double> default_minkowski_radii(const Pattern& pattern) {
  const int p = pattern.p();
  const int level = minkowski_level(p);
  // Three whole periods of the log-periodic oscillation, p^2 .. p^5 lattice cells.
  std::vector<double> radii;
  const double t0 = std::pow(static_cast<double>(p), 2 - level);
  for (int j = 0; j <= 24; ++j) radii.push_back(t0 * std::pow(static_cast<double>(p), j / 8.0));
  return radii;
}

MinkowskiEstimate minkowski_estimate(const Pattern& pattern) {
  const Raster raster = make_raster(build_prefractal(pattern, minkowski_level(pattern.p())));
  return minkowski_estimate(raster, default_minkowski_radii(pattern));
}

ZetaValue zeta_numeric(const DistanceHistogram& hist, std::complex<double> s, const ZetaConfig& config) {
  const double delta = config.delta;
  const double eps = hist.epsilon();
  const double t_min = config.tail_factor * eps;
  if (!(delta > 0.0)) throw Error(ErrorKind::InvalidArgument, "delta must be positive");
  if (delta > hist.t_max() * (1.0 + 1e-12)) throw Error(ErrorKind::InvalidArgument, "histogram does not reach delta");
  if (t_min * 8.0 >= delta) throw Error(ErrorKind::Domain, "resolution too coarse for this delta");

  // Small-t behaviour |A_t| ~ c t^gamma from samples just above t_min.
  std::vector<TubeSample> near;
  for (int j = 0; j <= 8; ++j) near.push_back(hist.sample(t_min * std::pow(4.0, j / 8.0)));
  const auto fit = log_log_fit(near);
  const double gamma = fit.slope;
  if (s.real() <= 2.0 - gamma + 0.1)
    throw Error(ErrorKind::Domain, "Re(s) is not inside the convergent half-plane of the defining integral");

  const std::complex<double> e = s - 2.0;
  auto antiderivative = [&](double t) -> std::complex<double> {
    if (std::abs(e) < 1e-14) return std::log(t);
    return cpow(t, e) / e;
  };
  const auto top = antiderivative(delta);
  const double e2 = eps * eps;
  std::complex<double> body = 0.0;
  const auto& counts = hist.counts();
  std::int64_t below_min = 0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] == 0) continue;
    const double d = std::sqrt(static_cast<double>(j)) * eps;
    if (d >= delta) break;
    if (d <= t_min) {
      below_min += counts[j];
      continue;
    }
    body += static_cast<double>(counts[j]) * (top - antiderivative(d));
  }
  body += static_cast<double>(below_min) * (top - antiderivative(t_min));
  body *= e2;

  const std::complex<double> tail = std::exp(fit.intercept) * cpow(t_min, e + gamma) / (e + gamma);

  // Error: discretization band integrated against |t^(s-3)|, plus a share of the extrapolated tail.
  double err = 0.0;
  const int steps = 256;
  const double ratio = std::pow(delta / t_min, 1.0 / steps);
  for (int i = 0; i < steps; ++i) {
    const double a = t_min * std::pow(ratio, i), b = a * ratio;
    const double mid = std::sqrt(a * b);
    err += hist.sample(mid).error_bound * std::pow(mid, s.real() - 3.0) * (b - a);
  }
  err += 0.25 * std::abs(tail);
  return {body + tail, err};
}

ZetaValue zeta_numeric(const Raster& raster, std::complex<double> s, const ZetaConfig& config) {
  return zeta_numeric(DistanceHistogram(raster, config.delta), s, config);
}

double scaling_check(const Raster& raster, std::complex<double> s, double lambda, const ZetaConfig& config) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::InvalidArgument, "scale factor must be positive");
  const ZetaValue base = zeta_numeric(raster, s, config);
  // Rescaled copy on a lattice of (as nearly as possible) the same absolute spacing.
  Raster scaled{raster.grid, raster.length * lambda, std::max(1, static_cast<int>(std::lround(raster.k * lambda)))};
  ZetaConfig scaled_config = config;
  scaled_config.delta = config.delta * lambda;
  scaled_config.tail_factor = config.tail_factor * raster.epsilon() * lambda / scaled.epsilon();
  const ZetaValue other = zeta_numeric(scaled, s, scaled_config);
  const std::complex<double> expected = cpow(lambda, s) * base.value;
  return std::abs(other.value - expected) / std::abs(expected);
}

}  // namespace dust
