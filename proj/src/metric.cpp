#include "dust/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_map>

#include "dust/error.hpp"
#include "dust/topology.hpp"

namespace dust {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

std::int64_t sq(std::int64_t x) { return x * x; }

std::int64_t unit_box_distance2(std::int64_t ox, std::int64_t oy) {
  return sq(std::max<std::int64_t>(0, std::abs(ox) - 1)) + sq(std::max<std::int64_t>(0, std::abs(oy) - 1));
}

// Memoized branch-and-bound over the offset recursion
//   D(o, d) = min_{a,b} D(p*o + b - a, d - 1),   D(o, 0) = box distance of unit squares.
class OffsetDistance {
public:
  explicit OffsetDistance(const Pattern& pattern) : p_(pattern.p()) {
    for (const auto& a : pattern.kept())
      for (const auto& b : pattern.kept()) diffs_.push_back({b.col - a.col, b.row - a.row});
    std::sort(diffs_.begin(), diffs_.end());
    diffs_.erase(std::unique(diffs_.begin(), diffs_.end()), diffs_.end());
  }

  std::int64_t operator()(std::int64_t ox, std::int64_t oy, int depth) { return solve(ox, oy, depth, kUnbounded); }

private:
  static constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

  // Exact value when it is below `bound`; otherwise some lower bound that is >= `bound`.
  std::int64_t solve(std::int64_t ox, std::int64_t oy, int depth, std::int64_t bound) {
    if (depth == 0) return unit_box_distance2(ox, oy);
    const Key key{ox, oy, depth};
    if (auto it = memo_.find(key); it != memo_.end()) {
      if (it->second.exact || it->second.value >= bound) return it->second.value;
    }
    struct Child {
      std::int64_t lb, x, y;
    };
    std::vector<Child> children;
    children.reserve(diffs_.size());
    const std::int64_t scale2 = sq(ipow(p_, depth - 1));
    for (const auto& [dx, dy] : diffs_) {
      const std::int64_t x = p_ * ox + dx, y = p_ * oy + dy;
      children.push_back({unit_box_distance2(x, y) * scale2, x, y});
    }
    std::sort(children.begin(), children.end(), [](const Child& a, const Child& b) { return a.lb < b.lb; });
    std::int64_t best = bound;
    for (const auto& c : children) {
      if (c.lb >= best) break;
      best = std::min(best, solve(c.x, c.y, depth - 1, best));
    }
    const bool exact = best < bound;
    memo_[key] = {best, exact};
    return best;
  }

  struct Key {
    std::int64_t x, y;
    int d;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = std::hash<std::int64_t>{}(k.x);
      h = h * 1000003u ^ std::hash<std::int64_t>{}(k.y);
      return h * 31u ^ static_cast<std::size_t>(k.d);
    }
  };

  std::int64_t p_;
  std::vector<std::array<int, 2>> diffs_;
  struct Entry {
    std::int64_t value;
    bool exact;
  };
  std::unordered_map<Key, Entry, KeyHash> memo_;
};

void check_level(const Pattern& pattern, int level) {
  if (level < 0) throw Error(ErrorKind::InvalidArgument, "level must be >= 0");
  std::int64_t side = 1;
  for (int i = 0; i < level; ++i) {
    side *= pattern.p();
    if (side > (std::int64_t{1} << 24))
      throw Error(ErrorKind::BudgetExceeded, "level " + std::to_string(level) + " exceeds the distance budget");
  }
}

}  // namespace

std::string_view to_string(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::Satisfied: return "Satisfied";
    case ConditionStatus::NotSatisfied: return "NotSatisfied";
    case ConditionStatus::NotPresent: return "NotPresent";
    case ConditionStatus::Borderline: return "Borderline";
  }
  return "?";
}

std::string_view to_string(DustyVerdict v) {
  switch (v) {
    case DustyVerdict::Yes: return "Yes";
    case DustyVerdict::No: return "No";
    case DustyVerdict::Borderline: return "Borderline";
  }
  return "?";
}

int default_metric_level(int p) {
  if (p <= 2) return 8;
  if (p == 3) return 6;
  if (p == 4) return 4;
  return 3;
}

std::int64_t offset_distance2(const Pattern& pattern, Offset offset, int level) {
  check_level(pattern, level);
  OffsetDistance dist(pattern);
  return dist(offset[0], offset[1], level);
}

bool attractors_touch(const Pattern& pattern, Offset offset) {
  if (std::abs(offset[0]) > 1 || std::abs(offset[1]) > 1) return false;
  std::array<bool, 9> alive;
  alive.fill(true);
  auto idx = [](int x, int y) { return (y + 1) * 3 + (x + 1); };
  const int p = pattern.p();
  for (bool changed = true; changed;) {
    changed = false;
    for (int y = -1; y <= 1; ++y)
      for (int x = -1; x <= 1; ++x) {
        if (!alive[idx(x, y)]) continue;
        bool ok = false;
        for (const auto& a : pattern.kept()) {
          for (const auto& b : pattern.kept()) {
            const int nx = p * x + b.col - a.col, ny = p * y + b.row - a.row;
            if (std::abs(nx) <= 1 && std::abs(ny) <= 1 && alive[idx(nx, ny)]) {
              ok = true;
              break;
            }
          }
          if (ok) break;
        }
        if (!ok) {
          alive[idx(x, y)] = false;
          changed = true;
        }
      }
  }
  return alive[idx(offset[0], offset[1])];
}

Interval copy_gap(const Pattern& pattern, Offset offset, int level) {
  if (level < 1) throw Error(ErrorKind::InvalidArgument, "copy_gap needs level >= 1");
  if ((offset[0] == 0 && offset[1] == 0) || std::abs(offset[0]) > 1 || std::abs(offset[1]) > 1)
    throw Error(ErrorKind::InvalidArgument, "offset must be a unit or diagonal neighbour vector");
  if (attractors_touch(pattern, offset)) return {0.0, 0.0};
  const double cell = std::pow(static_cast<double>(pattern.p()), -level);
  const double d = std::sqrt(static_cast<double>(offset_distance2(pattern, offset, level))) * cell;
  return {d, d + 2.0 * kSqrt2 * cell};
}

namespace {

// Kept cells of every level 0..n; the children of node i at level j are i*m .. i*m+m-1 at level j+1.
struct Hierarchy {
  int p = 0, m = 0, n = 0;
  std::vector<std::vector<std::int32_t>> col, row;

  Hierarchy(const Pattern& pattern, int levels) : p(pattern.p()), m(pattern.m()), n(levels) {
    col.assign(n + 1, {});
    row.assign(n + 1, {});
    col[0] = {0};
    row[0] = {0};
    for (int j = 0; j < n; ++j) {
      col[j + 1].reserve(col[j].size() * m);
      row[j + 1].reserve(row[j].size() * m);
      for (std::size_t i = 0; i < col[j].size(); ++i)
        for (const auto& c : pattern.kept()) {
          col[j + 1].push_back(col[j][i] * p + c.col);
          row[j + 1].push_back(row[j][i] * p + c.row);
        }
    }
  }
  std::size_t leaves() const { return col[n].size(); }
};

std::int64_t axis_gap(std::int64_t lo1, std::int64_t hi1, std::int64_t lo2, std::int64_t hi2) {
  return std::max<std::int64_t>({0, lo2 - hi1, lo1 - hi2});
}

struct UnionFind {
  std::vector<std::int32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::int32_t find(std::int32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

class Boruvka {
public:
  explicit Boruvka(const Hierarchy& h) : h_(h), uf_(h.leaves()), label_(h.n + 1) {
    for (int j = 0; j <= h.n; ++j) label_[j].resize(h.col[j].size());
    side_.resize(h.n + 1);
    for (int j = 0; j <= h.n; ++j) side_[j] = ipow(h.p, h.n - j);
  }

  std::vector<std::int64_t> run() {
    std::vector<std::int64_t> weights;
    const auto leaves = static_cast<std::int32_t>(h_.leaves());
    std::int32_t components = leaves;
    while (components > 1) {
      relabel();
      best_d2_.assign(leaves, -1);
      best_x_.assign(leaves, -1);
      for (std::int32_t q = 0; q < leaves; ++q) search(q, label_[h_.n][q], 0, 0);
      for (std::int32_t c = 0; c < leaves; ++c) {
        if (best_x_[c] < 0) continue;
        if (uf_.unite(c, best_x_[c])) {
          weights.push_back(best_d2_[c]);
          --components;
        }
      }
    }
    std::sort(weights.begin(), weights.end());
    return weights;
  }

private:
  void relabel() {
    const int n = h_.n;
    for (std::size_t i = 0; i < label_[n].size(); ++i) label_[n][i] = uf_.find(static_cast<std::int32_t>(i));
    for (int j = n - 1; j >= 0; --j)
      for (std::size_t i = 0; i < label_[j].size(); ++i) {
        std::int32_t l = label_[j + 1][i * h_.m];
        for (int k = 1; k < h_.m && l >= 0; ++k)
          if (label_[j + 1][i * h_.m + k] != l) l = -1;
        label_[j][i] = l;
      }
  }

  void search(std::int32_t q, std::int32_t comp, int j, std::size_t i) {
    const std::int32_t l = label_[j][i];
    if (l == comp) return;
    const std::int64_t s = side_[j];
    const std::int64_t x0 = std::int64_t{h_.col[j][i]} * s, y0 = std::int64_t{h_.row[j][i]} * s;
    const std::int64_t qx = h_.col[h_.n][q], qy = h_.row[h_.n][q];
    const std::int64_t d2 = sq(axis_gap(qx, qx + 1, x0, x0 + s)) + sq(axis_gap(qy, qy + 1, y0, y0 + s));
    auto& bd = best_d2_[comp];
    auto& bx = best_x_[comp];
    if (bd >= 0 && (d2 > bd || (d2 == bd && l >= 0 && l >= bx))) return;
    if (j == h_.n) {
      if (bd < 0 || d2 < bd || (d2 == bd && l < bx)) {
        bd = d2;
        bx = l;
      }
      return;
    }
    for (int k = 0; k < h_.m; ++k) search(q, comp, j + 1, i * h_.m + k);
  }

  const Hierarchy& h_;
  UnionFind uf_;
  std::vector<std::vector<std::int32_t>> label_;
  std::vector<std::int64_t> side_;
  std::vector<std::int64_t> best_d2_;
  std::vector<std::int32_t> best_x_;
};

}  // namespace

MstSummary prefractal_mst(const Pattern& pattern, int level) {
  if (level < 1) throw Error(ErrorKind::InvalidArgument, "MST needs level >= 1");
  check_level(pattern, level);
  if (static_cast<double>(std::pow(pattern.m(), level)) > double(1 << 22))
    throw Error(ErrorKind::BudgetExceeded, "too many cells for the MST at level " + std::to_string(level));
  const Hierarchy h(pattern, level);
  return {level, Boruvka(h).run()};
}

namespace {

// A few ulps outward so that floating-point brackets still enclose exact values such as 1/6.
double round_down(double x) { return x > 0.0 ? std::nextafter(std::nextafter(x, 0.0), 0.0) : x; }
double round_up(double x) { return std::nextafter(std::nextafter(x, 2.0 * x + 1.0), 2.0 * x + 1.0); }

}  // namespace

ThresholdEstimate threshold_alpha(const Pattern& pattern, int level) {
  if (level < 1) throw Error(ErrorKind::InvalidArgument, "threshold needs level >= 1");
  if (attractor_connected(pattern))
    throw Error(ErrorKind::ConnectedAttractor, "attractor is connected; no threshold exists");
  ThresholdEstimate est{0.0, std::numeric_limits<double>::infinity(), level};
  // Each level brackets the same quantity; intersecting keeps the brackets nested.
  for (int j = 1; j <= level; ++j) {
    const double cell = std::pow(static_cast<double>(pattern.p()), -j);
    const double half = 0.5 * std::sqrt(static_cast<double>(prefractal_mst(pattern, j).bottleneck2())) * cell;
    est.lower = std::max(est.lower, round_down(half));
    est.upper = std::min(est.upper, round_up(half + kSqrt2 * cell));
  }
  return est;
}

bool threshold_cascade_check(const Pattern& pattern, int level) {
  if (level < 3) throw Error(ErrorKind::InvalidArgument, "cascade check needs level >= 3");
  if (attractor_connected(pattern))
    throw Error(ErrorKind::ConnectedAttractor, "attractor is connected; no thresholds exist");
  const double p = pattern.p();
  auto distinct = [&](int j) {
    std::vector<double> w;
    for (auto d2 : prefractal_mst(pattern, j).weights2) w.push_back(std::sqrt(static_cast<double>(d2)) * std::pow(p, -j));
    w.erase(std::unique(w.begin(), w.end()), w.end());
    return w;
  };
  const auto fine = distinct(level);
  const auto coarse = distinct(level - 1);
  const double tol = std::pow(p, -level);
  for (double w : coarse) {
    const bool found = std::any_of(fine.begin(), fine.end(), [&](double f) { return std::abs(f - w / p) <= tol; });
    if (!found) return false;
  }
  return true;
}

namespace {

std::vector<Offset> quadrant_offsets(IntersectionType type) {
  switch (type) {
    case IntersectionType::EdgeV: return {{-1, 0}, {0, 0}};
    case IntersectionType::EdgeH: return {{0, -1}, {0, 0}};
    default: break;
  }
  std::vector<Offset> out;
  const unsigned mask = quadrant_mask(type);
  if (mask & kQuadLu) out.push_back({-1, 0});
  if (mask & kQuadLd) out.push_back({-1, -1});
  if (mask & kQuadRd) out.push_back({0, -1});
  if (mask & kQuadRu) out.push_back({0, 0});
  return out;
}

// Distances from a query box to the translated prefractal, unit coordinates.
class SetDistance {
public:
  SetDistance(const Hierarchy& h) : h_(h) {
    for (int j = 0; j <= h.n; ++j) size_.push_back(std::pow(static_cast<double>(h.p), -j));
  }

  double box(double x0, double y0, double x1, double y1, Offset q) const {
    double best = std::numeric_limits<double>::infinity();
    visit(x0 - q[0], y0 - q[1], x1 - q[0], y1 - q[1], 0, 0, best);
    return best;
  }

private:
  void visit(double x0, double y0, double x1, double y1, int j, std::size_t i, double& best) const {
    const double s = size_[j];
    const double cx = h_.col[j][i] * s, cy = h_.row[j][i] * s;
    const double gx = std::max({0.0, cx - x1, x0 - (cx + s)});
    const double gy = std::max({0.0, cy - y1, y0 - (cy + s)});
    const double d = std::hypot(gx, gy);
    if (d >= best) return;
    if (j == h_.n) {
      best = d;
      return;
    }
    for (int k = 0; k < h_.m; ++k) visit(x0, y0, x1, y1, j + 1, i * h_.m + k, best);
  }

  const Hierarchy& h_;
  std::vector<double> size_;
};

int radius_level(const Pattern& pattern, int level) {
  int n = std::max(level, 1);
  while (n > 1 && (std::pow(pattern.m(), n) > double(1 << 18) || std::pow(pattern.p(), n) > 8192.0)) --n;
  return n;
}

}  // namespace

Interval minimax_radius(const Pattern& pattern, IntersectionType type, int level) {
  const int n = radius_level(pattern, level);
  const Hierarchy h(pattern, n);
  const SetDistance dist(h);
  const auto quads = quadrant_offsets(type);
  const double tol = std::pow(static_cast<double>(pattern.p()), -n);

  struct Box {
    double lb, x0, y0, x1, y1;
    bool operator>(const Box& o) const { return lb > o.lb; }
  };
  auto lower = [&](double x0, double y0, double x1, double y1) {
    double v = 0.0;
    for (const auto& q : quads) v = std::max(v, dist.box(x0, y0, x1, y1, q));
    return v;
  };
  auto upper = [&](double x, double y) { return lower(x, y, x, y); };

  std::priority_queue<Box, std::vector<Box>, std::greater<>> queue;
  double ub = upper(0.0, 0.0);
  queue.push({lower(-1, -1, 1, 1), -1, -1, 1, 1});
  double lb = 0.0;
  for (int iter = 0; !queue.empty(); ++iter) {
    const Box b = queue.top();
    queue.pop();
    lb = b.lb;
    if (ub - lb <= tol || iter > 100000) break;
    const double mx = 0.5 * (b.x0 + b.x1), my = 0.5 * (b.y0 + b.y1);
    const std::array<std::array<double, 4>, 4> parts{{{b.x0, b.y0, mx, my}, {mx, b.y0, b.x1, my},
                                                      {b.x0, my, mx, b.y1}, {mx, my, b.x1, b.y1}}};
    for (const auto& c : parts) {
      ub = std::min(ub, upper(0.5 * (c[0] + c[2]), 0.5 * (c[1] + c[3])));
      const double l = lower(c[0], c[1], c[2], c[3]);
      if (l < ub) queue.push({l, c[0], c[1], c[2], c[3]});
    }
    if (queue.empty()) lb = std::min(lb, ub);
  }
  return {std::min(lb, ub), ub + kSqrt2 * tol};
}

namespace {

int default_fine_level(int p) {
  int n = 0;
  for (std::int64_t side = p; side <= (std::int64_t{1} << 20); side *= p) ++n;
  return n;
}

Offset pair_offset(IntersectionType type) {
  switch (type) {
    case IntersectionType::EdgeV: return {1, 0};
    case IntersectionType::EdgeH: return {0, 1};
    case IntersectionType::DiagLuRd: return {1, -1};
    case IntersectionType::DiagLdRu: return {1, 1};
    default: return {0, 0};
  }
}

// Bottleneck (largest edge of a minimum spanning tree) of the complete graph on n nodes.
template <class Weight>
double graph_bottleneck(std::size_t n, Weight weight) {
  struct Edge {
    double w;
    std::size_t a, b;
  };
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) edges.push_back({weight(a, b), a, b});
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.w < y.w; });
  UnionFind uf(n);
  double w = 0.0;
  for (const auto& e : edges)
    if (uf.unite(static_cast<std::int32_t>(e.a), static_cast<std::int32_t>(e.b))) w = e.w;
  return w;
}

}  // namespace

MetricContext::MetricContext(const Pattern& pattern, int mst_level, int fine_level)
    : pattern_(pattern), fine_level_(fine_level > 0 ? fine_level : default_fine_level(pattern.p())) {
  check_level(pattern_, fine_level_);
  for (const auto& s : all_symmetries())
    if (transform(pattern_, s) == pattern_) stabilizer_.push_back(s);

  const auto& kept = pattern_.kept();
  const std::size_t m = kept.size();
  std::vector<std::vector<std::size_t>> pair_class(m, std::vector<std::size_t>(m, 0));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      const Offset o{kept[b].col - kept[a].col, kept[b].row - kept[a].row};
      auto found = class_of(o);
      if (!found) {
        classes_.push_back({{o}, offset_interval(o), attractors_touch(pattern_, o)});
        found = classes_.size() - 1;
      } else if (std::find(classes_[*found].offsets.begin(), classes_[*found].offsets.end(), o) ==
                 classes_[*found].offsets.end()) {
        classes_[*found].offsets.push_back(o);
      }
      pair_class[a][b] = *found;
    }

  bottleneck_ = {graph_bottleneck(m, [&](std::size_t a, std::size_t b) { return classes_[pair_class[a][b]].distance.lo; }),
                 graph_bottleneck(m, [&](std::size_t a, std::size_t b) { return classes_[pair_class[a][b]].distance.hi; })};
  std::vector<std::size_t> candidates;
  for (std::size_t c = 0; c < classes_.size(); ++c)
    if (classes_[c].distance.overlaps(bottleneck_)) candidates.push_back(c);
  if (candidates.size() == 1) bottleneck_class_ = candidates.front();

  const Interval half{round_down(0.5 * bottleneck_.lo), round_up(0.5 * bottleneck_.hi)};
  if (mst_level > 0) {
    mst_alpha_ = threshold_alpha(pattern_, mst_level);
    alpha_ = {std::max(mst_alpha_.lower, half.lo), std::min(mst_alpha_.upper, half.hi), mst_level};
    if (alpha_.lower > alpha_.upper)
      throw Error(ErrorKind::InternalInconsistency, "spanning-tree and copy-graph thresholds disagree");
  } else {
    mst_alpha_ = {half.lo, half.hi, fine_level_};
    alpha_ = mst_alpha_;
  }
}

std::optional<std::size_t> MetricContext::class_of(Offset o) const {
  for (const auto& s : stabilizer_)
    for (int sign : {1, -1}) {
      const auto v = s.apply_vector(sign * o[0], sign * o[1]);
      const Offset image{v[0], v[1]};
      for (std::size_t c = 0; c < classes_.size(); ++c)
        if (std::find(classes_[c].offsets.begin(), classes_[c].offsets.end(), image) != classes_[c].offsets.end())
          return c;
    }
  return std::nullopt;
}

Interval MetricContext::offset_interval(Offset o) const {
  if (attractors_touch(pattern_, o)) return {0.0, 0.0};
  const double p = pattern_.p();
  const double cell = std::pow(p, -fine_level_);
  const double d = std::sqrt(static_cast<double>(offset_distance2(pattern_, o, fine_level_))) * cell;
  return {d / p, (d + 2.0 * kSqrt2 * cell) / p};
}

Interval MetricContext::type_gap(IntersectionType type) const {
  const Offset o = pair_offset(type);
  if (o[0] != 0 || o[1] != 0) return offset_interval(o);
  const Interval r = minimax_radius(pattern_, type, default_metric_level(pattern_.p()));
  const double p = pattern_.p();
  return {2.0 * r.lo / p, 2.0 * r.hi / p};
}

DustyVerdict MetricContext::completely_dusty() const {
  Interval dmin{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (const auto& c : classes_) {
    dmin.lo = std::min(dmin.lo, c.distance.lo);
    dmin.hi = std::min(dmin.hi, c.distance.hi);
  }
  if (dmin.hi < bottleneck_.lo) return DustyVerdict::No;
  if (dmin.lo >= bottleneck_.hi) return DustyVerdict::Yes;
  std::vector<std::size_t> candidates;
  for (std::size_t c = 0; c < classes_.size(); ++c)
    if (classes_[c].distance.lo <= dmin.hi) candidates.push_back(c);
  // The minimum never exceeds the bottleneck, so one shared class means equality.
  if (bottleneck_class_ && candidates.size() == 1 && candidates.front() == *bottleneck_class_) return DustyVerdict::Yes;
  return DustyVerdict::Borderline;
}

ConditionVerdict MetricContext::condition_c(IntersectionType type, bool present) const {
  ConditionVerdict v;
  v.alpha = alpha_;
  if (!present) {
    v.status = ConditionStatus::NotPresent;
    return v;
  }
  v.gap = type_gap(type);
  const Interval two_alpha{2.0 * alpha_.lower, 2.0 * alpha_.upper};
  const Offset o = pair_offset(type);
  const bool pair = o[0] != 0 || o[1] != 0;
  if (pair && bottleneck_class_ && class_of(o) == bottleneck_class_) {
    v.status = ConditionStatus::NotSatisfied;  // gap equals 2*alpha exactly; open tubes only touch
  } else if (v.gap.hi < two_alpha.lo) {
    v.status = ConditionStatus::Satisfied;
  } else if (v.gap.lo >= two_alpha.hi) {
    v.status = ConditionStatus::NotSatisfied;
  } else {
    v.status = ConditionStatus::Borderline;
  }
  return v;
}

DustyVerdict completely_dusty(const Pattern& pattern, int level) {
  return MetricContext(pattern, level).completely_dusty();
}

ConditionVerdict condition_c(const Pattern& pattern, IntersectionType type, const ThresholdEstimate& alpha, [[maybe_unused]] int level) {
  bool present = false;
  for (const auto& t : tally_levels(pattern, 3)) present = present || t.total[index_of(type)] > 0;
  MetricContext ctx(pattern, 0);
  ConditionVerdict v = ctx.condition_c(type, present);
  v.alpha = alpha;
  if (!present) return v;
  const Interval two_alpha{2.0 * alpha.lower, 2.0 * alpha.upper};
  const Offset o = pair_offset(type);
  const bool tie = (o[0] != 0 || o[1] != 0) && ctx.bottleneck_class() && ctx.class_of(o) == ctx.bottleneck_class() &&
                   two_alpha.overlaps(ctx.bottleneck());
  if (tie) v.status = ConditionStatus::NotSatisfied;
  else if (v.gap.hi < two_alpha.lo) v.status = ConditionStatus::Satisfied;
  else if (v.gap.lo >= two_alpha.hi) v.status = ConditionStatus::NotSatisfied;
  else v.status = ConditionStatus::Borderline;
  return v;
}

}  // namespace dust
