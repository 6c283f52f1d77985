// SPDX-License-Identifier: Apache-2.0

#include "holonomy/curves.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace holo {

// ---------------------------------------------------------------------------
// Time grids
// ---------------------------------------------------------------------------

TimeGrid build_grid(int n) {
  if (n < 0 || n > 4) throw DomainError("build_grid: supported steps are 0..4");
  TimeGrid g;
  g.n = n;
  long long p6 = 1;
  for (int i = 0; i < n; ++i) p6 *= 6;
  // Uniform block on [0, 1/2] with 6ⁿ intervals.
  for (long long j = 0; j <= p6; ++j)
    g.points.emplace_back(j, 2 * p6);
  // For k = 1..n: uniform block on [1 − 2⁻ᵏ, 1 − 2⁻ᵏ⁻¹] with
  // 2^{k−1}·6^{n−k+1} intervals.
  for (int k = 1; k <= n; ++k) {
    long long twok = 1LL << k;                     // 2^k
    const Rational base(twok - 1, twok);           // Σ_{i≤k} 2⁻ⁱ
    long long count = (1LL << (k - 1));            // 2^{k−1}
    for (int i = 0; i < n - k + 1; ++i) count *= 6;
    const long long den = (1LL << (2 * k)) * (count / (1LL << (k - 1)));
    // den = 2^{2k}·6^{n−k+1}; gap = 1/den, count·gap = 2⁻ᵏ⁻¹.
    for (long long j = 1; j <= count; ++j)
      g.points.push_back(base + Rational(j, den));
  }
  return g;
}

bool TimeGrid::contains(const Rational& t) const {
  return std::binary_search(points.begin(), points.end(), t);
}

int TimeGrid::index_of(const Rational& t) const {
  auto it = std::lower_bound(points.begin(), points.end(), t);
  if (it == points.end() || *it != t)
    throw DomainError("TimeGrid: not a grid point");
  return static_cast<int>(it - points.begin());
}

Rational TimeGrid::predecessor(const Rational& t) const {
  if (t == Rational(1)) return last();
  const int j = index_of(t);
  if (j == 0) throw DomainError("TimeGrid: 0 has no predecessor");
  return points[j - 1];
}

Rational TimeGrid::successor(const Rational& t) const {
  const int j = index_of(t);
  if (j + 1 == size())
    throw DomainError("TimeGrid: the last grid point has no successor");
  return points[j + 1];
}

// ---------------------------------------------------------------------------
// Vertex identification and polyline simplification
// ---------------------------------------------------------------------------

namespace {

double cross2(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

class VertexTable {
 public:
  int id(const Vec2& p) {
    const long long gx = std::llround(p.x() * 1e7);
    const long long gy = std::llround(p.y() * 1e7);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid_.find(key(gx + dx, gy + dy));
        if (it == grid_.end()) continue;
        for (int cand : it->second)
          if ((pts_[cand] - p).cwiseAbs().maxCoeff() < 1e-9) return cand;
      }
    pts_.push_back(p);
    grid_[key(gx, gy)].push_back(static_cast<int>(pts_.size()) - 1);
    return static_cast<int>(pts_.size()) - 1;
  }
  const Vec2& point(int i) const { return pts_[i]; }
  int size() const { return static_cast<int>(pts_.size()); }

 private:
  static long long key(long long gx, long long gy) {
    return gx * 2000003LL + gy;
  }
  std::vector<Vec2> pts_;
  std::unordered_map<long long, std::vector<int>> grid_;
};

// Stack reduction: drops repeated vertices and cancels a-b-a backtracks.
std::vector<int> stack_simplify(const std::vector<int>& seq) {
  std::vector<int> out;
  for (int v : seq) {
    if (!out.empty() && out.back() == v) continue;
    if (out.size() >= 2 && out[out.size() - 2] == v)
      out.pop_back();
    else
      out.push_back(v);
  }
  return out;
}

// Appends `piece` to `seq`, dropping the duplicated junction vertex.
void splice(std::vector<int>& seq, const std::vector<int>& piece) {
  for (std::size_t i = 0; i < piece.size(); ++i) {
    if (i == 0 && !seq.empty() && seq.back() == piece[0]) continue;
    seq.push_back(piece[i]);
  }
}

// Prefix of the reversed walk up to the first hit of `target` (inclusive).
std::vector<int> reversed_until(const std::vector<int>& walk, int target) {
  std::vector<int> out;
  for (auto it = walk.rbegin(); it != walk.rend(); ++it) {
    out.push_back(*it);
    if (*it == target) return out;
  }
  throw DomainError("curve system: target vertex not on the boundary walk");
}

}  // namespace

std::vector<Vec2> simplify_polyline(const std::vector<Vec2>& pts) {
  VertexTable table;
  std::vector<int> ids;
  ids.reserve(pts.size());
  for (const Vec2& p : pts) ids.push_back(table.id(p));
  std::vector<int> out = stack_simplify(ids);
  std::vector<Vec2> res;
  res.reserve(out.size());
  for (int i : out) res.push_back(table.point(i));
  return res;
}

// ---------------------------------------------------------------------------
// CurveSystem
// ---------------------------------------------------------------------------

struct CurveSystem::Impl {
  VertexTable table;
  std::vector<HPoint> lifted;  // Φ-image per vertex id
};

CurveSystem::CurveSystem(SubdivisionLevel level, DiskEmbedding phi)
    : level_(std::move(level)),
      phi_(std::move(phi)),
      impl_(std::make_shared<Impl>()) {
  grid_ = build_grid(level_.step);
  if (grid_.size() - 1 != static_cast<int>(level_.entries.size()))
    throw DomainError("CurveSystem: grid intervals != triangle count");

  auto vid = [&](const Vec2& p) {
    const int before = impl_->table.size();
    const int i = impl_->table.id(p);
    if (i == before) {  // new vertex: evaluate the embedding once
      impl_->lifted.push_back(phi_(p.x(), p.y()));
      if (impl_->lifted.back().dim != phi_.dim)
        throw DimensionError("CurveSystem: embedding dimension mismatch");
    }
    return i;
  };

  const int bp = vid(disk_basepoint());
  loops_.push_back({bp});
  for (const LevelEntry& e : level_.entries) {
    const int s = vid(e.tri.start);
    const int t = vid(e.tri.end);
    start_ids_.push_back(s);
    end_ids_.push_back(t);
    std::array<int, 3> v;
    for (int i = 0; i < 3; ++i) v[i] = vid(e.tri.v[i]);

    // Updated boundary loop: previous loop, approach to the start vertex,
    // the oriented triangle loop, approach reversed; then cancel backtracks.
    const std::vector<int> approach = reversed_until(loops_.back(), s);
    std::vector<int> loop = oriented_loop_ids(
        static_cast<int>(start_ids_.size()), /*at_end=*/false);
    std::vector<int> seq = loops_.back();
    splice(seq, approach);
    splice(seq, loop);
    std::vector<int> back(approach.rbegin(), approach.rend());
    splice(seq, back);
    loops_.push_back(stack_simplify(seq));
  }
  loop_pts_.assign(loops_.size(), {});
}

std::vector<int> CurveSystem::oriented_loop_ids(int j, bool at_end) const {
  const LevelEntry& e = level_.entries[j - 1];
  std::array<int, 3> v;
  std::array<Vec2, 3> p = e.tri.v;
  for (int i = 0; i < 3; ++i) v[i] = impl_->table.id(p[i]);
  // Cyclic order matching the level orientation.
  if (cross2(p[1] - p[0], p[2] - p[0]) * level_.orientation < 0)
    std::swap(v[1], v[2]);
  const int base = at_end ? end_ids_[j - 1] : start_ids_[j - 1];
  int off = -1;
  for (int i = 0; i < 3; ++i)
    if (v[i] == base) off = i;
  if (off < 0) throw DomainError("oriented_loop_ids: base not a vertex");
  return {v[off], v[(off + 1) % 3], v[(off + 2) % 3], v[off]};
}

std::vector<int> CurveSystem::approach_ids(int j) const {
  return reversed_until(loops_[j - 1], start_ids_[j - 1]);
}

std::vector<int> CurveSystem::tail_ids(int j) const {
  return reversed_until(loops_[j], end_ids_[j - 1]);
}

std::vector<Vec2> CurveSystem::realize(const std::vector<int>& ids) const {
  std::vector<Vec2> out;
  out.reserve(ids.size());
  for (int i : ids) out.push_back(impl_->table.point(i));
  return out;
}

HPoint CurveSystem::lifted_vertex(int id) const { return impl_->lifted[id]; }

const std::vector<Vec2>& CurveSystem::boundary_loop(int j) const {
  if (j < 0 || j >= static_cast<int>(loops_.size()))
    throw DomainError("boundary_loop: prefix index out of range");
  if (loop_pts_[j].empty()) loop_pts_[j] = realize(loops_[j]);
  return loop_pts_[j];
}

PathHn CurveSystem::to_pleated(const std::vector<Vec2>& poly) const {
  PathHn path;
  path.dim = phi_.dim;
  path.pts.reserve(poly.size());
  for (const Vec2& p : poly)
    path.pts.push_back(impl_->lifted[impl_->table.id(p)]);
  return path;
}

CurveBundle CurveSystem::bundle(const Rational& t0) const {
  if (t0 == Rational(0))
    throw DomainError("bundle: t0 must be a positive grid time");
  const int j = grid_.index_of(t0);
  CurveBundle b;
  b.j = j;
  b.addr = level_.entries[j - 1].addr;
  b.approach = realize(approach_ids(j));
  b.approach_rev.assign(b.approach.rbegin(), b.approach.rend());
  b.loop_start = realize(oriented_loop_ids(j, false));
  b.loop_end = realize(oriented_loop_ids(j, true));
  b.tail = realize(tail_ids(j));
  b.tail_rev.assign(b.tail.rbegin(), b.tail.rend());
  b.boundary = boundary_loop(j);
  b.boundary_h = to_pleated(b.boundary);
  b.approach_h = to_pleated(b.approach);
  b.loop_start_h = to_pleated(b.loop_start);
  b.loop_end_h = to_pleated(b.loop_end);
  b.tail_h = to_pleated(b.tail);
  return b;
}

AreaClock CurveSystem::area_clock() const {
  AreaClock clock;
  clock.prefix.reserve(level_.entries.size());
  for (std::size_t j = 1; j <= level_.entries.size(); ++j) {
    const auto ids = oriented_loop_ids(static_cast<int>(j), false);
    const double a = triangle_area(totally_geodesic_triangle(
        lifted_vertex(ids[0]), lifted_vertex(ids[1]), lifted_vertex(ids[2])));
    clock.total += a;
    clock.prefix.push_back(clock.total);
  }
  return clock;
}

FiberCurve CurveSystem::fiber_curve(double step) const {
  FiberCurve f;
  f.n = level_.step;
  f.dim = phi_.dim;
  GroupElement cur = GroupElement::identity(f.dim);
  for (int j = 1; j <= triangle_count(); ++j) {
    const auto cids = approach_ids(j);
    GroupElement g = cur;
    if (cids.size() >= 2)
      g = lift_endpoint(to_pleated(realize(cids)), cur, step);
    const auto lids = oriented_loop_ids(j, false);
    const HPoint base = project(g);  // ≈ Φ(start vertex)
    const Vec x = tangent_toward(base, lifted_vertex(lids[1]));
    const Vec y = tangent_toward(base, lifted_vertex(lids[2]));
    const AlgebraElement X = horizontal_at(g, x);
    const AlgebraElement Y = horizontal_at(g, y);
    const AlgebraElement B = bracket(X, Y);
    const double nb = B.norm();
    if (nb < 1e-12)
      throw DomainError("fiber_curve: zero bracket (degenerate tangent plane)");
    FiberSegment seg;
    seg.addr = level_.entries[j - 1].addr;
    seg.t_lo = to_double(grid_.points[j - 1]);
    seg.t_hi = to_double(grid_.points[j]);
    seg.area = triangle_area(totally_geodesic_triangle(
        lifted_vertex(lids[0]), lifted_vertex(lids[1]), lifted_vertex(lids[2])));
    seg.direction = B * (1.0 / nb);
    seg.start_value = cur;
    seg.lift_base = g;
    cur = reproject(cur * exp_map(seg.direction * seg.area));
    f.segments.push_back(std::move(seg));
  }
  return f;
}

// ---------------------------------------------------------------------------
// FiberCurve and the area parametrization
// ---------------------------------------------------------------------------

GroupElement FiberCurve::value(double t) const {
  if (segments.empty()) return GroupElement::identity(dim);
  if (t <= segments.front().t_lo) return segments.front().start_value;
  for (const FiberSegment& s : segments) {
    if (t <= s.t_hi + 1e-15) {
      const double frac =
          std::clamp((t - s.t_lo) / (s.t_hi - s.t_lo), 0.0, 1.0);
      return s.start_value * exp_map(s.direction * (s.area * frac));
    }
  }
  return endpoint();  // constant plateau after the last breakpoint
}

GroupElement FiberCurve::endpoint() const {
  if (segments.empty()) return GroupElement::identity(dim);
  const FiberSegment& s = segments.back();
  return s.start_value * exp_map(s.direction * s.area);
}

double FiberCurve::total_area() const {
  double a = 0.0;
  for (const FiberSegment& s : segments) a += s.area;
  return a;
}

double FiberCurve::plateau_start() const {
  return segments.empty() ? 0.0 : segments.back().t_hi;
}

double FiberCurve::direction_kink(double t) const {
  for (std::size_t i = 0; i + 1 < segments.size(); ++i)
    if (std::abs(segments[i].t_hi - t) < 1e-12) {
      const double c = std::clamp(
          algebra_inner(segments[i].direction, segments[i + 1].direction),
          -1.0, 1.0);
      return std::acos(c);
    }
  throw DomainError("direction_kink: not an interior breakpoint time");
}

AreaParametrized reparametrize_by_area(const FiberCurve& f) {
  AreaParametrized out;
  out.dim = f.dim;
  out.breaks.push_back(0.0);
  for (const FiberSegment& s : f.segments) {
    out.values.push_back(s.start_value);
    out.directions.push_back(s.direction);
    out.breaks.push_back(out.breaks.back() + s.area);
  }
  out.values.push_back(f.endpoint());
  out.total = out.breaks.back();
  return out;
}

GroupElement AreaParametrized::at(double s) const {
  if (values.empty()) return GroupElement::identity(dim);
  const double c = std::clamp(s, 0.0, total);
  for (std::size_t i = 0; i < directions.size(); ++i)
    if (c <= breaks[i + 1] + 1e-15)
      return values[i] * exp_map(directions[i] * (c - breaks[i]));
  return values.back();
}

// ---------------------------------------------------------------------------
// Operation-level wrappers
// ---------------------------------------------------------------------------

AreaClock area_clock(const SubdivisionLevel& level, const DiskEmbedding& phi) {
  return CurveSystem(level, phi).area_clock();
}

CurveBundle build_curve_bundle(int n, const Rational& t0,
                               const SubdivisionLevel& level,
                               const DiskEmbedding& phi) {
  if (level.step != n)
    throw DomainError("build_curve_bundle: level step mismatch");
  return CurveSystem(level, phi).bundle(t0);
}

FiberCurve build_fiber_curve(int n, const SubdivisionLevel& level,
                             const DiskEmbedding& phi, double step) {
  if (level.step != n)
    throw DomainError("build_fiber_curve: level step mismatch");
  return CurveSystem(level, phi).fiber_curve(step);
}

std::vector<TheoremRow> theorem_check(const DiskEmbedding& phi, int n_max,
                                      int orientation, double step) {
  if (n_max < 1 || n_max > 4)
    throw DomainError("theorem_check: n_max must be in 1..4");
  std::vector<TheoremRow> rows;
  const double disk = disk_area(phi);

  // Holonomy of the lifted disk boundary (dense circle polyline).
  const int M = 256;
  PathHn circle;
  circle.dim = phi.dim;
  for (int i = 0; i <= M; ++i) {
    const double th =
        -M_PI / 2.0 + orientation * 2.0 * M_PI * static_cast<double>(i) / M;
    circle.pts.push_back(phi(std::cos(th), std::sin(th)));
  }
  circle.pts.back() = circle.pts.front();
  const GroupElement boundary_hol =
      holonomy(circle, GroupElement::identity(phi.dim), step);

  const TimeGrid coarse = build_grid(2);
  GroupElement prev_end;
  for (int n = 1; n <= n_max; ++n) {
    const SubdivisionLevel level = build_level(n, orientation);
    CurveSystem cs(level, phi);
    const FiberCurve f = cs.fiber_curve(step);

    TheoremRow row;
    row.n = n;
    row.pleated_area = f.total_area();
    // Measure the length by chordal sampling inside each segment.
    double len = 0.0;
    for (const FiberSegment& s : f.segments) {
      const int sub = 8;
      GroupElement a = f.value(s.t_lo);
      for (int i = 1; i <= sub; ++i) {
        const GroupElement b =
            f.value(s.t_lo + (s.t_hi - s.t_lo) * static_cast<double>(i) / sub);
        len += k_distance(a, b);
        a = b;
      }
    }
    row.fiber_length = len;
    row.disk_area_value = disk;
    row.length_gap = std::abs(row.fiber_length - row.pleated_area);
    row.area_gap_rel = std::abs(row.pleated_area - disk) / disk;
    row.boundary_holonomy_gap = k_distance(f.endpoint(), boundary_hol);
    row.cauchy_gap = (n > 1) ? k_distance(prev_end, f.endpoint()) : 0.0;
    prev_end = f.endpoint();

    // Direction kinks at the shared coarse breakpoints (refinement-2 grid
    // for n ≥ 2; the curve's own interior breakpoints for n = 1).
    double kink = 0.0;
    if (n == 1) {
      for (std::size_t i = 0; i + 1 < f.segments.size(); ++i)
        kink = std::max(kink, f.direction_kink(f.segments[i].t_hi));
    } else {
      for (int i = 1; i + 1 < coarse.size(); ++i) {
        const double t = to_double(coarse.points[i]);
        bool is_break = false;
        for (std::size_t s = 0; s + 1 < f.segments.size(); ++s)
          if (std::abs(f.segments[s].t_hi - t) < 1e-12) is_break = true;
        if (is_break) kink = std::max(kink, f.direction_kink(t));
      }
    }
    row.max_direction_kink = kink;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace holo
