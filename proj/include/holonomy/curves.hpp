// SPDX-License-Identifier: Apache-2.0
//
// The holonomy-curve system of an ordered subdivision level pushed onto a
// pleated surface in ℍⁿ, and the fiber curve it generates in K = SO(n):
//
//   * exact rational time grids whose intervals enumerate the ordered
//     triangles (one interval per triangle, plus a terminal plateau);
//   * the evolving boundary loop ("holonomy curve") after each triangle,
//     obtained by splicing the triangle's boundary into the previous loop
//     and cancelling backtracks;
//   * the fiber curve: a piecewise one-parameter-subgroup curve in K whose
//     segment over the j-th grid interval has direction [X,Y]/‖[X,Y]‖ —
//     X, Y the horizontal lifts of the triangle loop's initial and negated
//     final unit directions at the lifted start point — and length equal to
//     the pleated triangle's area.  Its value at a grid point equals the
//     endpoint of the horizontal lift of the boundary loop at the identity,
//     which is the identity the tests verify.
#pragma once

#include <boost/rational.hpp>

#include <memory>
#include <vector>

#include "holonomy/connection.hpp"
#include "holonomy/subdivision.hpp"

namespace holo {

using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

// Refinement-n subdivision times of [0,1]: the uniform grid of 6ⁿ intervals
// on [0, 1/2] followed, for k = 1..n, by a uniform grid of 2^{k−1}·6^{n−k+1}
// intervals on the dyadic span [Σ_{i≤k} 2⁻ⁱ, Σ_{i≤k+1} 2⁻ⁱ].  The last
// point is Σ_{i=1}^{n+1} 2⁻ⁱ; the interval count equals the number of
// triangles in the ordered level of the same step.
struct TimeGrid {
  int n = 0;
  std::vector<Rational> points;  // strictly increasing, points[0] = 0

  int size() const { return static_cast<int>(points.size()); }
  Rational last() const { return points.back(); }
  bool contains(const Rational& t) const;
  // Position of a grid point (0-based).  Throws if t is not a grid point.
  int index_of(const Rational& t) const;
  // Previous grid point; t = 1 maps to the last point.  Throws at t = 0
  // and for non-grid arguments other than 1.
  Rational predecessor(const Rational& t) const;
  // Next grid point.  Throws at the last point and for non-grid arguments.
  Rational successor(const Rational& t) const;
};

TimeGrid build_grid(int n);

// Cancels immediate backtracks (an edge followed by its reverse) from a
// polyline until none remain; endpoints are preserved and the image never
// grows.  Vertices are identified at 1e-9.
std::vector<Vec2> simplify_polyline(const std::vector<Vec2>& pts);

// The named paths attached to one triangle of the ordered level (disk
// coordinates, plus piecewise-geodesic images on the pleated surface):
//   approach    runs from the basepoint to the triangle's start point,
//               backwards along the previous boundary loop;
//   loop_start  is the triangle's boundary loop at its start point,
//               oriented by the level orientation;
//   loop_end    is the same loop based at the triangle's end point;
//   tail        runs from the basepoint to the triangle's end point,
//               backwards along the updated boundary loop;
//   boundary    is the updated boundary loop (basepoint to basepoint).
struct CurveBundle {
  int j = 0;  // 1-based triangle index in the ordered level
  TriangleAddress addr;
  std::vector<Vec2> boundary, approach, approach_rev, loop_start, loop_end,
      tail, tail_rev;
  PathHn boundary_h, approach_h, loop_start_h, loop_end_h, tail_h;
};

// One segment of the fiber curve: a geodesic arc in K of length `area`.
struct FiberSegment {
  TriangleAddress addr;
  double t_lo = 0.0, t_hi = 0.0;  // grid interval
  double area = 0.0;              // pleated triangle area = arc length
  AlgebraElement direction;       // unit vertical direction [X,Y]/‖[X,Y]‖
  GroupElement start_value;       // value at t_lo (∈ K)
  GroupElement lift_base;         // lift endpoint over the triangle start
};

struct FiberCurve {
  int n = 0;
  int dim = 0;
  std::vector<FiberSegment> segments;

  GroupElement value(double t) const;  // constant after the last segment
  GroupElement endpoint() const;
  double total_area() const;
  double plateau_start() const;  // time of the last breakpoint
  // Angle between the incoming and outgoing unit directions at an interior
  // breakpoint time (body frame at the shared value).
  double direction_kink(double t) const;
};

// Cumulative pleated area over the ordered triangles: prefix[j−1] is the
// area of the first j triangles.
struct AreaClock {
  std::vector<double> prefix;
  double total = 0.0;
};

// Unit-speed reparametrization of a fiber curve by cumulative area, with
// its piecewise-constant unit direction field.
struct AreaParametrized {
  int dim = 0;
  std::vector<double> breaks;              // size = segments + 1, breaks[0]=0
  std::vector<AlgebraElement> directions;  // per segment, unit norm
  std::vector<GroupElement> values;        // at the breaks
  double total = 0.0;

  GroupElement at(double s) const;  // clamped to [0, total]
};

// Pushes an ordered subdivision level through a disk embedding and exposes
// the curve system.  The embedding is evaluated only at subdivision
// vertices (cached); boundary loops are precomputed for every prefix.
class CurveSystem {
 public:
  CurveSystem(SubdivisionLevel level, DiskEmbedding phi);

  const TimeGrid& grid() const { return grid_; }
  const SubdivisionLevel& level() const { return level_; }
  int triangle_count() const { return static_cast<int>(level_.entries.size()); }

  // Boundary loop after j triangles (j = 0..count) as a disk polyline from
  // the basepoint back to the basepoint.
  const std::vector<Vec2>& boundary_loop(int j) const;

  // Piecewise geodesic through the Φ-images of a polyline's vertices.
  PathHn to_pleated(const std::vector<Vec2>& poly) const;

  // All named curves for the grid point t0 (the jᵗʰ with j ≥ 1).
  // Throws for t0 = 0 or non-grid t0.
  CurveBundle bundle(const Rational& t0) const;

  // Areas of the pleated triangles in order, and their prefix sums.
  AreaClock area_clock() const;

  // The fiber curve; `step` is the arc-length step of the internal
  // horizontal lifts.
  FiberCurve fiber_curve(double step = 1e-3) const;

 private:
  SubdivisionLevel level_;
  DiskEmbedding phi_;
  TimeGrid grid_;
  std::vector<std::vector<int>> loops_;    // vertex-id loops per prefix
  std::vector<int> start_ids_, end_ids_;   // per triangle
  mutable std::vector<std::vector<Vec2>> loop_pts_;  // realized polylines

  struct Impl;
  std::shared_ptr<Impl> impl_;  // vertex table and Φ cache

  std::vector<int> approach_ids(int j) const;  // basepoint → start of j
  std::vector<int> tail_ids(int j) const;      // basepoint → end of j
  std::vector<int> oriented_loop_ids(int j, bool at_end) const;
  std::vector<Vec2> realize(const std::vector<int>& ids) const;
  HPoint lifted_vertex(int id) const;
};

// Convenience wrappers matching the operation-level interface.
AreaClock area_clock(const SubdivisionLevel& level, const DiskEmbedding& phi);
CurveBundle build_curve_bundle(int n, const Rational& t0,
                               const SubdivisionLevel& level,
                               const DiskEmbedding& phi);
FiberCurve build_fiber_curve(int n, const SubdivisionLevel& level,
                             const DiskEmbedding& phi, double step = 1e-3);
AreaParametrized reparametrize_by_area(const FiberCurve& f);

// Per-refinement summary of the quantitative surrogates: measured fiber
// length vs. summed pleated area, pleated area vs. quadrature disk area,
// endpoint vs. boundary holonomy, endpoint Cauchy differences across n,
// and the largest direction kink at the shared coarse grid points.
struct TheoremRow {
  int n = 0;
  double fiber_length = 0.0;
  double pleated_area = 0.0;
  double disk_area_value = 0.0;
  double length_gap = 0.0;            // |fiber_length − pleated_area|
  double area_gap_rel = 0.0;          // |pleated − disk| / disk
  double boundary_holonomy_gap = 0.0; // d(endpoint, holonomy of lifted ∂)
  double cauchy_gap = 0.0;            // d(endpointₙ, endpointₙ₋₁); 0 first
  double max_direction_kink = 0.0;    // radians
};

std::vector<TheoremRow> theorem_check(const DiskEmbedding& phi, int n_max,
                                      int orientation = +1,
                                      double step = 1e-3);

}  // namespace holo
