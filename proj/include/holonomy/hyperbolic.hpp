// SPDX-License-Identifier: Apache-2.0
//
// The hyperboloid model of ℍⁿ as the base of the submersion
// π : SO₀(1,n) → ℍⁿ, π(g) = g·ē with ē = (1,0,…,0):
// geodesics, distances, signed vertex angles, angle-defect triangle areas,
// and numeric areas of embedded disks.
#pragma once

#include <functional>

#include "holonomy/lorentz.hpp"

namespace holo {

struct HPoint {
  Vec vec;  // (n+1)-vector with ⟨x,x⟩_S = −1, x₀ ≥ 1
  int dim;

  HPoint() : dim(0) {}
  HPoint(Vec v, int n);  // validates the hyperboloid constraint

  double constraint_residual() const;  // |⟨x,x⟩_S + 1|
};

// ē = (1, 0, …, 0), the image of the identity.
HPoint e_bar(int n);

// Minkowski pairing ⟨p,q⟩_S = −p₀q₀ + Σ pᵢqᵢ (works on raw vectors too).
double minkowski_dot(const Vec& p, const Vec& q);

// π(g) = g·ē (the first column of g).
HPoint project(const GroupElement& g);

// d(p,q) = arcosh(−⟨p,q⟩_S).
double distance(const HPoint& p, const HPoint& q);

// Unit tangent at p pointing toward q (undefined for p = q).
Vec tangent_toward(const HPoint& p, const HPoint& q);

// Point at parameter t ∈ [0,1] of the geodesic from p to q (endpoint-exact).
HPoint geodesic(const HPoint& p, const HPoint& q, double t);

// exp_p(s·u) for a unit tangent u at p: cosh(s)·p + sinh(s)·u.
HPoint geodesic_flow(const HPoint& p, const Vec& unit_dir, double s);

struct GeodesicTriangle {
  HPoint p, q, r;
  int orientation = +1;  // ±1: traversal p→q→r or p→r→q
};

// Builds the (unique) totally geodesic triangle on three distinct points.
GeodesicTriangle totally_geodesic_triangle(const HPoint& a, const HPoint& b,
                                           const HPoint& c,
                                           int orientation = +1);

// Signed turning angles (α, β, γ) of the boundary loop at the three
// traversal vertices.  All three share one sign.  In ℍ² the sign is read
// off the ambient orientation; in higher dimension it is fixed by the
// triangle's orientation field (see ledger).
struct VertexAngles {
  double alpha, beta, gamma;
};
VertexAngles vertex_angles(const GeodesicTriangle& tri);

// Angle-defect area π − |α+β+γ| ∈ (0, π).  Degenerate triangles report 0
// (with the degenerate flag via is_degenerate).
double triangle_area(const GeodesicTriangle& tri);
bool is_degenerate(const HPoint& a, const HPoint& b, const HPoint& c);

// A smooth embedding Φ : D² → ℍⁿ with Φ(basepoint) = ē, basepoint = (0,−1).
struct DiskEmbedding {
  std::function<HPoint(double, double)> phi;  // (u,v) ∈ D² → ℍⁿ
  int dim;
  bool check_basepoint = true;

  HPoint operator()(double u, double v) const { return phi(u, v); }
};

// Basepoint of ∂D² (angle −π/2), shared with the subdivision module.
inline double disk_basepoint_u() { return 0.0; }
inline double disk_basepoint_v() { return -1.0; }

// Numeric area of Φ(D²): Gauss–Legendre tensor quadrature in polar
// coordinates of D²; Jacobian via centered differences.  Throws on
// rank-deficient Jacobian samples.
double disk_area(const DiskEmbedding& emb, int resolution = 128);

}  // namespace holo
