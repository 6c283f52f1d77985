// SPDX-License-Identifier: Apache-2.0

#include "holonomy/hyperbolic.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <mutex>

namespace holo {

HPoint::HPoint(Vec v, int n) : vec(std::move(v)), dim(n) {
  if (vec.size() != n + 1)
    throw DimensionError("HPoint: vector size must be n+1");
  if (constraint_residual() > 1e-8)
    throw DomainError("HPoint: hyperboloid constraint violated");
  if (vec(0) < 1.0 - 1e-9)
    throw DomainError("HPoint: x0 must be >= 1 (upper sheet)");
}

double HPoint::constraint_residual() const {
  return std::abs(minkowski_dot(vec, vec) + 1.0);
}

HPoint e_bar(int n) {
  Vec v = Vec::Zero(n + 1);
  v(0) = 1.0;
  return HPoint(v, n);
}

double minkowski_dot(const Vec& p, const Vec& q) {
  double s = -p(0) * q(0);
  for (int i = 1; i < p.size(); ++i) s += p(i) * q(i);
  return s;
}

HPoint project(const GroupElement& g) {
  return HPoint(g.mat.col(0), g.dim);
}

double distance(const HPoint& p, const HPoint& q) {
  const double c = -minkowski_dot(p.vec, q.vec);
  return std::acosh(std::max(1.0, c));
}

Vec tangent_toward(const HPoint& p, const HPoint& q) {
  // Component of q orthogonal to p: q + ⟨p,q⟩_S·p (using ⟨p,p⟩_S = −1).
  Vec u = q.vec + minkowski_dot(p.vec, q.vec) * p.vec;
  const double n2 = minkowski_dot(u, u);  // positive on tangent vectors
  if (n2 < 1e-24) throw DomainError("tangent_toward: coincident points");
  return u / std::sqrt(n2);
}

HPoint geodesic(const HPoint& p, const HPoint& q, double t) {
  const double d = distance(p, q);
  if (d < 1e-15) return p;
  const Vec u = tangent_toward(p, q);
  return geodesic_flow(p, u, t * d);
}

HPoint geodesic_flow(const HPoint& p, const Vec& unit_dir, double s) {
  Vec v = std::cosh(s) * p.vec + std::sinh(s) * unit_dir;
  // Renormalize onto the hyperboloid (guards against rounding for large s).
  const double n2 = -minkowski_dot(v, v);
  v /= std::sqrt(n2);
  return HPoint(v, p.dim);
}

bool is_degenerate(const HPoint& a, const HPoint& b, const HPoint& c) {
  if (distance(a, b) < 1e-12 || distance(a, c) < 1e-12 ||
      distance(b, c) < 1e-12)
    return true;
  // Collinearity: the Minkowski Gram matrix of {a,b,c} is singular exactly
  // when the three points lie on one geodesic (2-dim span).
  Eigen::Matrix3d G;
  const HPoint* pts[3] = {&a, &b, &c};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      G(i, j) = minkowski_dot(pts[i]->vec, pts[j]->vec);
  return std::abs(G.determinant()) < 1e-12;
}

GeodesicTriangle totally_geodesic_triangle(const HPoint& a, const HPoint& b,
                                           const HPoint& c, int orientation) {
  if (distance(a, b) < 1e-12 || distance(a, c) < 1e-12 ||
      distance(b, c) < 1e-12)
    throw DomainError("totally_geodesic_triangle: coincident vertices");
  return GeodesicTriangle{a, b, c, orientation >= 0 ? +1 : -1};
}

namespace {

// Signed angle from unit tangent a to unit tangent b at v in ℍ² (dim 2):
// the ambient volume form det[v a b] supplies the sine.
double signed_angle_h2(const HPoint& v, const Vec& a, const Vec& b) {
  Eigen::Matrix3d M;
  M.col(0) = v.vec;
  M.col(1) = a;
  M.col(2) = b;
  return std::atan2(M.determinant(), minkowski_dot(a, b));
}

double interior_angle(const HPoint& v, const Vec& a, const Vec& b) {
  const double c = std::clamp(minkowski_dot(a, b), -1.0, 1.0);
  return std::acos(c);
}

}  // namespace

VertexAngles vertex_angles(const GeodesicTriangle& tri) {
  if (is_degenerate(tri.p, tri.q, tri.r))
    throw DomainError("vertex_angles: degenerate triangle");
  // Traversal cycle per orientation.
  const HPoint* cyc[3];
  if (tri.orientation >= 0) {
    cyc[0] = &tri.p;
    cyc[1] = &tri.q;
    cyc[2] = &tri.r;
  } else {
    cyc[0] = &tri.p;
    cyc[1] = &tri.r;
    cyc[2] = &tri.q;
  }
  double ang[3];
  for (int i = 0; i < 3; ++i) {
    const HPoint& v = *cyc[i];
    const HPoint& nxt = *cyc[(i + 1) % 3];
    const HPoint& prv = *cyc[(i + 2) % 3];
    const Vec out = tangent_toward(v, nxt);   // ċ(t⁺) direction
    const Vec back = tangent_toward(v, prv);  // −ċ(t⁻) direction
    if (tri.p.dim == 2) {
      ang[i] = signed_angle_h2(v, out, back);
    } else {
      // No canonical plane orientation in ℍⁿ, n ≥ 3: sign from the
      // triangle's own orientation field.
      ang[i] = tri.orientation * interior_angle(v, out, back);
    }
  }
  return VertexAngles{ang[0], ang[1], ang[2]};
}

double triangle_area(const GeodesicTriangle& tri) {
  if (is_degenerate(tri.p, tri.q, tri.r)) return 0.0;  // flagged degenerate
  const VertexAngles a = vertex_angles(tri);
  return M_PI - std::abs(a.alpha + a.beta + a.gamma);
}

namespace {

template <unsigned N>
double disk_area_fixed(const DiskEmbedding& emb) {
  using G = boost::math::quadrature::gauss<double, N>;
  // Build full node/weight lists on [0,1] (radius) and [0,2π] (angle) from
  // the symmetric half-tables boost stores.
  std::vector<double> rho, wr, th, wt;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] > 0.0) {
      rho.push_back(0.5 * (1.0 - x[i]));
      wr.push_back(0.5 * w[i]);
      th.push_back(M_PI * (1.0 - x[i]));
      wt.push_back(M_PI * w[i]);
    }
  }
  for (std::size_t i = (N % 2 == 1 ? 1 : 0); i < x.size(); ++i) {
    rho.push_back(0.5 * (1.0 + x[i]));
    wr.push_back(0.5 * w[i]);
    th.push_back(M_PI * (1.0 + x[i]));
    wt.push_back(M_PI * w[i]);
  }
  if (N % 2 == 1) {  // center node
    rho.insert(rho.begin() + rho.size() / 2, 0.5);
    wr.insert(wr.begin() + wr.size() / 2, 0.5 * w[0]);
    th.insert(th.begin() + th.size() / 2, M_PI);
    wt.insert(wt.begin() + wt.size() / 2, M_PI * w[0]);
  }

  const double h = 1e-5;  // centered-difference step for the Jacobian
  std::vector<double> row_sum(rho.size(), 0.0);
  std::mutex err_mutex;
  std::string error;
  parallel_for(rho.size(), [&](std::size_t i) {
    try {
      double acc = 0.0;
      for (std::size_t j = 0; j < th.size(); ++j) {
        const double u = rho[i] * std::cos(th[j]);
        const double v = rho[i] * std::sin(th[j]);
        const Vec fu =
            (emb(u + h, v).vec - emb(u - h, v).vec) / (2.0 * h);
        const Vec fv =
            (emb(u, v + h).vec - emb(u, v - h).vec) / (2.0 * h);
        const double E = minkowski_dot(fu, fu);
        const double F = minkowski_dot(fu, fv);
        const double Gm = minkowski_dot(fv, fv);
        const double det = E * Gm - F * F;
        if (!(det > 1e-16))
          throw DomainError("disk_area: rank-deficient Jacobian sample");
        acc += wt[j] * std::sqrt(det);
      }
      row_sum[i] = acc * wr[i] * rho[i];
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lk(err_mutex);
      error = e.what();
    }
  });
  if (!error.empty()) throw DomainError(error);
  double total = 0.0;
  for (double s : row_sum) total += s;
  return total;
}

}  // namespace

double disk_area(const DiskEmbedding& emb, int resolution) {
  if (emb.check_basepoint) {
    const HPoint bp = emb(disk_basepoint_u(), disk_basepoint_v());
    // Coordinate comparison (the arcosh distance has a √ε floor near 0).
    if ((bp.vec - e_bar(emb.dim).vec).cwiseAbs().maxCoeff() > 1e-8)
      throw DomainError("disk_area: basepoint constraint Φ(0,−1) = ē failed");
  }
  // Gauss–Legendre sizes are compile-time; round the request up.
  if (resolution <= 16) return disk_area_fixed<16>(emb);
  if (resolution <= 32) return disk_area_fixed<32>(emb);
  if (resolution <= 64) return disk_area_fixed<64>(emb);
  if (resolution <= 128) return disk_area_fixed<128>(emb);
  return disk_area_fixed<256>(emb);
}

}  // namespace holo
