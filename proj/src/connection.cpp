// SPDX-License-Identifier: Apache-2.0

#include "holonomy/connection.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>

namespace holo {

double PathHn::length() const {
  double L = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    L += distance(pts[i], pts[i + 1]);
  return L;
}

bool PathHn::is_loop(double tolerance) const {
  return !pts.empty() &&
         (pts.front().vec - pts.back().vec).cwiseAbs().maxCoeff() < tolerance;
}

HPoint PathHn::at(double t) const {
  if (pts.empty()) throw DomainError("PathHn::at: empty path");
  if (pts.size() == 1) return pts.front();
  const double L = length();
  if (L < 1e-15) return pts.front();
  double target = std::clamp(t, 0.0, 1.0) * L;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double d = distance(pts[i], pts[i + 1]);
    if (target <= d || i + 2 == pts.size()) {
      if (d < 1e-15) return pts[i];
      return geodesic(pts[i], pts[i + 1], std::min(1.0, target / d));
    }
    target -= d;
  }
  return pts.back();
}

AlgebraElement connection_form(const GroupElement& /*g*/,
                               const AlgebraElement& v) {
  return split_vertical_horizontal(v).vertical;
}

GroupElement section(const HPoint& p) {
  const int n = p.dim;
  const double alpha = std::acosh(std::max(1.0, p.vec(0)));
  if (alpha < 1e-15) return GroupElement::identity(n);
  Vec xi = p.vec.tail(n);
  xi *= alpha / xi.norm();
  Mat X = Mat::Zero(n + 1, n + 1);
  X.row(0).tail(n) = xi.transpose();
  X.col(0).tail(n) = xi;
  return exp_map(AlgebraElement(X, n));
}

namespace {

// Horizontal algebra element with spatial column xi.
Mat horizontal_from_xi(const Vec& xi) {
  const int n = static_cast<int>(xi.size());
  Mat X = Mat::Zero(n + 1, n + 1);
  X.row(0).tail(n) = xi.transpose();
  X.col(0).tail(n) = xi;
  return X;
}

}  // namespace

AlgebraElement horizontal_at(const GroupElement& g, const Vec& w) {
  const int n = g.dim;
  const Vec body = g.inverse().mat * w;  // tangent at ē: first entry ≈ 0
  if (std::abs(body(0)) > 1e-6)
    throw DomainError("horizontal_at: w is not tangent at the base point");
  return AlgebraElement(horizontal_from_xi(body.tail(n)), n);
}

namespace {

Mat comm(const Mat& a, const Mat& b) { return a * b - b * a; }

// One RKMK4 step for g′ = g·A(t,g): classical RK4 applied to the pulled
// back equation u′ = dexpinv_u(A(g₀e^u, t)) with the dexpinv series
// truncated at the order-4 terms.
template <typename AFun>
Mat rkmk4_step(const Mat& g, double t, double h, const Mat& S,
               const AFun& A) {
  auto inv = [&](const Mat& m) { return (S * m.transpose() * S).eval(); };
  auto F = [&](double tt, const Mat& u) {
    const Mat ge = (g * u.exp()).eval();
    const Mat a = A(tt, ge, inv(ge));
    return (a - 0.5 * comm(u, a) + (1.0 / 12.0) * comm(u, comm(u, a))).eval();
  };
  const Mat z = Mat::Zero(g.rows(), g.cols());
  const Mat k1 = F(t, z);
  const Mat k2 = F(t + 0.5 * h, (0.5 * h) * k1);
  const Mat k3 = F(t + 0.5 * h, (0.5 * h) * k2);
  const Mat k4 = F(t + h, h * k3);
  const Mat u = (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return g * u.exp();
}

struct RawLift {
  std::vector<Mat> samples;
  std::vector<double> times;
};

// Lift of the piecewise geodesic with exact per-segment velocities.
RawLift raw_lift(const PathHn& curve, const GroupElement& start, double step) {
  const int n = curve.dim;
  const Mat S = minkowski_form(n);
  // Coordinate comparison: the arcosh distance has a √ε resolution floor
  // (≈ 2e-8) and would reject exact matches.
  if ((project(start).vec - curve.pts.front().vec).cwiseAbs().maxCoeff() > 1e-8)
    throw DomainError("horizontal_lift: start does not project to curve(0)");
  if (!(step > 0.0)) throw DomainError("horizontal_lift: step must be > 0");

  RawLift out;
  const double L = curve.length();
  double done = 0.0;
  Mat g = start.mat;
  out.samples.push_back(g);
  out.times.push_back(0.0);
  int since_reproject = 0;
  for (std::size_t i = 0; i + 1 < curve.pts.size(); ++i) {
    const HPoint& p = curve.pts[i];
    const HPoint& q = curve.pts[i + 1];
    const double d = distance(p, q);
    if (d < 1e-14) continue;
    const Vec u0 = tangent_toward(p, q);
    // c(s) = cosh(s)p + sinh(s)u₀,  ċ(s) = sinh(s)p + cosh(s)u₀, s ∈ [0,d].
    auto A = [&](double s, const Mat& /*gg*/, const Mat& gg_inv) {
      const Vec cdot = std::sinh(s) * p.vec + std::cosh(s) * u0;
      const Vec w = gg_inv * cdot;  // tangent at ē: first entry ≈ 0
      return horizontal_from_xi(w.tail(n));
    };
    const int steps = std::max(1, static_cast<int>(std::ceil(d / step)));
    const double h = d / steps;
    for (int k = 0; k < steps; ++k) {
      g = rkmk4_step(g, k * h, h, S, A);
      if (++since_reproject >= 64) {
        g = reproject(GroupElement(g, n)).mat;
        since_reproject = 0;
      }
      done += h;
      out.samples.push_back(g);
      out.times.push_back(L > 0 ? done / L : 1.0);
    }
  }
  if (!(out.times.empty())) out.times.back() = 1.0;
  return out;
}

}  // namespace

LiftResult horizontal_lift(const PathHn& curve, const GroupElement& start,
                           double step) {
  const int n = curve.dim;
  RawLift raw = raw_lift(curve, start, step);
  LiftResult res;
  res.times = raw.times;
  res.lifted.dim = n;
  res.fiber_clock.dim = n;
  res.lifted.samples.reserve(raw.samples.size());
  res.fiber_clock.samples.reserve(raw.samples.size());
  for (std::size_t i = 0; i < raw.samples.size(); ++i) {
    GroupElement g(raw.samples[i], n);
    res.lifted.samples.push_back(g);
    const HPoint base = project(g);
    res.fiber_clock.samples.push_back(section(base).inverse() * g);
  }
  res.endpoint_holonomy = start.inverse() * res.lifted.samples.back();
  return res;
}

GroupElement lift_endpoint(const PathHn& curve, const GroupElement& start,
                           double step) {
  RawLift raw = raw_lift(curve, start, step);
  return reproject(GroupElement(raw.samples.back(), curve.dim));
}

GroupElement holonomy(const PathHn& loop, const GroupElement& basefiber,
                      double step) {
  if (!loop.is_loop(tol().loop_closure))
    throw DomainError("holonomy: curve is not a closed loop");
  if ((project(basefiber).vec - loop.pts.front().vec).cwiseAbs().maxCoeff() >
      1e-8)
    throw DomainError("holonomy: basefiber not over loop(0)");
  GroupElement end = lift_endpoint(loop, basefiber, step);
  // Step control: halve until the endpoint is stable to 1e-9.
  for (int it = 0; it < 3; ++it) {
    step *= 0.5;
    GroupElement refined = lift_endpoint(loop, basefiber, step);
    const double delta = (refined.mat - end.mat).cwiseAbs().maxCoeff();
    end = refined;
    if (delta < 1e-9) break;
  }
  return basefiber.inverse() * end;
}

double rho_distance(const PathG& h, const PathG& g) {
  if (h.samples.size() != g.samples.size() || h.samples.size() < 3)
    throw DomainError("rho_distance: need matching sample counts (>= 3)");
  const int n = h.dim;
  const Mat S = minkowski_form(n);
  const std::size_t N = h.samples.size();
  const double dt = 1.0 / static_cast<double>(N - 1);
  auto body_vel = [&](const PathG& c, std::size_t i) {
    // Right-translated velocity c′c⁻¹ by centered/one-sided differences,
    // projected onto the algebra (kills the second-order symmetric drift).
    Mat diff;
    if (i == 0)
      diff = (c.samples[1].mat - c.samples[0].mat) / dt;
    else if (i + 1 == N)
      diff = (c.samples[N - 1].mat - c.samples[N - 2].mat) / dt;
    else
      diff = (c.samples[i + 1].mat - c.samples[i - 1].mat) / (2.0 * dt);
    Mat v = diff * c.samples[i].inverse().mat;
    return (0.5 * (v - S * v.transpose() * S)).eval();
  };
  double acc = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const Mat d = body_vel(h, i) - body_vel(g, i);
    const double nrm = std::sqrt(0.5 * (d.transpose() * d).trace());
    acc += (i == 0 || i + 1 == N) ? 0.5 * nrm : nrm;  // trapezoid rule
  }
  return acc * dt;
}

PathG section_curve(const PathHn& curve, int samples) {
  PathG out;
  out.dim = curve.dim;
  out.samples.reserve(samples);
  for (int i = 0; i < samples; ++i)
    out.samples.push_back(
        section(curve.at(static_cast<double>(i) / (samples - 1))));
  return out;
}

PathG fiber_clock_curve(const PathHn& curve, int samples, double step) {
  // Integrate (DE1) directly: a′a⁻¹ = −vert(h⁻¹h′) with h = s∘curve and
  // a(0) = I.  The inverse c = a⁻¹ obeys the left equation c′ = c·V with
  // V(t) = vert(h⁻¹h′), which the RKMK stepper handles; V is evaluated from
  // the section curve by centered differences.
  const int n = curve.dim;
  const Mat S = minkowski_form(n);
  const double eps = 1e-6;
  auto V = [&](double t) {
    const Mat h0 = section(curve.at(t)).mat;
    const Mat hp = section(curve.at(std::min(1.0, t + eps))).mat;
    const Mat hm = section(curve.at(std::max(0.0, t - eps))).mat;
    const double span = std::min(1.0, t + eps) - std::max(0.0, t - eps);
    Mat d = (S * h0.transpose() * S) * ((hp - hm) / span);
    d = 0.5 * (d - S * d.transpose() * S);  // project onto the algebra
    d.row(0).setZero();                     // vertical part
    d.col(0).setZero();
    return d;
  };
  auto A = [&](double t, const Mat&, const Mat&) { return V(t); };
  PathG out;
  out.dim = n;
  out.samples.reserve(samples);
  Mat c = Mat::Identity(n + 1, n + 1);
  out.samples.push_back(GroupElement::identity(n));
  const double dt = 1.0 / (samples - 1);
  const double L = std::max(1e-12, curve.length());
  const int sub = std::max(1, static_cast<int>(std::ceil(L * dt / step)));
  for (int i = 0; i + 1 < samples; ++i) {
    const double t0 = i * dt;
    const double h = dt / sub;
    for (int k = 0; k < sub; ++k) c = rkmk4_step(c, t0 + k * h, h, S, A);
    c = reproject(GroupElement(c, n)).mat;
    out.samples.push_back(GroupElement(c, n).inverse());  // a = c⁻¹
  }
  return out;
}

double k_distance(const GroupElement& k1, const GroupElement& k2) {
  return log_map(k1.inverse() * k2).norm();
}

PathHn perturb_path(const PathHn& h, double scale, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  PathHn out = h;
  const bool loop = h.is_loop(tol().loop_closure);
  // Keep the start fixed (ρ compares curves with equal start); perturb the
  // other breakpoints along random tangent directions.
  for (std::size_t i = 1; i < out.pts.size(); ++i) {
    if (loop && i + 1 == out.pts.size()) {
      out.pts[i] = out.pts[0];  // preserve closure exactly
      continue;
    }
    const HPoint& p = out.pts[i];
    Vec dir = Vec::Zero(p.dim + 1);
    for (int k = 1; k <= p.dim; ++k) dir(k) = gauss(rng);
    // Project to the tangent space at p and normalize.
    dir = dir + minkowski_dot(p.vec, dir) * p.vec;
    const double nn = std::sqrt(std::max(1e-300, minkowski_dot(dir, dir)));
    out.pts[i] = geodesic_flow(p, dir / nn, scale);
  }
  return out;
}

ProbeResult endpoint_continuity_probe(const PathHn& h,
                                      double perturbation_scale,
                                      unsigned seed) {
  if (perturbation_scale == 0.0) return ProbeResult{0.0, 0.0};
  const PathHn hp = perturb_path(h, perturbation_scale, seed);
  const int samples = 257;
  const double rho_in =
      rho_distance(section_curve(h, samples), section_curve(hp, samples));
  const PathG wh = fiber_clock_curve(h, samples);
  const PathG wg = fiber_clock_curve(hp, samples);
  const double dist_out =
      k_distance(wh.samples.back(), wg.samples.back());
  return ProbeResult{rho_in, dist_out};
}

}  // namespace holo
