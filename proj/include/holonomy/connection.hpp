// SPDX-License-Identifier: Apache-2.0
//
// The principal connection of K → G → ℍⁿ: vertical projection (connection
// form), the horizontal-lift ODE with a Munthe-Kaas 4th-order Lie-group
// integrator, holonomy of loops, the ρ distance on group-valued curves, and
// the continuity probe for the endpoint map.
#pragma once

#include <vector>

#include "holonomy/hyperbolic.hpp"

namespace holo {

// Piecewise geodesic in ℍⁿ through the listed breakpoints, parametrized at
// constant speed on [0,1].
struct PathHn {
  std::vector<HPoint> pts;
  int dim = 0;

  double length() const;
  bool is_loop(double tolerance) const;
  // Point at global constant-speed parameter t ∈ [0,1].
  HPoint at(double t) const;
};

// Uniformly sampled curve in G on [0,1] (sample i at t = i/(N−1)).
struct PathG {
  std::vector<GroupElement> samples;
  int dim = 0;
};

struct LiftResult {
  PathG lifted;                    // the horizontal lift h̃(t)
  PathG fiber_clock;               // a(t) = s(h(t))⁻¹·h̃(t) ∈ K
  GroupElement endpoint_holonomy;  // start⁻¹·h̃(1) (∈ K when the base loops)
  std::vector<double> times;       // sample times of `lifted`
};

// ω(g, v) for v given as the left-translated algebra value g⁻¹·(tangent):
// the vertical (𝔨) part of v.
AlgebraElement connection_form(const GroupElement& g, const AlgebraElement& v);

// Cartan section s : ℍⁿ → G, s(p) = exp(X_p) with X_p horizontal and
// exp(X_p)·ē = p.  Smooth and global; replaces the Iwasawa section.
GroupElement section(const HPoint& p);

// Body-frame horizontal element X ∈ 𝔨⊥ whose flow through g has base
// velocity w at π(g): π_*(g·X) = w.  w must be tangent at π(g).
AlgebraElement horizontal_at(const GroupElement& g, const Vec& w);

// Horizontal lift of a piecewise geodesic.  `start` must project to
// curve(0).  Integrates the left ODE g′ = g·X(g,t), X the horizontal
// element with π_*(gX) = ċ, by RKMK4 with the given arc-length step.
LiftResult horizontal_lift(const PathHn& curve, const GroupElement& start,
                           double step = 1e-3);

// Lift endpoint only (cheaper bookkeeping, same integrator).
GroupElement lift_endpoint(const PathHn& curve, const GroupElement& start,
                           double step = 1e-3);

// Holonomy of a loop lifted from `basefiber`: the k ∈ K with
// lift(1) = basefiber·k.  Loops must close to the loop_closure tolerance.
// The step is halved until the endpoint moves < 1e-9 (bounded retries).
GroupElement holonomy(const PathHn& loop, const GroupElement& basefiber,
                      double step = 1e-3);

// ρ(h,g) = ∫₀¹ ‖h′h⁻¹ − g′g⁻¹‖ dt on uniformly sampled group curves
// (centered differences inside, one-sided at the ends).
double rho_distance(const PathG& h, const PathG& g);

// Samples s∘curve at n uniform times (used to express base curves as group
// curves for ρ, following the text's abuse of notation).
PathG section_curve(const PathHn& curve, int samples);

// Fiber-clock curve w_h of a base curve: a(t) = s(h(t))⁻¹·h̃(t) with the
// lift started at s(h(0)).
PathG fiber_clock_curve(const PathHn& curve, int samples, double step = 1e-3);

// Bi-invariant distance on K: ‖log(k₁⁻¹k₂)‖ in the paper norm.
double k_distance(const GroupElement& k1, const GroupElement& k2);

// Deterministic perturbation probe for the endpoint map h ↦ w_h(1):
// returns (ρ(h, h_pert), d(w_h(1), w_{h_pert}(1))) at the given scale.
struct ProbeResult {
  double rho_in;
  double dist_out;
};
ProbeResult endpoint_continuity_probe(const PathHn& h,
                                      double perturbation_scale,
                                      unsigned seed = 7u);

// The perturbed curve itself (shared by the probe and the DE4 tests).
PathHn perturb_path(const PathHn& h, double scale, unsigned seed);

}  // namespace holo
