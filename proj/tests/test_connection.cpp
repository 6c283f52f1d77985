// SPDX-License-Identifier: Apache-2.0
//
// The principal connection: the Cartan section, horizontal lifts against the
// exp-geodesic closed form, the structural facts about the splitting, the
// triangle-holonomy closed form in the ℍ² slice, and the stability of the
// endpoint map in the ρ distance.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "holonomy/connection.hpp"

using namespace holo;

namespace {

HPoint random_point(std::mt19937_64& rng, int n, double max_dist) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec dir = Vec::Zero(n + 1);
  for (int i = 1; i <= n; ++i) dir(i) = u(rng);
  if (dir.tail(n).norm() < 1e-3) dir(1) = 1.0;
  dir /= dir.tail(n).norm();
  std::uniform_real_distribution<double> d(0.05, max_dist);
  return geodesic_flow(e_bar(n), dir, d(rng));
}

AlgebraElement random_horizontal(std::mt19937_64& rng, int n, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  Mat m = Mat::Zero(n + 1, n + 1);
  for (int i = 1; i <= n; ++i) m(0, i) = m(i, 0) = g(rng);
  return AlgebraElement(m, n);
}

AlgebraElement random_algebra(std::mt19937_64& rng, int n, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  Mat m = Mat::Zero(n + 1, n + 1);
  for (int i = 1; i <= n; ++i) {
    m(0, i) = m(i, 0) = g(rng);
    for (int j = i + 1; j <= n; ++j) {
      const double r = g(rng);
      m(i, j) = -r;
      m(j, i) = r;
    }
  }
  return AlgebraElement(m, n);
}

// Random piecewise geodesic with `breaks` interior breakpoints near ē.
PathHn random_path(std::mt19937_64& rng, int n, int breaks, bool close) {
  PathHn p;
  p.dim = n;
  p.pts.push_back(e_bar(n));
  for (int i = 0; i < breaks; ++i) p.pts.push_back(random_point(rng, n, 1.2));
  if (close)
    p.pts.push_back(e_bar(n));
  else
    p.pts.push_back(random_point(rng, n, 1.2));
  return p;
}

}  // namespace

TEST_CASE("Cartan section: global, smooth at ē, horizontal logarithm") {
  std::mt19937_64 rng(61);
  for (int n = 2; n <= 4; ++n) {
    CHECK((section(e_bar(n)).mat - Mat::Identity(n + 1, n + 1))
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    for (int rep = 0; rep < 20; ++rep) {
      const HPoint p = random_point(rng, n, 2.5);
      const GroupElement s = section(p);
      CHECK((project(s).vec - p.vec).cwiseAbs().maxCoeff() < 1e-10);
      // log s(p) is horizontal: the section is the exp of a boost.
      const AlgebraElement x = log_map(s);
      CHECK(split_vertical_horizontal(x).vertical.mat.cwiseAbs().maxCoeff() <
            1e-10);
    }
  }
}

TEST_CASE("connection form extracts the vertical part") {
  std::mt19937_64 rng(62);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + rep % 3;
    const GroupElement g = exp_map(random_algebra(rng, n, 0.7));
    const AlgebraElement v = random_algebra(rng, n, 1.0);
    const AlgebraElement w = connection_form(g, v);
    CHECK((w.mat - split_vertical_horizontal(v).vertical.mat)
              .cwiseAbs()
              .maxCoeff() < 1e-14);
  }
}

TEST_CASE("horizontal_at solves the base-velocity equation") {
  std::mt19937_64 rng(63);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 2 + rep % 3;
    const GroupElement g = exp_map(random_algebra(rng, n, 0.6));
    const HPoint p = project(g);
    const HPoint q = random_point(rng, n, 1.5);
    if (distance(p, q) < 1e-3) continue;
    const Vec w = tangent_toward(p, q);
    const AlgebraElement X = horizontal_at(g, w);
    CHECK(split_vertical_horizontal(X).vertical.mat.cwiseAbs().maxCoeff() <
          1e-12);
    // π_*(g·X) = (g·X)·ē must equal w.
    CHECK((g.mat * X.mat.col(0) - w).cwiseAbs().maxCoeff() < 1e-10);
    // Non-tangent input is rejected.
    CHECK_THROWS_AS(horizontal_at(g, Vec(p.vec)), DomainError);
  }
}

TEST_CASE("lift of an exp-geodesic reproduces exp(tX) (100 cases, 1e-8)") {
  std::mt19937_64 rng(64);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + rep % 3;
    AlgebraElement X = random_horizontal(rng, n, 0.6);
    if (X.norm() < 1e-3) X = basis_boost(n, 1);
    PathHn base;
    base.dim = n;
    base.pts = {e_bar(n), project(exp_map(X))};
    const GroupElement end =
        lift_endpoint(base, GroupElement::identity(n), 1e-3);
    CHECK((end.mat - exp_map(X).mat).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("lift structure: equivariance and concatenation") {
  std::mt19937_64 rng(65);
  for (int rep = 0; rep < 8; ++rep) {
    const int n = 2 + rep % 2;
    const PathHn h = random_path(rng, n, 3, false);
    const GroupElement s0 = section(h.pts.front());
    // Right-translating the start by a constant k ∈ K right-translates the
    // whole lift: lift(g·k) = lift(g)·k.
    const GroupElement k =
        exp_map(split_vertical_horizontal(random_algebra(rng, n, 0.8)).vertical);
    const GroupElement e1 = lift_endpoint(h, s0, 1e-3);
    const GroupElement e2 = lift_endpoint(h, s0 * k, 1e-3);
    CHECK((e2.mat - (e1 * k).mat).cwiseAbs().maxCoeff() < 1e-9);

    // Lifting a split path in two legs matches the one-shot lift.
    PathHn first, second;
    first.dim = second.dim = n;
    first.pts = {h.pts[0], h.pts[1], h.pts[2]};
    second.pts = {h.pts[2], h.pts[3], h.pts[4]};
    const GroupElement mid = lift_endpoint(first, s0, 1e-3);
    const GroupElement two = lift_endpoint(second, mid, 1e-3);
    CHECK((two.mat - e1.mat).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("structural facts: vertical brackets, Ad_k isometry (100 cases)") {
  std::mt19937_64 rng(66);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + rep % 3;
    const AlgebraElement x = random_horizontal(rng, n, 1.0);
    const AlgebraElement y = random_horizontal(rng, n, 1.0);
    CHECK(split_vertical_horizontal(bracket(x, y))
              .horizontal.mat.cwiseAbs()
              .maxCoeff() < 1e-12);
    const GroupElement k =
        exp_map(split_vertical_horizontal(random_algebra(rng, n, 0.9)).vertical);
    const AlgebraElement a = random_algebra(rng, n, 1.0);
    const AlgebraElement b = random_algebra(rng, n, 1.0);
    CHECK(std::abs(algebra_inner(adjoint(k, a), adjoint(k, b)) -
                   algebra_inner(a, b)) < 1e-12);
  }
}

TEST_CASE("triangle holonomy matches Ψ(δ·area) in ℍ² (50 random, 1e-6)") {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(67);
  int done = 0;
  while (done < 50) {
    const HPoint a = random_point(rng, 2, 2.0);
    const HPoint b = random_point(rng, 2, 2.0);
    const HPoint c = random_point(rng, 2, 2.0);
    if (is_degenerate(a, b, c)) continue;
    const auto tri = totally_geodesic_triangle(a, b, c);
    const double area = triangle_area(tri);
    if (area < 5e-3) continue;  // slivers exercise nothing here
    // Sign convention: with counterclockwise traversals carrying positive
    // turning angles, the holonomy of the left-ODE lift is the rotation by
    // −sign(α+β+γ)·area (the fiber turns against the base loop).
    const double delta = vertex_angles(tri).alpha > 0 ? -1.0 : 1.0;
    PathHn loop;
    loop.dim = 2;
    loop.pts = {a, b, c, a};
    const GroupElement k = holonomy(loop, section(a), 1e-3);
    // K = SO(2) is abelian, so the conjugation ambiguity of the basefiber
    // drops out and the closed form holds verbatim.
    CHECK((k.mat - Psi(delta * area).mat).cwiseAbs().maxCoeff() < 1e-6);
    ++done;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  CHECK(secs < 10.0);
}

TEST_CASE("ρ is a pseudometric; fiber clock starts at the identity") {
  std::mt19937_64 rng(68);
  const PathHn a = random_path(rng, 2, 4, false);
  const PathHn b = random_path(rng, 2, 4, false);
  const PathHn c = random_path(rng, 2, 4, false);
  const int N = 129;
  const PathG A = section_curve(a, N), B = section_curve(b, N),
              C = section_curve(c, N);
  CHECK(rho_distance(A, A) < 1e-12);
  CHECK(rho_distance(A, B) == doctest::Approx(rho_distance(B, A)).epsilon(1e-10));
  CHECK(rho_distance(A, C) <= rho_distance(A, B) + rho_distance(B, C) + 1e-9);
  CHECK(rho_distance(A, B) > 0.0);

  const PathG w = fiber_clock_curve(a, N);
  CHECK((w.samples.front().mat - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() <
        1e-12);
  // Every sample stays in K (fixes ē).
  for (const auto& k : w.samples)
    CHECK((k.mat.col(0) - Vec::Unit(3, 0)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("endpoint stability: ρ(w_h, w_g) ≤ ρ(h, g) + 1e-9 (30 pairs)") {
  std::mt19937_64 rng(69);
  const int N = 257;
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 2 + rep % 2;
    const PathHn h = random_path(rng, n, 4, rep % 3 == 0);
    const PathHn g = perturb_path(h, 0.02 + 0.002 * (rep % 5), 100u + rep);
    const double in =
        rho_distance(section_curve(h, N), section_curve(g, N));
    const double out =
        rho_distance(fiber_clock_curve(h, N), fiber_clock_curve(g, N));
    CHECK(out <= in + 1e-9);
  }
}

TEST_CASE("endpoint continuity probe: linear shrinking over 4 scales") {
  std::mt19937_64 rng(70);
  const PathHn h = random_path(rng, 2, 5, true);
  double prev_out = -1.0, prev_in = -1.0;
  for (double scale : {0.08, 0.04, 0.02, 0.01}) {
    const ProbeResult pr = endpoint_continuity_probe(h, scale, 7u);
    CHECK(pr.rho_in > 0.0);
    if (prev_out > 0.0) {
      // Halving the input halves the output up to a modest constant.
      CHECK(pr.dist_out < 0.75 * prev_out);
      CHECK(pr.rho_in < 0.75 * prev_in);
    }
    prev_out = pr.dist_out;
    prev_in = pr.rho_in;
  }
}

TEST_CASE("validation: bad starts, open loops, mismatched samples") {
  std::mt19937_64 rng(71);
  const PathHn open = random_path(rng, 2, 2, false);
  CHECK_THROWS_AS(holonomy(open, section(open.pts.front())), DomainError);
  const PathHn loop = random_path(rng, 2, 3, true);
  CHECK_THROWS_AS(holonomy(loop, section(loop.pts[1])), DomainError);
  CHECK_THROWS_AS(
      horizontal_lift(loop, section(random_point(rng, 2, 1.0)), 1e-3),
      DomainError);
  CHECK_THROWS_AS(rho_distance(section_curve(loop, 65), section_curve(loop, 33)),
                  DomainError);
}
