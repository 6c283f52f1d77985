// SPDX-License-Identifier: Apache-2.0
//
// Lie-theory layer: basis conventions, the inner product, exponential and
// logarithm against an independent Taylor-series oracle, the vertical/
// horizontal splitting, and drift control of long products.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "holonomy/lorentz.hpp"

using namespace holo;

namespace {

// Independent oracle: plain Taylor series with argument halving, written
// without any library exp/log so the production path is cross-checked.
Mat taylor_exp(Mat a) {
  int halvings = 0;
  while (a.cwiseAbs().maxCoeff() > 0.25) {
    a *= 0.5;
    ++halvings;
  }
  Mat term = Mat::Identity(a.rows(), a.cols());
  Mat sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < halvings; ++i) sum = sum * sum;
  return sum;
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

AlgebraElement random_horizontal(std::mt19937_64& rng, int n, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  Mat m = Mat::Zero(n + 1, n + 1);
  for (int i = 1; i <= n; ++i) m(0, i) = m(i, 0) = g(rng);
  return AlgebraElement(m, n);
}

}  // namespace

TEST_CASE("Minkowski form and basis conventions") {
  for (int n = 2; n <= 4; ++n) {
    const Mat S = minkowski_form(n);
    CHECK(S(0, 0) == -1.0);
    for (int i = 1; i <= n; ++i) CHECK(S(i, i) == 1.0);
    // Basis elements satisfy the defining relation and are unit norm.
    for (const auto& b : frame_basis(n)) {
      CHECK((b.mat.transpose() * S + S * b.mat).cwiseAbs().maxCoeff() ==
            doctest::Approx(0.0).epsilon(1e-14));
      CHECK(b.norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
    // Orthonormality under ⟨a,b⟩ = ½tr(aᵀb).
    const auto basis = frame_basis(n);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j)
        CHECK(algebra_inner(basis[i], basis[j]) ==
              doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-13));
    CHECK(static_cast<int>(basis.size()) == n * (n + 1) / 2);
  }
}

TEST_CASE("n = 2 generators: E3 = [E1, E2] and the rotation subgroup") {
  CHECK((bracket(E1(), E2()).mat - E3().mat).cwiseAbs().maxCoeff() < 1e-15);
  for (double t : {0.3, 1.2, -0.7}) {
    const GroupElement r = Psi(t);
    // Independent closed form: rotation of the spatial 2-plane.
    CHECK(r.mat(0, 0) == doctest::Approx(1.0));
    CHECK(r.mat(1, 1) == doctest::Approx(std::cos(t)).epsilon(1e-12));
    CHECK(r.mat(2, 1) == doctest::Approx(std::sin(t)).epsilon(1e-12));
    CHECK(r.mat(1, 2) == doctest::Approx(-std::sin(t)).epsilon(1e-12));
  }
  // Ψ is a one-parameter subgroup.
  CHECK((Psi(0.4).mat * Psi(0.5).mat - Psi(0.9).mat).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("exp against the Taylor oracle; log inverts exp") {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 4; ++n)
    for (int rep = 0; rep < 40; ++rep) {
      const AlgebraElement a = random_algebra(rng, n, 0.4);
      const GroupElement g = exp_map(a);
      CHECK((g.mat - taylor_exp(a.mat)).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(g.membership_residual() < 1e-12);
      const AlgebraElement back = log_map(g);
      CHECK((back.mat - a.mat).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("group inverse is S gᵀ S") {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    const GroupElement g = exp_map(random_algebra(rng, 3, 0.6));
    const Mat id = g.mat * g.inverse().mat;
    CHECK((id - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("splitting is orthogonal and reconstructs") {
  std::mt19937_64 rng(13);
  for (int n = 2; n <= 4; ++n)
    for (int rep = 0; rep < 20; ++rep) {
      const AlgebraElement a = random_algebra(rng, n, 1.0);
      const Split s = split_vertical_horizontal(a);
      CHECK((s.vertical.mat + s.horizontal.mat - a.mat).cwiseAbs().maxCoeff() <
            1e-15);
      CHECK(algebra_inner(s.vertical, s.horizontal) ==
            doctest::Approx(0.0).epsilon(1e-14));
      // Vertical = fixed by the splitting; horizontal has no rotation block.
      CHECK(s.vertical.mat.row(0).cwiseAbs().maxCoeff() == 0.0);
      CHECK(s.horizontal.mat.bottomRightCorner(n, n).cwiseAbs().maxCoeff() ==
            0.0);
    }
}

TEST_CASE("horizontal brackets are vertical; so(1,2) triples close") {
  std::mt19937_64 rng(14);
  for (int n = 2; n <= 4; ++n)
    for (int rep = 0; rep < 20; ++rep) {
      const AlgebraElement x = random_horizontal(rng, n, 1.0);
      const AlgebraElement y = random_horizontal(rng, n, 1.0);
      const AlgebraElement b = bracket(x, y);
      CHECK(split_vertical_horizontal(b).horizontal.mat.cwiseAbs().maxCoeff() <
            1e-12);
      if (b.norm() > 1e-6) {
        const auto triple = so12_subalgebra(x, y);
        CHECK(triple.size() == 3);
        for (const auto& t : triple)
          CHECK(t.norm() == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
}

TEST_CASE("Ad_k is an inner-product isometry preserving the splitting") {
  std::mt19937_64 rng(15);
  for (int n = 2; n <= 4; ++n)
    for (int rep = 0; rep < 20; ++rep) {
      // Random k ∈ K: exponential of a vertical element.
      AlgebraElement v = random_algebra(rng, n, 0.8);
      v = split_vertical_horizontal(v).vertical;
      const GroupElement k = exp_map(v);
      const AlgebraElement a = random_algebra(rng, n, 1.0);
      const AlgebraElement b = random_algebra(rng, n, 1.0);
      CHECK(algebra_inner(adjoint(k, a), adjoint(k, b)) ==
            doctest::Approx(algebra_inner(a, b)).epsilon(1e-12));
      const AlgebraElement h = split_vertical_horizontal(a).horizontal;
      CHECK(split_vertical_horizontal(adjoint(k, h))
                .vertical.mat.cwiseAbs()
                .maxCoeff() < 1e-12);
    }
}

TEST_CASE("reproject restores group membership; long products stay clean") {
  std::mt19937_64 rng(16);
  GroupElement g = exp_map(random_algebra(rng, 2, 0.5));
  Mat dirty = g.mat;
  dirty(1, 2) += 1e-8;
  const GroupElement fixed = reproject(GroupElement(dirty, 2));
  CHECK(fixed.membership_residual() < 1e-13);

  // Random walk of 5000 small factors stays near the identity (diffusive
  // displacement ≈ 0.7) while accumulating enough roundoff to exercise the
  // periodic re-projection.
  GroupProduct prod(GroupElement::identity(2));
  for (int i = 0; i < 5000; ++i)
    prod.multiply_right(exp_map(random_algebra(rng, 2, 0.01)));
  CHECK(prod.value().membership_residual() < 1e-10);
}

TEST_CASE("validation errors") {
  Mat bad = Mat::Identity(3, 3);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(GroupElement(bad, 2), DomainError);
  Mat notskew = Mat::Zero(3, 3);
  notskew(1, 2) = 1.0;  // missing the compensating entry
  CHECK_THROWS_AS(AlgebraElement(notskew, 2), DomainError);
  // log beyond the principal branch.
  CHECK_THROWS_AS(log_map(Psi(3.10)), DomainError);
  CHECK_NOTHROW(log_map(Psi(2.9)));
}
