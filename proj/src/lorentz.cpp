// SPDX-License-Identifier: Apache-2.0

#include "holonomy/lorentz.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace holo {

namespace {

constexpr double kPrincipalAngleBound = M_PI - 0.1;

void check_dims(int a, int b, const char* op) {
  if (a != b) throw DimensionError(std::string(op) + ": dimension mismatch");
}

}  // namespace

Mat minkowski_form(int n) {
  Mat S = Mat::Identity(n + 1, n + 1);
  S(0, 0) = -1.0;
  return S;
}

AlgebraElement::AlgebraElement(Mat m, int n) : mat(std::move(m)), dim(n) {
  if (mat.rows() != n + 1 || mat.cols() != n + 1)
    throw DimensionError("AlgebraElement: matrix size must be (n+1)x(n+1)");
  const Mat S = minkowski_form(n);
  const double r = (mat.transpose() * S + S * mat).cwiseAbs().maxCoeff();
  // Membership scales with the size of the element itself.
  const double scale = std::max(1.0, mat.cwiseAbs().maxCoeff());
  if (r > 1e-9 * scale)
    throw DomainError("AlgebraElement: X'S + SX = 0 violated, residual " +
                      std::to_string(r));
}

double AlgebraElement::norm() const {
  return std::sqrt(0.5 * (mat.transpose() * mat).trace());
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  check_dims(dim, o.dim, "algebra +");
  return AlgebraElement(mat + o.mat, dim);
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  check_dims(dim, o.dim, "algebra -");
  return AlgebraElement(mat - o.mat, dim);
}

AlgebraElement AlgebraElement::operator*(double s) const {
  return AlgebraElement(mat * s, dim);
}

GroupElement::GroupElement(Mat m, int n) : mat(std::move(m)), dim(n) {
  if (mat.rows() != n + 1 || mat.cols() != n + 1)
    throw DimensionError("GroupElement: matrix size must be (n+1)x(n+1)");
  if (membership_residual() > 1e-6)
    throw DomainError("GroupElement: g'Sg = S violated");
  if (mat(0, 0) < 1.0 - 1e-9)
    throw DomainError("GroupElement: not in the identity component");
}

GroupElement GroupElement::identity(int n) {
  return GroupElement(Mat::Identity(n + 1, n + 1), n);
}

GroupElement GroupElement::inverse() const {
  const Mat S = minkowski_form(dim);
  return GroupElement(S * mat.transpose() * S, dim);
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  check_dims(dim, o.dim, "group *");
  return GroupElement(mat * o.mat, dim);
}

double GroupElement::membership_residual() const {
  const Mat S = minkowski_form(dim);
  return (mat.transpose() * S * mat - S).cwiseAbs().maxCoeff();
}

AlgebraElement basis_boost(int n, int i) {
  if (i < 1 || i > n) throw DimensionError("basis_boost: index out of range");
  Mat m = Mat::Zero(n + 1, n + 1);
  m(0, i) = 1.0;
  m(i, 0) = 1.0;
  return AlgebraElement(m, n);
}

AlgebraElement basis_rotation(int n, int i, int j) {
  if (i < 1 || j <= i || j > n)
    throw DimensionError("basis_rotation: indices out of range");
  Mat m = Mat::Zero(n + 1, n + 1);
  m(i, j) = -1.0;
  m(j, i) = 1.0;
  return AlgebraElement(m, n);
}

AlgebraElement E1() { return basis_boost(2, 2); }
AlgebraElement E2() { return basis_boost(2, 1); }
AlgebraElement E3() { return basis_rotation(2, 1, 2); }

GroupElement Psi(double t) { return exp_map(E3() * t); }

std::vector<AlgebraElement> frame_basis(int n) {
  std::vector<AlgebraElement> out;
  for (int i = 1; i <= n; ++i) out.push_back(basis_boost(n, i));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out.push_back(basis_rotation(n, i, j));
  return out;
}

double algebra_inner(const AlgebraElement& a, const AlgebraElement& b) {
  check_dims(a.dim, b.dim, "algebra_inner");
  return 0.5 * (a.mat.transpose() * b.mat).trace();
}

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) {
  check_dims(a.dim, b.dim, "bracket");
  return AlgebraElement(a.mat * b.mat - b.mat * a.mat, a.dim);
}

GroupElement exp_map(const AlgebraElement& a) {
  // Eigen's exp is scaling-and-squaring with Padé approximants.
  return GroupElement(a.mat.exp(), a.dim);
}

AlgebraElement log_map(const GroupElement& g) {
  // Principal-branch guard: eigenvalues of X = log g are {0, ±iθ_k, ±λ};
  // the rotation angles θ_k are the imaginary parts of the eigenvalues of g
  // written as e^{±iθ}.  Reject when any angle reaches π − 0.1.
  Eigen::EigenSolver<Mat> es(g.mat);
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const std::complex<double> ev = es.eigenvalues()[i];
    const double angle = std::abs(std::arg(ev));
    if (angle >= kPrincipalAngleBound)
      throw DomainError("log_map: outside principal branch (rotation angle " +
                        std::to_string(angle) + ")");
  }
  Mat L = g.mat.log();
  // Kill the numerical symmetric drift so the result is an exact algebra
  // element: project onto {X : XᵀS + SX = 0}.
  const Mat S = minkowski_form(g.dim);
  L = 0.5 * (L - S * L.transpose() * S);
  return AlgebraElement(L, g.dim);
}

Split split_vertical_horizontal(const AlgebraElement& a) {
  Mat v = a.mat;
  v.row(0).setZero();
  v.col(0).setZero();
  Mat h = a.mat - v;
  return Split{AlgebraElement(v, a.dim), AlgebraElement(h, a.dim)};
}

AlgebraElement adjoint(const GroupElement& k, const AlgebraElement& a) {
  check_dims(k.dim, a.dim, "adjoint");
  return AlgebraElement(k.mat * a.mat * k.inverse().mat, a.dim);
}

std::vector<AlgebraElement> so12_subalgebra(const AlgebraElement& x,
                                            const AlgebraElement& y) {
  check_dims(x.dim, y.dim, "so12_subalgebra");
  const auto sx = split_vertical_horizontal(x);
  const auto sy = split_vertical_horizontal(y);
  if (sx.vertical.norm() > 1e-10 || sy.vertical.norm() > 1e-10)
    throw DomainError("so12_subalgebra: inputs must be horizontal");
  const double nx = x.norm();
  if (nx < 1e-12) throw DomainError("so12_subalgebra: zero input");
  AlgebraElement e1 = x * (1.0 / nx);
  AlgebraElement y_perp = y - e1 * algebra_inner(e1, y);
  const double ny = y_perp.norm();
  if (ny < 1e-10 * std::max(1.0, y.norm()))
    throw DomainError("so12_subalgebra: inputs are linearly dependent");
  AlgebraElement e2 = y_perp * (1.0 / ny);
  AlgebraElement z = bracket(e1, e2);
  const double nz = z.norm();
  if (nz < 1e-12) throw DomainError("so12_subalgebra: degenerate bracket");
  AlgebraElement e3 = z * (1.0 / nz);
  std::vector<AlgebraElement> basis{e1, e2, e3};
  // Closure check: every pairwise bracket must lie in the span.
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      AlgebraElement b = bracket(basis[i], basis[j]);
      Mat residual = b.mat;
      for (const auto& e : basis)
        residual -= algebra_inner(AlgebraElement(b.mat, b.dim), e) * e.mat;
      if (residual.cwiseAbs().maxCoeff() > 1e-9)
        throw DomainError("so12_subalgebra: span not closed under bracket");
    }
  return basis;
}

GroupElement reproject(const GroupElement& g) {
  // Newton iteration on gᵀSg = S: with M = S gᵀ S g (≈ I),
  // g ← g·(3I − M)/2 halves the defect quadratically.
  const int n = g.dim;
  const Mat S = minkowski_form(n);
  Mat m = g.mat;
  for (int it = 0; it < 4; ++it) {
    const Mat M = S * m.transpose() * S * m;
    const double r = (M - Mat::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff();
    if (r < 1e-15) break;
    m = m * (1.5 * Mat::Identity(n + 1, n + 1) - 0.5 * M);
  }
  return GroupElement(m, n);
}

void GroupProduct::multiply_right(const GroupElement& g) {
  acc_ = acc_ * g;
  if (++count_ > 64) {
    acc_ = reproject(acc_);
    count_ = 0;
  }
}

}  // namespace holo
