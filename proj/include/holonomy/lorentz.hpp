// SPDX-License-Identifier: Apache-2.0
//
// Lie theory for the Lorentz group G = SO₀(1,n), its maximal compact
// K = SO(n) (embedded as block-diag(1, B)), and the algebra 𝔤 = 𝔰𝔬(1,n)
// with the vertical/horizontal splitting 𝔨 ⊕ 𝔨⊥.
//
// Conventions:
//   S = diag(−1, 1, …, 1)                 (Minkowski form)
//   𝔤 = {X : XᵀS + SX = 0}
//   ⟨A,B⟩ = ½ trace(AᵀB)                  (inner product on 𝔤)
//   E_{0i}: unit boost, entries +1 at (0,i) and (i,0)
//   E_{ij} (0<i<j): unit rotation, entries −1 at (i,j), +1 at (j,i)
// so that for n = 2, E₁ = E_{02}, E₂ = E_{01}, E₃ = [E₁,E₂] = E_{12} and
// Ψ(t) = exp(t·E₃) is the rotation by t fixing the time axis.
#pragma once

#include <vector>

#include "holonomy/common.hpp"

namespace holo {

// Minkowski form S = diag(−1, 1, …, 1) of size (n+1)×(n+1).
Mat minkowski_form(int n);

struct AlgebraElement {
  Mat mat;  // (n+1)×(n+1), satisfies matᵀS + S·mat = 0
  int dim;  // ambient n

  AlgebraElement() : dim(0) {}
  AlgebraElement(Mat m, int n);  // validates membership

  double norm() const;
  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(double s) const;
};

struct GroupElement {
  Mat mat;  // (n+1)×(n+1) in SO₀(1,n)
  int dim;

  GroupElement() : dim(0) {}
  GroupElement(Mat m, int n);  // validates membership

  static GroupElement identity(int n);
  GroupElement inverse() const;  // S gᵀ S, exact for group elements
  GroupElement operator*(const GroupElement& o) const;

  // Largest residual of the defining relation gᵀSg = S.
  double membership_residual() const;
};

// ----- basis ---------------------------------------------------------------

// Unit boost generator E_{0i}, 1 ≤ i ≤ n.
AlgebraElement basis_boost(int n, int i);
// Unit rotation generator E_{ij}, 1 ≤ i < j ≤ n.
AlgebraElement basis_rotation(int n, int i, int j);

// The n = 2 triple of the text: E₁ = E_{02}, E₂ = E_{01}, E₃ = E_{12}.
AlgebraElement E1();
AlgebraElement E2();
AlgebraElement E3();

// Rotation Ψ(t) = exp(t·E₃) ∈ K for n = 2.
GroupElement Psi(double t);

// Ordered orthonormal basis of 𝔤: boosts E_{01..0n} then rotations E_{ij}.
std::vector<AlgebraElement> frame_basis(int n);

// ----- operations ----------------------------------------------------------

// ⟨a,b⟩ = ½ trace(aᵀb); positive definite on 𝔰𝔬(1,n).
double algebra_inner(const AlgebraElement& a, const AlgebraElement& b);

// [a,b] = ab − ba.  Horizontal × horizontal lands in 𝔨.
AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b);

// Matrix exponential (scaling-and-squaring) and principal logarithm.
// log_map throws DomainError outside the principal branch (rotation angles
// must stay below π − 0.1).
GroupElement exp_map(const AlgebraElement& a);
AlgebraElement log_map(const GroupElement& g);

// Splitting 𝔤 = 𝔨 ⊕ 𝔨⊥: vertical = lower-right block (𝔰𝔬(n)),
// horizontal = first row/column (boost part).  Orthogonal, sum reconstructs.
struct Split {
  AlgebraElement vertical;
  AlgebraElement horizontal;
};
Split split_vertical_horizontal(const AlgebraElement& a);

// Ad_k(a) = k a k⁻¹.  For k ∈ K this is an isometry of ⟨·,·⟩ preserving the
// splitting.
AlgebraElement adjoint(const GroupElement& k, const AlgebraElement& a);

// Orthonormalized basis {X̂, Ŷ, [X̂,Ŷ]/‖·‖} of the 𝔰𝔬(1,2) subalgebra
// spanned by two independent horizontal elements; verifies
// bracket closure.  Throws on dependent inputs.
std::vector<AlgebraElement> so12_subalgebra(const AlgebraElement& x,
                                            const AlgebraElement& y);

// Newton-type re-projection onto gᵀSg = S, used to control drift after long
// product chains (> 64 factors).
GroupElement reproject(const GroupElement& g);

// Accumulating product with automatic drift re-projection.
class GroupProduct {
 public:
  explicit GroupProduct(GroupElement g) : acc_(std::move(g)) {}
  void multiply_right(const GroupElement& g);
  const GroupElement& value() const { return acc_; }

 private:
  GroupElement acc_;
  int count_ = 0;
};

}  // namespace holo
