// SPDX-License-Identifier: Apache-2.0
//
// Ordered barycentric subdivision of the disk: addressed interior triangles
// T_{a₀…aₙ} and exterior triangles S^{b₀…b_k}_{c₀…c_m}, their start/end
// vertex roles, the total order, and the machine-checkable Properties 1–4.
//
// Geometry: T₀ is the equilateral triangle inscribed in the unit circle
// with basepoint at angle −π/2.  Each step barycentrically subdivides every
// triangle into six named children and grows one new ring of boundary
// triangles between the current polygon and the circle (new vertices are
// placed on the circle at arc midpoints, so the step-n region is the
// inscribed 3·2ⁿ-gon).
//
// The six children of a triangle L are laid out from L's "initial side"
// (the side [start, third-vertex] when start ≠ end; otherwise the side
// selected by sweeping the interior angle at the start vertex in L's stored
// rotation sense).  Children 1 and 2 cover the initial side; positions wind
// around the barycenter; when L's trailing digit is 1 or 6 the positional
// names are (1,2,3,6,5,4), otherwise (1,2,3,4,5,6).  The rotation sense of
// a child flips exactly when its name is 4 or 5 and the parent digit is 1
// or 6.  Exterior triangles with a lower word subdivide by the same rule
// (the affine pushforward through start/end/third matching); boundary
// exterior triangles additionally spawn two children against the circle,
// whose start/end follow the odd/even parity of the superscript length.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "holonomy/common.hpp"

namespace holo {

using Vec2 = Eigen::Vector2d;

struct TriangleAddress {
  bool interior = true;
  std::vector<int> upper;  // exterior only: b₀ ∈ 1..3, b₁…b_k ∈ 1..2
  std::vector<int> lower;  // a₀ = 0, a₁…aₙ ∈ 1..6 (interior) or c-word

  int step() const;
  std::string to_string() const;  // e.g. "T_012" or "S^11_0" / "S^11_023"
  bool operator==(const TriangleAddress& o) const;
};

// Strict total order of §A.3: interior < exterior; interiors by dictionary
// order; exteriors first by superscript length, then by superscript word
// (reversed dictionary when k is odd), then by subscript word.
// Returns <0, 0, >0.  Throws on mismatched steps.
int order_compare(const TriangleAddress& L, const TriangleAddress& M);

struct PlanarTriangle {
  std::array<Vec2, 3> v;
  Vec2 start, end;
  int orientation = +1;
};

// One ordered element of a subdivision level, with the internal state the
// recursion needs (digit class and rotation sense, boundary-arc data).
struct LevelEntry {
  TriangleAddress addr;
  PlanarTriangle tri;
  bool digit16 = false;  // trailing digit ∈ {1,6} (or identified with it)
  bool swap56 = false;   // boundary triangles whose children match the
                         // reference subdivision with names 5 and 6 swapped
  int sigma = +1;        // rotation sense for the angle rule
  bool has_boundary_side = false;
  double theta_from = 0.0, theta_to = 0.0;  // traveled arc of that side
};

struct SubdivisionLevel {
  int step = 0;
  int orientation = +1;
  std::vector<LevelEntry> entries;  // sorted by order_compare

  const LevelEntry& at(const TriangleAddress& a) const;
};

// Basepoint of the disk, shared with DiskEmbedding: (0, −1).
Vec2 disk_basepoint();

// Build the full level at step n (0 ≤ n ≤ 4).
SubdivisionLevel build_level(int n, int orientation = +1);

// The six barycentric children of an entry, in name order 1..6 (no
// boundary spawning).  Public because verify_properties and the curve
// system reuse the rule.
std::array<LevelEntry, 6> barycentric_children(const LevelEntry& e);

// Property report for a built level (P1–P4 of the text plus the closure of
// the Property-4 chain at the basepoint).
struct PropertyReport {
  bool p1 = true, p2 = true, p3 = true, p4 = true;
  std::vector<std::string> violations;
  bool pass() const { return p1 && p2 && p3 && p4; }
};
PropertyReport verify_properties(const SubdivisionLevel& level);

}  // namespace holo
