// SPDX-License-Identifier: Apache-2.0
//
// Built-in disk embeddings D² → ℍⁿ with the basepoint (0,−1) mapped to ē,
// and a tabulated-grid loader (CSV rows "u,v,x₀,…,xₙ" over a regular (u,v)
// lattice, bilinearly interpolated and re-projected to the hyperboloid).
//
// All families place the disk center at c = (cosh r, sinh r, 0, …) so that
// the boundary point (0,−1) lands exactly on ē.
#pragma once

#include <string>

#include "holonomy/hyperbolic.hpp"

namespace holo {

// Geodesic disk of radius r inside the ℍ² slice spanned by the first two
// spatial coordinates: Φ(u,v) = exp_c(r·(u·E_a + v·E_b)) with E_b pointing
// away from ē.
DiskEmbedding geodesic_disk(int dim, double r);

// The geodesic disk conjugated by a fixed rotation of angle π/5 in the
// (2, axis) coordinate plane; requires dim ≥ 3 and 3 ≤ axis ≤ dim.  The
// image is still a totally geodesic disk, but its plane is not a coordinate
// slice.
DiskEmbedding tilted_geodesic_disk(int dim, double r, int axis);

// Geodesic disk with a normal perturbation vanishing on the boundary:
// exp_c(r·(u·E_a + v·E_b) + amplitude·Re((u+iv)^m)·(1−u²−v²)·E_d), E_d the
// unit tangent at c along spatial coordinate 3.  Requires dim ≥ 3.  The
// amplitude must stay small enough that the Jacobian keeps rank 2 (the
// area quadrature verifies this sample-wise).
DiskEmbedding bumped_disk(int dim, double r, double amplitude, int frequency);

// Loads a tabulated embedding: CSV rows "u,v,x0,...,xn" forming a regular
// lattice over [-1,1]²; queries bilinearly interpolate the four enclosing
// samples and re-project onto the hyperboloid.  Throws on ragged rows or a
// non-lattice sample set.
DiskEmbedding load_disk_csv(const std::string& path, int dim);

// Writes the lattice form of an embedding (for round-tripping and external
// tools): (2m+1)² rows over the uniform lattice of [-1,1]².
void write_disk_csv(const std::string& path, const DiskEmbedding& emb,
                    int half_steps);

}  // namespace holo
