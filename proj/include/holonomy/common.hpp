// SPDX-License-Identifier: Apache-2.0
//
// Shared numeric configuration for the holonomy library: central tolerance
// record, a tiny thread-pool-free parallel_for, and small utilities used by
// every module.
#pragma once

#include <Eigen/Dense>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace holo {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Central tolerance record.  All modules read from here so that the
// numerical contract lives in exactly one place.
struct Tolerances {
  double group_membership = 1e-9;   // ‖gᵀSg − S‖∞ after operation chains
  double algebra_identity = 1e-12;  // exact-formula identities
  double point_equality = 1e-12;    // hyperboloid / planar point matching
  double loop_closure = 1e-9;       // loops must close this well; no snapping
  double lift_step = 1e-3;          // default integrator step (arc length)
};

inline const Tolerances& tol() {
  static const Tolerances t{};
  return t;
}

// Thread cap: HOLONOMY_LAB_THREADS bounds the parallelism of the
// embarrassingly parallel pieces (quadrature rows, per-triangle property
// checks).  Defaults to the hardware count, capped at 8.
inline unsigned thread_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  unsigned cap = hw == 0 ? 1u : (hw > 8u ? 8u : hw);
  if (const char* env = std::getenv("HOLONOMY_LAB_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) cap = static_cast<unsigned>(v);
  }
  return cap;
}

// Static block partition of [0, count) over at most thread_cap() threads.
inline void parallel_for(std::size_t count,
                         const std::function<void(std::size_t)>& body) {
  unsigned nthreads = thread_cap();
  if (nthreads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  if (nthreads > count) nthreads = static_cast<unsigned>(count);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = t; i < count; i += nthreads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace holo
