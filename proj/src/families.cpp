// SPDX-License-Identifier: Apache-2.0

#include "holonomy/families.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <vector>

namespace holo {

namespace {

// Disk center at distance r from ē along the first spatial axis, with the
// orthonormal tangent frame used by every family:
//   E_b points away from ē (so (0,−1) flows back onto ē exactly),
//   E_a spans the second spatial axis,
//   E_d (dim ≥ 3) spans the third spatial axis (normal to the slice).
struct Frame {
  HPoint c;
  Vec ea, eb, ed;
};

Frame make_frame(int dim, double r) {
  if (dim < 2) throw DimensionError("disk family: dimension must be >= 2");
  if (!(r > 0.0)) throw DomainError("disk family: radius must be positive");
  Vec cv = Vec::Zero(dim + 1);
  cv(0) = std::cosh(r);
  cv(1) = std::sinh(r);
  Frame f;
  f.c = HPoint(cv, dim);
  f.eb = Vec::Zero(dim + 1);
  f.eb(0) = std::sinh(r);
  f.eb(1) = std::cosh(r);
  f.ea = Vec::Zero(dim + 1);
  f.ea(2) = 1.0;
  f.ed = Vec::Zero(dim + 1);
  if (dim >= 3) f.ed(3) = 1.0;
  return f;
}

HPoint flow_from(const Frame& f, const Vec& tangent) {
  const double n2 = minkowski_dot(tangent, tangent);
  if (n2 < 1e-30) return f.c;
  const double s = std::sqrt(n2);
  return geodesic_flow(f.c, tangent / s, s);
}

}  // namespace

DiskEmbedding geodesic_disk(int dim, double r) {
  const Frame f = make_frame(dim, r);
  DiskEmbedding emb;
  emb.dim = dim;
  emb.phi = [f, r](double u, double v) {
    return flow_from(f, Vec(r * (u * f.ea + v * f.eb)));
  };
  return emb;
}

DiskEmbedding tilted_geodesic_disk(int dim, double r, int axis) {
  if (dim < 3)
    throw DimensionError("tilted_geodesic_disk: dimension must be >= 3");
  if (axis < 3 || axis > dim)
    throw DomainError("tilted_geodesic_disk: axis must be in 3..dim");
  const GroupElement k = exp_map(basis_rotation(dim, 2, axis) * (M_PI / 5.0));
  DiskEmbedding base = geodesic_disk(dim, r);
  DiskEmbedding emb;
  emb.dim = dim;
  emb.phi = [base, k, dim](double u, double v) {
    return HPoint(k.mat * base(u, v).vec, dim);
  };
  return emb;
}

DiskEmbedding bumped_disk(int dim, double r, double amplitude, int frequency) {
  if (dim < 3) throw DimensionError("bumped_disk: dimension must be >= 3");
  if (frequency < 1) throw DomainError("bumped_disk: frequency must be >= 1");
  const Frame f = make_frame(dim, r);
  DiskEmbedding emb;
  emb.dim = dim;
  emb.phi = [f, r, amplitude, frequency](double u, double v) {
    const std::complex<double> z(u, v);
    const double bump =
        amplitude * std::pow(z, frequency).real() * (1.0 - u * u - v * v);
    return flow_from(f, Vec(r * (u * f.ea + v * f.eb) + bump * f.ed));
  };
  return emb;
}

// ---------------------------------------------------------------------------
// Tabulated embeddings
// ---------------------------------------------------------------------------

namespace {

struct Lattice {
  std::vector<double> us, vs;       // sorted axes
  std::vector<Vec> samples;         // row-major: iu * vs.size() + iv
  int dim = 0;

  const Vec& at(std::size_t iu, std::size_t iv) const {
    return samples[iu * vs.size() + iv];
  }
};

std::size_t axis_cell(const std::vector<double>& axis, double x) {
  // Index i with axis[i] <= x <= axis[i+1], clamped to the range.
  auto it = std::upper_bound(axis.begin(), axis.end(), x);
  std::size_t i = (it == axis.begin()) ? 0 : (it - axis.begin() - 1);
  return std::min(i, axis.size() - 2);
}

}  // namespace

DiskEmbedding load_disk_csv(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw DomainError("load_disk_csv: cannot open " + path);
  std::vector<std::pair<std::pair<double, double>, Vec>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::vector<double> vals;
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    if (static_cast<int>(vals.size()) != dim + 3)
      throw DomainError("load_disk_csv: row has wrong field count");
    Vec x(dim + 1);
    for (int i = 0; i <= dim; ++i) x(i) = vals[2 + i];
    rows.push_back({{vals[0], vals[1]}, x});
  }
  if (rows.size() < 4) throw DomainError("load_disk_csv: too few samples");

  auto lattice = std::make_shared<Lattice>();
  lattice->dim = dim;
  auto collect = [&](bool first) {
    std::vector<double> axis;
    for (const auto& r : rows)
      axis.push_back(first ? r.first.first : r.first.second);
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               axis.end());
    return axis;
  };
  lattice->us = collect(true);
  lattice->vs = collect(false);
  const std::size_t nu = lattice->us.size(), nv = lattice->vs.size();
  if (nu < 2 || nv < 2 || rows.size() != nu * nv)
    throw DomainError("load_disk_csv: samples do not form a full lattice");
  lattice->samples.assign(nu * nv, Vec());
  std::vector<bool> seen(nu * nv, false);
  for (const auto& r : rows) {
    const std::size_t iu =
        std::lower_bound(lattice->us.begin(), lattice->us.end(),
                         r.first.first - 1e-12) - lattice->us.begin();
    const std::size_t iv =
        std::lower_bound(lattice->vs.begin(), lattice->vs.end(),
                         r.first.second - 1e-12) - lattice->vs.begin();
    lattice->samples[iu * nv + iv] = r.second;
    seen[iu * nv + iv] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw DomainError("load_disk_csv: lattice has missing cells");

  DiskEmbedding emb;
  emb.dim = dim;
  emb.phi = [lattice, dim](double u, double v) {
    const auto& L = *lattice;
    const std::size_t iu = axis_cell(L.us, u);
    const std::size_t iv = axis_cell(L.vs, v);
    const double du = L.us[iu + 1] - L.us[iu];
    const double dv = L.vs[iv + 1] - L.vs[iv];
    const double a = std::clamp((u - L.us[iu]) / du, -0.5, 1.5);
    const double b = std::clamp((v - L.vs[iv]) / dv, -0.5, 1.5);
    Vec w = (1 - a) * (1 - b) * L.at(iu, iv) + a * (1 - b) * L.at(iu + 1, iv) +
            (1 - a) * b * L.at(iu, iv + 1) + a * b * L.at(iu + 1, iv + 1);
    const double q = -minkowski_dot(w, w);
    if (!(q > 1e-12) || w(0) <= 0.0)
      throw DomainError("load_disk_csv: sample off the hyperboloid sheet");
    return HPoint(w / std::sqrt(q), dim);
  };
  return emb;
}

void write_disk_csv(const std::string& path, const DiskEmbedding& emb,
                    int half_steps) {
  if (half_steps < 1) throw DomainError("write_disk_csv: half_steps >= 1");
  std::ofstream out(path);
  if (!out) throw DomainError("write_disk_csv: cannot open " + path);
  out.precision(17);
  const int m = half_steps;
  for (int i = 0; i <= 2 * m; ++i)
    for (int j = 0; j <= 2 * m; ++j) {
      const double u = static_cast<double>(i - m) / m;
      const double v = static_cast<double>(j - m) / m;
      const HPoint p = emb(u, v);
      out << u << "," << v;
      for (int c = 0; c <= emb.dim; ++c) out << "," << p.vec(c);
      out << "\n";
    }
}

}  // namespace holo
