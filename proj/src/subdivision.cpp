// SPDX-License-Identifier: Apache-2.0

#include "holonomy/subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace holo {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Vec2 circle_point(double theta) { return Vec2(std::cos(theta), std::sin(theta)); }

bool same_point(const Vec2& a, const Vec2& b, double eps = 1e-9) {
  return (a - b).cwiseAbs().maxCoeff() < eps;
}

// Layout frame of a triangle: start vertex a, the initial-side far vertex
// qv, and the remaining vertex rv.  Children 1 and 2 cover [a, qv].
struct Layout {
  Vec2 a, qv, rv;
};

Layout layout_of(const LevelEntry& e) {
  const auto& v = e.tri.v;
  int si = -1;
  for (int i = 0; i < 3; ++i)
    if (same_point(v[i], e.tri.start)) si = i;
  if (si < 0) throw DomainError("layout_of: start is not a vertex");
  const Vec2 a = v[si];
  const Vec2 u1 = v[(si + 1) % 3];
  const Vec2 u2 = v[(si + 2) % 3];
  if (!same_point(e.tri.start, e.tri.end)) {
    // start ≠ end: the initial side is the one avoiding the end vertex.
    if (same_point(u1, e.tri.end)) return Layout{a, u2, u1};
    if (same_point(u2, e.tri.end)) return Layout{a, u1, u2};
    throw DomainError("layout_of: end is not a vertex");
  }
  // start = end: sweep the interior angle at the start vertex in the
  // stored rotation sense; the initial side is the sweep's first leg.
  if (cross2(u1 - a, u2 - a) * e.sigma > 0) return Layout{a, u1, u2};
  return Layout{a, u2, u1};
}

}  // namespace

int TriangleAddress::step() const {
  if (interior) return static_cast<int>(lower.size()) - 1;
  return static_cast<int>(upper.size()) - 1 + static_cast<int>(lower.size()) - 1;
}

std::string TriangleAddress::to_string() const {
  std::string s;
  if (interior) {
    s = "T_";
    for (int d : lower) s += static_cast<char>('0' + d);
  } else {
    s = "S^";
    for (int d : upper) s += static_cast<char>('0' + d);
    s += "_";
    for (int d : lower) s += static_cast<char>('0' + d);
  }
  return s;
}

bool TriangleAddress::operator==(const TriangleAddress& o) const {
  return interior == o.interior && upper == o.upper && lower == o.lower;
}

int order_compare(const TriangleAddress& L, const TriangleAddress& M) {
  if (L.step() != M.step())
    throw DomainError("order_compare: addresses from different steps");
  if (L.interior != M.interior) return L.interior ? -1 : +1;
  auto lex = [](const std::vector<int>& a, const std::vector<int>& b) {
    if (a < b) return -1;
    if (b < a) return +1;
    return 0;
  };
  if (L.interior) return lex(L.lower, M.lower);
  const int kL = static_cast<int>(L.upper.size()) - 1;
  const int kM = static_cast<int>(M.upper.size()) - 1;
  if (kL != kM) return kL < kM ? -1 : +1;
  if (int c = lex(L.upper, M.upper); c != 0)
    return (kL % 2 == 1) ? -c : c;  // odd superscript length: reversed
  return lex(L.lower, M.lower);
}

Vec2 disk_basepoint() { return Vec2(0.0, -1.0); }

std::array<LevelEntry, 6> barycentric_children(const LevelEntry& e) {
  const Layout L = layout_of(e);
  const Vec2 bary = (e.tri.v[0] + e.tri.v[1] + e.tri.v[2]) / 3.0;
  const Vec2 m1 = 0.5 * (L.a + L.qv);
  const Vec2 m2 = 0.5 * (L.qv + L.rv);
  const Vec2 m3 = 0.5 * (L.rv + L.a);
  const std::array<std::array<Vec2, 3>, 6> pos = {{{L.a, m1, bary},
                                                   {m1, L.qv, bary},
                                                   {L.qv, m2, bary},
                                                   {m2, L.rv, bary},
                                                   {L.rv, m3, bary},
                                                   {m3, L.a, bary}}};
  // Geometric winding of the positional layout (forced by the initial
  // side); it is the rotation sense the children inherit.
  const int winding = cross2(m1 - L.a, bary - L.a) > 0 ? +1 : -1;
  const std::array<int, 6> base = e.digit16
                                      ? std::array<int, 6>{1, 2, 3, 6, 5, 4}
                                      : std::array<int, 6>{1, 2, 3, 4, 5, 6};
  std::array<LevelEntry, 6> out;
  for (int i = 0; i < 6; ++i) {
    int name = base[i];
    if (e.swap56 && (name == 5 || name == 6)) name = 11 - name;
    LevelEntry c;
    c.addr = e.addr;
    c.addr.lower.push_back(name);
    c.tri.v = pos[i];
    c.tri.orientation = e.tri.orientation;
    c.tri.start = (name == 1) ? e.tri.start : bary;
    c.tri.end = (name == 6) ? e.tri.end : bary;
    c.digit16 = (name == 1 || name == 6);
    // The rotation sense flips with the geometric position (the pre-swap
    // name), not with the label the child ends up carrying.
    c.sigma = (e.digit16 && (base[i] == 4 || base[i] == 5)) ? -winding
                                                            : winding;
    out[name - 1] = std::move(c);
  }
  return out;
}

namespace {

struct BoundaryRec {
  std::vector<int> upper;
  double theta_from, theta_to;  // traveled per the global orientation
};

std::array<LevelEntry, 2> spawn_boundary(const BoundaryRec& rec,
                                         int orientation) {
  const Vec2 Pf = circle_point(rec.theta_from);
  const Vec2 Pt = circle_point(rec.theta_to);
  const double th_mid = 0.5 * (rec.theta_from + rec.theta_to);
  const Vec2 mid = 0.5 * (Pf + Pt);   // chord midpoint (interior vertex)
  const Vec2 W = circle_point(th_mid);  // arc midpoint (on the circle)
  const int k = static_cast<int>(rec.upper.size());  // children's k
  std::array<LevelEntry, 2> out;
  for (int i = 0; i < 2; ++i) {
    LevelEntry c;
    c.addr.interior = false;
    c.addr.upper = rec.upper;
    c.addr.upper.push_back(i + 1);
    c.addr.lower = {0};
    c.tri.orientation = orientation;
    // The boundary-facing side, in travel direction.
    Vec2 side_from, side_to;
    if (i == 0) {
      c.tri.v = {Pf, mid, W};
      side_from = Pf;
      side_to = W;
      c.theta_from = rec.theta_from;
      c.theta_to = th_mid;
    } else {
      c.tri.v = {mid, Pt, W};
      side_from = W;
      side_to = Pt;
      c.theta_from = th_mid;
      c.theta_to = rec.theta_to;
    }
    // Parity rule: odd superscript length index k reverses start/end.
    if (k % 2 == 1) {
      c.tri.start = side_to;
      c.tri.end = side_from;
    } else {
      c.tri.start = side_from;
      c.tri.end = side_to;
    }
    c.digit16 = true;  // identified with a digit-1 interior triangle
    // Whether this triangle's subdivision matches the reference naming with
    // children 5 and 6 exchanged depends on the parity of the superscript
    // length against its last digit.
    c.swap56 = (k % 2 == 1) ? (i == 0) : (i == 1);
    c.sigma = orientation;
    c.has_boundary_side = true;
    out[i] = std::move(c);
  }
  return out;
}

}  // namespace

const LevelEntry& SubdivisionLevel::at(const TriangleAddress& a) const {
  for (const auto& e : entries)
    if (e.addr == a) return e;
  throw DomainError("SubdivisionLevel::at: address not in level " +
                    a.to_string());
}

SubdivisionLevel build_level(int n, int orientation) {
  if (n < 0 || n > 4)
    throw DomainError("build_level: supported steps are 0..4");
  if (orientation != 1 && orientation != -1)
    throw DomainError("build_level: orientation must be +1 or -1");

  SubdivisionLevel lvl;
  lvl.orientation = orientation;

  // Step 0: T₀ inscribed with basepoint at angle −π/2; side 1 leaves the
  // basepoint in the orientation direction.
  const double th0 = -M_PI / 2.0;
  std::array<double, 3> th = {th0, th0 + orientation * 2.0 * M_PI / 3.0,
                              th0 + orientation * 4.0 * M_PI / 3.0};
  LevelEntry t0;
  t0.addr.interior = true;
  t0.addr.lower = {0};
  t0.tri.v = {circle_point(th[0]), circle_point(th[1]), circle_point(th[2])};
  t0.tri.start = t0.tri.v[0];
  t0.tri.end = t0.tri.v[0];
  t0.tri.orientation = orientation;
  t0.digit16 = false;
  t0.sigma = orientation;
  lvl.entries = {t0};

  std::vector<BoundaryRec> records;
  for (int b = 0; b < 3; ++b)
    records.push_back(BoundaryRec{{b + 1}, th[b],
                                  th[b] + orientation * 2.0 * M_PI / 3.0});

  for (int s = 0; s < n; ++s) {
    std::vector<LevelEntry> next;
    next.reserve(lvl.entries.size() * 6 + records.size() * 2);
    for (const auto& e : lvl.entries)
      for (auto& c : barycentric_children(e)) next.push_back(std::move(c));
    std::vector<BoundaryRec> next_records;
    for (const auto& rec : records)
      for (auto& c : spawn_boundary(rec, orientation)) {
        next_records.push_back(
            BoundaryRec{c.addr.upper, c.theta_from, c.theta_to});
        next.push_back(std::move(c));
      }
    std::sort(next.begin(), next.end(),
              [](const LevelEntry& a, const LevelEntry& b) {
                return order_compare(a.addr, b.addr) < 0;
              });
    lvl.entries = std::move(next);
    records = std::move(next_records);
  }
  lvl.step = n;
  return lvl;
}

// ---------------------------------------------------------------------------
// Property verification
// ---------------------------------------------------------------------------

namespace {

// Merges floating-point vertices within 1e-9 into integer ids.
class VertexRegistry {
 public:
  int id(const Vec2& p) {
    const long long gx = std::llround(p.x() * 1e7);
    const long long gy = std::llround(p.y() * 1e7);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid_.find(key(gx + dx, gy + dy));
        if (it == grid_.end()) continue;
        for (int cand : it->second)
          if ((pts_[cand] - p).cwiseAbs().maxCoeff() < 1e-9) return cand;
      }
    pts_.push_back(p);
    grid_[key(gx, gy)].push_back(static_cast<int>(pts_.size()) - 1);
    return static_cast<int>(pts_.size()) - 1;
  }

 private:
  static long long key(long long gx, long long gy) {
    return gx * 2000003LL + gy;
  }
  std::vector<Vec2> pts_;
  std::unordered_map<long long, std::vector<int>> grid_;
};

long long edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return static_cast<long long>(a) * 4000037LL + b;
}

}  // namespace

PropertyReport verify_properties(const SubdivisionLevel& level) {
  PropertyReport rep;
  const auto& E = level.entries;
  if (E.empty()) return rep;
  auto note = [&](bool& flag, const std::string& msg) {
    flag = false;
    rep.violations.push_back(msg);
  };

  VertexRegistry reg;
  std::unordered_map<long long, int> edge_count;
  std::unordered_map<int, int> boundary_degree;
  std::unordered_set<int> used_vertices;
  std::unordered_map<int, std::vector<int>> boundary_adj;

  auto flip_edge = [&](int a, int b) {
    int& c = edge_count[edge_key(a, b)];
    ++c;
    const int delta = (c == 1) ? +1 : -1;  // enters/leaves the boundary
    boundary_degree[a] += delta;
    boundary_degree[b] += delta;
    if (delta > 0) {
      boundary_adj[a].push_back(b);
      boundary_adj[b].push_back(a);
    } else {
      auto drop = [&](int u, int v) {
        auto& lst = boundary_adj[u];
        lst.erase(std::find(lst.begin(), lst.end(), v));
      };
      drop(a, b);
      drop(b, a);
    }
  };

  const Vec2 bp = disk_basepoint();
  if (!same_point(E.front().tri.start, bp))
    note(rep.p4, "first triangle does not start at the basepoint");

  for (std::size_t j = 0; j < E.size(); ++j) {
    const LevelEntry& e = E[j];
    std::array<int, 3> vid;
    for (int i = 0; i < 3; ++i) vid[i] = reg.id(e.tri.v[i]);

    // P4: the chain of start/end points.
    if (j > 0 && !same_point(e.tri.start, E[j - 1].tri.end))
      note(rep.p4, "P4 break before " + e.addr.to_string());

    // P1: the initial side of e must be a boundary edge of the predecessor
    // union, and it splits at its midpoint into sides of children 1 and 2.
    if (j > 0) {
      const Layout L = layout_of(e);
      const int a = reg.id(L.a), q = reg.id(L.qv);
      auto it = edge_count.find(edge_key(a, q));
      if (it == edge_count.end() || it->second != 1)
        note(rep.p1, "P1: initial side of " + e.addr.to_string() +
                         " not on the predecessor boundary");
      const auto kids = barycentric_children(e);
      const Vec2 m = 0.5 * (L.a + L.qv);
      const bool split_ok =
          same_point(kids[0].tri.v[0], L.a) && same_point(kids[0].tri.v[1], m) &&
          same_point(kids[1].tri.v[0], m) && same_point(kids[1].tri.v[1], L.qv);
      if (!split_ok)
        note(rep.p1, "P1: children 1/2 of " + e.addr.to_string() +
                         " do not split the initial side");
    }

    // P3: children 1 and 6 inherit start and end.
    {
      const auto kids = barycentric_children(e);
      if (!same_point(kids[0].tri.start, e.tri.start) ||
          !same_point(kids[5].tri.end, e.tri.end))
        note(rep.p3, "P3 failure at " + e.addr.to_string());
    }

    for (int i = 0; i < 3; ++i) used_vertices.insert(vid[i]);
    flip_edge(vid[0], vid[1]);
    flip_edge(vid[1], vid[2]);
    flip_edge(vid[2], vid[0]);

    // P2: the prefix union must be a disk — Euler characteristic 1 and a
    // single boundary cycle with all boundary vertices of degree 2.
    const long long V = static_cast<long long>(used_vertices.size());
    const long long Ecnt = static_cast<long long>(edge_count.size());
    const long long F = static_cast<long long>(j) + 1;
    if (V - Ecnt + F != 1)
      note(rep.p2, "P2: Euler characteristic != 1 after " +
                       e.addr.to_string());
    int boundary_edges = 0, boundary_start = -1;
    bool degree_ok = true;
    for (const auto& [key, cnt] : edge_count)
      if (cnt == 1) ++boundary_edges;
    for (const auto& [vtx, deg] : boundary_degree) {
      if (deg == 0) continue;
      boundary_start = vtx;
      if (deg != 2) degree_ok = false;
    }
    if (!degree_ok) {
      note(rep.p2, "P2: boundary vertex of degree != 2 after " +
                       e.addr.to_string());
    } else if (boundary_start >= 0) {
      // Walk the cycle; it must exhaust all boundary edges.
      int prev = -1, cur = boundary_start, steps = 0;
      do {
        const auto& nb = boundary_adj[cur];
        const int nxt = (nb[0] != prev) ? nb[0] : nb[1];
        prev = cur;
        cur = nxt;
        ++steps;
      } while (cur != boundary_start && steps <= boundary_edges);
      if (steps != boundary_edges)
        note(rep.p2, "P2: boundary not a single cycle after " +
                         e.addr.to_string());
    }
  }

  if (!same_point(E.back().tri.end, bp))
    note(rep.p4, "last triangle does not end at the basepoint");
  return rep;
}

}  // namespace holo
