// SPDX-License-Identifier: Apache-2.0
//
// Ordered barycentric subdivision of the disk: counts, the strict total
// order, geometric tiling, Properties 1–4 at depths 0–4 in both
// orientations, and detection of a deliberately corrupted order.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>

#include "holonomy/subdivision.hpp"

using namespace holo;

namespace {

TriangleAddress interior(std::vector<int> lower) {
  TriangleAddress a;
  a.interior = true;
  a.lower = std::move(lower);
  return a;
}

TriangleAddress exterior(std::vector<int> upper, std::vector<int> lower) {
  TriangleAddress a;
  a.interior = false;
  a.upper = std::move(upper);
  a.lower = std::move(lower);
  return a;
}

long long expected_count(int n) {
  long long c = 1;
  for (int i = 0; i < n; ++i) c *= 6;  // 6ⁿ interiors
  long long p2 = 1;
  long long p6 = 1;
  for (int i = 0; i < n; ++i) p6 *= 6;  // 6^{n}
  for (int k = 1; k <= n; ++k) {
    p6 /= 6;  // 6^{n-k}
    c += p2 * p6 * 6;  // 2^{k-1}·6^{n-k+1}
    p2 *= 2;
  }
  return c;
}

double signed_area(const PlanarTriangle& t) {
  const Vec2 a = t.v[1] - t.v[0], b = t.v[2] - t.v[0];
  return 0.5 * (a.x() * b.y() - a.y() * b.x());
}

}  // namespace

TEST_CASE("triangle counts match the closed form at every depth") {
  CHECK(expected_count(0) == 1);
  CHECK(expected_count(1) == 12);
  CHECK(expected_count(2) == 84);
  CHECK(expected_count(3) == 528);
  CHECK(expected_count(4) == 3216);
  for (int n = 0; n <= 4; ++n)
    CHECK(static_cast<long long>(build_level(n).entries.size()) ==
          expected_count(n));
}

TEST_CASE("address formatting and step bookkeeping") {
  CHECK(interior({0}).step() == 0);
  CHECK(interior({0, 1, 3}).step() == 2);
  CHECK(exterior({1, 1}, {0}).step() == 1);
  CHECK(exterior({1, 1}, {0, 2}).step() == 2);
  CHECK(exterior({1, 1, 1}, {0}).step() == 2);
  CHECK(interior({0, 1, 2}).to_string() == "T_012");
  CHECK(exterior({1, 1}, {0, 2, 3}).to_string() == "S^11_023");
}

TEST_CASE("the total order: worked examples") {
  // Interiors precede exteriors.
  CHECK(order_compare(interior({0, 1}), exterior({1, 1}, {0})) < 0);
  // Interiors sort by dictionary order on the digit word.
  CHECK(order_compare(interior({0, 1, 3}), interior({0, 1, 4})) < 0);
  CHECK(order_compare(interior({0, 1, 6}), interior({0, 2, 1})) < 0);
  // Shorter superscripts (older rings) come first.
  CHECK(order_compare(exterior({1, 1}, {0, 2}), exterior({1, 1, 1}, {0})) < 0);
  // Rings of odd superscript index reverse the dictionary order on the
  // superscript word: S^{12}_0 < S^{11}_0 and S^{32}_0 first of the ring.
  CHECK(order_compare(exterior({1, 2}, {0}), exterior({1, 1}, {0})) < 0);
  CHECK(order_compare(exterior({3, 2}, {0}), exterior({1, 2}, {0})) < 0);
  // Even superscript index: plain dictionary order (S^{111} < … < S^{322}).
  CHECK(order_compare(exterior({1, 1, 1}, {0}), exterior({3, 2, 2}, {0})) < 0);
  // Ties on the superscript fall through to the subscript word.
  CHECK(order_compare(exterior({1, 1}, {0, 2}), exterior({1, 1}, {0, 3})) < 0);
  // Equality and mismatched steps.
  CHECK(order_compare(interior({0, 1}), interior({0, 1})) == 0);
  CHECK_THROWS_AS(order_compare(interior({0}), interior({0, 1})), DomainError);
}

TEST_CASE("the order is a strict total order on the level (n = 2)") {
  const SubdivisionLevel lvl = build_level(2);
  const int N = static_cast<int>(lvl.entries.size());
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const int c = order_compare(lvl.entries[i].addr, lvl.entries[j].addr);
      CHECK(c == -order_compare(lvl.entries[j].addr, lvl.entries[i].addr));
      CHECK((c == 0) == (i == j));
      if (i < j) CHECK(c < 0);  // entries come pre-sorted
    }
  // Transitivity on a strided sample of triples.
  for (int i = 0; i < N; i += 5)
    for (int j = i + 1; j < N; j += 5)
      for (int k = j + 1; k < N; k += 5) {
        CHECK(order_compare(lvl.entries[i].addr, lvl.entries[j].addr) < 0);
        CHECK(order_compare(lvl.entries[j].addr, lvl.entries[k].addr) < 0);
        CHECK(order_compare(lvl.entries[i].addr, lvl.entries[k].addr) < 0);
      }
}

TEST_CASE("the level tiles the inscribed polygon") {
  for (int n = 0; n <= 3; ++n) {
    const SubdivisionLevel lvl = build_level(n);
    double total = 0.0;
    for (const auto& e : lvl.entries) {
      const double a = signed_area(e.tri);
      CHECK(std::abs(a) > 1e-12);  // no degenerate tiles
      total += std::abs(a);
    }
    const double m = 3.0 * std::pow(2.0, n);  // inscribed 3·2ⁿ-gon
    CHECK(total == doctest::Approx(0.5 * m * std::sin(2 * M_PI / m))
                       .epsilon(1e-10));
  }
}

TEST_CASE("start/end roles: chain anchors at the basepoint") {
  for (int n = 0; n <= 3; ++n) {
    const SubdivisionLevel lvl = build_level(n);
    CHECK((lvl.entries.front().tri.start - disk_basepoint()).norm() < 1e-12);
    CHECK((lvl.entries.back().tri.end - disk_basepoint()).norm() < 1e-12);
    // Start and end are vertices of their triangle.
    for (const auto& e : lvl.entries) {
      auto is_vertex = [&](const Vec2& p) {
        for (const auto& v : e.tri.v)
          if ((v - p).norm() < 1e-12) return true;
        return false;
      };
      CHECK(is_vertex(e.tri.start));
      CHECK(is_vertex(e.tri.end));
    }
  }
}

TEST_CASE("Properties 1-4 hold at depths 0-4, both orientations") {
  const auto t0 = std::chrono::steady_clock::now();
  for (int orient : {+1, -1})
    for (int n = 0; n <= 4; ++n) {
      const PropertyReport rep = verify_properties(build_level(n, orient));
      INFO("depth " << n << " orientation " << orient);
      for (const auto& v : rep.violations) INFO(v);
      CHECK(rep.pass());
    }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  CHECK(secs < 30.0);
}

TEST_CASE("a corrupted order is detected by the property checker") {
  SubdivisionLevel lvl = build_level(2);
  std::swap(lvl.entries[0], lvl.entries[1]);
  CHECK_FALSE(verify_properties(lvl).pass());

  SubdivisionLevel lvl3 = build_level(3);
  std::swap(lvl3.entries[100], lvl3.entries[101]);
  CHECK_FALSE(verify_properties(lvl3).pass());
}

TEST_CASE("children cover their parent exactly") {
  const SubdivisionLevel lvl = build_level(1);
  for (const auto& e : lvl.entries) {
    const auto kids = barycentric_children(e);
    double sum = 0.0;
    for (const auto& k : kids) sum += std::abs(signed_area(k.tri));
    CHECK(sum == doctest::Approx(std::abs(signed_area(e.tri))).epsilon(1e-12));
    // Child addresses extend the parent's by one digit 1..6.
    bool seen[7] = {};
    for (const auto& k : kids) {
      CHECK(k.addr.lower.size() == e.addr.lower.size() + 1);
      seen[k.addr.lower.back()] = true;
    }
    for (int d = 1; d <= 6; ++d) CHECK(seen[d]);
  }
}

TEST_CASE("validation: level bounds and address lookup") {
  CHECK_THROWS_AS(build_level(5), DomainError);
  CHECK_THROWS_AS(build_level(-1), DomainError);
  CHECK_THROWS_AS(build_level(2, 0), DomainError);
  const SubdivisionLevel lvl = build_level(1);
  CHECK(lvl.at(interior({0, 3})).addr == interior({0, 3}));
  CHECK_THROWS_AS(lvl.at(interior({0, 7})), DomainError);
}
