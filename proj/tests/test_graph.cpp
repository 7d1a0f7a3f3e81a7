#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <random>
#include <string>

#include "perico/graph.hpp"

using namespace perico;
using namespace perico::graph;

namespace {

PeriodicGraph square_with_diagonals() {
  PeriodicGraph pg = square_lattice();
  pg.darts.push_back({0, 0, {{1, 1}, ""}});
  pg.darts.push_back({0, 0, {{-1, -1}, ""}});
  pg.darts.push_back({0, 0, {{1, -1}, ""}});
  pg.darts.push_back({0, 0, {{-1, 1}, ""}});
  return pg;
}

bool mentions(const Diagnostics& d, const std::string& what) {
  for (const std::string& issue : d.issues)
    if (issue.find(what) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("canonical builders pass validation") {
  for (const PeriodicGraph& pg :
       {square_lattice(), path_graph(), hexagonal_lattice(), triangular_lattice(),
        leafed_square_lattice(), subdivided_square_lattice(),
        leafed_subdivided_square_lattice(), square_with_diagonals(), tessellation(3, 7),
        tessellation(4, 5)}) {
    Diagnostics d = validate_quotient(pg);
    CHECK(d.pass);
    CHECK(d.issues.empty());
  }
}

TEST_CASE("validation flags broken quotients") {
  PeriodicGraph missing = square_lattice();
  missing.darts.pop_back();
  Diagnostics dm = validate_quotient(missing);
  CHECK_FALSE(dm.pass);
  CHECK(mentions(dm, "missing reverse"));

  PeriodicGraph loop = square_lattice();
  loop.darts.push_back({0, 0, {{0, 0}, ""}});
  Diagnostics dl = validate_quotient(loop);
  CHECK_FALSE(dl.pass);
  CHECK(mentions(dl, "loop"));

  PeriodicGraph dup = square_lattice();
  dup.darts.push_back({0, 0, {{1, 0}, ""}});
  Diagnostics dd = validate_quotient(dup);
  CHECK_FALSE(dd.pass);
  CHECK(mentions(dd, "duplicated"));

  PeriodicGraph bad = square_lattice();
  bad.darts.push_back({0, 1, {{0, 0}, ""}});
  CHECK_FALSE(validate_quotient(bad).pass);

  PeriodicGraph line = path_graph();
  line.darts.push_back({0, 0, {{0, 1}, ""}});
  line.darts.push_back({0, 0, {{0, -1}, ""}});
  Diagnostics dr = validate_quotient(line);
  CHECK_FALSE(dr.pass);
  CHECK(mentions(dr, "rank-1"));
}

TEST_CASE("patch of the square lattice") {
  PeriodicGraph pg = square_lattice();
  Patch p1 = build_patch(pg, base_vertex(pg, 0), 1);
  CHECK(p1.vertices.size() == 5);
  CHECK(p1.edges.size() == 4);
  CHECK(p1.distance[0] == 0);
  CHECK(p1.interior[0]);
  CHECK_FALSE(p1.interior[1]);

  // Ball sizes of the grid: 2r^2 + 2r + 1.
  for (int r = 0; r <= 5; ++r) {
    Patch p = build_patch(pg, base_vertex(pg, 0), r);
    CHECK((long long)p.vertices.size() == 2LL * r * r + 2 * r + 1);
  }

  // Deterministic construction.
  Patch a = build_patch(pg, base_vertex(pg, 0), 3);
  Patch b = build_patch(pg, base_vertex(pg, 0), 3);
  REQUIRE(a.vertices.size() == b.vertices.size());
  for (size_t i = 0; i < a.vertices.size(); ++i) {
    CHECK(a.vertices[i].shift == b.vertices[i].shift);
    CHECK(a.distance[i] == b.distance[i]);
  }
  CHECK(a.edges == b.edges);

  CHECK_THROWS_AS(build_patch(pg, base_vertex(pg, 0), 10, 50), ResourceError);
  CHECK_THROWS_AS(base_vertex(pg, 1), ArgumentError);
}

TEST_CASE("patch of the hexagonal lattice") {
  PeriodicGraph pg = hexagonal_lattice();
  Patch p = build_patch(pg, base_vertex(pg, 0), 1);
  CHECK(p.vertices.size() == 4);
  CHECK(p.edges.size() == 3);
  for (size_t i = 1; i < 4; ++i) CHECK(p.vertices[i].orbit == 1);
}

TEST_CASE("patch of the order-7 triangular tessellation") {
  PeriodicGraph pg = tessellation(3, 7);
  Patch p = build_patch(pg, base_vertex(pg, 0), 1);
  CHECK(p.vertices.size() == 8);
  // 7 spokes plus the 7-cycle of consecutive neighbours.
  CHECK(p.edges.size() == 14);
  Patch p2 = build_patch(pg, base_vertex(pg, 0), 2);
  CHECK(p2.vertices.size() > p.vertices.size());
}

TEST_CASE("end counts stabilize") {
  PeriodicGraph sq = square_lattice();
  for (int r = 1; r <= 9; ++r)
    for (int R = r + 1; R <= 10; ++R) CHECK(estimate_ends(sq, r, R) == 1);

  PeriodicGraph line = path_graph();
  for (int r = 1; r <= 9; ++r)
    for (int R = r + 1; R <= 10; ++R) CHECK(estimate_ends(line, r, R) == 2);

  PeriodicGraph hyp7 = tessellation(3, 7);
  CHECK(estimate_ends(hyp7, 1, 3) == 1);
  CHECK(estimate_ends(hyp7, 2, 4) == 1);

  CHECK_THROWS_AS(estimate_ends(sq, 0, 2), ArgumentError);
  CHECK_THROWS_AS(estimate_ends(sq, 3, 3), ArgumentError);
}

TEST_CASE("patch connectivity") {
  PeriodicGraph sq = square_lattice();
  Connectivity csq = patch_connectivity(build_patch(sq, base_vertex(sq, 0), 6), 3);
  CHECK(csq.value == 3);
  CHECK_FALSE(csq.exact);

  PeriodicGraph leafed = leafed_square_lattice();
  Connectivity cl = patch_connectivity(build_patch(leafed, base_vertex(leafed, 0), 3), 3);
  CHECK(cl.value == 1);
  CHECK(cl.exact);

  PeriodicGraph sub = subdivided_square_lattice();
  Connectivity cs = patch_connectivity(build_patch(sub, base_vertex(sub, 0), 6), 3);
  CHECK(cs.value == 2);
  CHECK(cs.exact);

  Patch tiny = build_patch(sq, base_vertex(sq, 0), 0);
  CHECK_THROWS_AS(patch_connectivity(tiny, 3), ArgumentError);
}

TEST_CASE("subgroup index") {
  SubgroupDescriptor s;
  s.mat = {{{4, 0}, {0, 4}}};
  CHECK(subgroup_index(s) == 16);
  s.mat = {{{2, 3}, {1, 2}}};
  CHECK(subgroup_index(s) == 1);
  s.mat = {{{2, 4}, {1, 2}}};
  CHECK_THROWS_AS(subgroup_index(s), ArgumentError);
}

TEST_CASE("shortest noncontractible cycles on lattices") {
  PeriodicGraph sq = square_lattice();
  SubgroupDescriptor s;
  s.mat = {{{4, 0}, {0, 4}}};
  CHECK(shortest_noncontractible(sq, s) == 4);
  s.mat = {{{3, 0}, {0, 6}}};
  CHECK(shortest_noncontractible(sq, s) == 3);

  PeriodicGraph hex = hexagonal_lattice();
  s.mat = {{{2, 0}, {0, 2}}};
  CHECK(shortest_noncontractible(hex, s) == 4);

  s.mat = {{{1, 0}, {0, 0}}};
  CHECK_THROWS_AS(shortest_noncontractible(sq, s), ArgumentError);

  PeriodicGraph line = path_graph();
  s.mat = {{{2, 0}, {0, 2}}};
  CHECK_THROWS_AS(shortest_noncontractible(line, s), ArgumentError);
}

TEST_CASE("grid cycle lengths match the L1 shortest vector") {
  // On the grid, cover distance is the L1 norm, so the answer must be the
  // shortest L1 length over nonzero sublattice vectors.
  PeriodicGraph sq = square_lattice();
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long long> coef(-6, 6);
  int tried = 0;
  while (tried < 20) {
    SubgroupDescriptor s;
    s.mat = {{{coef(rng), coef(rng)}, {coef(rng), coef(rng)}}};
    long long det = s.mat[0][0] * s.mat[1][1] - s.mat[0][1] * s.mat[1][0];
    if (det == 0 || std::llabs(det) > 36) continue;
    ++tried;
    long long expect = 1LL << 30;
    for (long long x = -12; x <= 12; ++x)
      for (long long y = -12; y <= 12; ++y) {
        if (x == 0 && y == 0) continue;
        long long c1 = s.mat[1][1] * x - s.mat[0][1] * y;
        long long c2 = -s.mat[1][0] * x + s.mat[0][0] * y;
        if (c1 % det == 0 && c2 % det == 0)
          expect = std::min(expect, std::llabs(x) + std::llabs(y));
      }
    REQUIRE(expect <= 12);
    CHECK(shortest_noncontractible(sq, s) == expect);
  }
}

TEST_CASE("shortest noncontractible cycle in a hyperbolic quotient") {
  PeriodicGraph pg = tessellation(3, 7);
  SubgroupDescriptor s;
  s.kind = GroupKind::Fuchsian;

  // Whole group: every distinct vertex in the orbit is a translate.
  s.table.degree = 1;
  s.table.perm = {{"x", {0}}, {"y", {0}}, {"z", {0}}};
  CHECK(shortest_noncontractible(pg, s) == 1);

  auto [table, cert] = hyp::subgroup_avoiding_short(*pg.fuchsian, 0.1);
  s.table = table;
  int len = shortest_noncontractible(pg, s);
  CHECK(len >= 2);
  CHECK(len <= 7);
}

TEST_CASE("maximum edge lengths") {
  CHECK(max_edge_length(square_lattice()) == doctest::Approx(1.0));
  CHECK(max_edge_length(square_with_diagonals()) == doctest::Approx(std::sqrt(2.0)));
  CHECK(max_edge_length(hexagonal_lattice()) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-3));
  CHECK(max_edge_length(subdivided_square_lattice()) == doctest::Approx(0.5));

  double expected = 2.0 * std::acosh(std::cos(M_PI / 3) / std::sin(M_PI / 7));
  CHECK(max_edge_length(tessellation(3, 7)) == doctest::Approx(expected));

  PeriodicGraph bare = square_lattice();
  bare.geometry.clear();
  CHECK_THROWS_AS(max_edge_length(bare), ArgumentError);
}
