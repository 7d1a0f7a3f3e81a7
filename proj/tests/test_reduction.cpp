#include "doctest.h"

#include <algorithm>
#include <set>

#include "perico/reduction.hpp"
#include "perico/verify.hpp"

using namespace perico;
using namespace perico::reduction;

namespace {

graph::SubgroupDescriptor diag22() {
  graph::SubgroupDescriptor s;
  s.mat = {{{2, 0}, {0, 2}}};
  return s;
}

std::set<std::tuple<int, int, long long, long long>> dart_set(
    const graph::PeriodicGraph& pg) {
  std::set<std::tuple<int, int, long long, long long>> out;
  for (const graph::Dart& d : pg.darts)
    out.insert({d.u, d.v, d.voltage.shift[0], d.voltage.shift[1]});
  return out;
}

graph::PeriodicGraph two_leaf_square() {
  graph::PeriodicGraph pg = graph::leafed_square_lattice();
  pg.orbit_count = 3;
  pg.geometry.push_back({-0.3, -0.3});
  pg.darts.push_back({0, 2, {{0, 0}, ""}});
  pg.darts.push_back({2, 0, {{0, 0}, ""}});
  return pg;
}

}  // namespace

TEST_CASE("atom orbits of the leafed square lattice") {
  std::vector<AtomOrbit> atoms = find_atom_orbits(graph::leafed_square_lattice(), 4);
  REQUIRE(atoms.size() == 1);
  CHECK(atoms[0].connectivity_case == 1);
  REQUIRE(atoms[0].representative.size() == 1);
  CHECK(atoms[0].representative[0].orbit == 1);
  REQUIRE(atoms[0].boundary.size() == 1);
  CHECK(atoms[0].boundary[0].orbit == 0);
}

TEST_CASE("atom orbits of the subdivided square lattice") {
  std::vector<AtomOrbit> atoms =
      find_atom_orbits(graph::subdivided_square_lattice(), 4);
  REQUIRE(atoms.size() == 2);
  std::set<int> rep_orbits;
  for (const AtomOrbit& a : atoms) {
    CHECK(a.connectivity_case == 2);
    REQUIRE(a.representative.size() == 1);
    rep_orbits.insert(a.representative[0].orbit);
    REQUIRE(a.boundary.size() == 2);
    CHECK(a.boundary[0].orbit == 0);
    CHECK(a.boundary[1].orbit == 0);
  }
  CHECK(rep_orbits == std::set<int>{1, 2});
}

TEST_CASE("3-connected inputs have no atoms to find") {
  CHECK_THROWS_AS(static_cast<void>(find_atom_orbits(graph::square_lattice(), 4)),
                  ArgumentError);
}

TEST_CASE("atom output is stable under larger radii") {
  auto a4 = find_atom_orbits(graph::leafed_square_lattice(), 4);
  auto a6 = find_atom_orbits(graph::leafed_square_lattice(), 6);
  CHECK(a4.size() == a6.size());
  auto s4 = find_atom_orbits(graph::subdivided_square_lattice(), 4);
  auto s6 = find_atom_orbits(graph::subdivided_square_lattice(), 6);
  CHECK(s4.size() == s6.size());
}

TEST_CASE("single reduction steps") {
  graph::PeriodicGraph leafed = graph::leafed_square_lattice();
  auto [sq, step] = reduce_once(leafed, find_atom_orbits(leafed, 4));
  CHECK(sq.orbit_count == 1);
  CHECK(dart_set(sq) == dart_set(graph::square_lattice()));
  CHECK(step.connectivity_case == 1);
  CHECK(step.inserted_darts.empty());

  graph::PeriodicGraph sub = graph::subdivided_square_lattice();
  auto [sq2, step2] = reduce_once(sub, find_atom_orbits(sub, 4));
  CHECK(sq2.orbit_count == 1);
  CHECK(dart_set(sq2) == dart_set(graph::square_lattice()));
  CHECK(step2.connectivity_case == 2);
  CHECK(step2.inserted_darts.size() == 4);

  graph::PeriodicGraph both = two_leaf_square();
  auto [sq3, step3] = reduce_once(both, find_atom_orbits(both, 4));
  CHECK(sq3.orbit_count == 1);
  CHECK(step3.atoms.size() == 2);
}

TEST_CASE("full reduction") {
  auto [g0, t0] = reduce_to_3connected(graph::square_lattice());
  CHECK(t0.steps.empty());
  auto [g1, t1] = reduce_to_3connected(graph::hexagonal_lattice());
  CHECK(t1.steps.empty());

  auto [g2, t2] = reduce_to_3connected(graph::leafed_subdivided_square_lattice());
  CHECK(t2.steps.size() == 2);
  CHECK(g2.orbit_count == 1);
  CHECK(dart_set(g2) == dart_set(graph::square_lattice()));
  CHECK(t2.steps[0].connectivity_case == 1);
  CHECK(t2.steps[1].connectivity_case == 2);
}

TEST_CASE("reattaching leaves keeps the checkerboard palette") {
  graph::PeriodicGraph leafed = graph::leafed_square_lattice();
  auto [reduced, trace] = reduce_to_3connected(leafed);
  colouring::QuotientGraph q = colouring::quotient_mod_subgroup(reduced, diag22());
  auto qc = colouring::colour_quotient(q, colouring::Strategy::ExactK, 2);
  REQUIRE(qc.has_value());
  colouring::PeriodicColouring base = colouring::lift_colouring(q, *qc);

  colouring::PeriodicColouring reattached = reattach_atoms(base, leafed, trace);
  CHECK(reattached.colouring.palette == 2);
  CHECK(verify::check_proper(reattached, leafed, 10).pass);

  colouring::PeriodicColouring fresh =
      reattach_atoms(base, leafed, trace, PaletteMode::Fresh);
  CHECK(fresh.colouring.palette == 3);
  CHECK(verify::check_proper(fresh, leafed, 10).pass);

  ReductionTrace empty;
  colouring::PeriodicColouring same = reattach_atoms(base, reduced, empty);
  CHECK(same.colouring.colours == base.colouring.colours);
}

TEST_CASE("subdivision reattachment widens the palette to 3") {
  graph::PeriodicGraph full = graph::leafed_subdivided_square_lattice();
  auto [pc, report] = colouring::euclid_pipeline(full);
  CHECK(report.reduction_steps == 2);
  CHECK(report.index == 4);
  CHECK(report.palette == 3);
  CHECK(verify::check_proper(pc, full, 10).pass);
  CHECK(verify::check_periodic(pc, full, 50).pass);
}
