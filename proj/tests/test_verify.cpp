#include "doctest.h"

#include "perico/verify.hpp"

using namespace perico;
using namespace perico::verify;

namespace {

graph::SubgroupDescriptor diag22() {
  graph::SubgroupDescriptor s;
  s.mat = {{{2, 0}, {0, 2}}};
  return s;
}

colouring::PeriodicColouring checkerboard(const graph::PeriodicGraph& sq) {
  colouring::QuotientGraph q = colouring::quotient_mod_subgroup(sq, diag22());
  auto qc = colouring::colour_quotient(q, colouring::Strategy::ExactK, 2);
  return colouring::lift_colouring(q, *qc);
}

}  // namespace

TEST_CASE("properness oracle") {
  graph::PeriodicGraph sq = graph::square_lattice();
  colouring::PeriodicColouring pc = checkerboard(sq);
  ProperReport good = check_proper(pc, sq, 10);
  CHECK(good.pass);
  CHECK(good.vertices_checked == 221);

  colouring::PeriodicColouring constant = pc;
  std::fill(constant.colouring.colours.begin(), constant.colouring.colours.end(), 0);
  constant.colouring.palette = 1;
  ProperReport bad = check_proper(constant, sq, 2);
  CHECK_FALSE(bad.pass);
  CHECK((int)bad.monochromatic.size() == bad.edges_checked);

  CHECK_THROWS_AS(static_cast<void>(check_proper(pc, sq, 0)), ArgumentError);
}

TEST_CASE("properness oracle on the hyperbolic lift") {
  graph::PeriodicGraph pg = graph::tessellation(3, 7);
  auto [pc, report] = colouring::hyp_pipeline(pg);
  CHECK(check_proper(pc, pg, 3).pass);
}

TEST_CASE("periodicity oracle") {
  graph::PeriodicGraph sq = graph::square_lattice();
  colouring::PeriodicColouring pc = checkerboard(sq);
  PeriodicReport good = check_periodic(pc, sq, 100);
  CHECK(good.pass);
  CHECK(good.classes_seen <= pc.quotient.vertex_count());

  // Negative control: a resolution stub that depends on the raw shift.
  ColourFn stub = [&pc](const graph::PeriodicGraph& g, const graph::CoverVertex& v) {
    if (v.shift[0] == 2 && v.shift[1] == 0) return 99;
    return colouring::colour_of(pc, g, v);
  };
  PeriodicReport bad = check_periodic(pc, sq, 50, 12345, stub);
  CHECK_FALSE(bad.pass);

  CHECK_THROWS_AS(static_cast<void>(check_periodic(pc, sq, 0)), ArgumentError);
}

TEST_CASE("periodicity oracle for a fuchsian lift") {
  graph::PeriodicGraph pg = graph::tessellation(3, 7);
  auto [pc, report] = colouring::hyp_pipeline(pg);
  PeriodicReport rep = check_periodic(pc, pg, 40);
  CHECK(rep.pass);
  CHECK(rep.classes_seen <= 24);
}

TEST_CASE("brute-force chromatic numbers") {
  CHECK(brute_force_chromatic(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}) ==
        4);
  CHECK(brute_force_chromatic(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}) == 3);
  CHECK(brute_force_chromatic(1, {}) == 1);
  CHECK_THROWS_AS(static_cast<void>(brute_force_chromatic(15, {})), ArgumentError);
  CHECK_THROWS_AS(static_cast<void>(brute_force_chromatic(2, {{0, 0}})),
                  ArgumentError);
}

TEST_CASE("exact-k agrees with the brute-force oracle on bundled quotients") {
  std::vector<colouring::QuotientGraph> quotients;
  quotients.push_back(
      colouring::quotient_mod_subgroup(graph::square_lattice(), diag22()));
  quotients.push_back(
      colouring::quotient_mod_subgroup(graph::triangular_lattice(), diag22()));
  quotients.push_back(colouring::quotient_mod_subgroup(
      graph::subdivided_square_lattice(), diag22()));
  {
    graph::SubgroupDescriptor id;
    quotients.push_back(
        colouring::quotient_mod_subgroup(graph::hexagonal_lattice(), id));
  }
  for (const auto& q : quotients) {
    REQUIRE(q.vertex_count() <= 14);
    int chi = brute_force_chromatic(q.vertex_count(), q.edges);
    for (int k = 2; k <= 6; ++k) {
      auto qc = colouring::colour_quotient(q, colouring::Strategy::ExactK, k);
      CHECK(qc.has_value() == (k >= chi));
    }
  }
}
