#include "doctest.h"

#include <cmath>
#include <set>

#include "perico/colouring.hpp"
#include "perico/verify.hpp"

using namespace perico;
using namespace perico::colouring;

namespace {

graph::SubgroupDescriptor diag(long long a, long long b) {
  graph::SubgroupDescriptor s;
  s.mat = {{{a, 0}, {0, b}}};
  return s;
}

QuotientGraph toy_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  QuotientGraph q;
  for (int i = 0; i < n; ++i) q.vertices.emplace_back(0, i);
  q.edges = edges;
  q.adjacency.resize((size_t)n);
  for (auto [a, b] : edges) {
    q.adjacency[(size_t)a].push_back(b);
    q.adjacency[(size_t)b].push_back(a);
  }
  return q;
}

std::vector<int> degrees(const QuotientGraph& q) {
  std::vector<int> deg((size_t)q.vertex_count(), 0);
  for (auto [a, b] : q.edges) {
    ++deg[(size_t)a];
    ++deg[(size_t)b];
  }
  return deg;
}

bool proper_on(const QuotientGraph& q, const std::vector<int>& col) {
  for (auto [a, b] : q.edges)
    if (col[(size_t)a] == col[(size_t)b]) return false;
  return true;
}

}  // namespace

TEST_CASE("square lattice quotient mod diag(2,2)") {
  graph::PeriodicGraph sq = graph::square_lattice();
  QuotientGraph q = quotient_mod_subgroup(sq, diag(2, 2));
  CHECK(q.vertex_count() == 4);
  CHECK(q.edges.size() == 8);
  for (int d : degrees(q)) CHECK(d == 4);
  for (int v = 0; v < 4; ++v)
    for (int w : q.adjacency[(size_t)v]) CHECK(w != v);
}

TEST_CASE("too small sublattices are rejected with loops") {
  graph::PeriodicGraph sq = graph::square_lattice();
  CHECK_THROWS_WITH_AS(static_cast<void>(quotient_mod_subgroup(sq, diag(1, 1))),
                       "subgroup too small: same-orbit adjacency in orbit 0",
                       ArgumentError);
  CHECK_THROWS_AS(static_cast<void>(quotient_mod_subgroup(sq, diag(1, 3))),
                  ArgumentError);
}

TEST_CASE("order-7 tessellation quotient mod the index-168 subgroup") {
  graph::PeriodicGraph pg = graph::tessellation(3, 7);
  double L = graph::max_edge_length(pg) * (1.0 + 1e-9);
  auto [table, cert] = hyp::subgroup_avoiding_short(*pg.fuchsian, L);
  REQUIRE(table.degree == 168);
  graph::SubgroupDescriptor T;
  T.kind = graph::GroupKind::Fuchsian;
  T.table = table;
  QuotientGraph q = quotient_mod_subgroup(pg, T);
  CHECK(q.vertex_count() == 24);
  CHECK(q.edges.size() == 84);
  for (int d : degrees(q)) CHECK(d == 7);
}

TEST_CASE("exact-k colouring engine") {
  graph::PeriodicGraph sq = graph::square_lattice();
  QuotientGraph torus = quotient_mod_subgroup(sq, diag(2, 2));
  auto qc = colour_quotient(torus, Strategy::ExactK, 2);
  REQUIRE(qc.has_value());
  CHECK(qc->palette == 2);
  CHECK(proper_on(torus, qc->colours));

  QuotientGraph triangle = toy_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK_FALSE(colour_quotient(triangle, Strategy::ExactK, 2).has_value());
  CHECK(colour_quotient(triangle, Strategy::ExactK, 3).has_value());

  CHECK_THROWS_AS(static_cast<void>(colour_quotient(torus, Strategy::ExactK, 2, 1)),
                  ResourceError);
  CHECK_THROWS_AS(static_cast<void>(colour_quotient(torus, Strategy::ExactK, 0)),
                  ArgumentError);

  QuotientGraph loop = toy_graph(2, {{0, 0}, {0, 1}});
  CHECK_THROWS_AS(static_cast<void>(colour_quotient(loop, Strategy::Dsatur)),
                  ArgumentError);
}

TEST_CASE("dsatur and unique strategies") {
  QuotientGraph k4 =
      toy_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  auto ds = colour_quotient(k4, Strategy::Dsatur);
  REQUIRE(ds.has_value());
  CHECK(ds->palette == 4);
  CHECK(proper_on(k4, ds->colours));

  auto un = colour_quotient(k4, Strategy::Unique);
  REQUIRE(un.has_value());
  CHECK(un->palette == 4);
  std::set<int> distinct(un->colours.begin(), un->colours.end());
  CHECK(distinct.size() == 4);
}

TEST_CASE("checkerboard lift alternates along the axes") {
  graph::PeriodicGraph sq = graph::square_lattice();
  QuotientGraph torus = quotient_mod_subgroup(sq, diag(2, 2));
  auto qc = colour_quotient(torus, Strategy::ExactK, 2);
  REQUIRE(qc.has_value());
  PeriodicColouring pc = lift_colouring(torus, *qc);
  graph::Patch patch = graph::build_patch(sq, graph::base_vertex(sq, 0), 8);
  for (const graph::CoverVertex& v : patch.vertices) {
    int parity = (int)(((v.shift[0] + v.shift[1]) % 2 + 2) % 2);
    int base = colour_of(pc, sq, graph::base_vertex(sq, 0));
    CHECK(colour_of(pc, sq, v) == (parity == 0 ? base : 1 - base));
  }
}

TEST_CASE("euclidean pipeline on the square lattice") {
  graph::PeriodicGraph sq = graph::square_lattice();
  auto [pc, report] = euclid_pipeline(sq);
  CHECK(report.index == 4);
  CHECK(report.palette == 2);
  CHECK(report.strategy == "exact-5");
  CHECK(report.reduction_steps == 0);
  CHECK(report.ringel_youngs == 7);
  CHECK(report.thomassen_threshold == hyp::BigInt(1) << 20);
  CHECK_FALSE(report.meets_thomassen);

  auto [pc2, report2] = euclid_pipeline(sq);
  CHECK(pc.colouring.colours == pc2.colouring.colours);
}

TEST_CASE("euclidean pipeline on hexagonal and triangular lattices") {
  auto [hex_pc, hex_report] = euclid_pipeline(graph::hexagonal_lattice());
  CHECK(hex_report.palette == 2);
  CHECK(hex_report.index == 1);

  auto [tri_pc, tri_report] = euclid_pipeline(graph::triangular_lattice());
  CHECK(tri_report.palette == 4);
  CHECK(tri_report.index == 4);
}

TEST_CASE("pipelines reject two-ended inputs") {
  CHECK_THROWS_AS(static_cast<void>(euclid_pipeline(graph::path_graph())),
                  ArgumentError);
}

TEST_CASE("hyperbolic pipeline on the order-7 tessellation") {
  auto [pc, report] = hyp_pipeline(graph::tessellation(3, 7));
  CHECK(report.index == 168);
  CHECK(report.genus == 3);
  CHECK(report.ringel_youngs == 9);
  CHECK(report.palette <= 9);
  CHECK(report.palette >= 4);  // contains triangles
  CHECK(report.strategy == "dsatur");
  CHECK(pc.quotient.vertex_count() == 24);
  for (auto [a, b] : pc.quotient.edges)
    CHECK(pc.colouring.colours[(size_t)a] != pc.colouring.colours[(size_t)b]);
}
