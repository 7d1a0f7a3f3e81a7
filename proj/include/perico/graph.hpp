#pragma once

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "perico/errors.hpp"
#include "perico/euclid.hpp"
#include "perico/hyp.hpp"

namespace perico::graph {

enum class GroupKind { EuclideanLattice, Fuchsian };

// Voltage of a dart: an integer pair in lattice-basis coordinates
// (euclidean-lattice) or a generator word (fuchsian).
struct Voltage {
  std::array<long long, 2> shift{0, 0};
  std::string word;
};

struct Dart {
  int u = 0, v = 0;
  Voltage voltage;
};

// Finite quotient representation of an infinite periodic graph: dart
// (u, v, g) means cover vertex (u, h) is adjacent to (v, h*g).
struct PeriodicGraph {
  GroupKind kind = GroupKind::EuclideanLattice;
  int orbit_count = 0;
  std::vector<Dart> darts;
  std::vector<std::array<double, 2>> geometry;  // per-orbit base point
  euclid::Lattice lattice{{euclid::Rational(1), euclid::Rational(0)},
                          {euclid::Rational(0), euclid::Rational(1)}};
  int lattice_rank = 2;  // 1 for line-like inputs
  std::shared_ptr<hyp::FuchsianPresentation> fuchsian;
};

struct CoverVertex {
  int orbit = 0;
  std::array<long long, 2> shift{0, 0};  // euclidean-lattice element
  hyp::MoebiusMatrix element;            // fuchsian coset representative
  std::string word;                      // generator word reaching the element
  std::array<double, 2> position{0, 0};
};

CoverVertex base_vertex(const PeriodicGraph& pg, int orbit);

// Cover vertex reached from v along the given dart (index into pg.darts;
// the dart's source orbit must be v.orbit).
CoverVertex step(const PeriodicGraph& pg, const CoverVertex& v, int dart_index);

struct Patch {
  std::vector<CoverVertex> vertices;
  std::vector<std::pair<int, int>> edges;  // index pairs, first < second
  std::vector<int> distance;               // BFS distance from the root
  std::vector<bool> interior;              // distance < radius
  int radius = 0;
  int root = 0;
};

struct Diagnostics {
  bool pass = true;
  std::vector<std::string> issues;
};

// Checks the PeriodicGraph invariants; report-valued.
Diagnostics validate_quotient(const PeriodicGraph& pg);

// Breadth-first realization of the ball of the given radius around root;
// deterministic ordering by (layer, orbit, canonical form).
Patch build_patch(const PeriodicGraph& pg, const CoverVertex& root, int radius,
                  int vertex_cap = 200000);

// Connected components of ball(R) minus ball(r) that touch the radius-R
// sphere; an end-count estimate at scale (r, R).
int estimate_ends(const PeriodicGraph& pg, int r, int R, int vertex_cap = 200000);

struct Connectivity {
  int value = 1;
  bool exact = true;  // false means "at least value"
};

// Smallest interior vertex cut whose removal leaves a boundary-avoiding
// component, searched exhaustively over cut sizes < kmax.
Connectivity patch_connectivity(const Patch& patch, int kmax);

// Finite-index subgroup T of the voltage group.
struct SubgroupDescriptor {
  GroupKind kind = GroupKind::EuclideanLattice;
  // Columns are sublattice generators in lattice-basis coordinates.
  std::array<std::array<long long, 2>, 2> mat{{{1, 0}, {0, 1}}};
  hyp::CosetTable table;
};

long long subgroup_index(const SubgroupDescriptor& T);

// Minimum over fundamental-set vertices v and nontrivial t in T of the
// cover graph distance d(v, t*v).
int shortest_noncontractible(const PeriodicGraph& pg, const SubgroupDescriptor& T,
                             int vertex_cap = 200000);

// Maximum geometric edge length over dart orbits.
double max_edge_length(const PeriodicGraph& pg);

// Canonical periodic-graph builders used across tests and the CLI corpus.
PeriodicGraph square_lattice();
PeriodicGraph path_graph();
PeriodicGraph hexagonal_lattice();
PeriodicGraph triangular_lattice();
PeriodicGraph leafed_square_lattice();
PeriodicGraph subdivided_square_lattice();
PeriodicGraph leafed_subdivided_square_lattice();
PeriodicGraph tessellation(int p, int q);  // {p,q} via the (2,p,q) triangle group

}  // namespace perico::graph
