#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perico/graph.hpp"

namespace perico::colouring {

// Finite quotient of the cover modulo a finite-index subgroup T. Vertices are
// (orbit, class) pairs; the class is a canonical residue (euclidean-lattice)
// or the root of a vertex-rotation orbit of T-cosets (fuchsian).
struct QuotientGraph {
  graph::GroupKind kind = graph::GroupKind::EuclideanLattice;
  graph::SubgroupDescriptor subgroup;
  std::vector<std::pair<int, long long>> vertices;  // (orbit, class id)
  std::vector<std::pair<int, int>> edges;           // with multiplicity, i <= j
  std::vector<std::vector<int>> adjacency;          // simple, sorted
  // Resolution data: Hermite form of the sublattice (euclidean) or the
  // coset-to-class map of the vertex rotation (fuchsian).
  std::array<std::array<long long, 2>, 2> hermite{{{1, 0}, {0, 1}}};
  std::vector<long long> zclass;

  int vertex_count() const { return (int)vertices.size(); }
};

QuotientGraph quotient_mod_subgroup(const graph::PeriodicGraph& pg,
                                    const graph::SubgroupDescriptor& T);

// Quotient index of a cover vertex under the quotient's resolution map.
int resolve(const QuotientGraph& q, const graph::PeriodicGraph& pg,
            const graph::CoverVertex& v);

// A cover vertex resolving to the given quotient index.
graph::CoverVertex representative(const QuotientGraph& q,
                                  const graph::PeriodicGraph& pg, int index);

struct QuotientColouring {
  std::vector<int> colours;
  int palette = 0;
};

enum class Strategy { ExactK, Dsatur, Unique };

// ExactK: deterministic backtracking, returns nullopt when no k-colouring
// exists; throws ResourceError when the node budget runs out first.
std::optional<QuotientColouring> colour_quotient(const QuotientGraph& q, Strategy s,
                                                 int k = 0,
                                                 long long node_budget = 5000000);

struct PeriodicColouring {
  QuotientGraph quotient;
  QuotientColouring colouring;
};

PeriodicColouring lift_colouring(const QuotientGraph& q, const QuotientColouring& qc);

int colour_of(const PeriodicColouring& pc, const graph::PeriodicGraph& pg,
              const graph::CoverVertex& v);

struct PipelineReport {
  long long index = 0;
  int palette = 0;
  std::string strategy;
  int reduction_steps = 0;
  long long genus = -1;  // hyperbolic only
  long long ringel_youngs = -1;
  hyp::BigInt thomassen_threshold = 0;
  bool meets_thomassen = false;
  double min_length = 0;  // required translation length
};

std::pair<PeriodicColouring, PipelineReport> euclid_pipeline(
    const graph::PeriodicGraph& pg);
std::pair<PeriodicColouring, PipelineReport> hyp_pipeline(
    const graph::PeriodicGraph& pg, const hyp::SubgroupSearchBudget& budget = {});

}  // namespace perico::colouring
