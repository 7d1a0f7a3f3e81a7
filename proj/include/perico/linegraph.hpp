#pragma once

#include <string>
#include <vector>

#include "perico/colouring.hpp"
#include "perico/graph.hpp"

namespace perico::linegraph {

struct LineGraphResult {
  graph::PeriodicGraph lg;
  std::vector<int> dart_to_orbit;  // pg dart index -> line-graph orbit
  std::vector<int> orbit_rep_dart;  // line-graph orbit -> representative dart
};

// Line graph of a lattice periodic graph: one orbit per edge orbit, placed
// at edge midpoints.
LineGraphResult line_graph(const graph::PeriodicGraph& pg);

struct PlanarityReport {
  std::string route;  // "theorem-6.3", "theorem-6.2" or "fail"
  bool pass = false;
  std::string witness;  // reason on failure; caveat on patch-based acceptance
};

// Line-graph planarity hypotheses: exact degree bound with cut-vertex
// certification, falling back to a forbidden-subgraph scan on the patch.
PlanarityReport line_planarity_check(const graph::PeriodicGraph& pg, int radius = 6);

struct EdgeColouring {
  LineGraphResult line;
  colouring::PeriodicColouring pc;  // colouring of the line graph
  colouring::PipelineReport report;
};

EdgeColouring periodic_edge_colouring(const graph::PeriodicGraph& pg);

struct Orientation {
  // forward[r][d]: cover-vertex class r sends dart d from lower to higher
  // colour. Rows are quotient vertices (lattice) or (orbit, coset) pairs
  // (fuchsian), since there a dart's target class depends on the coset.
  std::vector<std::vector<bool>> forward;
};

// Orientation-table row of a cover vertex.
int orientation_row(const colouring::PeriodicColouring& pc,
                    const graph::PeriodicGraph& pg, const graph::CoverVertex& v);

Orientation periodic_orientation(const colouring::PeriodicColouring& pc,
                                 const graph::PeriodicGraph& pg);

}  // namespace perico::linegraph
