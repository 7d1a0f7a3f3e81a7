#pragma once

#include <utility>
#include <vector>

#include "perico/colouring.hpp"
#include "perico/graph.hpp"

namespace perico::reduction {

// An orbit of inclusion-minimal fragments: a finite connected piece whose
// removal-boundary is a minimal cutset of size 1 or 2.
struct AtomOrbit {
  std::vector<graph::CoverVertex> representative;
  std::vector<graph::CoverVertex> boundary;  // attachment points, size == case
  int connectivity_case = 1;
};

struct ReductionStep {
  int connectivity_case = 1;
  std::vector<AtomOrbit> atoms;
  std::vector<graph::Dart> inserted_darts;  // case 2 replacements (with reverses)
  std::vector<graph::Dart> merged_darts;    // insertions that already existed
  std::vector<int> orbit_map;               // old orbit -> new orbit, -1 removed
  int orbit_count_before = 0;
  int orbit_count_after = 0;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
};

std::vector<AtomOrbit> find_atom_orbits(const graph::PeriodicGraph& pg, int r0);

std::pair<graph::PeriodicGraph, ReductionStep> reduce_once(
    const graph::PeriodicGraph& pg, const std::vector<AtomOrbit>& atoms);

std::pair<graph::PeriodicGraph, ReductionTrace> reduce_to_3connected(
    const graph::PeriodicGraph& pg);

enum class PaletteMode { Reuse, Fresh };

// Extends a colouring of the reduced graph's quotient to the original
// graph's quotient modulo the same subgroup; greedy per atom vertex class.
colouring::PeriodicColouring reattach_atoms(const colouring::PeriodicColouring& pc,
                                            const graph::PeriodicGraph& original,
                                            const ReductionTrace& trace,
                                            PaletteMode mode = PaletteMode::Reuse);

}  // namespace perico::reduction
