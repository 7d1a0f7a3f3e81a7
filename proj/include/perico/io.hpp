#pragma once

#include <string>
#include <vector>

#include "perico/colouring.hpp"
#include "perico/graph.hpp"
#include "perico/linegraph.hpp"
#include "perico/reduction.hpp"

namespace perico::io {

// JSON graph format: {"kind", "orbits", "darts", "geometry", "group"}.
// Voltages are integer pairs (euclidean-lattice) or generator words
// (fuchsian). Parsing validates all quotient invariants.
graph::PeriodicGraph parse_periodic_graph(const std::string& text);
std::string serialize(const graph::PeriodicGraph& pg);

// JSON colouring format: {"subgroup", "colours", "palette"}. Parsing
// rebuilds the quotient modulo the stored subgroup and checks sizes.
colouring::PeriodicColouring parse_periodic_colouring(
    const std::string& text, const graph::PeriodicGraph& pg);
std::string serialize(const colouring::PeriodicColouring& pc);

std::string serialize(const linegraph::Orientation& o);
std::string serialize(const reduction::ReductionTrace& trace);

enum class RenderMode { Euclidean, Poincare };

// Deterministic SVG: coloured vertex discs, straight edges (euclidean) or
// circular arcs orthogonal to the unit circle (poincare). A null colouring
// renders monochrome.
std::string render_svg(const graph::PeriodicGraph& pg,
                       const colouring::PeriodicColouring* pc, int radius,
                       RenderMode mode);

// Bundled example corpus.
std::vector<std::string> example_names();
graph::PeriodicGraph example_graph(const std::string& name);

}  // namespace perico::io
