#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "perico/colouring.hpp"

namespace perico::verify {

struct ProperReport {
  bool pass = true;
  // Monochromatic edges as patch vertex-index pairs plus readable labels.
  std::vector<std::pair<int, int>> monochromatic;
  std::vector<std::string> details;
  int vertices_checked = 0;
  int edges_checked = 0;
};

ProperReport check_proper(const colouring::PeriodicColouring& pc,
                          const graph::PeriodicGraph& pg, int radius);

// Optional override of the colour-resolution map; used to inject corrupted
// resolutions as negative controls.
using ColourFn = std::function<int(const graph::PeriodicGraph&,
                                   const graph::CoverVertex&)>;

struct PeriodicReport {
  bool pass = true;
  int samples = 0;
  std::vector<std::string> failures;
  int classes_seen = 0;
};

PeriodicReport check_periodic(const colouring::PeriodicColouring& pc,
                              const graph::PeriodicGraph& pg, int sample,
                              unsigned seed = 12345, const ColourFn& fn = {});

// Exact chromatic number by exhaustive search; at most 14 vertices.
int brute_force_chromatic(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace perico::verify
