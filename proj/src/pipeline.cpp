#include <algorithm>

#include "perico/colouring.hpp"
#include "perico/reduction.hpp"

namespace perico::colouring {

namespace {

void require_one_ended(const graph::PeriodicGraph& pg) {
  graph::Diagnostics diag = graph::validate_quotient(pg);
  if (!diag.pass)
    throw ArgumentError("validation stage failed: " + diag.issues[0]);
  int inner = pg.kind == graph::GroupKind::EuclideanLattice ? 2 : 1;
  int ends = graph::estimate_ends(pg, inner, inner + 2);
  if (ends != 1)
    throw ArgumentError("end-count stage: pipeline requires a one-ended graph, "
                        "estimated " + std::to_string(ends) + " ends");
}

bool meets_threshold(const graph::PeriodicGraph& pg,
                     const graph::SubgroupDescriptor& T, const hyp::BigInt& bound) {
  try {
    return hyp::BigInt(graph::shortest_noncontractible(pg, T)) >= bound;
  } catch (const ResourceError&) {
    return false;
  }
}

}  // namespace

std::pair<PeriodicColouring, PipelineReport> euclid_pipeline(
    const graph::PeriodicGraph& pg) {
  if (pg.kind != graph::GroupKind::EuclideanLattice)
    throw ArgumentError("euclid pipeline needs a lattice graph");
  require_one_ended(pg);

  auto [reduced, trace] = reduction::reduce_to_3connected(pg);

  PipelineReport report;
  report.reduction_steps = (int)trace.steps.size();
  report.min_length = graph::max_edge_length(reduced) * (1.0 + 1e-9);
  euclid::SublatticeChoice choice =
      euclid::sublattice_for_length(reduced.lattice, report.min_length);

  graph::SubgroupDescriptor T;
  std::optional<QuotientGraph> quotient;
  std::optional<QuotientColouring> qc;
  // Doubling loop: enlarge the sublattice until the quotient is loop-free
  // and a 5-colouring is found, then fall back to dsatur.
  for (long long f = 1; f <= 8; f *= 2) {
    graph::SubgroupDescriptor cand;
    cand.mat = choice.mat;
    for (auto& row : cand.mat)
      for (long long& x : row) x *= f;
    QuotientGraph q;
    try {
      q = quotient_mod_subgroup(reduced, cand);
    } catch (const ArgumentError&) {
      continue;  // loops at this index; enlarge
    }
    if (!quotient) {
      quotient = q;
      T = cand;
    }
    try {
      std::optional<QuotientColouring> attempt = colour_quotient(q, Strategy::ExactK, 5);
      if (attempt) {
        quotient = q;
        T = cand;
        qc = attempt;
        report.strategy = "exact-5";
        break;
      }
    } catch (const ResourceError&) {
    }
  }
  if (!quotient)
    throw ArgumentError("quotient stage: no loop-free sublattice found while doubling");
  if (!qc) {
    qc = colour_quotient(*quotient, Strategy::Dsatur);
    report.strategy = "dsatur";
  }

  PeriodicColouring pc = lift_colouring(*quotient, *qc);
  if (!trace.steps.empty()) pc = reduction::reattach_atoms(pc, pg, trace);

  report.index = graph::subgroup_index(T);
  report.palette = pc.colouring.palette;
  report.genus = 1;  // torus quotient surface
  hyp::ColourBudget budget = hyp::colour_budget(1);
  report.ringel_youngs = budget.ringel_youngs;
  report.thomassen_threshold = budget.thomassen_threshold;
  report.meets_thomassen = meets_threshold(reduced, T, budget.thomassen_threshold);
  return {pc, report};
}

std::pair<PeriodicColouring, PipelineReport> hyp_pipeline(
    const graph::PeriodicGraph& pg, const hyp::SubgroupSearchBudget& budget) {
  if (pg.kind != graph::GroupKind::Fuchsian)
    throw ArgumentError("hyperbolic pipeline needs a fuchsian graph");
  require_one_ended(pg);

  graph::Patch patch = graph::build_patch(pg, graph::base_vertex(pg, 0), 3);
  graph::Connectivity kappa = graph::patch_connectivity(patch, 3);
  if (kappa.exact && kappa.value < 3)
    throw ArgumentError("connectivity stage: reduction of hyperbolic inputs "
                        "is not supported");

  PipelineReport report;
  report.min_length = graph::max_edge_length(pg) * (1.0 + 1e-9);
  auto [table, cert] = hyp::subgroup_avoiding_short(*pg.fuchsian, report.min_length,
                                                    budget);
  graph::SubgroupDescriptor T;
  T.kind = graph::GroupKind::Fuchsian;
  T.table = table;

  QuotientGraph q = quotient_mod_subgroup(pg, T);
  std::optional<QuotientColouring> qc = colour_quotient(q, Strategy::Dsatur);
  report.strategy = "dsatur";
  if (!qc) {
    qc = colour_quotient(q, Strategy::Unique);
    report.strategy = "unique";
  }

  PeriodicColouring pc = lift_colouring(q, *qc);
  report.index = table.degree;
  report.palette = qc->palette;
  hyp::Signature sig{pg.fuchsian->genus, pg.fuchsian->periods};
  report.genus = hyp::riemann_hurwitz_genus(sig, table.degree);
  if (report.genus >= 1) {
    hyp::ColourBudget cb = hyp::colour_budget(report.genus);
    report.ringel_youngs = cb.ringel_youngs;
    report.thomassen_threshold = cb.thomassen_threshold;
    report.meets_thomassen = meets_threshold(pg, T, cb.thomassen_threshold);
  }
  return {pc, report};
}

}  // namespace perico::colouring
