#include "perico/reduction.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace perico::reduction {

namespace {

constexpr int kAtomSizeCap = 4;

using Key = std::vector<std::array<long long, 3>>;  // (orbit, dx, dy), boundary tagged

struct Fragment {
  std::vector<int> vertices;  // patch indices, sorted
  std::vector<int> boundary;  // patch indices, sorted
};

// All connected interior vertex sets of size <= cap whose outside
// neighbourhood has exactly kappa vertices and stays clear of the patch rim.
std::vector<Fragment> enumerate_fragments(const graph::Patch& patch, int kappa,
                                          int cap) {
  int n = (int)patch.vertices.size();
  std::vector<std::vector<int>> adj((size_t)n);
  for (auto [a, b] : patch.edges) {
    adj[(size_t)a].push_back(b);
    adj[(size_t)b].push_back(a);
  }
  std::set<std::vector<int>> sets, frontier;
  for (int v = 0; v < n; ++v)
    if (patch.interior[(size_t)v]) frontier.insert({v});
  sets = frontier;
  for (int size = 2; size <= cap; ++size) {
    std::set<std::vector<int>> next;
    for (const std::vector<int>& f : frontier)
      for (int v : f)
        for (int w : adj[(size_t)v]) {
          if (!patch.interior[(size_t)w]) continue;
          if (std::binary_search(f.begin(), f.end(), w)) continue;
          std::vector<int> g = f;
          g.insert(std::upper_bound(g.begin(), g.end(), w), w);
          next.insert(g);
        }
    sets.insert(next.begin(), next.end());
    frontier = std::move(next);
  }

  std::vector<Fragment> out;
  for (const std::vector<int>& f : sets) {
    std::set<int> outside;
    bool clear = true;
    for (int v : f)
      for (int w : adj[(size_t)v])
        if (!std::binary_search(f.begin(), f.end(), w)) {
          outside.insert(w);
          if (patch.distance[(size_t)w] >= patch.radius - 1) clear = false;
        }
    if (!clear || (int)outside.size() != kappa) continue;
    out.push_back({f, {outside.begin(), outside.end()}});
  }

  // Inclusion-minimal fragments only.
  std::vector<Fragment> minimal;
  for (const Fragment& f : out) {
    bool keep = true;
    for (const Fragment& g : out) {
      if (g.vertices.size() >= f.vertices.size()) continue;
      if (std::includes(f.vertices.begin(), f.vertices.end(), g.vertices.begin(),
                        g.vertices.end())) {
        keep = false;
        break;
      }
    }
    if (keep) minimal.push_back(f);
  }
  return minimal;
}

Key canonical_key(const graph::Patch& patch, const Fragment& f) {
  const graph::CoverVertex* anchor = nullptr;
  for (int v : f.vertices) {
    const graph::CoverVertex& cv = patch.vertices[(size_t)v];
    if (!anchor || std::tie(cv.orbit, cv.shift) < std::tie(anchor->orbit, anchor->shift))
      anchor = &cv;
  }
  Key key;
  for (int v : f.vertices) {
    const graph::CoverVertex& cv = patch.vertices[(size_t)v];
    key.push_back({cv.orbit, cv.shift[0] - anchor->shift[0],
                   cv.shift[1] - anchor->shift[1]});
  }
  std::sort(key.begin(), key.end());
  Key bkey;
  for (int v : f.boundary) {
    const graph::CoverVertex& cv = patch.vertices[(size_t)v];
    bkey.push_back({cv.orbit, cv.shift[0] - anchor->shift[0],
                    cv.shift[1] - anchor->shift[1]});
  }
  std::sort(bkey.begin(), bkey.end());
  key.push_back({-1, 0, 0});  // separator between fragment and boundary
  key.insert(key.end(), bkey.begin(), bkey.end());
  return key;
}

}  // namespace

std::vector<AtomOrbit> find_atom_orbits(const graph::PeriodicGraph& pg, int r0) {
  if (pg.kind != graph::GroupKind::EuclideanLattice)
    throw ArgumentError("atom detection supports lattice graphs only");
  if (r0 < 2) throw ArgumentError("radius must be at least 2");

  graph::Patch patch = graph::build_patch(pg, graph::base_vertex(pg, 0), r0);
  graph::Connectivity kappa = graph::patch_connectivity(patch, 3);
  if (!kappa.exact || kappa.value > 2)
    throw ArgumentError("graph is already 3-connected at this radius");

  std::map<Key, Fragment> small;
  for (const Fragment& f : enumerate_fragments(patch, kappa.value, kAtomSizeCap)) {
    Key key = canonical_key(patch, f);
    auto it = small.find(key);
    auto rank = [&](const Fragment& fr) {
      std::pair<int, std::array<long long, 2>> best{1 << 30, {0, 0}};
      for (int v : fr.vertices) {
        const graph::CoverVertex& cv = patch.vertices[(size_t)v];
        best = std::min(best, {cv.orbit, cv.shift});
      }
      return best;
    };
    if (it == small.end() || rank(f) < rank(it->second)) small[key] = f;
  }
  if (small.empty()) throw ResourceError("no atoms found within the fragment size cap");

  // Stabilization gate: the orbit keys must be unchanged at doubled radius.
  graph::Patch big = graph::build_patch(pg, graph::base_vertex(pg, 0), 2 * r0);
  std::set<Key> big_keys;
  for (const Fragment& f : enumerate_fragments(big, kappa.value, kAtomSizeCap))
    big_keys.insert(canonical_key(big, f));
  std::set<Key> small_keys;
  for (const auto& [key, f] : small) small_keys.insert(key);
  if (small_keys != big_keys)
    throw ResourceError("atom orbits not stabilized at doubled radius; increase r0");

  std::vector<AtomOrbit> out;
  for (const auto& [key, f] : small) {
    AtomOrbit atom;
    atom.connectivity_case = kappa.value;
    for (int v : f.vertices) atom.representative.push_back(patch.vertices[(size_t)v]);
    for (int v : f.boundary) atom.boundary.push_back(patch.vertices[(size_t)v]);
    out.push_back(std::move(atom));
  }
  return out;
}

std::pair<graph::PeriodicGraph, ReductionStep> reduce_once(
    const graph::PeriodicGraph& pg, const std::vector<AtomOrbit>& atoms) {
  if (atoms.empty()) throw ArgumentError("no atoms to reduce");
  ReductionStep step;
  step.connectivity_case = atoms[0].connectivity_case;
  step.atoms = atoms;
  step.orbit_count_before = pg.orbit_count;

  std::set<int> removed;
  for (const AtomOrbit& a : atoms) {
    if (a.connectivity_case != step.connectivity_case)
      throw ArgumentError("mixed connectivity cases in one step");
    for (const graph::CoverVertex& v : a.representative) removed.insert(v.orbit);
    for (const graph::CoverVertex& b : a.boundary)
      if (removed.count(b.orbit))
        throw ArgumentError("atom boundary orbit is marked for removal");
  }
  if ((int)removed.size() >= pg.orbit_count)
    throw ArgumentError("reduction would remove every orbit");

  step.orbit_map.assign((size_t)pg.orbit_count, -1);
  int next = 0;
  for (int o = 0; o < pg.orbit_count; ++o)
    if (!removed.count(o)) step.orbit_map[(size_t)o] = next++;

  graph::PeriodicGraph out;
  out.kind = pg.kind;
  out.orbit_count = next;
  out.lattice = pg.lattice;
  out.lattice_rank = pg.lattice_rank;
  out.fuchsian = pg.fuchsian;
  if (!pg.geometry.empty())
    for (int o = 0; o < pg.orbit_count; ++o)
      if (!removed.count(o)) out.geometry.push_back(pg.geometry[(size_t)o]);

  auto has_dart = [&](const graph::Dart& d) {
    for (const graph::Dart& e : out.darts)
      if (e.u == d.u && e.v == d.v && e.voltage.shift == d.voltage.shift) return true;
    return false;
  };
  for (const graph::Dart& d : pg.darts) {
    if (removed.count(d.u) || removed.count(d.v)) continue;
    out.darts.push_back({step.orbit_map[(size_t)d.u], step.orbit_map[(size_t)d.v],
                         d.voltage});
  }
  if (step.connectivity_case == 2) {
    for (const AtomOrbit& a : atoms) {
      const graph::CoverVertex& b1 = a.boundary[0];
      const graph::CoverVertex& b2 = a.boundary[1];
      graph::Dart fwd{step.orbit_map[(size_t)b1.orbit], step.orbit_map[(size_t)b2.orbit],
                      {{b2.shift[0] - b1.shift[0], b2.shift[1] - b1.shift[1]}, ""}};
      graph::Dart rev{fwd.v, fwd.u,
                      {{-fwd.voltage.shift[0], -fwd.voltage.shift[1]}, ""}};
      for (const graph::Dart& d : {fwd, rev}) {
        if (has_dart(d)) {
          step.merged_darts.push_back(d);
        } else {
          out.darts.push_back(d);
          step.inserted_darts.push_back(d);
        }
      }
    }
  }
  step.orbit_count_after = out.orbit_count;
  if (step.orbit_count_after >= step.orbit_count_before)
    throw std::runtime_error("internal error: reduction did not shrink the graph");

  graph::Diagnostics diag = graph::validate_quotient(out);
  if (!diag.pass)
    throw std::runtime_error("internal error: reduced graph fails validation: " +
                             diag.issues[0]);
  return {out, step};
}

std::pair<graph::PeriodicGraph, ReductionTrace> reduce_to_3connected(
    const graph::PeriodicGraph& pg) {
  graph::Diagnostics diag = graph::validate_quotient(pg);
  if (!diag.pass) throw ArgumentError("input fails validation: " + diag.issues[0]);
  graph::PeriodicGraph current = pg;
  ReductionTrace trace;
  int cap = pg.orbit_count;
  for (int iter = 0; iter <= cap; ++iter) {
    graph::Patch patch =
        graph::build_patch(current, graph::base_vertex(current, 0), 6);
    graph::Connectivity kappa = graph::patch_connectivity(patch, 3);
    if (!kappa.exact || kappa.value >= 3) return {current, trace};
    std::vector<AtomOrbit> atoms = find_atom_orbits(current, 4);
    auto [next, step] = reduce_once(current, atoms);
    current = std::move(next);
    trace.steps.push_back(std::move(step));
  }
  throw std::runtime_error("internal error: reduction iteration cap exceeded");
}

colouring::PeriodicColouring reattach_atoms(const colouring::PeriodicColouring& pc,
                                            const graph::PeriodicGraph& original,
                                            const ReductionTrace& trace,
                                            PaletteMode mode) {
  // Compose the per-step orbit maps: original orbit -> final orbit or -1.
  std::vector<int> to_final((size_t)original.orbit_count);
  for (int o = 0; o < original.orbit_count; ++o) to_final[(size_t)o] = o;
  for (const ReductionStep& step : trace.steps)
    for (int& o : to_final)
      if (o != -1) o = step.orbit_map[(size_t)o];

  colouring::QuotientGraph q =
      colouring::quotient_mod_subgroup(original, pc.quotient.subgroup);
  std::vector<int> colour((size_t)q.vertex_count(), -1);
  for (int i = 0; i < q.vertex_count(); ++i) {
    auto [orbit, cls] = q.vertices[(size_t)i];
    int fo = to_final[(size_t)orbit];
    if (fo == -1) continue;
    auto it = std::lower_bound(pc.quotient.vertices.begin(),
                               pc.quotient.vertices.end(), std::make_pair(fo, cls));
    if (it == pc.quotient.vertices.end() || *it != std::make_pair(fo, cls))
      throw ArgumentError("reduced quotient does not cover a surviving class");
    colour[(size_t)i] =
        pc.colouring.colours[(size_t)(it - pc.quotient.vertices.begin())];
  }

  int palette = pc.colouring.palette;
  if (mode == PaletteMode::Reuse) {
    for (int i = 0; i < q.vertex_count(); ++i) {
      if (colour[(size_t)i] != -1) continue;
      std::set<int> used;
      for (int w : q.adjacency[(size_t)i])
        if (colour[(size_t)w] != -1) used.insert(colour[(size_t)w]);
      int c = 0;
      while (used.count(c)) ++c;
      colour[(size_t)i] = c;
      palette = std::max(palette, c + 1);
    }
  } else {
    std::map<int, int> fresh;  // removed orbit -> new colour
    for (int i = 0; i < q.vertex_count(); ++i) {
      if (colour[(size_t)i] != -1) continue;
      int orbit = q.vertices[(size_t)i].first;
      auto it = fresh.find(orbit);
      if (it == fresh.end()) it = fresh.insert({orbit, palette++}).first;
      colour[(size_t)i] = it->second;
    }
  }

  colouring::QuotientColouring qc;
  qc.colours = std::move(colour);
  qc.palette = palette;
  return colouring::lift_colouring(q, qc);
}

}  // namespace perico::reduction
