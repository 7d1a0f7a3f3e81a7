#include "perico/linegraph.hpp"

#include <algorithm>
#include <set>

#include "perico/euclid.hpp"
#include "perico/verify.hpp"

namespace perico::linegraph {

namespace {

std::vector<int> reverse_pairing(const graph::PeriodicGraph& pg) {
  int nd = (int)pg.darts.size();
  std::vector<int> rev((size_t)nd, -1);
  for (int i = 0; i < nd; ++i) {
    const graph::Dart& d = pg.darts[(size_t)i];
    for (int j = 0; j < nd; ++j) {
      const graph::Dart& e = pg.darts[(size_t)j];
      if (e.u == d.v && e.v == d.u && e.voltage.shift[0] == -d.voltage.shift[0] &&
          e.voltage.shift[1] == -d.voltage.shift[1]) {
        rev[(size_t)i] = j;
        break;
      }
    }
  }
  return rev;
}

std::vector<int> orbit_degrees(const graph::PeriodicGraph& pg) {
  std::vector<int> deg((size_t)pg.orbit_count, 0);
  for (const graph::Dart& d : pg.darts) ++deg[(size_t)d.u];
  return deg;
}

}  // namespace

LineGraphResult line_graph(const graph::PeriodicGraph& pg) {
  if (pg.kind != graph::GroupKind::EuclideanLattice)
    throw ArgumentError("line graphs are supported for lattice graphs only");
  graph::Diagnostics diag = graph::validate_quotient(pg);
  if (!diag.pass)
    throw ArgumentError("invalid quotient: " + diag.issues.front());

  int nd = (int)pg.darts.size();
  LineGraphResult res;
  res.dart_to_orbit.assign((size_t)nd, -1);
  std::vector<int> rev = reverse_pairing(pg);
  for (int i = 0; i < nd; ++i) {
    if (res.dart_to_orbit[(size_t)i] != -1) continue;
    int e = (int)res.orbit_rep_dart.size();
    res.orbit_rep_dart.push_back(i);
    res.dart_to_orbit[(size_t)i] = e;
    res.dart_to_orbit[(size_t)rev[(size_t)i]] = e;
  }

  // Anchor offset of a dart within its edge orbit: zero at the representative,
  // minus the representative's shift at its reverse.
  auto anchor = [&](int d) -> std::array<long long, 2> {
    int r = res.orbit_rep_dart[(size_t)res.dart_to_orbit[(size_t)d]];
    if (d == r) return {0, 0};
    const auto& s = pg.darts[(size_t)r].voltage.shift;
    return {-s[0], -s[1]};
  };

  graph::PeriodicGraph& lg = res.lg;
  lg.kind = graph::GroupKind::EuclideanLattice;
  lg.orbit_count = (int)res.orbit_rep_dart.size();
  lg.lattice = pg.lattice;
  lg.lattice_rank = pg.lattice_rank;

  double b[2][2] = {{euclid::to_double(pg.lattice.b1[0]),
                     euclid::to_double(pg.lattice.b2[0])},
                    {euclid::to_double(pg.lattice.b1[1]),
                     euclid::to_double(pg.lattice.b2[1])}};
  for (int r : res.orbit_rep_dart) {
    const graph::Dart& d = pg.darts[(size_t)r];
    std::array<double, 2> pu = pg.geometry.empty()
                                   ? std::array<double, 2>{0, 0}
                                   : pg.geometry[(size_t)d.u];
    std::array<double, 2> pv = pg.geometry.empty()
                                   ? std::array<double, 2>{0, 0}
                                   : pg.geometry[(size_t)d.v];
    const auto& s = d.voltage.shift;
    lg.geometry.push_back(
        {(pu[0] + pv[0] + b[0][0] * (double)s[0] + b[0][1] * (double)s[1]) / 2,
         (pu[1] + pv[1] + b[1][0] * (double)s[0] + b[1][1] * (double)s[1]) / 2});
  }

  for (int e = 0; e < lg.orbit_count; ++e) {
    int r = res.orbit_rep_dart[(size_t)e];
    const graph::Dart& rep = pg.darts[(size_t)r];
    for (int d = 0; d < nd; ++d) {
      std::array<long long, 2> a = anchor(d);
      if (pg.darts[(size_t)d].u == rep.u && d != r) {
        graph::Dart nd2;
        nd2.u = e;
        nd2.v = res.dart_to_orbit[(size_t)d];
        nd2.voltage.shift = a;
        lg.darts.push_back(nd2);
      }
      if (pg.darts[(size_t)d].u == rep.v && d != rev[(size_t)r]) {
        graph::Dart nd2;
        nd2.u = e;
        nd2.v = res.dart_to_orbit[(size_t)d];
        nd2.voltage.shift = {rep.voltage.shift[0] + a[0],
                             rep.voltage.shift[1] + a[1]};
        lg.darts.push_back(nd2);
      }
    }
  }

  graph::Diagnostics out = graph::validate_quotient(lg);
  if (!out.pass)
    throw std::runtime_error("internal error: line graph fails validation: " +
                             out.issues.front());
  return res;
}

namespace {

// Forbidden-subgraph scan on a patch; returns a witness string or empty.
std::string forbidden_subgraph_witness(const graph::Patch& patch) {
  int n = (int)patch.vertices.size();
  std::vector<std::vector<int>> adj((size_t)n);
  for (auto [a, b] : patch.edges) {
    adj[(size_t)a].push_back(b);
    adj[(size_t)b].push_back(a);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  auto adjacent = [&](int a, int b) {
    return std::binary_search(adj[(size_t)a].begin(), adj[(size_t)a].end(), b);
  };

  for (int v = 0; v < n; ++v) {
    if (!patch.interior[(size_t)v]) continue;
    if ((int)adj[(size_t)v].size() >= 5)
      return "vertex of orbit " + std::to_string(patch.vertices[(size_t)v].orbit) +
             " has degree " + std::to_string(adj[(size_t)v].size()) +
             ": contains K_{1,5}";
  }
  // Adjacent pair with three common neighbours.
  for (int v = 0; v < n; ++v) {
    if (!patch.interior[(size_t)v]) continue;
    for (int w : adj[(size_t)v]) {
      if (w <= v || !patch.interior[(size_t)w]) continue;
      int common = 0;
      for (int x : adj[(size_t)v])
        if (x != w && adjacent(w, x)) ++common;
      if (common >= 3)
        return "adjacent vertices of orbits " +
               std::to_string(patch.vertices[(size_t)v].orbit) + " and " +
               std::to_string(patch.vertices[(size_t)w].orbit) +
               " share three neighbours";
    }
  }
  // Induced path on all four neighbours of a degree-4 vertex.
  for (int v = 0; v < n; ++v) {
    if (!patch.interior[(size_t)v] || adj[(size_t)v].size() != 4) continue;
    std::vector<int> nb = adj[(size_t)v];
    std::sort(nb.begin(), nb.end());
    do {
      bool path = adjacent(nb[0], nb[1]) && adjacent(nb[1], nb[2]) &&
                  adjacent(nb[2], nb[3]) && !adjacent(nb[0], nb[2]) &&
                  !adjacent(nb[0], nb[3]) && !adjacent(nb[1], nb[3]);
      if (path)
        return "neighbourhood of a vertex of orbit " +
               std::to_string(patch.vertices[(size_t)v].orbit) +
               " induces a path on four vertices";
    } while (std::next_permutation(nb.begin(), nb.end()));
  }
  // Three vertices with three common neighbours (K_{3,3}).
  std::vector<int> cand;
  for (int v = 0; v < n; ++v)
    if (adj[(size_t)v].size() >= 3) cand.push_back(v);
  for (size_t i = 0; i < cand.size(); ++i)
    for (size_t j = i + 1; j < cand.size(); ++j) {
      std::vector<int> common;
      std::set_intersection(adj[(size_t)cand[i]].begin(), adj[(size_t)cand[i]].end(),
                            adj[(size_t)cand[j]].begin(), adj[(size_t)cand[j]].end(),
                            std::back_inserter(common));
      if (common.size() < 3) continue;
      for (size_t k = j + 1; k < cand.size(); ++k) {
        int hits = 0;
        for (int x : common)
          if (std::binary_search(adj[(size_t)cand[k]].begin(),
                                 adj[(size_t)cand[k]].end(), x))
            ++hits;
        if (hits >= 3) return "three vertices share three neighbours (K_{3,3})";
      }
    }
  return "";
}

}  // namespace

PlanarityReport line_planarity_check(const graph::PeriodicGraph& pg, int radius) {
  if (radius < 4) throw ArgumentError("planarity check needs radius >= 4");
  graph::Diagnostics diag = graph::validate_quotient(pg);
  if (!diag.pass)
    throw ArgumentError("invalid quotient: " + diag.issues.front());

  std::vector<int> deg = orbit_degrees(pg);
  int maxdeg = *std::max_element(deg.begin(), deg.end());
  PlanarityReport rep;
  if (maxdeg <= 3) {
    rep.route = "theorem-6.3";
    rep.pass = true;
    return rep;
  }
  for (int o = 0; o < pg.orbit_count; ++o)
    if (deg[(size_t)o] >= 5) {
      rep.route = "fail";
      rep.witness = "orbit " + std::to_string(o) + " has degree " +
                    std::to_string(deg[(size_t)o]) + ": contains K_{1,5}";
      return rep;
    }

  // Maximum degree four: every degree-four vertex must be a cut vertex.
  bool indeterminate = false;
  for (int o = 0; o < pg.orbit_count; ++o) {
    if (deg[(size_t)o] != 4) continue;
    graph::Patch patch = graph::build_patch(pg, graph::base_vertex(pg, o), radius);
    int n = (int)patch.vertices.size();
    std::vector<std::vector<int>> adj((size_t)n);
    for (auto [a, b] : patch.edges) {
      adj[(size_t)a].push_back(b);
      adj[(size_t)b].push_back(a);
    }
    // Components of the patch minus the root.
    std::vector<int> comp((size_t)n, -1);
    comp[(size_t)patch.root] = -2;
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
      if (comp[(size_t)s] != -1) continue;
      std::vector<int> stack{s};
      comp[(size_t)s] = ncomp;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[(size_t)v])
          if (comp[(size_t)w] == -1) {
            comp[(size_t)w] = ncomp;
            stack.push_back(w);
          }
      }
      ++ncomp;
    }
    std::vector<bool> touches_rim((size_t)ncomp, false);
    for (int v = 0; v < n; ++v)
      if (comp[(size_t)v] >= 0 && patch.distance[(size_t)v] == patch.radius)
        touches_rim[(size_t)comp[(size_t)v]] = true;
    bool certified_cut = false;
    for (int c = 0; c < ncomp; ++c)
      if (!touches_rim[(size_t)c]) certified_cut = true;
    if (certified_cut) continue;
    std::set<int> neighbour_comps;
    for (int w : adj[(size_t)patch.root]) neighbour_comps.insert(comp[(size_t)w]);
    if (neighbour_comps.size() == 1) {
      rep.route = "fail";
      rep.witness =
          "degree-4 vertex of orbit " + std::to_string(o) + " is not a cut vertex";
      return rep;
    }
    indeterminate = true;
  }
  if (!indeterminate) {
    rep.route = "theorem-6.3";
    rep.pass = true;
    return rep;
  }
  graph::Patch patch = graph::build_patch(pg, graph::base_vertex(pg, 0), radius);
  std::string witness = forbidden_subgraph_witness(patch);
  if (!witness.empty()) {
    rep.route = "fail";
    rep.witness = witness;
    return rep;
  }
  rep.route = "theorem-6.2";
  rep.pass = true;
  rep.witness = "no witness within radius " + std::to_string(radius);
  return rep;
}

EdgeColouring periodic_edge_colouring(const graph::PeriodicGraph& pg) {
  PlanarityReport planar = line_planarity_check(pg);
  if (!planar.pass)
    throw ArgumentError("unsupported input for edge colouring: " + planar.witness);
  EdgeColouring ec;
  ec.line = line_graph(pg);
  auto [pc, report] = colouring::euclid_pipeline(ec.line.lg);
  ec.pc = std::move(pc);
  ec.report = std::move(report);
  return ec;
}

namespace {

int colour_at(const colouring::PeriodicColouring& pc, int orbit, long long cls) {
  const auto& vs = pc.quotient.vertices;
  auto it = std::lower_bound(vs.begin(), vs.end(), std::make_pair(orbit, cls));
  if (it == vs.end() || *it != std::make_pair(orbit, cls))
    throw ArgumentError("cover vertex resolves outside the quotient");
  return pc.colouring.colours[(size_t)(it - vs.begin())];
}

}  // namespace

int orientation_row(const colouring::PeriodicColouring& pc,
                    const graph::PeriodicGraph& pg, const graph::CoverVertex& v) {
  if (pc.quotient.kind == graph::GroupKind::EuclideanLattice)
    return colouring::resolve(pc.quotient, pg, v);
  int degree = pc.quotient.subgroup.table.degree;
  return v.orbit * degree + pc.quotient.subgroup.table.act_word(0, v.word);
}

Orientation periodic_orientation(const colouring::PeriodicColouring& pc,
                                 const graph::PeriodicGraph& pg) {
  Orientation o;
  if (pc.quotient.kind == graph::GroupKind::EuclideanLattice) {
    int nq = pc.quotient.vertex_count();
    o.forward.assign((size_t)nq, std::vector<bool>(pg.darts.size(), false));
    for (int q = 0; q < nq; ++q) {
      graph::CoverVertex v = colouring::representative(pc.quotient, pg, q);
      int cv = pc.colouring.colours[(size_t)q];
      for (int d = 0; d < (int)pg.darts.size(); ++d) {
        if (pg.darts[(size_t)d].u != v.orbit) continue;
        graph::CoverVertex w = graph::step(pg, v, d);
        int cw = colouring::colour_of(pc, pg, w);
        if (cw == cv)
          throw ArgumentError(
              "colouring is not proper: monochromatic edge at orbit " +
              std::to_string(v.orbit));
        o.forward[(size_t)q][(size_t)d] = cv < cw;
      }
    }
    return o;
  }
  const hyp::CosetTable& table = pc.quotient.subgroup.table;
  const std::vector<long long>& zclass = pc.quotient.zclass;
  o.forward.assign((size_t)(pg.orbit_count * table.degree),
                   std::vector<bool>(pg.darts.size(), false));
  for (int orbit = 0; orbit < pg.orbit_count; ++orbit)
    for (int c = 0; c < table.degree; ++c) {
      int cv = colour_at(pc, orbit, zclass[(size_t)c]);
      for (int d = 0; d < (int)pg.darts.size(); ++d) {
        const graph::Dart& dart = pg.darts[(size_t)d];
        if (dart.u != orbit) continue;
        int cw = colour_at(pc, dart.v,
                           zclass[(size_t)table.act_word(c, dart.voltage.word)]);
        if (cw == cv)
          throw ArgumentError(
              "colouring is not proper: monochromatic edge at orbit " +
              std::to_string(orbit));
        o.forward[(size_t)(orbit * table.degree + c)][(size_t)d] = cv < cw;
      }
    }
  return o;
}

}  // namespace perico::linegraph
