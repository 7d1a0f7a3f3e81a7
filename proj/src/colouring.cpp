#include "perico/colouring.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "perico/euclid.hpp"

namespace perico::colouring {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

// Canonical residue of a shift modulo the column lattice of the Hermite form
// [[d1,0],[k,d2]]; encoded as x*d2 + y with 0 <= x < d1, 0 <= y < d2.
long long residue_of(const std::array<std::array<long long, 2>, 2>& h,
                     std::array<long long, 2> s) {
  long long t = floor_div(s[0], h[0][0]);
  s[0] -= t * h[0][0];
  s[1] -= t * h[1][0];
  s[1] -= floor_div(s[1], h[1][1]) * h[1][1];
  return s[0] * h[1][1] + s[1];
}

std::array<long long, 2> residue_shift(const std::array<std::array<long long, 2>, 2>& h,
                                       long long residue) {
  return {residue / h[1][1], residue % h[1][1]};
}

std::vector<long long> zclass_map(const hyp::CosetTable& table, const std::string& z) {
  std::vector<long long> cls(table.degree, -1);
  for (int s = 0; s < table.degree; ++s) {
    if (cls[s] != -1) continue;
    int c = s;
    do {
      cls[c] = s;
      c = table.act(c, z);
    } while (c != s);
  }
  return cls;
}

int vertex_index(const QuotientGraph& q, int orbit, long long cls) {
  auto it = std::lower_bound(q.vertices.begin(), q.vertices.end(),
                             std::make_pair(orbit, cls));
  if (it == q.vertices.end() || *it != std::make_pair(orbit, cls))
    throw ArgumentError("cover vertex resolves outside the quotient");
  return (int)(it - q.vertices.begin());
}

}  // namespace

QuotientGraph quotient_mod_subgroup(const graph::PeriodicGraph& pg,
                                    const graph::SubgroupDescriptor& T) {
  if (pg.kind != T.kind) throw ArgumentError("subgroup kind does not match the graph");
  QuotientGraph q;
  q.kind = pg.kind;
  q.subgroup = T;

  std::vector<std::vector<int>> out((size_t)pg.orbit_count);
  for (size_t i = 0; i < pg.darts.size(); ++i) out[pg.darts[i].u].push_back((int)i);

  if (pg.kind == graph::GroupKind::EuclideanLattice) {
    if (pg.lattice_rank != 2)
      throw ArgumentError("sublattice quotients need a rank-2 voltage lattice");
    long long det = graph::subgroup_index(T);
    q.hermite = euclid::hermite_form(T.mat);
    for (int o = 0; o < pg.orbit_count; ++o)
      for (long long r = 0; r < det; ++r) q.vertices.emplace_back(o, r);
  } else {
    if (!pg.fuchsian) throw ArgumentError("fuchsian graph lacks a presentation");
    q.zclass = zclass_map(T.table, pg.fuchsian->vertex_rotation);
    for (int o = 0; o < pg.orbit_count; ++o)
      for (int c = 0; c < T.table.degree; ++c)
        if (q.zclass[(size_t)c] == c) q.vertices.emplace_back(o, c);
  }
  std::sort(q.vertices.begin(), q.vertices.end());

  std::map<std::pair<int, int>, int> directed;
  for (int i = 0; i < q.vertex_count(); ++i) {
    auto [orbit, cls] = q.vertices[(size_t)i];
    for (int di : out[(size_t)orbit]) {
      const graph::Dart& d = pg.darts[(size_t)di];
      long long target_cls;
      if (pg.kind == graph::GroupKind::EuclideanLattice) {
        std::array<long long, 2> s = residue_shift(q.hermite, cls);
        target_cls = residue_of(
            q.hermite, {s[0] + d.voltage.shift[0], s[1] + d.voltage.shift[1]});
      } else {
        target_cls = q.zclass[(size_t)T.table.act_word((int)cls, d.voltage.word)];
      }
      int j = vertex_index(q, d.v, target_cls);
      if (j == i)
        throw ArgumentError("subgroup too small: same-orbit adjacency in orbit " +
                            std::to_string(orbit));
      directed[{std::min(i, j), std::max(i, j)}] += 1;
    }
  }

  q.adjacency.resize((size_t)q.vertex_count());
  for (auto& [pair, count] : directed) {
    for (int m = 0; m < count / 2; ++m) q.edges.push_back(pair);
    q.adjacency[(size_t)pair.first].push_back(pair.second);
    q.adjacency[(size_t)pair.second].push_back(pair.first);
  }
  for (auto& nbrs : q.adjacency) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return q;
}

int resolve(const QuotientGraph& q, const graph::PeriodicGraph& pg,
            const graph::CoverVertex& v) {
  if (q.kind == graph::GroupKind::EuclideanLattice)
    return vertex_index(q, v.orbit, residue_of(q.hermite, v.shift));
  int coset = q.subgroup.table.act_word(0, v.word);
  (void)pg;
  return vertex_index(q, v.orbit, q.zclass[(size_t)coset]);
}

graph::CoverVertex representative(const QuotientGraph& q,
                                  const graph::PeriodicGraph& pg, int index) {
  if (index < 0 || index >= q.vertex_count())
    throw ArgumentError("quotient vertex index out of range");
  auto [orbit, cls] = q.vertices[(size_t)index];
  graph::CoverVertex v = graph::base_vertex(pg, orbit);
  if (q.kind == graph::GroupKind::EuclideanLattice) {
    v.shift = residue_shift(q.hermite, cls);
    v.position[0] += euclid::to_double(pg.lattice.b1[0]) * (double)v.shift[0] +
                     euclid::to_double(pg.lattice.b2[0]) * (double)v.shift[1];
    v.position[1] += euclid::to_double(pg.lattice.b1[1]) * (double)v.shift[0] +
                     euclid::to_double(pg.lattice.b2[1]) * (double)v.shift[1];
  } else {
    std::vector<std::string> reps =
        hyp::coset_representatives(*pg.fuchsian, q.subgroup.table);
    v.word = reps[(size_t)cls];
    v.element = hyp::evaluate_word(*pg.fuchsian, v.word);
    hyp::Complex p =
        hyp::apply_disc(v.element, hyp::Complex(v.position[0], v.position[1]));
    v.position = {p.real(), p.imag()};
  }
  return v;
}

namespace {

std::optional<QuotientColouring> exact_k(const QuotientGraph& q, int k,
                                         long long node_budget) {
  if (k < 1) throw ArgumentError("exact-k needs k >= 1");
  int n = q.vertex_count();
  std::vector<int> colour((size_t)n, -1);
  long long nodes = 0;
  // Deterministic backtracking: lowest-numbered vertex next, lowest colour
  // first.
  int v = 0;
  std::vector<int> next_try((size_t)n, 0);
  while (v >= 0 && v < n) {
    if (++nodes > node_budget)
      throw ResourceError("exact-k node budget exhausted: none found within budget");
    int c = next_try[(size_t)v];
    bool placed = false;
    for (; c < k; ++c) {
      bool ok = true;
      for (int w : q.adjacency[(size_t)v])
        if (colour[(size_t)w] == c) {
          ok = false;
          break;
        }
      if (ok) {
        colour[(size_t)v] = c;
        next_try[(size_t)v] = c + 1;
        placed = true;
        break;
      }
    }
    if (placed) {
      ++v;
      if (v < n) next_try[(size_t)v] = 0;
    } else {
      colour[(size_t)v] = -1;
      next_try[(size_t)v] = 0;
      --v;
      if (v >= 0) colour[(size_t)v] = -1;
    }
  }
  if (v < 0) return std::nullopt;
  QuotientColouring qc;
  qc.colours = colour;
  qc.palette = n == 0 ? 0 : *std::max_element(colour.begin(), colour.end()) + 1;
  return qc;
}

QuotientColouring dsatur(const QuotientGraph& q) {
  int n = q.vertex_count();
  std::vector<int> colour((size_t)n, -1);
  std::vector<std::set<int>> seen((size_t)n);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v) {
      if (colour[(size_t)v] != -1) continue;
      if (pick == -1) {
        pick = v;
        continue;
      }
      size_t sv = seen[(size_t)v].size(), sp = seen[(size_t)pick].size();
      size_t dv = q.adjacency[(size_t)v].size(), dp = q.adjacency[(size_t)pick].size();
      if (sv > sp || (sv == sp && (dv > dp || (dv == dp && v < pick)))) pick = v;
    }
    int c = 0;
    while (seen[(size_t)pick].count(c)) ++c;
    colour[(size_t)pick] = c;
    for (int w : q.adjacency[(size_t)pick]) seen[(size_t)w].insert(c);
  }
  QuotientColouring qc;
  qc.colours = colour;
  qc.palette = n == 0 ? 0 : *std::max_element(colour.begin(), colour.end()) + 1;
  return qc;
}

}  // namespace

std::optional<QuotientColouring> colour_quotient(const QuotientGraph& q, Strategy s,
                                                 int k, long long node_budget) {
  for (int v = 0; v < q.vertex_count(); ++v)
    for (int w : q.adjacency[(size_t)v])
      if (w == v) throw ArgumentError("quotient has a loop");
  switch (s) {
    case Strategy::ExactK:
      return exact_k(q, k, node_budget);
    case Strategy::Dsatur:
      return dsatur(q);
    case Strategy::Unique: {
      QuotientColouring qc;
      qc.palette = q.vertex_count();
      qc.colours.resize((size_t)q.vertex_count());
      for (int v = 0; v < q.vertex_count(); ++v) qc.colours[(size_t)v] = v;
      return qc;
    }
  }
  throw ArgumentError("unknown strategy");
}

PeriodicColouring lift_colouring(const QuotientGraph& q, const QuotientColouring& qc) {
  if ((int)qc.colours.size() != q.vertex_count())
    throw ArgumentError("colouring size does not match the quotient");
  return PeriodicColouring{q, qc};
}

int colour_of(const PeriodicColouring& pc, const graph::PeriodicGraph& pg,
              const graph::CoverVertex& v) {
  return pc.colouring.colours[(size_t)resolve(pc.quotient, pg, v)];
}

}  // namespace perico::colouring
