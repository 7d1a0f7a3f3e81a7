#include "perico/graph.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <set>

namespace perico::graph {

namespace {

using hyp::Complex;

struct VKey {
  int orbit;
  long long a, b;
  auto operator<=>(const VKey&) const = default;
};

std::array<std::array<double, 2>, 2> double_basis(const PeriodicGraph& pg) {
  return {{{euclid::to_double(pg.lattice.b1[0]), euclid::to_double(pg.lattice.b2[0])},
           {euclid::to_double(pg.lattice.b1[1]), euclid::to_double(pg.lattice.b2[1])}}};
}

std::array<double, 2> orbit_base(const PeriodicGraph& pg, int orbit) {
  if (pg.geometry.empty()) return {0, 0};
  return pg.geometry[(size_t)orbit];
}

std::array<double, 2> euclid_position(const PeriodicGraph& pg,
                                      const std::array<std::array<double, 2>, 2>& B,
                                      int orbit, const std::array<long long, 2>& s) {
  std::array<double, 2> base = orbit_base(pg, orbit);
  return {base[0] + B[0][0] * s[0] + B[0][1] * s[1],
          base[1] + B[1][0] * s[0] + B[1][1] * s[1]};
}

long long quantize(double x) { return std::llround(x * 1e6); }

// Realization context: cached dart matrices and out-dart lists.
struct Ctx {
  const PeriodicGraph& pg;
  std::array<std::array<double, 2>, 2> B;
  std::vector<hyp::MoebiusMatrix> dart_mats;
  std::vector<std::vector<int>> out;  // dart indices per source orbit

  explicit Ctx(const PeriodicGraph& g) : pg(g), B(double_basis(g)), out(g.orbit_count) {
    if (pg.kind == GroupKind::Fuchsian) {
      if (!pg.fuchsian) throw ArgumentError("fuchsian graph lacks a presentation");
      if (pg.geometry.empty()) throw ArgumentError("fuchsian graph lacks geometry");
      dart_mats.reserve(pg.darts.size());
      for (const Dart& d : pg.darts)
        dart_mats.push_back(hyp::evaluate_word(*pg.fuchsian, d.voltage.word));
    }
    for (size_t i = 0; i < pg.darts.size(); ++i) out[pg.darts[i].u].push_back((int)i);
  }

  CoverVertex root_vertex(int orbit) const {
    CoverVertex v;
    v.orbit = orbit;
    v.element = hyp::MoebiusMatrix::identity();
    v.position = orbit_base(pg, orbit);
    return v;
  }

  VKey key_of(const CoverVertex& v) const {
    if (pg.kind == GroupKind::EuclideanLattice)
      return {v.orbit, v.shift[0], v.shift[1]};
    return {v.orbit, quantize(v.position[0]), quantize(v.position[1])};
  }

  CoverVertex step(const CoverVertex& v, int dart_index) const {
    const Dart& d = pg.darts[(size_t)dart_index];
    CoverVertex w;
    w.orbit = d.v;
    if (pg.kind == GroupKind::EuclideanLattice) {
      w.shift = {v.shift[0] + d.voltage.shift[0], v.shift[1] + d.voltage.shift[1]};
      w.position = euclid_position(pg, B, w.orbit, w.shift);
    } else {
      w.element = hyp::multiply(v.element, dart_mats[(size_t)dart_index]);
      w.word = v.word + d.voltage.word;
      std::array<double, 2> base = orbit_base(pg, w.orbit);
      Complex p = hyp::apply_disc(w.element, Complex(base[0], base[1]));
      w.position = {p.real(), p.imag()};
    }
    return w;
  }
};

}  // namespace

CoverVertex base_vertex(const PeriodicGraph& pg, int orbit) {
  if (orbit < 0 || orbit >= pg.orbit_count) throw ArgumentError("orbit out of range");
  Ctx ctx(pg);
  return ctx.root_vertex(orbit);
}

CoverVertex step(const PeriodicGraph& pg, const CoverVertex& v, int dart_index) {
  if (dart_index < 0 || dart_index >= (int)pg.darts.size())
    throw ArgumentError("dart index out of range");
  if (pg.darts[(size_t)dart_index].u != v.orbit)
    throw ArgumentError("dart does not start at the vertex orbit");
  Ctx ctx(pg);
  return ctx.step(v, dart_index);
}

Diagnostics validate_quotient(const PeriodicGraph& pg) {
  Diagnostics diag;
  auto fail = [&](const std::string& msg) {
    diag.pass = false;
    diag.issues.push_back(msg);
  };
  if (pg.orbit_count < 1) {
    fail("orbit_count must be positive");
    return diag;
  }
  if (!pg.geometry.empty() && (int)pg.geometry.size() != pg.orbit_count)
    fail("geometry size does not match orbit_count");
  if (pg.lattice_rank != 1 && pg.lattice_rank != 2) fail("lattice_rank must be 1 or 2");
  for (size_t i = 0; i < pg.darts.size(); ++i) {
    const Dart& d = pg.darts[i];
    if (d.u < 0 || d.u >= pg.orbit_count || d.v < 0 || d.v >= pg.orbit_count)
      fail("dart " + std::to_string(i) + ": orbit index out of range");
    if (pg.kind == GroupKind::EuclideanLattice && pg.lattice_rank == 1 &&
        d.voltage.shift[1] != 0)
      fail("dart " + std::to_string(i) + ": rank-1 voltage uses the second coordinate");
  }
  if (!diag.pass) return diag;
  if (pg.kind == GroupKind::Fuchsian && (!pg.fuchsian || pg.geometry.empty())) {
    fail("fuchsian graph needs a presentation and geometry");
    return diag;
  }

  Ctx ctx(pg);
  auto neighbour_key = [&](int dart_index) {
    // Cover vertex reached from the identity representative of the source.
    const Dart& d = pg.darts[(size_t)dart_index];
    return ctx.key_of(ctx.step(ctx.root_vertex(d.u), dart_index));
  };

  // Loops in the cover and duplicated darts / parallel cover edges.
  std::set<std::pair<int, VKey>> seen;  // (source orbit, target cover vertex)
  for (size_t i = 0; i < pg.darts.size(); ++i) {
    const Dart& d = pg.darts[i];
    VKey target = neighbour_key((int)i);
    VKey self = ctx.key_of(ctx.root_vertex(d.u));
    if (d.v == d.u && target == self)
      fail("dart " + std::to_string(i) + ": loop in cover");
    else if (!seen.insert({d.u, target}).second)
      fail("dart " + std::to_string(i) + ": duplicated dart");
  }
  if (!diag.pass) return diag;

  // Reverse darts: exactly one dart (v, u, k) leading back to the source.
  for (size_t i = 0; i < pg.darts.size(); ++i) {
    const Dart& d = pg.darts[i];
    CoverVertex there = ctx.step(ctx.root_vertex(d.u), (int)i);
    VKey source = ctx.key_of(ctx.root_vertex(d.u));
    int count = 0;
    for (int j : ctx.out[d.v]) {
      const Dart& back = pg.darts[(size_t)j];
      if (back.v != d.u) continue;
      if (ctx.key_of(ctx.step(there, j)) == source) ++count;
    }
    if (count == 0)
      fail("dart " + std::to_string(i) + ": missing reverse dart");
    else if (count > 1)
      fail("dart " + std::to_string(i) + ": multiple reverse darts");
  }
  return diag;
}

Patch build_patch(const PeriodicGraph& pg, const CoverVertex& root, int radius,
                  int vertex_cap) {
  if (radius < 0) throw ArgumentError("radius must be nonnegative");
  Ctx ctx(pg);
  Patch patch;
  patch.radius = radius;

  std::map<VKey, int> index;
  std::vector<CoverVertex> vertices{root};
  std::vector<int> distance{0};
  index[ctx.key_of(root)] = 0;
  std::vector<int> layer{0};
  for (int depth = 0; depth < radius && !layer.empty(); ++depth) {
    // Deterministic discovery: gather the next layer, then sort by key.
    std::vector<std::pair<VKey, CoverVertex>> found;
    std::set<VKey> found_keys;
    for (int vi : layer) {
      CoverVertex v = vertices[(size_t)vi];
      for (int di : ctx.out[v.orbit]) {
        CoverVertex w = ctx.step(v, di);
        VKey k = ctx.key_of(w);
        if (index.count(k) || found_keys.count(k)) continue;
        found_keys.insert(k);
        found.emplace_back(k, w);
      }
    }
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    layer.clear();
    for (auto& [k, w] : found) {
      if ((int)vertices.size() >= vertex_cap)
        throw ResourceError("patch exceeded the vertex cap");
      index[k] = (int)vertices.size();
      layer.push_back((int)vertices.size());
      vertices.push_back(w);
      distance.push_back(depth + 1);
    }
  }

  std::set<std::pair<int, int>> edges;
  for (size_t i = 0; i < vertices.size(); ++i)
    for (int di : ctx.out[vertices[i].orbit]) {
      auto it = index.find(ctx.key_of(ctx.step(vertices[i], di)));
      if (it == index.end() || it->second == (int)i) continue;
      edges.insert({std::min((int)i, it->second), std::max((int)i, it->second)});
    }

  patch.vertices = std::move(vertices);
  patch.distance = std::move(distance);
  patch.edges.assign(edges.begin(), edges.end());
  patch.interior.resize(patch.vertices.size());
  for (size_t i = 0; i < patch.vertices.size(); ++i)
    patch.interior[i] = patch.distance[i] < radius;
  patch.root = 0;
  return patch;
}

int estimate_ends(const PeriodicGraph& pg, int r, int R, int vertex_cap) {
  if (r < 1 || R <= r) throw ArgumentError("radii must satisfy R > r >= 1");
  Patch patch = build_patch(pg, base_vertex(pg, 0), R, vertex_cap);
  int n = (int)patch.vertices.size();
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : patch.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> comp(n, -1);
  int ends = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] != -1 || patch.distance[s] < r) continue;
    std::vector<int> stack{s};
    comp[s] = s;
    bool touches = false;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (patch.distance[v] == R) touches = true;
      for (int w : adj[v]) {
        if (comp[w] != -1 || patch.distance[w] < r) continue;
        comp[w] = s;
        stack.push_back(w);
      }
    }
    if (touches) ++ends;
  }
  return ends;
}

Connectivity patch_connectivity(const Patch& patch, int kmax) {
  if (kmax < 1) throw ArgumentError("kmax must be positive");
  std::vector<int> interior;
  for (size_t i = 0; i < patch.vertices.size(); ++i)
    if (patch.interior[i]) interior.push_back((int)i);
  if ((int)interior.size() < kmax + 2)
    throw ArgumentError("degenerate patch: too few interior vertices");

  int n = (int)patch.vertices.size();
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : patch.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  // A cut is certified when removing it leaves a component that contains an
  // interior vertex, avoids the patch boundary (so it is genuinely finite in
  // the cover), and excludes some other interior vertex.
  std::vector<char> removed(n, 0), visited(n, 0);
  auto certified = [&]() {
    std::fill(visited.begin(), visited.end(), 0);
    for (int s : interior) {
      if (removed[s] || visited[s]) continue;
      std::vector<int> stack{s}, members;
      visited[s] = 1;
      bool boundary = false;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        members.push_back(v);
        if (patch.distance[v] == patch.radius) boundary = true;
        for (int w : adj[v])
          if (!removed[w] && !visited[w]) {
            visited[w] = 1;
            stack.push_back(w);
          }
      }
      if (boundary) continue;
      bool has_interior = false;
      for (int v : members) has_interior = has_interior || patch.interior[v];
      if (!has_interior) continue;
      // Some other interior vertex must survive outside this component.
      size_t inside = 0;
      for (int v : members)
        if (patch.interior[v]) ++inside;
      size_t alive = 0;
      for (int v : interior)
        if (!removed[v]) ++alive;
      if (alive > inside) return true;
    }
    return false;
  };

  for (int k = 1; k < kmax; ++k) {
    std::function<bool(int, int)> rec = [&](int start, int depth) {
      if (depth == k) return certified();
      for (int i = start; i < (int)interior.size(); ++i) {
        removed[interior[i]] = 1;
        bool hit = rec(i + 1, depth + 1);
        removed[interior[i]] = 0;
        if (hit) return true;
      }
      return false;
    };
    if (rec(0, 0)) return {k, true};
  }
  return {kmax, false};
}

long long subgroup_index(const SubgroupDescriptor& T) {
  if (T.kind == GroupKind::Fuchsian) return T.table.degree;
  long long d = T.mat[0][0] * T.mat[1][1] - T.mat[0][1] * T.mat[1][0];
  if (d == 0) throw ArgumentError("sublattice matrix is singular");
  return std::llabs(d);
}

namespace {

bool sublattice_member(const std::array<std::array<long long, 2>, 2>& S,
                       const std::array<long long, 2>& s) {
  long long d = S[0][0] * S[1][1] - S[0][1] * S[1][0];
  long long c1 = S[1][1] * s[0] - S[0][1] * s[1];
  long long c2 = -S[1][0] * s[0] + S[0][0] * s[1];
  return c1 % d == 0 && c2 % d == 0;
}

}  // namespace

int shortest_noncontractible(const PeriodicGraph& pg, const SubgroupDescriptor& T,
                             int vertex_cap) {
  if (pg.kind != T.kind) throw ArgumentError("subgroup kind does not match the graph");
  Ctx ctx(pg);

  if (pg.kind == GroupKind::EuclideanLattice) {
    if (pg.lattice_rank != 2)
      throw ArgumentError("sublattice subgroups need a rank-2 voltage lattice");
    if (subgroup_index(T) == 0) throw ArgumentError("sublattice matrix is singular");
    int best = -1;
    for (int orbit = 0; orbit < pg.orbit_count; ++orbit) {
      std::set<VKey> seen;
      std::vector<CoverVertex> layer{ctx.root_vertex(orbit)};
      seen.insert(ctx.key_of(layer[0]));
      bool found = false;
      for (int depth = 1; !layer.empty() && !found; ++depth) {
        std::vector<CoverVertex> next;
        for (const CoverVertex& v : layer) {
          if (found) break;
          for (int di : ctx.out[v.orbit]) {
            CoverVertex w = ctx.step(v, di);
            if (!seen.insert(ctx.key_of(w)).second) continue;
            if (w.orbit == orbit && (w.shift[0] != 0 || w.shift[1] != 0) &&
                sublattice_member(T.mat, w.shift)) {
              if (best == -1 || depth < best) best = depth;
              found = true;
              break;
            }
            next.push_back(w);
          }
        }
        if (!found && (int)seen.size() > vertex_cap)
          throw ResourceError("search ball exhausted at distance " +
                              std::to_string(depth) + " without certification");
        layer = std::move(next);
      }
    }
    if (best == -1) throw ResourceError("no sublattice translate reached");
    return best;
  }

  // Fuchsian: vertices are cosets of the vertex rotation; T-translates of a
  // vertex share its z-orbit class in the coset table.
  const hyp::CosetTable& table = T.table;
  const std::string& z = pg.fuchsian->vertex_rotation;
  std::vector<int> zclass(table.degree, -1);
  for (int s = 0; s < table.degree; ++s) {
    if (zclass[s] != -1) continue;
    int c = s;
    do {
      zclass[c] = s;
      c = table.act(c, z);
    } while (c != s);
  }

  struct Node {
    CoverVertex v;
    int coset;
  };
  // Fundamental-set representatives: one cover vertex per (orbit, z-class).
  std::vector<Node> reps;
  {
    std::set<std::pair<int, int>> classes;
    std::set<VKey> seen;
    std::vector<Node> layer{{ctx.root_vertex(0), 0}};
    seen.insert(ctx.key_of(layer[0].v));
    classes.insert({0, zclass[0]});
    reps.push_back(layer[0]);
    size_t n_zclasses = 0;
    for (int c = 0; c < table.degree; ++c)
      if (zclass[c] == c) ++n_zclasses;
    size_t cap_classes = (size_t)pg.orbit_count * n_zclasses;
    while (!layer.empty() && classes.size() < cap_classes) {
      std::vector<Node> next;
      for (const Node& nd : layer)
        for (int di : ctx.out[nd.v.orbit]) {
          Node w{ctx.step(nd.v, di),
                 table.act_word(nd.coset, pg.darts[(size_t)di].voltage.word)};
          if (!seen.insert(ctx.key_of(w.v)).second) continue;
          if (classes.insert({w.v.orbit, zclass[w.coset]}).second) reps.push_back(w);
          next.push_back(w);
        }
      if ((int)seen.size() > vertex_cap)
        throw ResourceError("fundamental-set search exceeded the vertex cap");
      layer = std::move(next);
    }
  }

  int best = -1;
  for (const Node& root : reps) {
    int root_class = zclass[root.coset];
    std::set<VKey> seen;
    seen.insert(ctx.key_of(root.v));
    std::vector<Node> layer{root};
    bool found = false;
    for (int depth = 1; !layer.empty() && !found; ++depth) {
      if (best != -1 && depth > best) break;
      std::vector<Node> next;
      for (const Node& nd : layer) {
        if (found) break;
        for (int di : ctx.out[nd.v.orbit]) {
          Node w{ctx.step(nd.v, di),
                 table.act_word(nd.coset, pg.darts[(size_t)di].voltage.word)};
          if (!seen.insert(ctx.key_of(w.v)).second) continue;
          if (w.v.orbit == root.v.orbit && zclass[w.coset] == root_class) {
            if (best == -1 || depth < best) best = depth;
            found = true;
            break;
          }
          next.push_back(w);
        }
      }
      if (!found && (int)seen.size() > vertex_cap)
        throw ResourceError("search ball exhausted at distance " +
                            std::to_string(depth) + " without certification");
      layer = std::move(next);
    }
  }
  if (best == -1) throw ResourceError("no subgroup translate reached");
  return best;
}

double max_edge_length(const PeriodicGraph& pg) {
  if (pg.geometry.empty()) throw ArgumentError("graph has no geometry");
  Ctx ctx(pg);
  double best = 0;
  for (size_t i = 0; i < pg.darts.size(); ++i) {
    const Dart& d = pg.darts[i];
    std::array<double, 2> from = orbit_base(pg, d.u);
    CoverVertex to = ctx.step(ctx.root_vertex(d.u), (int)i);
    double len;
    if (pg.kind == GroupKind::EuclideanLattice) {
      len = std::hypot(to.position[0] - from[0], to.position[1] - from[1]);
    } else {
      len = hyp::hyperbolic_distance(Complex(from[0], from[1]),
                                     Complex(to.position[0], to.position[1]));
    }
    best = std::max(best, len);
  }
  return best;
}

PeriodicGraph square_lattice() {
  PeriodicGraph pg;
  pg.kind = GroupKind::EuclideanLattice;
  pg.orbit_count = 1;
  pg.geometry = {{0.0, 0.0}};
  pg.darts = {{0, 0, {{1, 0}, ""}},
              {0, 0, {{-1, 0}, ""}},
              {0, 0, {{0, 1}, ""}},
              {0, 0, {{0, -1}, ""}}};
  return pg;
}

PeriodicGraph path_graph() {
  PeriodicGraph pg;
  pg.kind = GroupKind::EuclideanLattice;
  pg.orbit_count = 1;
  pg.lattice_rank = 1;
  pg.geometry = {{0.0, 0.0}};
  pg.darts = {{0, 0, {{1, 0}, ""}}, {0, 0, {{-1, 0}, ""}}};
  return pg;
}

namespace {

euclid::Lattice triangular_basis() {
  using euclid::Rational;
  // b2 approximates (1/2, sqrt(3)/2); exact enough for length margins here.
  return {{Rational(1), Rational(0)}, {Rational(1, 2), Rational(433, 500)}};
}

}  // namespace

PeriodicGraph hexagonal_lattice() {
  PeriodicGraph pg;
  pg.kind = GroupKind::EuclideanLattice;
  pg.orbit_count = 2;
  pg.lattice = triangular_basis();
  double bx = (1.0 + 0.5) / 3.0, by = euclid::to_double(pg.lattice.b2[1]) / 3.0;
  pg.geometry = {{0.0, 0.0}, {bx, by}};
  pg.darts = {{0, 1, {{0, 0}, ""}},  {1, 0, {{0, 0}, ""}},
              {0, 1, {{-1, 0}, ""}}, {1, 0, {{1, 0}, ""}},
              {0, 1, {{0, -1}, ""}}, {1, 0, {{0, 1}, ""}}};
  return pg;
}

PeriodicGraph triangular_lattice() {
  PeriodicGraph pg;
  pg.kind = GroupKind::EuclideanLattice;
  pg.orbit_count = 1;
  pg.lattice = triangular_basis();
  pg.geometry = {{0.0, 0.0}};
  pg.darts = {{0, 0, {{1, 0}, ""}},  {0, 0, {{-1, 0}, ""}}, {0, 0, {{0, 1}, ""}},
              {0, 0, {{0, -1}, ""}}, {0, 0, {{-1, 1}, ""}}, {0, 0, {{1, -1}, ""}}};
  return pg;
}

PeriodicGraph leafed_square_lattice() {
  PeriodicGraph pg = square_lattice();
  pg.orbit_count = 2;
  pg.geometry.push_back({0.3, 0.3});
  pg.darts.push_back({0, 1, {{0, 0}, ""}});
  pg.darts.push_back({1, 0, {{0, 0}, ""}});
  return pg;
}

PeriodicGraph subdivided_square_lattice() {
  PeriodicGraph pg;
  pg.kind = GroupKind::EuclideanLattice;
  pg.orbit_count = 3;  // lattice vertex, horizontal midpoint, vertical midpoint
  pg.geometry = {{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.5}};
  pg.darts = {{0, 1, {{0, 0}, ""}},  {1, 0, {{0, 0}, ""}},
              {1, 0, {{1, 0}, ""}},  {0, 1, {{-1, 0}, ""}},
              {0, 2, {{0, 0}, ""}},  {2, 0, {{0, 0}, ""}},
              {2, 0, {{0, 1}, ""}},  {0, 2, {{0, -1}, ""}}};
  return pg;
}

PeriodicGraph leafed_subdivided_square_lattice() {
  PeriodicGraph pg = subdivided_square_lattice();
  pg.orbit_count = 4;
  pg.geometry.push_back({0.3, 0.3});
  pg.darts.push_back({0, 3, {{0, 0}, ""}});
  pg.darts.push_back({3, 0, {{0, 0}, ""}});
  return pg;
}

PeriodicGraph tessellation(int p, int q) {
  PeriodicGraph pg;
  pg.kind = GroupKind::Fuchsian;
  pg.orbit_count = 1;
  pg.geometry = {{0.0, 0.0}};
  pg.fuchsian = std::make_shared<hyp::FuchsianPresentation>(hyp::triangle_group(2, p, q));
  for (int j = 0; j < q; ++j) {
    Voltage v;
    v.word = j == 0 ? "x" : "z^" + std::to_string(j) + "x";
    pg.darts.push_back({0, 0, v});
  }
  return pg;
}

}  // namespace perico::graph
