#include "perico/verify.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace perico::verify {

namespace {

std::string vertex_label(const graph::PeriodicGraph& pg, const graph::CoverVertex& v) {
  std::ostringstream os;
  os << "orbit " << v.orbit;
  if (pg.kind == graph::GroupKind::EuclideanLattice)
    os << " shift (" << v.shift[0] << "," << v.shift[1] << ")";
  else
    os << " word \"" << v.word << "\"";
  return os.str();
}

std::string inverse_word(const std::string& word) {
  std::vector<hyp::Letter> letters = hyp::parse_word(word);
  std::ostringstream os;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    os << it->gen << "^" << -it->exponent;
  return os.str();
}

}  // namespace

ProperReport check_proper(const colouring::PeriodicColouring& pc,
                          const graph::PeriodicGraph& pg, int radius) {
  if (radius < 1) throw ArgumentError("radius must be at least 1");
  graph::Patch patch = graph::build_patch(pg, graph::base_vertex(pg, 0), radius);
  ProperReport report;
  report.vertices_checked = (int)patch.vertices.size();
  report.edges_checked = (int)patch.edges.size();
  std::vector<int> colour;
  colour.reserve(patch.vertices.size());
  for (const graph::CoverVertex& v : patch.vertices)
    colour.push_back(colouring::colour_of(pc, pg, v));
  for (auto [a, b] : patch.edges)
    if (colour[(size_t)a] == colour[(size_t)b]) {
      report.pass = false;
      report.monochromatic.emplace_back(a, b);
      report.details.push_back("colour " + std::to_string(colour[(size_t)a]) + ": " +
                               vertex_label(pg, patch.vertices[(size_t)a]) + " -- " +
                               vertex_label(pg, patch.vertices[(size_t)b]));
    }
  return report;
}

PeriodicReport check_periodic(const colouring::PeriodicColouring& pc,
                              const graph::PeriodicGraph& pg, int sample,
                              unsigned seed, const ColourFn& fn) {
  if (sample < 1) throw ArgumentError("sample count must be at least 1");
  ColourFn colour = fn;
  if (!colour)
    colour = [&pc](const graph::PeriodicGraph& g, const graph::CoverVertex& v) {
      return colouring::colour_of(pc, g, v);
    };

  std::vector<std::vector<int>> out((size_t)pg.orbit_count);
  for (size_t i = 0; i < pg.darts.size(); ++i) out[pg.darts[i].u].push_back((int)i);

  // Subgroup generators: sublattice columns, or Schreier generators of the
  // coset table.
  struct Translate {
    std::array<long long, 2> shift{0, 0};
    std::string word;
    std::string label;
  };
  std::vector<Translate> gens;
  if (pg.kind == graph::GroupKind::EuclideanLattice) {
    const auto& m = pc.quotient.subgroup.mat;
    gens.push_back({{m[0][0], m[1][0]}, "", "column 1"});
    gens.push_back({{m[0][1], m[1][1]}, "", "column 2"});
  } else {
    const hyp::CosetTable& table = pc.quotient.subgroup.table;
    std::vector<std::string> reps = hyp::coset_representatives(*pg.fuchsian, table);
    for (const std::string& g : pg.fuchsian->generators) {
      for (int c = 0; c < table.degree && (int)gens.size() < 6; ++c) {
        int cg = table.act(c, g);
        std::string w = reps[(size_t)c] + g + inverse_word(reps[(size_t)cg]);
        if (table.act_word(0, w) != 0)
          throw ArgumentError("schreier word leaves the subgroup");
        gens.push_back({{0, 0}, w, "schreier(" + std::to_string(c) + "," + g + ")"});
      }
    }
  }

  PeriodicReport report;
  report.samples = sample;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> walk_len(0, 8);
  std::set<std::pair<int, int>> classes;
  for (int trial = 0; trial < sample; ++trial) {
    graph::CoverVertex v = graph::base_vertex(pg, 0);
    for (int i = 0, n = walk_len(rng); i < n; ++i) {
      const auto& darts = out[(size_t)v.orbit];
      std::uniform_int_distribution<size_t> pick(0, darts.size() - 1);
      v = graph::step(pg, v, darts[pick(rng)]);
    }
    int cv = colour(pg, v);
    classes.insert({colouring::resolve(pc.quotient, pg, v), cv});
    for (const Translate& t : gens) {
      graph::CoverVertex tv = v;
      tv.shift = {v.shift[0] + t.shift[0], v.shift[1] + t.shift[1]};
      tv.word = t.word + v.word;
      int ct = colour(pg, tv);
      if (ct != cv) {
        report.pass = false;
        report.failures.push_back("generator " + t.label + " moves " +
                                  vertex_label(pg, v) + " from colour " +
                                  std::to_string(cv) + " to " + std::to_string(ct));
      }
    }
  }
  report.classes_seen = (int)classes.size();
  if (report.classes_seen > pc.quotient.vertex_count()) {
    report.pass = false;
    report.failures.push_back("more colour classes than quotient vertices");
  }
  return report;
}

namespace {

bool colourable(int n, const std::vector<std::vector<int>>& adj, std::vector<int>& col,
                int v, int k) {
  if (v == n) return true;
  for (int c = 0; c < k; ++c) {
    bool ok = true;
    for (int w : adj[(size_t)v])
      if (col[(size_t)w] == c) {
        ok = false;
        break;
      }
    if (!ok) continue;
    col[(size_t)v] = c;
    if (colourable(n, adj, col, v + 1, k)) return true;
    col[(size_t)v] = -1;
  }
  return false;
}

}  // namespace

int brute_force_chromatic(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n > 14) throw ArgumentError("brute-force chromatic limited to 14 vertices");
  if (n < 0) throw ArgumentError("negative vertex count");
  if (n == 0) return 0;
  std::vector<std::vector<int>> adj((size_t)n);
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw ArgumentError("edge out of range");
    if (a == b) throw ArgumentError("loops are not colourable");
    adj[(size_t)a].push_back(b);
    adj[(size_t)b].push_back(a);
  }
  for (int k = 1; k <= n; ++k) {
    std::vector<int> col((size_t)n, -1);
    if (colourable(n, adj, col, 0, k)) return k;
  }
  return n;
}

}  // namespace perico::verify
