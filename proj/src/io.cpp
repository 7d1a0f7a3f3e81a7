#include "perico/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>

#include <json.hpp>

#include "perico/euclid.hpp"
#include "perico/hyp.hpp"

namespace perico::io {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* name, const char* ctx) {
  auto it = j.find(name);
  if (it == j.end())
    throw ArgumentError(std::string(ctx) + ": missing field '" + name + "'");
  return *it;
}

json parse_text(const std::string& text, const char* ctx) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw ArgumentError(std::string(ctx) + ": malformed JSON");
  if (!j.is_object())
    throw ArgumentError(std::string(ctx) + ": expected a JSON object");
  return j;
}

euclid::RatVec parse_rat_vec(const json& j, const char* ctx) {
  if (!j.is_array() || j.size() != 2)
    throw ArgumentError(std::string(ctx) + ": expected a pair of fractions");
  return {euclid::parse_fraction(j[0].get<std::string>()),
          euclid::parse_fraction(j[1].get<std::string>())};
}

euclid::Lattice parse_euclidean_group(const json& g) {
  const char* ctx = "group.euclidean";
  if (g.contains("lattice")) {
    const json& l = g["lattice"];
    if (!l.is_array() || l.size() != 2)
      throw ArgumentError(std::string(ctx) + ".lattice: expected two basis vectors");
    return {parse_rat_vec(l[0], ctx), parse_rat_vec(l[1], ctx)};
  }
  if (g.contains("generators")) {
    std::vector<euclid::Isometry> gens;
    for (const json& e : g["generators"]) {
      euclid::Isometry iso;
      const json& mat = field(e, "matrix", ctx);
      const json& vec = field(e, "vector", ctx);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
          iso.point_part[(size_t)r][(size_t)c] =
              euclid::parse_fraction(mat[(size_t)r][(size_t)c].get<std::string>());
      iso.translation = parse_rat_vec(vec, ctx);
      euclid::validate(iso);
      gens.push_back(iso);
    }
    int bound = g.value("word_bound", 8);
    return euclid::translation_subgroup(gens, bound);
  }
  throw ArgumentError(std::string(ctx) + ": needs 'lattice' or 'generators'");
}

std::shared_ptr<hyp::FuchsianPresentation> parse_fuchsian_group(const json& g) {
  const char* ctx = "group.fuchsian";
  auto pres = std::make_shared<hyp::FuchsianPresentation>();
  pres->generators = field(g, "generators", ctx).get<std::vector<std::string>>();
  pres->relators = field(g, "relators", ctx).get<std::vector<std::string>>();
  const json& sig = field(g, "signature", ctx);
  pres->genus = field(sig, "genus", "group.fuchsian.signature").get<int>();
  pres->periods =
      field(sig, "periods", "group.fuchsian.signature").get<std::vector<int>>();
  if (g.contains("period_generators"))
    pres->period_generators = g["period_generators"].get<std::vector<std::string>>();
  else if (pres->periods.size() <= pres->generators.size())
    pres->period_generators.assign(pres->generators.begin(),
                                   pres->generators.begin() +
                                       (long)pres->periods.size());
  const json& mats = field(g, "matrices", ctx);
  for (const std::string& gen : pres->generators) {
    auto it = mats.find(gen);
    if (it == mats.end())
      throw ArgumentError(std::string(ctx) + ".matrices: missing generator '" +
                          gen + "'");
    const json& m = *it;
    if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2)
      throw ArgumentError(std::string(ctx) + ".matrices." + gen +
                          ": expected a 2x2 matrix");
    hyp::MoebiusMatrix mm;
    mm.a = m[0][0].get<double>();
    mm.b = m[0][1].get<double>();
    mm.c = m[1][0].get<double>();
    mm.d = m[1][1].get<double>();
    mm.word = gen;
    pres->matrices[gen] = mm;
  }
  pres->vertex_rotation = g.value("vertex_rotation", std::string("z"));
  pres->edge_step = g.value("edge_step", std::string("x"));
  hyp::validate(*pres);
  return pres;
}

}  // namespace

graph::PeriodicGraph parse_periodic_graph(const std::string& text) {
  json j = parse_text(text, "graph JSON");
  graph::PeriodicGraph pg;
  std::string kind = field(j, "kind", "graph JSON").get<std::string>();
  if (kind == "euclidean-lattice")
    pg.kind = graph::GroupKind::EuclideanLattice;
  else if (kind == "fuchsian")
    pg.kind = graph::GroupKind::Fuchsian;
  else
    throw ArgumentError("graph JSON: unknown kind '" + kind + "'");
  pg.orbit_count = field(j, "orbits", "graph JSON").get<int>();

  const json& g = field(j, "group", "graph JSON");
  if (pg.kind == graph::GroupKind::EuclideanLattice) {
    if (!g.contains("euclidean"))
      throw ArgumentError("graph JSON: group: missing field 'euclidean'");
    pg.lattice = parse_euclidean_group(g["euclidean"]);
    pg.lattice_rank = g["euclidean"].value("rank", 2);
  } else {
    if (!g.contains("fuchsian"))
      throw ArgumentError("graph JSON: group: missing field 'fuchsian'");
    pg.fuchsian = parse_fuchsian_group(g["fuchsian"]);
  }

  for (const json& d : field(j, "darts", "graph JSON")) {
    if (!d.is_array() || d.size() != 3)
      throw ArgumentError("graph JSON: darts: expected [u, v, voltage] triples");
    graph::Dart dart;
    dart.u = d[0].get<int>();
    dart.v = d[1].get<int>();
    if (pg.kind == graph::GroupKind::EuclideanLattice) {
      if (!d[2].is_array() || d[2].size() != 2)
        throw ArgumentError("graph JSON: darts: lattice voltage must be a pair");
      dart.voltage.shift = {d[2][0].get<long long>(), d[2][1].get<long long>()};
    } else {
      if (!d[2].is_string())
        throw ArgumentError("graph JSON: darts: fuchsian voltage must be a word");
      dart.voltage.word = d[2].get<std::string>();
    }
    pg.darts.push_back(dart);
  }

  for (const json& p : field(j, "geometry", "graph JSON")) {
    if (!p.is_array() || p.size() != 2)
      throw ArgumentError("graph JSON: geometry: expected [x, y] pairs");
    pg.geometry.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  if (!pg.geometry.empty() && (int)pg.geometry.size() != pg.orbit_count)
    throw ArgumentError("graph JSON: geometry: one point per orbit required");

  graph::Diagnostics diag = graph::validate_quotient(pg);
  if (!diag.pass)
    throw ArgumentError("graph JSON: invalid quotient: " + diag.issues.front());
  return pg;
}

std::string serialize(const graph::PeriodicGraph& pg) {
  json j;
  j["kind"] = pg.kind == graph::GroupKind::EuclideanLattice ? "euclidean-lattice"
                                                            : "fuchsian";
  j["orbits"] = pg.orbit_count;
  json darts = json::array();
  for (const graph::Dart& d : pg.darts) {
    json v;
    if (pg.kind == graph::GroupKind::EuclideanLattice)
      v = json::array({d.voltage.shift[0], d.voltage.shift[1]});
    else
      v = d.voltage.word;
    darts.push_back(json::array({d.u, d.v, v}));
  }
  j["darts"] = darts;
  json geom = json::array();
  for (const auto& p : pg.geometry) geom.push_back(json::array({p[0], p[1]}));
  j["geometry"] = geom;
  if (pg.kind == graph::GroupKind::EuclideanLattice) {
    json lattice = json::array(
        {json::array({euclid::format_fraction(pg.lattice.b1[0]),
                      euclid::format_fraction(pg.lattice.b1[1])}),
         json::array({euclid::format_fraction(pg.lattice.b2[0]),
                      euclid::format_fraction(pg.lattice.b2[1])})});
    j["group"]["euclidean"] = {{"lattice", lattice}, {"rank", pg.lattice_rank}};
  } else {
    const hyp::FuchsianPresentation& pres = *pg.fuchsian;
    json mats;
    for (const auto& [name, m] : pres.matrices)
      mats[name] = {{m.a, m.b}, {m.c, m.d}};
    j["group"]["fuchsian"] = {
        {"generators", pres.generators},
        {"relators", pres.relators},
        {"signature", {{"genus", pres.genus}, {"periods", pres.periods}}},
        {"period_generators", pres.period_generators},
        {"matrices", mats},
        {"vertex_rotation", pres.vertex_rotation},
        {"edge_step", pres.edge_step}};
  }
  return j.dump(2) + "\n";
}

colouring::PeriodicColouring parse_periodic_colouring(
    const std::string& text, const graph::PeriodicGraph& pg) {
  json j = parse_text(text, "colouring JSON");
  const json& s = field(j, "subgroup", "colouring JSON");
  std::string kind = field(s, "kind", "colouring JSON: subgroup").get<std::string>();
  graph::SubgroupDescriptor T;
  if (kind == "euclidean-lattice") {
    T.kind = graph::GroupKind::EuclideanLattice;
    const json& m = field(s, "mat", "colouring JSON: subgroup");
    if (!m.is_array() || m.size() != 2 || m[0].size() != 2 || m[1].size() != 2)
      throw ArgumentError("colouring JSON: subgroup.mat: expected a 2x2 matrix");
    T.mat = {{{m[0][0].get<long long>(), m[0][1].get<long long>()},
              {m[1][0].get<long long>(), m[1][1].get<long long>()}}};
  } else if (kind == "fuchsian") {
    T.kind = graph::GroupKind::Fuchsian;
    const json& t = field(s, "table", "colouring JSON: subgroup");
    T.table.degree = field(t, "degree", "colouring JSON: subgroup.table").get<int>();
    const json& perm = field(t, "perm", "colouring JSON: subgroup.table");
    for (auto it = perm.begin(); it != perm.end(); ++it)
      T.table.perm[it.key()] = it.value().get<std::vector<int>>();
  } else {
    throw ArgumentError("colouring JSON: subgroup: unknown kind '" + kind + "'");
  }
  colouring::QuotientGraph q = colouring::quotient_mod_subgroup(pg, T);
  colouring::QuotientColouring qc;
  qc.colours = field(j, "colours", "colouring JSON").get<std::vector<int>>();
  qc.palette = field(j, "palette", "colouring JSON").get<int>();
  for (int c : qc.colours)
    if (c < 0 || c >= qc.palette)
      throw ArgumentError("colouring JSON: colour outside the palette");
  return colouring::lift_colouring(q, qc);
}

std::string serialize(const colouring::PeriodicColouring& pc) {
  json j;
  json s;
  if (pc.quotient.kind == graph::GroupKind::EuclideanLattice) {
    s["kind"] = "euclidean-lattice";
    const auto& m = pc.quotient.subgroup.mat;
    s["mat"] = {{m[0][0], m[0][1]}, {m[1][0], m[1][1]}};
  } else {
    s["kind"] = "fuchsian";
    json perm;
    for (const auto& [gen, images] : pc.quotient.subgroup.table.perm)
      perm[gen] = images;
    s["table"] = {{"degree", pc.quotient.subgroup.table.degree}, {"perm", perm}};
  }
  j["subgroup"] = s;
  j["colours"] = pc.colouring.colours;
  j["palette"] = pc.colouring.palette;
  return j.dump(2) + "\n";
}

std::string serialize(const linegraph::Orientation& o) {
  json j;
  json rows = json::array();
  for (const auto& row : o.forward) {
    json r = json::array();
    for (bool b : row) r.push_back(b);
    rows.push_back(r);
  }
  j["forward"] = rows;
  return j.dump(2) + "\n";
}

namespace {

json dart_json(const graph::Dart& d) {
  return json::array(
      {d.u, d.v, json::array({d.voltage.shift[0], d.voltage.shift[1]})});
}

}  // namespace

std::string serialize(const reduction::ReductionTrace& trace) {
  json steps = json::array();
  for (const reduction::ReductionStep& st : trace.steps) {
    json s;
    s["connectivity_case"] = st.connectivity_case;
    s["orbit_count_before"] = st.orbit_count_before;
    s["orbit_count_after"] = st.orbit_count_after;
    json atoms = json::array();
    for (const reduction::AtomOrbit& a : st.atoms) {
      json orbits = json::array();
      for (const graph::CoverVertex& v : a.representative) orbits.push_back(v.orbit);
      json boundary = json::array();
      for (const graph::CoverVertex& v : a.boundary) boundary.push_back(v.orbit);
      atoms.push_back({{"orbits", orbits},
                       {"boundary_orbits", boundary},
                       {"connectivity_case", a.connectivity_case}});
    }
    s["atoms"] = atoms;
    json ins = json::array();
    for (const graph::Dart& d : st.inserted_darts) ins.push_back(dart_json(d));
    s["inserted_darts"] = ins;
    json merged = json::array();
    for (const graph::Dart& d : st.merged_darts) merged.push_back(dart_json(d));
    s["merged_darts"] = merged;
    s["orbit_map"] = st.orbit_map;
    steps.push_back(s);
  }
  json j;
  j["steps"] = steps;
  return j.dump(2) + "\n";
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  // Avoid the two representations of zero.
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

const char* palette_colour(int c) {
  static const char* kPalette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
                                   "#ff7f00", "#a65628", "#f781bf", "#17becf",
                                   "#bcbd22", "#999999", "#66c2a5", "#fc8d62"};
  return kPalette[c % 12];
}

}  // namespace

std::string render_svg(const graph::PeriodicGraph& pg,
                       const colouring::PeriodicColouring* pc, int radius,
                       RenderMode mode) {
  if (radius < 0) throw ArgumentError("render radius must be >= 0");
  graph::Patch patch = graph::build_patch(pg, graph::base_vertex(pg, 0), radius);

  const double kSize = 600, kMargin = 20, kDiscR = 280;
  auto map_euclid = [&]() {
    double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
    for (const auto& v : patch.vertices) {
      minx = std::min(minx, v.position[0]);
      maxx = std::max(maxx, v.position[0]);
      miny = std::min(miny, v.position[1]);
      maxy = std::max(maxy, v.position[1]);
    }
    double span = std::max({maxx - minx, maxy - miny, 1e-9});
    double scale = (kSize - 2 * kMargin) / span;
    return [=](std::array<double, 2> p) -> std::array<double, 2> {
      return {kMargin + (p[0] - minx) * scale, kSize - kMargin - (p[1] - miny) * scale};
    };
  };
  auto map_disc = [=](std::array<double, 2> p) -> std::array<double, 2> {
    return {kSize / 2 + kDiscR * p[0], kSize / 2 - kDiscR * p[1]};
  };

  std::function<std::array<double, 2>(std::array<double, 2>)> to_screen;
  if (mode == RenderMode::Euclidean)
    to_screen = map_euclid();
  else
    to_screen = map_disc;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
         "viewBox=\"0 0 600 600\">\n";
  out += "<rect width=\"600\" height=\"600\" fill=\"#ffffff\"/>\n";
  if (mode == RenderMode::Poincare)
    out += "<circle cx=\"300.00\" cy=\"300.00\" r=\"280.00\" fill=\"none\" "
           "stroke=\"#000000\"/>\n";

  for (auto [i, k] : patch.edges) {
    std::array<double, 2> a = patch.vertices[(size_t)i].position;
    std::array<double, 2> b = patch.vertices[(size_t)k].position;
    std::array<double, 2> pa = to_screen(a), pb = to_screen(b);
    if (mode == RenderMode::Euclidean) {
      out += "<line x1=\"" + num(pa[0]) + "\" y1=\"" + num(pa[1]) + "\" x2=\"" +
             num(pb[0]) + "\" y2=\"" + num(pb[1]) +
             "\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
      continue;
    }
    // Circle through a and b orthogonal to the unit circle:
    // 2<c, z> = |z|^2 + 1 at both endpoints.
    double det = 4 * (a[0] * b[1] - a[1] * b[0]);
    if (std::abs(det) < 1e-9) {
      out += "<line x1=\"" + num(pa[0]) + "\" y1=\"" + num(pa[1]) + "\" x2=\"" +
             num(pb[0]) + "\" y2=\"" + num(pb[1]) +
             "\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
      continue;
    }
    double ra = a[0] * a[0] + a[1] * a[1] + 1, rb = b[0] * b[0] + b[1] * b[1] + 1;
    double cx = (ra * 2 * b[1] - rb * 2 * a[1]) / det;
    double cy = (rb * 2 * a[0] - ra * 2 * b[0]) / det;
    double r = std::sqrt(std::max(cx * cx + cy * cy - 1.0, 0.0)) * kDiscR;
    std::array<double, 2> pcentre = to_screen({cx, cy});
    // Sweep flag from the SVG endpoint-to-centre equations: with
    // large-arc 0, the centre sits at mid + s*h*(y1', -x1'), s positive
    // iff sweep differs from large-arc.
    double x1p = (pa[0] - pb[0]) / 2, y1p = (pa[1] - pb[1]) / 2;
    double wx = pcentre[0] - (pa[0] + pb[0]) / 2, wy = pcentre[1] - (pa[1] + pb[1]) / 2;
    int sweep = (wx * y1p - wy * x1p) > 0 ? 1 : 0;
    out += "<path d=\"M " + num(pa[0]) + " " + num(pa[1]) + " A " + num(r) + " " +
           num(r) + " 0 0 " + std::to_string(sweep) + " " + num(pb[0]) + " " +
           num(pb[1]) + "\" fill=\"none\" stroke=\"#555555\" stroke-width=\"1\"/>\n";
  }

  for (const auto& v : patch.vertices) {
    std::array<double, 2> p = to_screen(v.position);
    std::string fill = "#888888";
    if (pc) fill = palette_colour(colouring::colour_of(*pc, pg, v));
    out += "<circle cx=\"" + num(p[0]) + "\" cy=\"" + num(p[1]) +
           "\" r=\"5.00\" fill=\"" + fill + "\" stroke=\"#222222\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::vector<std::string> example_names() {
  return {"square",
          "hexagonal",
          "triangular",
          "leafed-square",
          "subdivided-square",
          "leafed-subdivided-square",
          "path",
          "tess-3-7",
          "tess-4-5"};
}

graph::PeriodicGraph example_graph(const std::string& name) {
  if (name == "square") return graph::square_lattice();
  if (name == "hexagonal") return graph::hexagonal_lattice();
  if (name == "triangular") return graph::triangular_lattice();
  if (name == "leafed-square") return graph::leafed_square_lattice();
  if (name == "subdivided-square") return graph::subdivided_square_lattice();
  if (name == "leafed-subdivided-square")
    return graph::leafed_subdivided_square_lattice();
  if (name == "path") return graph::path_graph();
  if (name == "tess-3-7") return graph::tessellation(3, 7);
  if (name == "tess-4-5") return graph::tessellation(4, 5);
  throw ArgumentError("unknown example '" + name + "'");
}

}  // namespace perico::io
