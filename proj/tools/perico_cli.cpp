#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "perico/io.hpp"
#include "perico/verify.hpp"

using nlohmann::json;
using namespace perico;

namespace {

struct Options {
  unsigned seed = 12345;
  long long budget = -1;
  int radius = -1;
  std::string output;
  std::string format = "text";
};

graph::PeriodicGraph load_graph(const std::string& spec) {
  const std::string prefix = "examples:";
  if (spec.rfind(prefix, 0) == 0) return io::example_graph(spec.substr(prefix.size()));
  std::ifstream in(spec);
  if (!in) throw ArgumentError("cannot open graph file '" + spec + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return io::parse_periodic_graph(ss.str());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.output);
  if (!out) throw ArgumentError("cannot write to '" + opt.output + "'");
  out << text;
}

json report_json(const colouring::PipelineReport& r) {
  json j;
  j["index"] = r.index;
  j["palette"] = r.palette;
  j["strategy"] = r.strategy;
  j["reduction_steps"] = r.reduction_steps;
  j["min_length"] = r.min_length;
  if (r.genus >= 0) {
    j["genus"] = r.genus;
    j["ringel_youngs"] = r.ringel_youngs;
  }
  j["thomassen_threshold"] = r.thomassen_threshold.str();
  j["meets_thomassen"] = r.meets_thomassen;
  return j;
}

std::string report_text(const colouring::PipelineReport& r) {
  std::string out;
  out += "index " + std::to_string(r.index) + "\n";
  out += "palette " + std::to_string(r.palette) + "\n";
  out += "strategy " + r.strategy + "\n";
  out += "reduction steps " + std::to_string(r.reduction_steps) + "\n";
  if (r.genus >= 0) {
    out += "genus " + std::to_string(r.genus) + "\n";
    out += "ringel-youngs " + std::to_string(r.ringel_youngs) + "\n";
  }
  out += "thomassen threshold " + r.thomassen_threshold.str() + "\n";
  out += std::string("meets thomassen ") + (r.meets_thomassen ? "yes" : "no") + "\n";
  return out;
}

std::pair<colouring::PeriodicColouring, colouring::PipelineReport> run_pipeline(
    const graph::PeriodicGraph& pg, const Options& opt) {
  if (pg.kind == graph::GroupKind::EuclideanLattice)
    return colouring::euclid_pipeline(pg);
  hyp::SubgroupSearchBudget budget;
  if (opt.budget >= 0) {
    budget.max_index = opt.budget;
    budget.max_cosets = (int)std::min<long long>(opt.budget, 1000000);
  }
  return colouring::hyp_pipeline(pg, budget);
}

int cmd_validate(const Options& opt, const std::string& graph_spec) {
  graph::PeriodicGraph pg = load_graph(graph_spec);  // validates on parse
  if (opt.format == "json") {
    json j;
    j["pass"] = true;
    j["orbits"] = pg.orbit_count;
    j["darts"] = pg.darts.size();
    emit(opt, j.dump(2) + "\n");
  } else {
    emit(opt, "pass: " + std::to_string(pg.orbit_count) + " orbits, " +
                  std::to_string(pg.darts.size()) + " darts\n");
  }
  return 0;
}

int cmd_ends(const Options& opt, const std::string& graph_spec) {
  graph::PeriodicGraph pg = load_graph(graph_spec);
  int R = opt.radius > 0 ? opt.radius : 4;
  int r = std::max(1, R - 2);
  int ends = graph::estimate_ends(pg, r, R);
  if (opt.format == "json") {
    json j;
    j["ends"] = ends;
    j["r"] = r;
    j["R"] = R;
    emit(opt, j.dump(2) + "\n");
  } else {
    emit(opt, "ends " + std::to_string(ends) + "\n");
  }
  return 0;
}

int cmd_reduce(const Options& opt, const std::string& graph_spec) {
  graph::PeriodicGraph pg = load_graph(graph_spec);
  auto [reduced, trace] = reduction::reduce_to_3connected(pg);
  if (!opt.output.empty()) {
    std::ofstream out(opt.output);
    if (!out) throw ArgumentError("cannot write to '" + opt.output + "'");
    out << io::serialize(trace);
  }
  if (opt.format == "json") {
    std::cout << io::serialize(trace);
  } else {
    for (size_t i = 0; i < trace.steps.size(); ++i) {
      const auto& st = trace.steps[i];
      std::cout << "step " << (i + 1) << ": case " << st.connectivity_case
                << ", orbits " << st.orbit_count_before << " -> "
                << st.orbit_count_after << "\n";
    }
    std::cout << "steps " << trace.steps.size() << "\n";
    std::cout << "orbits " << reduced.orbit_count << "\n";
  }
  return 0;
}

int cmd_colour(const Options& opt, const std::string& graph_spec) {
  graph::PeriodicGraph pg = load_graph(graph_spec);
  auto [pc, report] = run_pipeline(pg, opt);
  if (!opt.output.empty()) {
    std::ofstream out(opt.output);
    if (!out) throw ArgumentError("cannot write to '" + opt.output + "'");
    out << io::serialize(pc);
  }
  if (opt.format == "json") {
    json j = report_json(report);
    if (opt.output.empty()) j["colouring"] = json::parse(io::serialize(pc));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << report_text(report);
  }
  return 0;
}

int cmd_edge_colour(const Options& opt, const std::string& graph_spec) {
  graph::PeriodicGraph pg = load_graph(graph_spec);
  linegraph::EdgeColouring ec = linegraph::periodic_edge_colouring(pg);
  if (!opt.output.empty()) {
    std::ofstream out(opt.output);
    if (!out) throw ArgumentError("cannot write to '" + opt.output + "'");
    out << io::serialize(ec.pc);
  }
  if (opt.format == "json") {
    json j = report_json(ec.report);
    j["line_graph"] = json::parse(io::serialize(ec.line.lg));
    if (opt.output.empty()) j["colouring"] = json::parse(io::serialize(ec.pc));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << report_text(ec.report);
  }
  return 0;
}

int cmd_orient(const Options& opt, const std::string& graph_spec,
               const std::string& colouring_path) {
  graph::PeriodicGraph pg = load_graph(graph_spec);
  colouring::PeriodicColouring pc =
      io::parse_periodic_colouring(read_file(colouring_path), pg);
  linegraph::Orientation o = linegraph::periodic_orientation(pc, pg);
  emit(opt, io::serialize(o));
  return 0;
}

int cmd_verify(const Options& opt, const std::string& graph_spec,
               const std::string& colouring_path, int samples) {
  graph::PeriodicGraph pg = load_graph(graph_spec);
  colouring::PeriodicColouring pc =
      io::parse_periodic_colouring(read_file(colouring_path), pg);
  int radius = opt.radius > 0 ? opt.radius : 4;
  verify::ProperReport proper = verify::check_proper(pc, pg, radius);
  verify::PeriodicReport periodic = verify::check_periodic(pc, pg, samples, opt.seed);
  bool pass = proper.pass && periodic.pass;
  json j;
  j["pass"] = pass;
  j["proper"] = {{"pass", proper.pass},
                 {"vertices_checked", proper.vertices_checked},
                 {"edges_checked", proper.edges_checked},
                 {"monochromatic", proper.details}};
  j["periodic"] = {{"pass", periodic.pass},
                   {"samples", periodic.samples},
                   {"classes_seen", periodic.classes_seen},
                   {"failures", periodic.failures}};
  emit(opt, j.dump(2) + "\n");
  return pass ? 0 : 1;
}

int cmd_genus(const Options& opt, const std::string& signature, long long index) {
  hyp::Signature sig;
  std::stringstream ss(signature);
  std::string part;
  std::vector<long long> parts;
  while (std::getline(ss, part, ',')) {
    try {
      parts.push_back(std::stoll(part));
    } catch (const std::exception&) {
      throw ArgumentError("signature must be comma-separated integers");
    }
  }
  if (parts.empty()) throw ArgumentError("signature must be g,m1,m2,...");
  sig.genus = (int)parts[0];
  for (size_t i = 1; i < parts.size(); ++i) sig.periods.push_back((int)parts[i]);
  long long g = hyp::riemann_hurwitz_genus(sig, index);
  if (opt.format == "json") {
    json j;
    j["genus"] = g;
    emit(opt, j.dump(2) + "\n");
  } else {
    emit(opt, std::to_string(g) + "\n");
  }
  return 0;
}

int cmd_budget(const Options& opt, long long genus) {
  hyp::ColourBudget b = hyp::colour_budget(genus);
  if (opt.format == "json") {
    json j;
    j["ringel_youngs"] = b.ringel_youngs;
    j["thomassen_threshold"] = b.thomassen_threshold.str();
    emit(opt, j.dump(2) + "\n");
  } else {
    emit(opt, "ringel-youngs " + std::to_string(b.ringel_youngs) +
                  "\nthomassen-threshold " + b.thomassen_threshold.str() + "\n");
  }
  return 0;
}

int cmd_render(const Options& opt, const std::string& graph_spec,
               const std::string& colouring_path, const std::string& mode_name) {
  graph::PeriodicGraph pg = load_graph(graph_spec);
  colouring::PeriodicColouring pc;
  bool have_pc = false;
  if (!colouring_path.empty()) {
    pc = io::parse_periodic_colouring(read_file(colouring_path), pg);
    have_pc = true;
  }
  io::RenderMode mode;
  if (mode_name == "euclidean")
    mode = io::RenderMode::Euclidean;
  else if (mode_name == "poincare")
    mode = io::RenderMode::Poincare;
  else if (mode_name.empty())
    mode = pg.kind == graph::GroupKind::EuclideanLattice ? io::RenderMode::Euclidean
                                                         : io::RenderMode::Poincare;
  else
    throw ArgumentError("mode must be 'euclidean' or 'poincare'");
  int radius = opt.radius >= 0 ? opt.radius : 4;
  emit(opt, io::render_svg(pg, have_pc ? &pc : nullptr, radius, mode));
  return 0;
}

int cmd_examples(const Options& opt, const std::string& name) {
  if (name.empty()) {
    std::string out;
    for (const std::string& n : io::example_names()) out += n + "\n";
    emit(opt, out);
    return 0;
  }
  emit(opt, io::serialize(io::example_graph(name)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"periodic proper colourings of quasi-transitive planar graphs"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--seed", opt.seed, "Sampling seed");
  app.add_option("--budget", opt.budget, "Search/colouring budget");
  app.add_option("--radius", opt.radius, "Patch radius");
  app.add_option("--output", opt.output, "Write the primary artifact to a file");
  app.add_option("--format", opt.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}));

  std::function<int()> action;
  std::string graph_spec, colouring_path, signature, mode_name, example_name;
  long long index = 0, genus = 0;
  int samples = 100;

  auto* validate = app.add_subcommand("validate", "Check quotient invariants");
  validate->add_option("graph", graph_spec, "Graph file or examples:NAME")->required();
  validate->callback([&] { action = [&] { return cmd_validate(opt, graph_spec); }; });

  auto* ends = app.add_subcommand("ends", "Estimate the number of ends");
  ends->add_option("graph", graph_spec)->required();
  ends->callback([&] { action = [&] { return cmd_ends(opt, graph_spec); }; });

  auto* reduce = app.add_subcommand("reduce", "Reduce to a 3-connected lattice graph");
  reduce->add_option("graph", graph_spec)->required();
  reduce->callback([&] { action = [&] { return cmd_reduce(opt, graph_spec); }; });

  auto* colour = app.add_subcommand("colour", "Run the periodic colouring pipeline");
  colour->add_option("graph", graph_spec)->required();
  colour->callback([&] { action = [&] { return cmd_colour(opt, graph_spec); }; });

  auto* edge = app.add_subcommand("edge-colour", "Colour edges via the line graph");
  edge->add_option("graph", graph_spec)->required();
  edge->callback([&] { action = [&] { return cmd_edge_colour(opt, graph_spec); }; });

  auto* orient = app.add_subcommand("orient", "Orient edges from low to high colour");
  orient->add_option("graph", graph_spec)->required();
  orient->add_option("--colouring", colouring_path, "Colouring JSON file")->required();
  orient->callback(
      [&] { action = [&] { return cmd_orient(opt, graph_spec, colouring_path); }; });

  auto* verify_cmd = app.add_subcommand("verify", "Verify properness and periodicity");
  verify_cmd->add_option("graph", graph_spec)->required();
  verify_cmd->add_option("--colouring", colouring_path)->required();
  verify_cmd->add_option("--samples", samples, "Periodicity sample count");
  verify_cmd->callback([&] {
    action = [&] { return cmd_verify(opt, graph_spec, colouring_path, samples); };
  });

  auto* genus_cmd = app.add_subcommand("genus", "Quotient-surface genus");
  genus_cmd->add_option("--signature", signature, "g,m1,m2,...")->required();
  genus_cmd->add_option("--index", index, "Subgroup index")->required();
  genus_cmd->callback(
      [&] { action = [&] { return cmd_genus(opt, signature, index); }; });

  auto* budget_cmd = app.add_subcommand("budget", "Colour budget for a genus");
  budget_cmd->add_option("--genus", genus, "Surface genus")->required();
  budget_cmd->callback([&] { action = [&] { return cmd_budget(opt, genus); }; });

  auto* render = app.add_subcommand("render", "Render a patch as SVG");
  render->add_option("graph", graph_spec)->required();
  render->add_option("--colouring", colouring_path);
  render->add_option("--mode", mode_name, "euclidean or poincare");
  render->callback([&] {
    action = [&] { return cmd_render(opt, graph_spec, colouring_path, mode_name); };
  });

  auto* examples = app.add_subcommand("examples", "List or print bundled examples");
  examples->add_option("name", example_name, "Example to print");
  examples->callback(
      [&] { action = [&] { return cmd_examples(opt, example_name); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return action ? action() : 2;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
