#include "medial/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <tuple>

#include "CLI11.hpp"
#include "json.hpp"
#include "medial/convex.hpp"
#include "medial/cover.hpp"
#include "medial/fields.hpp"
#include "medial/grid_kernels.hpp"
#include "medial/scenario.hpp"
#include "medial/verification.hpp"

namespace medial::cli {
namespace {

using nlohmann::json;

struct Options {
  std::string config;
  std::string out;
  std::string points;
  std::string svg;
  std::optional<std::uint64_t> seed;
  bool allow_unresolved = false;
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::ios_base::failure("cannot write " + path);
  f << text;
  if (!f) throw std::ios_base::failure("write failed for " + path);
}

json header(const ScenarioConfig& cfg, const char* command) {
  return {{"tool", "medial"}, {"version", kVersion}, {"command", command}, {"seed", cfg.seed},
          {"config_hash", cfg.hash()}};
}

ClosedSet require_set(const ScenarioConfig& cfg) {
  if (cfg.set) return *cfg.set;
  const std::string prefix = "asplund:";
  if (cfg.field.rfind(prefix, 0) == 0 && cfg.field.size() > prefix.size()) {
    return ClosedSet::load(cfg.base_dir / cfg.field.substr(prefix.size()));
  }
  throw ConfigError("field 'set' is required for this subcommand");
}

std::string svg_overlay(const ClosedSet& set, const Window& w, const std::vector<Point>& points,
                        const std::vector<std::vector<Point>>& traces) {
  const double scale = 400.0 / std::max(w.upper[0] - w.lower[0], w.upper[1] - w.lower[1]);
  auto px = [&](const Point& p) {
    std::ostringstream s;
    s << (p[0] - w.lower[0]) * scale << ',' << (w.upper[1] - p[1]) * scale;
    return s.str();
  };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (w.upper[0] - w.lower[0]) * scale << "\" height=\""
    << (w.upper[1] - w.lower[1]) * scale << "\">\n";
  for (const auto& trace : traces) {
    s << "<polyline fill=\"none\" stroke=\"#7fb3d5\" stroke-width=\"1\" points=\"";
    for (const auto& p : trace) s << px(p) << ' ';
    s << "\"/>\n";
  }
  for (const auto& prim : set.primitives()) {
    if (const auto* sp = std::get_if<SitePoint>(&prim)) {
      const auto c = px(sp->at);
      s << "<circle r=\"3\" fill=\"black\" cx=\"" << c.substr(0, c.find(',')) << "\" cy=\""
        << c.substr(c.find(',') + 1) << "\"/>\n";
    } else if (const auto* seg = std::get_if<Segment>(&prim)) {
      s << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"" << px(seg->a) << ' '
        << px(seg->b) << "\"/>\n";
    } else if (const auto* poly = std::get_if<PolygonBoundary>(&prim)) {
      s << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
      for (const auto& v : poly->vertices) s << px(v) << ' ';
      s << "\"/>\n";
    } else if (const auto* ball = std::get_if<Ball>(&prim)) {
      const auto c = px(ball->center);
      s << "<circle fill=\"" << (ball->solid ? "#cccccc" : "none") << "\" stroke=\"black\" stroke-width=\"2\" r=\""
        << ball->radius * scale << "\" cx=\"" << c.substr(0, c.find(',')) << "\" cy=\"" << c.substr(c.find(',') + 1)
        << "\"/>\n";
    }
  }
  for (const auto& p : points) {
    const auto c = px(p);
    s << "<circle r=\"1\" fill=\"#c0392b\" cx=\"" << c.substr(0, c.find(',')) << "\" cy=\""
      << c.substr(c.find(',') + 1) << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

int cmd_analyze(const ScenarioConfig& cfg, const Options& opt, std::ostream& out) {
  const ClosedSet set = require_set(cfg);
  const Grid grid(cfg.window, cfg.grid);
  const auto samples = sweep_distance_field(set, grid, cfg.field_options);
  std::ostringstream csv;
  write_field_csv(csv, samples);
  emit(opt.out, csv.str(), out);
  return kOk;
}

int cmd_cover(const ScenarioConfig& cfg, const Options& opt, std::ostream& out) {
  const auto field = std::make_shared<const ScalarField>(strongify(cfg.resolve_field()));
  const auto family = enumerate_cover(field, cfg.axes, cfg.lattice, cfg.cap);

  // Lattice pairs witnessed at some grid node.
  const Grid grid(cfg.window, cfg.grid);
  const WitnessOptions wopt{cfg.field_options.step};
  std::vector<std::optional<NondiffWitness>> found(grid.node_count());
  const auto count = static_cast<std::ptrdiff_t>(grid.node_count());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t k = 0; k < count; ++k) found[k] = nondiff_witness(*field, grid.node(k), cfg.lattice, wopt);
  std::set<std::tuple<std::size_t, std::int64_t, std::int64_t>> witnessed;
  for (const auto& w : found) {
    if (w) witnessed.insert({w->axis, w->alpha_index, w->beta_index});
  }

  std::vector<json> graphs(family.graphs.size());
  const auto ngraphs = static_cast<std::ptrdiff_t>(family.graphs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < ngraphs; ++k) {
    const auto& g = family.graphs[k];
    json j = export_graph(g, cfg.window, cfg.export_cells);
    const auto ka = static_cast<std::int64_t>(std::llround(g.alpha() / cfg.lattice.delta));
    const auto kb = static_cast<std::int64_t>(std::llround(g.beta() / cfg.lattice.delta));
    j["contains_witness"] = witnessed.count({g.axis(), ka, kb}) > 0;
    graphs[k] = std::move(j);
  }
  emit(opt.out, json(graphs).dump(1) + "\n", out);
  return kOk;
}

int cmd_verify(const ScenarioConfig& cfg, const Options& opt, std::ostream& out, std::ostream& err) {
  const ClosedSet set = require_set(cfg);
  const Grid grid(cfg.window, cfg.grid);
  CertifyOptions copt;
  copt.scan.field = cfg.field_options;
  copt.scan.localization = cfg.localization;
  copt.lattice = cfg.lattice;
  copt.witness.step = cfg.field_options.step;
  copt.tolerance = cfg.coverage_tolerance;
  copt.graph_offset = cfg.corrupt_graph_offset;

  const GridScan scan = scan_grid(set, grid, copt.scan);
  const auto points = ambiguous_points(scan, grid);
  const auto report = certify_samples(set, points, copt);
  const auto measure = estimate_measure(points, cfg.window, default_box_sizes(grid));

  const bool ok = report.pass && (report.unresolved == 0 || opt.allow_unresolved);
  json doc = header(cfg, "verify");
  doc["grid"] = cfg.grid;
  doc["lattice"] = {{"delta", cfg.lattice.delta}, {"bound", cfg.lattice.bound}};
  doc["allow_unresolved"] = opt.allow_unresolved;
  doc["coverage"] = report.to_json();
  doc["measure"] = measure.to_json();
  doc["ambiguous_cell_fraction"] = ambiguous_cell_fraction(scan, grid);
  doc["exit_code"] = ok ? kOk : kCoverageFailed;

  std::string points_csv;
  if (!opt.points.empty()) {
    std::ostringstream s;
    s.precision(17);
    for (std::size_t i = 0; i < set.dimension(); ++i) s << (i ? "," : "") << 'x' << i + 1;
    s << '\n';
    for (const auto& p : points) {
      for (std::size_t i = 0; i < p.size(); ++i) s << (i ? "," : "") << p[i];
      s << '\n';
    }
    points_csv = s.str();
  }
  std::string svg;
  if (!opt.svg.empty() && set.dimension() == 2) {
    const auto field = std::make_shared<const ScalarField>(strongify(asplund_field(set)));
    GraphRegistry registry(field, cfg.lattice);
    std::vector<std::vector<Point>> traces;
    std::set<std::tuple<std::size_t, std::int64_t, std::int64_t>> drawn;
    for (const auto& r : report.records) {
      if (!r.witness || drawn.size() >= 8) continue;
      if (!drawn.insert({r.witness->axis, r.witness->alpha_index, r.witness->beta_index}).second) continue;
      const auto& g = registry.get(r.witness->axis, r.witness->alpha_index, r.witness->beta_index);
      const std::size_t other = 1 - g.axis();
      std::vector<Point> trace;
      for (int k = 0; k <= 64; ++k) {
        const double t = cfg.window.lower[other] + (cfg.window.upper[other] - cfg.window.lower[other]) * k / 64.0;
        trace.push_back(Point{t}.insert(g.axis(), g(Point{t})));
      }
      traces.push_back(std::move(trace));
    }
    svg = svg_overlay(set, cfg.window, points, traces);
  }

  emit(opt.out, doc.dump(1) + "\n", out);
  if (!opt.points.empty()) emit(opt.points, points_csv, out);
  if (!svg.empty()) emit(opt.svg, svg, out);

  if (!ok) {
    err << "coverage failed: " << report.covered << "/" << report.resolved << " resolved samples covered, "
        << report.unresolved << " unresolved, max deviation " << report.max_deviation << "\n";
  }
  return ok ? kOk : kCoverageFailed;
}

int cmd_decompose(const ScenarioConfig& cfg, const Options& opt, std::ostream& out, std::ostream& err) {
  const ScalarField f = cfg.resolve_field();
  if (!f.c2) throw ConfigError("field 'field': '" + cfg.field + "' has no C2 evaluator");
  const auto dec = cc_decompose_c2(f, cfg.radius);

  std::mt19937_64 rng(cfg.seed);
  const BallRegion inner{Point(f.dim), cfg.radius};
  json table = json::array();
  double max_residual = 0.0;
  for (std::size_t k = 0; k < cfg.samples; ++k) {
    const Point x = sample_region(inner, rng);
    const double fx = f(x), gx = dec.g(x), hx = dec.h(x);
    const double res = std::abs(gx - hx - fx);
    max_residual = std::max(max_residual, res);
    table.push_back({{"x", std::vector<double>(x.begin(), x.end())}, {"f", fx}, {"g", gx}, {"h", hx},
                     {"residual", res}});
  }
  const auto probe = convexity_probe(dec.g, BallRegion{Point(f.dim), 2 * cfg.radius}, cfg.samples, cfg.seed);

  json doc = header(cfg, "decompose");
  doc["field"] = f.tag;
  doc["radius"] = cfg.radius;
  doc["c_r"] = dec.c_r;
  doc["hessian_bound"] = dec.hessian_bound;
  doc["max_residual"] = max_residual;
  doc["g_convexity"] = {{"samples", probe.samples}, {"max_violation", probe.max_violation},
                        {"tolerance", probe.tolerance}, {"pass", probe.pass}};
  doc["table"] = std::move(table);
  emit(opt.out, doc.dump(1) + "\n", out);
  if (!probe.pass) {
    err << "g failed the convexity probe: violation " << probe.max_violation << "\n";
    return kNotConvex;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distance fields, ambiguous loci and their (c-c)-graph covers", "medial"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options opt;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", opt.config, "Scenario JSON")->required();
    sub->add_option("-o,--out", opt.out, "Output path (default stdout)");
    sub->add_option("--seed", seed, "Override the config seed");
  };
  auto* analyze = app.add_subcommand("analyze", "Distance/classification CSV over the grid");
  auto* cover = app.add_subcommand("cover", "Export the enumerated (c-c)-graph family");
  auto* verify = app.add_subcommand("verify", "Certify that the detected ambiguous locus is covered");
  auto* decompose = app.add_subcommand("decompose", "Split a C2 field into two C2 convex functions");
  for (auto* s : {analyze, cover, verify, decompose}) add_common(s);
  verify->add_flag("--allow-unresolved", opt.allow_unresolved, "Accept samples without a lattice witness");
  verify->add_option("--points", opt.points, "CSV of detected ambiguous points");
  verify->add_option("--svg", opt.svg, "SVG overlay (2-D only)");

  std::vector<std::string> argv_store{"medial"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kConfigError;
  }

  try {
    ScenarioConfig cfg = load_config(opt.config);
    for (auto* s : {analyze, cover, verify, decompose}) {
      if (s->count_all() > 0 && s->count("--seed") > 0) opt.seed = seed;
    }
    if (opt.seed) cfg.seed = *opt.seed;
    if (analyze->parsed()) return cmd_analyze(cfg, opt, out);
    if (cover->parsed()) return cmd_cover(cfg, opt, out);
    if (verify->parsed()) return cmd_verify(cfg, opt, out, err);
    return cmd_decompose(cfg, opt, out, err);
  } catch (const FamilyBudgetError& e) {
    err << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const std::ios_base::failure& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace medial::cli
