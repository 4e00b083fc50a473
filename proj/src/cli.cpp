#include "penny/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "penny/contact.hpp"
#include "penny/dimension.hpp"
#include "penny/errors.hpp"
#include "penny/extend.hpp"
#include "penny/faces.hpp"
#include "penny/field.hpp"
#include "penny/heat.hpp"
#include "penny/metrics.hpp"
#include "penny/packing.hpp"
#include "penny/rng.hpp"
#include "penny/svg.hpp"
#include "penny/triangulate.hpp"

namespace penny::cli {

namespace {

using nlohmann::json;

// Every parameter of every subcommand; CLI11 fills the fields that the
// chosen subcommand declares.
struct RunConfig {
  std::string command;
  std::string packing_path;
  std::string out_path;
  int threads = 1;

  std::string kind = "square";
  int half_width = 8;
  double keep = 0.9;
  int max_degree = 8;
  int retries = 1000;
  std::uint64_t seed = 0;

  std::string policy = "rollout";
  std::optional<VertexId> center;
  int radius = 8;
  std::string data = "x";

  std::vector<int> discrete_radii{4, 8, 16};
  std::vector<double> planar_radii{16.0, 32.0};
  int probes = 100;
  int modes = 8;

  int k = 1;
  double beta = 2.0;
  double delta = 0.5;
  std::vector<double> schedule{12.0, 16.0, 24.0};
  int pencil_modes = -1;
  std::string gram = "discrete";
  std::vector<std::string> extra;

  std::string heat_mode = "evolve";
  std::string init = "delta";
  int steps = 100;
  double dt = kMaxHeatStep;
  int frame_every = 10;
  std::string poly = "x2+y2";
  int order = -1;

  int pairs = 1000;
  int r_max = -1;
  int centers = 1;

  bool mesh = false;
  std::string field_path;
};

struct Polynomial {
  int degree;
  std::function<double(double, double)> fn;
};

const std::map<std::string, Polynomial>& polynomials() {
  static const std::map<std::string, Polynomial> table{
      {"1", {0, [](double, double) { return 1.0; }}},
      {"x", {1, [](double x, double) { return x; }}},
      {"y", {1, [](double, double y) { return y; }}},
      {"xy", {2, [](double x, double y) { return x * y; }}},
      {"x2-y2", {2, [](double x, double y) { return x * x - y * y; }}},
      {"x2+y2", {2, [](double x, double y) { return x * x + y * y; }}},
      {"x3-3xy2", {3, [](double x, double y) { return x * x * x - 3 * x * y * y; }}},
      {"3x2y-y3", {3, [](double x, double y) { return 3 * x * x * y - y * y * y; }}},
  };
  return table;
}

std::vector<std::string> polynomial_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : polynomials()) names.push_back(name);
  return names;
}

ScalarField sample_polynomial(const PennyGraph& g, const std::string& name, Point origin) {
  const auto& poly = polynomials().at(name);
  return ScalarField::sample(g, [&](Point p) { return poly.fn(p.x - origin.x, p.y - origin.y); });
}

VertexId central_vertex(const PennyGraph& g) {
  if (g.num_vertices() == 0) throw ValidationError("empty graph has no center");
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x, lo_y = lo_x, hi_y = -lo_x;
  for (const Point& p : g.positions()) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  return nearest_vertex(g, {0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)});
}

struct Window {
  PennyGraph graph;
  FaceSet faces;
  VertexSet rim;
  VertexId center = 0;
};

Window load_window(const RunConfig& cfg) {
  Window w;
  w.graph = build_contact_graph(load_packing(cfg.packing_path));
  w.faces = trace_faces(w.graph);
  w.rim = window_rim(w.graph, w.faces);
  if (cfg.center) {
    if (!w.graph.valid(*cfg.center)) throw ValidationError("--center is not a vertex id");
    w.center = *cfg.center;
  } else {
    w.center = central_vertex(w.graph);
  }
  return w;
}

EarPolicy parse_policy(const std::string& s) {
  if (s == "first-found") return EarPolicy::first_found;
  if (s == "max-min-angle") return EarPolicy::max_min_angle;
  return EarPolicy::rollout;
}

json cmd_generate(const RunConfig& cfg) {
  if (cfg.kind == "random") {
    RandomSubsetParams p;
    p.half_width = cfg.half_width;
    p.keep_probability = cfg.keep;
    p.max_facial_degree = cfg.max_degree;
    p.seed = cfg.seed;
    p.retry_budget = cfg.retries;
    return to_json(generate_random_subset(p));
  }
  const LatticeKind kind = cfg.kind == "square" ? LatticeKind::square : LatticeKind::triangular;
  return to_json(generate_lattice(kind, cfg.half_width));
}

json cmd_graph(const RunConfig& cfg) {
  const PennyGraph g = build_contact_graph(load_packing(cfg.packing_path));
  std::vector<std::size_t> histogram(g.max_degree() + 1, 0);
  for (VertexId v = 0; v < g.num_vertices(); ++v) ++histogram[g.degree(v)];
  json doc = to_json(g);
  doc["stats"] = {{"vertices", g.num_vertices()},
                  {"edges", g.num_edges()},
                  {"components", g.num_components()},
                  {"max_degree", g.max_degree()},
                  {"degree_histogram", histogram}};
  return doc;
}

json cmd_faces(const RunConfig& cfg) {
  const PennyGraph g = build_contact_graph(load_packing(cfg.packing_path));
  return to_json(g, trace_faces(g));
}

json cmd_triangulate(const RunConfig& cfg) {
  const PennyGraph g = build_contact_graph(load_packing(cfg.packing_path));
  const FaceSet faces = trace_faces(g);
  const Triangulation mesh = triangulate_window(g, faces, parse_policy(cfg.policy));
  return {{"mesh", to_json(mesh)}, {"quality", to_json(quality_report(mesh, faces.max_bounded_degree()))}};
}

json cmd_dirichlet(const RunConfig& cfg) {
  const Window w = load_window(cfg);
  const PennyGraph& g = w.graph;
  ScalarField data;
  if (cfg.data == "random") {
    CounterRng rng(cfg.seed);
    std::vector<double> values(g.num_vertices());
    for (double& v : values) v = rng.uniform(-1.0, 1.0);
    data = ScalarField(std::move(values));
  } else {
    data = sample_polynomial(g, cfg.data, g.position(w.center));
  }
  const DirichletSolution sol = solve_dirichlet(g, ball(g, w.center, cfg.radius), data);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (VertexId v : sol.boundary) {
    lo = std::min(lo, data[v]);
    hi = std::max(hi, data[v]);
  }
  bool max_principle = true;
  for (VertexId v : sol.domain) max_principle = max_principle && sol.field[v] >= lo && sol.field[v] <= hi;
  return {{"center", w.center},
          {"radius", cfg.radius},
          {"data", cfg.data},
          {"domain_size", sol.domain.size()},
          {"boundary_size", sol.boundary.size()},
          {"residual", sol.residual},
          {"iterations", sol.iterations},
          {"max_principle", max_principle},
          {"field", to_json(sol.field)["values"]}};
}

json ratio_table(const std::vector<double>& ratios) {
  double sup = 0.0;
  std::vector<double> running;
  running.reserve(ratios.size());
  for (double r : ratios) {
    sup = std::max(sup, r);
    running.push_back(sup);
  }
  return {{"sup", sup}, {"ratios", ratios}, {"running_sup", running}};
}

json cmd_mvi(const RunConfig& cfg) {
  const Window w = load_window(cfg);
  const PennyGraph& g = w.graph;
  json discrete = json::array();
  for (int r : cfg.discrete_radii) {
    const auto basis = harmonic_probe_basis(g, w.center, 2 * r, cfg.modes, &w.rim, {}, cfg.threads);
    CounterRng rng = CounterRng(cfg.seed).split(std::uint64_t(r));
    std::vector<double> ratios;
    for (int i = 0; i < cfg.probes; ++i) {
      ratios.push_back(discrete_mvi_ratio(g, random_probe(basis, rng), w.center, r));
    }
    json row = ratio_table(ratios);
    row["r"] = r;
    row["constant_ratio"] = discrete_mvi_ratio(g, ScalarField(g.num_vertices(), 1.0), w.center, r);
    discrete.push_back(row);
  }
  json planar = json::array();
  if (!cfg.planar_radii.empty()) {
    const Triangulation mesh = triangulate_window(g, w.faces);
    const Point p = g.position(w.center);
    PlanarMviOptions options;
    options.min_radius = 4.0 * double(w.faces.max_bounded_degree());
    for (double R : cfg.planar_radii) {
      const int r_out = int(std::ceil(2.0 * R)) + 1;
      const auto basis = harmonic_probe_basis(g, w.center, r_out, cfg.modes, &w.rim, {}, cfg.threads);
      CounterRng rng = CounterRng(cfg.seed).split(1000 + std::uint64_t(std::llround(R * 16)));
      std::vector<double> ratios;
      for (int i = 0; i < cfg.probes; ++i) {
        ratios.push_back(planar_mvi_ratio(g, PLField(mesh, random_probe(basis, rng)), p, R, options));
      }
      json row = ratio_table(ratios);
      row["R"] = R;
      row["constant_ratio"] = planar_mvi_ratio(g, PLField(mesh, ScalarField(g.num_vertices(), 1.0)), p, R, options);
      planar.push_back(row);
    }
  }
  return {{"center", w.center}, {"probes", cfg.probes}, {"modes", cfg.modes}, {"discrete", discrete},
          {"planar", planar},     {"min_planar_radius", 4.0 * double(w.faces.max_bounded_degree())}};
}

json cmd_dim(const RunConfig& cfg) {
  const Window w = load_window(cfg);
  const PennyGraph& g = w.graph;
  const GramMode mode = cfg.gram == "planar" ? GramMode::planar : GramMode::discrete;
  std::optional<Triangulation> mesh;
  if (mode == GramMode::planar) mesh = triangulate_window(g, w.faces);
  std::vector<ScalarField> extra;
  for (const std::string& name : cfg.extra) extra.push_back(sample_polynomial(g, name, g.position(w.center)));
  std::vector<GramPencil> pencils;
  for (double R : cfg.schedule) {
    PencilParams params;
    params.k = cfg.k;
    params.radius = R;
    params.beta = cfg.beta;
    params.modes = cfg.pencil_modes;
    params.mode = mode;
    params.extra_probes = extra;
    params.threads = cfg.threads;
    pencils.push_back(build_pencil(g, w.center, params, mesh ? &*mesh : nullptr, &w.rim));
  }
  json doc = to_json(estimate_dim(pencils, cfg.k, cfg.delta));
  doc["center"] = w.center;
  doc["mode"] = to_string(mode);
  doc["extra_probes"] = cfg.extra;
  return doc;
}

json cmd_heat(const RunConfig& cfg) {
  const Window w = load_window(cfg);
  const PennyGraph& g = w.graph;
  if (cfg.heat_mode == "caloric") {
    const int order = cfg.order >= 0 ? cfg.order : polynomials().at(cfg.poly).degree / 2;
    const AncientSolution sol = caloric_polynomial(g, sample_polynomial(g, cfg.poly, g.position(w.center)), order);
    const auto dist = bfs_distances(g, w.center, cfg.radius);
    std::vector<GrowthSample> samples;
    for (VertexId v : sol.validity()) {
      if (dist[v] == kUnreachable) continue;
      for (double t : {0.0, -1.0, -2.0, -4.0, -8.0, -16.0, -32.0, -64.0}) samples.push_back({v, t});
    }
    if (samples.empty()) throw ValidationError("caloric polynomial is not valid near the center");
    json doc = to_json(growth_certificate(g, sol, w.center, cfg.k, samples));
    doc["polynomial"] = cfg.poly;
    doc["order"] = order;
    doc["validity_size"] = sol.validity().size();
    doc["independent_count"] = caloric_polynomial_count(g, w.center, cfg.k, cfg.radius);
    return doc;
  }
  ScalarField u(g.num_vertices());
  if (cfg.init == "random") {
    CounterRng rng(cfg.seed);
    for (VertexId v = 0; v < g.num_vertices(); ++v) u[v] = rng.uniform();
  } else {
    u[w.center] = 1.0;
  }
  const double lo = u.min(), hi = u.max();
  bool max_principle = true;
  json frames = json::array();
  auto frame = [&](int step) {
    frames.push_back({{"step", step}, {"t", step * cfg.dt}, {"mass", u.sum()}, {"min", u.min()}, {"max", u.max()}});
  };
  frame(0);
  for (int s = 1; s <= cfg.steps; ++s) {
    u = heat_step(g, u, cfg.dt);
    max_principle = max_principle && u.min() >= lo && u.max() <= hi;
    if (s % cfg.frame_every == 0 || s == cfg.steps) frame(s);
  }
  return {{"center", w.center}, {"dt", cfg.dt},        {"steps", cfg.steps},
          {"init", cfg.init},   {"frames", frames},    {"max_principle", max_principle},
          {"final", to_json(u)["values"]}};
}

json cmd_metrics(const RunConfig& cfg) {
  const Window w = load_window(cfg);
  const PennyGraph& g = w.graph;
  CounterRng rng(cfg.seed);
  MetricReport report;

  std::vector<std::pair<VertexId, VertexId>> pairs;
  CounterRng pair_rng = rng.split(1);
  while (int(pairs.size()) < cfg.pairs) {
    const VertexId a = pair_rng.below(g.num_vertices());
    const VertexId b = pair_rng.below(g.num_vertices());
    if (g.component(a) == g.component(b)) pairs.emplace_back(a, b);
  }
  report.entries.push_back(quasi_isometry_check(g, w.faces.max_bounded_degree(), pairs));

  // Centers: the central vertex first, then random vertices far enough from
  // the rim for the largest radius.
  const int depth = rim_distance(g, w.rim, w.center);
  const int r_max = cfg.r_max > 0 ? cfg.r_max : (depth - 2) / 2;
  if (r_max < 1) throw ValidationError("window too small for metric diagnostics around the center");
  std::vector<VertexId> centers{w.center};
  CounterRng center_rng = rng.split(2);
  for (int tries = 0; int(centers.size()) < cfg.centers && tries < 100 * cfg.centers; ++tries) {
    const VertexId v = center_rng.below(g.num_vertices());
    if (std::find(centers.begin(), centers.end(), v) == centers.end() && rim_distance(g, w.rim, v) > 2 * r_max + 1) {
      centers.push_back(v);
    }
  }
  report.entries.push_back(doubling_report(g, w.rim, centers, r_max));

  std::vector<int> radii;
  for (int r : {r_max / 4, r_max / 2, r_max}) {
    if (r >= 1 && (radii.empty() || radii.back() != r)) radii.push_back(r);
  }
  std::vector<ScalarField> probes{ScalarField::sample(g, [](Point p) { return p.x; }),
                                  ScalarField::sample(g, [](Point p) { return p.y; })};
  CounterRng probe_rng = rng.split(3);
  std::vector<double> noise(g.num_vertices());
  for (double& v : noise) v = probe_rng.uniform(-1.0, 1.0);
  probes.emplace_back(noise);
  const auto basis = harmonic_probe_basis(g, w.center, 2 * r_max, 4, &w.rim, {}, cfg.threads);
  probes.push_back(random_probe(basis, probe_rng));
  report.entries.push_back(poincare_report(g, w.rim, centers, radii, probes));
  report.entries.push_back(quadratic_growth_check(g, w.rim, centers, radii));
  return to_json(report);
}

std::string cmd_figure(const RunConfig& cfg) {
  const PennyGraph g = build_contact_graph(load_packing(cfg.packing_path));
  if (!cfg.field_path.empty()) {
    std::ifstream in(cfg.field_path);
    if (!in) throw IoError("cannot open field file " + cfg.field_path);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw IoError("cannot parse field file " + cfg.field_path + ": " + e.what());
    }
    const json& values = doc.contains("values") ? doc["values"] : doc.at("field");
    return field_svg(g, ScalarField(values.get<std::vector<double>>()));
  }
  if (cfg.mesh) {
    const FaceSet faces = trace_faces(g);
    return mesh_svg(g, triangulate_window(g, faces));
  }
  return packing_svg(g);
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out_path);
  if (!file) throw IoError("cannot open output file " + cfg.out_path);
  file << text;
  if (!file) throw IoError("cannot write output file " + cfg.out_path);
}

int default_threads() {
  if (const char* env = std::getenv("PENNY_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      throw ValidationError(std::string("PENNY_THREADS is not an integer: ") + env);
    }
  }
  return 1;
}

int report_error(std::ostream& err, const char* kind, const std::string& message, int code) {
  err << json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump() << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg.threads = default_threads();
  } catch (const ValidationError& e) {
    return report_error(err, "validation", e.what(), 1);
  }

  CLI::App app{"Penny graph analysis"};
  app.name("penny");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", cfg.out_path, "Write the report to this file instead of stdout");
  app.add_option("--threads", cfg.threads, "Worker threads (default PENNY_THREADS or 1)")->check(CLI::PositiveNumber);

  auto packing_opt = [&](CLI::App* sub) {
    sub->add_option("--packing", cfg.packing_path, "Packing file")->required();
  };
  auto center_opt = [&](CLI::App* sub) { sub->add_option("--center", cfg.center, "Center vertex id"); };

  auto* generate = app.add_subcommand("generate", "Generate a packing");
  generate->add_option("--kind", cfg.kind)->check(CLI::IsMember({"square", "triangular", "random"}));
  generate->add_option("--L", cfg.half_width, "Half width")->check(CLI::Range(0, 4096));
  generate->add_option("--keep", cfg.keep, "Site keep probability (random)")->check(CLI::Range(0.0, 1.0));
  generate->add_option("--dmax", cfg.max_degree, "Largest facial degree (random)")->check(CLI::Range(3, 64));
  generate->add_option("--seed", cfg.seed);
  generate->add_option("--retries", cfg.retries, "Retry budget (random)")->check(CLI::Range(1, 1000000));

  auto* graph = app.add_subcommand("graph", "Contact graph and degree statistics");
  packing_opt(graph);

  auto* faces = app.add_subcommand("faces", "Face report and facial degree D");
  packing_opt(faces);

  auto* tri = app.add_subcommand("triangulate", "Associated triangulation and quality report");
  packing_opt(tri);
  tri->add_option("--policy", cfg.policy)->check(CLI::IsMember({"rollout", "max-min-angle", "first-found"}));

  auto* dirichlet = app.add_subcommand("dirichlet", "Harmonic extension on a ball");
  packing_opt(dirichlet);
  center_opt(dirichlet);
  dirichlet->add_option("--radius", cfg.radius)->check(CLI::Range(0, 1 << 20));
  std::vector<std::string> data_names = polynomial_names();
  data_names.push_back("random");
  dirichlet->add_option("--data", cfg.data, "Boundary data")->check(CLI::IsMember(data_names));
  dirichlet->add_option("--seed", cfg.seed);

  auto* mvi = app.add_subcommand("mvi", "Discrete and planar mean value ratios");
  packing_opt(mvi);
  center_opt(mvi);
  mvi->add_option("--r", cfg.discrete_radii, "Discrete radii")->delimiter(',')->check(CLI::PositiveNumber);
  mvi->add_option("--R", cfg.planar_radii, "Planar radii (empty list skips)")->delimiter(',')->check(CLI::PositiveNumber);
  mvi->add_flag("--no-planar", [&](std::int64_t) { cfg.planar_radii.clear(); }, "Skip the planar table");
  mvi->add_option("--probes", cfg.probes)->check(CLI::Range(1, 1000000));
  mvi->add_option("--modes", cfg.modes)->check(CLI::Range(0, 256));
  mvi->add_option("--seed", cfg.seed);

  auto* dim = app.add_subcommand("dim", "Dimension estimate of polynomial-growth harmonic functions");
  packing_opt(dim);
  center_opt(dim);
  dim->add_option("--k", cfg.k)->check(CLI::Range(0, 32));
  dim->add_option("--beta", cfg.beta)->check(CLI::Range(1.0 + 1e-9, 64.0));
  dim->add_option("--delta", cfg.delta)->check(CLI::Range(0.0, 64.0));
  dim->add_option("--R", cfg.schedule, "Radius schedule")->delimiter(',')->check(CLI::PositiveNumber);
  dim->add_option("--M", cfg.pencil_modes, "Highest boundary frequency (default 2k + 4)")->check(CLI::Range(0, 256));
  dim->add_option("--mode", cfg.gram)->check(CLI::IsMember({"discrete", "planar"}));
  dim->add_option("--extra", cfg.extra, "Extra polynomial probes")->delimiter(',')->check(CLI::IsMember(polynomial_names()));

  auto* heat = app.add_subcommand("heat", "Heat evolution or caloric polynomial certificate");
  packing_opt(heat);
  center_opt(heat);
  heat->add_option("--mode", cfg.heat_mode)->check(CLI::IsMember({"evolve", "caloric"}));
  heat->add_option("--init", cfg.init)->check(CLI::IsMember({"delta", "random"}));
  heat->add_option("--steps", cfg.steps)->check(CLI::Range(0, 100000000));
  heat->add_option("--dt", cfg.dt)->check(CLI::Range(1e-12, kMaxHeatStep));
  heat->add_option("--frame-every", cfg.frame_every)->check(CLI::PositiveNumber);
  heat->add_option("--seed", cfg.seed);
  heat->add_option("--poly", cfg.poly, "Caloric seed polynomial")->check(CLI::IsMember(polynomial_names()));
  heat->add_option("--order", cfg.order, "Expansion order (default half the degree)")->check(CLI::Range(0, 32));
  heat->add_option("--k", cfg.k, "Growth exponent")->check(CLI::Range(0, 32));
  heat->add_option("--radius", cfg.radius, "Sample radius")->check(CLI::Range(0, 1 << 20));

  auto* metrics = app.add_subcommand("metrics", "Quasi-isometry, doubling, Poincare and growth diagnostics");
  packing_opt(metrics);
  center_opt(metrics);
  metrics->add_option("--pairs", cfg.pairs)->check(CLI::Range(0, 100000000));
  metrics->add_option("--centers", cfg.centers)->check(CLI::Range(1, 100000));
  metrics->add_option("--R-max", cfg.r_max)->check(CLI::PositiveNumber);
  metrics->add_option("--seed", cfg.seed);

  auto* figure = app.add_subcommand("figure", "SVG of the packing, mesh or a field");
  packing_opt(figure);
  auto* mesh_flag = figure->add_flag("--mesh", cfg.mesh, "Draw the associated triangulation");
  figure->add_option("--field", cfg.field_path, "Field file to color by")->excludes(mesh_flag);

  std::vector<const char*> argv{"penny"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return report_error(err, "validation", e.what(), 1);
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "heat" && cfg.heat_mode == "evolve" && cfg.frame_every < 1) {
    return report_error(err, "validation", "--frame-every must be positive", 1);
  }

  try {
    std::string text;
    if (cfg.command == "figure") {
      text = cmd_figure(cfg);
    } else {
      json doc;
      if (cfg.command == "generate") doc = cmd_generate(cfg);
      else if (cfg.command == "graph") doc = cmd_graph(cfg);
      else if (cfg.command == "faces") doc = cmd_faces(cfg);
      else if (cfg.command == "triangulate") doc = cmd_triangulate(cfg);
      else if (cfg.command == "dirichlet") doc = cmd_dirichlet(cfg);
      else if (cfg.command == "mvi") doc = cmd_mvi(cfg);
      else if (cfg.command == "dim") doc = cmd_dim(cfg);
      else if (cfg.command == "heat") doc = cmd_heat(cfg);
      else doc = cmd_metrics(cfg);
      text = doc.dump() + "\n";
    }
    emit(cfg, text, out);
  } catch (const ConvergenceError& e) {
    return report_error(err, "convergence", e.what(), 2);
  } catch (const IoError& e) {
    return report_error(err, "io", e.what(), 3);
  } catch (const ValidationError& e) {
    return report_error(err, e.kind(), e.what(), 1);
  } catch (const json::exception& e) {
    return report_error(err, "validation", e.what(), 1);
  }
  return 0;
}

}  // namespace penny::cli
