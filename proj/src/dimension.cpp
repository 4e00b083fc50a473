#include "penny/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "penny/errors.hpp"
#include "penny/extend.hpp"
#include "penny/faces.hpp"
#include "penny/parallel.hpp"

namespace penny {

namespace {

void require_margin(const PennyGraph& g, const VertexSet* rim, VertexId x0, int needed, const char* what) {
  if (!rim) return;
  const int d = rim_distance(g, *rim, x0);
  if (d != kUnreachable && d < needed) {
    throw ValidationError(std::string(what) + ": needs " + std::to_string(needed) +
                          " steps to the window rim, have " + std::to_string(d));
  }
}

VertexSet sphere(const PennyGraph& g, VertexId x0, int r) {
  const auto dist = bfs_distances(g, x0, r);
  std::vector<VertexId> ids;
  for (VertexId v = 0; v < dist.size(); ++v) {
    if (dist[v] == r) ids.push_back(v);
  }
  return VertexSet(g, std::move(ids));
}

Eigen::MatrixXd ball_gram(const std::vector<ScalarField>& fields, const VertexSet& region) {
  Eigen::MatrixXd values(region.size(), fields.size());
  for (std::size_t j = 0; j < fields.size(); ++j) {
    std::size_t row = 0;
    for (VertexId v : region) values(Eigen::Index(row++), Eigen::Index(j)) = fields[j][v];
  }
  return values.transpose() * values;
}

Eigen::MatrixXd disk_gram(const std::vector<PLField>& fields, const DiskCover& cover) {
  const auto m = Eigen::Index(fields.size());
  Eigen::MatrixXd gram(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      gram(i, j) = gram(j, i) = integrate_pl_product(fields[std::size_t(i)], fields[std::size_t(j)], cover);
    }
  }
  return gram;
}

}  // namespace

const char* to_string(GramMode mode) { return mode == GramMode::discrete ? "discrete" : "planar"; }

std::vector<ScalarField> boundary_probe_basis(const PennyGraph& g, VertexId x0, int r_out, int modes,
                                              const VertexSet* rim) {
  if (r_out < 0 || modes < 0) throw ValidationError("probe basis needs r_out >= 0 and modes >= 0");
  require_margin(g, rim, x0, r_out + 2, "probe basis");
  const VertexSet shell = sphere(g, x0, r_out + 1);
  const std::size_t count = std::size_t(2 * modes + 1);
  if (shell.size() < count) {
    throw ValidationError("probe basis: boundary sphere has " + std::to_string(shell.size()) +
                          " vertices, fewer than " + std::to_string(count) + " probes");
  }
  const Point c = g.position(x0);
  std::vector<ScalarField> out(count, ScalarField(g.num_vertices()));
  for (VertexId v : shell) {
    const Point d = g.position(v) - c;
    const double theta = std::atan2(d.y, d.x);
    out[0][v] = 1.0;
    for (int m = 1; m <= modes; ++m) {
      out[std::size_t(2 * m - 1)][v] = std::cos(m * theta);
      out[std::size_t(2 * m)][v] = std::sin(m * theta);
    }
  }
  return out;
}

std::vector<ScalarField> harmonic_probe_basis(const PennyGraph& g, VertexId x0, int r_out, int modes,
                                              const VertexSet* rim, const DirichletOptions& solver, int threads) {
  const std::vector<ScalarField> data = boundary_probe_basis(g, x0, r_out, modes, rim);
  const VertexSet domain = ball(g, x0, r_out);
  std::vector<ScalarField> out(data.size());
  parallel_for(data.size(), threads, [&](std::size_t i) { out[i] = solve_dirichlet(g, domain, data[i], solver).field; });
  return out;
}

ScalarField random_probe(std::span<const ScalarField> basis, CounterRng& rng) {
  if (basis.empty()) throw ValidationError("random probe needs a nonempty basis");
  ScalarField out(basis[0].size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const double w = rng.normal() / double(std::max<std::size_t>(1, (j + 1) / 2));
    for (std::size_t v = 0; v < out.size(); ++v) out[v] += w * basis[j][v];
  }
  return out;
}

GramPencil assemble_pencil(const PennyGraph& g, VertexId x0, std::vector<ScalarField> candidates, double radius,
                           double beta, GramMode mode, const Triangulation* mesh) {
  if (!(radius > 0.0) || !(beta > 1.0)) throw ValidationError("pencil needs radius > 0 and beta > 1");
  GramPencil pencil;
  pencil.center = x0;
  pencil.inner_radius = radius;
  pencil.outer_radius = beta * radius;
  pencil.mode = mode;

  if (mode == GramMode::discrete) {
    const VertexSet inner = ball(g, x0, int(std::floor(radius)));
    const VertexSet outer = ball(g, x0, int(std::floor(beta * radius)));
    pencil.outer = ball_gram(candidates, outer);
    pencil.inner = ball_gram(candidates, inner);
  } else {
    if (!mesh) throw ValidationError("planar Gram mode needs a triangulation");
    const Point p = g.position(x0);
    const DiskCover inner = cover_disk(*mesh, {p, radius});
    const DiskCover outer = cover_disk(*mesh, {p, beta * radius});
    if (!outer.covers_disk()) throw ValidationError("planar Gram mode: outer disk not covered by the mesh");
    std::vector<PLField> pl;
    pl.reserve(candidates.size());
    for (const ScalarField& f : candidates) pl.emplace_back(*mesh, f);
    pencil.outer = disk_gram(pl, outer);
    pencil.inner = disk_gram(pl, inner);
  }

  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < pencil.outer.rows(); ++i) {
    if (pencil.outer(i, i) >= kNegligibleEnergy) keep.push_back(i);
  }
  if (keep.size() != candidates.size()) {
    const auto k = Eigen::Index(keep.size());
    Eigen::MatrixXd outer(k, k), inner(k, k);
    std::vector<ScalarField> kept;
    for (Eigen::Index a = 0; a < k; ++a) {
      kept.push_back(candidates[std::size_t(keep[std::size_t(a)])]);
      for (Eigen::Index b = 0; b < k; ++b) {
        outer(a, b) = pencil.outer(keep[std::size_t(a)], keep[std::size_t(b)]);
        inner(a, b) = pencil.inner(keep[std::size_t(a)], keep[std::size_t(b)]);
      }
    }
    pencil.outer = std::move(outer);
    pencil.inner = std::move(inner);
    candidates = std::move(kept);
  }
  pencil.candidates = std::move(candidates);
  return pencil;
}

GramPencil build_pencil(const PennyGraph& g, VertexId x0, const PencilParams& params, const Triangulation* mesh,
                        const VertexSet* rim) {
  if (params.k < 0) throw ValidationError("growth rate k must be nonnegative");
  if (!(params.radius > 0.0) || !(params.beta > 1.0)) throw ValidationError("pencil needs radius > 0 and beta > 1");
  const double outer_radius = params.beta * params.radius;

  int solve_radius = int(std::ceil(outer_radius));
  if (params.mode == GramMode::planar) {
    if (!mesh) throw ValidationError("planar Gram mode needs a triangulation");
    // Solve far enough out that every triangle meeting the outer disk has
    // harmonic corner values.
    const DiskCover cover = cover_disk(*mesh, {g.position(x0), outer_radius});
    if (!cover.covers_disk()) throw ValidationError("planar Gram mode: outer disk not covered by the mesh");
    const auto dist = bfs_distances(g, x0);
    std::vector<std::size_t> touched = cover.full_triangles;
    for (const auto& node : cover.nodes) touched.push_back(node.triangle);
    for (std::size_t id : touched) {
      for (VertexId v : mesh->triangles()[id].vertices) {
        if (dist[v] == kUnreachable) throw ValidationError("planar Gram mode: disk spans several components");
        solve_radius = std::max(solve_radius, dist[v]);
      }
    }
  }
  require_margin(g, rim, x0, int(std::ceil(outer_radius)) + 4, "pencil outer radius");

  std::vector<ScalarField> probes = boundary_probe_basis(g, x0, solve_radius, params.effective_modes(), rim);
  for (const ScalarField& extra : params.extra_probes) {
    if (extra.size() != g.num_vertices()) throw ValidationError("extra probe has the wrong length");
    probes.push_back(extra);
  }

  const VertexSet domain = ball(g, x0, solve_radius);
  std::vector<ScalarField> candidates(probes.size());
  parallel_for(probes.size(), params.threads, [&](std::size_t i) {
    candidates[i] = solve_dirichlet(g, domain, probes[i], params.solver).field;
  });

  GramPencil pencil = assemble_pencil(g, x0, std::move(candidates), params.radius, params.beta, params.mode, mesh);
  pencil.solve_radius = solve_radius;
  return pencil;
}

std::vector<double> pencil_eigenvalues(const GramPencil& pencil, double rank_tol) {
  const Eigen::Index m = pencil.outer.rows();
  if (m == 0) return {};
  Eigen::VectorXd scale(m);
  for (Eigen::Index i = 0; i < m; ++i) scale(i) = 1.0 / std::sqrt(pencil.outer(i, i));
  const Eigen::MatrixXd outer = scale.asDiagonal() * pencil.outer * scale.asDiagonal();
  const Eigen::MatrixXd inner = scale.asDiagonal() * pencil.inner * scale.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> outer_eig(outer);
  const Eigen::VectorXd& s = outer_eig.eigenvalues();
  const double cutoff = rank_tol * s.maxCoeff();
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (s(i) > cutoff) kept.push_back(i);
  }
  if (kept.empty()) return {};

  // Whiten the outer form; eigenvalues of the whitened inner form are 1/lambda.
  Eigen::MatrixXd whiten(m, Eigen::Index(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    whiten.col(Eigen::Index(c)) = outer_eig.eigenvectors().col(kept[c]) / std::sqrt(s(kept[c]));
  }
  const Eigen::MatrixXd reduced = whiten.transpose() * inner * whiten;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> inner_eig(reduced, Eigen::EigenvaluesOnly);

  std::vector<double> lambdas;
  for (Eigen::Index i = 0; i < inner_eig.eigenvalues().size(); ++i) {
    const double mu = inner_eig.eigenvalues()(i);
    lambdas.push_back(mu > 0.0 ? 1.0 / mu : std::numeric_limits<double>::infinity());
  }
  std::sort(lambdas.begin(), lambdas.end());
  return lambdas;
}

double growth_threshold(double beta, int k, double delta) { return std::pow(beta, 2.0 * k + 2.0 + delta); }

DimensionReport estimate_dim(std::span<const GramPencil> pencils, int k, double delta, double rank_tol) {
  if (pencils.empty()) throw ValidationError("dimension estimate needs at least one pencil");
  DimensionReport report;
  report.k = k;
  report.delta = delta;
  report.rank_tol = rank_tol;
  report.beta = pencils.front().beta();
  report.threshold = growth_threshold(report.beta, k, delta);

  std::map<int, int> tally;
  for (const GramPencil& pencil : pencils) {
    DimensionReport::Entry entry;
    entry.radius = pencil.inner_radius;
    entry.candidates = pencil.candidates.size();
    entry.eigenvalues = pencil_eigenvalues(pencil, rank_tol);
    entry.singular = entry.eigenvalues.empty();
    entry.separation = std::numeric_limits<double>::infinity();
    for (double lambda : entry.eigenvalues) {
      if (lambda <= report.threshold) {
        ++entry.count;
      } else {
        entry.separation = std::min(entry.separation, lambda / report.threshold);
      }
    }
    if (!entry.singular) ++tally[entry.count];
    report.schedule.push_back(std::move(entry));
  }

  if (tally.empty()) {
    report.diagnostic = "all pencils are numerically singular";
    return report;
  }
  int best_count = 0;
  int best_votes = -1;
  for (const auto& [count, votes] : tally) {
    if (votes > best_votes) {
      best_votes = votes;
      best_count = count;
    }
  }
  report.estimate = best_count;
  return report;
}

nlohmann::json to_json(const DimensionReport& report) {
  nlohmann::json schedule = nlohmann::json::array();
  for (const auto& e : report.schedule) {
    schedule.push_back({{"R", e.radius},
                        {"candidates", e.candidates},
                        {"eigenvalues", e.eigenvalues},
                        {"count", e.count},
                        {"singular", e.singular},
                        {"separation", e.separation}});
  }
  nlohmann::json out{{"k", report.k},
                     {"beta", report.beta},
                     {"delta", report.delta},
                     {"rank_tol", report.rank_tol},
                     {"threshold", report.threshold},
                     {"schedule", schedule}};
  out["estimate"] = report.estimate ? nlohmann::json(*report.estimate) : nlohmann::json(nullptr);
  if (!report.diagnostic.empty()) out["diagnostic"] = report.diagnostic;
  return out;
}

}  // namespace penny
