#include "penny/heat.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "penny/errors.hpp"
#include "penny/faces.hpp"

namespace penny {

ScalarField heat_step(const PennyGraph& g, const ScalarField& u, double dt) {
  if (!(dt > 0.0 && dt <= kMaxHeatStep)) {
    throw ValidationError("heat step dt = " + std::to_string(dt) + " outside (0, 1/12]");
  }
  ScalarField lap = laplacian(g, u);
  ScalarField out = u;
  for (VertexId x = 0; x < g.num_vertices(); ++x) out[x] += dt * lap[x];
  return out;
}

double AncientSolution::value(VertexId x, double t) const {
  double acc = 0.0;
  double term = 1.0;  // t^i / i!
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (i > 0) term *= t / double(i);
    acc += term * coefficients_[i][x];
  }
  return acc;
}

double AncientSolution::time_derivative(VertexId x, double t) const {
  double acc = 0.0;
  double term = 1.0;  // t^(i-1) / (i-1)!
  for (std::size_t i = 1; i < coefficients_.size(); ++i) {
    if (i > 1) term *= t / double(i - 1);
    acc += term * coefficients_[i][x];
  }
  return acc;
}

AncientSolution caloric_polynomial(const PennyGraph& g, const ScalarField& seed, int m) {
  if (m < 0) throw ValidationError("caloric polynomial order must be nonnegative");
  std::vector<ScalarField> q{seed};
  for (int i = 0; i < m; ++i) q.push_back(laplacian(g, q.back()));
  const ScalarField tail = laplacian(g, q.back());

  const FaceSet faces = trace_faces(g);
  const VertexSet rim = window_rim(g, faces);
  // Multi-source BFS from the rim.
  std::vector<int> depth(g.num_vertices(), kUnreachable);
  std::vector<VertexId> frontier(rim.begin(), rim.end());
  for (VertexId v : frontier) depth[v] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const VertexId v = frontier[head];
    for (VertexId u : g.neighbors(v)) {
      if (depth[u] == kUnreachable) {
        depth[u] = depth[v] + 1;
        frontier.push_back(u);
      }
    }
  }

  std::vector<VertexId> valid;
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    if (depth[x] > m + 1 && std::abs(tail[x]) <= 1e-10) valid.push_back(x);
  }
  if (valid.empty()) throw ValidationError("caloric polynomial has an empty validity region");
  return AncientSolution(std::move(q), VertexSet(g, std::move(valid)));
}

GrowthCertificate growth_certificate(const PennyGraph& g, const AncientSolution& sol, VertexId x0, int k,
                                     std::span<const GrowthSample> samples, double saturation_tol) {
  GrowthCertificate cert;
  cert.k = k;
  cert.center = x0;
  cert.samples = samples.size();
  const auto dist = bfs_distances(g, x0);
  std::vector<std::pair<double, double>> scaled;  // (scale, ratio)
  double max_scale = 0.0;
  for (const GrowthSample& s : samples) {
    if (!(s.t <= 0.0)) throw ValidationError("growth sample time must be <= 0");
    if (!sol.validity().contains(s.x)) {
      throw ValidationError("growth sample vertex " + std::to_string(s.x) + " outside the validity region");
    }
    if (dist[s.x] == kUnreachable) throw ValidationError("growth sample in another component");
    const double scale = 1.0 + dist[s.x] + std::sqrt(std::abs(s.t));
    const double ratio = std::abs(sol.value(s.x, s.t)) / std::pow(scale, k);
    scaled.emplace_back(scale, ratio);
    max_scale = std::max(max_scale, scale);
  }
  for (const auto& [scale, ratio] : scaled) {
    cert.constant = std::max(cert.constant, ratio);
    if (scale <= 0.5 * max_scale) cert.half_grid_constant = std::max(cert.half_grid_constant, ratio);
  }
  cert.saturated = cert.constant == 0.0 ||
                   (cert.constant - cert.half_grid_constant) <= saturation_tol * cert.constant;
  return cert;
}

std::size_t caloric_polynomial_count(const PennyGraph& g, VertexId x0, int k, int radius) {
  if (k < 0) throw ValidationError("growth rate must be nonnegative");
  const int m = k / 2;
  const Point c = g.position(x0);
  const VertexSet region = ball(g, x0, radius);
  const std::vector<double> times{0.0, -1.0, -2.0, -3.0, -5.0};

  std::vector<Eigen::VectorXd> columns;
  for (int total = 0; total <= k; ++total) {
    for (int a = total; a >= 0; --a) {
      const int b = total - a;
      const ScalarField seed = ScalarField::sample(g, [&](Point p) {
        return std::pow(p.x - c.x, a) * std::pow(p.y - c.y, b);
      });
      AncientSolution sol = [&] {
        try {
          return caloric_polynomial(g, seed, m);
        } catch (const ValidationError&) {
          return AncientSolution({}, VertexSet());
        }
      }();
      if (sol.coefficients().empty()) continue;
      bool covers = true;
      for (VertexId x : region) covers = covers && sol.validity().contains(x);
      if (!covers) continue;
      Eigen::VectorXd col(Eigen::Index(region.size() * times.size()));
      Eigen::Index row = 0;
      for (double t : times) {
        for (VertexId x : region) col(row++) = sol.value(x, t);
      }
      columns.push_back(col.normalized());
    }
  }
  if (columns.empty()) return 0;
  Eigen::MatrixXd stacked(columns.front().size(), Eigen::Index(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) stacked.col(Eigen::Index(j)) = columns[j];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(stacked);
  qr.setThreshold(1e-9);
  return std::size_t(qr.rank());
}

nlohmann::json to_json(const GrowthCertificate& c) {
  return {{"k", c.k},
          {"center", c.center},
          {"constant", c.constant},
          {"half_grid_constant", c.half_grid_constant},
          {"saturated", c.saturated},
          {"samples", c.samples}};
}

}  // namespace penny
