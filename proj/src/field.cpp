#include "penny/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "penny/errors.hpp"

namespace penny {

ScalarField::ScalarField(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError("scalar field has a non-finite value");
  }
}

ScalarField ScalarField::sample(const PennyGraph& g, const std::function<double(Point)>& fn) {
  std::vector<double> values(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) values[v] = fn(g.position(v));
  return ScalarField(std::move(values));
}

double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  if (other.size() != size()) throw ValidationError("scalar field size mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

namespace {

void require_size(const PennyGraph& g, const ScalarField& f) {
  if (f.size() != g.num_vertices()) {
    throw ValidationError("field has " + std::to_string(f.size()) + " values for " +
                          std::to_string(g.num_vertices()) + " vertices");
  }
}

double laplacian_at(const PennyGraph& g, const ScalarField& f, VertexId x) {
  double acc = 0.0;
  for (VertexId y : g.neighbors(x)) acc += f[y] - f[x];
  return acc;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double a : v) m = std::max(m, std::abs(a));
  return m;
}

}  // namespace

ScalarField laplacian(const PennyGraph& g, const ScalarField& f) {
  require_size(g, f);
  ScalarField out(g.num_vertices());
  for (VertexId x = 0; x < g.num_vertices(); ++x) out[x] = laplacian_at(g, f, x);
  return out;
}

double max_abs_laplacian(const PennyGraph& g, const ScalarField& f, std::span<const VertexId> where) {
  require_size(g, f);
  double m = 0.0;
  for (VertexId x : where) m = std::max(m, std::abs(laplacian_at(g, f, x)));
  return m;
}

DirichletSolution solve_dirichlet(const PennyGraph& g, const VertexSet& domain, const ScalarField& boundary_data,
                                  const DirichletOptions& options) {
  require_size(g, boundary_data);
  DirichletSolution sol;
  sol.domain = domain;
  sol.boundary = vertex_boundary(g, domain);
  sol.field = ScalarField(g.num_vertices());
  for (VertexId y : sol.boundary) sol.field[y] = boundary_data[y];
  if (domain.empty()) return sol;
  if (sol.boundary.empty()) throw ValidationError("Dirichlet domain has an empty vertex boundary");

  constexpr std::size_t kOutside = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(g.num_vertices(), kOutside);
  const auto ids = domain.ids();
  for (std::size_t k = 0; k < ids.size(); ++k) index[ids[k]] = k;
  const std::size_t n = ids.size();

  // Every interior vertex must reach the boundary inside the closure.
  {
    std::vector<char> reached(n, 0);
    std::vector<VertexId> stack;
    for (VertexId y : sol.boundary) {
      for (VertexId x : g.neighbors(y)) {
        if (index[x] != kOutside && !reached[index[x]]) {
          reached[index[x]] = 1;
          stack.push_back(x);
        }
      }
    }
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      for (VertexId y : g.neighbors(x)) {
        if (index[y] != kOutside && !reached[index[y]]) {
          reached[index[y]] = 1;
          stack.push_back(y);
        }
      }
    }
    const auto it = std::find(reached.begin(), reached.end(), 0);
    if (it != reached.end()) {
      throw ValidationError("vertex " + std::to_string(ids[std::size_t(it - reached.begin())]) +
                            " of the Dirichlet domain is isolated from its boundary (singular system)");
    }
  }

  std::vector<double> diag(n);
  std::vector<double> rhs(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const VertexId x = ids[k];
    diag[k] = double(g.degree(x));
    for (VertexId y : g.neighbors(x)) {
      if (index[y] == kOutside) rhs[k] += boundary_data[y];
    }
  }
  // A = -L restricted to the domain: SPD.
  auto apply = [&](const std::vector<double>& u, std::vector<double>& out) {
    for (std::size_t k = 0; k < n; ++k) {
      double acc = diag[k] * u[k];
      for (VertexId y : g.neighbors(ids[k])) {
        if (index[y] != kOutside) acc -= u[index[y]];
      }
      out[k] = acc;
    }
  };

  double mean = 0.0;
  for (VertexId y : sol.boundary) mean += boundary_data[y];
  mean /= double(sol.boundary.size());

  std::vector<double> u(n, mean), r(n), z(n), p(n), ap(n);
  auto true_residual = [&]() {
    apply(u, ap);
    for (std::size_t k = 0; k < n; ++k) r[k] = rhs[k] - ap[k];
  };
  true_residual();

  int iter = 0;
  double res = max_abs(r);
  while (res > options.tol) {
    for (std::size_t k = 0; k < n; ++k) z[k] = r[k] / diag[k];
    p = z;
    double rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
    while (res > options.tol && iter < options.max_iter) {
      apply(p, ap);
      const double pap = std::inner_product(p.begin(), p.end(), ap.begin(), 0.0);
      if (!(pap > 0.0)) break;
      const double alpha = rz / pap;
      for (std::size_t k = 0; k < n; ++k) {
        u[k] += alpha * p[k];
        r[k] -= alpha * ap[k];
      }
      ++iter;
      res = max_abs(r);
      for (std::size_t k = 0; k < n; ++k) z[k] = r[k] / diag[k];
      const double rz_next = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
    }
    // Restart from the true residual to shed recurrence drift.
    true_residual();
    const double actual = max_abs(r);
    if (iter >= options.max_iter && actual > options.tol) {
      throw ConvergenceError("Dirichlet solve did not converge in " + std::to_string(options.max_iter) +
                                 " iterations; residual " + std::to_string(actual),
                             actual);
    }
    res = actual;
  }

  for (std::size_t k = 0; k < n; ++k) sol.field[ids[k]] = u[k];
  sol.residual = max_abs_laplacian(g, sol.field, ids);
  sol.iterations = iter;
  return sol;
}

double discrete_mvi_ratio(const PennyGraph& g, const ScalarField& f, VertexId p, int r, double harmonic_tol) {
  require_size(g, f);
  const VertexSet b = ball(g, p, r);
  const double lap = max_abs_laplacian(g, f, b.ids());
  if (lap > harmonic_tol) {
    throw ValidationError("field is not harmonic on B_" + std::to_string(r) + "(" + std::to_string(p) +
                          "): max |Lf| = " + std::to_string(lap));
  }
  double total = 0.0;
  for (VertexId x : b) total += f[x] * f[x];
  if (total == 0.0) return 0.0;
  return f[p] * f[p] * double(b.size()) / total;
}

nlohmann::json to_json(const ScalarField& f) {
  return {{"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

}  // namespace penny
