#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "penny/contact.hpp"

namespace penny {

/// Real value per vertex, indexed by vertex id.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(std::size_t size, double value = 0.0) : values_(size, value) {}
  /// Throws ValidationError on non-finite entries.
  explicit ScalarField(std::vector<double> values);

  /// f(v) = fn(position(v)).
  static ScalarField sample(const PennyGraph& g, const std::function<double(Point)>& fn);

  std::size_t size() const { return values_.size(); }
  double operator[](VertexId v) const { return values_[v]; }
  double& operator[](VertexId v) { return values_[v]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double max() const;
  double min() const;
  double sum() const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator*=(double s);
  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator*(double s, ScalarField a) { return a *= s; }

 private:
  std::vector<double> values_;
};

/// (Lf)(x) = sum over neighbors y of (f(y) - f(x)).
ScalarField laplacian(const PennyGraph& g, const ScalarField& f);

/// Max |Lf| over the given vertices.
double max_abs_laplacian(const PennyGraph& g, const ScalarField& f, std::span<const VertexId> where);

/// Max-norm harmonicity tolerance for checks downstream of a solve.
inline constexpr double kHarmonicTolerance = 1e-8;

struct DirichletOptions {
  /// Stop once max over the domain of |Lf| is at most tol.
  double tol = 1e-10;
  int max_iter = 20000;
};

struct DirichletSolution {
  /// Full-length field: solution on the domain, boundary data on its vertex
  /// boundary, zero elsewhere.
  ScalarField field;
  VertexSet domain;
  VertexSet boundary;
  double residual = 0.0;
  int iterations = 0;
};

/// Harmonic on `domain`, equal to `boundary_data` on its vertex boundary.
/// Jacobi-preconditioned conjugate gradients on the interior system.
/// Throws ValidationError for an empty vertex boundary or a domain component
/// that does not touch it; ConvergenceError when max_iter is exhausted.
DirichletSolution solve_dirichlet(const PennyGraph& g, const VertexSet& domain, const ScalarField& boundary_data,
                                  const DirichletOptions& options = {});

/// f(p)^2 |B_r(p)| / sum over B_r(p) of f^2; 0 when f vanishes on the ball.
/// Requires max |Lf| <= harmonic_tol on B_r(p).
double discrete_mvi_ratio(const PennyGraph& g, const ScalarField& f, VertexId p, int r,
                          double harmonic_tol = kHarmonicTolerance);

/// {"values": [...]}.
nlohmann::json to_json(const ScalarField& f);

}  // namespace penny
