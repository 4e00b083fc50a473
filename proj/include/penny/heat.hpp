#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "penny/field.hpp"

namespace penny {

/// Largest admissible explicit step: the spectrum of -L lies in [0, 12].
inline constexpr double kMaxHeatStep = 1.0 / 12.0;

/// u + dt * Lu. Throws ValidationError unless 0 < dt <= 1/12.
ScalarField heat_step(const PennyGraph& g, const ScalarField& u, double dt);

/// u(x, t) = sum_{i <= m} t^i / i! * q_i(x) with q_i = L^i q: an exact
/// solution of du/dt = Lu on the validity region.
class AncientSolution {
 public:
  AncientSolution(std::vector<ScalarField> coefficients, VertexSet validity)
      : coefficients_(std::move(coefficients)), validity_(std::move(validity)) {}

  /// q_0 .. q_m.
  const std::vector<ScalarField>& coefficients() const { return coefficients_; }
  const VertexSet& validity() const { return validity_; }
  int order() const { return int(coefficients_.size()) - 1; }

  double value(VertexId x, double t) const;
  /// sum_{i >= 1} t^(i-1) / (i-1)! * q_i(x).
  double time_derivative(VertexId x, double t) const;

 private:
  std::vector<ScalarField> coefficients_;
  VertexSet validity_;
};

/// Stores q_i = L^i q for i <= m. Valid vertices have |L^(m+1) q| <= 1e-10
/// and sit more than m + 1 steps from the window rim. Throws ValidationError
/// for m < 0 or an empty validity region.
AncientSolution caloric_polynomial(const PennyGraph& g, const ScalarField& seed, int m);

struct GrowthSample {
  VertexId x = 0;
  double t = 0.0;
};

struct GrowthCertificate {
  int k = 0;
  VertexId center = 0;
  /// max |u(x, t)| / (1 + d(x, x0) + sqrt|t|)^k over all samples.
  double constant = 0.0;
  /// Same over samples whose scale 1 + d + sqrt|t| is at most half the largest.
  double half_grid_constant = 0.0;
  bool saturated = false;
  std::size_t samples = 0;
};

/// Empirical polynomial-growth constant. `saturated` when the constant moved
/// by less than `saturation_tol` (relative) between the half and full grid.
/// Samples must lie in the validity region with t <= 0.
GrowthCertificate growth_certificate(const PennyGraph& g, const AncientSolution& sol, VertexId x0, int k,
                                     std::span<const GrowthSample> samples, double saturation_tol = 0.1);

/// Number of linearly independent caloric polynomials seeded by monomials
/// (x - x0)^a (y - y0)^b with a + b <= k, each expanded to order floor(k/2),
/// restricted to seeds whose expansion terminates on the window interior.
/// Independence is judged on values over B_radius(x0) at several times.
std::size_t caloric_polynomial_count(const PennyGraph& g, VertexId x0, int k, int radius);

nlohmann::json to_json(const GrowthCertificate& c);

}  // namespace penny
