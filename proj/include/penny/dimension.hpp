#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "penny/field.hpp"
#include "penny/rng.hpp"
#include "penny/triangulate.hpp"

namespace penny {

/// Full-length fields carrying {1, cos(m t), sin(m t) : 1 <= m <= modes} on
/// the sphere d(x, x0) = r_out + 1, where t is the polar angle of a vertex
/// around position(x0); zero elsewhere. When `rim` is given, the sphere must
/// stay at least 2 steps away from it.
std::vector<ScalarField> boundary_probe_basis(const PennyGraph& g, VertexId x0, int r_out, int modes,
                                              const VertexSet* rim = nullptr);

/// Harmonic extensions of boundary_probe_basis into B_r_out(x0).
std::vector<ScalarField> harmonic_probe_basis(const PennyGraph& g, VertexId x0, int r_out, int modes,
                                              const VertexSet* rim = nullptr, const DirichletOptions& solver = {},
                                              int threads = 1);

/// sum_j w_j basis_j with standard normal w_j divided by the mode number
/// (mode of basis entry j is (j + 1) / 2, the constant counts as 1).
ScalarField random_probe(std::span<const ScalarField> basis, CounterRng& rng);

enum class GramMode {
  /// A_rho(u, v) = sum over B_rho(x0) of u v.
  discrete,
  /// A_rho(u, v) = integral over D_rho(position(x0)) of E(u) E(v).
  planar,
};

const char* to_string(GramMode mode);

struct PencilParams {
  int k = 1;
  double radius = 16.0;
  double beta = 2.0;
  /// Highest boundary frequency; negative selects 2k + 4.
  int modes = -1;
  GramMode mode = GramMode::discrete;
  /// Additional full-length fields whose values on the solve boundary are
  /// extended like the Fourier probes.
  std::vector<ScalarField> extra_probes;
  DirichletOptions solver{};
  int threads = 1;

  int effective_modes() const { return modes < 0 ? 2 * k + 4 : modes; }
};

/// Gram matrices of one candidate family at the inner and outer radius.
struct GramPencil {
  std::vector<ScalarField> candidates;
  VertexId center = 0;
  double inner_radius = 0.0;
  double outer_radius = 0.0;
  int solve_radius = 0;
  GramMode mode = GramMode::discrete;
  Eigen::MatrixXd inner;
  Eigen::MatrixXd outer;

  double beta() const { return outer_radius / inner_radius; }
};

/// Candidates below this outer energy are numerically zero and dropped.
inline constexpr double kNegligibleEnergy = 1e-20;

/// Extends every probe harmonically into the solve ball and assembles both
/// Gram matrices. Planar mode needs `mesh`.
GramPencil build_pencil(const PennyGraph& g, VertexId x0, const PencilParams& params,
                        const Triangulation* mesh = nullptr, const VertexSet* rim = nullptr);

/// Gram matrices of arbitrary candidates (already harmonic where needed).
GramPencil assemble_pencil(const PennyGraph& g, VertexId x0, std::vector<ScalarField> candidates, double radius,
                           double beta, GramMode mode, const Triangulation* mesh = nullptr);

inline constexpr double kDefaultRankTolerance = 1e-10;

/// Generalized eigenvalues of outer w = lambda inner w, ascending, on the
/// subspace where `outer` is numerically nonsingular (relative cutoff
/// rank_tol). Directions invisible to `inner` get +infinity.
std::vector<double> pencil_eigenvalues(const GramPencil& pencil, double rank_tol = kDefaultRankTolerance);

/// beta^(2k + 2 + delta).
double growth_threshold(double beta, int k, double delta);

struct DimensionReport {
  struct Entry {
    double radius = 0.0;
    std::size_t candidates = 0;
    std::vector<double> eigenvalues;
    int count = 0;
    bool singular = false;
    /// Smallest eigenvalue above the threshold divided by the threshold.
    double separation = 0.0;
  };
  int k = 0;
  double beta = 0.0;
  double delta = 0.0;
  double rank_tol = kDefaultRankTolerance;
  double threshold = 0.0;
  std::vector<Entry> schedule;
  std::optional<int> estimate;
  std::string diagnostic;
};

/// Counts eigenvalues at or below the growth threshold per pencil; the
/// estimate is the most frequent count (smallest on ties).
DimensionReport estimate_dim(std::span<const GramPencil> pencils, int k, double delta,
                             double rank_tol = kDefaultRankTolerance);

/// {"k", "beta", "delta", "schedule": [{"R", "eigenvalues", "count"}], "estimate"}.
nlohmann::json to_json(const DimensionReport& report);

}  // namespace penny
