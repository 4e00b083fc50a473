#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "penny/field.hpp"

namespace penny {

/// One diagnostic of the metric-measure structure. Every constant is the
/// exact max/min over the rows of `manifest`.
struct MetricEntry {
  std::string check;
  nlohmann::json parameters = nlohmann::json::object();
  std::map<std::string, double> constants;
  bool pass = true;
  std::vector<std::string> violations;
  /// One row per sample, enough to recompute every constant.
  nlohmann::json manifest = nlohmann::json::array();
  std::string note;
};

struct MetricReport {
  std::vector<MetricEntry> entries;
};

/// d(x, y) / 2D <= |phi(x) - phi(y)| <= d(x, y) for every sampled pair.
/// Constants: lower_slack = min |phi phi| 2D / d, upper_slack = min d / |phi phi|
/// (both >= 1 when the bounds hold).
MetricEntry quasi_isometry_check(const PennyGraph& g, std::size_t D,
                                 std::span<const std::pair<VertexId, VertexId>> pairs, double tolerance = 1e-9);

/// doubling = max |B_2R(x)| / |B_R(x)| over centers and 1 <= R <= r_max.
/// Every center must satisfy 2R + 1 < its distance to the rim.
MetricEntry doubling_report(const PennyGraph& g, const VertexSet& rim, std::span<const VertexId> centers, int r_max);

/// poincare = max over centers, radii and probes of
///   sum_{B_R} |f - f_R|^2 / (R^2 sum over edges inside B_2R of |f(w) - f(z)|^2).
/// Probes with zero edge energy on the doubled ball are skipped.
MetricEntry poincare_report(const PennyGraph& g, const VertexSet& rim, std::span<const VertexId> centers,
                            std::span<const int> radii, std::span<const ScalarField> probes);

/// quadratic_growth = min |B_R(x)| / R^2. Radii must be positive.
MetricEntry quadratic_growth_check(const PennyGraph& g, const VertexSet& rim, std::span<const VertexId> centers,
                                   std::span<const int> radii);

nlohmann::json to_json(const MetricEntry& entry);
nlohmann::json to_json(const MetricReport& report);

}  // namespace penny
