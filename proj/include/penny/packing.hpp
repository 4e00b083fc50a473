#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <utility>
#include <vector>

#include <json.hpp>

#include "penny/point.hpp"

namespace penny {

/// Shared tangency/overlap tolerance, absolute, in diameter units.
inline constexpr double kDefaultTolerance = 1e-9;

/// A finite configuration of open disks of diameter 1. Immutable.
class DiskPacking {
 public:
  static constexpr double kRadius = 0.5;

  DiskPacking() = default;
  explicit DiskPacking(std::vector<Point> centers, double tolerance = kDefaultTolerance);

  const std::vector<Point>& centers() const { return centers_; }
  double tolerance() const { return tolerance_; }
  std::size_t size() const { return centers_.size(); }
  bool empty() const { return centers_.empty(); }

  /// Same tolerance, centers shifted by `offset`.
  DiskPacking translated(Point offset) const;

 private:
  std::vector<Point> centers_;
  double tolerance_ = kDefaultTolerance;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::pair<std::size_t, std::size_t>> violations;
  double min_distance = std::numeric_limits<double>::infinity();
};

/// Checks that every pair of centers is at least 1 - tolerance apart.
ValidationReport validate_packing(const DiskPacking& packing);

enum class LatticeKind { square, triangular };

/// Square: integer points with |i|, |j| <= L. Triangular: sites
/// i*(1,0) + j*(1/2, sqrt(3)/2) within lattice graph distance L of the origin.
DiskPacking generate_lattice(LatticeKind kind, int half_width);

struct RandomSubsetParams {
  int half_width = 8;
  double keep_probability = 0.9;
  int max_facial_degree = 8;
  std::uint64_t seed = 0;
  int retry_budget = 1000;
};

/// Connected random site subset of the triangular patch whose bounded faces
/// all have facial degree <= max_facial_degree. Throws ConvergenceError when
/// the retry budget is exhausted.
DiskPacking generate_random_subset(const RandomSubsetParams& params);

nlohmann::json to_json(const DiskPacking& packing);
DiskPacking packing_from_json(const nlohmann::json& doc);

void save_packing(const DiskPacking& packing, const std::filesystem::path& path);
DiskPacking load_packing(const std::filesystem::path& path);

}  // namespace penny
