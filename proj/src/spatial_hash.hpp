#pragma once

// Uniform grid bucketing of plane points; internal to the library.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "penny/point.hpp"

namespace penny::detail {

class SpatialHash {
 public:
  SpatialHash(const std::vector<Point>& points, double cell_size)
      : points_(&points), cell_(cell_size) {
    buckets_.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      buckets_[key(cell_of(points[i].x), cell_of(points[i].y))].push_back(i);
    }
  }

  /// Calls visit(j) for every indexed point in the 3x3 block of cells around p.
  template <typename Visit>
  void for_each_near(Point p, Visit&& visit) const {
    const std::int64_t cx = cell_of(p.x);
    const std::int64_t cy = cell_of(p.y);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = buckets_.find(key(cx + dx, cy + dy));
        if (it == buckets_.end()) continue;
        for (std::size_t j : it->second) visit(j);
      }
    }
  }

  /// Calls visit(i, j) once for each unordered pair i < j in neighboring cells.
  template <typename Visit>
  void for_each_close_pair(Visit&& visit) const {
    for (std::size_t i = 0; i < points_->size(); ++i) {
      for_each_near((*points_)[i], [&](std::size_t j) {
        if (i < j) visit(i, j);
      });
    }
  }

 private:
  std::int64_t cell_of(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_)); }
  static std::uint64_t key(std::int64_t cx, std::int64_t cy) {
    return (static_cast<std::uint64_t>(cx) << 32) ^ (static_cast<std::uint64_t>(cy) & 0xffffffffULL);
  }

  const std::vector<Point>* points_;
  double cell_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

}  // namespace penny::detail
