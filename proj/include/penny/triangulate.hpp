#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "penny/contact.hpp"
#include "penny/faces.hpp"

namespace penny {

/// Counterclockwise triangle of the associated triangulation.
struct Triangle {
  std::array<VertexId, 3> vertices{};
  std::array<Point, 3> corners{};
  /// angles[i] is the interior angle at corners[i].
  std::array<double, 3> angles{};
  /// lengths[i] is |corners[i+1] - corners[i]|.
  std::array<double, 3> lengths{};
  std::size_t face = 0;

  double area() const { return 0.5 * orient(corners[0], corners[1], corners[2]); }
  double min_angle() const;
  double max_length() const;
};

Triangle make_triangle(const Corner& a, const Corner& b, const Corner& c, std::size_t face = 0);

enum class EarPolicy {
  /// Clip the valid ear whose triangle has the largest minimum angle.
  max_min_angle,
  /// Clip the first valid ear in walk order (baseline).
  first_found,
  /// Clip the ear that maximizes min(ear angle, best completion of the rest
  /// by either policy above). Never worse than either of them.
  rollout,
};

const char* to_string(EarPolicy policy);

/// True when [corners[i], corners[j]] is a diagonal segment of the closed
/// walk: not a boundary edge, interior clear of vertices, no proper crossing
/// with the boundary, inside both corner wedges, midpoint inside.
bool is_diagonal(const std::vector<Corner>& corners, std::size_t i, std::size_t j);

/// Diagonal triangulation of one bounded face walk. Ears are clipped at
/// convex corners; when every ear is blocked, the polygon is split along the
/// segment from a convex corner to the nearest vertex inside its ear.
/// Returns exactly size() - 2 triangles. Throws GeometryError when no move is
/// possible.
std::vector<Triangle> triangulate_face(const FacePolygon& polygon, EarPolicy policy = EarPolicy::rollout,
                                       std::size_t face_id = 0);

/// Exhaustive max-min-angle triangulation by dynamic programming. Only for
/// simple walks (no repeated vertex) with at most 12 corners; nullopt
/// otherwise.
std::optional<std::vector<Triangle>> optimal_triangulation(const FacePolygon& polygon, std::size_t face_id = 0);

/// Associated triangulation of a window: all bounded faces, merged.
class Triangulation {
 public:
  const std::vector<Triangle>& triangles() const { return triangles_; }
  std::span<const std::size_t> triangles_of_face(std::size_t face) const;
  std::size_t face_degree(std::size_t face) const { return face_degree_[face]; }
  std::size_t num_faces() const { return face_degree_.size(); }
  std::size_t num_vertices() const { return positions_.size(); }
  const std::vector<Point>& positions() const { return positions_; }
  EarPolicy policy() const { return policy_; }

  double min_angle() const { return min_angle_; }
  double min_edge() const { return min_edge_; }
  double max_edge() const { return max_edge_; }

  /// Lowest-id triangle containing p, barycentric tolerance `tol`.
  std::optional<std::size_t> locate(Point p, double tol = 1e-12) const;

  /// Ids of triangles whose bounding box meets the given box.
  std::vector<std::size_t> triangles_in_box(Point lo, Point hi) const;

 private:
  friend Triangulation triangulate_window(const PennyGraph& g, const FaceSet& faces, EarPolicy policy);
  void build_index();

  std::vector<Triangle> triangles_;
  std::vector<std::size_t> face_offsets_;
  std::vector<std::size_t> face_triangles_;
  std::vector<std::size_t> face_degree_;
  std::vector<Point> positions_;
  EarPolicy policy_ = EarPolicy::rollout;
  double min_angle_ = 0.0;
  double min_edge_ = 0.0;
  double max_edge_ = 0.0;

  Point grid_origin_;
  std::size_t grid_nx_ = 0;
  std::size_t grid_ny_ = 0;
  std::vector<std::vector<std::size_t>> grid_;
};

/// Triangulates every bounded face. Throws GeometryError when a component
/// sits inside a bounded face of another one.
Triangulation triangulate_window(const PennyGraph& g, const FaceSet& faces,
                                 EarPolicy policy = EarPolicy::rollout);

struct DegreeQuality {
  std::size_t faces = 0;
  double min_angle = 0.0;
  double max_edge = 0.0;
};

struct QualityReport {
  double min_angle = 0.0;
  double min_edge = 0.0;
  double max_edge = 0.0;
  std::size_t D = 0;
  std::vector<std::string> violations;
  /// Keyed by facial degree.
  std::map<std::size_t, DegreeQuality> by_degree;

  bool ok() const { return violations.empty(); }
};

/// Checks every edge lies in [1 - tolerance, D] and tabulates angle and
/// edge extremes per facial degree.
QualityReport quality_report(const Triangulation& t, std::size_t D, double tolerance = kDefaultTolerance);

nlohmann::json to_json(const Triangulation& t);
nlohmann::json to_json(const QualityReport& q);

}  // namespace penny
