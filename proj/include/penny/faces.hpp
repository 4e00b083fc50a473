#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "penny/contact.hpp"

namespace penny {

struct DirectedEdge {
  VertexId tail = 0;
  VertexId head = 0;
  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

/// Closed boundary walk of one face. Bounded faces run counterclockwise
/// (face on the left of every directed edge) with turning number +1; the
/// outer face of each component has turning number -1.
struct FaceWalk {
  std::vector<DirectedEdge> edges;
  /// Tail of each edge in walk order; a lone vertex for isolated components.
  std::vector<VertexId> corners;
  int turning_number = 1;
  bool outer = false;
  std::size_t component = 0;

  /// Facial degree: number of corners of the walk.
  std::size_t degree() const { return edges.size(); }
};

class FaceSet {
 public:
  const std::vector<FaceWalk>& faces() const { return faces_; }
  std::size_t size() const { return faces_.size(); }
  const FaceWalk& operator[](std::size_t i) const { return faces_[i]; }

  /// Face owning the directed edge (v -> neighbors(v)[slot]).
  std::size_t face_of(VertexId v, std::size_t slot) const { return face_of_[offsets_[v] + slot]; }

  /// D: max facial degree over bounded faces, 0 when there are none.
  std::size_t max_bounded_degree() const { return max_bounded_degree_; }
  std::size_t num_bounded() const;

 private:
  friend FaceSet trace_faces(const PennyGraph& g);

  std::vector<FaceWalk> faces_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> face_of_;
  std::size_t max_bounded_degree_ = 0;
};

/// Rotation-system face tracing: after arriving at v along (u, v), leave
/// along the neighbor of v that is next clockwise from u.
FaceSet trace_faces(const PennyGraph& g);

/// Interior angle at each corner of the walk, in (0, 2*pi], measured on the
/// face side. Repeated vertices contribute one angle per occurrence.
std::vector<double> interior_angles(const PennyGraph& g, const FaceWalk& face);

struct Corner {
  VertexId id = 0;
  Point p;
};

/// Corner list of a bounded face in walk order, possibly with repeated ids.
struct FacePolygon {
  std::vector<Corner> corners;
  /// Shoelace area over the walk.
  double area = 0.0;

  std::size_t size() const { return corners.size(); }
};

/// Shoelace sum over a closed corner list.
double shoelace_area(const std::vector<Corner>& corners);

/// Throws ValidationError for the outer face.
FacePolygon face_polygon(const PennyGraph& g, const FaceWalk& face);

/// Vertices lying on some outer walk: where a finite window was cut out of
/// a larger configuration.
VertexSet window_rim(const PennyGraph& g, const FaceSet& faces);

/// Graph distance from x0 to the nearest rim vertex; kUnreachable when its
/// component has none.
int rim_distance(const PennyGraph& g, const VertexSet& rim, VertexId x0);

/// {"faces": [{"degree", "area", "outer", "walk"}], "D"}.
nlohmann::json to_json(const PennyGraph& g, const FaceSet& faces);

}  // namespace penny
