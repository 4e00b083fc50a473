#include "penny/faces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "penny/errors.hpp"

namespace penny {

namespace {

constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

double corner_angle(Point prev, Point at, Point next) {
  const double a = ccw_angle(next - at, prev - at);
  return a == 0.0 ? 2 * std::numbers::pi : a;
}

std::string describe_walk(const FaceWalk& face) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < face.corners.size(); ++i) out << (i ? " " : "") << face.corners[i];
  out << "]";
  return out.str();
}

}  // namespace

std::size_t FaceSet::num_bounded() const {
  return static_cast<std::size_t>(
      std::count_if(faces_.begin(), faces_.end(), [](const FaceWalk& f) { return !f.outer; }));
}

std::vector<double> interior_angles(const PennyGraph& g, const FaceWalk& face) {
  const std::size_t n = face.edges.size();
  std::vector<double> angles(n);
  for (std::size_t i = 0; i < n; ++i) {
    const DirectedEdge in = face.edges[(i + n - 1) % n];
    const DirectedEdge out = face.edges[i];
    angles[i] = corner_angle(g.position(in.tail), g.position(out.tail), g.position(out.head));
  }
  return angles;
}

FaceSet trace_faces(const PennyGraph& g) {
  FaceSet fs;
  const std::size_t n = g.num_vertices();
  fs.offsets_.assign(n + 1, 0);
  for (VertexId v = 0; v < n; ++v) fs.offsets_[v + 1] = fs.offsets_[v] + g.degree(v);
  fs.face_of_.assign(fs.offsets_[n], kUnassigned);

  for (VertexId v = 0; v < n; ++v) {
    if (g.degree(v) == 0) {
      FaceWalk lone;
      lone.corners = {v};
      lone.turning_number = -1;
      lone.outer = true;
      lone.component = g.component(v);
      fs.faces_.push_back(std::move(lone));
      continue;
    }
    for (std::size_t s = 0; s < g.degree(v); ++s) {
      if (fs.face_of_[fs.offsets_[v] + s] != kUnassigned) continue;
      const std::size_t id = fs.faces_.size();
      FaceWalk walk;
      walk.component = g.component(v);
      VertexId tail = v;
      std::size_t slot = s;
      while (fs.face_of_[fs.offsets_[tail] + slot] == kUnassigned) {
        fs.face_of_[fs.offsets_[tail] + slot] = id;
        const VertexId head = g.neighbors(tail)[slot];
        walk.edges.push_back({tail, head});
        walk.corners.push_back(tail);
        const std::size_t back = *g.slot_of(head, tail);
        const std::size_t deg = g.degree(head);
        slot = (back + deg - 1) % deg;
        tail = head;
      }
      if (tail != v || slot != s) {
        throw GeometryError("face walk starting at vertex " + std::to_string(v) + " did not close");
      }

      double turning = 0.0;
      for (double a : interior_angles(g, walk)) turning += std::numbers::pi - a;
      const double winding = turning / (2 * std::numbers::pi);
      const double rounded = std::round(winding);
      if (std::abs(winding - rounded) > 1e-6 || (rounded != 1.0 && rounded != -1.0)) {
        std::ostringstream msg;
        msg << "face walk " << describe_walk(walk) << " has turning number " << winding;
        throw GeometryError(msg.str());
      }
      walk.turning_number = static_cast<int>(rounded);
      walk.outer = walk.turning_number == -1;
      fs.faces_.push_back(std::move(walk));
    }
  }

  std::vector<std::size_t> outer_count(g.num_components(), 0);
  for (const FaceWalk& f : fs.faces_) {
    if (f.outer) {
      ++outer_count[f.component];
    } else {
      fs.max_bounded_degree_ = std::max(fs.max_bounded_degree_, f.degree());
    }
  }
  for (std::size_t c = 0; c < outer_count.size(); ++c) {
    if (outer_count[c] != 1) {
      throw GeometryError("component " + std::to_string(c) + " has " + std::to_string(outer_count[c]) +
                          " outer walks");
    }
  }
  return fs;
}

double shoelace_area(const std::vector<Corner>& corners) {
  double twice = 0.0;
  const std::size_t n = corners.size();
  for (std::size_t i = 0; i < n; ++i) twice += cross(corners[i].p, corners[(i + 1) % n].p);
  return 0.5 * twice;
}

FacePolygon face_polygon(const PennyGraph& g, const FaceWalk& face) {
  if (face.outer) throw ValidationError("face_polygon called on an outer face");
  FacePolygon poly;
  poly.corners.reserve(face.corners.size());
  for (VertexId v : face.corners) poly.corners.push_back({v, g.position(v)});
  poly.area = shoelace_area(poly.corners);
  return poly;
}

VertexSet window_rim(const PennyGraph& g, const FaceSet& faces) {
  std::vector<VertexId> rim;
  for (const FaceWalk& f : faces.faces()) {
    if (f.outer) rim.insert(rim.end(), f.corners.begin(), f.corners.end());
  }
  return VertexSet(g, std::move(rim));
}

int rim_distance(const PennyGraph& g, const VertexSet& rim, VertexId x0) {
  if (!g.valid(x0)) throw ValidationError("vertex id " + std::to_string(x0) + " out of range");
  std::vector<int> dist(g.num_vertices(), kUnreachable);
  std::vector<VertexId> frontier{x0};
  dist[x0] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const VertexId v = frontier[head];
    if (rim.contains(v)) return dist[v];
    for (VertexId u : g.neighbors(v)) {
      if (dist[u] == kUnreachable) {
        dist[u] = dist[v] + 1;
        frontier.push_back(u);
      }
    }
  }
  return kUnreachable;
}

nlohmann::json to_json(const PennyGraph& g, const FaceSet& faces) {
  nlohmann::json list = nlohmann::json::array();
  for (const FaceWalk& f : faces.faces()) {
    std::vector<Corner> corners;
    for (VertexId v : f.corners) corners.push_back({v, g.position(v)});
    list.push_back({{"degree", f.degree()},
                    {"area", f.edges.empty() ? 0.0 : shoelace_area(corners)},
                    {"outer", f.outer},
                    {"walk", f.corners}});
  }
  return {{"faces", list}, {"D", faces.max_bounded_degree()}};
}

}  // namespace penny
