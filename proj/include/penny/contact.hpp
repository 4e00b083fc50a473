#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "penny/packing.hpp"
#include "penny/point.hpp"

namespace penny {

using VertexId = std::size_t;

/// Contact graph of a disk packing with its straight-line embedding.
/// Neighbor lists are sorted counterclockwise by edge direction, starting
/// from the positive x axis. Immutable after construction.
class PennyGraph {
 public:
  PennyGraph() = default;

  std::size_t num_vertices() const { return positions_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  std::size_t num_components() const { return num_components_; }
  double tolerance() const { return tolerance_; }

  Point position(VertexId v) const { return positions_[v]; }
  const std::vector<Point>& positions() const { return positions_; }
  std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[v]; }
  std::size_t degree(VertexId v) const { return adjacency_[v].size(); }
  std::size_t component(VertexId v) const { return component_[v]; }
  std::size_t max_degree() const;

  /// Position of u in the rotation at v, or nullopt when u is not a neighbor.
  std::optional<std::size_t> slot_of(VertexId v, VertexId u) const;

  /// Undirected edges as (i, j) with i < j, in lexicographic order.
  std::vector<std::pair<VertexId, VertexId>> edges() const;

  bool valid(VertexId v) const { return v < positions_.size(); }

 private:
  friend PennyGraph build_contact_graph(const DiskPacking& packing);

  std::vector<Point> positions_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<std::size_t> component_;
  std::size_t num_components_ = 0;
  std::size_t num_edges_ = 0;
  double tolerance_ = kDefaultTolerance;
};

/// Sorted duplicate-free set of vertex ids of one graph.
class VertexSet {
 public:
  VertexSet() = default;
  /// Sorts and deduplicates; throws ValidationError on ids out of range.
  VertexSet(const PennyGraph& g, std::vector<VertexId> ids);

  std::span<const VertexId> ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  bool contains(VertexId v) const;
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

 private:
  std::vector<VertexId> ids_;
};

/// Edge iff | |c_i - c_j| - 1 | <= tolerance. Throws ValidationError when the
/// packing overlaps.
PennyGraph build_contact_graph(const DiskPacking& packing);

inline constexpr int kUnreachable = -1;

/// BFS distances from `source`; kUnreachable for other components and for
/// vertices farther than `max_radius` when it is given.
std::vector<int> bfs_distances(const PennyGraph& g, VertexId source, std::optional<int> max_radius = {});

/// Combinatorial distance, nullopt across components.
std::optional<std::size_t> graph_distance(const PennyGraph& g, VertexId x, VertexId y);

/// B_R(x0) = { y : d(y, x0) <= R }.
VertexSet ball(const PennyGraph& g, VertexId x0, int radius);

/// { y not in omega : y ~ x for some x in omega }.
VertexSet vertex_boundary(const PennyGraph& g, const VertexSet& omega);

/// Vertex whose position is closest to p (lowest id on ties).
VertexId nearest_vertex(const PennyGraph& g, Point p);

/// {"vertices": [[x, y], ...], "edges": [[i, j], ...]} with i < j.
nlohmann::json to_json(const PennyGraph& g);

}  // namespace penny
