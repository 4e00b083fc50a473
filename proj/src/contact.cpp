#include "penny/contact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <string>

#include "penny/errors.hpp"
#include "spatial_hash.hpp"

namespace penny {

std::size_t PennyGraph::max_degree() const {
  std::size_t d = 0;
  for (const auto& nbrs : adjacency_) d = std::max(d, nbrs.size());
  return d;
}

std::optional<std::size_t> PennyGraph::slot_of(VertexId v, VertexId u) const {
  const auto& nbrs = adjacency_[v];
  for (std::size_t s = 0; s < nbrs.size(); ++s) {
    if (nbrs[s] == u) return s;
  }
  return std::nullopt;
}

std::vector<std::pair<VertexId, VertexId>> PennyGraph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(num_edges_);
  for (VertexId i = 0; i < adjacency_.size(); ++i) {
    std::vector<VertexId> higher;
    for (VertexId j : adjacency_[i]) {
      if (j > i) higher.push_back(j);
    }
    std::sort(higher.begin(), higher.end());
    for (VertexId j : higher) out.emplace_back(i, j);
  }
  return out;
}

VertexSet::VertexSet(const PennyGraph& g, std::vector<VertexId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  if (!ids_.empty() && !g.valid(ids_.back())) {
    throw ValidationError("vertex id " + std::to_string(ids_.back()) + " out of range");
  }
}

bool VertexSet::contains(VertexId v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

PennyGraph build_contact_graph(const DiskPacking& packing) {
  const ValidationReport report = validate_packing(packing);
  if (!report.ok) {
    std::ostringstream msg;
    msg << "packing has " << report.violations.size() << " overlapping pair(s); first ("
        << report.violations.front().first << ", " << report.violations.front().second
        << "), min distance " << report.min_distance;
    throw ValidationError(msg.str());
  }

  PennyGraph g;
  g.positions_ = packing.centers();
  g.tolerance_ = packing.tolerance();
  const std::size_t n = g.positions_.size();
  g.adjacency_.assign(n, {});

  // Cell slightly larger than the contact distance so tangent pairs always
  // land in neighboring cells.
  detail::SpatialHash hash(g.positions_, 1.0 + std::max(1e-6, 4 * g.tolerance_));
  hash.for_each_close_pair([&](std::size_t i, std::size_t j) {
    if (std::abs(distance(g.positions_[i], g.positions_[j]) - 1.0) <= g.tolerance_) {
      g.adjacency_[i].push_back(j);
      g.adjacency_[j].push_back(i);
      ++g.num_edges_;
    }
  });

  for (VertexId v = 0; v < n; ++v) {
    auto& nbrs = g.adjacency_[v];
    const Point c = g.positions_[v];
    std::vector<std::pair<double, VertexId>> keyed;
    keyed.reserve(nbrs.size());
    for (VertexId u : nbrs) keyed.emplace_back(direction_angle(g.positions_[u] - c), u);
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t s = 0; s < keyed.size(); ++s) {
      nbrs[s] = keyed[s].second;
      // Two unit edges in one direction would force coincident centers.
      if (s > 0 && keyed[s].first - keyed[s - 1].first < 1e-6) {
        throw GeometryError("vertex " + std::to_string(v) + " has two edges in the same direction");
      }
    }
    if (nbrs.size() > 6) {
      throw GeometryError("vertex " + std::to_string(v) + " has degree " + std::to_string(nbrs.size()) + " > 6");
    }
  }

  g.component_.assign(n, std::numeric_limits<std::size_t>::max());
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < n; ++s) {
    if (g.component_[s] != std::numeric_limits<std::size_t>::max()) continue;
    const std::size_t id = g.num_components_++;
    g.component_[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      for (VertexId u : g.adjacency_[v]) {
        if (g.component_[u] == std::numeric_limits<std::size_t>::max()) {
          g.component_[u] = id;
          stack.push_back(u);
        }
      }
    }
  }
  return g;
}

namespace {

void require_vertex(const PennyGraph& g, VertexId v) {
  if (!g.valid(v)) throw ValidationError("vertex id " + std::to_string(v) + " out of range");
}

}  // namespace

std::vector<int> bfs_distances(const PennyGraph& g, VertexId source, std::optional<int> max_radius) {
  require_vertex(g, source);
  std::vector<int> dist(g.num_vertices(), kUnreachable);
  std::queue<VertexId> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const VertexId v = frontier.front();
    frontier.pop();
    if (max_radius && dist[v] >= *max_radius) continue;
    for (VertexId u : g.neighbors(v)) {
      if (dist[u] == kUnreachable) {
        dist[u] = dist[v] + 1;
        frontier.push(u);
      }
    }
  }
  return dist;
}

std::optional<std::size_t> graph_distance(const PennyGraph& g, VertexId x, VertexId y) {
  require_vertex(g, x);
  require_vertex(g, y);
  if (x == y) return 0;
  if (g.component(x) != g.component(y)) return std::nullopt;
  const auto dist = bfs_distances(g, x);
  return static_cast<std::size_t>(dist[y]);
}

VertexSet ball(const PennyGraph& g, VertexId x0, int radius) {
  if (radius < 0) throw ValidationError("ball radius must be nonnegative");
  const auto dist = bfs_distances(g, x0, radius);
  std::vector<VertexId> ids;
  for (VertexId v = 0; v < dist.size(); ++v) {
    if (dist[v] != kUnreachable) ids.push_back(v);
  }
  return VertexSet(g, std::move(ids));
}

VertexSet vertex_boundary(const PennyGraph& g, const VertexSet& omega) {
  std::vector<VertexId> out;
  for (VertexId x : omega) {
    for (VertexId y : g.neighbors(x)) {
      if (!omega.contains(y)) out.push_back(y);
    }
  }
  return VertexSet(g, std::move(out));
}

VertexId nearest_vertex(const PennyGraph& g, Point p) {
  if (g.num_vertices() == 0) throw ValidationError("nearest vertex of an empty graph");
  VertexId best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const double d = distance(p, g.position(v));
    if (d < best_d) {
      best_d = d;
      best = v;
    }
  }
  return best;
}

nlohmann::json to_json(const PennyGraph& g) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const Point& p : g.positions()) vertices.push_back({p.x, p.y});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [i, j] : g.edges()) edges.push_back({i, j});
  return {{"vertices", vertices}, {"edges", edges}};
}

}  // namespace penny
