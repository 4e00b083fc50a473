#include "penny/packing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <string>

#include "penny/contact.hpp"
#include "penny/errors.hpp"
#include "penny/faces.hpp"
#include "penny/rng.hpp"
#include "spatial_hash.hpp"

namespace penny {

DiskPacking::DiskPacking(std::vector<Point> centers, double tolerance)
    : centers_(std::move(centers)), tolerance_(tolerance) {
  if (!(tolerance >= 0.0) || !std::isfinite(tolerance)) {
    throw ValidationError("packing tolerance must be a finite nonnegative number");
  }
  for (const Point& c : centers_) {
    if (!std::isfinite(c.x) || !std::isfinite(c.y)) {
      throw ValidationError("packing center has a non-finite coordinate");
    }
  }
}

DiskPacking DiskPacking::translated(Point offset) const {
  std::vector<Point> moved = centers_;
  for (Point& c : moved) c = c + offset;
  return DiskPacking(std::move(moved), tolerance_);
}

namespace {

// Sweep-line closest pair, O(n log n).
double closest_pair_distance(const std::vector<Point>& pts) {
  double best = std::numeric_limits<double>::infinity();
  if (pts.size() < 2) return best;
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pts[a].x < pts[b].x || (pts[a].x == pts[b].x && pts[a].y < pts[b].y);
  });
  std::set<std::pair<double, std::size_t>> active;
  std::size_t left = 0;
  for (std::size_t idx : order) {
    const Point p = pts[idx];
    while (left < order.size() && pts[order[left]].x < p.x - best) {
      active.erase({pts[order[left]].y, order[left]});
      ++left;
    }
    for (auto it = active.lower_bound({p.y - best, 0}); it != active.end() && it->first <= p.y + best; ++it) {
      best = std::min(best, distance(p, pts[it->second]));
    }
    active.insert({p.y, idx});
  }
  return best;
}

}  // namespace

ValidationReport validate_packing(const DiskPacking& packing) {
  ValidationReport report;
  const auto& pts = packing.centers();
  report.min_distance = closest_pair_distance(pts);
  const double limit = 1.0 - packing.tolerance();
  if (!(report.min_distance < limit)) return report;

  detail::SpatialHash hash(pts, 1.0);
  hash.for_each_close_pair([&](std::size_t i, std::size_t j) {
    if (distance(pts[i], pts[j]) < limit) report.violations.emplace_back(i, j);
  });
  std::sort(report.violations.begin(), report.violations.end());
  report.ok = report.violations.empty();
  return report;
}

DiskPacking generate_lattice(LatticeKind kind, int half_width) {
  if (half_width < 0) throw ValidationError("lattice half-width must be nonnegative");
  const int L = half_width;
  std::vector<Point> centers;
  if (kind == LatticeKind::square) {
    centers.reserve(static_cast<std::size_t>(2 * L + 1) * (2 * L + 1));
    for (int j = -L; j <= L; ++j) {
      for (int i = -L; i <= L; ++i) centers.push_back({double(i), double(j)});
    }
  } else {
    const double h = std::sqrt(3.0) / 2.0;
    for (int j = -L; j <= L; ++j) {
      for (int i = -L; i <= L; ++i) {
        if (std::abs(i + j) > L) continue;
        centers.push_back({i + 0.5 * j, h * j});
      }
    }
  }
  return DiskPacking(std::move(centers));
}

DiskPacking generate_random_subset(const RandomSubsetParams& params) {
  if (!(params.keep_probability > 0.0 && params.keep_probability <= 1.0)) {
    throw ValidationError("keep probability must lie in (0, 1]");
  }
  if (params.max_facial_degree < 3) throw ValidationError("max facial degree must be at least 3");
  if (params.retry_budget < 1) throw ValidationError("retry budget must be positive");

  const DiskPacking patch = generate_lattice(LatticeKind::triangular, params.half_width);
  const CounterRng root(params.seed);

  for (int attempt = 0; attempt < params.retry_budget; ++attempt) {
    CounterRng rng = root.split(static_cast<std::uint64_t>(attempt));
    std::vector<Point> kept;
    for (const Point& c : patch.centers()) {
      if (rng.uniform() < params.keep_probability) kept.push_back(c);
    }
    if (kept.empty()) continue;

    const PennyGraph g = build_contact_graph(DiskPacking(kept));
    std::vector<std::size_t> comp_size(g.num_components(), 0);
    for (VertexId v = 0; v < g.num_vertices(); ++v) ++comp_size[g.component(v)];
    const auto largest = static_cast<std::size_t>(
        std::max_element(comp_size.begin(), comp_size.end()) - comp_size.begin());

    std::vector<Point> connected;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (g.component(v) == largest) connected.push_back(g.position(v));
    }
    DiskPacking candidate(std::move(connected));
    const FaceSet faces = trace_faces(build_contact_graph(candidate));
    if (faces.max_bounded_degree() <= static_cast<std::size_t>(params.max_facial_degree)) {
      return candidate;
    }
  }
  throw ConvergenceError("random subset: retry budget of " + std::to_string(params.retry_budget) +
                         " exhausted before all bounded faces had degree <= " +
                         std::to_string(params.max_facial_degree));
}

nlohmann::json to_json(const DiskPacking& packing) {
  nlohmann::json centers = nlohmann::json::array();
  for (const Point& c : packing.centers()) centers.push_back({c.x, c.y});
  return {{"radius", DiskPacking::kRadius}, {"tolerance", packing.tolerance()}, {"centers", centers}};
}

DiskPacking packing_from_json(const nlohmann::json& doc) {
  try {
    if (doc.contains("radius") && doc.at("radius").get<double>() != DiskPacking::kRadius) {
      throw ValidationError("packing radius must be 0.5");
    }
    const double tol = doc.value("tolerance", kDefaultTolerance);
    std::vector<Point> centers;
    for (const auto& c : doc.at("centers")) {
      if (!c.is_array() || c.size() != 2) throw ValidationError("packing center must be an [x, y] pair");
      centers.push_back({c[0].get<double>(), c[1].get<double>()});
    }
    return DiskPacking(std::move(centers), tol);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed packing document: ") + e.what());
  }
}

void save_packing(const DiskPacking& packing, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << to_json(packing).dump() << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

DiskPacking load_packing(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("packing file " + path.string() + " is not valid JSON: " + e.what());
  }
  return packing_from_json(doc);
}

}  // namespace penny
