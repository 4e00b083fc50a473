#include "penny/triangulate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "penny/errors.hpp"

namespace penny {

namespace {

constexpr double kEps = 1e-9;
constexpr double kPi = std::numbers::pi;

using Walk = std::vector<Corner>;

bool same_point(Point a, Point b) { return distance(a, b) <= kEps; }

double point_segment_distance(Point q, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0 ? dot(q - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(q, a + t * ab);
}

// Signed distance of q from the oriented line through (a, b); positive on the left.
double side(Point a, Point b, Point q) { return orient(a, b, q) / distance(a, b); }

bool proper_cross(Point a, Point b, Point c, Point d) {
  const double s1 = side(a, b, c);
  const double s2 = side(a, b, d);
  const double s3 = side(c, d, a);
  const double s4 = side(c, d, b);
  return ((s1 > kEps && s2 < -kEps) || (s1 < -kEps && s2 > kEps)) &&
         ((s3 > kEps && s4 < -kEps) || (s3 < -kEps && s4 > kEps));
}

std::size_t prev_of(std::size_t i, std::size_t n) { return (i + n - 1) % n; }
std::size_t next_of(std::size_t i, std::size_t n) { return (i + 1) % n; }

// Interior angle on the left of the walk at corner i, in (0, 2*pi].
double corner_angle(const Walk& w, std::size_t i) {
  const std::size_t n = w.size();
  const Point at = w[i].p;
  const double a = ccw_angle(w[next_of(i, n)].p - at, w[prev_of(i, n)].p - at);
  return a == 0.0 ? 2 * kPi : a;
}

// Direction strictly inside the interior wedge at corner i.
bool in_wedge(const Walk& w, std::size_t i, Point dir) {
  const Point at = w[i].p;
  const double a = ccw_angle(w[next_of(i, w.size())].p - at, dir);
  return a > kEps && a < corner_angle(w, i) - kEps;
}

int winding_number(const Walk& w, Point q) {
  int wn = 0;
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = w[i].p;
    const Point b = w[next_of(i, n)].p;
    if (a.y <= q.y) {
      if (b.y > q.y && orient(a, b, q) > 0) ++wn;
    } else if (b.y <= q.y && orient(a, b, q) < 0) {
      --wn;
    }
  }
  return wn;
}

// Whether segment [s0, s1] meets the open CCW triangle (a, b, c) in more than a point.
bool hits_open_triangle(Point a, Point b, Point c, Point s0, Point s1) {
  double lo = 0.0;
  double hi = 1.0;
  const std::array<std::pair<Point, Point>, 3> sides{{{a, b}, {b, c}, {c, a}}};
  for (const auto& [u, v] : sides) {
    const double f0 = side(u, v, s0) - kEps;
    const double f1 = side(u, v, s1) - kEps;
    // Need f0 + (f1 - f0) t > 0.
    if (f0 <= 0 && f1 <= 0) return false;
    if (f0 > 0 && f1 > 0) continue;
    const double t = f0 / (f0 - f1);
    if (f0 > 0) {
      hi = std::min(hi, t);
    } else {
      lo = std::max(lo, t);
    }
  }
  return hi - lo > kEps;
}

std::string dump(const Walk& w) {
  std::ostringstream out;
  out.precision(17);
  out << "face walk (" << w.size() << " corners):";
  for (const Corner& c : w) out << " " << c.id << "@(" << c.p.x << "," << c.p.y << ")";
  return out.str();
}

bool ear_is_valid(const Walk& w, std::size_t i) {
  const std::size_t n = w.size();
  const std::size_t ip = prev_of(i, n);
  const std::size_t in = next_of(i, n);
  if (w[ip].id == w[in].id) return false;
  if (corner_angle(w, i) >= kPi - kEps) return false;
  if (!is_diagonal(w, ip, in)) return false;
  const Point a = w[ip].p;
  const Point b = w[i].p;
  const Point c = w[in].p;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == ip || k == i) continue;  // the two ear edges
    if (hits_open_triangle(a, b, c, w[k].p, w[next_of(k, n)].p)) return false;
  }
  return true;
}

// Index pair (i, k) to split along, or nullopt.
std::optional<std::pair<std::size_t, std::size_t>> find_split(const Walk& w) {
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (corner_angle(w, i) >= kPi - kEps) continue;
    const Point v = w[i].p;
    const Point a = w[prev_of(i, n)].p;
    const Point c = w[next_of(i, n)].p;

    // Vertices inside the closed ear triangle other than its three corners,
    // nearest to v first.
    std::vector<std::pair<double, std::size_t>> enclosed;
    std::vector<std::pair<double, std::size_t>> others;
    for (std::size_t k = 0; k < n; ++k) {
      const Point q = w[k].p;
      if (same_point(q, v)) continue;
      const double d = distance(v, q);
      const bool is_corner = same_point(q, a) || same_point(q, c);
      const bool inside = orient(a, v, q) >= -kEps && orient(v, c, q) >= -kEps && orient(c, a, q) >= -kEps;
      if (inside && !is_corner) {
        enclosed.emplace_back(d, k);
      } else {
        others.emplace_back(d, k);
      }
    }
    std::sort(enclosed.begin(), enclosed.end());
    for (const auto& [d, k] : enclosed) {
      if (is_diagonal(w, i, k)) return std::pair{i, k};
    }
    std::sort(others.begin(), others.end());
    for (const auto& [d, k] : others) {
      if (is_diagonal(w, i, k)) return std::pair{i, k};
    }
  }
  return std::nullopt;
}

}  // namespace

double Triangle::min_angle() const { return *std::min_element(angles.begin(), angles.end()); }
double Triangle::max_length() const { return *std::max_element(lengths.begin(), lengths.end()); }

Triangle make_triangle(const Corner& a, const Corner& b, const Corner& c, std::size_t face) {
  Triangle t;
  t.vertices = {a.id, b.id, c.id};
  t.corners = {a.p, b.p, c.p};
  for (std::size_t i = 0; i < 3; ++i) {
    t.angles[i] = vertex_angle(t.corners[(i + 2) % 3], t.corners[i], t.corners[(i + 1) % 3]);
    t.lengths[i] = distance(t.corners[i], t.corners[(i + 1) % 3]);
  }
  t.face = face;
  return t;
}

const char* to_string(EarPolicy policy) {
  switch (policy) {
    case EarPolicy::max_min_angle:
      return "max_min_angle";
    case EarPolicy::first_found:
      return "first_found";
    case EarPolicy::rollout:
      break;
  }
  return "rollout";
}

bool is_diagonal(const std::vector<Corner>& w, std::size_t i, std::size_t j) {
  const std::size_t n = w.size();
  if (i >= n || j >= n || i == j) return false;
  if (next_of(i, n) == j || next_of(j, n) == i) return false;
  const Point a = w[i].p;
  const Point b = w[j].p;
  if (same_point(a, b)) return false;
  if (!in_wedge(w, i, b - a) || !in_wedge(w, j, a - b)) return false;

  for (std::size_t k = 0; k < n; ++k) {
    const Point q = w[k].p;
    if (same_point(q, a) || same_point(q, b)) continue;
    if (point_segment_distance(q, a, b) <= kEps) return false;
  }
  const Point mid = 0.5 * (a + b);
  for (std::size_t k = 0; k < n; ++k) {
    const Point c = w[k].p;
    const Point d = w[next_of(k, n)].p;
    if (proper_cross(a, b, c, d)) return false;
    if (point_segment_distance(mid, c, d) <= kEps) return false;
  }
  return winding_number(w, mid) == 1;
}

namespace {

using EarChooser = std::function<std::optional<std::size_t>(const Walk&)>;

// Clips ears picked by `choose`, splitting when none is valid.
std::vector<Triangle> clip_all(Walk start, const EarChooser& choose, std::size_t face_id) {
  std::vector<Triangle> out;
  std::vector<Walk> pending{std::move(start)};
  while (!pending.empty()) {
    Walk w = std::move(pending.back());
    pending.pop_back();
    if (w.size() < 3) throw GeometryError("degenerate sub-polygon; " + dump(w));

    while (w.size() > 3) {
      const std::size_t n = w.size();
      if (const auto chosen = choose(w)) {
        const std::size_t i = *chosen;
        out.push_back(make_triangle(w[prev_of(i, n)], w[i], w[next_of(i, n)], face_id));
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }

      const auto split = find_split(w);
      if (!split) throw GeometryError("no valid ear or split; " + dump(w));
      const auto [i, k] = *split;
      Walk first;
      Walk second;
      for (std::size_t s = i;; s = next_of(s, n)) {
        first.push_back(w[s]);
        if (s == k) break;
      }
      for (std::size_t s = k;; s = next_of(s, n)) {
        second.push_back(w[s]);
        if (s == i) break;
      }
      pending.push_back(std::move(second));
      w = std::move(first);
    }

    Triangle t = make_triangle(w[0], w[1], w[2], face_id);
    if (!(t.area() > kEps) || !(t.min_angle() > 0.0)) {
      throw GeometryError("final triangle is degenerate or clockwise; " + dump(w));
    }
    out.push_back(t);
  }
  return out;
}

double ear_quality(const Walk& w, std::size_t i) {
  const std::size_t n = w.size();
  return make_triangle(w[prev_of(i, n)], w[i], w[next_of(i, n)]).min_angle();
}

std::optional<std::size_t> first_ear(const Walk& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (ear_is_valid(w, i)) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> greedy_ear(const Walk& w) {
  std::optional<std::size_t> chosen;
  double best = -1.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!ear_is_valid(w, i)) continue;
    const double q = ear_quality(w, i);
    if (q > best) {
      best = q;
      chosen = i;
    }
  }
  return chosen;
}

double completion_quality(const Walk& w, const EarChooser& base) {
  try {
    double m = kPi;
    for (const Triangle& t : clip_all(w, base, 0)) m = std::min(m, t.min_angle());
    return m;
  } catch (const GeometryError&) {
    return -1.0;
  }
}

// Scores every valid ear by the worst angle of the ear plus the better of
// the two base completions of what is left, and takes the best score.
std::optional<std::size_t> rollout_ear(const Walk& w) {
  std::optional<std::size_t> chosen;
  double best = -2.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!ear_is_valid(w, i)) continue;
    Walk rest = w;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    const double tail = std::max(completion_quality(rest, greedy_ear), completion_quality(rest, first_ear));
    const double q = std::min(ear_quality(w, i), tail);
    if (q > best) {
      best = q;
      chosen = i;
    }
  }
  return chosen;
}

}  // namespace

std::vector<Triangle> triangulate_face(const FacePolygon& polygon, EarPolicy policy, std::size_t face_id) {
  switch (policy) {
    case EarPolicy::first_found:
      return clip_all(polygon.corners, first_ear, face_id);
    case EarPolicy::max_min_angle:
      return clip_all(polygon.corners, greedy_ear, face_id);
    case EarPolicy::rollout:
      break;
  }
  return clip_all(polygon.corners, rollout_ear, face_id);
}

std::optional<std::vector<Triangle>> optimal_triangulation(const FacePolygon& polygon, std::size_t face_id) {
  const Walk& w = polygon.corners;
  const std::size_t n = w.size();
  if (n < 3 || n > 12) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (w[i].id == w[j].id) return std::nullopt;
    }
  }

  auto usable = [&](std::size_t i, std::size_t j) {
    return j == i + 1 || (i == 0 && j == n - 1) || is_diagonal(w, i, j);
  };
  const double kNone = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best(n, std::vector<double>(n, kNone));
  std::vector<std::vector<std::size_t>> pick(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i + 1 < n; ++i) best[i][i + 1] = std::numeric_limits<double>::infinity();

  for (std::size_t span = 2; span < n; ++span) {
    for (std::size_t i = 0; i + span < n; ++i) {
      const std::size_t j = i + span;
      if (!usable(i, j)) continue;
      for (std::size_t k = i + 1; k < j; ++k) {
        if (best[i][k] == kNone || best[k][j] == kNone) continue;
        if (!(orient(w[i].p, w[k].p, w[j].p) > kEps)) continue;
        const double q = std::min({best[i][k], best[k][j], make_triangle(w[i], w[k], w[j]).min_angle()});
        if (q > best[i][j]) {
          best[i][j] = q;
          pick[i][j] = k;
        }
      }
    }
  }
  if (best[0][n - 1] == kNone) return std::nullopt;

  std::vector<Triangle> out;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, n - 1}};
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    if (j - i < 2) continue;
    const std::size_t k = pick[i][j];
    out.push_back(make_triangle(w[i], w[k], w[j], face_id));
    stack.emplace_back(i, k);
    stack.emplace_back(k, j);
  }
  return out;
}

std::span<const std::size_t> Triangulation::triangles_of_face(std::size_t face) const {
  return std::span<const std::size_t>(face_triangles_).subspan(face_offsets_[face],
                                                               face_offsets_[face + 1] - face_offsets_[face]);
}

void Triangulation::build_index() {
  grid_.clear();
  grid_nx_ = grid_ny_ = 0;
  if (triangles_.empty()) return;
  Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi{-lo.x, -lo.y};
  for (const Triangle& t : triangles_) {
    for (const Point& p : t.corners) {
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
  }
  grid_origin_ = lo - Point{kEps, kEps};
  grid_nx_ = static_cast<std::size_t>(std::floor(hi.x - grid_origin_.x + kEps)) + 1;
  grid_ny_ = static_cast<std::size_t>(std::floor(hi.y - grid_origin_.y + kEps)) + 1;
  grid_.assign(grid_nx_ * grid_ny_, {});
  for (std::size_t id = 0; id < triangles_.size(); ++id) {
    const auto& c = triangles_[id].corners;
    const double x0 = std::min({c[0].x, c[1].x, c[2].x}) - kEps - grid_origin_.x;
    const double x1 = std::max({c[0].x, c[1].x, c[2].x}) + kEps - grid_origin_.x;
    const double y0 = std::min({c[0].y, c[1].y, c[2].y}) - kEps - grid_origin_.y;
    const double y1 = std::max({c[0].y, c[1].y, c[2].y}) + kEps - grid_origin_.y;
    const auto clampx = [&](double v) { return std::min<std::size_t>(grid_nx_ - 1, std::size_t(std::max(0.0, std::floor(v)))); };
    const auto clampy = [&](double v) { return std::min<std::size_t>(grid_ny_ - 1, std::size_t(std::max(0.0, std::floor(v)))); };
    for (std::size_t gx = clampx(x0); gx <= clampx(x1); ++gx) {
      for (std::size_t gy = clampy(y0); gy <= clampy(y1); ++gy) grid_[gy * grid_nx_ + gx].push_back(id);
    }
  }
}

std::optional<std::size_t> Triangulation::locate(Point p, double tol) const {
  if (grid_.empty()) return std::nullopt;
  const double fx = std::floor(p.x - grid_origin_.x);
  const double fy = std::floor(p.y - grid_origin_.y);
  if (fx < 0 || fy < 0 || fx >= double(grid_nx_) || fy >= double(grid_ny_)) return std::nullopt;
  for (std::size_t id : grid_[std::size_t(fy) * grid_nx_ + std::size_t(fx)]) {
    const auto& c = triangles_[id].corners;
    const double total = orient(c[0], c[1], c[2]);
    const double l0 = orient(p, c[1], c[2]) / total;
    const double l1 = orient(c[0], p, c[2]) / total;
    const double l2 = orient(c[0], c[1], p) / total;
    if (l0 >= -tol && l1 >= -tol && l2 >= -tol) return id;
  }
  return std::nullopt;
}

std::vector<std::size_t> Triangulation::triangles_in_box(Point lo, Point hi) const {
  std::vector<std::size_t> out;
  if (grid_.empty()) return out;
  const auto cell = [](double v, std::size_t count) {
    return static_cast<std::size_t>(std::clamp(std::floor(v), 0.0, double(count - 1)));
  };
  const std::size_t gx0 = cell(lo.x - grid_origin_.x, grid_nx_);
  const std::size_t gx1 = cell(hi.x - grid_origin_.x, grid_nx_);
  const std::size_t gy0 = cell(lo.y - grid_origin_.y, grid_ny_);
  const std::size_t gy1 = cell(hi.y - grid_origin_.y, grid_ny_);
  for (std::size_t gy = gy0; gy <= gy1; ++gy) {
    for (std::size_t gx = gx0; gx <= gx1; ++gx) {
      const auto& bucket = grid_[gy * grid_nx_ + gx];
      out.insert(out.end(), bucket.begin(), bucket.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Triangulation triangulate_window(const PennyGraph& g, const FaceSet& faces, EarPolicy policy) {
  // A component nested in a bounded face of another one would make that
  // face a non-disk; the diagonal construction does not apply there.
  if (g.num_components() > 1) {
    std::vector<VertexId> representative(g.num_components(), g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (representative[g.component(v)] == g.num_vertices()) representative[g.component(v)] = v;
    }
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (faces[f].outer) continue;
      const FacePolygon poly = face_polygon(g, faces[f]);
      for (VertexId r : representative) {
        if (g.component(r) == faces[f].component) continue;
        if (winding_number(poly.corners, g.position(r)) != 0) {
          throw GeometryError("component of vertex " + std::to_string(r) + " lies inside bounded face " +
                              std::to_string(f));
        }
      }
    }
  }

  Triangulation t;
  t.policy_ = policy;
  t.positions_ = g.positions();
  t.face_degree_.assign(faces.size(), 0);
  t.face_offsets_.assign(faces.size() + 1, 0);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    t.face_offsets_[f] = t.triangles_.size();
    if (faces[f].outer) continue;
    t.face_degree_[f] = faces[f].degree();
    std::vector<Triangle> tris = triangulate_face(face_polygon(g, faces[f]), policy, f);
    if (tris.size() + 2 != faces[f].degree()) {
      throw GeometryError("face " + std::to_string(f) + " produced " + std::to_string(tris.size()) +
                          " triangles for degree " + std::to_string(faces[f].degree()));
    }
    t.triangles_.insert(t.triangles_.end(), tris.begin(), tris.end());
  }
  t.face_offsets_[faces.size()] = t.triangles_.size();
  t.face_triangles_.resize(t.triangles_.size());
  for (std::size_t i = 0; i < t.triangles_.size(); ++i) t.face_triangles_[i] = i;

  t.min_angle_ = t.triangles_.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  t.min_edge_ = t.triangles_.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (const Triangle& tri : t.triangles_) {
    t.min_angle_ = std::min(t.min_angle_, tri.min_angle());
    t.min_edge_ = std::min(t.min_edge_, *std::min_element(tri.lengths.begin(), tri.lengths.end()));
    t.max_edge_ = std::max(t.max_edge_, tri.max_length());
  }
  t.build_index();
  return t;
}

QualityReport quality_report(const Triangulation& t, std::size_t D, double tolerance) {
  QualityReport q;
  q.D = D;
  q.min_angle = t.min_angle();
  q.min_edge = t.min_edge();
  q.max_edge = t.max_edge();
  for (std::size_t f = 0; f < t.num_faces(); ++f) {
    const auto ids = t.triangles_of_face(f);
    if (ids.empty()) continue;
    DegreeQuality& entry = q.by_degree[t.face_degree(f)];
    if (entry.faces == 0) entry.min_angle = std::numeric_limits<double>::infinity();
    ++entry.faces;
    for (std::size_t id : ids) {
      const Triangle& tri = t.triangles()[id];
      entry.min_angle = std::min(entry.min_angle, tri.min_angle());
      entry.max_edge = std::max(entry.max_edge, tri.max_length());
      for (std::size_t s = 0; s < 3; ++s) {
        const double len = tri.lengths[s];
        if (len < 1.0 - tolerance || (D > 0 && len > double(D))) {
          std::ostringstream msg;
          msg.precision(17);
          msg << "triangle " << id << " side " << tri.vertices[s] << "-" << tri.vertices[(s + 1) % 3]
              << " has length " << len;
          q.violations.push_back(msg.str());
        }
      }
    }
  }
  return q;
}

nlohmann::json to_json(const Triangulation& t) {
  nlohmann::json vertices = nlohmann::json::array();
  for (const Point& p : t.positions()) vertices.push_back({p.x, p.y});
  nlohmann::json triangles = nlohmann::json::array();
  nlohmann::json face_of = nlohmann::json::array();
  for (const Triangle& tri : t.triangles()) {
    triangles.push_back({tri.vertices[0], tri.vertices[1], tri.vertices[2]});
    face_of.push_back(tri.face);
  }
  return {{"vertices", vertices}, {"triangles", triangles}, {"face_of_triangle", face_of},
          {"policy", to_string(t.policy())}};
}

nlohmann::json to_json(const QualityReport& q) {
  nlohmann::json by_degree = nlohmann::json::array();
  for (const auto& [deg, e] : q.by_degree) {
    by_degree.push_back({{"degree", deg}, {"faces", e.faces}, {"min_angle", e.min_angle}, {"max_edge", e.max_edge}});
  }
  return {{"min_angle", q.min_angle}, {"min_edge", q.min_edge}, {"max_edge", q.max_edge}, {"D", q.D},
          {"ok", q.ok()}, {"violations", q.violations}, {"by_degree", by_degree}};
}

}  // namespace penny
