#include "penny/extend.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "penny/errors.hpp"

namespace penny {

PLField::PLField(const Triangulation& mesh, ScalarField values) : mesh_(&mesh), values_(std::move(values)) {
  if (values_.size() != mesh.num_vertices()) {
    throw ValidationError("PL field has " + std::to_string(values_.size()) + " values for a mesh of " +
                          std::to_string(mesh.num_vertices()) + " vertices");
  }
  coefficients_.reserve(mesh.triangles().size());
  for (const Triangle& t : mesh.triangles()) {
    const Point a = t.corners[0];
    const Point b = t.corners[1];
    const Point c = t.corners[2];
    const double fa = values_[t.vertices[0]];
    const double fb = values_[t.vertices[1]];
    const double fc = values_[t.vertices[2]];
    const double det = orient(a, b, c);
    const double gx = ((fb - fa) * (c.y - a.y) - (fc - fa) * (b.y - a.y)) / det;
    const double gy = ((fc - fa) * (b.x - a.x) - (fb - fa) * (c.x - a.x)) / det;
    coefficients_.push_back({fa - gx * a.x - gy * a.y, gx, gy});
  }
}

double pl_eval(const PLField& pl, Point p) {
  const auto tri = pl.mesh().locate(p);
  if (!tri) throw ValidationError("point outside the triangulated region");
  const Triangle& t = pl.mesh().triangles()[*tri];
  // Exact at corners regardless of coefficient rounding.
  for (std::size_t i = 0; i < 3; ++i) {
    if (t.corners[i] == p) return pl.values()[t.vertices[i]];
  }
  return pl.eval_on(*tri, p);
}

std::vector<Point> disk_polygon(const DiskRegion& disk, int sides) {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(sides));
  for (int k = 0; k < sides; ++k) {
    const double a = 2 * std::numbers::pi * k / sides;
    out.push_back({disk.center.x + disk.radius * std::cos(a), disk.center.y + disk.radius * std::sin(a)});
  }
  return out;
}

double triangle_square_integral(double area, double f1, double f2, double f3) {
  const double s = f1 + f2 + f3;
  return area / 12.0 * (s * s + f1 * f1 + f2 * f2 + f3 * f3);
}

namespace {

double polygon_area(const std::vector<Point>& poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) twice += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * twice;
}

// Sutherland-Hodgman clip of `subject` by the convex CCW polygon `clip`.
std::vector<Point> clip_convex(std::vector<Point> subject, const std::vector<Point>& clip) {
  for (std::size_t e = 0; e < clip.size() && !subject.empty(); ++e) {
    const Point a = clip[e];
    const Point b = clip[(e + 1) % clip.size()];
    std::vector<Point> next;
    next.reserve(subject.size() + 2);
    for (std::size_t i = 0; i < subject.size(); ++i) {
      const Point p = subject[i];
      const Point q = subject[(i + 1) % subject.size()];
      const double sp = orient(a, b, p);
      const double sq = orient(a, b, q);
      if (sp >= 0) next.push_back(p);
      if ((sp >= 0) != (sq >= 0)) {
        const double t = sp / (sp - sq);
        next.push_back(p + t * (q - p));
      }
    }
    subject = std::move(next);
  }
  return subject;
}

bool inside_convex(Point p, const std::vector<Point>& poly) {
  for (std::size_t e = 0; e < poly.size(); ++e) {
    if (orient(poly[e], poly[(e + 1) % poly.size()], p) < 0) return false;
  }
  return true;
}

double full_triangle_product(const PLField& a, const PLField& b, const Triangle& t) {
  double sa = 0, sb = 0, sab = 0;
  for (VertexId v : t.vertices) {
    sa += a.values()[v];
    sb += b.values()[v];
    sab += a.values()[v] * b.values()[v];
  }
  return t.area() / 12.0 * (sa * sb + sab);
}

}  // namespace

DiskCover cover_disk(const Triangulation& mesh, const DiskRegion& disk) {
  DiskCover cover;
  const std::vector<Point> poly = disk_polygon(disk);
  cover.polygon_area = polygon_area(poly);
  const Point lo{disk.center.x - disk.radius, disk.center.y - disk.radius};
  const Point hi{disk.center.x + disk.radius, disk.center.y + disk.radius};
  for (std::size_t id : mesh.triangles_in_box(lo, hi)) {
    const Triangle& t = mesh.triangles()[id];
    if (inside_convex(t.corners[0], poly) && inside_convex(t.corners[1], poly) &&
        inside_convex(t.corners[2], poly)) {
      cover.full_triangles.push_back(id);
      cover.covered_area += t.area();
      continue;
    }
    const std::vector<Point> piece = clip_convex({t.corners.begin(), t.corners.end()}, poly);
    if (piece.size() < 3) continue;
    for (std::size_t k = 1; k + 1 < piece.size(); ++k) {
      const Point p0 = piece[0];
      const Point p1 = piece[k];
      const Point p2 = piece[k + 1];
      const double area = 0.5 * orient(p0, p1, p2);
      if (!(area > 0.0)) continue;
      cover.covered_area += area;
      for (const Point m : {0.5 * (p0 + p1), 0.5 * (p1 + p2), 0.5 * (p2 + p0)}) {
        cover.nodes.push_back({id, m, area / 3.0});
      }
    }
  }
  return cover;
}

double integrate_pl_product(const PLField& a, const PLField& b, const DiskCover& cover) {
  double total = 0.0;
  for (std::size_t id : cover.full_triangles) total += full_triangle_product(a, b, a.mesh().triangles()[id]);
  for (const auto& node : cover.nodes) {
    total += node.weight * a.eval_on(node.triangle, node.point) * b.eval_on(node.triangle, node.point);
  }
  return total;
}

double integrate_pl_square(const PLField& pl, const Region& region) {
  if (const auto* tr = std::get_if<TriangleRegion>(&region)) {
    if (tr->triangle >= pl.mesh().triangles().size()) throw ValidationError("triangle id out of range");
    const Triangle& t = pl.mesh().triangles()[tr->triangle];
    return triangle_square_integral(t.area(), pl.values()[t.vertices[0]], pl.values()[t.vertices[1]],
                                    pl.values()[t.vertices[2]]);
  }
  const auto& disk = std::get<DiskRegion>(region);
  return integrate_pl_product(pl, pl, cover_disk(pl.mesh(), disk));
}

double trace_constant(const Triangle& t) {
  const double area = t.area();
  if (!(area > 0.0)) throw ValidationError("trace constant of a degenerate triangle");
  Eigen::Matrix3d mass;
  mass << 2, 1, 1, 1, 2, 1, 1, 1, 2;
  mass *= area / 12.0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(mass, Eigen::EigenvaluesOnly);
  return 1.0 / eig.eigenvalues().minCoeff();
}

double planar_mvi_ratio(const PennyGraph& g, const PLField& pl, Point p, double radius,
                        const PlanarMviOptions& options) {
  if (!(radius > 0.0) || radius < options.min_radius) {
    throw ValidationError("planar MVI radius " + std::to_string(radius) + " below R1 = " +
                          std::to_string(options.min_radius));
  }
  const auto tri = pl.mesh().locate(p);
  if (!tri) throw ValidationError("MVI center outside the triangulated region");
  const Triangle& t = pl.mesh().triangles()[*tri];
  VertexId nearest = t.vertices[0];
  for (std::size_t i = 1; i < 3; ++i) {
    if (distance(p, t.corners[i]) < distance(p, g.position(nearest))) nearest = t.vertices[i];
  }
  const VertexSet near = ball(g, nearest, static_cast<int>(std::ceil(2 * radius)));
  const double lap = max_abs_laplacian(g, pl.values(), near.ids());
  if (lap > options.harmonic_tol) {
    throw ValidationError("planar MVI: field not harmonic near the center, max |Lf| = " + std::to_string(lap));
  }
  const DiskCover cover = cover_disk(pl.mesh(), {p, radius});
  if (!cover.covers_disk()) throw ValidationError("planar MVI: disk not covered by the triangulation");
  const double integral = integrate_pl_product(pl, pl, cover);
  if (integral == 0.0) return 0.0;
  const double value = pl_eval(pl, p);
  return value * value * radius * radius / integral;
}

}  // namespace penny
