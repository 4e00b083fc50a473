#pragma once

#include <array>
#include <cstddef>
#include <variant>
#include <vector>

#include "penny/field.hpp"
#include "penny/triangulate.hpp"

namespace penny {

/// Piecewise-linear extension of a vertex field over the associated
/// triangulation: agrees with the field at vertices, affine on each triangle.
class PLField {
 public:
  /// Throws ValidationError when the field does not match the mesh vertices.
  PLField(const Triangulation& mesh, ScalarField values);

  const Triangulation& mesh() const { return *mesh_; }
  const ScalarField& values() const { return values_; }

  /// Affine interpolant of triangle `tri`, evaluated anywhere in the plane.
  double eval_on(std::size_t tri, Point p) const {
    const auto& c = coefficients_[tri];
    return c[0] + c[1] * p.x + c[2] * p.y;
  }

 private:
  const Triangulation* mesh_;
  ScalarField values_;
  std::vector<std::array<double, 3>> coefficients_;
};

/// Throws ValidationError when p lies outside the triangulated region.
double pl_eval(const PLField& pl, Point p);

struct TriangleRegion {
  std::size_t triangle = 0;
};

/// The disk is replaced by its inscribed regular 64-gon.
struct DiskRegion {
  Point center;
  double radius = 0.0;
};

using Region = std::variant<TriangleRegion, DiskRegion>;

inline constexpr int kDiskPolygonSides = 64;

/// Vertices of the inscribed regular polygon, counterclockwise from angle 0.
std::vector<Point> disk_polygon(const DiskRegion& disk, int sides = kDiskPolygonSides);

/// Exact integral of the square of the affine function with corner values
/// f over a triangle of the given area.
double triangle_square_integral(double area, double f1, double f2, double f3);

/// Quadrature over (disk polygon) intersected with the mesh: triangles lying
/// fully inside use closed forms, clipped pieces use the three-edge-midpoint
/// rule on a fan triangulation (exact for quadratics).
struct DiskCover {
  struct Node {
    std::size_t triangle;
    Point point;
    double weight;
  };
  std::vector<std::size_t> full_triangles;
  std::vector<Node> nodes;
  /// Area of the covered part of the polygon.
  double covered_area = 0.0;
  /// Area of the full polygon.
  double polygon_area = 0.0;

  bool covers_disk() const { return covered_area >= polygon_area * (1.0 - 1e-9); }
};

DiskCover cover_disk(const Triangulation& mesh, const DiskRegion& disk);

/// Integral of E(a) * E(b) over the cover.
double integrate_pl_product(const PLField& a, const PLField& b, const DiskCover& cover);

/// Integral of E(f)^2 over a mesh triangle or a disk; 0 for empty overlap.
double integrate_pl_square(const PLField& pl, const Region& region);

/// Smallest C with sum_i f_i^2 <= C * integral of the interpolant squared,
/// from the smallest eigenvalue of the 3x3 mass matrix. Equals 12 / area.
double trace_constant(const Triangle& t);

struct PlanarMviOptions {
  /// Smallest admissible radius (R_1).
  double min_radius = 0.0;
  double harmonic_tol = kHarmonicTolerance;
};

/// E(f)(p)^2 R^2 / integral over D_R(p) of E(f)^2. Requires f harmonic on
/// every vertex within graph distance ceil(2R) of the vertex nearest p, the
/// disk covered by the mesh, and R >= min_radius.
double planar_mvi_ratio(const PennyGraph& g, const PLField& pl, Point p, double radius,
                        const PlanarMviOptions& options = {});

}  // namespace penny
