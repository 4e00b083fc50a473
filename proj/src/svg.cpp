#include "penny/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "penny/errors.hpp"

namespace penny {

namespace {

constexpr double kScale = 20.0;

struct Frame {
  double min_x = 0.0;
  double max_y = 0.0;
  double width = 0.0;
  double height = 0.0;

  double sx(double x) const { return (x - min_x + 1.0) * kScale; }
  double sy(double y) const { return (max_y - y + 1.0) * kScale; }
};

Frame frame_of(const PennyGraph& g) {
  Frame f;
  if (g.num_vertices() == 0) return f;
  double min_x = std::numeric_limits<double>::infinity();
  double max_x = -min_x, min_y = min_x, max_y = -min_x;
  for (const Point& p : g.positions()) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  f.min_x = min_x;
  f.max_y = max_y;
  f.width = (max_x - min_x + 2.0) * kScale;
  f.height = (max_y - min_y + 2.0) * kScale;
  return f;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void open(std::ostringstream& out, const Frame& f) {
  // Screen y grows downwards, so y is flipped: plane y maps to max_y - y.
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<!-- penny drawing; plane y axis flipped for screen display, 1 unit = " << kScale << " px -->\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(f.width) << "\" height=\"" << num(f.height)
      << "\" viewBox=\"0 0 " << num(f.width) << " " << num(f.height) << "\">\n";
}

void disks(std::ostringstream& out, const PennyGraph& g, const Frame& f, const ScalarField* field) {
  double lo = 0.0, hi = 0.0;
  if (field) {
    lo = field->min();
    hi = field->max();
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const Point p = g.position(v);
    std::string fill = "none";
    if (field) {
      const double s = hi > lo ? ((*field)[v] - lo) / (hi - lo) : 0.5;
      char buf[16];
      std::snprintf(buf, sizeof buf, "#%02x40%02x", int(std::lround(255 * s)), int(std::lround(255 * (1 - s))));
      fill = buf;
    }
    out << "<circle cx=\"" << num(f.sx(p.x)) << "\" cy=\"" << num(f.sy(p.y)) << "\" r=\"" << num(0.5 * kScale)
        << "\" fill=\"" << fill << "\" stroke=\"#888888\" stroke-width=\"0.5\"/>\n";
  }
}

void edges(std::ostringstream& out, const PennyGraph& g, const Frame& f) {
  for (const auto& [a, b] : g.edges()) {
    const Point p = g.position(a), q = g.position(b);
    out << "<line x1=\"" << num(f.sx(p.x)) << "\" y1=\"" << num(f.sy(p.y)) << "\" x2=\"" << num(f.sx(q.x))
        << "\" y2=\"" << num(f.sy(q.y)) << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  }
}

}  // namespace

std::string packing_svg(const PennyGraph& g) {
  const Frame f = frame_of(g);
  std::ostringstream out;
  open(out, f);
  disks(out, g, f, nullptr);
  edges(out, g, f);
  out << "</svg>\n";
  return out.str();
}

std::string mesh_svg(const PennyGraph& g, const Triangulation& mesh) {
  const Frame f = frame_of(g);
  std::ostringstream out;
  open(out, f);
  for (const Triangle& t : mesh.triangles()) {
    out << "<polygon points=\"";
    for (int i = 0; i < 3; ++i) {
      out << (i ? " " : "") << num(f.sx(t.corners[i].x)) << "," << num(f.sy(t.corners[i].y));
    }
    out << "\" fill=\"#e0ecf8\" stroke=\"#4080c0\" stroke-width=\"0.5\"/>\n";
  }
  disks(out, g, f, nullptr);
  edges(out, g, f);
  out << "</svg>\n";
  return out.str();
}

std::string field_svg(const PennyGraph& g, const ScalarField& field) {
  if (field.size() != g.num_vertices()) throw ValidationError("field length does not match the graph");
  const Frame f = frame_of(g);
  std::ostringstream out;
  open(out, f);
  disks(out, g, f, &field);
  edges(out, g, f);
  out << "</svg>\n";
  return out.str();
}

}  // namespace penny
