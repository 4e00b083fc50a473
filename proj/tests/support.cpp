#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace penny::test {

Sample make_sample(std::string name, DiskPacking packing) {
  Sample s{std::move(name), std::move(packing), {}, {}};
  s.graph = build_contact_graph(s.packing);
  s.faces = trace_faces(s.graph);
  return s;
}

const std::vector<Sample>& corpus() {
  static const std::vector<Sample> samples = [] {
    std::vector<Sample> out;
    out.push_back(make_sample("square-L12", generate_lattice(LatticeKind::square, 12)));
    out.push_back(make_sample("triangular-L10", generate_lattice(LatticeKind::triangular, 10)));
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      RandomSubsetParams p;
      p.half_width = 8;
      p.keep_probability = 0.9;
      p.max_facial_degree = 8;
      p.seed = seed;
      out.push_back(make_sample("random-" + std::to_string(seed), generate_random_subset(p)));
    }
    return out;
  }();
  return samples;
}

std::vector<std::pair<std::size_t, std::size_t>> brute_contacts(const std::vector<Point>& c, double tol) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const double d = std::hypot(c[i].x - c[j].x, c[i].y - c[j].y);
      if (std::abs(d - 1.0) <= tol) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<int> brute_distances(const std::vector<Point>& centers, std::size_t source, double tol) {
  const auto edges = brute_contacts(centers, tol);
  const int inf = std::numeric_limits<int>::max();
  std::vector<int> d(centers.size(), inf);
  d[source] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [a, b] : edges) {
      if (d[a] != inf && d[a] + 1 < d[b]) d[b] = d[a] + 1, changed = true;
      if (d[b] != inf && d[b] + 1 < d[a]) d[a] = d[b] + 1, changed = true;
    }
  }
  for (int& v : d) {
    if (v == inf) v = -1;
  }
  return d;
}

std::vector<double> solve_tridiagonal(std::vector<double> a, std::vector<double> b, std::vector<double> c,
                                      std::vector<double> d) {
  const std::size_t n = b.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = d[n - 1] / b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (d[i] - c[i] * x[i + 1]) / b[i];
  return x;
}

int winding_number(const std::vector<Point>& poly, Point p) {
  int wn = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point a = poly[i], b = poly[(i + 1) % poly.size()];
    const double side = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y);
    if (a.y <= p.y) {
      if (b.y > p.y && side > 0) ++wn;
    } else if (b.y <= p.y && side < 0) {
      --wn;
    }
  }
  return wn;
}

double segment_distance(Point p, Point a, Point b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

}  // namespace penny::test
