#include <doctest.h>

#include <cmath>

#include "penny/errors.hpp"
#include "penny/field.hpp"
#include "penny/rng.hpp"
#include "support.hpp"

using namespace penny;

namespace {

ScalarField random_field(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed);
  ScalarField f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = rng.uniform(-1, 1);
  return f;
}

}  // namespace

TEST_SUITE("field") {
  TEST_CASE("laplacian examples") {
    const PennyGraph z2 = build_contact_graph(generate_lattice(LatticeKind::square, 5));
    const ScalarField c(z2.num_vertices(), 2.5);
    const ScalarField lc = laplacian(z2, c);
    for (double v : lc.values()) CHECK(v == 0.0);
    const ScalarField x = ScalarField::sample(z2, [](Point p) { return p.x; });
    const VertexId o = nearest_vertex(z2, {0, 0});
    CHECK(laplacian(z2, x)[o] == 0.0);
    const PennyGraph hex = build_contact_graph(generate_lattice(LatticeKind::triangular, 1));
    ScalarField delta(hex.num_vertices());
    const VertexId center = nearest_vertex(hex, {0, 0});
    delta[center] = 1.0;
    CHECK(laplacian(hex, delta)[center] == -6.0);
  }

  TEST_CASE("laplacian sums to zero and is self-adjoint on the corpus") {
    std::uint64_t seed = 0;
    for (const auto& s : test::corpus()) {
      const auto& g = s.graph;
      const ScalarField f = random_field(g.num_vertices(), ++seed);
      const ScalarField h = random_field(g.num_vertices(), ++seed);
      const ScalarField lf = laplacian(g, f), lh = laplacian(g, h);
      double sum = 0, scale = 0, fh = 0, hf = 0;
      for (VertexId v = 0; v < g.num_vertices(); ++v) {
        sum += lf[v];
        scale += std::abs(lf[v]);
        fh += f[v] * lh[v];
        hf += h[v] * lf[v];
      }
      CHECK(std::abs(sum) <= 1e-12 * scale);
      CHECK(std::abs(fh - hf) <= 1e-10 * std::max(std::abs(fh), 1.0));
    }
  }

  TEST_CASE("non-finite values are rejected") {
    CHECK_THROWS_AS(ScalarField(std::vector<double>{1.0, std::nan("")}), ValidationError);
  }

  TEST_CASE("constant boundary data gives a constant") {
    const PennyGraph g = build_contact_graph(generate_lattice(LatticeKind::square, 8));
    const VertexId o = nearest_vertex(g, {0, 0});
    const auto sol = solve_dirichlet(g, ball(g, o, 5), ScalarField(g.num_vertices(), 3.0));
    for (VertexId v : sol.domain) CHECK(std::abs(sol.field[v] - 3.0) <= 1e-10);
  }

  TEST_CASE("path graph against a tridiagonal oracle") {
    const int n = 40;
    std::vector<Point> pts;
    for (int i = 0; i <= n; ++i) pts.push_back({double(i), 0.0});
    const PennyGraph g = build_contact_graph(DiskPacking(pts));
    std::vector<VertexId> inner;
    for (int i = 1; i < n; ++i) inner.push_back(nearest_vertex(g, {double(i), 0}));
    ScalarField data(g.num_vertices());
    data[nearest_vertex(g, {double(n), 0})] = 1.0;
    const auto sol = solve_dirichlet(g, VertexSet(g, inner), data);
    std::vector<double> lower(n - 1, -1.0), diag(n - 1, 2.0), upper(n - 1, -1.0), rhs(n - 1, 0.0);
    rhs.back() = 1.0;
    const auto oracle = test::solve_tridiagonal(lower, diag, upper, rhs);
    for (int i = 1; i < n; ++i) {
      const double f = sol.field[nearest_vertex(g, {double(i), 0})];
      CHECK(std::abs(f - oracle[i - 1]) <= 1e-10);
      CHECK(std::abs(f - double(i) / n) <= 1e-10);
    }
  }

  TEST_CASE("x^2 - y^2 is reproduced on a Z2 ball") {
    const PennyGraph g = build_contact_graph(generate_lattice(LatticeKind::square, 24));
    const ScalarField q = ScalarField::sample(g, [](Point p) { return p.x * p.x - p.y * p.y; });
    const VertexId o = nearest_vertex(g, {0, 0});
    const VertexSet domain = ball(g, o, 20);
    CHECK(max_abs_laplacian(g, q, domain.ids()) == 0.0);
    const auto sol = solve_dirichlet(g, domain, q);
    for (VertexId v : domain) CHECK(std::abs(sol.field[v] - q[v]) <= 1e-8);
  }

  TEST_CASE("maximum principle and linearity on the corpus") {
    std::uint64_t seed = 100;
    for (const auto& s : test::corpus()) {
      CAPTURE(s.name);
      const auto& g = s.graph;
      const VertexId o = nearest_vertex(g, {0, 0});
      const VertexSet domain = ball(g, o, 4);
      const ScalarField a = random_field(g.num_vertices(), ++seed);
      const ScalarField b = random_field(g.num_vertices(), ++seed);
      const auto sa = solve_dirichlet(g, domain, a);
      const auto sb = solve_dirichlet(g, domain, b);
      const auto sab = solve_dirichlet(g, domain, 0.7 * a + b);
      double lo = 1e300, hi = -1e300;
      for (VertexId v : sa.boundary) lo = std::min(lo, a[v]), hi = std::max(hi, a[v]);
      for (VertexId v : sa.domain) {
        CHECK(sa.field[v] >= lo);
        CHECK(sa.field[v] <= hi);
        CHECK(std::abs(sab.field[v] - (0.7 * sa.field[v] + sb.field[v])) <= 1e-8);
      }
      CHECK(sa.residual <= 1e-10);
    }
  }

  TEST_CASE("solver errors") {
    const PennyGraph g = build_contact_graph(generate_lattice(LatticeKind::square, 3));
    std::vector<VertexId> all(g.num_vertices());
    for (VertexId v = 0; v < all.size(); ++v) all[v] = v;
    CHECK_THROWS_AS(solve_dirichlet(g, VertexSet(g, all), ScalarField(g.num_vertices())), ValidationError);
    DirichletOptions tight;
    tight.max_iter = 1;
    tight.tol = 1e-300;
    const VertexSet domain = ball(g, nearest_vertex(g, {0, 0}), 2);
    CHECK_THROWS_AS(solve_dirichlet(g, domain, random_field(g.num_vertices(), 1), tight), ConvergenceError);
  }

  TEST_CASE("discrete mean value ratio") {
    const PennyGraph g = build_contact_graph(generate_lattice(LatticeKind::square, 12));
    const VertexId o = nearest_vertex(g, {0, 0});
    CHECK(discrete_mvi_ratio(g, ScalarField(g.num_vertices(), -2.0), o, 4) == 1.0);
    const ScalarField x = ScalarField::sample(g, [](Point p) { return p.x; });
    CHECK(discrete_mvi_ratio(g, x, o, 4) == 0.0);
    // Oracle for f = 1 + x: numerator |B_r|, denominator |B_r| + sum of x^2.
    const ScalarField f = ScalarField::sample(g, [](Point p) { return 1 + p.x; });
    double sum_x2 = 0;
    for (VertexId v : ball(g, o, 4)) sum_x2 += g.position(v).x * g.position(v).x;
    const double n = double(test::z2_ball_size(4));
    CHECK(discrete_mvi_ratio(g, f, o, 4) == doctest::Approx(n / (n + sum_x2)).epsilon(1e-14));
    const ScalarField r2 = ScalarField::sample(g, [](Point p) { return p.x * p.x + p.y * p.y; });
    CHECK_THROWS_AS(discrete_mvi_ratio(g, r2, o, 4), ValidationError);
  }
}
