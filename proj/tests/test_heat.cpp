#include <doctest.h>

#include <cmath>

#include "penny/errors.hpp"
#include "penny/heat.hpp"
#include "penny/rng.hpp"
#include "support.hpp"

using namespace penny;

namespace {

const PennyGraph& z2() {
  static const PennyGraph g = build_contact_graph(generate_lattice(LatticeKind::square, 16));
  return g;
}

std::vector<GrowthSample> grid(const PennyGraph& g, const AncientSolution& sol, VertexId x0, int radius) {
  const auto dist = bfs_distances(g, x0, radius);
  std::vector<GrowthSample> out;
  for (VertexId v : sol.validity()) {
    if (dist[v] == kUnreachable) continue;
    for (double t : {0.0, -1.0, -4.0, -16.0, -64.0}) out.push_back({v, t});
  }
  return out;
}

}  // namespace

TEST_SUITE("heat") {
  TEST_CASE("constants are stationary") {
    const ScalarField c(z2().num_vertices(), 1.5);
    const ScalarField next = heat_step(z2(), c, kMaxHeatStep);
    for (double v : next.values()) CHECK(v == 1.5);
  }

  TEST_CASE("harmonic fields are stationary") {
    const PennyGraph& g = z2();
    const VertexSet domain = ball(g, nearest_vertex(g, {0, 0}), 6);
    CounterRng rng(2);
    ScalarField data(g.num_vertices());
    for (std::size_t v = 0; v < data.size(); ++v) data[v] = rng.uniform();
    DirichletOptions tight;
    tight.tol = 1e-13;
    const auto sol = solve_dirichlet(g, domain, data, tight);
    const ScalarField next = heat_step(g, sol.field, 0.05);
    for (VertexId v : domain) CHECK(std::abs(next[v] - sol.field[v]) <= 1e-12);
  }

  TEST_CASE("one step from a delta at the hex center") {
    const PennyGraph g = build_contact_graph(generate_lattice(LatticeKind::triangular, 1));
    const VertexId c = nearest_vertex(g, {0, 0});
    ScalarField u(g.num_vertices());
    u[c] = 1;
    const ScalarField next = heat_step(g, u, 1.0 / 12);
    CHECK(next[c] == doctest::Approx(0.5).epsilon(1e-15));
    for (VertexId v : g.neighbors(c)) CHECK(next[v] == doctest::Approx(1.0 / 12).epsilon(1e-15));
  }

  TEST_CASE("step size is validated") {
    const ScalarField u(z2().num_vertices());
    CHECK_THROWS_AS(heat_step(z2(), u, 0.1), ValidationError);
    CHECK_THROWS_AS(heat_step(z2(), u, 0.0), ValidationError);
  }

  TEST_CASE("mass conservation and max principle on the corpus") {
    std::uint64_t seed = 0;
    for (const auto& s : test::corpus()) {
      CounterRng rng(++seed);
      ScalarField u(s.graph.num_vertices());
      for (std::size_t v = 0; v < u.size(); ++v) u[v] = rng.uniform(-1, 1);
      for (int step = 0; step < 50; ++step) {
        const ScalarField next = heat_step(s.graph, u, kMaxHeatStep);
        CHECK(std::abs(next.sum() - u.sum()) <= 1e-12 * std::max(1.0, std::abs(u.sum()) + double(u.size())));
        CHECK(next.max() <= u.max());
        CHECK(next.min() >= u.min());
        u = next;
      }
    }
  }

  TEST_CASE("harmonic seed gives a time-independent solution") {
    const PennyGraph& g = z2();
    const ScalarField x = ScalarField::sample(g, [](Point p) { return p.x; });
    for (int m : {0, 2}) {
      const AncientSolution sol = caloric_polynomial(g, x, m);
      for (VertexId v : sol.validity()) {
        CHECK(sol.value(v, -7.5) == x[v]);
        CHECK(sol.time_derivative(v, -3.0) == 0.0);
      }
    }
  }

  TEST_CASE("x^2 + y^2 + 4t") {
    const PennyGraph& g = z2();
    const ScalarField q = ScalarField::sample(g, [](Point p) { return p.x * p.x + p.y * p.y; });
    const AncientSolution sol = caloric_polynomial(g, q, 1);
    CHECK(sol.order() == 1);
    // Depth to the rim is 16 - max(|x|, |y|); valid means depth > 2.
    CHECK(sol.validity().size() == 27 * 27);
    for (VertexId v : sol.validity()) {
      const Point p = g.position(v);
      CHECK(sol.coefficients()[1][v] == 4.0);
      for (double t : {0.0, -0.5, -10.0}) CHECK(sol.value(v, t) == p.x * p.x + p.y * p.y + 4 * t);
    }
  }

  TEST_CASE("termwise caloric identity") {
    const PennyGraph& g = z2();
    const ScalarField q = ScalarField::sample(g, [](Point p) { return std::pow(p.x, 4) - 3 * p.x * p.x * p.y; });
    const AncientSolution sol = caloric_polynomial(g, q, 2);
    const auto& c = sol.coefficients();
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      const ScalarField lap = laplacian(g, c[i]);
      for (VertexId v : sol.validity()) CHECK(c[i + 1][v] == lap[v]);
    }
    for (double t : {0.0, -1.0, -2.5}) {
      ScalarField u(g.num_vertices());
      for (VertexId v = 0; v < g.num_vertices(); ++v) u[v] = sol.value(v, t);
      const ScalarField lu = laplacian(g, u);
      for (VertexId v : sol.validity()) {
        CHECK(std::abs(sol.time_derivative(v, t) - lu[v]) <= 1e-9 * std::max(1.0, std::abs(lu[v])));
      }
    }
  }

  TEST_CASE("growth certificates") {
    const PennyGraph& g = z2();
    const VertexId o = nearest_vertex(g, {0, 0});
    const AncientSolution one = caloric_polynomial(g, ScalarField(g.num_vertices(), 1.0), 0);
    CHECK(growth_certificate(g, one, o, 0, grid(g, one, o, 10)).constant == 1.0);

    const AncientSolution x = caloric_polynomial(g, ScalarField::sample(g, [](Point p) { return p.x; }), 0);
    const auto cx = growth_certificate(g, x, o, 1, grid(g, x, o, 12));
    CHECK(cx.constant <= 1.0);
    CHECK(cx.constant >= 0.9);
    CHECK(cx.saturated);

    const AncientSolution r2 =
        caloric_polynomial(g, ScalarField::sample(g, [](Point p) { return p.x * p.x + p.y * p.y; }), 1);
    const auto cr = growth_certificate(g, r2, o, 2, grid(g, r2, o, 12));
    CHECK(std::isfinite(cr.constant));
    CHECK(cr.constant <= 4.0);
    CHECK(cr.saturated);

    const std::vector<GrowthSample> bad{{o, 1.0}};
    CHECK_THROWS_AS(growth_certificate(g, x, o, 1, bad), ValidationError);
  }

  TEST_CASE("caloric polynomial count against the dimension bound") {
    const PennyGraph& g = z2();
    const VertexId o = nearest_vertex(g, {0, 0});
    // Z2 dimensions of harmonic polynomial spaces are 2k + 1.
    for (int k = 0; k <= 3; ++k) {
      const std::size_t count = caloric_polynomial_count(g, o, k, 4);
      CHECK(count <= std::size_t((k / 2 + 1) * (2 * k + 1)));
      CHECK(count >= std::size_t(2 * k + 1));
    }
    CHECK(caloric_polynomial_count(g, o, 2, 4) == 6);
  }

  TEST_CASE("empty validity region is rejected") {
    const PennyGraph g = build_contact_graph(generate_lattice(LatticeKind::square, 1));
    CHECK_THROWS_AS(caloric_polynomial(g, ScalarField(g.num_vertices(), 1.0), 3), ValidationError);
  }
}
