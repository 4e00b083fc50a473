#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "penny/dimension.hpp"
#include "penny/errors.hpp"
#include "penny/rng.hpp"
#include "support.hpp"

using namespace penny;

namespace {

struct Window {
  test::Sample sample;
  VertexSet rim;
  VertexId center;
};

const Window& z2() {
  static const Window w = [] {
    auto s = test::make_sample("z2", generate_lattice(LatticeKind::square, 64));
    VertexSet rim = window_rim(s.graph, s.faces);
    const VertexId c = nearest_vertex(s.graph, {0, 0});
    return Window{std::move(s), std::move(rim), c};
  }();
  return w;
}

GramPencil pencil(int k, double R, int modes, std::vector<ScalarField> extra = {}, GramMode mode = GramMode::discrete,
                  const Triangulation* mesh = nullptr) {
  const Window& w = z2();
  PencilParams p;
  p.k = k;
  p.radius = R;
  p.modes = modes;
  p.mode = mode;
  p.extra_probes = std::move(extra);
  return build_pencil(w.sample.graph, w.center, p, mesh, &w.rim);
}

int count_below(const GramPencil& p, int k, double delta = 0.5) {
  const std::vector<GramPencil> one{p};
  return *estimate_dim(one, k, delta).estimate;
}

}  // namespace

TEST_SUITE("dimension") {
  TEST_CASE("probe basis sizes") {
    const Window& w = z2();
    const auto zero = boundary_probe_basis(w.sample.graph, w.center, 8, 0);
    REQUIRE(zero.size() == 1);
    for (VertexId v = 0; v < w.sample.graph.num_vertices(); ++v) {
      const auto d = graph_distance(w.sample.graph, w.center, v);
      CHECK(zero[0][v] == (d == 9 ? 1.0 : 0.0));
    }
    const auto six = boundary_probe_basis(w.sample.graph, w.center, 8, 6);
    REQUIRE(six.size() == 13);
    Eigen::MatrixXd gram(13, 13);
    for (int i = 0; i < 13; ++i) {
      for (int j = 0; j < 13; ++j) {
        double s = 0;
        for (std::size_t v = 0; v < six[i].size(); ++v) s += six[i][v] * six[j][v];
        gram(i, j) = s;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    CHECK(es.eigenvalues().minCoeff() > 1e-8 * es.eigenvalues().maxCoeff());
  }

  TEST_CASE("first-mode extensions are close to coordinates") {
    const Window& w = z2();
    const PennyGraph& g = w.sample.graph;
    const auto ext = harmonic_probe_basis(g, w.center, 8, 1);
    REQUIRE(ext.size() == 3);
    const VertexSet inner = ball(g, w.center, 4);
    // Least squares fit of each extension by a + b x + c y on B_4.
    Eigen::MatrixXd A(inner.size(), 3);
    std::size_t row = 0;
    for (VertexId v : inner) A.row(row++) << 1.0, g.position(v).x, g.position(v).y;
    for (const auto& f : ext) {
      Eigen::VectorXd b(inner.size());
      row = 0;
      for (VertexId v : inner) b(row++) = f[v];
      const Eigen::VectorXd coef = A.colPivHouseholderQr().solve(b);
      CHECK((A * coef - b).norm() <= 0.05 * b.norm());
    }
  }

  TEST_CASE("constant probe pencil is the volume ratio") {
    const GramPencil p = pencil(0, 10, 0);
    REQUIRE(p.outer.rows() == 1);
    const double ratio = p.outer(0, 0) / p.inner(0, 0);
    CHECK(ratio == doctest::Approx(double(test::z2_ball_size(20)) / double(test::z2_ball_size(10))).epsilon(1e-9));
  }

  TEST_CASE("outer Gram dominates inner Gram") {
    const GramPencil p = pencil(1, 16, 6);
    CHECK(p.outer.rows() == 13);
    CHECK((p.outer - p.outer.transpose()).norm() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.outer - p.inner);
    CHECK(es.eigenvalues().minCoeff() >= -1e-9 * p.outer.norm());
  }

  TEST_CASE("Z2 estimates on a 129 x 129 window") {
    const Window& w = z2();
    for (int k : {0, 1, 2}) {
      std::vector<GramPencil> ps;
      for (double R : {12.0, 16.0, 24.0}) ps.push_back(pencil(k, R, -1));
      const auto report = estimate_dim(ps, k, 0.5);
      REQUIRE(report.estimate);
      CHECK(*report.estimate == 2 * k + 1);
    }
    CHECK(w.sample.graph.num_vertices() == 129 * 129);
  }

  TEST_CASE("planar and discrete counts agree") {
    const Window& w = z2();
    const Triangulation mesh = triangulate_window(w.sample.graph, w.sample.faces);
    for (int k : {1, 2}) {
      const GramPencil d = pencil(k, 16, -1);
      const GramPencil p = pencil(k, 16, -1, {}, GramMode::planar, &mesh);
      CHECK(count_below(d, k) == count_below(p, k));
    }
  }

  TEST_CASE("count is monotone in k and delta") {
    const GramPencil p = pencil(2, 16, 8);
    int prev = 0;
    for (int k = 0; k <= 3; ++k) {
      const int c = count_below(p, k);
      CHECK(c >= prev);
      prev = c;
    }
    prev = 0;
    for (double delta : {0.0, 0.25, 0.5, 1.0, 1.5}) {
      const int c = count_below(p, 1, delta);
      CHECK(c >= prev);
      prev = c;
    }
  }

  TEST_CASE("eigenvalues do not depend on the basis") {
    GramPencil p = pencil(1, 16, 6);
    const auto before = pencil_eigenvalues(p);
    CounterRng rng(12);
    const Eigen::Index n = p.outer.rows();
    Eigen::MatrixXd T = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) T(i, j) += 0.2 * rng.uniform(-1, 1);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(T);
    CHECK(svd.singularValues()(0) / svd.singularValues()(n - 1) < 20);
    p.outer = T.transpose() * p.outer * T;
    p.inner = T.transpose() * p.inner * T;
    const auto after = pencil_eigenvalues(p);
    REQUIRE(after.size() == before.size());
    for (std::size_t i = 0; i < before.size(); ++i) {
      CAPTURE(i);
      CHECK(std::abs(after[i] - before[i]) <= 1e-6 * before[i]);
    }
  }

  TEST_CASE("exact harmonic probe adds one slow mode") {
    const Window& w = z2();
    const ScalarField q = ScalarField::sample(w.sample.graph, [](Point p) { return p.x * p.x - p.y * p.y; });
    const VertexSet interior = ball(w.sample.graph, w.center, 60);
    CHECK(max_abs_laplacian(w.sample.graph, q, interior.ids()) == 0.0);
    const int without = count_below(pencil(2, 16, 1), 2);
    const int with = count_below(pencil(2, 16, 1, {q}), 2);
    CHECK(without == 3);
    CHECK(with == without + 1);
  }

  TEST_CASE("separation above the threshold") {
    const auto report = estimate_dim(std::vector<GramPencil>{pencil(1, 16, -1)}, 1, 0.5);
    // The next polynomial mode grows like beta^(2k+4), so the ratio cannot
    // exceed beta^(2 - delta) = 2.83; require the count to be unambiguous.
    CHECK(report.schedule[0].separation > 1.2);
    CHECK(report.schedule[0].separation < std::pow(2.0, 1.5) * 1.01);
  }

  TEST_CASE("window too small for the schedule") {
    const auto s = test::make_sample("small", generate_lattice(LatticeKind::square, 20));
    const VertexSet rim = window_rim(s.graph, s.faces);
    PencilParams p;
    p.radius = 16;
    CHECK_THROWS_AS(build_pencil(s.graph, nearest_vertex(s.graph, {0, 0}), p, nullptr, &rim), ValidationError);
  }

  TEST_CASE("report serialization") {
    const auto report = estimate_dim(std::vector<GramPencil>{pencil(1, 12, -1)}, 1, 0.5);
    const auto doc = to_json(report);
    CHECK(doc["estimate"] == 3);
    CHECK(doc["schedule"][0]["R"] == 12.0);
    CHECK(doc["threshold"].get<double>() == doctest::Approx(std::pow(2.0, 4.5)));
  }
}
