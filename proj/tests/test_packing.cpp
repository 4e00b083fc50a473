#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "penny/errors.hpp"
#include "penny/packing.hpp"
#include "penny/rng.hpp"
#include "support.hpp"

using namespace penny;

TEST_SUITE("packing") {
  TEST_CASE("exact tangency is allowed") {
    const auto report = validate_packing(DiskPacking({{0, 0}, {1, 0}}));
    CHECK(report.ok);
    CHECK(report.min_distance == 1.0);
  }

  TEST_CASE("overlap is reported by pair") {
    const auto report = validate_packing(DiskPacking({{0, 0}, {0.99, 0}}));
    CHECK_FALSE(report.ok);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0] == std::pair<std::size_t, std::size_t>{0, 1});
  }

  TEST_CASE("triangular patch of about 100 disks passes an all-pairs check") {
    const DiskPacking p = generate_lattice(LatticeKind::triangular, 5);
    CHECK(p.size() == 91);
    CHECK(validate_packing(p).ok);
    double min_d = 1e300;
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = i + 1; j < p.size(); ++j) min_d = std::min(min_d, distance(p.centers()[i], p.centers()[j]));
    }
    CHECK(min_d >= 1.0 - 1e-9);
    CHECK(validate_packing(p).min_distance == doctest::Approx(min_d).epsilon(1e-15));
  }

  TEST_CASE("lattice sizes and contact counts") {
    const auto sq = generate_lattice(LatticeKind::square, 1);
    CHECK(sq.size() == 9);
    CHECK(test::brute_contacts(sq.centers(), 1e-9).size() == 12);
    const auto hex = generate_lattice(LatticeKind::triangular, 1);
    CHECK(hex.size() == 7);
    CHECK(test::brute_contacts(hex.centers(), 1e-9).size() == 12);
    CHECK(generate_lattice(LatticeKind::square, 0).size() == 1);
    CHECK(generate_lattice(LatticeKind::square, 64).size() == 129 * 129);
  }

  TEST_CASE("lattices always validate") {
    for (int L = 0; L <= 12; ++L) {
      CHECK(validate_packing(generate_lattice(LatticeKind::square, L)).ok);
      CHECK(validate_packing(generate_lattice(LatticeKind::triangular, L)).ok);
    }
  }

  TEST_CASE("deleting disks keeps a packing valid") {
    const auto full = generate_lattice(LatticeKind::triangular, 6);
    CounterRng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Point> kept;
      for (const Point& c : full.centers()) {
        if (rng.uniform() < 0.6) kept.push_back(c);
      }
      CHECK(validate_packing(DiskPacking(kept)).ok);
    }
  }

  TEST_CASE("keep probability 1 gives the full patch with triangular faces") {
    RandomSubsetParams p;
    p.keep_probability = 1.0;
    p.half_width = 5;
    const auto s = test::make_sample("full", generate_random_subset(p));
    CHECK(s.packing.size() == generate_lattice(LatticeKind::triangular, 5).size());
    CHECK(s.faces.max_bounded_degree() == 3);
  }

  TEST_CASE("random subset respects the facial degree bound") {
    RandomSubsetParams p;
    p.seed = 7;
    const auto s = test::make_sample("seed7", generate_random_subset(p));
    CHECK(validate_packing(s.packing).ok);
    CHECK(s.faces.max_bounded_degree() <= 8);
    CHECK(s.graph.num_components() == 1);
  }

  TEST_CASE("random subset is reproducible") {
    RandomSubsetParams p;
    p.seed = 3;
    CHECK(generate_random_subset(p).centers() == generate_random_subset(p).centers());
  }

  TEST_CASE("exhausted retry budget is reported") {
    RandomSubsetParams p;
    p.keep_probability = 0.5;
    p.max_facial_degree = 3;
    p.retry_budget = 2;
    CHECK_THROWS_AS(generate_random_subset(p), ConvergenceError);
  }

  TEST_CASE("save and load reproduce centers bit for bit") {
    RandomSubsetParams p;
    p.seed = 1;
    const DiskPacking a = generate_random_subset(p).translated({0.1, -1.0 / 3.0});
    const auto path = std::filesystem::temp_directory_path() / "penny_roundtrip.json";
    save_packing(a, path);
    const DiskPacking b = load_packing(path);
    std::filesystem::remove(path);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a.centers()[i].x == b.centers()[i].x);
      CHECK(a.centers()[i].y == b.centers()[i].y);
    }
    CHECK(a.tolerance() == b.tolerance());
  }

  TEST_CASE("loading a missing file is an I/O error") {
    CHECK_THROWS_AS(load_packing("/nonexistent/penny.json"), IoError);
  }
}
