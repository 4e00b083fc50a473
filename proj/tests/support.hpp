#pragma once

// Test corpus and brute-force oracles. Oracles here avoid the library's
// spatial hash, rotation system and solvers on purpose.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "penny/contact.hpp"
#include "penny/faces.hpp"
#include "penny/packing.hpp"

namespace penny::test {

struct Sample {
  std::string name;
  DiskPacking packing;
  PennyGraph graph;
  FaceSet faces;
};

Sample make_sample(std::string name, DiskPacking packing);

/// Z2 window, triangular window and 50 random subsets with D <= 8.
const std::vector<Sample>& corpus();

/// All pairs at distance 1 within tol, i < j, sorted.
std::vector<std::pair<std::size_t, std::size_t>> brute_contacts(const std::vector<Point>& centers, double tol);

/// Distances by repeated relaxation over the brute contact list.
std::vector<int> brute_distances(const std::vector<Point>& centers, std::size_t source, double tol);

/// Thomas algorithm for a tridiagonal system.
std::vector<double> solve_tridiagonal(std::vector<double> lower, std::vector<double> diag, std::vector<double> upper,
                                      std::vector<double> rhs);

/// |B_R| on Z2: 2R^2 + 2R + 1.
inline std::size_t z2_ball_size(int r) { return std::size_t(2 * r * r + 2 * r + 1); }

/// Winding number of a closed polyline around p (p off the polyline).
int winding_number(const std::vector<Point>& poly, Point p);

/// Distance from p to segment [a, b].
double segment_distance(Point p, Point a, Point b);

}  // namespace penny::test
