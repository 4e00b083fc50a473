#pragma once

#include <cmath>
#include <numbers>

namespace penny {

/// Plane point or vector, in units of the disk diameter.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(b - a); }

/// Twice the signed area of (a, b, c); positive when counterclockwise.
constexpr double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }

/// Direction angle in [0, 2*pi).
inline double direction_angle(Point v) {
  double a = std::atan2(v.y, v.x);
  if (a < 0) a += 2 * std::numbers::pi;
  return a;
}

/// Angle swept counterclockwise from direction `from` to direction `to`, in [0, 2*pi).
inline double ccw_angle(Point from, Point to) {
  double a = std::atan2(cross(from, to), dot(from, to));
  if (a < 0) a += 2 * std::numbers::pi;
  return a;
}

/// Interior angle at b of triangle (a, b, c), in [0, pi].
inline double vertex_angle(Point a, Point b, Point c) {
  Point u = a - b;
  Point v = c - b;
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

}  // namespace penny
