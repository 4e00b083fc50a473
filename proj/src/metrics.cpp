#include "penny/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "penny/errors.hpp"
#include "penny/faces.hpp"

namespace penny {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void guard(const PennyGraph& g, const VertexSet& rim, VertexId x0, int reach, const char* check) {
  const int d = rim_distance(g, rim, x0);
  if (d == kUnreachable || reach + 1 >= d) {
    std::ostringstream msg;
    msg << check << ": ball of radius " << reach << " around vertex " << x0 << " reaches the window rim (distance "
        << d << ")";
    throw ValidationError(msg.str());
  }
}

std::size_t count_within(const std::vector<int>& dist, int r) {
  return std::size_t(std::count_if(dist.begin(), dist.end(), [r](int d) { return d != kUnreachable && d <= r; }));
}

}  // namespace

MetricEntry quasi_isometry_check(const PennyGraph& g, std::size_t D,
                                 std::span<const std::pair<VertexId, VertexId>> pairs, double tolerance) {
  if (D < 3) throw ValidationError("quasi-isometry check needs facial degree D >= 3");
  MetricEntry e;
  e.check = "quasi_isometry";
  e.parameters = {{"D", D}, {"pairs", pairs.size()}};
  double lower = kInf;
  double upper = kInf;
  for (const auto& [x, y] : pairs) {
    const auto d = graph_distance(g, x, y);
    if (!d) throw ValidationError("quasi-isometry pair spans two components");
    const double euclid = distance(g.position(x), g.position(y));
    e.manifest.push_back({x, y, *d, euclid});
    if (*d == 0) continue;
    const double dd = double(*d);
    lower = std::min(lower, euclid * 2.0 * double(D) / dd);
    upper = std::min(upper, dd / euclid);
    if (euclid < dd / (2.0 * double(D)) - tolerance || euclid > dd + tolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "pair (" << x << ", " << y << "): d = " << *d << ", |phi phi| = " << euclid;
      e.violations.push_back(msg.str());
    }
  }
  e.constants["lower_slack"] = lower;
  e.constants["upper_slack"] = upper;
  e.pass = e.violations.empty();
  return e;
}

MetricEntry doubling_report(const PennyGraph& g, const VertexSet& rim, std::span<const VertexId> centers,
                            int r_max) {
  if (r_max < 1) throw ValidationError("doubling report needs r_max >= 1");
  MetricEntry e;
  e.check = "volume_doubling";
  e.parameters = {{"centers", std::vector<VertexId>(centers.begin(), centers.end())}, {"r_max", r_max}};
  double worst = 0.0;
  for (VertexId x0 : centers) {
    guard(g, rim, x0, 2 * r_max, "doubling");
    const auto dist = bfs_distances(g, x0, 2 * r_max);
    for (int r = 1; r <= r_max; ++r) {
      const std::size_t small = count_within(dist, r);
      const std::size_t big = count_within(dist, 2 * r);
      const double ratio = double(big) / double(small);
      worst = std::max(worst, ratio);
      e.manifest.push_back({x0, r, small, big, ratio});
    }
  }
  e.constants["doubling"] = worst;
  return e;
}

MetricEntry poincare_report(const PennyGraph& g, const VertexSet& rim, std::span<const VertexId> centers,
                            std::span<const int> radii, std::span<const ScalarField> probes) {
  MetricEntry e;
  e.check = "poincare";
  e.parameters = {{"centers", std::vector<VertexId>(centers.begin(), centers.end())},
                  {"radii", std::vector<int>(radii.begin(), radii.end())},
                  {"probes", probes.size()}};
  e.note = "right-hand side sums over adjacent pairs w ~ z inside B_2R, not over all pairs";
  double worst = 0.0;
  std::size_t skipped = 0;
  for (VertexId x0 : centers) {
    for (int r : radii) {
      if (r < 1) throw ValidationError("Poincare radius must be positive");
      guard(g, rim, x0, 2 * r, "poincare");
      const auto dist = bfs_distances(g, x0, 2 * r);
      for (std::size_t p = 0; p < probes.size(); ++p) {
        const ScalarField& f = probes[p];
        if (f.size() != g.num_vertices()) throw ValidationError("Poincare probe has the wrong length");
        double mean = 0.0;
        std::size_t n = 0;
        for (VertexId v = 0; v < dist.size(); ++v) {
          if (dist[v] != kUnreachable && dist[v] <= r) {
            mean += f[v];
            ++n;
          }
        }
        mean /= double(n);
        double variance = 0.0;
        double energy = 0.0;
        for (VertexId v = 0; v < dist.size(); ++v) {
          if (dist[v] == kUnreachable) continue;
          if (dist[v] <= r) variance += (f[v] - mean) * (f[v] - mean);
          for (VertexId w : g.neighbors(v)) {
            if (w > v && dist[w] != kUnreachable) energy += (f[w] - f[v]) * (f[w] - f[v]);
          }
        }
        if (energy == 0.0) {
          ++skipped;
          continue;
        }
        const double ratio = variance / (double(r) * double(r) * energy);
        worst = std::max(worst, ratio);
        e.manifest.push_back({x0, r, p, variance, energy, ratio});
      }
    }
  }
  e.constants["poincare"] = worst;
  e.constants["skipped_probes"] = double(skipped);
  return e;
}

MetricEntry quadratic_growth_check(const PennyGraph& g, const VertexSet& rim, std::span<const VertexId> centers,
                                   std::span<const int> radii) {
  MetricEntry e;
  e.check = "quadratic_growth";
  e.parameters = {{"centers", std::vector<VertexId>(centers.begin(), centers.end())},
                  {"radii", std::vector<int>(radii.begin(), radii.end())}};
  double best = kInf;
  for (VertexId x0 : centers) {
    for (int r : radii) {
      if (r < 1) throw ValidationError("quadratic growth radius must be positive");
      guard(g, rim, x0, r, "quadratic growth");
      const std::size_t size = ball(g, x0, r).size();
      const double ratio = double(size) / (double(r) * double(r));
      best = std::min(best, ratio);
      e.manifest.push_back({x0, r, size, ratio});
    }
  }
  e.constants["quadratic_growth"] = best;
  return e;
}

nlohmann::json to_json(const MetricEntry& e) {
  nlohmann::json constants = nlohmann::json::object();
  for (const auto& [k, v] : e.constants) constants[k] = v;
  nlohmann::json out{{"check", e.check},   {"parameters", e.parameters}, {"constants", constants},
                     {"pass", e.pass},     {"violations", e.violations}, {"manifest", e.manifest}};
  if (!e.note.empty()) out["note"] = e.note;
  return out;
}

nlohmann::json to_json(const MetricReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const MetricEntry& e : report.entries) entries.push_back(to_json(e));
  return {{"entries", entries}, {"poincare_pairs", "adjacent"}};
}

}  // namespace penny
