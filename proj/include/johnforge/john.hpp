#pragma once

#include <deque>
#include <optional>
#include <random>

#include "johnforge/geometry.hpp"

namespace johnforge {

struct JohnArcCertificate {
  Vec2 z1;                    // boundary endpoint
  std::vector<Vec2> arc;      // z1 followed by Whitney centres to the target
  double epsilon;             // min over arc vertices (past z1) of d(z)/|z - z1|

  // Recompute epsilon from the polyline against a distance field.
  double recompute(const DistanceField& df) const {
    double e = 1.0;
    int N = df.n();
    double h = df.pixel();
    Vec2 lo = df.box.lo();
    for (size_t k = 1; k < arc.size(); ++k) {
      Vec2 z = arc[k];
      double r = std::abs(z - z1);
      if (r == 0.0) continue;  // d/|z-z1| = +inf at z = z1 by convention
      int i = std::clamp(int((z.real() - lo.real()) / h), 0, N - 1);
      int j = std::clamp(int((z.imag() - lo.imag()) / h), 0, N - 1);
      e = std::min(e, df.at(i, j) / r);
    }
    return e;
  }
};

struct JohnEstimate {
  std::optional<Vec2> center;  // nullopt = infinity (far field)
  double epsilon_lower{0.0};
  std::vector<JohnArcCertificate> samples;
};

namespace detail {

// Connectivity probe: can any start vertex reach the target using only
// vertices whose value is >= threshold?  Returns the path if so.
inline std::optional<std::vector<int32_t>> threshold_path(
    const WhitneyDecomposition& w, const std::vector<double>& value,
    const std::vector<int32_t>& starts, int32_t target, double threshold,
    const std::vector<int8_t>* extra_links_to_target = nullptr) {
  size_t V = value.size();
  std::vector<int32_t> parent(V, -2);
  std::deque<int32_t> queue;
  for (int32_t s : starts) {
    if (value[s] >= threshold && parent[s] == -2) {
      parent[s] = -1;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    int32_t v = queue.front();
    queue.pop_front();
    if (v == target || (extra_links_to_target && (*extra_links_to_target)[v])) {
      std::vector<int32_t> path;
      int32_t u = v;
      while (u != -1) {
        path.push_back(u);
        u = parent[u];
      }
      std::reverse(path.begin(), path.end());
      if (v != target) path.push_back(target);
      return path;
    }
    for (auto& e : w.adjacency[v]) {
      if (parent[e.other] == -2 && value[e.other] >= threshold) {
        parent[e.other] = v;
        queue.push_back(e.other);
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Bottleneck-optimal John arcs over the Whitney-centre graph: per boundary
// sample, binary-search the largest epsilon for which the epsilon-filtered
// graph still connects the sample to the centre.
inline JohnEstimate estimate_john_constant(const WhitneyDecomposition& w,
                                           std::optional<Vec2> center,
                                           int n_samples, uint64_t seed) {
  if (w.squares.empty()) throw GeometryError("estimate_john_constant: empty decomposition");
  int N = w.n();
  double h = w.mask.pixel();
  size_t V = w.squares.size();

  // Target: either the square containing the centre point, or a virtual
  // far-field reached through squares touching the box boundary.
  int32_t target = -1;
  Vec2 target_pos{};
  std::vector<int8_t> touches_border(V, 0);
  bool to_infinity = !center.has_value();
  if (to_infinity) {
    for (size_t s = 0; s < V; ++s) {
      const auto& q = w.squares[s];
      int sp = q.side_px(w.mask.level);
      int i0 = q.i * sp, j0 = q.j * sp;
      if (i0 == 0 || j0 == 0 || i0 + sp == N || j0 + sp == N) touches_border[s] = 1;
    }
  } else {
    Vec2 lo = w.mask.box.lo();
    int ci = int((center->real() - lo.real()) / h);
    int cj = int((center->imag() - lo.imag()) / h);
    if (!w.mask.in_range(ci, cj) || w.mask.at(ci, cj))
      throw ParameterError("centre must lie in the complement of K inside the box");
    target = w.owner_at(ci, cj);
    if (target < 0) throw ParameterError("centre lies in the uncovered collar of K");
    target_pos = *center;
  }

  // Squares in the centre's complement component.  Boundary pixels whose
  // unoccupied neighbours all sit in other components are not boundary points
  // of the domain at all (e.g. the far side of a closed curve, or a cusp too
  // thin for the grid) and must not be sampled.
  std::vector<int8_t> reach(V, 0);
  {
    std::deque<int32_t> queue;
    for (size_t s = 0; s < V; ++s)
      if (to_infinity ? touches_border[s] != 0 : int32_t(s) == target) {
        reach[s] = 1;
        queue.push_back(int32_t(s));
      }
    while (!queue.empty()) {
      int32_t v = queue.front();
      queue.pop_front();
      for (auto& e : w.adjacency[v])
        if (!reach[e.other]) {
          reach[e.other] = 1;
          queue.push_back(e.other);
        }
    }
  }

  auto boundary = w.mask.boundary_pixels();
  if (boundary.empty()) throw GeometryError("mask has no boundary pixels");
  std::mt19937_64 rng(seed);
  std::vector<size_t> order(boundary.size());
  std::iota(order.begin(), order.end(), size_t(0));
  std::shuffle(order.begin(), order.end(), rng);
  size_t take = std::min(size_t(n_samples), boundary.size());

  JohnEstimate est;
  est.center = center;
  est.epsilon_lower = 1.0;

  std::vector<double> value(V + (to_infinity ? 1 : 0));
  for (size_t sidx = 0; sidx < order.size() && est.samples.size() < take; ++sidx) {
    auto [bi, bj] = boundary[order[sidx]];
    Vec2 z1 = w.mask.pixel_center(bi, bj);

    // start squares: owners of the unoccupied 8-neighbours of the sample
    // pixel, restricted to the centre's component
    std::vector<int32_t> starts;
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        if (!di && !dj) continue;
        int i = bi + di, j = bj + dj;
        if (!w.mask.in_range(i, j) || w.mask.at(i, j)) continue;
        int32_t o = w.owner_at(i, j);
        if (o >= 0 && reach[o] && std::find(starts.begin(), starts.end(), o) == starts.end())
          starts.push_back(o);
      }
    if (starts.empty()) continue;

    for (size_t s = 0; s < V; ++s) {
      double r = std::abs(w.squares[s].center(w.mask.box) - z1);
      value[s] = r == 0.0 ? 1.0 : std::min(1.0, w.center_dist[s] / r);
    }

    int32_t tgt = target;
    const std::vector<int8_t>* links = nullptr;
    if (to_infinity) {
      tgt = int32_t(V);  // virtual vertex; reached through border squares
      links = &touches_border;
    }
    if (size_t(tgt) >= value.size()) value.resize(tgt + 1);
    if (to_infinity) value[tgt] = 1.0;  // d there = box half-side, ratio capped at 1

    // feasibility at epsilon -> 0+
    auto base = detail::threshold_path(w, value, starts, tgt, 0.0, links);
    if (!base)
      throw ConnectivityError("centre disconnected from boundary sample in the Whitney graph");

    double eps_lo = 0.0, eps_hi = 1.0;
    std::vector<int32_t> best = *base;
    while (eps_hi - eps_lo > 1e-3 * std::max(eps_hi, 1e-12)) {
      double mid = 0.5 * (eps_lo + eps_hi);
      auto p = detail::threshold_path(w, value, starts, tgt, mid, links);
      if (p) {
        eps_lo = mid;
        best = *p;
      } else {
        eps_hi = mid;
      }
    }

    JohnArcCertificate cert;
    cert.z1 = z1;
    cert.arc.push_back(z1);
    double e = 1.0;
    for (int32_t v : best) {
      if (v == int32_t(V) && to_infinity) continue;  // drop the virtual vertex
      cert.arc.push_back(w.squares[v].center(w.mask.box));
      e = std::min(e, value[v]);
    }
    if (!to_infinity) cert.arc.push_back(target_pos);
    cert.epsilon = e;
    est.epsilon_lower = std::min(est.epsilon_lower, e);
    est.samples.push_back(std::move(cert));
  }
  if (est.samples.empty())
    throw ConnectivityError("centre disconnected from every boundary sample in the Whitney graph");
  return est;
}

}  // namespace johnforge
