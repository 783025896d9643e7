#include <catch2/catch_amalgamated.hpp>

#include <functional>

#include "johnforge/john.hpp"
#include "test_util.hpp"

using namespace johnforge;

TEST_CASE("disk interior certifies a healthy John constant") {
  auto m = rasterize("circle:1", 9, Box{{0, 0}, 2.5});
  auto w = whitney(m, m.level);
  auto est = estimate_john_constant(w, Vec2{0, 0}, 8, 7);
  CHECK(est.epsilon_lower >= 0.4);
  CHECK(est.epsilon_lower <= 1.0);
  CHECK(est.samples.size() == 8);
}

TEST_CASE("complement of a point is John with constant near 1") {
  auto m = rasterize("point", 8);
  auto w = whitney(m, m.level);
  auto est = estimate_john_constant(w, std::nullopt, 4, 3);
  for (auto& s : est.samples) CHECK(s.epsilon >= 0.5);
}

TEST_CASE("certificates recompute against the distance field") {
  auto m = rasterize("disk:0.5", 8);
  auto w = whitney(m, m.level);
  auto est = estimate_john_constant(w, std::nullopt, 6, 11);
  double diag = m.pixel() * std::sqrt(2.0);
  for (auto& s : est.samples) {
    double re = s.recompute(w.distance_field);
    // the distance field is sampled at pixel centres, so allow one
    // pixel-diagonal of slack relative to the closest arc vertex
    double r_min = 1e300;
    for (size_t k = 1; k < s.arc.size(); ++k)
      r_min = std::min(r_min, std::abs(s.arc[k] - s.z1));
    CHECK(re == Catch::Approx(s.epsilon).margin(diag / r_min + 1e-9));
  }
}

TEST_CASE("epsilon is exactly dilation invariant") {
  auto m1 = rasterize("disk:0.5", 8, Box{{0, 0}, 2.5});
  auto m2 = rasterize("disk:1", 8, Box{{0, 0}, 5.0});
  REQUIRE(m1.bits == m2.bits);
  auto e1 = estimate_john_constant(whitney(m1, 8), std::nullopt, 6, 5);
  auto e2 = estimate_john_constant(whitney(m2, 8), std::nullopt, 6, 5);
  REQUIRE(e1.samples.size() == e2.samples.size());
  for (size_t k = 0; k < e1.samples.size(); ++k)
    CHECK(e1.samples[k].epsilon == e2.samples[k].epsilon);
}

TEST_CASE("per-sample epsilon matches the exact bottleneck oracle") {
  auto m = rasterize("circle:1", 5, Box{{0, 0}, 1.25});
  auto w = whitney(m, m.level);
  REQUIRE(w.squares.size() <= 600);
  auto est = estimate_john_constant(w, std::nullopt, 5, 2);

  size_t V = w.squares.size();
  std::vector<int8_t> border(V, 0);
  for (size_t s = 0; s < V; ++s) {
    const auto& q = w.squares[s];
    int sp = q.side_px(m.level);
    if (q.i * sp == 0 || q.j * sp == 0 || (q.i + 1) * sp == m.n() || (q.j + 1) * sp == m.n())
      border[s] = 1;
  }

  for (auto& s : est.samples) {
    std::vector<double> value(V);
    for (size_t v = 0; v < V; ++v) {
      double r = std::abs(w.squares[v].center(m.box) - s.z1);
      value[v] = r == 0.0 ? 1.0 : std::min(1.0, w.center_dist[v] / r);
    }
    // starts: owners of unoccupied 8-neighbours of the sample pixel
    double h = m.pixel();
    int bi = int((s.z1.real() - m.box.lo().real()) / h);
    int bj = int((s.z1.imag() - m.box.lo().imag()) / h);
    std::vector<int32_t> starts;
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        int i = bi + di, j = bj + dj;
        if ((di || dj) && m.in_range(i, j) && !m.at(i, j) && w.owner_at(i, j) >= 0)
          starts.push_back(w.owner_at(i, j));
      }
    // exact maximin via decreasing-threshold union-find sweep
    std::vector<size_t> order(V);
    std::iota(order.begin(), order.end(), size_t(0));
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return value[a] > value[b]; });
    std::vector<int32_t> parent(V);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int32_t(int32_t)> find = [&](int32_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    std::vector<int8_t> active(V, 0);
    double oracle = 0.0;
    for (size_t v : order) {
      active[v] = 1;
      for (auto& e : w.adjacency[v])
        if (active[e.other]) parent[find(int32_t(v))] = find(e.other);
      bool connected = false;
      for (int32_t st : starts) {
        if (!active[st]) continue;
        for (size_t t = 0; t < V && !connected; ++t)
          if (border[t] && active[t] && find(int32_t(st)) == find(int32_t(t)))
            connected = true;
      }
      if (connected) {
        oracle = value[v];
        break;
      }
    }
    CHECK(s.epsilon == Catch::Approx(oracle).margin(2e-3));
  }
}

TEST_CASE("parameter and connectivity failure modes") {
  auto m = rasterize("disk:0.5", 7);
  auto w = whitney(m, m.level);
  // centre occupied by K
  CHECK_THROWS_AS(estimate_john_constant(w, Vec2{0, 0}, 2, 1), ParameterError);
  // centre outside the box
  CHECK_THROWS_AS(estimate_john_constant(w, Vec2{9, 9}, 2, 1), ParameterError);

  // two separate rings: a centre inside one ring only ever samples boundary
  // points of its own component, never the other ring
  auto rings = testutil::make_rings({{{-1.2, 0.0}, 0.6}, {{1.2, 0.0}, 0.6}}, 7);
  auto wr = whitney(rings, rings.level);
  auto est = estimate_john_constant(wr, Vec2{1.2, 0.0}, 32, 1);
  REQUIRE(!est.samples.empty());
  double slack = 4.0 * rings.pixel();
  for (auto& s : est.samples) {
    Vec2 d = s.z1 - Vec2{1.2, 0.0};
    CHECK(std::max(std::abs(d.real()), std::abs(d.imag())) <= 0.6 + slack);
  }
}
