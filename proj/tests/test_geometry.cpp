#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "johnforge/geometry.hpp"
#include "test_util.hpp"

using namespace johnforge;

TEST_CASE("rasterize disk area matches the closed form") {
  auto m = rasterize("disk:0.5", 9);
  double area = m.area();
  CHECK(area == Catch::Approx(M_PI * 0.25).epsilon(0.02));
}

TEST_CASE("rasterize segment stays one-dimensional") {
  auto m = rasterize("segment:1", 9);
  CHECK(m.count() <= size_t(3 * 512));
  CHECK(m.count() > 0);
}

TEST_CASE("rasterize julia(i) is nonempty and inside radius 2") {
  auto m = rasterize("julia:0,1,200,2", 9);
  CHECK(m.count() > 0);
  int N = m.n();
  double slack = m.pixel() * std::sqrt(2.0);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i)
      if (m.at(i, j)) REQUIRE(std::abs(m.pixel_center(i, j)) <= 2.0 + slack);
}

TEST_CASE("rasterize rejects bad parameters") {
  CHECK_THROWS_AS(rasterize("cantor:0.6,4", 9), ParameterError);
  CHECK_THROWS_AS(rasterize("disk:0.5", 2), ParameterError);
  CHECK_THROWS_AS(rasterize("disk:-1", 9), ParameterError);
  CHECK_THROWS_AS(rasterize("blob:1", 9), ParameterError);
  // an orbit from anywhere escapes: empty set
  CHECK_THROWS_AS(rasterize("julia:10,0,50,2", 9), GeometryError);
  // a disk of radius 3 cannot sit strictly inside the default box
  CHECK_THROWS_AS(rasterize("disk:3", 6), GeometryError);
}

TEST_CASE("distance transform to a single pixel") {
  auto m = rasterize("point", 7);
  auto df = distance_transform(m);
  Vec2 c = m.pixel_center(m.n() / 2, m.n() / 2);
  double diag = m.pixel() * std::sqrt(2.0);
  for (int j = 0; j < m.n(); j += 13)
    for (int i = 0; i < m.n(); i += 13) {
      double want = std::abs(m.pixel_center(i, j) - c);
      REQUIRE(std::abs(df.at(i, j) - want) <= diag);
    }
}

TEST_CASE("distance transform of a disk at the box corner") {
  auto m = rasterize("disk:0.5", 8);
  auto df = distance_transform(m);
  double want = std::abs(m.pixel_center(0, 0) - m.box.center) - 0.5;
  CHECK(std::abs(df.at(0, 0) - want) <= m.pixel() * std::sqrt(2.0));
}

TEST_CASE("distance transform agrees exactly with brute force") {
  CompactSetMask m;
  m.level = 6;
  m.shape_spec = "random";
  int N = m.n();
  m.bits.assign(size_t(N) * N, 0);
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> pick(1, N - 2);
  for (int k = 0; k < 50; ++k) m.set(pick(rng), pick(rng));

  auto df = distance_transform(m);
  std::vector<Vec2> occ;
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i)
      if (m.at(i, j)) occ.push_back(m.pixel_center(i, j));
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      double best = 1e300;
      for (auto& z : occ) best = std::min(best, std::abs(m.pixel_center(i, j) - z));
      REQUIRE(df.at(i, j) == Catch::Approx(best).margin(1e-10));
    }
}

TEST_CASE("whitney sandwich and coverage") {
  for (const char* spec : {"disk:0.5", "segment:4"}) {
    auto m = rasterize(spec, 8);
    auto w = whitney(m, m.level);
    for (auto& q : w.squares) {
      if (q.residual) continue;
      double diam = q.diam(m.box);
      double dist = w.boundary_dist(q);
      REQUIRE(diam <= dist + 1e-12);
      REQUIRE(dist <= 4.0 * diam + 1e-12);
    }
    // coverage: every unoccupied pixel belongs to exactly one square
    for (int j = 0; j < m.n(); ++j)
      for (int i = 0; i < m.n(); ++i)
        REQUIRE((m.at(i, j) ? w.owner_at(i, j) < 0 : w.owner_at(i, j) >= 0));
  }
}

TEST_CASE("whitney adjacency is symmetric with side ratio at most 4") {
  auto m = rasterize("disk:0.5", 8);
  auto w = whitney(m, m.level);
  for (size_t a = 0; a < w.adjacency.size(); ++a)
    for (auto& e : w.adjacency[a]) {
      bool back = false;
      for (auto& f : w.adjacency[e.other])
        if (f.other == int32_t(a)) {
          back = true;
          CHECK(f.face == e.face);
        }
      REQUIRE(back);
      double ra = w.squares[a].side(m.box) / w.squares[e.other].side(m.box);
      REQUIRE(std::max(ra, 1.0 / ra) <= 4.0 + 1e-12);
    }
}

TEST_CASE("whitney squares on a point mask form doubling rings") {
  auto m = rasterize("point", 7);
  auto w = whitney(m, m.level);
  // side doubles with distance: side/dist stays within the Whitney sandwich
  for (auto& q : w.squares) {
    if (q.residual) continue;
    double ratio = w.boundary_dist(q) / q.diam(m.box);
    REQUIRE(ratio >= 1.0 - 1e-12);
    REQUIRE(ratio <= 4.0 + 1e-12);
  }
}

TEST_CASE("whitney matches the brute-force maximal-square oracle") {
  auto m = rasterize("segment:4", 8);
  auto w = whitney(m, m.level);
  auto df = distance_transform(m);

  int N = m.n();
  auto has_k = [&](int lev, int i, int j) {
    int sp = 1 << (m.level - lev);
    for (int y = j * sp; y < (j + 1) * sp; ++y)
      for (int x = i * sp; x < (i + 1) * sp; ++x)
        if (m.at(x, y)) return true;
    return false;
  };
  auto ring_dist = [&](int lev, int i, int j) {
    int sp = 1 << (m.level - lev);
    int i0 = i * sp, j0 = j * sp;
    double d = 1e300;
    for (int x = i0; x < i0 + sp; ++x)
      d = std::min({d, df.at(x, j0), df.at(x, j0 + sp - 1)});
    for (int y = j0; y < j0 + sp; ++y)
      d = std::min({d, df.at(i0, y), df.at(i0 + sp - 1, y)});
    return d;
  };
  auto fits = [&](int lev, int i, int j) {
    double diam = m.box.side() / (1 << lev) * std::sqrt(2.0);
    return !has_k(lev, i, j) && diam <= ring_dist(lev, i, j);
  };

  size_t expected = 0;
  for (int lev = 0; lev <= m.level; ++lev)
    for (int j = 0; j < (1 << lev); ++j)
      for (int i = 0; i < (1 << lev); ++i) {
        bool ancestors_fail = true;
        for (int al = 0; al < lev && ancestors_fail; ++al)
          if (fits(al, i >> (lev - al), j >> (lev - al))) ancestors_fail = false;
        if (!ancestors_fail) continue;
        if (fits(lev, i, j)) ++expected;
        else if (lev == m.level && !has_k(lev, i, j)) ++expected;  // residual
      }
  CHECK(w.squares.size() == expected);
}

TEST_CASE("residual squares are flagged and hug the mask") {
  auto m = rasterize("disk:0.5", 7);
  auto w = whitney(m, m.level);
  size_t residual = 0;
  for (auto& q : w.squares)
    if (q.residual) {
      ++residual;
      REQUIRE(q.level == m.level);
      REQUIRE(w.boundary_dist(q) < q.diam(m.box));
    }
  CHECK(residual > 0);
}
