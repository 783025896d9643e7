#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "johnforge/simplify.hpp"
#include "test_util.hpp"

using namespace johnforge;

namespace {

JohnGraph graph_for(const WhitneyDecomposition& w, double A = 8.0) {
  int n_max = 0;
  while (std::pow(A, -double(n_max)) > 4.0 * w.mask.pixel() && n_max < 64) ++n_max;
  return build_graph(w, A, n_max);
}

}  // namespace

TEST_CASE("graph is a spanning tree with decreasing rho") {
  auto m = rasterize("disk:0.5", 8);
  auto w = whitney(m, m.level);
  auto g = graph_for(w);

  size_t verts = 0, edges = 0;
  for (size_t v = 0; v < g.rho.size(); ++v) {
    if (g.rho[v] < 0) continue;
    ++verts;
    if (g.parent[v] >= 0) {
      ++edges;
      // (8.6)/(8.7): the unique outgoing edge drops rho by exactly 1
      REQUIRE(g.rho[v] == g.rho[g.parent[v]] + 1);
    } else {
      REQUIRE(int32_t(v) == g.root);
    }
  }
  CHECK(edges == verts - 1);
  CHECK(g.rho[g.root] == 0);
}

TEST_CASE("layer families live inside the graph and within distance C") {
  auto m = rasterize("disk:0.5", 8);
  auto w = whitney(m, m.level);
  auto g = graph_for(w);
  for (auto& f : g.layers) {
    double lo = std::pow(g.A, -double(f.n));
    for (int32_t v : f.members) {
      REQUIRE(g.rho[v] >= 0);
      REQUIRE(w.center_dist[v] >= lo);
      REQUIRE(w.center_dist[v] <= g.A);
    }
  }
  CHECK(g.measured_C <= int(16 * g.A));
}

TEST_CASE("root is the extreme hull vertex") {
  auto m = rasterize("disk:0.5", 8);
  auto w = whitney(m, m.level);
  auto g = graph_for(w);
  Vec2 r = w.squares[g.root].center(m.box);
  for (size_t v = 0; v < g.rho.size(); ++v) {
    if (g.rho[v] < 0 || g.closure[v]) continue;
    Vec2 z = w.squares[v].center(m.box);
    REQUIRE((z.real() < r.real() ||
             (z.real() == r.real() && z.imag() <= r.imag())));
  }
}

TEST_CASE("two disjoint disks are reached through the layers") {
  auto m = testutil::make_disks({{{-1.0, 0.0}, 0.4}, {{1.0, 0.0}, 0.4}}, 8);
  auto w = whitney(m, m.level);
  auto g = graph_for(w);
  // every interior collar square of both disks ends up in the graph
  // (border squares stand in for the far field and stay out)
  for (size_t v = 0; v < w.squares.size(); ++v) {
    const auto& q = w.squares[v];
    int sp = q.side_px(m.level);
    bool border = q.i * sp == 0 || q.j * sp == 0 || (q.i + 1) * sp == m.n() ||
                  (q.j + 1) * sp == m.n();
    if (!border && g.main_component[v] && w.center_dist[v] <= g.A) REQUIRE(g.rho[v] >= 0);
  }
}

TEST_CASE("delta outside the gate-disjointness bound is rejected by name") {
  auto m = rasterize("disk:0.5", 7);
  auto w = whitney(m, m.level);
  auto g = graph_for(w);
  try {
    cut_slits(w, g, 0.49);
    FAIL("expected ParameterError");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("bound") != std::string::npos);
    CHECK(std::string(e.what()).find("max incident edges") != std::string::npos);
  }
  CHECK_THROWS_AS(cut_slits(w, g, 0.0), ParameterError);
  CHECK_THROWS_AS(cut_slits(w, g, -0.1), ParameterError);
}

TEST_CASE("surgery on one disk yields a verified simply connected domain") {
  auto m = rasterize("disk:0.5", 8);
  auto w = whitney(m, m.level);
  auto g = graph_for(w);
  auto s = cut_slits(w, g, 0.1);
  auto rep = verify_simplified(s, 4, 9);
  CHECK(rep.connected);
  CHECK(rep.simply_connected);
  CHECK(rep.boundary_contained);
  CHECK(rep.epsilon_omega_hat > 0.0);
  CHECK(rep.epsilon_omega_hat <= rep.epsilon_omega + 1e-9);

  // special square: adjacent to the root, outside the graph
  REQUIRE(s.slits.special >= 0);
  CHECK_FALSE(g.in_graph(s.slits.special));
  bool adjacent = false;
  for (auto& e : w.adjacency[g.root])
    if (e.other == s.slits.special) adjacent = true;
  CHECK(adjacent);
}

TEST_CASE("gates on each square boundary are pairwise disjoint") {
  auto m = rasterize("disk:0.5", 8);
  auto w = whitney(m, m.level);
  auto g = graph_for(w);
  auto s = cut_slits(w, g, 0.1);
  std::map<std::pair<int32_t, int>, std::vector<std::pair<int, int>>> per_face;
  for (auto& gate : s.slits.gates)
    per_face[{gate.square, gate.face}].push_back({gate.a, gate.b});
  for (auto& [key, ranges] : per_face)
    for (size_t x = 0; x < ranges.size(); ++x)
      for (size_t y = x + 1; y < ranges.size(); ++y)
        REQUIRE(std::max(ranges[x].first, ranges[y].first) >=
                std::min(ranges[x].second, ranges[y].second));
}

TEST_CASE("surgery leaves the original set and domain pixels intact") {
  auto m = rasterize("disk:0.5", 7);
  auto w = whitney(m, m.level);
  auto g = graph_for(w);
  auto s = cut_slits(w, g, 0.1);
  int Nf = s.nf();
  for (int j = 0; j < Nf; ++j)
    for (int i = 0; i < Nf; ++i) {
      bool k_here = m.at(i / s.refine, j / s.refine);
      REQUIRE((s.cell(i, j) == CellState::K) == k_here);
    }
}

TEST_CASE("slit pixels keep their distance from K") {
  auto m = rasterize("disk:0.5", 7);
  auto w = whitney(m, m.level);
  auto g = graph_for(w);
  auto s = cut_slits(w, g, 0.1);
  CompactSetMask fine_k;
  fine_k.box = m.box;
  fine_k.level = s.fine_level;
  fine_k.shape_spec = "fine";
  int Nf = s.nf();
  fine_k.bits.assign(size_t(Nf) * Nf, 0);
  for (int j = 0; j < Nf; ++j)
    for (int i = 0; i < Nf; ++i)
      if (s.cell(i, j) == CellState::K) fine_k.set(i, j);
  auto dfk = distance_transform(fine_k);
  for (int j = 0; j < Nf; ++j)
    for (int i = 0; i < Nf; ++i) {
      if (s.cell(i, j) != CellState::Wall) continue;
      int32_t owner = w.owner_at(i / s.refine, j / s.refine);
      REQUIRE(owner >= 0);
      REQUIRE(dfk.at(i, j) >= w.center_dist[owner] / 4.0 - 1e-12);
    }
}

TEST_CASE("complement of two disks: bounded boundary reached, holes detected") {
  auto m = testutil::make_disks({{{-1.0, 0.0}, 0.4}, {{1.0, 0.0}, 0.4}}, 8);
  auto w = whitney(m, m.level);
  auto g = graph_for(w);
  auto s = cut_slits(w, g, 0.1);
  auto rep = verify_simplified(s, 4, 13);
  CHECK(rep.connected);
  CHECK(rep.simply_connected);
  CHECK(rep.boundary_contained);

  // tampering 1: erase every wall; the two disks become separated
  // complement components, so simple connectivity must fail
  SimplifiedDomain bare = s;
  for (auto& c : bare.state)
    if (c == uint8_t(CellState::Wall)) c = uint8_t(CellState::Open);
  auto rep_bare = verify_simplified(bare, 2, 13);
  CHECK_FALSE(rep_bare.simply_connected);
  CHECK(rep_bare.witness.has_value());

  // tampering 2: seal every gate of one square; its interior becomes a
  // separate open room, so connectivity must fail
  SimplifiedDomain sealed = s;
  int32_t victim = -1;
  for (auto& gate : s.slits.gates)
    if (gate.square != g.root) {
      victim = gate.square;
      break;
    }
  REQUIRE(victim >= 0);
  int Nf = sealed.nf();
  for (auto& gate : s.slits.gates) {
    if (gate.square != victim && gate.other != victim) continue;
    const auto& q = w.squares[gate.square];
    int sp = q.side_px(m.level) * s.refine;
    int ring;
    switch (gate.face) {
      case 0: ring = q.i * sp + sp - 1; break;
      case 1: ring = q.i * sp; break;
      case 2: ring = q.j * sp + sp - 1; break;
      default: ring = q.j * sp; break;
    }
    for (int t = gate.a; t < gate.b; ++t) {
      if (gate.face <= 1) sealed.state[size_t(t) * Nf + ring] = uint8_t(CellState::Wall);
      else sealed.state[size_t(ring) * Nf + t] = uint8_t(CellState::Wall);
    }
  }
  auto rep_sealed = verify_simplified(sealed, 2, 13);
  CHECK_FALSE(rep_sealed.connected);
}

TEST_CASE("cut_slits requires full-depth decompositions") {
  auto m = rasterize("disk:0.5", 7);
  auto w = whitney(m, m.level - 1);
  auto g = graph_for(w);
  CHECK_THROWS_AS(cut_slits(w, g, 0.1), ParameterError);
}
