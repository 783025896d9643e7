#pragma once

#include <deque>
#include <queue>
#include <sstream>
#include <tuple>

#include "johnforge/john.hpp"

namespace johnforge {

struct LayerFamily {
  double A;
  int n;
  std::vector<int32_t> members;
};

// Directed spanning structure on Whitney centres.  Every non-root vertex has
// exactly one outgoing edge (to its parent) and rho decreases by 1 along it,
// so the structure is acyclic by construction.
struct JohnGraph {
  double A{8.0};
  int n_max{0};
  int32_t root{-1};
  std::vector<int32_t> parent;   // -1 root, -2 not in graph
  std::vector<int32_t> rho;      // tree depth, -1 if not in graph
  std::vector<int8_t> closure;   // absorbed below the A^{-n_max} scale
  std::vector<int8_t> main_component;  // square belongs to the domain component
  std::vector<LayerFamily> layers;
  int measured_C{0};
  int max_degree{0};

  bool in_graph(int32_t v) const { return rho[v] >= 0; }
  std::vector<int32_t> vertices() const {
    std::vector<int32_t> out;
    for (size_t v = 0; v < rho.size(); ++v)
      if (rho[v] >= 0) out.push_back(int32_t(v));
    return out;
  }
};

namespace detail {

// Grow a spanning tree over `eligible` squares from already-assigned seeds.
// Tree degree is capped at 3 so the gate-disjointness bound 1/(2(1+deg))
// stays at 0.125; a saturated parent adopts anyway only if a child has no
// other way into the tree.
constexpr int kTreeDegreeCap = 3;

inline void grow_tree(const WhitneyDecomposition& w, std::vector<int32_t>& parent,
                      std::vector<int32_t>& rho, std::vector<int>& degree,
                      const std::vector<int8_t>& eligible) {
  struct Cand {
    int deg, rho;
    int32_t par, child;
    bool operator>(const Cand& o) const {
      return std::tie(deg, rho, par, child) > std::tie(o.deg, o.rho, o.par, o.child);
    }
  };
  std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> heap;
  auto push_edges = [&](int32_t v) {
    for (auto& e : w.adjacency[v]) {
      if (!e.face) continue;  // gates need a positive-width shared interval
      if (eligible[e.other] && rho[e.other] < 0)
        heap.push({degree[v], rho[v], v, e.other});
    }
  };
  auto adopt = [&](int32_t par, int32_t child) {
    parent[child] = par;
    rho[child] = rho[par] + 1;
    ++degree[par];
    ++degree[child];
    push_edges(child);
  };
  for (size_t v = 0; v < rho.size(); ++v)
    if (rho[v] >= 0 && eligible[v]) push_edges(int32_t(v));
  while (!heap.empty()) {
    Cand c = heap.top();
    heap.pop();
    if (rho[c.child] >= 0) continue;
    if (degree[c.par] != c.deg) {  // stale priority; requeue with current degree
      heap.push({degree[c.par], c.rho, c.par, c.child});
      continue;
    }
    if (c.deg >= kTreeDegreeCap) continue;
    adopt(c.par, c.child);
  }
  // children stranded by the cap: adopt from the lowest-degree assigned
  // neighbour, exceeding the cap rather than leaving the tree short
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t v = 0; v < rho.size(); ++v) {
      if (!eligible[v] || rho[v] >= 0) continue;
      int32_t best = -1;
      for (auto& e : w.adjacency[v])
        if (e.face && rho[e.other] >= 0 &&
            (best < 0 || degree[e.other] < degree[best]))
          best = e.other;
      if (best >= 0) {
        adopt(best, int32_t(v));
        changed = true;
      }
    }
  }
}

// Squares face-reachable from the box border: the pixel component of the
// John domain proper.  Sub-resolution pockets enclosed by K stay out.
inline std::vector<int8_t> main_component(const WhitneyDecomposition& w) {
  std::vector<int8_t> in(w.squares.size(), 0);
  std::deque<int32_t> queue;
  int N = w.n();
  for (size_t v = 0; v < w.squares.size(); ++v) {
    const auto& q = w.squares[v];
    int sp = q.side_px(w.mask.level);
    int i0 = q.i * sp, j0 = q.j * sp;
    if (i0 == 0 || j0 == 0 || i0 + sp == N || j0 + sp == N) {
      in[v] = 1;
      queue.push_back(int32_t(v));
    }
  }
  while (!queue.empty()) {
    int32_t v = queue.front();
    queue.pop_front();
    for (auto& e : w.adjacency[v])
      if (e.face && !in[e.other]) {
        in[e.other] = 1;
        queue.push_back(e.other);
      }
  }
  return in;
}

}  // namespace detail

inline JohnGraph build_graph(const WhitneyDecomposition& w, double A, int n_max) {
  if (!(A >= 2.0)) throw ParameterError("build_graph: A must be >= 2");
  if (n_max < 0) throw ParameterError("build_graph: n_max must be >= 0");
  size_t V = w.squares.size();
  if (V == 0) throw GeometryError("build_graph: empty decomposition");

  JohnGraph g;
  g.A = A;
  g.n_max = n_max;
  g.parent.assign(V, -2);
  g.rho.assign(V, -1);
  g.closure.assign(V, 0);
  g.main_component = detail::main_component(w);
  const auto& d = w.center_dist;

  // Squares on the box border stand in for the far field (the decomposition
  // truncates an unbounded complement) and stay out of the graph, which also
  // guarantees a special square next to the root.
  std::vector<int8_t> border(V, 0);
  {
    int Nb = w.n();
    for (size_t v = 0; v < V; ++v) {
      const auto& q = w.squares[v];
      int sp = q.side_px(w.mask.level);
      int i0 = q.i * sp, j0 = q.j * sp;
      if (i0 == 0 || j0 == 0 || i0 + sp == Nb || j0 + sp == Nb) border[v] = 1;
    }
  }

  // F_n = {z_j : A^{-n} <= d(z_j) <= A}, restricted to the domain component
  auto family = [&](int n) {
    LayerFamily f{A, n, {}};
    double lo = std::pow(A, -double(n));
    for (size_t v = 0; v < V; ++v)
      if (g.main_component[v] && !border[v] && d[v] >= lo && d[v] <= A)
        f.members.push_back(int32_t(v));
    return f;
  };

  // V0: F_0 plus the d >= 1 squares trapped by the F_0 shell (8.1)
  LayerFamily f0 = family(0);
  int N = w.n();
  std::vector<int8_t> blocked(size_t(N) * N, 0);
  for (int32_t v : f0.members) {
    const auto& q = w.squares[v];
    int sp = q.side_px(w.mask.level);
    for (int j = q.j * sp; j < (q.j + 1) * sp; ++j)
      std::fill(&blocked[size_t(j) * N + q.i * sp], &blocked[size_t(j) * N + (q.i + 1) * sp], 1);
  }
  std::vector<int8_t> unbounded(size_t(N) * N, 0);
  {
    std::deque<std::pair<int, int>> queue;
    auto seed = [&](int i, int j) {
      size_t k = size_t(j) * N + i;
      if (!blocked[k] && !unbounded[k]) {
        unbounded[k] = 1;
        queue.emplace_back(i, j);
      }
    };
    for (int k = 0; k < N; ++k) {
      seed(k, 0);
      seed(k, N - 1);
      seed(0, k);
      seed(N - 1, k);
    }
    while (!queue.empty()) {
      auto [i, j] = queue.front();
      queue.pop_front();
      if (i > 0) seed(i - 1, j);
      if (i + 1 < N) seed(i + 1, j);
      if (j > 0) seed(i, j - 1);
      if (j + 1 < N) seed(i, j + 1);
    }
  }
  std::vector<int8_t> eligible(V, 0);
  for (int32_t v : f0.members) eligible[v] = 1;
  for (size_t v = 0; v < V; ++v) {
    if (eligible[v] || !g.main_component[v] || border[v] || d[v] < 1.0) continue;
    const auto& q = w.squares[v];
    int sp = q.side_px(w.mask.level);
    if (!unbounded[size_t(q.j * sp) * N + q.i * sp]) {
      if (d[v] > A * A)
        throw ConstructionError("trapped square violates V0 upper bound d <= A^2");
      eligible[v] = 1;
    }
  }

  // root: extreme point of the convex hull of V0 centres (lexicographic max),
  // preferring squares that face the far-field border ring
  int32_t root = -1;
  for (int pass = 0; pass < 2 && root < 0; ++pass) {
    for (size_t v = 0; v < V; ++v) {
      if (!eligible[v]) continue;
      if (pass == 0) {
        bool faces_border = false;
        for (auto& e : w.adjacency[v])
          if (e.face && border[e.other]) faces_border = true;
        if (!faces_border) continue;
      }
      if (root < 0) {
        root = int32_t(v);
        continue;
      }
      Vec2 a = w.squares[v].center(w.mask.box), b = w.squares[root].center(w.mask.box);
      if (a.real() > b.real() || (a.real() == b.real() && a.imag() > b.imag()))
        root = int32_t(v);
    }
  }
  if (root < 0) throw ConstructionError("layer 0 is empty: no square with 1 <= d <= A");
  g.root = root;
  g.parent[root] = -1;
  g.rho[root] = 0;

  std::vector<int> degree(V, 0);
  detail::grow_tree(w, g.parent, g.rho, degree, eligible);
  g.layers.push_back(std::move(f0));

  for (int n = 1; n <= n_max; ++n) {
    LayerFamily fn = family(n);
    std::vector<int8_t> elig(V, 0);
    for (size_t v = 0; v < V; ++v)
      if (g.rho[v] >= 0) elig[v] = 1;
    for (int32_t v : fn.members) elig[v] = 1;
    detail::grow_tree(w, g.parent, g.rho, degree, elig);
    g.layers.push_back(std::move(fn));
  }

  // A layer member pinched off by the box truncation may only become
  // reachable once finer layers are in; validate coverage after all of them.
  for (auto& fam : g.layers)
    for (int32_t v : fam.members)
      if (g.rho[v] < 0)
        throw ConstructionError("adjacency graph disconnected at layer " +
                                std::to_string(fam.n));

  // closure: absorb the sub-resolution collar (d < A^{-n_max}) so that the
  // slit walls seal down to grid scale, mirroring the limit graph
  {
    double lo = std::pow(A, -double(n_max));
    std::vector<int8_t> elig(V, 0);
    std::vector<int8_t> is_new(V, 0);
    for (size_t v = 0; v < V; ++v) {
      if (g.rho[v] >= 0) elig[v] = 1;
      else if (g.main_component[v] && !border[v] && d[v] < lo) elig[v] = is_new[v] = 1;
    }
    detail::grow_tree(w, g.parent, g.rho, degree, elig);
    for (size_t v = 0; v < V; ++v) {
      if (is_new[v] && g.rho[v] < 0)
        throw ConstructionError("collar square unreachable in closure layer");
      if (is_new[v]) g.closure[v] = 1;
    }
  }

  // stranded adoptions can push a vertex past the degree cap; move one of
  // its children to an under-cap face neighbour and re-level that subtree
  {
    std::vector<std::vector<int32_t>> kids(V);
    for (size_t v = 0; v < V; ++v)
      if (g.rho[v] > 0) kids[g.parent[v]].push_back(int32_t(v));
    auto in_subtree = [&](int32_t u, int32_t c) {
      for (int32_t x = u; x >= 0; x = g.parent[x])
        if (x == c) return true;
      return false;
    };
    for (bool changed = true; changed;) {
      changed = false;
      for (size_t v = 0; v < V; ++v) {
        if (g.rho[v] < 0 || degree[v] <= detail::kTreeDegreeCap) continue;
        for (size_t ci = 0; ci < kids[v].size() && degree[v] > detail::kTreeDegreeCap; ++ci) {
          int32_t c = kids[v][ci];
          for (auto& e : w.adjacency[c]) {
            if (!e.face || e.other == int32_t(v) || g.rho[e.other] < 0) continue;
            if (degree[e.other] >= detail::kTreeDegreeCap) continue;
            if (in_subtree(e.other, c)) continue;
            g.parent[c] = e.other;
            --degree[v];
            ++degree[e.other];
            kids[v].erase(kids[v].begin() + ci--);
            kids[e.other].push_back(c);
            std::deque<int32_t> q{c};
            g.rho[c] = g.rho[e.other] + 1;
            while (!q.empty()) {
              int32_t x = q.front();
              q.pop_front();
              for (int32_t k : kids[x]) {
                g.rho[k] = g.rho[x] + 1;
                q.push_back(k);
              }
            }
            changed = true;
            break;
          }
        }
      }
    }
  }

  g.max_degree = *std::max_element(degree.begin(), degree.end());

  // measured C of (8.4): max tree distance from a graph vertex to the
  // deepest layer family
  {
    std::vector<int> distF(V, -1);
    std::deque<int32_t> queue;
    for (int32_t v : g.layers.back().members) {
      distF[v] = 0;
      queue.push_back(v);
    }
    // undirected tree adjacency
    std::vector<std::vector<int32_t>> kids(V);
    for (size_t v = 0; v < V; ++v)
      if (g.rho[v] > 0) kids[g.parent[v]].push_back(int32_t(v));
    while (!queue.empty()) {
      int32_t v = queue.front();
      queue.pop_front();
      auto relax = [&](int32_t u) {
        if (u >= 0 && g.rho[u] >= 0 && distF[u] < 0) {
          distF[u] = distF[v] + 1;
          queue.push_back(u);
        }
      };
      if (g.parent[v] >= 0) relax(g.parent[v]);
      for (int32_t u : kids[v]) relax(u);
    }
    for (size_t v = 0; v < V; ++v)
      if (g.rho[v] >= 0) g.measured_C = std::max(g.measured_C, distF[v]);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Slit surgery on a refined grid
// ---------------------------------------------------------------------------

enum class CellState : uint8_t { Open = 0, K = 1, Wall = 2, Excluded = 3 };

struct SlitGate {
  int32_t square, other;  // other = -2 marks the extra root gate
  int face;               // 0 east, 1 west, 2 north, 3 south
  int a, b;               // half-open fine-pixel range along the face
};

struct SlitArc {
  int32_t square;
  int face;
  int a, b;
};

struct SlitSet {
  double delta{0.1};
  int32_t special{-1};  // Q_l, adjacent to Q_0 with z_l not in G
  std::vector<SlitGate> gates;
  std::vector<SlitArc> arcs;
};

struct SimplifiedDomain {
  WhitneyDecomposition base;
  JohnGraph graph;
  SlitSet slits;
  int refine{4};
  int fine_level{0};
  std::vector<uint8_t> state;  // CellState per fine pixel

  int nf() const { return 1 << fine_level; }
  CellState cell(int i, int j) const { return CellState(state[size_t(j) * nf() + i]); }

  // K-hat: the complement of Omega-hat inside the box, as a fine-level mask
  CompactSetMask complement_mask() const {
    CompactSetMask m;
    m.box = base.mask.box;
    m.level = fine_level;
    m.shape_spec = "simplified(" + base.mask.shape_spec + ")";
    m.bits.assign(state.size(), 0);
    for (size_t k = 0; k < state.size(); ++k)
      m.bits[k] = state[k] != uint8_t(CellState::Open) ? 1 : 0;
    return m;
  }
};

namespace detail {

struct FaceGeom {
  int face;      // face of square a shared with b
  int coord;     // fine grid line coordinate
  int lo, hi;    // shared interval, half-open fine range
};

inline std::optional<FaceGeom> shared_face(const WhitneyDecomposition& w, int refine,
                                           int32_t a, int32_t b) {
  const auto& qa = w.squares[a];
  const auto& qb = w.squares[b];
  int spa = qa.side_px(w.mask.level) * refine, spb = qb.side_px(w.mask.level) * refine;
  int ax0 = qa.i * spa, ax1 = ax0 + spa, ay0 = qa.j * spa, ay1 = ay0 + spa;
  int bx0 = qb.i * spb, bx1 = bx0 + spb, by0 = qb.j * spb, by1 = by0 + spb;
  int ylo = std::max(ay0, by0), yhi = std::min(ay1, by1);
  int xlo = std::max(ax0, bx0), xhi = std::min(ax1, bx1);
  if (ax1 == bx0 && yhi > ylo) return FaceGeom{0, ax1, ylo, yhi};
  if (bx1 == ax0 && yhi > ylo) return FaceGeom{1, ax0, ylo, yhi};
  if (ay1 == by0 && xhi > xlo) return FaceGeom{2, ay1, xlo, xhi};
  if (by1 == ay0 && xhi > xlo) return FaceGeom{3, ay0, xlo, xhi};
  return std::nullopt;
}

}  // namespace detail

inline SimplifiedDomain cut_slits(const WhitneyDecomposition& w, const JohnGraph& g,
                                  double delta, int refine = 4) {
  double bound = 1.0 / (2.0 * (1.0 + g.max_degree));
  if (!(delta > 0.0) || delta >= bound) {
    std::ostringstream os;
    os << "delta = " << delta << " violates the gate-disjointness bound delta < "
       << bound << " = 1/(2*(1 + max incident edges))";
    throw ParameterError(os.str());
  }
  if (w.deepest_level != w.mask.level)
    throw ParameterError("cut_slits requires a decomposition covering the full complement "
                         "(deepest_level == mask level)");

  SimplifiedDomain s;
  s.base = w;
  s.graph = g;
  s.refine = refine;
  s.fine_level = w.mask.level + int(std::round(std::log2(double(refine))));
  int N = w.n(), Nf = s.nf();
  double hf = w.mask.box.side() / Nf;
  s.state.assign(size_t(Nf) * Nf, uint8_t(CellState::Open));

  // K blocks and excluded pockets
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      CellState cs;
      if (w.mask.at(i, j)) cs = CellState::K;
      else {
        int32_t o = w.owner_at(i, j);
        if (o < 0 || !g.main_component[o]) cs = CellState::Excluded;
        else continue;
      }
      for (int jj = j * refine; jj < (j + 1) * refine; ++jj)
        for (int ii = i * refine; ii < (i + 1) * refine; ++ii)
          s.state[size_t(jj) * Nf + ii] = uint8_t(cs);
    }

  auto set_state = [&](int i, int j, CellState cs) {
    s.state[size_t(j) * Nf + i] = uint8_t(cs);
  };

  // wall every graph square's boundary ring
  for (size_t v = 0; v < w.squares.size(); ++v) {
    if (!g.in_graph(int32_t(v))) continue;
    const auto& q = w.squares[v];
    int sp = q.side_px(w.mask.level) * refine;
    int i0 = q.i * sp, j0 = q.j * sp, i1 = i0 + sp - 1, j1 = j0 + sp - 1;
    for (int i = i0; i <= i1; ++i) {
      set_state(i, j0, CellState::Wall);
      set_state(i, j1, CellState::Wall);
    }
    for (int j = j0; j <= j1; ++j) {
      set_state(i0, j, CellState::Wall);
      set_state(i1, j, CellState::Wall);
    }
  }

  s.slits.delta = delta;

  // Open a gate on square a's ring toward square b.
  auto open_gate = [&](int32_t a, int32_t b, bool record_other) {
    auto fg = detail::shared_face(w, refine, a, b);
    if (!fg) throw ConstructionError("tree edge without a shared face interval");
    const auto& qa = w.squares[a];
    Vec2 za = qa.center(w.mask.box), zb = w.squares[b].center(w.mask.box);
    Vec2 blo = w.mask.box.lo();
    // crossing of [za, zb] with the face line, in fine coordinates
    double cross;
    if (fg->face <= 1) {
      double X = blo.real() + fg->coord * hf;
      double t = (X - za.real()) / (zb.real() - za.real());
      cross = (za.imag() + t * (zb.imag() - za.imag()) - blo.imag()) / hf;
    } else {
      double Y = blo.imag() + fg->coord * hf;
      double t = (Y - za.imag()) / (zb.imag() - za.imag());
      cross = (za.real() + t * (zb.real() - za.real()) - blo.real()) / hf;
    }
    double ghw = std::max(delta * qa.diam(w.mask.box) / hf, 1.5);
    cross = std::clamp(cross, fg->lo + 1.5, fg->hi - 1.5);
    // keep one wall pixel at each end of the shared interval so the slit web
    // stays chained through the square corners, as the coinciding continuum
    // boundaries are
    int a0 = std::max(fg->lo + 1, int(std::floor(cross - ghw)));
    int a1 = std::min(fg->hi - 1, int(std::ceil(cross + ghw)));
    int sp = qa.side_px(w.mask.level) * refine;
    int ring;
    switch (fg->face) {
      case 0: ring = qa.i * sp + sp - 1; break;
      case 1: ring = qa.i * sp; break;
      case 2: ring = qa.j * sp + sp - 1; break;
      default: ring = qa.j * sp; break;
    }
    for (int t = a0; t < a1; ++t) {
      if (fg->face <= 1) set_state(ring, t, CellState::Open);
      else set_state(t, ring, CellState::Open);
    }
    s.slits.gates.push_back({a, record_other ? b : -2, fg->face, a0, a1});
  };

  for (size_t v = 0; v < w.squares.size(); ++v) {
    int32_t p = g.parent[int32_t(v)];
    if (p < 0) continue;  // root or not in graph
    open_gate(int32_t(v), p, true);
    open_gate(p, int32_t(v), true);
  }

  // special square Q_l: a face neighbour of Q_0 outside G; extra gate on Q_0
  {
    int32_t best = -1;
    for (auto& e : w.adjacency[g.root]) {
      if (!e.face || g.in_graph(e.other)) continue;
      if (best < 0 || w.center_dist[e.other] > w.center_dist[best]) best = e.other;
    }
    if (best < 0)
      throw ConstructionError("no admissible special square: every neighbour of Q0 lies in G");
    s.slits.special = best;
    open_gate(g.root, best, false);
  }

  // gate disjointness check (per square, per face)
  {
    std::vector<std::vector<const SlitGate*>> by_square(w.squares.size());
    for (auto& gate : s.slits.gates) by_square[gate.square].push_back(&gate);
    for (auto& gates : by_square)
      for (size_t x = 0; x < gates.size(); ++x)
        for (size_t y = x + 1; y < gates.size(); ++y)
          if (gates[x]->face == gates[y]->face &&
              std::max(gates[x]->a, gates[y]->a) < std::min(gates[x]->b, gates[y]->b))
            throw ConstructionError("overlapping gates on square " +
                                    std::to_string(gates[x]->square));
  }

  // record the remaining wall arcs per square/face
  {
    std::vector<std::vector<const SlitGate*>> by_square(w.squares.size());
    for (auto& gate : s.slits.gates) by_square[gate.square].push_back(&gate);
    for (size_t v = 0; v < w.squares.size(); ++v) {
      if (!g.in_graph(int32_t(v))) continue;
      const auto& q = w.squares[v];
      int sp = q.side_px(w.mask.level) * refine;
      for (int face = 0; face < 4; ++face) {
        int lo = face <= 1 ? q.j * sp : q.i * sp;
        int hi = lo + sp;
        std::vector<std::pair<int, int>> cuts;
        for (auto* gate : by_square[v])
          if (gate->face == face) cuts.emplace_back(gate->a, gate->b);
        std::sort(cuts.begin(), cuts.end());
        int pos = lo;
        for (auto [a, b] : cuts) {
          if (a > pos) s.slits.arcs.push_back({int32_t(v), face, pos, a});
          pos = std::max(pos, b);
        }
        if (pos < hi) s.slits.arcs.push_back({int32_t(v), face, pos, hi});
      }
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct VerificationReport {
  bool connected{false};
  bool simply_connected{false};
  bool boundary_contained{false};
  std::optional<std::pair<int, int>> witness;  // fine pixel of the first failure
  double epsilon_omega{0.0};
  double epsilon_omega_hat{0.0};
  JohnEstimate john_omega;
  JohnEstimate john_omega_hat;

  bool all_passed() const { return connected && simply_connected && boundary_contained; }
};

inline VerificationReport verify_simplified(const SimplifiedDomain& s,
                                            int john_samples = 8, uint64_t seed = 1) {
  VerificationReport rep;
  int Nf = s.nf();
  auto st = [&](int i, int j) { return s.cell(i, j); };

  // (a) Omega-hat connected (4-adjacency over open cells; the far field
  // outside the box is open, so all border cells are joined through it)
  {
    std::vector<int8_t> seen(size_t(Nf) * Nf, 0);
    std::deque<std::pair<int, int>> queue;
    for (int k = 0; k < Nf; ++k)
      for (auto [i, j] : {std::pair{k, 0}, {k, Nf - 1}, {0, k}, {Nf - 1, k}})
        if (st(i, j) == CellState::Open && !seen[size_t(j) * Nf + i]) {
          seen[size_t(j) * Nf + i] = 1;
          queue.emplace_back(i, j);
        }
    while (!queue.empty()) {
      auto [i, j] = queue.front();
      queue.pop_front();
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        int ii = i + di[k], jj = j + dj[k];
        if (ii < 0 || jj < 0 || ii >= Nf || jj >= Nf) continue;
        size_t idx = size_t(jj) * Nf + ii;
        if (!seen[idx] && st(ii, jj) == CellState::Open) {
          seen[idx] = 1;
          queue.emplace_back(ii, jj);
        }
      }
    }
    rep.connected = true;
    for (int j = 0; j < Nf && rep.connected; ++j)
      for (int i = 0; i < Nf; ++i)
        if (st(i, j) == CellState::Open && !seen[size_t(j) * Nf + i]) {
          rep.connected = false;
          rep.witness = {i, j};
          break;
        }
  }

  // (b) simple connectivity: on the sphere the complement of Omega-hat is
  // K-hat alone (the far field belongs to the domain), so every non-open
  // cell must sit in one 8-connected blob
  {
    std::vector<int8_t> seen(size_t(Nf) * Nf, 0);
    std::deque<std::pair<int, int>> queue;
    for (int j = 0; j < Nf && queue.empty(); ++j)
      for (int i = 0; i < Nf; ++i)
        if (st(i, j) != CellState::Open) {
          seen[size_t(j) * Nf + i] = 1;
          queue.emplace_back(i, j);
          break;
        }
    while (!queue.empty()) {
      auto [i, j] = queue.front();
      queue.pop_front();
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          int ii = i + di, jj = j + dj;
          if ((di == 0 && dj == 0) || ii < 0 || jj < 0 || ii >= Nf || jj >= Nf) continue;
          size_t idx = size_t(jj) * Nf + ii;
          if (!seen[idx] && st(ii, jj) != CellState::Open) {
            seen[idx] = 1;
            queue.emplace_back(ii, jj);
          }
        }
    }
    rep.simply_connected = true;
    for (int j = 0; j < Nf && rep.simply_connected; ++j)
      for (int i = 0; i < Nf; ++i)
        if (st(i, j) != CellState::Open && !seen[size_t(j) * Nf + i]) {
          rep.simply_connected = false;
          if (!rep.witness) rep.witness = {i, j};
          break;
        }
  }

  // (c) boundary containment: every K cell facing the domain keeps Omega-hat
  // within two fine pixels (walls are rasterized curves, not solid blocks)
  {
    rep.boundary_contained = true;
    auto open_near = [&](int i, int j) {
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          int ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= Nf || jj >= Nf) continue;
          if (st(ii, jj) == CellState::Open) return true;
        }
      return false;
    };
    for (int j = 0; j < Nf && rep.boundary_contained; ++j)
      for (int i = 0; i < Nf; ++i) {
        if (st(i, j) != CellState::K) continue;
        bool faces_domain = false, near_closure = false;
        for (int dj = -1; dj <= 1 && !near_closure; ++dj)
          for (int di = -1; di <= 1; ++di) {
            int ii = i + di, jj = j + dj;
            if (ii < 0 || jj < 0 || ii >= Nf || jj >= Nf) continue;
            CellState cs = st(ii, jj);
            if (cs == CellState::Open || cs == CellState::Wall) faces_domain = true;
            if (cs == CellState::Open || (cs == CellState::Wall && open_near(ii, jj))) {
              near_closure = true;
              break;
            }
          }
        if (faces_domain && !near_closure) {
          rep.boundary_contained = false;
          rep.witness = {i, j};
          break;
        }
      }
  }

  // (d) empirical John pair; a disconnected domain has no John constant, so
  // leave epsilon at 0 instead of chasing unreachable boundary samples
  rep.john_omega = estimate_john_constant(s.base, std::nullopt, john_samples, seed);
  rep.epsilon_omega = rep.john_omega.epsilon_lower;
  if (rep.connected) {
    CompactSetMask khat = s.complement_mask();
    WhitneyDecomposition wh = whitney(khat, khat.level);
    rep.john_omega_hat = estimate_john_constant(wh, std::nullopt, john_samples, seed);
    rep.epsilon_omega_hat = rep.john_omega_hat.epsilon_lower;
  }
  return rep;
}

}  // namespace johnforge
