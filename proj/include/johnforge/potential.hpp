#pragma once

#include <fftw3.h>

#include <deque>
#include <random>

#include "johnforge/geometry.hpp"

namespace johnforge {

// ---------------------------------------------------------------------------
// Logarithmic capacity
// ---------------------------------------------------------------------------

struct CapacityEstimate {
  double value{0.0};
  std::string method;  // "fekete" or "energy"
  int n_points{0};
  double energy{0.0};  // I(mu), energy method only
  bool degenerate{false};
};

struct EquilibriumMeasure {
  std::vector<Vec2> support;
  std::vector<double> weights;
  double energy{0.0};
};

namespace detail {

// Euclidean projection onto the probability simplex.
inline void project_simplex(std::vector<double>& w) {
  std::vector<double> u = w;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  int k = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    double t = (cum - 1.0) / double(i + 1);
    if (u[i] - t > 0.0) {
      theta = t;
      k = int(i) + 1;
    }
  }
  (void)k;
  for (auto& x : w) x = std::max(0.0, x - theta);
}

// Projected-gradient minimization of I(w) = w^T K w over the simplex from a
// uniform start; K_ij = log 1/max(|zi-zj|, reg).  Returns the final energy.
inline double minimize_energy(const std::vector<Vec2>& pts, double reg,
                              std::vector<double>& w) {
  int n = int(pts.size());
  auto kcol = [&](int j, std::vector<double>& c) {
    for (int i = 0; i < n; ++i)
      c[i] = -std::log(std::max(std::abs(pts[i] - pts[j]), reg));
  };
  w.assign(n, 1.0 / n);
  std::vector<double> q(n, 0.0), col(n), wn(n), qn(n);
  for (int j = 0; j < n; ++j) {
    kcol(j, col);
    for (int i = 0; i < n; ++i) q[i] += col[i] * w[j];
  }
  double I = 0.0;
  for (int i = 0; i < n; ++i) I += w[i] * q[i];
  double kmax = 0.0;
  for (int i = 0; i < n; ++i) kmax = std::max(kmax, std::abs(q[i]) * n);
  double step = 0.5 / std::max(kmax, 1e-12);
  for (int it = 0; it < 400; ++it) {
    for (int i = 0; i < n; ++i) wn[i] = w[i] - step * 2.0 * q[i];
    project_simplex(wn);
    std::fill(qn.begin(), qn.end(), 0.0);
    for (int j = 0; j < n; ++j) {
      if (wn[j] == 0.0) continue;
      kcol(j, col);
      for (int i = 0; i < n; ++i) qn[i] += col[i] * wn[j];
    }
    double In = 0.0;
    for (int i = 0; i < n; ++i) In += wn[i] * qn[i];
    if (In <= I) {
      double drop = I - In;
      w.swap(wn);
      q.swap(qn);
      I = In;
      step *= 1.2;
      if (drop < 1e-12 * std::max(1.0, std::abs(I))) break;
    } else {
      step *= 0.5;
      if (step < 1e-18) break;
    }
  }
  return I;
}

// Greedy Leja sequence: each new point maximizes the product of distances
// to the points already chosen.
inline std::vector<int> leja_order(const std::vector<Vec2>& pts, int n) {
  int m = int(pts.size());
  Vec2 centroid{0, 0};
  for (auto& p : pts) centroid += p;
  centroid /= double(m);
  int first = 0;
  for (int i = 1; i < m; ++i)
    if (std::abs(pts[i] - centroid) > std::abs(pts[first] - centroid)) first = i;
  std::vector<int> order{first};
  std::vector<double> logsum(m, 0.0);
  std::vector<int8_t> used(m, 0);
  used[first] = 1;
  for (int k = 1; k < n; ++k) {
    int prev = order.back();
    int best = -1;
    for (int i = 0; i < m; ++i) {
      if (used[i]) continue;
      double r = std::abs(pts[i] - pts[prev]);
      logsum[i] += r > 0.0 ? std::log(r) : -1e30;
      if (best < 0 || logsum[i] > logsum[best]) best = i;
    }
    if (best < 0) break;
    used[best] = 1;
    order.push_back(best);
  }
  return order;
}

}  // namespace detail

// Capacity of a finite point cloud; `reg` is the self-distance regularizer
// (one pixel for rasterized sets).
inline CapacityEstimate capacity_points(std::vector<Vec2> pts, const std::string& method,
                                        int n_points, uint64_t seed, double reg) {
  if (pts.empty()) throw ParameterError("capacity: empty point set");
  CapacityEstimate est;
  est.method = method;

  double diam = 0.0;
  for (size_t i = 1; i < pts.size(); ++i) diam = std::max(diam, std::abs(pts[i] - pts[0]));
  if (pts.size() == 1 || diam == 0.0) {
    est.value = reg;
    est.n_points = 1;
    est.degenerate = true;
    est.energy = -std::log(reg);
    return est;
  }

  if (method == "fekete") {
    // select n_points from the full candidate cloud; subsampling first would
    // pin the sequence to an arbitrary subset instead of near-extremal points
    auto order = detail::leja_order(pts, std::min(n_points, int(pts.size())));
    int n = int(order.size());
    est.n_points = n;
    if (n < 2) {
      est.value = reg;
      est.degenerate = true;
      return est;
    }
    // Run the transfinite-diameter iterate d_k alongside the increment
    // estimator g_k = (prod_l |z_k - z_l|)^{1/k}.  Both converge to the
    // capacity, but once the pixel grid stops resolving the extremal
    // clustering, g_k collapses first; cut the sequence at that point.
    double total = 0.0, d = reg, gwin = 0.0;
    const int warmup = 128, window = 16;
    int k;
    for (k = 1; k < n; ++k) {
      double inc = 0.0;
      for (int l = 0; l < k; ++l)
        inc += std::log(std::max(std::abs(pts[order[k]] - pts[order[l]]), 1e-300));
      gwin += inc / k;
      if (k % window == 0) {
        double g = std::exp(gwin / window);
        gwin = 0.0;
        if (k + 1 > warmup && g < 0.97 * d) break;
      }
      total += inc;
      d = std::exp(2.0 * total / (double(k + 1) * double(k)));
    }
    est.n_points = std::min(k + 1, n);
    est.value = d;
    return est;
  }
  if (method != "energy") throw ParameterError("capacity method must be fekete or energy");

  if (int(pts.size()) > n_points) {
    std::mt19937_64 rng(seed);
    std::shuffle(pts.begin(), pts.end(), rng);
    pts.resize(n_points);
  }
  est.n_points = int(pts.size());
  std::vector<double> w;
  est.energy = detail::minimize_energy(pts, reg, w);
  est.value = std::exp(-est.energy);
  return est;
}

inline CapacityEstimate capacity_estimate(const CompactSetMask& mask, const std::string& method,
                                          int n_points, uint64_t seed) {
  if (n_points < 8 || n_points > 4096)
    throw ParameterError("capacity n_points must lie in [8, 4096]");
  auto bpx = mask.boundary_pixels();
  std::vector<Vec2> pts;
  pts.reserve(bpx.size());
  for (auto [i, j] : bpx) pts.push_back(mask.pixel_center(i, j));
  return capacity_points(std::move(pts), method, n_points, seed, mask.pixel());
}

inline EquilibriumMeasure equilibrium_measure(const CompactSetMask& mask, int n_points,
                                              uint64_t seed) {
  auto bpx = mask.boundary_pixels();
  std::vector<Vec2> pts;
  for (auto [i, j] : bpx) pts.push_back(mask.pixel_center(i, j));
  if (int(pts.size()) > n_points) {
    std::mt19937_64 rng(seed);
    std::shuffle(pts.begin(), pts.end(), rng);
    pts.resize(n_points);
  }
  if (pts.empty()) throw ParameterError("equilibrium_measure: empty mask boundary");
  std::vector<double> w;
  double I = detail::minimize_energy(pts, mask.pixel(), w);
  EquilibriumMeasure mu;
  mu.support = std::move(pts);
  mu.weights = std::move(w);
  mu.energy = I;
  return mu;
}

// ---------------------------------------------------------------------------
// Discrete harmonic fields
// ---------------------------------------------------------------------------

enum class NodeRole : uint8_t { Harmonic = 0, Boundary = 1, Outside = 2 };

struct HarmonicField {
  Box box;
  int level{0};
  std::vector<double> values;
  std::vector<uint8_t> role;
  double residual{0.0};

  int n() const { return 1 << level; }
  double pixel() const { return box.side() / n(); }
  double at(int i, int j) const { return values[size_t(j) * n() + i]; }
  NodeRole role_at(int i, int j) const { return NodeRole(role[size_t(j) * n() + i]); }
};

// 5-point Laplace solve by conjugate gradients.  Grid edges into Outside
// nodes are dropped (natural Neumann condition on that part of the border).
inline HarmonicField harmonic_solve(const Box& box, int level,
                                    const std::vector<uint8_t>& role,
                                    const std::vector<double>& boundary_values,
                                    double rel_tol = 1e-8) {
  int N = 1 << level;
  size_t total = size_t(N) * N;
  if (role.size() != total || boundary_values.size() != total)
    throw ParameterError("harmonic_solve: role/value arrays must match the grid");

  HarmonicField f;
  f.box = box;
  f.level = level;
  f.role = role;
  f.values = boundary_values;

  std::vector<int32_t> idx(total, -1);
  std::vector<int32_t> nodes;
  for (size_t k = 0; k < total; ++k)
    if (role[k] == uint8_t(NodeRole::Harmonic)) {
      idx[k] = int32_t(nodes.size());
      nodes.push_back(int32_t(k));
    }
  size_t U = nodes.size();
  if (U == 0) return f;

  double bmin = 1e300, bmax = -1e300;
  bool has_boundary = false;
  for (size_t k = 0; k < total; ++k)
    if (role[k] == uint8_t(NodeRole::Boundary)) {
      has_boundary = true;
      bmin = std::min(bmin, boundary_values[k]);
      bmax = std::max(bmax, boundary_values[k]);
    }
  if (!has_boundary)
    throw ConnectivityError("harmonic_solve: no boundary nodes");
  double osc = std::max(bmax - bmin, 0.0);

  // connectivity: every unknown must reach a boundary node
  {
    std::vector<int8_t> seen(total, 0);
    std::deque<int32_t> queue;
    for (size_t k = 0; k < total; ++k)
      if (role[k] == uint8_t(NodeRole::Boundary)) {
        seen[k] = 1;
        queue.push_back(int32_t(k));
      }
    while (!queue.empty()) {
      int32_t k = queue.front();
      queue.pop_front();
      int i = int(k % N), j = int(k / N);
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int t = 0; t < 4; ++t) {
        int ii = i + di[t], jj = j + dj[t];
        if (ii < 0 || jj < 0 || ii >= N || jj >= N) continue;
        size_t kk = size_t(jj) * N + ii;
        if (!seen[kk] && role[kk] == uint8_t(NodeRole::Harmonic)) {
          seen[kk] = 1;
          queue.push_back(int32_t(kk));
        }
      }
    }
    for (int32_t k : nodes)
      if (!seen[k])
        throw ConnectivityError("harmonic_solve: domain component without boundary contact");
  }

  auto apply = [&](const std::vector<double>& u, std::vector<double>& out) {
    for (size_t a = 0; a < U; ++a) {
      int32_t k = nodes[a];
      int i = int(k % N), j = int(k / N);
      double acc = 0.0;
      int deg = 0;
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int t = 0; t < 4; ++t) {
        int ii = i + di[t], jj = j + dj[t];
        if (ii < 0 || jj < 0 || ii >= N || jj >= N) continue;
        size_t kk = size_t(jj) * N + ii;
        if (role[kk] == uint8_t(NodeRole::Outside)) continue;
        ++deg;
        if (role[kk] == uint8_t(NodeRole::Harmonic)) acc += u[idx[kk]];
      }
      out[a] = deg * u[a] - acc;
    }
  };

  std::vector<double> b(U, 0.0);
  for (size_t a = 0; a < U; ++a) {
    int32_t k = nodes[a];
    int i = int(k % N), j = int(k / N);
    const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
    for (int t = 0; t < 4; ++t) {
      int ii = i + di[t], jj = j + dj[t];
      if (ii < 0 || jj < 0 || ii >= N || jj >= N) continue;
      size_t kk = size_t(jj) * N + ii;
      if (role[kk] == uint8_t(NodeRole::Boundary)) b[a] += boundary_values[kk];
    }
  }

  // start from the boundary mean, which is exact for constant data
  double mean = 0.5 * (bmin + bmax);
  std::vector<double> u(U, mean), r(U), p(U), Ap(U);
  apply(u, Ap);
  double rr = 0.0;
  for (size_t a = 0; a < U; ++a) {
    r[a] = b[a] - Ap[a];
    rr += r[a] * r[a];
  }
  p = r;
  double target = rel_tol * std::max(osc, 1e-300);
  double target2 = target * target;
  size_t max_iter = 40 * size_t(N) + 200;
  for (size_t it = 0; it < max_iter && rr > target2; ++it) {
    apply(p, Ap);
    double pAp = 0.0;
    for (size_t a = 0; a < U; ++a) pAp += p[a] * Ap[a];
    if (pAp <= 0.0) break;
    double alpha = rr / pAp;
    double rr_new = 0.0;
    for (size_t a = 0; a < U; ++a) {
      u[a] += alpha * p[a];
      r[a] -= alpha * Ap[a];
      rr_new += r[a] * r[a];
    }
    double beta = rr_new / rr;
    rr = rr_new;
    for (size_t a = 0; a < U; ++a) p[a] = r[a] + beta * p[a];
  }

  for (size_t a = 0; a < U; ++a) f.values[nodes[a]] = u[a];
  apply(u, Ap);
  double res = 0.0;
  for (size_t a = 0; a < U; ++a) res = std::max(res, std::abs(b[a] - Ap[a]));
  f.residual = res;
  return f;
}

// Sum of squared forward differences over edges inside `region` (the grid
// analogue of the Dirichlet integral; the h factors cancel in 2-D).
inline double dirichlet_energy(const HarmonicField& f, const std::vector<uint8_t>& region) {
  int N = f.n();
  if (region.size() != size_t(N) * N)
    throw ParameterError("dirichlet_energy: region size mismatch");
  double e = 0.0;
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      size_t k = size_t(j) * N + i;
      if (!region[k]) continue;
      if (i + 1 < N && region[k + 1]) {
        double d = f.values[k + 1] - f.values[k];
        e += d * d;
      }
      if (j + 1 < N && region[k + N]) {
        double d = f.values[k + N] - f.values[k];
        e += d * d;
      }
    }
  return e;
}

// ---------------------------------------------------------------------------
// Harmonic measure by walk-on-spheres
// ---------------------------------------------------------------------------

struct WosEstimate {
  double p{0.0};
  double std_error{0.0};
  int n_walks{0};
  double exhausted_fraction{0.0};
};

inline WosEstimate harmonic_measure_wos(const CompactSetMask& mask,
                                        const std::vector<uint8_t>& target, Vec2 z0,
                                        int n_walks, double shell_px, uint64_t seed) {
  int N = mask.n();
  if (target.size() != size_t(N) * N)
    throw ParameterError("harmonic_measure_wos: target size mismatch");
  if (shell_px < 1.0) throw ParameterError("shell must be at least one pixel");
  double h = mask.pixel();
  Vec2 lo = mask.box.lo();
  {
    int i = int((z0.real() - lo.real()) / h), j = int((z0.imag() - lo.imag()) / h);
    if (!mask.in_range(i, j) || mask.at(i, j))
      throw ParameterError("start point must be interior to the domain");
  }
  DistanceField df = distance_transform(mask);
  double shell = shell_px * h;

  auto nearest_occupied = [&](int ci, int cj) -> std::pair<int, int> {
    for (int rad = 0; rad < N; ++rad) {
      double best = 1e300;
      std::pair<int, int> hit{-1, -1};
      for (int dj = -rad; dj <= rad; ++dj)
        for (int di = -rad; di <= rad; ++di) {
          if (std::max(std::abs(di), std::abs(dj)) != rad) continue;
          int i = ci + di, j = cj + dj;
          if (!mask.in_range(i, j) || !mask.at(i, j)) continue;
          double d = double(di) * di + double(dj) * dj;
          if (d < best) {
            best = d;
            hit = {i, j};
          }
        }
      if (hit.first >= 0) return hit;
    }
    throw GeometryError("no occupied pixel found");
  };

  int hits = 0, exhausted = 0;
  const int max_steps = 10000;
  for (int k = 0; k < n_walks; ++k) {
    std::mt19937_64 rng(seed + uint64_t(k));
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Vec2 z = z0;
    bool done = false;
    for (int step = 0; step < max_steps; ++step) {
      int i = int((z.real() - lo.real()) / h), j = int((z.imag() - lo.imag()) / h);
      if (!mask.in_range(i, j)) {  // escaped the box: counts as missing E
        done = true;
        break;
      }
      double d = df.at(i, j);
      if (d <= shell) {
        auto [bi, bj] = nearest_occupied(i, j);
        if (target[size_t(bj) * N + bi]) ++hits;
        done = true;
        break;
      }
      double r = std::max(d - h, 0.5 * h);
      double th = 2.0 * M_PI * uni(rng);
      z += std::polar(r, th);
    }
    if (!done) ++exhausted;
  }
  WosEstimate est;
  est.n_walks = n_walks;
  est.p = double(hits) / n_walks;
  est.std_error = std::sqrt(std::max(est.p * (1.0 - est.p), 0.0) / n_walks);
  est.exhausted_fraction = double(exhausted) / n_walks;
  return est;
}

// ---------------------------------------------------------------------------
// Oscillation capacity (super-level boundary sets of a harmonic field)
// ---------------------------------------------------------------------------

inline CapacityEstimate oscillation_capacity(const HarmonicField& field,
                                             std::pair<int, int> center, double lambda,
                                             const std::vector<std::pair<int, int>>& boundary,
                                             int n_points = 512, uint64_t seed = 1) {
  if (boundary.empty()) throw ParameterError("oscillation_capacity: empty boundary");
  // normalize to unit Dirichlet energy on the active region
  std::vector<uint8_t> region(field.role.size(), 0);
  for (size_t k = 0; k < field.role.size(); ++k)
    region[k] = field.role[k] != uint8_t(NodeRole::Outside);
  double e = dirichlet_energy(field, region);
  double scale = e > 0.0 ? 1.0 / std::sqrt(e) : 1.0;
  double h0 = field.at(center.first, center.second) * scale;

  std::vector<Vec2> pts;
  double h = field.pixel();
  Vec2 lo = field.box.lo();
  for (auto [i, j] : boundary)
    if (std::abs(field.at(i, j) * scale - h0) >= lambda)
      pts.push_back(lo + Vec2((i + 0.5) * h, (j + 0.5) * h));
  if (pts.empty()) {
    CapacityEstimate est;
    est.method = "energy";
    est.value = 0.0;
    return est;
  }
  return capacity_points(std::move(pts), "energy", n_points, seed, h);
}

// ---------------------------------------------------------------------------
// Cauchy transform by spectral convolution
// ---------------------------------------------------------------------------

struct ComplexField {
  Box box;
  int level{0};
  std::vector<std::complex<double>> values;

  int n() const { return 1 << level; }
  double pixel() const { return box.side() / n(); }
  std::complex<double> at(int i, int j) const { return values[size_t(j) * n() + i]; }
};

inline ComplexField cauchy_transform(const ComplexField& density) {
  int N = density.n();
  int M = 2 * N;  // zero padding makes the circular convolution linear
  double h = density.pixel();
  size_t total = size_t(M) * M;

  fftw_complex* a = fftw_alloc_complex(total);
  fftw_complex* b = fftw_alloc_complex(total);
  std::fill(&a[0][0], &a[0][0] + 2 * total, 0.0);
  std::fill(&b[0][0], &b[0][0] + 2 * total, 0.0);

  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      auto v = density.at(i, j);
      a[size_t(j) * M + i][0] = v.real();
      a[size_t(j) * M + i][1] = v.imag();
    }
  // kernel h^2/(pi z) at pixel offsets, origin set to 0 (principal value)
  for (int j = 0; j < M; ++j)
    for (int i = 0; i < M; ++i) {
      int dx = i < N ? i : i - M;
      int dy = j < N ? j : j - M;
      if (dx == 0 && dy == 0) continue;
      std::complex<double> z(dx * h, dy * h);
      auto v = h * h / (M_PI * z);
      b[size_t(j) * M + i][0] = v.real();
      b[size_t(j) * M + i][1] = v.imag();
    }

  fftw_plan pa = fftw_plan_dft_2d(M, M, a, a, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_plan pb = fftw_plan_dft_2d(M, M, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(pa);
  fftw_execute(pb);
  for (size_t k = 0; k < total; ++k) {
    double re = a[k][0] * b[k][0] - a[k][1] * b[k][1];
    double im = a[k][0] * b[k][1] + a[k][1] * b[k][0];
    a[k][0] = re / double(total);
    a[k][1] = im / double(total);
  }
  fftw_plan pc = fftw_plan_dft_2d(M, M, a, a, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(pc);

  ComplexField out;
  out.box = density.box;
  out.level = density.level;
  out.values.resize(size_t(N) * N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i)
      out.values[size_t(j) * N + i] = {a[size_t(j) * M + i][0], a[size_t(j) * M + i][1]};

  fftw_destroy_plan(pa);
  fftw_destroy_plan(pb);
  fftw_destroy_plan(pc);
  fftw_free(a);
  fftw_free(b);
  return out;
}

// ---------------------------------------------------------------------------
// Capacity distortion under univalent maps (Beurling-type checks)
// ---------------------------------------------------------------------------

struct BeurlingArcRow {
  double arc_start, arc_width;
  double cap_E, cap_fE, ratio;  // ratio = cap_fE / cap_E^2
};

struct BeurlingLambdaRow {
  double lambda;
  double cap, product;  // product = cap * sqrt(lambda)
};

struct BeurlingReport {
  std::string map;
  std::vector<BeurlingArcRow> arcs;
  double min_ratio{0.0};
  std::vector<BeurlingLambdaRow> lambdas;
  double max_product{0.0};
};

namespace detail {

inline std::complex<double> univalent_map(const std::string& name, std::complex<double> z) {
  if (name == "identity") return z;
  if (name == "koebe") return z / ((1.0 - z) * (1.0 - z));
  if (name == "sqrtslit") return z / (1.0 - z * z);
  throw ParameterError("unknown map: " + name + " (identity | koebe | sqrtslit)");
}

inline std::complex<double> univalent_deriv(const std::string& name, std::complex<double> z) {
  if (name == "identity") return 1.0;
  if (name == "koebe") return (1.0 + z) / std::pow(1.0 - z, 3.0);
  if (name == "sqrtslit") {
    auto d = 1.0 - z * z;
    return (1.0 + z * z) / (d * d);
  }
  throw ParameterError("unknown map: " + name);
}

}  // namespace detail

inline BeurlingReport verify_beurling(const std::string& map,
                                      const std::vector<std::pair<double, double>>& arc_specs,
                                      const std::vector<double>& lambdas,
                                      int samples_per_arc = 512, uint64_t seed = 1) {
  detail::univalent_map(map, 0.0);  // validate the name eagerly
  BeurlingReport rep;
  rep.map = map;
  rep.min_ratio = 1e300;

  for (auto [start, width] : arc_specs) {
    std::vector<Vec2> e_pts, fe_pts;
    for (int k = 0; k < samples_per_arc; ++k) {
      double th = start + width * (k + 0.5) / samples_per_arc;
      auto z = std::polar(1.0, th);
      e_pts.push_back(z);
      fe_pts.push_back(detail::univalent_map(map, 0.999 * z));
    }
    double reg = width / samples_per_arc;
    double cap_e = capacity_points(e_pts, "fekete", 256, seed, reg).value;
    double cap_fe = capacity_points(fe_pts, "fekete", 256, seed, reg).value;
    double ratio = cap_fe / (cap_e * cap_e);
    rep.arcs.push_back({start, width, cap_e, cap_fe, ratio});
    rep.min_ratio = std::min(rep.min_ratio, ratio);
  }
  if (rep.arcs.empty()) rep.min_ratio = 0.0;

  // ray-image lengths l(g_theta) = int_0^1 |f'(r e^{i theta})| dr, truncated
  const int n_theta = 2048, n_r = 4096;
  std::vector<double> len(n_theta);
  for (int t = 0; t < n_theta; ++t) {
    double th = 2.0 * M_PI * (t + 0.5) / n_theta;
    double acc = 0.0, rmax = 1.0 - 1e-4;
    for (int s = 0; s < n_r; ++s) {
      double r = rmax * (s + 0.5) / n_r;
      acc += std::abs(detail::univalent_deriv(map, std::polar(r, th)));
    }
    len[t] = acc * rmax / n_r;
  }
  for (double lam : lambdas) {
    std::vector<Vec2> pts;
    for (int t = 0; t < n_theta; ++t)
      if (len[t] > lam) pts.push_back(std::polar(1.0, 2.0 * M_PI * (t + 0.5) / n_theta));
    double cap = pts.empty()
                     ? 0.0
                     : capacity_points(pts, "fekete", 256, seed, 2.0 * M_PI / n_theta).value;
    rep.lambdas.push_back({lam, cap, cap * std::sqrt(lam)});
    rep.max_product = std::max(rep.max_product, cap * std::sqrt(lam));
  }
  return rep;
}

}  // namespace johnforge
