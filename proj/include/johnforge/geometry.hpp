#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

#include "johnforge/core.hpp"

namespace johnforge {

// ---------------------------------------------------------------------------
// Shape specifications
// ---------------------------------------------------------------------------

struct ShapeSpec {
  std::string kind;                  // disk, circle, segment, polygon, cantor,
                                     // fat_cantor, koch, julia, cardioid, point
  std::vector<double> params;
  std::vector<Vec2> points;          // polygon vertices

  std::string to_string() const {
    std::ostringstream os;
    os << kind;
    if (kind == "polygon") {
      os << ":";
      for (size_t k = 0; k < points.size(); ++k) {
        if (k) os << ";";
        os << points[k].real() << "," << points[k].imag();
      }
    } else if (!params.empty()) {
      os << ":";
      for (size_t k = 0; k < params.size(); ++k) {
        if (k) os << ",";
        os << params[k];
      }
    }
    return os.str();
  }

  static ShapeSpec parse(const std::string& text) {
    ShapeSpec s;
    auto colon = text.find(':');
    s.kind = text.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (s.kind == "polygon") {
      std::istringstream is(rest);
      std::string pair;
      while (std::getline(is, pair, ';')) {
        double x, y;
        char comma;
        std::istringstream ps(pair);
        if (!(ps >> x >> comma >> y) || comma != ',')
          throw ParameterError("bad polygon vertex '" + pair + "'");
        s.points.emplace_back(x, y);
      }
    } else if (!rest.empty()) {
      std::istringstream is(rest);
      std::string tok;
      while (std::getline(is, tok, ',')) {
        try {
          s.params.push_back(std::stod(tok));
        } catch (const std::exception&) {
          throw ParameterError("bad numeric parameter '" + tok + "' in shape spec");
        }
      }
    }
    s.validate();
    return s;
  }

  double param(size_t k, double fallback) const {
    return k < params.size() ? params[k] : fallback;
  }

  void validate() const {
    auto need_pos = [&](size_t k, const char* what) {
      if (params.size() <= k || !(params[k] > 0.0))
        throw ParameterError(std::string("shape ") + kind + ": " + what + " must be positive");
    };
    if (kind == "disk" || kind == "circle") need_pos(0, "radius");
    else if (kind == "segment") need_pos(0, "length");
    else if (kind == "polygon") {
      if (points.size() < 2) throw ParameterError("polygon needs at least 2 vertices");
    } else if (kind == "cantor") {
      if (params.size() < 2 || !(params[0] > 0.0 && params[0] < 0.5))
        throw ParameterError("cantor ratio must lie in (0, 1/2)");
      if (!(params[1] >= 1.0)) throw ParameterError("cantor depth must be >= 1");
    } else if (kind == "fat_cantor") {
      if (params.empty() || !(params[0] > 0.0 && params[0] < 1.0))
        throw ParameterError("fat_cantor area must lie in (0, 1)");
    } else if (kind == "koch") {
      if (params.empty() || !(params[0] >= 0.0)) throw ParameterError("koch depth must be >= 0");
    } else if (kind == "julia") {
      if (params.size() < 4) throw ParameterError("julia needs c_re,c_im,max_iter,escape_radius");
      if (!(params[2] >= 1.0)) throw ParameterError("julia max_iter must be >= 1");
      if (!(params[3] > 0.0)) throw ParameterError("julia escape_radius must be positive");
    } else if (kind == "cardioid") {
      need_pos(0, "scale");
    } else if (kind == "point") {
      // no parameters
    } else {
      throw ParameterError("unknown shape kind '" + kind + "'");
    }
  }
};

// ---------------------------------------------------------------------------
// CompactSetMask: K as a union of closed dyadic pixels
// ---------------------------------------------------------------------------

struct CompactSetMask {
  Box box;
  int level{0};
  std::string shape_spec;
  std::vector<uint8_t> bits;  // row-major, bits[j*n+i], i = x index, j = y index

  int n() const { return 1 << level; }
  double pixel() const { return box.side() / n(); }
  bool at(int i, int j) const { return bits[size_t(j) * n() + i] != 0; }
  void set(int i, int j, bool v = true) { bits[size_t(j) * n() + i] = v ? 1 : 0; }
  bool in_range(int i, int j) const { return i >= 0 && j >= 0 && i < n() && j < n(); }

  Vec2 pixel_center(int i, int j) const {
    double h = pixel();
    return box.lo() + Vec2((i + 0.5) * h, (j + 0.5) * h);
  }

  size_t count() const {
    return size_t(std::accumulate(bits.begin(), bits.end(), uint64_t(0)));
  }
  double area() const { return double(count()) * pixel() * pixel(); }

  // Occupied pixels with at least one unoccupied 4-neighbour (pixels on the
  // mask edge count their missing neighbour as unoccupied never arises: the
  // mask is strictly inside the box).
  std::vector<std::pair<int, int>> boundary_pixels() const {
    std::vector<std::pair<int, int>> out;
    int N = n();
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) {
        if (!at(i, j)) continue;
        bool open = (i > 0 && !at(i - 1, j)) || (i + 1 < N && !at(i + 1, j)) ||
                    (j > 0 && !at(i, j - 1)) || (j + 1 < N && !at(i, j + 1));
        if (open) out.emplace_back(i, j);
      }
    return out;
  }

  void check_invariants() const {
    if (count() == 0) throw GeometryError("mask is empty");
    int N = n();
    for (int k = 0; k < N; ++k)
      if (at(k, 0) || at(k, N - 1) || at(0, k) || at(N - 1, k))
        throw GeometryError("mask touches the box boundary; enlarge the box");
  }
};

namespace detail {

// 1D closed-interval unions for Cantor-type constructions.
struct Interval {
  double a, b;
};

inline std::vector<Interval> cantor_intervals(double ratio, int depth,
                                              double lo, double hi) {
  std::vector<Interval> cur{{lo, hi}};
  for (int d = 0; d < depth; ++d) {
    std::vector<Interval> next;
    next.reserve(cur.size() * 2);
    for (auto& iv : cur) {
      double len = (iv.b - iv.a) * ratio;
      next.push_back({iv.a, iv.a + len});
      next.push_back({iv.b - len, iv.b});
    }
    cur = std::move(next);
  }
  return cur;
}

// Smith-Volterra-Cantor: at step k remove the middle c/4^k portion of the
// original length from each surviving interval; limiting measure = len*(1-c/2).
inline std::vector<Interval> fat_cantor_intervals(double measure, int depth,
                                                  double lo, double hi) {
  double len = hi - lo;
  double c = 2.0 * (1.0 - measure / len);
  std::vector<Interval> cur{{lo, hi}};
  for (int k = 1; k <= depth; ++k) {
    double gap = c * len / std::pow(4.0, k);
    std::vector<Interval> next;
    next.reserve(cur.size() * 2);
    for (auto& iv : cur) {
      double mid = 0.5 * (iv.a + iv.b);
      double half = 0.5 * gap;
      if (iv.b - iv.a <= gap) { next.push_back(iv); continue; }
      next.push_back({iv.a, mid - half});
      next.push_back({mid + half, iv.b});
    }
    cur = std::move(next);
  }
  return cur;
}

inline bool intervals_hit(const std::vector<Interval>& ivs, double a, double b) {
  // ivs sorted and disjoint; does [a,b] meet their union?
  auto it = std::lower_bound(ivs.begin(), ivs.end(), a,
                             [](const Interval& iv, double v) { return iv.b < v; });
  return it != ivs.end() && it->a <= b;
}

inline double point_segment_dist(Vec2 p, Vec2 a, Vec2 b) {
  Vec2 u = b - a;
  double L2 = std::norm(u);
  if (L2 == 0.0) return std::abs(p - a);
  double t = std::clamp(((p - a).real() * u.real() + (p - a).imag() * u.imag()) / L2, 0.0, 1.0);
  return std::abs(p - (a + t * u));
}

inline std::vector<Vec2> koch_snowflake(int depth, double side) {
  // equilateral triangle, centroid at origin, refined by the Koch rule
  double r = side / std::sqrt(3.0);
  std::vector<Vec2> pts;
  for (int k = 0; k < 3; ++k)
    pts.push_back(std::polar(r, M_PI / 2 + 2.0 * M_PI * k / 3.0));
  pts.push_back(pts[0]);
  for (int d = 0; d < depth; ++d) {
    std::vector<Vec2> next;
    next.reserve(pts.size() * 4);
    for (size_t k = 0; k + 1 < pts.size(); ++k) {
      Vec2 a = pts[k], b = pts[k + 1], u = (b - a) / 3.0;
      Vec2 m = a + 1.5 * u + u * Vec2(0.0, -std::sqrt(3.0) / 2.0);
      next.push_back(a);
      next.push_back(a + u);
      next.push_back(m);
      next.push_back(a + 2.0 * u);
    }
    next.push_back(pts.back());
    pts = std::move(next);
  }
  return pts;
}

inline std::vector<Vec2> cardioid_polyline(double scale, int samples = 720) {
  // (1+cos t) e^{it}, shifted so the curve straddles the origin
  std::vector<Vec2> pts;
  pts.reserve(samples + 1);
  for (int k = 0; k <= samples; ++k) {
    double t = 2.0 * M_PI * k / samples;
    double rho = 1.0 + std::cos(t);
    pts.push_back(scale * (std::polar(rho, t) - Vec2(1.0, 0.0)));
  }
  return pts;
}

// Exterior distance estimate to the Julia set of z^2 + c via the escape-time
// derivative: d ~ |z_n| log|z_n| / |z_n'| (within a bounded factor).
// Returns -1 for orbits that stay bounded for max_iter steps.
inline double julia_exterior_distance(Vec2 z, Vec2 c, int max_iter) {
  Vec2 dz{1.0, 0.0};
  for (int k = 0; k < max_iter; ++k) {
    dz = 2.0 * z * dz;
    z = z * z + c;
    if (std::norm(z) > 1e20 || std::norm(dz) > 1e280) {
      double az = std::abs(z);
      return az * std::log(az) / std::abs(dz);
    }
  }
  return -1.0;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// rasterize
// ---------------------------------------------------------------------------

inline CompactSetMask rasterize(const ShapeSpec& spec, int level, Box box = Box{}) {
  if (level < 3 || level > 14) throw ParameterError("level must lie in [3, 14]");
  box.validate();
  spec.validate();

  CompactSetMask m;
  m.box = box;
  m.level = level;
  m.shape_spec = spec.to_string();
  int N = m.n();
  m.bits.assign(size_t(N) * N, 0);
  double h = m.pixel();
  double halfdiag = h * std::sqrt(0.5);
  Vec2 lo = box.lo();

  auto curve_fill = [&](const std::vector<Vec2>& pts, bool closed) {
    // mark pixels whose centre is within half a diagonal of the polyline
    size_t nseg = closed ? pts.size() : pts.size() - 1;
    for (size_t s = 0; s < nseg; ++s) {
      Vec2 a = pts[s], b = pts[(s + 1) % pts.size()];
      double x0 = std::min(a.real(), b.real()) - h, x1 = std::max(a.real(), b.real()) + h;
      double y0 = std::min(a.imag(), b.imag()) - h, y1 = std::max(a.imag(), b.imag()) + h;
      int i0 = std::max(0, int(std::floor((x0 - lo.real()) / h)));
      int i1 = std::min(N - 1, int(std::floor((x1 - lo.real()) / h)));
      int j0 = std::max(0, int(std::floor((y0 - lo.imag()) / h)));
      int j1 = std::min(N - 1, int(std::floor((y1 - lo.imag()) / h)));
      for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i)
          if (!m.at(i, j) &&
              detail::point_segment_dist(m.pixel_center(i, j), a, b) <= halfdiag)
            m.set(i, j);
    }
  };

  if (spec.kind == "disk" || spec.kind == "circle") {
    double r = spec.params[0];
    bool filled = spec.kind == "disk";
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) {
        double px0 = lo.real() + i * h, py0 = lo.imag() + j * h;
        // distance from the box centre of the shape (origin-relative)
        double cx = box.center.real(), cy = box.center.imag();
        double dx = std::max({px0 - cx, 0.0, cx - (px0 + h)});
        double dy = std::max({py0 - cy, 0.0, cy - (py0 + h)});
        double dmin = std::hypot(dx, dy);
        if (filled) {
          // centre-in test keeps the pixel area unbiased
          if (std::abs(m.pixel_center(i, j) - box.center) <= r) m.set(i, j);
        } else {
          double fx = std::max(std::abs(px0 - cx), std::abs(px0 + h - cx));
          double fy = std::max(std::abs(py0 - cy), std::abs(py0 + h - cy));
          double dmax = std::hypot(fx, fy);
          if (dmin <= r && r <= dmax) m.set(i, j);
        }
      }
  } else if (spec.kind == "segment") {
    double L = spec.params[0];
    double x0 = box.center.real() - L / 2, x1 = box.center.real() + L / 2;
    double y = box.center.imag();
    for (int j = 0; j < N; ++j) {
      double py0 = lo.imag() + j * h;
      if (!(py0 <= y && y <= py0 + h)) continue;
      for (int i = 0; i < N; ++i) {
        double px0 = lo.real() + i * h;
        if (px0 <= x1 && px0 + h >= x0) m.set(i, j);
      }
    }
  } else if (spec.kind == "polygon") {
    curve_fill(spec.points, false);
  } else if (spec.kind == "koch") {
    curve_fill(detail::koch_snowflake(int(spec.params[0]), spec.param(1, 1.5)), false);
  } else if (spec.kind == "cardioid") {
    curve_fill(detail::cardioid_polyline(spec.params[0]), false);
  } else if (spec.kind == "cantor" || spec.kind == "fat_cantor") {
    double half = spec.kind == "cantor" ? spec.param(2, 0.5) : spec.param(1, 0.5);
    std::vector<detail::Interval> ivs;
    if (spec.kind == "cantor")
      ivs = detail::cantor_intervals(spec.params[0], int(spec.params[1]), -half, half);
    else
      ivs = detail::fat_cantor_intervals(std::sqrt(spec.params[0]), 10, -half, half);
    for (int j = 0; j < N; ++j) {
      double py0 = lo.imag() + j * h - box.center.imag();
      if (!detail::intervals_hit(ivs, py0, py0 + h)) continue;
      for (int i = 0; i < N; ++i) {
        double px0 = lo.real() + i * h - box.center.real();
        if (detail::intervals_hit(ivs, px0, px0 + h)) m.set(i, j);
      }
    }
  } else if (spec.kind == "julia") {
    Vec2 c(spec.params[0], spec.params[1]);
    int max_iter = int(spec.params[2]);
    double escape = spec.params[3];
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) {
        Vec2 ctr = m.pixel_center(i, j);
        if (std::abs(ctr) > escape) continue;
        double d = detail::julia_exterior_distance(ctr, c, max_iter);
        if (d < 0.0 || d <= halfdiag) m.set(i, j);
      }
  } else if (spec.kind == "point") {
    m.set(N / 2, N / 2);
  } else {
    throw ParameterError("unknown shape kind '" + spec.kind + "'");
  }

  if (m.count() == 0)
    throw GeometryError("rasterization produced an empty mask for spec " + spec.to_string());
  m.check_invariants();
  return m;
}

inline CompactSetMask rasterize(const std::string& spec_text, int level, Box box = Box{}) {
  return rasterize(ShapeSpec::parse(spec_text), level, box);
}

// ---------------------------------------------------------------------------
// DistanceField: exact Euclidean distance to occupied pixel centres
// ---------------------------------------------------------------------------

struct DistanceField {
  Box box;
  int level{0};
  std::vector<double> values;  // per pixel-centre node, row-major

  int n() const { return 1 << level; }
  double pixel() const { return box.side() / n(); }
  double at(int i, int j) const { return values[size_t(j) * n() + i]; }
};

// Exact two-pass squared EDT (per-column nearest row, then 1D lower envelope
// of parabolas along each row).
inline DistanceField distance_transform(const CompactSetMask& mask) {
  if (mask.count() == 0) throw GeometryError("distance_transform: empty mask");
  int N = mask.n();
  const double INF = std::numeric_limits<double>::infinity();

  std::vector<double> g(size_t(N) * N, INF);  // squared vertical distance, pixel units
  for (int i = 0; i < N; ++i) {
    double d = INF;
    for (int j = 0; j < N; ++j) {
      d = mask.at(i, j) ? 0.0 : (d + 1.0);
      g[size_t(j) * N + i] = d;
    }
    d = INF;
    for (int j = N - 1; j >= 0; --j) {
      d = mask.at(i, j) ? 0.0 : (d + 1.0);
      g[size_t(j) * N + i] = std::min(g[size_t(j) * N + i], d);
    }
  }
  for (auto& v : g) {
    if (v != INF) v = v * v;
  }

  DistanceField out;
  out.box = mask.box;
  out.level = mask.level;
  out.values.assign(size_t(N) * N, 0.0);

  // columns with at least one occupied pixel carry finite parabolas
  std::vector<int> cols;
  cols.reserve(N);
  for (int i = 0; i < N; ++i)
    if (g[i] != INF) cols.push_back(i);

  double h = mask.pixel();
  std::vector<int> v(cols.size());
  std::vector<double> z(cols.size() + 1);
  for (int j = 0; j < N; ++j) {
    const double* f = &g[size_t(j) * N];
    int k = 0;
    v[0] = cols[0];
    z[0] = -INF;
    z[1] = INF;
    for (size_t c = 1; c < cols.size(); ++c) {
      int q = cols[c];
      double s;
      while (true) {
        s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) / (2.0 * (q - v[k]));
        if (s <= z[k] && k > 0) { --k; continue; }
        break;
      }
      ++k;
      v[k] = q;
      z[k] = s;
      z[k + 1] = INF;
    }
    k = 0;
    for (int q = 0; q < N; ++q) {
      while (z[k + 1] < q) ++k;
      double dq = double(q) - v[k];
      out.values[size_t(j) * N + q] = std::sqrt(dq * dq + f[v[k]]) * h;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Whitney decomposition
// ---------------------------------------------------------------------------

struct DyadicSquare {
  int level;  // 0 = whole box
  int i, j;   // indices at that level
  bool residual{false};

  int side_px(int mask_level) const { return 1 << (mask_level - level); }
  double side(const Box& box) const { return box.side() / (1 << level); }
  double diam(const Box& box) const { return side(box) * std::sqrt(2.0); }
  Vec2 center(const Box& box) const {
    double s = side(box);
    return box.lo() + Vec2((i + 0.5) * s, (j + 0.5) * s);
  }
};

struct WhitneyAdjacency {
  int32_t other;
  bool face;  // shares a boundary interval (not just a corner)
};

struct WhitneyDecomposition {
  CompactSetMask mask;
  DistanceField distance_field;
  int deepest_level{0};
  std::vector<DyadicSquare> squares;
  std::vector<std::vector<WhitneyAdjacency>> adjacency;
  std::vector<int32_t> owner;  // pixel -> square index, -1 for K / uncovered
  std::vector<double> center_dist;  // d(z_j) sampled at the centre node

  int n() const { return mask.n(); }
  int32_t owner_at(int i, int j) const { return owner[size_t(j) * n() + i]; }

  // distance from the square's boundary nodes to K (the Whitney test metric)
  double boundary_dist(const DyadicSquare& q) const {
    int sp = q.side_px(mask.level);
    int i0 = q.i * sp, j0 = q.j * sp;
    double d = std::numeric_limits<double>::infinity();
    for (int i = i0; i < i0 + sp; ++i) {
      d = std::min(d, distance_field.at(i, j0));
      d = std::min(d, distance_field.at(i, j0 + sp - 1));
    }
    for (int j = j0; j < j0 + sp; ++j) {
      d = std::min(d, distance_field.at(i0, j));
      d = std::min(d, distance_field.at(i0 + sp - 1, j));
    }
    return d;
  }
};

inline WhitneyDecomposition whitney(const CompactSetMask& mask, int deepest_level) {
  if (deepest_level > mask.level || deepest_level < 0)
    throw ParameterError("whitney: deepest_level must lie in [0, mask.level]");
  mask.check_invariants();

  WhitneyDecomposition w;
  w.mask = mask;
  w.distance_field = distance_transform(mask);
  w.deepest_level = deepest_level;
  int N = mask.n();

  // occupancy prefix sums for O(1) "contains K pixel" queries
  std::vector<uint32_t> pre(size_t(N + 1) * (N + 1), 0);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i)
      pre[size_t(j + 1) * (N + 1) + i + 1] = pre[size_t(j) * (N + 1) + i + 1] +
                                             pre[size_t(j + 1) * (N + 1) + i] -
                                             pre[size_t(j) * (N + 1) + i] +
                                             (mask.at(i, j) ? 1 : 0);
  auto occupied_in = [&](int i0, int j0, int sp) -> uint32_t {
    return pre[size_t(j0 + sp) * (N + 1) + i0 + sp] - pre[size_t(j0) * (N + 1) + i0 + sp] -
           pre[size_t(j0 + sp) * (N + 1) + i0] + pre[size_t(j0) * (N + 1) + i0];
  };

  struct Frame { int level, i, j; };
  std::vector<Frame> stack{{0, 0, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    DyadicSquare q{f.level, f.i, f.j, false};
    int sp = q.side_px(mask.level);
    bool hasK = occupied_in(f.i * sp, f.j * sp, sp) > 0;
    double diam = q.diam(mask.box);
    double dist = hasK ? 0.0 : w.boundary_dist(q);
    if (!hasK && diam <= dist) {
      w.squares.push_back(q);
    } else if (f.level == deepest_level) {
      if (!hasK) {
        q.residual = true;
        w.squares.push_back(q);
      }
      // squares still containing K at the deepest level are K territory
    } else {
      for (int c = 0; c < 4; ++c)
        stack.push_back({f.level + 1, 2 * f.i + (c & 1), 2 * f.j + (c >> 1)});
    }
  }

  // owner grid
  w.owner.assign(size_t(N) * N, -1);
  for (size_t s = 0; s < w.squares.size(); ++s) {
    const auto& q = w.squares[s];
    int sp = q.side_px(mask.level);
    int i0 = q.i * sp, j0 = q.j * sp;
    for (int j = j0; j < j0 + sp; ++j)
      std::fill(&w.owner[size_t(j) * N + i0], &w.owner[size_t(j) * N + i0 + sp], int32_t(s));
  }

  // centre distances
  w.center_dist.resize(w.squares.size());
  for (size_t s = 0; s < w.squares.size(); ++s) {
    const auto& q = w.squares[s];
    int sp = q.side_px(mask.level);
    int ic = q.i * sp + sp / 2, jc = q.j * sp + sp / 2;
    if (sp > 1) {
      // centre is a grid-line crossing; take the min over the 4 touching nodes
      double d = std::numeric_limits<double>::infinity();
      for (int dj = -1; dj <= 0; ++dj)
        for (int di = -1; di <= 0; ++di)
          d = std::min(d, w.distance_field.at(ic + di, jc + dj));
      w.center_dist[s] = d;
    } else {
      w.center_dist[s] = w.distance_field.at(ic, jc);
    }
  }

  // adjacency via the outer pixel ring of each square
  std::vector<std::vector<WhitneyAdjacency>> adj(w.squares.size());
  auto add_edge = [&](int32_t a, int32_t b, bool face) {
    if (a == b || a < 0 || b < 0) return;
    for (auto& e : adj[a]) {
      if (e.other == b) {
        e.face = e.face || face;
        return;
      }
    }
    adj[a].push_back({b, face});
    adj[b].push_back({a, face});
  };
  for (size_t s = 0; s < w.squares.size(); ++s) {
    const auto& q = w.squares[s];
    int sp = q.side_px(mask.level);
    int i0 = q.i * sp, j0 = q.j * sp, i1 = i0 + sp - 1, j1 = j0 + sp - 1;
    for (int i = i0; i <= i1; ++i) {
      if (j0 > 0) add_edge(int32_t(s), w.owner_at(i, j0 - 1), true);
      if (j1 + 1 < N) add_edge(int32_t(s), w.owner_at(i, j1 + 1), true);
    }
    for (int j = j0; j <= j1; ++j) {
      if (i0 > 0) add_edge(int32_t(s), w.owner_at(i0 - 1, j), true);
      if (i1 + 1 < N) add_edge(int32_t(s), w.owner_at(i1 + 1, j), true);
    }
    if (i0 > 0 && j0 > 0) add_edge(int32_t(s), w.owner_at(i0 - 1, j0 - 1), false);
    if (i1 + 1 < N && j0 > 0) add_edge(int32_t(s), w.owner_at(i1 + 1, j0 - 1), false);
    if (i0 > 0 && j1 + 1 < N) add_edge(int32_t(s), w.owner_at(i0 - 1, j1 + 1), false);
    if (i1 + 1 < N && j1 + 1 < N) add_edge(int32_t(s), w.owner_at(i1 + 1, j1 + 1), false);
  }
  w.adjacency = std::move(adj);
  return w;
}

}  // namespace johnforge
