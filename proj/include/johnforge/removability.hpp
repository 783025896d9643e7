#pragma once

#include "johnforge/potential.hpp"

namespace johnforge {

struct Collar {
  double delta{0.0};
  std::vector<uint8_t> nodes;  // {z : d(z) <= delta}, contains every K pixel
};

inline Collar build_collar(const DistanceField& df, double delta) {
  if (!(delta > 0.0)) throw ParameterError("collar delta must be positive");
  Collar c;
  c.delta = delta;
  c.nodes.assign(df.values.size(), 0);
  for (size_t k = 0; k < df.values.size(); ++k) c.nodes[k] = df.values[k] <= delta ? 1 : 0;
  return c;
}

// ---------------------------------------------------------------------------
// Test functions: continuous, harmonic off K
// ---------------------------------------------------------------------------

struct TraceSpec {
  std::string kind;   // constant | coordinate | fourier
  double value{0.0};  // constant trace level
  int order{8};       // fourier terms
};

namespace detail {

struct Trace {
  TraceSpec spec;
  Vec2 centroid;
  std::vector<double> a, b;  // fourier coefficients

  double operator()(Vec2 z) const {
    if (spec.kind == "constant") return spec.value;
    if (spec.kind == "coordinate") return z.real();
    double th = std::arg(z - centroid);
    double acc = 0.0;
    // 1/k^2 decay keeps the harmonic extension's energy at scales well above
    // the finest collar width, so finite-collar gaps measure removability
    // rather than unresolved high modes
    for (int k = 1; k <= spec.order; ++k)
      acc += (a[k - 1] * std::cos(k * th) + b[k - 1] * std::sin(k * th)) / double(k * k);
    return acc;
  }
};

inline Trace make_trace(const CompactSetMask& mask, const TraceSpec& spec, uint64_t seed) {
  if (spec.kind != "constant" && spec.kind != "coordinate" && spec.kind != "fourier")
    throw ParameterError("trace kind must be constant, coordinate or fourier");
  Trace t;
  t.spec = spec;
  Vec2 c{0, 0};
  size_t cnt = 0;
  int N = mask.n();
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i)
      if (mask.at(i, j)) {
        c += mask.pixel_center(i, j);
        ++cnt;
      }
  t.centroid = c / double(cnt);
  if (spec.kind == "fourier") {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int k = 0; k < spec.order; ++k) {
      t.a.push_back(uni(rng));
      t.b.push_back(uni(rng));
    }
  }
  return t;
}

}  // namespace detail

// F on the full box: the trace on K's pixels, discrete-harmonic on each
// complementary component, the trace mean on the outer box ring.
inline HarmonicField build_test_function(const CompactSetMask& mask, const TraceSpec& spec,
                                         uint64_t seed) {
  auto trace = detail::make_trace(mask, spec, seed);
  int N = mask.n();
  size_t total = size_t(N) * N;
  std::vector<uint8_t> role(total, uint8_t(NodeRole::Harmonic));
  std::vector<double> values(total, 0.0);
  double mean = 0.0;
  size_t cnt = 0;
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i)
      if (mask.at(i, j)) {
        size_t k = size_t(j) * N + i;
        role[k] = uint8_t(NodeRole::Boundary);
        values[k] = trace(mask.pixel_center(i, j));
        mean += values[k];
        ++cnt;
      }
  mean /= double(cnt);
  for (int k = 0; k < N; ++k)
    for (auto [i, j] : {std::pair{k, 0}, {k, N - 1}, {0, k}, {N - 1, k}}) {
      size_t idx = size_t(j) * N + i;
      if (role[idx] == uint8_t(NodeRole::Harmonic)) {
        role[idx] = uint8_t(NodeRole::Boundary);
        values[idx] = mean;
      }
    }
  return harmonic_solve(mask.box, mask.level, role, values);
}

// Harmonic replacement in the collar: F-tilde = F outside K_delta exactly,
// discrete-harmonic across the collar (including K's pixels) inside.
inline HarmonicField smooth_in_collar(const HarmonicField& f, const Collar& collar) {
  int N = f.n();
  size_t total = size_t(N) * N;
  if (collar.nodes.size() != total)
    throw ParameterError("smooth_in_collar: collar size mismatch");
  for (int k = 0; k < N; ++k)
    for (auto [i, j] : {std::pair{k, 0}, {k, N - 1}, {0, k}, {N - 1, k}})
      if (collar.nodes[size_t(j) * N + i])
        throw GeometryError("collar touches the box boundary");
  std::vector<uint8_t> role(total);
  for (size_t k = 0; k < total; ++k)
    role[k] = collar.nodes[k] ? uint8_t(NodeRole::Harmonic) : uint8_t(NodeRole::Boundary);
  return harmonic_solve(f.box, f.level, role, f.values);
}

// ---------------------------------------------------------------------------
// Removability experiment
// ---------------------------------------------------------------------------

struct RemovabilityReport {
  std::vector<int> n_list;
  std::vector<double> deltas;
  std::vector<double> collar_energy_smooth;    // over K_delta
  std::vector<double> collar_energy_original;  // over K_{4 delta} \ K
  std::vector<double> global_energy_smooth;
  std::vector<double> verdict_gap;     // |global_smooth - offK| / offK
  std::vector<double> smoothing_ratio;  // collar_smooth / collar_original
  double offK_energy{0.0};
};

inline RemovabilityReport removability_report(const CompactSetMask& mask,
                                              const TraceSpec& spec,
                                              const std::vector<int>& n_list, uint64_t seed) {
  if (n_list.empty() || !std::is_sorted(n_list.begin(), n_list.end()))
    throw ParameterError("n_list must be nonempty and increasing");
  double h = mask.pixel();
  if (1.0 / n_list.back() < 4.0 * h)
    throw ParameterError("finest collar 1/n must span at least 4 pixels");

  HarmonicField F = build_test_function(mask, spec, seed);
  DistanceField df = distance_transform(mask);
  int N = mask.n();
  size_t total = size_t(N) * N;

  std::vector<uint8_t> off_k(total), everything(total, 1);
  for (size_t k = 0; k < total; ++k) off_k[k] = mask.bits[k] ? 0 : 1;

  RemovabilityReport rep;
  rep.n_list = n_list;
  rep.offK_energy = dirichlet_energy(F, off_k);

  for (int n : n_list) {
    double delta = 1.0 / n;
    Collar collar = build_collar(df, delta);
    HarmonicField Ft = smooth_in_collar(F, collar);
    std::vector<uint8_t> window(total);
    for (size_t k = 0; k < total; ++k)
      window[k] = (df.values[k] <= 4.0 * delta && !mask.bits[k]) ? 1 : 0;
    double cs = dirichlet_energy(Ft, collar.nodes);
    double co = dirichlet_energy(F, window);
    double gs = dirichlet_energy(Ft, everything);
    rep.deltas.push_back(delta);
    rep.collar_energy_smooth.push_back(cs);
    rep.collar_energy_original.push_back(co);
    rep.global_energy_smooth.push_back(gs);
    rep.verdict_gap.push_back(rep.offK_energy > 0.0
                                  ? std::abs(gs - rep.offK_energy) / rep.offK_energy
                                  : 0.0);
    rep.smoothing_ratio.push_back(co > 0.0 ? cs / co : 0.0);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Positive-area non-removability witness
// ---------------------------------------------------------------------------

struct WitnessReport {
  std::vector<int> n_values;
  std::vector<double> sup_norms;
  std::vector<double> offk_energies;
  std::vector<double> dbar_energies;  // = |K| identically, by construction
  double area{0.0};
  bool valid{false};
};

inline WitnessReport nonremovability_witness(const CompactSetMask& mask,
                                             const std::vector<int>& n_list) {
  double box_area = mask.box.side() * mask.box.side();
  double area = mask.area();
  if (area < 0.05 * box_area)
    throw ParameterError("witness inapplicable: mask area below 5% of the box");
  for (int n : n_list)
    if (n < 4 || n > 64) throw ParameterError("witness n values must lie in [4, 64]");

  int N = mask.n();
  double h = mask.pixel();
  size_t total = size_t(N) * N;

  WitnessReport rep;
  rep.n_values = n_list;
  rep.area = area;
  for (int n : n_list) {
    ComplexField dens;
    dens.box = mask.box;
    dens.level = mask.level;
    dens.values.assign(total, 0.0);
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i)
        if (mask.at(i, j)) {
          Vec2 z = mask.pixel_center(i, j);
          dens.values[size_t(j) * N + i] =
              std::polar(1.0, double(n) * (z.real() + z.imag()));
        }
    ComplexField F = cauchy_transform(dens);
    double sup = 0.0;
    for (auto& v : F.values) sup = std::max(sup, std::abs(v));
    double offk = 0.0;
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) {
        if (mask.at(i, j)) continue;
        size_t k = size_t(j) * N + i;
        if (i + 1 < N && !mask.at(i + 1, j)) offk += std::norm(F.values[k + 1] - F.values[k]);
        if (j + 1 < N && !mask.at(i, j + 1)) offk += std::norm(F.values[k + N] - F.values[k]);
      }
    // dbar F = density pointwise, so the dbar energy is |density|^2 summed,
    // i.e. exactly the occupied area: h^2 per occupied pixel
    double dbar = double(mask.count()) * h * h;
    rep.sup_norms.push_back(sup);
    rep.offk_energies.push_back(offk);
    rep.dbar_energies.push_back(dbar);
  }
  rep.valid = true;
  for (size_t k = 1; k < rep.sup_norms.size(); ++k)
    if (rep.sup_norms[k] >= rep.sup_norms[k - 1] ||
        rep.offk_energies[k] >= rep.offk_energies[k - 1])
      rep.valid = false;
  return rep;
}

}  // namespace johnforge
