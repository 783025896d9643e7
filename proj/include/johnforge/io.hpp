#pragma once

#include <json.hpp>

#include <filesystem>
#include <fstream>

#include "johnforge/removability.hpp"
#include "johnforge/simplify.hpp"

namespace johnforge {

using nlohmann::json;

inline constexpr const char* kSchema = "johnforge/1";

// Write via a temp file and rename, so readers never see a partial file.
inline void atomic_write(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  std::filesystem::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParameterError("cannot open " + tmp.string() + " for writing");
    out << content;
  }
  std::filesystem::rename(tmp, p);
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline json box_to_json(const Box& b) {
  return json{{"cx", b.center.real()}, {"cy", b.center.imag()}, {"half_side", b.half_side}};
}

inline Box box_from_json(const json& j) {
  Box b;
  b.center = {j.at("cx").get<double>(), j.at("cy").get<double>()};
  b.half_side = j.at("half_side").get<double>();
  b.validate();
  return b;
}

inline json mask_to_json(const CompactSetMask& m) {
  // row-major run lengths, alternating empty/occupied, starting with empty
  std::vector<int64_t> rle;
  uint8_t cur = 0;
  int64_t run = 0;
  for (uint8_t b : m.bits) {
    if (b == cur) ++run;
    else {
      rle.push_back(run);
      cur = b;
      run = 1;
    }
  }
  rle.push_back(run);
  return json{{"schema", kSchema}, {"kind", "mask"},      {"box", box_to_json(m.box)},
              {"level", m.level},  {"shape_spec", m.shape_spec}, {"rle", rle}};
}

inline CompactSetMask mask_from_json(const json& j) {
  CompactSetMask m;
  m.box = box_from_json(j.at("box"));
  m.level = j.at("level").get<int>();
  m.shape_spec = j.at("shape_spec").get<std::string>();
  size_t total = size_t(m.n()) * m.n();
  m.bits.assign(total, 0);
  size_t pos = 0;
  uint8_t cur = 0;
  for (int64_t run : j.at("rle")) {
    if (pos + size_t(run) > total) throw ParameterError("mask rle overruns the grid");
    if (cur) std::fill(m.bits.begin() + pos, m.bits.begin() + pos + run, uint8_t(1));
    pos += size_t(run);
    cur ^= 1;
  }
  if (pos != total) throw ParameterError("mask rle does not fill the grid");
  m.check_invariants();
  return m;
}

inline json whitney_to_json(const WhitneyDecomposition& w) {
  json squares = json::array();
  for (auto& q : w.squares)
    squares.push_back(json::array({q.level, q.i, q.j, q.residual ? 1 : 0}));
  json adj = json::array();
  for (size_t v = 0; v < w.adjacency.size(); ++v)
    for (auto& e : w.adjacency[v])
      if (e.other > int32_t(v)) adj.push_back(json::array({int64_t(v), e.other, e.face ? 1 : 0}));
  return json{{"schema", kSchema},
              {"kind", "whitney"},
              {"mask", mask_to_json(w.mask)},
              {"deepest_level", w.deepest_level},
              {"squares", squares},
              {"adjacency", adj}};
}

// The decomposition is a pure function of (mask, deepest_level); rebuild it
// so loaded artifacts carry the full owner/distance state.
inline WhitneyDecomposition whitney_from_json(const json& j) {
  CompactSetMask m = mask_from_json(j.at("mask"));
  WhitneyDecomposition w = whitney(m, j.at("deepest_level").get<int>());
  if (j.contains("squares") && j.at("squares").size() != w.squares.size())
    throw ParameterError("whitney artifact inconsistent with its mask");
  return w;
}

inline json john_to_json(const JohnEstimate& e) {
  json samples = json::array();
  for (auto& s : e.samples) {
    json poly = json::array();
    for (auto& z : s.arc) poly.push_back(json::array({z.real(), z.imag()}));
    samples.push_back(json{{"z1", json::array({s.z1.real(), s.z1.imag()})},
                           {"epsilon", s.epsilon},
                           {"polyline", poly}});
  }
  json center = nullptr;
  if (e.center) center = json::array({e.center->real(), e.center->imag()});
  return json{{"schema", kSchema},
              {"kind", "john_estimate"},
              {"center", center},
              {"epsilon_lower", e.epsilon_lower},
              {"samples", samples}};
}

inline json graph_to_json(const JohnGraph& g) {
  json edges = json::array();
  json rho = json::array();
  json verts = json::array();
  for (size_t v = 0; v < g.rho.size(); ++v) {
    if (g.rho[v] < 0) continue;
    verts.push_back(int64_t(v));
    rho.push_back(g.rho[v]);
    if (g.parent[v] >= 0) edges.push_back(json::array({int64_t(v), int64_t(g.parent[v])}));
  }
  json layers = json::array();
  for (auto& f : g.layers)
    layers.push_back(json{{"n", f.n}, {"size", int64_t(f.members.size())}});
  return json{{"schema", kSchema}, {"kind", "graph"},
              {"A", g.A},          {"n_max", g.n_max},
              {"root", g.root},    {"vertices", verts},
              {"edges", edges},    {"rho", rho},
              {"layers", layers},  {"measured_C", g.measured_C},
              {"max_degree", g.max_degree}};
}

inline json slits_to_json(const SlitSet& s) {
  json gates = json::array();
  for (auto& g : s.gates)
    gates.push_back(json::array({g.square, g.other, g.face, g.a, g.b}));
  json arcs = json::array();
  for (auto& a : s.arcs) arcs.push_back(json::array({a.square, a.face, a.a, a.b}));
  return json{{"delta", s.delta}, {"special", s.special}, {"gates", gates}, {"arcs", arcs}};
}

inline json verification_to_json(const VerificationReport& r) {
  json witness = nullptr;
  if (r.witness) witness = json::array({r.witness->first, r.witness->second});
  return json{{"connected", r.connected},
              {"simply_connected", r.simply_connected},
              {"boundary_contained", r.boundary_contained},
              {"witness", witness},
              {"epsilon_omega", r.epsilon_omega},
              {"epsilon_omega_hat", r.epsilon_omega_hat}};
}

inline json capacity_to_json(const CapacityEstimate& c) {
  return json{{"schema", kSchema}, {"kind", "capacity"},    {"value", c.value},
              {"method", c.method}, {"n_points", c.n_points}, {"energy", c.energy},
              {"degenerate", c.degenerate}};
}

inline json wos_to_json(const WosEstimate& w) {
  return json{{"schema", kSchema},
              {"kind", "harmonic_measure"},
              {"p", w.p},
              {"std_error", w.std_error},
              {"n_walks", w.n_walks},
              {"exhausted_fraction", w.exhausted_fraction}};
}

inline json beurling_to_json(const BeurlingReport& b) {
  json arcs = json::array();
  for (auto& r : b.arcs)
    arcs.push_back(json{{"arc_start", r.arc_start},
                        {"arc_width", r.arc_width},
                        {"cap_E", r.cap_E},
                        {"cap_fE", r.cap_fE},
                        {"ratio", r.ratio}});
  json lams = json::array();
  for (auto& r : b.lambdas)
    lams.push_back(json{{"lambda", r.lambda}, {"cap", r.cap}, {"product", r.product}});
  return json{{"schema", kSchema}, {"kind", "beurling"},      {"map", b.map},
              {"arcs", arcs},      {"min_ratio", b.min_ratio}, {"lambdas", lams},
              {"max_product", b.max_product}};
}

inline json removability_to_json(const RemovabilityReport& r) {
  return json{{"schema", kSchema},
              {"kind", "removability"},
              {"n_list", r.n_list},
              {"deltas", r.deltas},
              {"collar_energy_smooth", r.collar_energy_smooth},
              {"collar_energy_original", r.collar_energy_original},
              {"global_energy_smooth", r.global_energy_smooth},
              {"verdict_gap", r.verdict_gap},
              {"smoothing_ratio", r.smoothing_ratio},
              {"offK_energy", r.offK_energy}};
}

inline json witness_to_json(const WitnessReport& r) {
  return json{{"schema", kSchema},        {"kind", "witness"},
              {"n_values", r.n_values},   {"sup_norms", r.sup_norms},
              {"offk_energies", r.offk_energies}, {"dbar_energies", r.dbar_energies},
              {"area", r.area},           {"valid", r.valid}};
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

namespace detail {

struct SvgFrame {
  Box box;
  double scale;
  explicit SvgFrame(const Box& b) : box(b), scale(1000.0 / b.side()) {}
  double x(double wx) const { return (wx - box.lo().real()) * scale; }
  double y(double wy) const { return 1000.0 - (wy - box.lo().imag()) * scale; }
};

}  // namespace detail

inline std::string svg_whitney(const WhitneyDecomposition& w,
                               const JohnArcCertificate* worst_arc = nullptr) {
  detail::SvgFrame fr(w.mask.box);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n";
  os << "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
  for (auto& q : w.squares) {
    double s = q.side(w.mask.box) * fr.scale;
    Vec2 c = q.center(w.mask.box);
    os << "<rect x=\"" << fr.x(c.real()) - s / 2 << "\" y=\"" << fr.y(c.imag()) - s / 2
       << "\" width=\"" << s << "\" height=\"" << s
       << "\" fill=\"#dddddd\" stroke=\"hsl(" << (q.level * 35) % 360
       << ",60%,40%)\" stroke-width=\"" << (q.residual ? 0.3 : 0.6) << "\"/>\n";
  }
  int N = w.n();
  double px = w.mask.pixel() * fr.scale;
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i)
      if (w.mask.at(i, j)) {
        Vec2 c = w.mask.pixel_center(i, j);
        os << "<rect x=\"" << fr.x(c.real()) - px / 2 << "\" y=\"" << fr.y(c.imag()) - px / 2
           << "\" width=\"" << px << "\" height=\"" << px << "\" fill=\"black\"/>\n";
      }
  if (worst_arc && worst_arc->arc.size() > 1) {
    os << "<polyline fill=\"none\" stroke=\"orange\" stroke-width=\"2\" points=\"";
    for (auto& z : worst_arc->arc) os << fr.x(z.real()) << "," << fr.y(z.imag()) << " ";
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

inline std::string svg_simplified(const SimplifiedDomain& s) {
  const auto& w = s.base;
  detail::SvgFrame fr(w.mask.box);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n";
  os << "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
  for (auto& q : w.squares) {
    double sd = q.side(w.mask.box) * fr.scale;
    Vec2 c = q.center(w.mask.box);
    os << "<rect x=\"" << fr.x(c.real()) - sd / 2 << "\" y=\"" << fr.y(c.imag()) - sd / 2
       << "\" width=\"" << sd << "\" height=\"" << sd
       << "\" fill=\"#eeeeee\" stroke=\"#bbbbbb\" stroke-width=\"0.4\"/>\n";
  }
  // tree edges blue
  for (size_t v = 0; v < w.squares.size(); ++v) {
    int32_t p = s.graph.parent[v];
    if (p < 0) continue;
    Vec2 a = w.squares[v].center(w.mask.box), b = w.squares[p].center(w.mask.box);
    os << "<line x1=\"" << fr.x(a.real()) << "\" y1=\"" << fr.y(a.imag()) << "\" x2=\""
       << fr.x(b.real()) << "\" y2=\"" << fr.y(b.imag())
       << "\" stroke=\"blue\" stroke-width=\"0.8\"/>\n";
  }
  // slit arcs red, gates white
  double hf = w.mask.box.side() / s.nf();
  Vec2 lo = w.mask.box.lo();
  auto face_line = [&](int32_t sq, int face, int a, int b, const char* color, double wd) {
    const auto& q = w.squares[sq];
    int sp = q.side_px(w.mask.level) * s.refine;
    double fx0, fy0, fx1, fy1;
    if (face <= 1) {
      double X = lo.real() + (face == 0 ? (q.i * sp + sp) : q.i * sp) * hf;
      fx0 = fx1 = X;
      fy0 = lo.imag() + a * hf;
      fy1 = lo.imag() + b * hf;
    } else {
      double Y = lo.imag() + (face == 2 ? (q.j * sp + sp) : q.j * sp) * hf;
      fy0 = fy1 = Y;
      fx0 = lo.real() + a * hf;
      fx1 = lo.real() + b * hf;
    }
    os << "<line x1=\"" << fr.x(fx0) << "\" y1=\"" << fr.y(fy0) << "\" x2=\"" << fr.x(fx1)
       << "\" y2=\"" << fr.y(fy1) << "\" stroke=\"" << color << "\" stroke-width=\"" << wd
       << "\"/>\n";
  };
  for (auto& a : s.slits.arcs) face_line(a.square, a.face, a.a, a.b, "red", 1.2);
  for (auto& g : s.slits.gates) face_line(g.square, g.face, g.a, g.b, "white", 1.4);
  // K black
  int N = w.n();
  double px = w.mask.pixel() * fr.scale;
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i)
      if (w.mask.at(i, j)) {
        Vec2 c = w.mask.pixel_center(i, j);
        os << "<rect x=\"" << fr.x(c.real()) - px / 2 << "\" y=\"" << fr.y(c.imag()) - px / 2
           << "\" width=\"" << px << "\" height=\"" << px << "\" fill=\"black\"/>\n";
      }
  os << "</svg>\n";
  return os.str();
}

}  // namespace johnforge
