#include <CLI11.hpp>

#include <iostream>

#include "johnforge/io.hpp"

using namespace johnforge;

namespace {

struct Common {
  double box_cx = 0.0, box_cy = 0.0, box_half = 2.5;
  uint64_t seed = 1;

  Box box() const { return Box{{box_cx, box_cy}, box_half}; }
  void attach(CLI::App* app) {
    app->add_option("--box-cx", box_cx, "box centre x");
    app->add_option("--box-cy", box_cy, "box centre y");
    app->add_option("--box-half", box_half, "box half side");
    app->add_option("--seed", seed, "seed for all randomness");
  }
};

json params_echo(const CLI::App* app) {
  json p = json::object();
  for (const auto* opt : app->get_options()) {
    if (opt->count() == 0 && opt->get_default_str().empty()) continue;
    auto lnames = opt->get_lnames();
    if (lnames.empty()) continue;
    const std::string& name = lnames.front();
    p[name] = opt->count() ? opt->results().front() : opt->get_default_str();
  }
  return p;
}

void emit(const std::string& out_path, json payload, const CLI::App* app) {
  payload["params"] = params_echo(app);
  std::string text = payload.dump(2) + "\n";
  if (out_path.empty()) std::cout << text;
  else atomic_write(out_path, text);
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

TraceSpec parse_trace(const std::string& s) {
  TraceSpec t;
  auto colon = s.find(':');
  t.kind = s.substr(0, colon);
  if (colon != std::string::npos) {
    double v = std::stod(s.substr(colon + 1));
    if (t.kind == "fourier") t.order = int(v);
    else t.value = v;
  }
  return t;
}

json whitney_payload(const WhitneyDecomposition& w) { return whitney_to_json(w); }

int auto_n_max(double A, double h) {
  int n = 0;
  while (std::pow(A, -double(n)) > 4.0 * h && n < 64) ++n;
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"johnforge: Whitney decompositions, John constants, slit surgery, "
               "potential theory and removability experiments on planar compact sets"};
  app.require_subcommand(1);

  try {
    // ----- rasterize ---------------------------------------------------
    auto* c_rast = app.add_subcommand("rasterize", "rasterize a shape to a mask");
    Common g_rast;
    g_rast.attach(c_rast);
    std::string rast_shape, rast_out;
    int rast_level = 9;
    c_rast->add_option("--shape", rast_shape, "shape spec, e.g. disk:0.5")->required();
    c_rast->add_option("--level", rast_level, "dyadic level");
    c_rast->add_option("--out", rast_out, "output JSON path");

    // ----- whitney ------------------------------------------------------
    auto* c_whit = app.add_subcommand("whitney", "Whitney decomposition of the complement");
    Common g_whit;
    g_whit.attach(c_whit);
    std::string whit_shape, whit_out, whit_svg;
    int whit_level = 9, whit_deepest = -1;
    c_whit->add_option("--shape", whit_shape)->required();
    c_whit->add_option("--level", whit_level);
    c_whit->add_option("--deepest", whit_deepest, "deepest square level (default: mask level)");
    c_whit->add_option("--out", whit_out);
    c_whit->add_option("--svg", whit_svg);

    // ----- john-estimate --------------------------------------------------
    auto* c_john = app.add_subcommand("john-estimate", "estimate the John constant");
    Common g_john;
    g_john.attach(c_john);
    std::string john_in, john_shape, john_out, john_svg, john_center;
    int john_level = 9, john_samples = 8;
    c_john->add_option("--in", john_in, "whitney artifact JSON");
    c_john->add_option("--shape", john_shape, "or rasterize this shape");
    c_john->add_option("--level", john_level);
    c_john->add_option("--center", john_center, "x,y interior centre (default: infinity)");
    c_john->add_option("--samples", john_samples);
    c_john->add_option("--out", john_out);
    c_john->add_option("--svg", john_svg);

    // ----- simplify --------------------------------------------------------
    auto* c_simp = app.add_subcommand("simplify", "Whitney graph surgery to a simply "
                                                  "connected subdomain");
    Common g_simp;
    g_simp.attach(c_simp);
    std::string simp_in, simp_shape, simp_out, simp_svg;
    int simp_level = 9, simp_nmax = -1, simp_john_samples = 8;
    double simp_A = 8.0, simp_delta = 0.1;
    c_simp->add_option("--in", simp_in, "whitney artifact JSON");
    c_simp->add_option("--shape", simp_shape);
    c_simp->add_option("--level", simp_level);
    c_simp->add_option("--A", simp_A, "layer constant");
    c_simp->add_option("--n-max", simp_nmax, "layer count (default: auto from pixel size)");
    c_simp->add_option("--delta", simp_delta, "gate width parameter");
    c_simp->add_option("--john-samples", simp_john_samples);
    c_simp->add_option("--out", simp_out);
    c_simp->add_option("--svg", simp_svg);

    // ----- capacity ------------------------------------------------------
    auto* c_cap = app.add_subcommand("capacity", "logarithmic capacity of a shape");
    Common g_cap;
    g_cap.attach(c_cap);
    std::string cap_shape, cap_method = "fekete", cap_out;
    int cap_level = 9, cap_points = 1024;
    c_cap->add_option("--shape", cap_shape)->required();
    c_cap->add_option("--level", cap_level);
    c_cap->add_option("--method", cap_method, "fekete | energy");
    c_cap->add_option("--points", cap_points);
    c_cap->add_option("--out", cap_out);

    // ----- harmonic ---------------------------------------------------------
    auto* c_harm = app.add_subcommand("harmonic", "test function harmonic off K");
    Common g_harm;
    g_harm.attach(c_harm);
    std::string harm_shape, harm_trace = "fourier", harm_out;
    int harm_level = 8;
    c_harm->add_option("--shape", harm_shape)->required();
    c_harm->add_option("--level", harm_level);
    c_harm->add_option("--trace", harm_trace, "constant[:c] | coordinate | fourier[:order]");
    c_harm->add_option("--out", harm_out);

    // ----- measure -----------------------------------------------------------
    auto* c_meas = app.add_subcommand("measure", "harmonic measure by walk-on-spheres");
    Common g_meas;
    g_meas.attach(c_meas);
    std::string meas_shape, meas_out, meas_arc = "0,3.14159265358979323846";
    std::string meas_start = "0,0";
    int meas_level = 9, meas_walks = 100000;
    double meas_shell = 1.5;
    c_meas->add_option("--shape", meas_shape)->required();
    c_meas->add_option("--level", meas_level);
    c_meas->add_option("--arc", meas_arc, "target boundary arc start,width (radians)");
    c_meas->add_option("--start", meas_start, "walk start point x,y");
    c_meas->add_option("--walks", meas_walks);
    c_meas->add_option("--shell", meas_shell, "absorbing shell width in pixels");
    c_meas->add_option("--out", meas_out);

    // ----- removability --------------------------------------------------------
    auto* c_rem = app.add_subcommand("removability", "collar smoothing energy experiment");
    Common g_rem;
    g_rem.attach(c_rem);
    std::string rem_shape, rem_trace = "fourier", rem_out, rem_nlist = "4,8,16,32";
    int rem_level = 10;
    c_rem->add_option("--shape", rem_shape)->required();
    c_rem->add_option("--level", rem_level);
    c_rem->add_option("--trace", rem_trace);
    c_rem->add_option("--n-list", rem_nlist);
    c_rem->add_option("--out", rem_out);

    // ----- witness ----------------------------------------------------------
    auto* c_wit = app.add_subcommand("witness", "positive-area non-removability witness");
    Common g_wit;
    g_wit.attach(c_wit);
    std::string wit_shape = "fat_cantor:0.1", wit_out, wit_nlist = "4,8,16,32";
    int wit_level = 9;
    c_wit->add_option("--shape", wit_shape);
    c_wit->add_option("--level", wit_level);
    c_wit->add_option("--n-list", wit_nlist);
    c_wit->add_option("--out", wit_out);

    // ----- beurling ----------------------------------------------------------
    auto* c_beur = app.add_subcommand("beurling", "capacity distortion under univalent maps");
    Common g_beur;
    g_beur.attach(c_beur);
    std::string beur_map = "koebe", beur_out, beur_lambdas = "1,2,4,8";
    c_beur->add_option("--map", beur_map, "identity | koebe | sqrtslit");
    c_beur->add_option("--lambdas", beur_lambdas);
    c_beur->add_option("--out", beur_out);

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      // exit code 2 for usage problems, 0 for --help
      int code = app.exit(e);
      return code == 0 ? 0 : 2;
    }

    if (*c_rast) {
      auto mask = rasterize(rast_shape, rast_level, g_rast.box());
      emit(rast_out, mask_to_json(mask), c_rast);
    } else if (*c_whit) {
      auto mask = rasterize(whit_shape, whit_level, g_whit.box());
      auto w = whitney(mask, whit_deepest < 0 ? mask.level : whit_deepest);
      if (!whit_svg.empty()) atomic_write(whit_svg, svg_whitney(w));
      emit(whit_out, whitney_payload(w), c_whit);
    } else if (*c_john) {
      WhitneyDecomposition w;
      if (!john_in.empty()) {
        std::ifstream in(john_in);
        if (!in) throw ParameterError("cannot read " + john_in);
        w = whitney_from_json(json::parse(in));
      } else if (!john_shape.empty()) {
        auto mask = rasterize(john_shape, john_level, g_john.box());
        w = whitney(mask, mask.level);
      } else {
        throw ParameterError("john-estimate needs --in or --shape");
      }
      std::optional<Vec2> center;
      if (!john_center.empty() && john_center != "inf") {
        double x, y;
        char comma;
        std::istringstream cs(john_center);
        if (!(cs >> x >> comma >> y)) throw ParameterError("bad --center, expected x,y");
        center = Vec2{x, y};
      }
      auto est = estimate_john_constant(w, center, john_samples, g_john.seed);
      if (!john_svg.empty()) {
        const JohnArcCertificate* worst = nullptr;
        for (auto& s : est.samples)
          if (!worst || s.epsilon < worst->epsilon) worst = &s;
        atomic_write(john_svg, svg_whitney(w, worst));
      }
      emit(john_out, john_to_json(est), c_john);
    } else if (*c_simp) {
      WhitneyDecomposition w;
      if (!simp_in.empty()) {
        std::ifstream in(simp_in);
        if (!in) throw ParameterError("cannot read " + simp_in);
        w = whitney_from_json(json::parse(in));
      } else if (!simp_shape.empty()) {
        auto mask = rasterize(simp_shape, simp_level, g_simp.box());
        w = whitney(mask, mask.level);
      } else {
        throw ParameterError("simplify needs --in or --shape");
      }
      int n_max = simp_nmax >= 0 ? simp_nmax : auto_n_max(simp_A, w.mask.pixel());
      auto graph = build_graph(w, simp_A, n_max);
      auto dom = cut_slits(w, graph, simp_delta);
      auto rep = verify_simplified(dom, simp_john_samples, g_simp.seed);
      if (!simp_svg.empty()) atomic_write(simp_svg, svg_simplified(dom));
      json payload{{"schema", kSchema},
                   {"kind", "simplified"},
                   {"mask", mask_to_json(w.mask)},
                   {"graph", graph_to_json(graph)},
                   {"slits", slits_to_json(dom.slits)},
                   {"verification", verification_to_json(rep)}};
      emit(simp_out, payload, c_simp);
      if (!rep.all_passed()) return 1;
    } else if (*c_cap) {
      auto mask = rasterize(cap_shape, cap_level, g_cap.box());
      auto est = capacity_estimate(mask, cap_method, cap_points, g_cap.seed);
      emit(cap_out, capacity_to_json(est), c_cap);
    } else if (*c_harm) {
      auto mask = rasterize(harm_shape, harm_level, g_harm.box());
      auto f = build_test_function(mask, parse_trace(harm_trace), g_harm.seed);
      std::vector<uint8_t> off_k(f.values.size());
      for (size_t k = 0; k < off_k.size(); ++k) off_k[k] = mask.bits[k] ? 0 : 1;
      double vmin = 1e300, vmax = -1e300;
      for (size_t k = 0; k < f.values.size(); ++k) {
        vmin = std::min(vmin, f.values[k]);
        vmax = std::max(vmax, f.values[k]);
      }
      json payload{{"schema", kSchema},
                   {"kind", "harmonic"},
                   {"residual", f.residual},
                   {"offK_energy", dirichlet_energy(f, off_k)},
                   {"min", vmin},
                   {"max", vmax}};
      emit(harm_out, payload, c_harm);
    } else if (*c_meas) {
      auto mask = rasterize(meas_shape, meas_level, g_meas.box());
      double a0, aw, sx, sy;
      char comma;
      {
        std::istringstream is(meas_arc);
        if (!(is >> a0 >> comma >> aw)) throw ParameterError("bad --arc, expected start,width");
      }
      {
        std::istringstream is(meas_start);
        if (!(is >> sx >> comma >> sy)) throw ParameterError("bad --start, expected x,y");
      }
      int N = mask.n();
      std::vector<uint8_t> target(size_t(N) * N, 0);
      for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i) {
          if (!mask.at(i, j)) continue;
          double th = std::arg(mask.pixel_center(i, j) - mask.box.center);
          double rel = std::fmod(th - a0 + 4.0 * M_PI, 2.0 * M_PI);
          if (rel < aw) target[size_t(j) * N + i] = 1;
        }
      auto est = harmonic_measure_wos(mask, target, {sx, sy}, meas_walks, meas_shell,
                                      g_meas.seed);
      emit(meas_out, wos_to_json(est), c_meas);
    } else if (*c_rem) {
      auto mask = rasterize(rem_shape, rem_level, g_rem.box());
      auto rep = removability_report(mask, parse_trace(rem_trace),
                                     parse_int_list(rem_nlist), g_rem.seed);
      emit(rem_out, removability_to_json(rep), c_rem);
    } else if (*c_wit) {
      auto mask = rasterize(wit_shape, wit_level, g_wit.box());
      auto rep = nonremovability_witness(mask, parse_int_list(wit_nlist));
      emit(wit_out, witness_to_json(rep), c_wit);
    } else if (*c_beur) {
      std::vector<std::pair<double, double>> arcs;
      for (int k = 1; k <= 8; ++k) arcs.push_back({0.0, M_PI * k / 8.0});
      std::vector<double> lambdas;
      for (int v : parse_int_list(beur_lambdas)) lambdas.push_back(double(v));
      auto rep = verify_beurling(beur_map, arcs, lambdas, 512, g_beur.seed);
      emit(beur_out, beurling_to_json(rep), c_beur);
    }
    return 0;
  } catch (const Error& e) {
    json err{{"error", e.kind()}, {"message", e.what()}};
    std::cerr << err.dump() << std::endl;
    return 1;
  } catch (const std::exception& e) {
    json err{{"error", "internal"}, {"message", e.what()}};
    std::cerr << err.dump() << std::endl;
    return 1;
  }
}
