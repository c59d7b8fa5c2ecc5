#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "widthlab/coincidence.hpp"
#include "widthlab/geomlemmas.hpp"
#include "widthlab/reporting.hpp"
#include "widthlab/serialization.hpp"
#include "widthlab/waists.hpp"
#include "widthlab/widths.hpp"

using namespace widthlab;
using nlohmann::json;

namespace {

struct Options {
  std::uint64_t seed = 1;
  double tol = 1e-6;
  bool tol_set = false;
  // --tol pins residual checks; sampled floor checks need a looser slack
  // unless the user overrides it.
  double slack() const { return tol_set ? tol : 0.05; }
  int mesh_level = 4;
  int samples = 2000;
  std::string json_path, csv_path, plot_path;
  std::string map_spec;
  std::string space = "S2";
  int n = 2;          // shchepin dimension
  double delta = 1.0;
  std::string bound = "none";
  std::string floor = "auto";
  std::string lemma = "all";
  long trials = 10000;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--seed", opt.seed, "random seed");
  cmd->add_option("--tol", opt.tol, "tolerance / floor slack")
      ->each([&opt](const std::string&) { opt.tol_set = true; });
  cmd->add_option("--mesh-level", opt.mesh_level, "mesh refinement level");
  cmd->add_option("--samples", opt.samples, "target sample count");
  cmd->add_option("--json", opt.json_path, "write the JSON report here");
  cmd->add_option("--csv", opt.csv_path, "write the CSV body here");
  cmd->add_option("--plot", opt.plot_path, "write an SVG plot here");
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw MalformedInput("cannot write " + path);
  out << body;
}

void emit(const Report& rep, const Options& opt) {
  std::string body = rep.dump();
  if (!opt.json_path.empty())
    write_file(opt.json_path, body);
  else
    std::cout << body;
}

json config_json(const Options& opt) {
  json c;
  c["seed"] = opt.seed;
  c["tol"] = opt.tol;
  c["mesh_level"] = opt.mesh_level;
  c["samples"] = opt.samples;
  if (!opt.map_spec.empty()) c["map"] = opt.map_spec;
  c["space"] = opt.space;
  return c;
}

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

// Builtin PL families plus FILE.json; analytic specs are discretized.
PLMap resolve_pl_map(const Options& opt) {
  const std::string& s = opt.map_spec;
  if (s.empty()) throw MalformedInput("--map is required");
  if (ends_with(s, ".json")) return plmap_from_file(s);
  if (s == "shchepin") return shchepin_map(opt.n);
  auto num_after = [&](const char* head) -> std::optional<long> {
    std::string h = std::string(head) + ":";
    if (s.rfind(h, 0) != 0) return std::nullopt;
    return std::stol(s.substr(h.size()));
  };
  if (auto d = num_after("wrap")) return pl_wrap_map(8, static_cast<int>(*d));
  if (s == "fold") return pl_fold_s2(opt.mesh_level);
  if (auto sd = num_after("tripod"))
    return pl_random_tripod_map(opt.mesh_level, static_cast<std::uint64_t>(*sd));
  if (s.rfind("walk:", 0) == 0) {
    auto rest = s.substr(5);
    auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw MalformedInput("walk spec is walk:DEGREE:SEED");
    return pl_random_even_walk(8, std::stoi(rest.substr(0, colon)),
                               std::stoull(rest.substr(colon + 1)));
  }
  ModelSpace space = ModelSpace::parse(opt.space);
  return discretize(parse_analytic(s, space), opt.mesh_level);
}

AnalyticMap resolve_analytic(const Options& opt) {
  if (opt.map_spec.empty()) throw MalformedInput("--map is required");
  return parse_analytic(opt.map_spec, ModelSpace::parse(opt.space));
}

// Minimal SVG polyline of (x, y) samples.
std::string svg_profile(const std::vector<double>& xs,
                        const std::vector<double>& ys, const std::string& label) {
  const double W = 640, H = 360, pad = 40;
  double xmin = xs.front(), xmax = xs.front(), ymin = 0, ymax = 1e-12;
  for (double x : xs) { xmin = std::min(xmin, x); xmax = std::max(xmax, x); }
  for (double y : ys) ymax = std::max(ymax, y);
  if (xmax == xmin) xmax = xmin + 1;
  std::string pts;
  char buf[64];
  for (size_t i = 0; i < xs.size(); ++i) {
    double px = pad + (xs[i] - xmin) / (xmax - xmin) * (W - 2 * pad);
    double py = H - pad - (ys[i] - ymin) / (ymax - ymin) * (H - 2 * pad);
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px, py);
    pts += buf;
  }
  std::string svg = "<svg xmlns='http://www.w3.org/2000/svg' width='640' height='360'>\n";
  svg += "<rect width='640' height='360' fill='white'/>\n";
  svg += "<polyline fill='none' stroke='steelblue' stroke-width='1.5' points='" +
         pts + "'/>\n";
  svg += "<text x='20' y='20' font-size='14'>" + label + "</text>\n</svg>\n";
  return svg;
}

std::vector<double> linspace(double a, double b, int k) {
  std::vector<double> out(k);
  for (int i = 0; i < k; ++i) out[i] = a + (b - a) * i / (k - 1);
  return out;
}

int cmd_gen_complex(const Options& opt) {
  ModelSpace space = ModelSpace::parse(opt.space);
  ComplexPtr K;
  switch (space.kind) {
    case SpaceKind::RoundSphere:
      K = cross_polytope_sphere(space.n, opt.mesh_level);
      break;
    case SpaceKind::EuclideanBall:
      K = simplex_ball(space.n, opt.mesh_level);
      break;
    case SpaceKind::FlatTorus:
      K = flat_torus(std::max(1, opt.mesh_level));
      break;
    default:
      throw MalformedInput("gen-complex supports S1..S3, B2, B3, T2");
  }
  json j = complex_to_json(*K);
  if (!opt.json_path.empty())
    write_file(opt.json_path, j.dump(2) + "\n");
  else
    std::cout << j.dump(2) << "\n";
  std::fprintf(stderr, "%s: %d vertices, %d top simplices\n",
               opt.space.c_str(), static_cast<int>(K->vertices.size()),
               K->count(K->dim));
  return 0;
}

int cmd_width(const Options& opt) {
  PLMap f = resolve_pl_map(opt);
  WidthReport w = map_width(f, opt.samples, 3, opt.seed);
  Report rep;
  rep.config = config_json(opt);
  rep.config["bound"] = opt.bound;
  double bound = 0;
  bool pass = true;
  if (opt.bound != "none") {
    BoundKind kind = opt.bound == "rho"    ? BoundKind::Rho
                     : opt.bound == "kappa" ? BoundKind::Kappa
                                            : BoundKind::SphereSimplex;
    if (opt.bound != "rho" && opt.bound != "kappa" &&
        opt.bound != "sphere-simplex")
      throw MalformedInput("--bound must be rho, kappa, sphere-simplex or none");
    bound = bound_value(f.source->space, kind);
    pass = w.lower >= bound - opt.slack();
    if (!pass)
      rep.warnings.push_back("width lower bound fell below the floor: harness "
                             "or mesh bug, not a counterexample");
  }
  json row = width_report_json(w);
  row["bound"] = bound;
  row["pass"] = pass;
  row["tolerance"] = opt.slack();
  rep.results.push_back(row);
  if (!opt.csv_path.empty()) write_file(opt.csv_path, width_csv({w}, bound, opt.slack()));
  if (!opt.plot_path.empty() && !f.target_is_complex() && f.target_ambient() == 1) {
    // width landscape: fiber diameter along the image interval
    double lo = kInf, hi = -kInf;
    for (const Vec& q : f.vertex_images) {
      lo = std::min(lo, q[0]);
      hi = std::max(hi, q[0]);
    }
    auto xs = linspace(lo + 1e-4, hi - 1e-4, 160);
    std::vector<double> ys;
    for (double x : xs) ys.push_back(fiber_diameter(f, Vec{x}, nullptr, opt.seed));
    write_file(opt.plot_path, svg_profile(xs, ys, "fiber diameter vs target"));
  }
  emit(rep, opt);
  return pass ? 0 : 1;
}

int cmd_waist(const Options& opt) {
  PLMap f = resolve_pl_map(opt);
  FloorKind kind;
  if (opt.floor == "pi")
    kind = FloorKind::PiPolyhedral;
  else if (opt.floor == "2kappa")
    kind = FloorKind::TwoKappa;
  else if (opt.floor == "2pi")
    kind = FloorKind::TwoPiManifold;
  else if (opt.floor == "auto") {
    if (f.source->space.kind != SpaceKind::RoundSphere)
      kind = FloorKind::TwoKappa;
    else
      kind = f.target_is_complex() ? FloorKind::PiPolyhedral
                                   : FloorKind::TwoPiManifold;
  } else {
    throw MalformedInput("--floor must be pi, 2kappa, 2pi or auto");
  }
  WaistReport w = waist_check(f, kind, opt.samples, opt.seed, opt.slack());
  Report rep;
  rep.config = config_json(opt);
  rep.config["floor"] = opt.floor;
  rep.results.push_back(waist_report_json(w));
  if (!w.pass)
    rep.warnings.push_back("waist floor violated: harness or mesh bug, not a "
                           "counterexample");
  if (!opt.csv_path.empty()) write_file(opt.csv_path, waist_csv({w}));
  if (!opt.plot_path.empty() && !f.target_is_complex() && f.target_ambient() == 1) {
    double lo = kInf, hi = -kInf;
    for (const Vec& q : f.vertex_images) {
      lo = std::min(lo, q[0]);
      hi = std::max(hi, q[0]);
    }
    auto xs = linspace(lo + 1e-4, hi - 1e-4, 160);
    std::vector<double> ys;
    std::mt19937_64 rng(opt.seed);
    for (double x : xs) {
      try {
        ys.push_back(fiber_length(f, make_regular(f, Vec{x}, rng)).total);
      } catch (const Error&) {
        ys.push_back(0);
      }
    }
    write_file(opt.plot_path, svg_profile(xs, ys, "fiber length vs target"));
  }
  emit(rep, opt);
  return w.pass ? 0 : 1;
}

json pair_json(const CoincidencePair& p) {
  json j;
  j["x"] = p.x.to_std();
  j["y"] = p.y.to_std();
  j["distance"] = p.distance;
  j["residual"] = p.residual;
  j["method"] = p.method;
  j["evaluations"] = p.evaluations;
  j["provenance"] = "search";
  return j;
}

int cmd_bu_pair(const Options& opt) {
  AnalyticMap f = resolve_analytic(opt);
  Report rep;
  rep.config = config_json(opt);
  bool pass = true;
  try {
    CoincidencePair p = borsuk_ulam_pair(f, opt.tol, 200000, opt.seed);
    json row = pair_json(p);
    row["pass"] = true;
    rep.results.push_back(row);
  } catch (const BudgetExhausted& e) {
    pass = false;
    rep.warnings.push_back("search budget exhausted; best residual " +
                           format_number(e.best_residual));
  }
  emit(rep, opt);
  return pass ? 0 : 1;
}

int cmd_hopf_pair(const Options& opt) {
  AnalyticMap f = resolve_analytic(opt);
  Report rep;
  rep.config = config_json(opt);
  rep.config["delta"] = opt.delta;
  bool pass = true;
  try {
    CoincidencePair p = hopf_pair(f, opt.delta, opt.tol, 400000, opt.seed);
    json row = pair_json(p);
    row["delta"] = opt.delta;
    row["pass"] = std::fabs(p.distance - opt.delta) <= 1e-6;
    pass = row["pass"];
    rep.results.push_back(row);
  } catch (const BudgetExhausted& e) {
    pass = false;
    rep.warnings.push_back("search budget exhausted; best residual " +
                           format_number(e.best_residual));
  }
  emit(rep, opt);
  return pass ? 0 : 1;
}

int cmd_cycles(const Options& opt) {
  PLMap f = resolve_pl_map(opt);
  Report rep;
  rep.config = config_json(opt);
  rep.config["delta"] = opt.delta;
  int resampled = 0;
  int xi = canonical_class_eval(f, std::max(1, opt.samples), opt.seed, &resampled);
  json row;
  row["canonical_class"] = xi;
  row["probes"] = opt.samples;
  row["resampled"] = resampled;
  bool pass = xi == 1;
  if (!pass)
    rep.warnings.push_back("canonical class evaluated to " + std::to_string(xi));
  try {
    ParityCertificate cert = parity_certificate(f, opt.delta,
                                                std::max(8, opt.samples / 8),
                                                opt.seed);
    json c;
    c["kind"] = cert.kind == ParityCertificate::DeltaPair ? "delta-pair"
                : cert.kind == ParityCertificate::ConstantOddParity
                    ? "constant-odd-parity"
                    : "constant-even-parity";
    c["samples_used"] = cert.samples_used;
    if (cert.kind == ParityCertificate::DeltaPair) {
      c["x1"] = cert.x1.to_std();
      c["x2"] = cert.x2.to_std();
      c["distance"] = cert.distance;
    } else {
      c["parity"] = cert.parity;
    }
    row["parity_certificate"] = c;
  } catch (const Error& e) {
    rep.warnings.push_back(std::string("parity certificate: ") + e.what());
  }
  rep.results.push_back(row);
  emit(rep, opt);
  return pass ? 0 : 1;
}

int cmd_lemmas(const Options& opt) {
  Report rep;
  rep.config = config_json(opt);
  rep.config["trials"] = opt.trials;
  rep.config["lemma"] = opt.lemma;
  std::vector<LemmaVerdict> verdicts;
  auto want = [&](const char* name) {
    return opt.lemma == "all" || opt.lemma == name;
  };
  if (want("hemisphere")) verdicts.push_back(hemisphere_campaign(opt.trials, opt.seed));
  if (want("median")) verdicts.push_back(median_campaign(opt.trials, opt.seed));
  if (want("quarter-ball"))
    verdicts.push_back(quarter_ball_campaign(opt.trials, opt.seed));
  if (want("convexity"))
    verdicts.push_back(convexity_campaign(std::max(1l, opt.trials / 100), 100,
                                          opt.seed));
  if (verdicts.empty())
    throw MalformedInput("--lemma must be hemisphere, median, quarter-ball, "
                         "convexity or all");
  bool pass = true;
  for (const LemmaVerdict& v : verdicts) {
    json row;
    row["lemma"] = v.lemma;
    row["trials"] = v.trials;
    row["failures"] = v.failures;
    row["worst_margin"] = v.worst_margin;
    row["worst_case"] = v.worst_case;
    row["seed"] = opt.seed;
    rep.results.push_back(row);
    if (v.failures > 0) {
      pass = false;
      rep.warnings.push_back(v.lemma + " campaign failed " +
                             std::to_string(v.failures) + " trials");
    }
  }
  emit(rep, opt);
  return pass ? 0 : 1;
}

int cmd_probe(const Options& opt) {
  PLMap f = resolve_pl_map(opt);
  ConjectureWitness w = conjecture_probe(f, opt.samples, opt.slack(), opt.seed);
  Report rep;
  rep.config = config_json(opt);
  json row;
  row["map_id"] = f.id;
  row["cap_radius"] = w.cap_radius;
  row["evades_half_spheres"] = w.evades_half_spheres;
  row["witness_target"] = w.target.to_std();
  row["component_length"] = w.component.length;
  row["component_closed"] = w.component.closed;
  row["samples"] = w.samples;
  row["seed"] = w.seed;
  row["provenance"] = "empirical evidence only; the conjecture stays open";
  rep.results.push_back(row);
  if (!w.evades_half_spheres)
    rep.warnings.push_back("no equator-evading component found at this "
                           "sampling density");
  emit(rep, opt);
  return 0;  // evidence, never a verdict
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"width, waist and coincidence experiments on model spaces"};
  app.require_subcommand(1);
  Options opt;

  auto* gen = app.add_subcommand("gen-complex", "emit a triangulated model space");
  gen->add_option("--space", opt.space, "model space name (S1..S3, B2, B3, T2)");
  add_common(gen, opt);

  auto* width = app.add_subcommand("width", "sup of fiber diameters of a map");
  width->add_option("--map", opt.map_spec, "builtin family or FILE.json");
  width->add_option("--space", opt.space, "source space for analytic maps");
  width->add_option("--n", opt.n, "ball dimension for --map shchepin");
  width->add_option("--bound", opt.bound, "floor: rho, kappa, sphere-simplex, none");
  add_common(width, opt);

  auto* waist = app.add_subcommand("waist", "sup of fiber lengths of a codim-1 map");
  waist->add_option("--map", opt.map_spec, "builtin family or FILE.json");
  waist->add_option("--space", opt.space, "source space for analytic maps");
  waist->add_option("--floor", opt.floor, "pi, 2kappa, 2pi or auto");
  add_common(waist, opt);

  auto* bu = app.add_subcommand("bu-pair", "antipodal coincidence pair");
  bu->add_option("--map", opt.map_spec, "analytic family (projection, poly:SEED)");
  bu->add_option("--space", opt.space, "source space");
  add_common(bu, opt);

  auto* hopf = app.add_subcommand("hopf-pair", "equal-image pair at distance delta");
  hopf->add_option("--map", opt.map_spec, "analytic family");
  hopf->add_option("--space", opt.space, "source space");
  hopf->add_option("--delta", opt.delta, "prescribed pair distance");
  add_common(hopf, opt);

  auto* cycles = app.add_subcommand("cycles", "cycle-space invariants of a PL map");
  cycles->add_option("--map", opt.map_spec, "builtin family or FILE.json");
  cycles->add_option("--space", opt.space, "source space for analytic maps");
  cycles->add_option("--delta", opt.delta, "distance for the parity certificate");
  add_common(cycles, opt);

  auto* lemmas = app.add_subcommand("lemmas", "spherical lemma property campaigns");
  lemmas->add_option("--lemma", opt.lemma,
                     "hemisphere, median, quarter-ball, convexity or all");
  lemmas->add_flag_callback("--all", [&] { opt.lemma = "all"; });
  lemmas->add_option("--trials", opt.trials, "trials per campaign");
  add_common(lemmas, opt);

  auto* probe = app.add_subcommand("probe-conjecture",
                                   "hunt for equator-evading fiber components");
  probe->add_option("--map", opt.map_spec, "builtin family or FILE.json");
  probe->add_option("--space", opt.space, "source space for analytic maps");
  add_common(probe, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen_complex(opt);
    if (width->parsed()) return cmd_width(opt);
    if (waist->parsed()) return cmd_waist(opt);
    if (bu->parsed()) return cmd_bu_pair(opt);
    if (hopf->parsed()) return cmd_hopf_pair(opt);
    if (cycles->parsed()) return cmd_cycles(opt);
    if (lemmas->parsed()) return cmd_lemmas(opt);
    if (probe->parsed()) return cmd_probe(opt);
  } catch (const MalformedInput& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
