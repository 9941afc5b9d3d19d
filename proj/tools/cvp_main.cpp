// Command line front end: representation loading, verification suites,
// census/sweep orchestration, bound tables and SVG rendering.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cvp/bounds.hpp"
#include "cvp/bulge.hpp"
#include "cvp/entropy.hpp"
#include "cvp/json_io.hpp"
#include "cvp/limitset.hpp"
#include "cvp/reps.hpp"

using namespace cvp;

namespace {

int exit_code_for(const error& e) {
  switch (e.code()) {
    case errc::budget_exceeded:
      return 3;
    case errc::config_error:
    case errc::io_failure:
    case errc::parameter_range:
      return 2;
    default:
      return 1;
  }
}

struct RunManifest {
  std::string command;
  std::string config_hash;
  std::vector<std::pair<std::string, std::string>> outputs;  // path, content hash
  double wall_ms = 0;
};

void write_manifest(const RunManifest& m, const std::string& dir) {
  std::string s = "{\n  \"command\": \"" + m.command + "\",\n";
  s += "  \"config_hash\": \"" + m.config_hash + "\",\n  \"outputs\": [";
  for (size_t i = 0; i < m.outputs.size(); ++i) {
    if (i) s += ", ";
    s += "\n    {\"path\": \"" + m.outputs[i].first + "\", \"hash\": \"" +
         m.outputs[i].second + "\"}";
  }
  s += "\n  ],\n  \"wall_ms\": " + format_double(m.wall_ms) + "\n}\n";
  write_file(dir + "/run.json", s);
}

// Parse `--rep` specs: pants:l1,l2,l3 | torus | genus2 | file:<path.json>.
Representation load_rep(const std::string& spec, const std::string& split) {
  Representation rep;
  if (spec.rfind("pants:", 0) == 0) {
    double l1, l2, l3;
    if (std::sscanf(spec.c_str() + 6, "%lf,%lf,%lf", &l1, &l2, &l3) != 3)
      fail(errc::config_error, "expected pants:l1,l2,l3");
    if (split == "amalgam-demo")
      rep = pants_amalgam_demo({l1, l2, l3});
    else
      rep = fuchsian_pants({l1, l2, l3});
  } else if (spec == "torus") {
    rep = punctured_torus_hnn(square_torus());
  } else if (spec == "genus2") {
    rep = genus2_octagon();
  } else if (spec.rfind("file:", 0) == 0) {
    rep = representation_from_json(read_file(spec.substr(5)));
  } else {
    fail(errc::config_error, "unknown representation spec: " + spec);
  }
  if (!split.empty() && split != "amalgam-demo")
    fail(errc::config_error, "unknown split: " + split);
  return rep;
}

std::vector<double> parse_grid(const std::string& text) {
  // "a:b:step" inclusive grid, or comma list.
  std::vector<double> out;
  double a, b, st;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &a, &b, &st) == 3 && st > 0) {
    for (double s = a; s <= b + 1e-9; s += st) out.push_back(s);
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) fail(errc::config_error, "empty grid spec");
  return out;
}

std::string csv_row(std::initializer_list<double> vals) {
  std::string s;
  bool first = true;
  for (double v : vals) {
    if (!first) s += ",";
    s += format_double(v);
    first = false;
  }
  s += "\n";
  return s;
}

// --- verify: quick property suites per module ------------------------------

struct VerifyReport {
  int passed = 0, failed = 0;
  std::string table;

  void check(const char* module, const char* name, bool ok) {
    char line[160];
    std::snprintf(line, sizeof line, "%-10s %-44s %s\n", module, name, ok ? "PASS" : "FAIL");
    table += line;
    (ok ? passed : failed) += 1;
  }
};

void verify_proj3(VerifyReport& rep) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  auto rnd = [&]() {
    for (;;) {
      Mat3 m;
      for (auto& e : m.m) e = u(rng);
      if (std::fabs(m.det()) > 0.05) return normalize_det1(m.det() > 0 ? m : m * -1.0);
    }
  };
  bool idem = true, conj = true, inv = true, cocycle = true;
  for (int i = 0; i < 50; ++i) {
    Mat3 m = rnd();
    Mat3 once = normalize_det1(m);
    idem = idem && max_abs_diff(once, normalize_det1(once)) == 0.0;
    Mat3 p = rnd();
    Mat3 h = p * Mat3::diag(3.1, 0.9, 1.0 / (3.1 * 0.9)) * p.inverse();
    conj = conj &&
           std::fabs(hilbert_length(h) - hilbert_length(Mat3::diag(3.1, 0.9, 1.0 / 2.79))) < 1e-9;
    inv = inv && std::fabs(hilbert_length(h.inverse()) - hilbert_length(h)) < 1e-9;
  }
  auto pt = [](double t) { return ProjPoint::from(Vec3{t, 0.3 * t - 0.2, 1.0}); };
  for (int i = 0; i < 50 && cocycle; ++i) {
    double x = -0.5 + 0.01 * i, y = x + 0.2, z = y + 0.3;
    double lhs = cross_ratio(pt(-2), pt(x), pt(z), pt(2));
    double rhs =
        cross_ratio(pt(-2), pt(x), pt(y), pt(2)) * cross_ratio(pt(-2), pt(y), pt(z), pt(2));
    cocycle = std::fabs(lhs - rhs) < 1e-10 * lhs;
  }
  rep.check("proj3", "projectivization idempotent", idem);
  rep.check("proj3", "length conjugation/inverse invariant", conj && inv);
  rep.check("proj3", "cross-ratio cocycle", cocycle);
}

void verify_hilbert(VerifyReport& rep) {
  ConvexDomain sq = make_domain({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  bool hand = std::fabs(distance(sq, {0, 0}, {0.5, 0}) - 0.5 * std::log(3.0)) < 1e-12;
  ConvexDomain disc = make_disc(512);
  hand = hand && std::fabs(distance(disc, {0, 0}, {0.5, 0}) - std::atanh(0.5)) < 1e-4;
  rep.check("hilbert", "hand distances (square, disc)", hand);

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0, 1);
  bool mono = true;
  for (int trial = 0; trial < 30 && mono; ++trial) {
    double f = 0.55 + 0.3 * u(rng);
    std::vector<Vec2> inner_vs;
    for (const Vec2& v : disc.vertices) inner_vs.push_back(v * f);
    ConvexDomain inner = make_domain(inner_vs);
    Vec2 x{0.3 * u(rng), -0.3 * u(rng)}, y{-0.2 * u(rng), 0.25 * u(rng)};
    if ((x - y).norm() < 1e-6) continue;
    mono = finsler_norm(disc, {x, {1, 0.3}}) <= finsler_norm(inner, {x, {1, 0.3}}) + 1e-12 &&
           distance(disc, x, y) <= distance(inner, x, y) + 1e-12;
  }
  rep.check("hilbert", "monotonicity under nesting", mono);
}

void verify_group(VerifyReport& rep) {
  bool counts = enumerate_classes(1, 3).size() == 6 && enumerate_classes(2, 2).size() == 12;
  rep.check("group", "class counts", counts);
  Mat3 a = Mat3::diag(3.0, 1.0, 1.0 / 3.0);
  Mat3 p{{1, 0.4, -0.2, 0.3, 1, 0.5, -0.1, 0.2, 1}};
  Mat3 b = normalize_det1(p) * Mat3::diag(2.5, 0.8, 0.5) * normalize_det1(p).inverse();
  Representation fr = make_representation({"a", "b"}, {a, b});
  rep.check("group", "orbit free counts", orbit_ball(fr, 2).size() == 16);
}

void verify_reps(VerifyReport& rep) {
  Representation pants = fuchsian_pants({2, 1.5, 2.5});
  bool lens = std::fabs(hilbert_length(pants.images[0]) - 2.0) < 1e-9 &&
              std::fabs(hilbert_length(evaluate(pants, {1, 2})) - 2.5) < 1e-9;
  rep.check("reps", "pants boundary lengths", lens);
  Mat3 J = klein_conic_form();
  bool conic = true;
  for (const Mat3& g : pants.images)
    conic = conic && max_abs_diff(g.transpose() * J * g, J) < 1e-9;
  rep.check("reps", "conic preserved", conic);
  Representation g2 = genus2_octagon();
  rep.check("reps", "genus2 relator residual",
            max_abs_diff(evaluate(g2, g2.relators[0]), Mat3::identity()) < 1e-8);
  Representation demo = pants_amalgam_demo({2, 2, 2});
  rep.check("reps", "amalgam demo relator residual",
            max_abs_diff(evaluate(demo, demo.relators[0]), Mat3::identity()) < 1e-8);
}

void verify_bulge(VerifyReport& rep) {
  Representation demo = pants_amalgam_demo({2, 2, 2});
  BulgeFrame f = bulge_frame(demo, demo.splitting->gamma);
  bool comm = true;
  for (double s : {0.7, 2.0}) {
    for (double t : {-1.0, 1.3}) {
      Mat3 ts = tau_t(f, t) * o_s(f, s), st = o_s(f, s) * tau_t(f, t);
      comm = comm && max_abs_diff(ts, st) < 1e-10 * std::fmax(1.0, ts.max_abs());
    }
  }
  rep.check("bulge", "tau and O_s commute", comm);
  Representation def = deform(demo, 0.0, 5.0);
  Mat3 g0 = evaluate(demo, demo.splitting->gamma);
  rep.check("bulge", "gamma fixed by deform",
            max_abs_diff(evaluate(def, demo.splitting->gamma), g0) < 1e-10 * g0.max_abs());
  std::vector<double> grid;
  for (double s = 6; s <= 14; s += 2) grid.push_back(s);
  TraceProbe amal = trace_probe(demo, {1}, {3}, grid);
  rep.check("bulge", "amalgam trace rate ~ 1", std::fabs(amal.fitted_rate - 1.0) < 0.02);
  TraceProbe hnn = trace_probe(punctured_torus_hnn(square_torus()), {}, {2}, grid);
  rep.check("bulge", "hnn trace rate ~ 2/3", std::fabs(hnn.fitted_rate - 2.0 / 3.0) < 0.02);
}

void verify_limitset(VerifyReport& rep) {
  Representation pants = fuchsian_pants({2, 2, 2});
  LimitPoints pts = limit_points(pants, 3);
  bool conic = pts.skipped_non_hyperbolic == 0;
  for (const ProjPoint& p : pts.points) {
    Vec3 v = p.v / p.v.norm();
    conic = conic && std::fabs(v.x * v.x + v.y * v.y - v.z * v.z) < 1e-7;
  }
  rep.check("limitset", "fuchsian limit points on conic", conic);
  std::vector<SvgLayer> layers{{"square", {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}, true}};
  rep.check("limitset", "svg deterministic", render_svg(layers) == render_svg(layers));
}

void verify_entropy(VerifyReport& rep) {
  Census synth;
  synth.max_word_len = 1;
  for (int i = 1; i <= 4000; ++i) synth.entries.push_back({Word{1}, std::log(double(i)) / 0.7});
  EntropyEstimate est = fit_entropy(synth, 0.6);
  rep.check("entropy", "planted slope recovered", std::fabs(est.h - 0.7) < 0.01);
  Representation r1 = make_representation({"a"}, {Mat3::diag(std::exp(1.0), 1, std::exp(-1.0))});
  Census c = census(r1, 6);
  rep.check("entropy", "rank-1 counting", counting_function(c, 4.0) == 8);
}

void verify_bounds(VerifyReport& rep) {
  bool parts = ordered_partitions(2, 2).to_u64() == 3 && ordered_partitions(3, 4).to_u64() == 15;
  rep.check("bounds", "ordered partitions", parts);
  BoundParams p;
  p.g = 2;
  p.cr = 10;
  p.l = 1;
  rep.check("bounds", "count_bound hand value", count_bound(25.0, p).to_u64() == 6905088ull);
  double M = 1000, q = 1000;
  double exact = binomial(2000, 1000).log_natural();
  double stirling = (M + q) * std::log(M + q) - M * std::log(M) - q * std::log(q);
  rep.check("bounds", "stirling cross-check", std::fabs(exact - stirling) / exact < 0.01);
}

int cmd_verify(const std::string& config_path, const std::string& rep_spec) {
  if (!config_path.empty()) {
    // Config must parse; tolerances live here for overriding suite scales.
    nlohmann::json j = nlohmann::json::parse(read_file(config_path), nullptr, false);
    if (j.is_discarded()) fail(errc::config_error, "config is not valid JSON");
  }
  if (!rep_spec.empty()) {
    Representation r = load_rep(rep_spec, "");
    for (int i = 0; i < r.n_gens(); ++i)
      if (!is_hyperbolic(r.images[size_t(i)]))
        fail(errc::not_hyperbolic, "generator '" + r.gens[size_t(i)] + "' is not hyperbolic");
    validate(r);
  }
  VerifyReport rep;
  verify_proj3(rep);
  verify_hilbert(rep);
  verify_group(rep);
  verify_reps(rep);
  verify_bulge(rep);
  verify_limitset(rep);
  verify_entropy(rep);
  verify_bounds(rep);
  std::fputs(rep.table.c_str(), stdout);
  std::printf("%d passed, %d failed\n", rep.passed, rep.failed);
  return rep.failed == 0 ? 0 : 1;
}

// --- census ----------------------------------------------------------------

int cmd_census(const Representation& rep, int max_len, bool unoriented, bool dump_counts,
               const std::string& out_dir, const std::string& command) {
  auto t0 = std::chrono::steady_clock::now();
  Census c = census(rep, max_len, !unoriented);
  std::string csv = "class,word_length,hilbert_length\n";
  for (const CensusEntry& e : c.entries) {
    csv += word_to_string(e.word, rep.gens);
    csv += "," + std::to_string(e.word.size()) + "," + format_double(e.length) + "\n";
  }
  RunManifest man;
  man.command = command;
  man.config_hash = content_hash(command);
  write_file(out_dir + "/census.csv", csv);
  man.outputs.push_back({"census.csv", content_hash(csv)});
  if (dump_counts) {
    std::string counts = "T,count\n";
    double prev = -1;
    for (size_t i = 0; i < c.entries.size(); ++i) {
      double t = c.entries[i].length;
      if (t == prev) continue;
      prev = t;
      counts += format_double(t) + "," + std::to_string(counting_function(c, t)) + "\n";
    }
    write_file(out_dir + "/counts.csv", counts);
    man.outputs.push_back({"counts.csv", content_hash(counts)});
  }
  man.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(man, out_dir);
  std::printf("census: %zu entries, %d skipped non-hyperbolic\n", c.entries.size(),
              c.skipped_non_hyperbolic);
  return 0;
}

// --- sweep -------------------------------------------------------------------

int cmd_sweep(const Representation& rep, const std::vector<double>& s_grid, double t,
              int census_len, int radius, int depth, double wf, DeformSide side,
              const std::string& out_dir, const std::string& command) {
  auto t0 = std::chrono::steady_clock::now();
  SweepConfig cfg;
  cfg.s_grid = s_grid;
  cfg.t = t;
  cfg.census_len = census_len;
  cfg.orbit_radius = radius;
  cfg.hull_depth = depth;
  cfg.window_fraction = wf;
  cfg.side = side;
  std::vector<SweepRow> rows = sweep(rep, cfg);
  std::string csv =
      "s,t,h_census,h_census_stderr,h_orbit,h_orbit_stderr,trace_ab,length_ab,hausdorff_drift\n";
  for (const SweepRow& r : rows)
    csv += csv_row({r.s, r.t, r.h_census, r.h_census_stderr, r.h_orbit, r.h_orbit_stderr,
                    r.trace_ab, r.length_ab, r.hausdorff_drift});
  write_file(out_dir + "/sweep.csv", csv);
  RunManifest man;
  man.command = command;
  man.config_hash = content_hash(command);
  man.outputs.push_back({"sweep.csv", content_hash(csv)});
  man.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(man, out_dir);
  std::printf("sweep: %zu rows\n", rows.size());
  return 0;
}

// --- bounds ------------------------------------------------------------------

int cmd_bounds(long long g, double cr, double l, double s_extra, double t_max,
               const std::string& out_dir, const std::string& command) {
  auto t0 = std::chrono::steady_clock::now();
  BoundParams p;
  p.g = g;
  p.cr = cr;
  p.l = l;
  p.s_extra = s_extra;
  // Geometric grid from ~40 Cr up to t_max.
  std::vector<double> grid;
  for (double T = std::fmax(40.0 * (cr + s_extra), 10.0 * l); T <= t_max * (1 + 1e-9); T *= 2)
    grid.push_back(std::round(T));
  if (grid.size() < 3) fail(errc::parameter_range, "t-max leaves fewer than 3 grid points");
  std::string csv = "T,count_bound,log_bound_over_T\n";
  for (double T : grid) {
    BigUint cb = count_bound(T, p);
    csv += format_double(T) + "," + cb.to_decimal() + "," +
           format_double(cb.is_zero() ? 0.0 : cb.log_natural() / T) + "\n";
  }
  BoundDebug dbg;
  double h = entropy_bound(p, grid, &dbg, 1e-3);
  std::string dbg_json = "{\"entropy_bound\": " + format_double(h) +
                         ", \"m_star\": " + std::to_string(dbg.m_star) +
                         ", \"q_star\": " + std::to_string(dbg.q_star) + "}\n";
  write_file(out_dir + "/bounds.csv", csv);
  write_file(out_dir + "/bounds_debug.json", dbg_json);
  RunManifest man;
  man.command = command;
  man.config_hash = content_hash(command);
  man.outputs.push_back({"bounds.csv", content_hash(csv)});
  man.outputs.push_back({"bounds_debug.json", content_hash(dbg_json)});
  man.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(man, out_dir);
  std::printf("entropy_bound = %s\n", format_double(h).c_str());
  return 0;
}

// --- render ------------------------------------------------------------------

int cmd_render(const Representation& rep, const std::vector<double>& s_list, int depth,
               const std::string& out_path, const std::string& out_dir,
               const std::string& command) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<SvgLayer> layers;
  if (rep.splitting) {
    BulgeFrame frame = bulge_frame(rep, rep.splitting->gamma);
    std::vector<LimitPoints> pts_by_s;
    std::vector<ProjPoint> all;
    for (double s : s_list) {
      pts_by_s.push_back(limit_points(deform(rep, 0.0, s), depth));
      all.insert(all.end(), pts_by_s.back().points.begin(), pts_by_s.back().points.end());
    }
    all.push_back(frame.spectrum.fixed_attract);
    all.push_back(frame.spectrum.fixed_repel);
    all.push_back(frame.spectrum.fixed_neutral);
    Mat3 w2c = choose_chart(all);
    for (size_t i = 0; i < s_list.size(); ++i) {
      ConvexDomain hull = domain_hull_from(pts_by_s[i], w2c);
      char label[32];
      std::snprintf(label, sizeof label, "s=%g", s_list[i]);
      layers.push_back({label, hull.vertices, true});
    }
    ConvexDomain tri = limit_triangle(frame, w2c);
    layers.push_back({"triangle", tri.vertices, true});
  } else {
    ConvexDomain hull = domain_hull(rep, depth);
    layers.push_back({"domain", hull.vertices, true});
  }
  std::string svg = render_svg(layers);
  write_file(out_path, svg);
  RunManifest man;
  man.command = command;
  man.config_hash = content_hash(command);
  man.outputs.push_back({out_path, content_hash(svg)});
  man.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(man, out_dir);
  std::printf("rendered %zu layers\n", layers.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hilbert geometry, bulging deformations and entropy estimation"};
  app.require_subcommand(1);

  std::string rep_spec = "pants:2,2,2", split, out_dir = ".", config_path;
  int threads = 0;  // accepted for interface compatibility; results never depend on it
  std::uint64_t seed = 0;
  app.add_option("--threads", threads, "worker threads (results are thread-count independent)");
  app.add_option("--seed", seed, "random seed for seeded subcommands");

  auto* verify = app.add_subcommand("verify", "run the quick property suites");
  std::string verify_rep;
  verify->add_option("--config", config_path, "JSON config file");
  verify->add_option("--rep", verify_rep, "also validate this representation");

  auto* census_cmd = app.add_subcommand("census", "closed-geodesic census CSV");
  int max_len = 8;
  bool unoriented = false, dump_counts = false;
  census_cmd->add_option("--rep", rep_spec, "pants:l1,l2,l3 | torus | genus2 | file:<path>");
  census_cmd->add_option("--split", split, "amalgam-demo (doubles a pants seed)");
  census_cmd->add_option("--max-len", max_len, "word length cap");
  census_cmd->add_flag("--unoriented", unoriented, "identify inverse classes");
  census_cmd->add_flag("--dump-counts", dump_counts, "also write T,count CSV");
  census_cmd->add_option("--out", out_dir, "output directory");

  auto* sweep_cmd = app.add_subcommand("sweep", "bulging sweep CSV");
  std::string s_spec = "0:16:2";
  double t_param = 0.0, wf = 0.4;
  int census_len = 6, radius = 6, depth = 5;
  sweep_cmd->add_option("--rep", rep_spec, "representation spec");
  sweep_cmd->add_option("--split", split, "amalgam-demo (doubles a pants seed)");
  sweep_cmd->add_option("--s", s_spec, "s grid a:b:step or comma list");
  sweep_cmd->add_option("--t", t_param, "earthquake parameter");
  sweep_cmd->add_option("--census-len", census_len, "census word cap");
  sweep_cmd->add_option("--radius", radius, "orbit radius");
  sweep_cmd->add_option("--depth", depth, "hull depth");
  sweep_cmd->add_option("--wf", wf, "fit window fraction");
  std::string side = "right";
  sweep_cmd->add_option("--side", side, "which side moves: right (bulge) or left (debulge)");
  sweep_cmd->add_option("--out", out_dir, "output directory");

  auto* bounds_cmd = app.add_subcommand("bounds", "counting bound table");
  long long genus = 2;
  double cr = 10.0, l_min = 1.0, s_extra = 0.0, t_max = 1e5;
  bounds_cmd->add_option("--g", genus, "genus (>= 2)");
  bounds_cmd->add_option("--cr", cr, "minimum crossing-segment length");
  bounds_cmd->add_option("--l", l_min, "minimum pants-curve length");
  bounds_cmd->add_option("--s-extra", s_extra, "per-crossing cylinder addend");
  bounds_cmd->add_option("--t-max", t_max, "largest grid T");
  bounds_cmd->add_option("--out", out_dir, "output directory");

  auto* render_cmd = app.add_subcommand("render", "SVG of domain hulls");
  std::string svg_out = "domains.svg", s_list_spec = "0";
  int render_depth = 5;
  render_cmd->add_option("--rep", rep_spec, "representation spec");
  render_cmd->add_option("--split", split, "amalgam-demo (doubles a pants seed)");
  render_cmd->add_option("--s", s_list_spec, "s values (comma list) for deformed hulls");
  render_cmd->add_option("--depth", render_depth, "hull depth");
  render_cmd->add_option("--svg", svg_out, "output SVG path");
  render_cmd->add_option("--out", out_dir, "output directory for run.json");

  CLI11_PARSE(app, argc, argv);

  std::string command;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) command += " ";
    command += argv[i];
  }

  try {
    if (verify->parsed()) return cmd_verify(config_path, verify_rep);
    Representation rep = load_rep(rep_spec, split);
    if (census_cmd->parsed())
      return cmd_census(rep, max_len, unoriented, dump_counts, out_dir, command);
    if (sweep_cmd->parsed()) {
      if (side != "right" && side != "left")
        fail(errc::config_error, "--side must be right or left");
      return cmd_sweep(rep, parse_grid(s_spec), t_param, census_len, radius, depth, wf,
                       side == "left" ? DeformSide::left : DeformSide::right, out_dir, command);
    }
    if (bounds_cmd->parsed())
      return cmd_bounds(genus, cr, l_min, s_extra, t_max, out_dir, command);
    if (render_cmd->parsed())
      return cmd_render(rep, parse_grid(s_list_spec), render_depth, svg_out, out_dir, command);
  } catch (const error& e) {
    std::fprintf(stderr, "error (%s): %s\n", errc_name(e.code()), e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
