#include "qpcolor/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "qpcolor/analysis.hpp"
#include "qpcolor/coloring.hpp"
#include "qpcolor/graph.hpp"
#include "qpcolor/io.hpp"

namespace qpc {

namespace {

std::string iso_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Only default artifact paths honor the environment; explicit flags win.
std::string default_dir() {
  const char* env = std::getenv("QPC_OUT_DIR");
  return env != nullptr && *env != '\0' ? env : ".";
}

std::string or_default(const std::string& explicit_path, const std::string& name) {
  return explicit_path.empty() ? default_dir() + "/" + name : explicit_path;
}

int finish(const nlohmann::json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    save_report(report, out_path);
  }
  return report.at("pass").get<bool>() ? 0 : 1;
}

nlohmann::json density_metrics(const SetColoring& col) {
  nlohmann::json full = nlohmann::json::array();
  nlohmann::json cross = nlohmann::json::array();
  const double pairs = static_cast<double>(col.n) * (col.n - 1) / 2.0;
  const std::size_t cp = col.origins.empty() ? 0 : col.cross_pairs();
  for (int f = 0; f < col.q; ++f) {
    full.push_back(pairs > 0 ? static_cast<double>(col.color[f].edge_count()) / pairs : 0.0);
    if (cp > 0) cross.push_back(static_cast<double>(col.cross_edges(f)) / cp);
  }
  nlohmann::json m{{"class_density", full}, {"target", static_cast<double>(col.p) / col.q}};
  if (cp > 0) m["cross_density"] = cross;
  return m;
}

struct ConstructOpts {
  std::string kind = "sphere";
  int p = 1;
  int q = 2;
  int k = 8;
  int t = 3;
  std::size_t n = 500;
  double eta = 0.1;
  double eps = 0.0;
  bool strict = false;
  std::uint64_t seed = 0;
  std::string mode = "sampled";
  int construction = 0;  // 0 = auto
  int m_hyper = 4;
  std::size_t n_vertices = 100;
  double density = 0.5;
  std::string points_out, coloring_out, graph_out, out;
  int threads = 1;
};

int run_construct(const ConstructOpts& o) {
  if (o.kind == "hypercube") {
    SimpleGraph g = build_hypercube(o.m_hyper);
    const Fraction frac = hypercube_density(o.m_hyper);
    const std::string path = or_default(o.graph_out, "graph.qpgr");
    save_graph(g, path);
    nlohmann::json params{{"kind", o.kind}, {"m", o.m_hyper}, {"graph_out", path}};
    nlohmann::json metrics{{"n", g.n},
                           {"edges", g.edges()},
                           {"density_num", frac.num},
                           {"density_den", frac.den},
                           {"density", g.density()}};
    return finish(make_report("construct", params, 0, "", metrics, true, {}), o.out);
  }
  if (o.kind == "random") {
    SimpleGraph g = build_random_graph(o.n_vertices, o.density, o.seed);
    const std::string path = or_default(o.graph_out, "graph.qpgr");
    save_graph(g, path);
    nlohmann::json params{{"kind", o.kind},
                          {"n", o.n_vertices},
                          {"density", o.density},
                          {"graph_out", path}};
    nlohmann::json metrics{{"n", g.n}, {"edges", g.edges()}, {"density", g.density()}};
    return finish(make_report("construct", params, o.seed, "", metrics, true, {}), o.out);
  }

  int k = o.k;
  int t = o.t;
  double eta = o.eta;
  std::vector<std::string> details;
  nlohmann::json derived;
  if (o.eps > 0.0) {
    const double eta_raw = o.eps / (132.0 * o.q);
    const double t_raw = 5.0 * o.q / o.eps;
    const double k_raw = 1e7 * std::pow(o.q / o.eps, 3.0);
    derived = {{"eta", eta_raw}, {"t_uncapped", t_raw}, {"k_uncapped", k_raw}};
    if (o.strict) {
      nlohmann::json params{{"kind", o.kind}, {"p", o.p}, {"q", o.q},
                            {"eps", o.eps},   {"derived", derived}};
      nlohmann::json metrics{{"feasible", false}};
      details.push_back("strict parameters refused: the uncapped values need k = " +
                        std::to_string(k_raw) + " dimensions and t = " + std::to_string(t_raw) +
                        " spheres, far beyond desk scale; rerun without "
                        "--strict-params to apply the caps k <= 64, t <= 16");
      return finish(make_report("construct", params, o.seed, "", metrics, false, details),
                    o.out);
    }
    eta = eta_raw;
    t = static_cast<int>(std::min(16.0, std::ceil(t_raw)));
    k = static_cast<int>(std::min(64.0, std::ceil(k_raw)));
    derived["t"] = t;
    derived["k"] = k;
    derived["t_capped"] = t_raw > 16.0;
    derived["k_capped"] = k_raw > 64.0;
    if (t_raw > 16.0) details.push_back("t capped at 16 (uncapped " + std::to_string(t_raw) + ")");
    if (k_raw > 64.0) details.push_back("k capped at 64 (uncapped " + std::to_string(k_raw) + ")");
  }

  const PointMode mode = point_mode_from_string(o.mode);
  Construction built = [&] {
    switch (o.construction) {
      case 1:
        return build_construction1(o.p, o.q, k, t, o.n, eta, o.seed, mode, o.threads);
      case 2:
        return build_construction2(o.p, o.q, k, t, o.n, eta, o.seed, mode, o.threads);
      default:
        return build_for_ratio(o.p, o.q, k, t, o.n, eta, o.seed, mode, o.threads);
    }
  }();

  const std::string ppath = or_default(o.points_out, "points.sphr");
  const std::string cpath = or_default(o.coloring_out, "coloring.qpco");
  save_family(built.family, ppath);
  save_coloring(built.coloring, cpath);

  nlohmann::json params{{"kind", o.kind},
                        {"p", o.p},
                        {"q", o.q},
                        {"k", k},
                        {"t", t},
                        {"n", o.n},
                        {"eta", eta},
                        {"mode", o.mode},
                        {"construction", built.coloring.info.construction},
                        {"points_out", ppath},
                        {"coloring_out", cpath},
                        {"threads", o.threads}};
  if (!derived.is_null()) params["derived"] = derived;

  const std::size_t violations = built.coloring.exactly_p_violations();
  nlohmann::json metrics = density_metrics(built.coloring);
  metrics["n_vertices"] = built.coloring.n;
  metrics["violations"] = violations;
  metrics["mu"] = built.family.mu();
  const bool pass = violations == 0;
  if (!pass) details.push_back("pairs not covered exactly p times: " + std::to_string(violations));
  return finish(make_report("construct", params, o.seed, "", metrics, pass, details), o.out);
}

struct VerifyOpts {
  std::string input, points, check = "exactly-p", out;
  double class_tol = 0.02;
  double full_tol = 0.03;
  double slack = 0.05;
  int threads = 1;
};

int run_verify(const VerifyOpts& o) {
  SetColoring col = load_coloring(o.input);
  nlohmann::json params{{"input", o.input}, {"check", o.check}};
  std::vector<std::string> details;

  if (o.check == "exactly-p") {
    const std::size_t violations = col.exactly_p_violations();
    nlohmann::json metrics{{"n", col.n}, {"p", col.p}, {"q", col.q}, {"violations", violations}};
    const bool pass = violations == 0;
    if (!pass) details.push_back(std::to_string(violations) + " pairs miss the exact cover count");
    return finish(make_report("verify", params, 0, "", metrics, pass, details), o.out);
  }

  if (o.check == "density") {
    params["class_tol"] = o.class_tol;
    params["full_tol"] = o.full_tol;
    if (col.origins.empty()) {
      throw CLI::ValidationError("verify", "density check needs vertex origins in the input");
    }
    nlohmann::json metrics = density_metrics(col);
    const double target = static_cast<double>(col.p) / col.q;
    bool pass = true;
    for (int f = 0; f < col.q; ++f) {
      const double cd = metrics["cross_density"][f].get<double>();
      const double fd = metrics["class_density"][f].get<double>();
      if (std::abs(cd - target) > o.class_tol) {
        pass = false;
        details.push_back("class " + std::to_string(f) + " cross density " + std::to_string(cd) +
                          " leaves " + std::to_string(target) + " +- " + std::to_string(o.class_tol));
      }
      if (std::abs(fd - target) > o.full_tol) {
        pass = false;
        details.push_back("class " + std::to_string(f) + " density " + std::to_string(fd) +
                          " leaves " + std::to_string(target) + " +- " + std::to_string(o.full_tol));
      }
    }
    return finish(make_report("verify", params, 0, "", metrics, pass, details), o.out);
  }

  if (o.check == "iso") {
    if (o.points.empty()) {
      throw CLI::ValidationError("verify", "iso check needs --points");
    }
    params["points"] = o.points;
    const SphereFamily family = load_family(o.points);
    if (family.total() != col.n) {
      throw CLI::ValidationError("verify", "points file does not match the coloring size");
    }
    std::size_t total_mismatches = 0;
    nlohmann::json table = nlohmann::json::array();
    for (int f = 0; f < col.q; ++f) {
      for (int j = 0; j < family.spheres(); ++j) {
        const SetColoring rebuilt =
            rebuild_like(family.rotated_for_iso(f, j), col, o.threads);
        const std::size_t mism = cross_bipartite_mismatches(col, f, rebuilt, 0, j);
        total_mismatches += mism;
        table.push_back({{"f", f}, {"sphere", j}, {"mismatches", mism}});
      }
    }
    nlohmann::json metrics{{"pairs_checked", table.size()},
                           {"mismatches", total_mismatches},
                           {"by_pair", table}};
    const bool pass = total_mismatches == 0;
    if (!pass) {
      details.push_back("rotated rebuilds disagree on " + std::to_string(total_mismatches) +
                        " cross pairs");
    }
    return finish(make_report("verify", params, 0, "", metrics, pass, details), o.out);
  }

  if (o.check == "min-cross-degree") {
    params["slack"] = o.slack;
    if (col.origins.empty()) {
      throw CLI::ValidationError("verify", "min-cross-degree check needs vertex origins");
    }
    const int t = col.info.sphere_sizes.empty()
                      ? static_cast<int>(col.origins.back().sphere) + 1
                      : static_cast<int>(col.info.sphere_sizes.size());
    const double target = static_cast<double>(col.p) / col.q;
    std::size_t worst = col.n;
    double worst_bound = 0.0;
    bool pass = true;
    for (int f = 0; f < col.q; ++f) {
      for (int j = 0; j < t; ++j) {
        for (int h = 0; h < t; ++h) {
          if (j == h) continue;
          const std::size_t md = min_cross_degree(col, f, j, h);
          const std::size_t nh = col.info.sphere_sizes.empty()
                                     ? col.n / t
                                     : col.info.sphere_sizes[h];
          const double bound = (target - o.slack) * static_cast<double>(nh);
          if (md < worst) {
            worst = md;
            worst_bound = bound;
          }
          if (static_cast<double>(md) < bound) {
            pass = false;
            details.push_back("class " + std::to_string(f) + " sphere " + std::to_string(j) +
                              "->" + std::to_string(h) + ": min degree " + std::to_string(md) +
                              " below " + std::to_string(bound));
          }
        }
      }
    }
    nlohmann::json metrics{{"min_cross_degree", worst},
                           {"bound_at_min", worst_bound},
                           {"target_density", target}};
    return finish(make_report("verify", params, 0, "", metrics, pass, details), o.out);
  }

  throw CLI::ValidationError("verify", "unknown --check " + o.check);
}

struct EstimateOpts {
  std::string what = "strip", out;
  int k = 8;
  double nu = 0.1;
  double radius = 1.0;
  std::size_t samples = 1000000;
  std::uint64_t seed = 0;
};

int run_estimate(const EstimateOpts& o) {
  nlohmann::json params{{"what", o.what}, {"k", o.k}, {"samples", o.samples}};
  std::vector<std::string> details;
  MeasureEstimate est;
  double exact = 0.0;
  bool bound_ok = true;
  if (o.what == "strip") {
    params["nu"] = o.nu;
    est = estimate_strip_measure(o.k, o.nu, o.samples, o.seed);
    exact = strip_measure_exact(o.k, o.nu);
    bound_ok = est.value <= est.bound + 1e-12;
    if (!bound_ok) {
      details.push_back("estimate exceeds the 3*nu bound");
    }
  } else if (o.what == "cap") {
    params["radius"] = o.radius;
    est = estimate_cap_measure(o.k, o.radius, o.samples, o.seed);
    exact = cap_measure_exact(o.k, o.radius);
    // The analytic lower bound only applies below the equator radius.
    if (o.radius <= std::sqrt(2.0)) {
      bound_ok = est.value >= est.bound - 4.0 * est.std_error;
      if (!bound_ok) details.push_back("estimate falls below the half-minus-nu bound");
    }
  } else {
    throw CLI::ValidationError("estimate", "unknown --what " + o.what);
  }
  const bool agree = std::abs(est.value - exact) <= 5.0 * est.std_error + 1e-12;
  if (!agree) details.push_back("estimate disagrees with the closed form beyond 5 sigma");
  nlohmann::json metrics{{"value", est.value},
                         {"std_error", est.std_error},
                         {"exact", exact},
                         {"bound", est.bound},
                         {"samples", est.samples}};
  return finish(
      make_report("estimate", params, o.seed, "sampled", metrics, agree && bound_ok, details),
      o.out);
}

struct DrcOpts {
  std::string input, out;
  int t = 2;
  int r = 2;
  double m = 5.0;
  double a = 12.0;
  std::uint64_t seed = 0;
  int retries = 50;
};

int run_drc(const DrcOpts& o) {
  const SimpleGraph g = load_graph(o.input);
  DrcParams p;
  p.t_exponent = o.t;
  p.r = o.r;
  p.m = o.m;
  p.a = o.a;
  const DrcReport rep = drc_rich_subset(g, p, o.seed, o.retries);
  nlohmann::json params{{"input", o.input}, {"t", o.t},          {"r", o.r},
                        {"m", o.m},         {"a", o.a},          {"retries", o.retries}};
  nlohmann::json metrics{{"n", rep.n},
                         {"average_degree", rep.average_degree},
                         {"guarantee", rep.guarantee},
                         {"guaranteed", rep.guaranteed},
                         {"attempts", rep.attempts},
                         {"size", rep.best_size},
                         {"subset", rep.subset},
                         {"subsets_checked", rep.subsets_checked},
                         {"violations", rep.violations}};
  std::vector<std::string> details;
  if (!rep.success) {
    details.push_back("no subset of size >= " + std::to_string(o.a) + " survived " +
                      std::to_string(rep.attempts) + " attempts");
  }
  return finish(
      make_report("drc", params, o.seed, rep.verification, metrics, rep.success, details),
      o.out);
}

struct AuditOpts {
  std::string what = "tuple-codegree";
  std::string input, points, out;
  int f = 0;
  double eps = 0.05;
  double threshold = 0.5;
  int s = 3;
  std::size_t budget = 10000;
  std::uint64_t seed = 0;
  std::size_t vertex = 0;
  double mu = -1.0;  // < 0: use the family's own value
  std::vector<std::size_t> tuple;
  std::size_t u = 0;
  std::size_t u_prime = 0;
  int ell = 1;
};

int run_audit(const AuditOpts& o) {
  std::vector<std::string> details;
  if (o.what == "tuple-codegree") {
    if (o.points.empty() || o.input.empty()) {
      throw CLI::ValidationError("audit", "tuple-codegree needs --points and --input");
    }
    const SphereFamily family = load_family(o.points);
    const SetColoring col = load_coloring(o.input);
    nlohmann::json params{{"what", o.what},   {"input", o.input}, {"points", o.points},
                          {"f", o.f},         {"eps", o.eps},     {"threshold", o.threshold}};
    const auto tuple = find_rotation_tuple(family, {}, o.threshold);
    if (!tuple) {
      nlohmann::json metrics{{"tuple_found", false}};
      details.push_back("no rotation tuple within the distance threshold");
      return finish(make_report("audit", params, 0, "exhaustive", metrics, false, details),
                    o.out);
    }
    const TupleCodegreeReport rep = audit_tuple_codegree(col, o.f, *tuple, o.eps);
    nlohmann::json metrics{{"tuple_found", true},
                           {"sphere", tuple->sphere},
                           {"tuple", tuple->vertices},
                           {"max_rotated_distance", tuple->max_rotated_distance},
                           {"max_codegree", rep.max_codegree},
                           {"bound", rep.bound},
                           {"subset_codegrees", rep.subset_codegrees},
                           {"subsets_checked", rep.subsets_checked},
                           {"has_pigeonhole_pair", rep.has_pigeonhole_pair}};
    if (rep.has_pigeonhole_pair) {
      metrics["pigeonhole"] = {{"r", rep.pigeonhole_r},
                               {"s", rep.pigeonhole_s},
                               {"u", rep.pigeonhole_u},
                               {"v", rep.pigeonhole_v}};
    }
    if (!rep.pass) details.push_back("a tuple subset has codegree at or above eps*N");
    return finish(make_report("audit", params, 0, "exhaustive", metrics, rep.pass, details),
                  o.out);
  }

  if (o.what == "rich") {
    if (o.input.empty()) throw CLI::ValidationError("audit", "rich needs --input");
    const SimpleGraph g = load_graph(o.input);
    const RichAuditReport rep = rich_subgraph_audit(g, o.s, o.eps, o.budget, o.seed);
    nlohmann::json params{{"what", o.what}, {"input", o.input}, {"s", o.s},
                          {"eps", o.eps},   {"budget", o.budget}};
    nlohmann::json metrics{{"witness_size", rep.witness.size()},
                           {"certified", rep.certified},
                           {"bound", rep.bound},
                           {"subsets_checked", rep.subsets_checked},
                           {"violations", rep.violations}};
    const bool pass = rep.witness.empty() || rep.certified;
    if (!pass) details.push_back("witness could not be certified within the budget");
    return finish(make_report("audit", params, o.seed, rep.mode, metrics, pass, details), o.out);
  }

  if (o.what == "j-set") {
    if (o.points.empty()) throw CLI::ValidationError("audit", "j-set needs --points");
    const SphereFamily family = load_family(o.points);
    if (o.vertex >= family.total()) {
      throw CLI::ValidationError("audit", "--vertex out of range");
    }
    const double mu = o.mu >= 0.0 ? o.mu : family.mu();
    const auto x = family.point_vector(o.vertex);
    const auto j_set = compute_J_set(family, x, mu);
    const double eta = family.params().eta;
    const double bound = 22.0 * family.params().q * eta * static_cast<double>(family.total());
    const std::size_t outside = family.total() - j_set.size();
    nlohmann::json params{{"what", o.what}, {"points", o.points}, {"vertex", o.vertex},
                          {"mu", mu}};
    nlohmann::json metrics{{"j_size", j_set.size()},
                           {"outside", outside},
                           {"bound", bound},
                           {"n", family.total()}};
    const bool pass = static_cast<double>(outside) <= bound;
    if (!pass) details.push_back("too many points have a near-real phase against the pivot");
    return finish(make_report("audit", params, 0, "exhaustive", metrics, pass, details), o.out);
  }

  if (o.what == "centroid") {
    if (o.points.empty()) throw CLI::ValidationError("audit", "centroid needs --points");
    const SphereFamily family = load_family(o.points);
    if (o.tuple.size() != static_cast<std::size_t>(family.params().q)) {
      throw CLI::ValidationError("audit", "--tuple needs exactly q vertex ids");
    }
    const double mu = o.mu >= 0.0 ? o.mu : family.mu();
    const CentroidPairingReport rep =
        centroid_pairing_check(family, o.tuple, o.u, o.u_prime, o.ell, mu);
    nlohmann::json params{{"what", o.what},     {"points", o.points}, {"tuple", o.tuple},
                          {"u", o.u},           {"u_prime", o.u_prime}, {"ell", o.ell},
                          {"mu", mu}};
    nlohmann::json metrics{{"sum_norm", rep.sum_norm},
                           {"sum_bound", rep.sum_bound},
                           {"inner_modulus", rep.inner_modulus},
                           {"inner_bound", rep.inner_bound}};
    if (!rep.pass) details.push_back("tuple sum or pairing inner product exceeds its bound");
    return finish(make_report("audit", params, 0, "exhaustive", metrics, rep.pass, details),
                  o.out);
  }

  throw CLI::ValidationError("audit", "unknown --what " + o.what);
}

}  // namespace

nlohmann::json make_report(const std::string& operation, nlohmann::json parameters,
                           std::uint64_t seed, const std::string& mode,
                           nlohmann::json metrics, bool pass,
                           std::vector<std::string> details) {
  return nlohmann::json{{"operation", operation},
                        {"parameters", std::move(parameters)},
                        {"seed", seed},
                        {"mode", mode},
                        {"metrics", std::move(metrics)},
                        {"pass", pass},
                        {"details", details},
                        {"timestamp", iso_timestamp()}};
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"complex-sphere set-coloring workbench"};
  app.require_subcommand(1);
  int exit_code = 0;

  ConstructOpts co;
  auto* c = app.add_subcommand("construct", "build a coloring or a baseline graph");
  c->add_option("--kind", co.kind, "sphere | hypercube | random")
      ->check(CLI::IsMember({"sphere", "hypercube", "random"}));
  c->add_option("--p", co.p, "colors per pair")->check(CLI::Range(1, 1000));
  c->add_option("--q", co.q, "number of color classes")->check(CLI::Range(2, 1000));
  c->add_option("--k", co.k, "complex dimension")->check(CLI::Range(1, 64));
  c->add_option("--t", co.t, "number of spheres")->check(CLI::Range(1, 16));
  c->add_option("--n", co.n, "points per sphere")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  c->add_option("--eta", co.eta, "phase-margin parameter in (0, 1)");
  c->add_option("--eps", co.eps, "derive eta, t, k from a density slack");
  c->add_flag("--strict-params", co.strict,
              "report the uncapped derived values and refuse to run");
  c->add_option("--seed", co.seed, "random seed");
  c->add_option("--mode", co.mode, "sampled | partitioned")
      ->check(CLI::IsMember({"sampled", "partitioned"}));
  c->add_option("--construction", co.construction, "0 = auto, 1, or 2")
      ->check(CLI::Range(0, 2));
  c->add_option("--m", co.m_hyper, "hypercube dimension")->check(CLI::Range(1, 24));
  c->add_option("--vertices", co.n_vertices, "random-graph vertex count");
  c->add_option("--density", co.density, "random-graph edge density");
  c->add_option("--points-out", co.points_out, "points file path");
  c->add_option("--coloring-out", co.coloring_out, "coloring file path");
  c->add_option("--graph-out", co.graph_out, "graph file path");
  c->add_option("--out", co.out, "report path (default: stdout)");
  c->add_option("--threads", co.threads, "worker threads (never changes results)")
      ->check(CLI::Range(1, 256));
  c->callback([&] {
    if (co.kind == "sphere") {
      if (co.p >= co.q) throw CLI::ValidationError("construct", "needs p < q");
      if (co.construction == 1 && 2 * co.p > co.q) {
        throw CLI::ValidationError("construct", "construction 1 requires p/q <= 1/2");
      }
      if (co.construction == 2 && 2 * co.p <= co.q) {
        throw CLI::ValidationError("construct", "construction 2 requires p/q > 1/2");
      }
      if (co.eps <= 0.0 && (co.eta <= 0.0 || co.eta >= 1.0)) {
        throw CLI::ValidationError("construct", "needs eta in (0, 1)");
      }
    }
    exit_code = run_construct(co);
  });

  VerifyOpts vo;
  auto* v = app.add_subcommand("verify", "check a stored coloring");
  v->add_option("--input", vo.input, "coloring file")->required();
  v->add_option("--check", vo.check, "exactly-p | density | iso | min-cross-degree")
      ->check(CLI::IsMember({"exactly-p", "density", "iso", "min-cross-degree"}));
  v->add_option("--points", vo.points, "points file (iso check)");
  v->add_option("--class-tol", vo.class_tol, "cross-density tolerance");
  v->add_option("--full-tol", vo.full_tol, "full-density tolerance");
  v->add_option("--slack", vo.slack, "min-cross-degree slack");
  v->add_option("--out", vo.out, "report path (default: stdout)");
  v->add_option("--threads", vo.threads, "worker threads (never changes results)")
      ->check(CLI::Range(1, 256));
  v->callback([&] { exit_code = run_verify(vo); });

  EstimateOpts eo;
  auto* e = app.add_subcommand("estimate", "Monte Carlo sphere-measure estimates");
  e->add_option("--what", eo.what, "strip | cap")->check(CLI::IsMember({"strip", "cap"}));
  e->add_option("--k", eo.k, "complex dimension")->check(CLI::Range(1, 4096));
  e->add_option("--nu", eo.nu, "strip half-width parameter");
  e->add_option("--radius", eo.radius, "cap radius in (0, 2]");
  e->add_option("--samples", eo.samples, "Monte Carlo samples")
      ->check(CLI::Range(std::size_t{10000}, std::size_t{100000000}));
  e->add_option("--seed", eo.seed, "random seed");
  e->add_option("--out", eo.out, "report path (default: stdout)");
  e->callback([&] { exit_code = run_estimate(eo); });

  DrcOpts dopt;
  auto* d = app.add_subcommand("drc", "dependent-random-choice rich subset search");
  d->add_option("--input", dopt.input, "graph file")->required();
  d->add_option("--t", dopt.t, "number of picked vertices")->check(CLI::Range(1, 8));
  d->add_option("--r", dopt.r, "subset size to test")->check(CLI::Range(1, 8));
  d->add_option("--m", dopt.m, "codegree floor")->required();
  d->add_option("--a", dopt.a, "target subset size")->required();
  d->add_option("--seed", dopt.seed, "random seed");
  d->add_option("--retries", dopt.retries, "attempt cap")->check(CLI::Range(1, 10000));
  d->add_option("--out", dopt.out, "report path (default: stdout)");
  d->callback([&] { exit_code = run_drc(dopt); });

  AuditOpts ao;
  auto* a = app.add_subcommand("audit", "structural audits of colorings and graphs");
  a->add_option("--what", ao.what, "tuple-codegree | rich | j-set | centroid")
      ->check(CLI::IsMember({"tuple-codegree", "rich", "j-set", "centroid"}));
  a->add_option("--input", ao.input, "coloring or graph file");
  a->add_option("--points", ao.points, "points file");
  a->add_option("--f", ao.f, "color class index");
  a->add_option("--eps", ao.eps, "codegree fraction bound");
  a->add_option("--threshold", ao.threshold, "rotation-tuple distance threshold");
  a->add_option("--s", ao.s, "subset size for the rich audit")->check(CLI::Range(1, 8));
  a->add_option("--budget", ao.budget, "sampled subsets per round");
  a->add_option("--seed", ao.seed, "random seed");
  a->add_option("--vertex", ao.vertex, "pivot vertex for the j-set audit");
  a->add_option("--mu", ao.mu, "phase margin (default: from the points file)");
  a->add_option("--tuple", ao.tuple, "q vertex ids")->delimiter(',');
  a->add_option("--u", ao.u, "paired vertex");
  a->add_option("--u-prime", ao.u_prime, "rotated partner vertex");
  a->add_option("--ell", ao.ell, "rotation exponent");
  a->add_option("--out", ao.out, "report path (default: stdout)");
  a->callback([&] { exit_code = run_audit(ao); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return exit_code;
}

}  // namespace qpc
