#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

#include "qpcolor/cli.hpp"
#include "qpcolor/io.hpp"

using namespace qpc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "qpc_cli_test";
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int cli(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"qpc"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(storage.size());
  for (const auto& s : storage) argv.push_back(s.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("construct and verify a sphere coloring end to end") {
  TempDir tmp;
  const auto points = tmp.file("points.sphr");
  const auto coloring = tmp.file("coloring.qpco");
  const auto report = tmp.file("construct.json");
  CHECK(cli({"construct", "--p", "1", "--q", "2", "--k", "8", "--t", "2", "--n", "150",
             "--eta", "0.1", "--seed", "42", "--points-out", points, "--coloring-out",
             coloring, "--out", report}) == 0);
  const auto rep = load_report(report);
  CHECK(rep.at("operation") == "construct");
  CHECK(rep.at("pass") == true);
  CHECK(rep.at("metrics").at("violations") == 0);
  CHECK(rep.at("metrics").at("n_vertices") == 300);
  CHECK(rep.contains("timestamp"));
  CHECK(load_coloring(coloring).n == 300);

  CHECK(cli({"verify", "--input", coloring, "--check", "exactly-p", "--out",
             tmp.file("v1.json")}) == 0);
  CHECK(cli({"verify", "--input", coloring, "--check", "density", "--out",
             tmp.file("v2.json")}) == 0);
  CHECK(cli({"verify", "--input", coloring, "--check", "min-cross-degree", "--slack", "0.2",
             "--out", tmp.file("v3.json")}) == 0);
  // An absurdly tight tolerance fails and exits 1.
  CHECK(cli({"verify", "--input", coloring, "--check", "density", "--class-tol", "1e-9",
             "--out", tmp.file("v4.json")}) == 1);
  CHECK(load_report(tmp.file("v4.json")).at("pass") == false);
}

TEST_CASE("iso verification through the command line") {
  TempDir tmp;
  const auto points = tmp.file("points.sphr");
  const auto coloring = tmp.file("coloring.qpco");
  CHECK(cli({"construct", "--p", "1", "--q", "3", "--k", "4", "--t", "2", "--n", "20",
             "--eta", "0.1", "--seed", "5", "--points-out", points, "--coloring-out",
             coloring, "--out", tmp.file("c.json")}) == 0);
  const auto vrep = tmp.file("iso.json");
  CHECK(cli({"verify", "--input", coloring, "--check", "iso", "--points", points, "--out",
             vrep}) == 0);
  const auto rep = load_report(vrep);
  CHECK(rep.at("metrics").at("mismatches") == 0);
  CHECK(rep.at("metrics").at("pairs_checked") == 6);  // q * t rebuilds
}

TEST_CASE("estimate subcommand agrees with its oracle and is deterministic") {
  TempDir tmp;
  const auto r1 = tmp.file("strip1.json"), r2 = tmp.file("strip2.json");
  CHECK(cli({"estimate", "--what", "strip", "--k", "8", "--nu", "0.1", "--samples", "10000",
             "--seed", "3", "--out", r1}) == 0);
  CHECK(cli({"estimate", "--what", "strip", "--k", "8", "--nu", "0.1", "--samples", "10000",
             "--seed", "3", "--out", r2}) == 0);
  auto a = load_report(r1), b = load_report(r2);
  CHECK(a.at("metrics").at("value").get<double>() <= 0.3);
  CHECK(a.at("mode") == "sampled");
  a.erase("timestamp");
  b.erase("timestamp");
  CHECK(a == b);  // identical up to the excluded timestamp

  CHECK(cli({"estimate", "--what", "cap", "--k", "8", "--radius", "1.38", "--samples",
             "10000", "--seed", "3", "--out", tmp.file("cap.json")}) == 0);
}

TEST_CASE("drc subcommand on a stored random graph") {
  TempDir tmp;
  const auto graph = tmp.file("graph.qpgr");
  CHECK(cli({"construct", "--kind", "random", "--vertices", "100", "--density", "0.5",
             "--seed", "4", "--graph-out", graph, "--out", tmp.file("g.json")}) == 0);
  const auto rpath = tmp.file("drc.json");
  CHECK(cli({"drc", "--input", graph, "--t", "2", "--r", "2", "--m", "5", "--a", "12",
             "--seed", "4", "--out", rpath}) == 0);
  const auto rep = load_report(rpath);
  CHECK(rep.at("pass") == true);
  CHECK(rep.at("mode") == "exhaustive");
  CHECK(rep.at("metrics").at("violations") == 0);
}

TEST_CASE("hypercube construction reports its exact density") {
  TempDir tmp;
  const auto rpath = tmp.file("hyper.json");
  CHECK(cli({"construct", "--kind", "hypercube", "--m", "4", "--graph-out",
             tmp.file("h4.qpgr"), "--out", rpath}) == 0);
  const auto rep = load_report(rpath);
  CHECK(rep.at("metrics").at("density_num") == 10);
  CHECK(rep.at("metrics").at("density_den") == 15);
  CHECK(load_graph(tmp.file("h4.qpgr")).n == 16);
}

TEST_CASE("audits through the command line") {
  TempDir tmp;
  const auto points = tmp.file("points.sphr");
  const auto coloring = tmp.file("coloring.qpco");
  CHECK(cli({"construct", "--p", "1", "--q", "2", "--k", "3", "--t", "3", "--n", "150",
             "--eta", "0.1", "--seed", "12", "--points-out", points, "--coloring-out",
             coloring, "--out", tmp.file("c.json")}) == 0);

  const auto jrep = tmp.file("jset.json");
  CHECK(cli({"audit", "--what", "j-set", "--points", points, "--vertex", "0", "--out",
             jrep}) == 0);
  const auto jr = load_report(jrep);
  CHECK(jr.at("pass") == true);
  CHECK(jr.at("metrics").at("n") == 450);

  // A generous codegree fraction certifies whatever near-tuple exists.
  const auto trep = tmp.file("tuple.json");
  const int rc = cli({"audit", "--what", "tuple-codegree", "--points", points, "--input",
                      coloring, "--f", "0", "--eps", "0.4", "--threshold", "0.5", "--out",
                      trep});
  const auto tr = load_report(trep);
  if (tr.at("metrics").at("tuple_found") == true) {
    CHECK(rc == 0);
    CHECK(tr.at("metrics").at("max_codegree").get<double>() < 0.4 * 450);
  } else {
    CHECK(rc == 1);
  }

  const auto graph = tmp.file("graph.qpgr");
  CHECK(cli({"construct", "--kind", "random", "--vertices", "60", "--density", "0.5",
             "--seed", "2", "--graph-out", graph, "--out", tmp.file("g.json")}) == 0);
  const auto rrep = tmp.file("rich.json");
  CHECK(cli({"audit", "--what", "rich", "--input", graph, "--s", "3", "--eps", "0.45",
             "--budget", "500", "--seed", "1", "--out", rrep}) == 0);
  CHECK(load_report(rrep).at("metrics").at("witness_size") == 0);
}

TEST_CASE("derived parameters are capped and recorded") {
  TempDir tmp;
  const auto rpath = tmp.file("derived.json");
  CHECK(cli({"construct", "--p", "1", "--q", "2", "--eps", "0.5", "--n", "20", "--seed",
             "1", "--points-out", tmp.file("p.sphr"), "--coloring-out", tmp.file("c.qpco"),
             "--out", rpath}) == 0);
  const auto rep = load_report(rpath);
  const auto& derived = rep.at("parameters").at("derived");
  CHECK(derived.at("k") == 64);
  CHECK(derived.at("t") == 16);
  CHECK(derived.at("k_capped") == true);
  CHECK(derived.at("t_capped") == true);
  CHECK(derived.at("eta").get<double>() == doctest::Approx(0.5 / 264.0));
  CHECK(rep.at("parameters").at("k") == 64);
  CHECK(rep.at("metrics").at("violations") == 0);

  const auto spath = tmp.file("strict.json");
  CHECK(cli({"construct", "--p", "1", "--q", "2", "--eps", "0.5", "--strict-params",
             "--seed", "1", "--out", spath}) == 1);
  const auto srep = load_report(spath);
  CHECK(srep.at("pass") == false);
  CHECK(srep.at("metrics").at("feasible") == false);
  CHECK(srep.at("parameters").at("derived").at("k_uncapped").get<double>() ==
        doctest::Approx(1e7 * 64.0));
}

TEST_CASE("default artifact paths honor the environment override") {
  TempDir tmp;
  setenv("QPC_OUT_DIR", tmp.path.string().c_str(), 1);
  const int rc = cli({"construct", "--p", "1", "--q", "2", "--k", "2", "--t", "2", "--n",
                      "10", "--eta", "0.1", "--seed", "1", "--out", tmp.file("r.json")});
  unsetenv("QPC_OUT_DIR");
  CHECK(rc == 0);
  CHECK(fs::exists(tmp.path / "points.sphr"));
  CHECK(fs::exists(tmp.path / "coloring.qpco"));
}

TEST_CASE("usage errors name the violated constraint") {
  TempDir tmp;
  // Density above one half cannot go through the direct construction.
  CHECK(cli({"construct", "--p", "2", "--q", "3", "--construction", "1", "--k", "3", "--t",
             "2", "--n", "10", "--eta", "0.1", "--seed", "1"}) != 0);
  CHECK(cli({"construct", "--p", "1", "--q", "3", "--construction", "2", "--k", "3", "--t",
             "2", "--n", "10", "--eta", "0.1", "--seed", "1"}) != 0);
  CHECK(cli({"construct", "--p", "3", "--q", "3", "--k", "3", "--t", "2", "--n", "10",
             "--eta", "0.1", "--seed", "1"}) != 0);
  CHECK(cli({"construct", "--p", "1", "--q", "2", "--k", "3", "--t", "2", "--n", "10",
             "--eta", "1.5", "--seed", "1"}) != 0);
  CHECK(cli({"estimate", "--what", "bogus"}) != 0);
  CHECK(cli({"verify", "--check", "exactly-p"}) != 0);  // --input is required
  CHECK(cli({"nonsense"}) != 0);
  CHECK(cli({"construct", "--kind", "sphere", "--p", "1", "--q", "2", "--k", "100", "--t",
             "2", "--n", "10", "--eta", "0.1"}) != 0);  // k beyond the desk-scale cap
}
