#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "tspectra/cli.hpp"
#include "tspectra/topology.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "torus-spectra");
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return tspectra::cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "tspectra_cli_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("threshold verdict line") {
  TempDir dir;
  const auto out = dir.file("threshold.txt");
  CHECK(run_cli({"threshold", "--dim", "2", "--len", "30", "--beta", "0.1", "--delta", "0.6",
                 "--output", out}) == 0);
  CHECK(slurp(out) == "rho=4.0,ratio=6.0,stable=true\n");

  CHECK(run_cli({"threshold", "--dim", "2", "--len", "30", "--beta", "0.1", "--delta", "0.2",
                 "--output", out}) == 0);
  CHECK(slurp(out) == "rho=4.0,ratio=2.0,stable=false\n");
}

TEST_CASE("lattice walk rows") {
  TempDir dir;
  const auto out = dir.file("walks.csv");
  CHECK(run_cli({"walks", "--lattice", "--closed", "--len", "6", "--output", out}) == 0);
  CHECK(slurp(out) == "ell,count\n0,1\n1,4\n2,36\n3,400\n");
}

TEST_CASE("spectra and charpoly values") {
  TempDir dir;
  const auto out = dir.file("spectra.csv");
  CHECK(run_cli({"spectra", "--dim", "2", "--len", "3", "--output", out}) == 0);
  CHECK(slurp(out) == "value,multiplicity\n4,1\n1,4\n-2,4\n");

  const auto poly = dir.file("charpoly.csv");
  CHECK(run_cli({"charpoly", "--dim", "2", "--len", "3", "--at", "5", "--output", poly}) == 0);
  const std::string text = slurp(poly);
  CHECK(text.starts_with("sign,log_magnitude,value_if_finite\n1,"));
  CHECK(text.find("614656") != std::string::npos);

  // At an eigenvalue the sign is exactly zero.
  CHECK(run_cli({"charpoly", "--dim", "2", "--len", "3", "--at", "4", "--output", poly}) == 0);
  CHECK(slurp(poly).find("\n0,-inf,0") != std::string::npos);
}

TEST_CASE("deterministic subcommands emit byte-identical output") {
  TempDir dir;
  const auto first = dir.file("a.csv");
  const auto second = dir.file("b.csv");
  for (const char* path : {first.c_str(), second.c_str()}) {
    CHECK(run_cli({"figures", "--which", "3", "--lens", "5,7", "--output", path}) == 0);
  }
  CHECK(slurp(first) == slurp(second));

  // Monte Carlo with a pinned seed is reproducible too.
  for (const char* path : {first.c_str(), second.c_str()}) {
    CHECK(run_cli({"sis", "--mode", "mc", "--dim", "2", "--len", "6", "--steps", "20", "--replicas",
                   "4", "--rng-seed", "99", "--output", path}) == 0);
  }
  CHECK(slurp(first) == slurp(second));
}

TEST_CASE("run manifest records the invocation") {
  TempDir dir;
  const auto out = dir.file("out.csv");
  CHECK(run_cli({"sis", "--mode", "meanfield", "--dim", "2", "--len", "5", "--seeds", "3",
                 "--steps", "5", "--output", out}) == 0);
  const auto manifest = nlohmann::json::parse(slurp(out + ".manifest.json"));
  CHECK(manifest["subcommand"] == "sis");
  CHECK(manifest["tool_version"] == tspectra::cli::kToolVersion);
  CHECK(manifest["rng_seed"] == 123456789);  // documented default
  CHECK(manifest["outputs"][0] == out);
  CHECK(manifest["duration_ms"].is_number());

  const auto custom = dir.file("custom_manifest.json");
  CHECK(run_cli({"walks", "--lattice", "--closed", "--len", "4", "--output", out, "--manifest",
                 custom}) == 0);
  CHECK(nlohmann::json::parse(slurp(custom))["subcommand"] == "walks");
}

TEST_CASE("sis output columns per mode") {
  TempDir dir;
  const auto out = dir.file("sis.csv");
  CHECK(run_cli({"sis", "--mode", "meanfield", "--dim", "2", "--len", "4", "--steps", "3",
                 "--seeds", "2", "--output", out}) == 0);
  CHECK(slurp(out).starts_with("t,infected_mean\n0,2\n"));

  CHECK(run_cli({"sis", "--mode", "mc", "--dim", "2", "--len", "4", "--steps", "3", "--seeds", "2",
                 "--replicas", "3", "--output", out}) == 0);
  CHECK(slurp(out).starts_with("t,infected_mean,infected_std\n0,2,0\n"));

  // Explicit seed nodes.
  CHECK(run_cli({"sis", "--mode", "meanfield", "--dim", "2", "--len", "4", "--steps", "1",
                 "--seeds", "0,5,9", "--output", out}) == 0);
  CHECK(slurp(out).starts_with("t,infected_mean\n0,3\n"));
}

TEST_CASE("grid spectra go through the dense path") {
  TempDir dir;
  const auto out = dir.file("grid.csv");
  CHECK(run_cli({"spectra", "--topology", "grid", "--dim", "1", "--len", "3", "--output", out}) == 0);
  // Path on 3 nodes: sqrt(2), 0, -sqrt(2).
  const std::string text = slurp(out);
  CHECK(text.starts_with("value,multiplicity\n1.41421356237,1\n"));
  CHECK(text.find("-1.41421356237,1\n") != std::string::npos);
}

TEST_CASE("figure 4 emits one row per candidate second node") {
  TempDir dir;
  const auto out = dir.file("fig4.csv");
  CHECK(run_cli({"figures", "--which", "4", "--len", "7", "--output", out}) == 0);
  const std::string text = slurp(out);
  CHECK(text.starts_with("node,x,y,rho_analytic,reduction\n"));
  CHECK(std::count(text.begin(), text.end(), '\n') == 49);  // header + 48 nodes
  CHECK(text.find("\n24,") == std::string::npos);           // center excluded
}

TEST_CASE("remove reports analytic and oracle radii") {
  TempDir dir;
  const auto out = dir.file("remove.csv");
  CHECK(run_cli({"remove", "--dim", "2", "--len", "5", "--node", "12", "--output", out}) == 0);
  const std::string text = slurp(out);
  CHECK(text.starts_with("removal,rho_analytic,rho_oracle,discrepancy\nnode:12,"));
  CHECK(run_cli({"remove", "--dim", "2", "--len", "5", "--edge", "0:1", "--output", out}) == 0);
  CHECK(slurp(out).find("edge:0-1,") != std::string::npos);
}

TEST_CASE("dump-graph writes a loadable edge list") {
  TempDir dir;
  const auto graph_path = dir.file("graph.txt");
  const auto out = dir.file("spectra.csv");
  CHECK(run_cli({"spectra", "--dim", "2", "--len", "4", "--delete-nodes", "0", "--dump-graph",
                 graph_path, "--output", out}) == 0);
  const tspectra::Graph g = tspectra::from_edge_list_text(slurp(graph_path));
  CHECK(g.node_count() == 15);
  CHECK(g.edge_count() == 32 - 4);
}

TEST_CASE("exit codes") {
  TempDir dir;
  CHECK(run_cli({"no-such-command"}) == 2);
  CHECK(run_cli({"figures", "--which", "2"}) == 2);   // figure 2 is a topology sketch
  CHECK(run_cli({"walks", "--bogus-flag"}) == 2);
  CHECK(run_cli({"--help"}) == 0);
  // Domain errors exit 1.
  CHECK(run_cli({"remove", "--dim", "2", "--len", "2", "--node", "0",
                 "--output", dir.file("x.csv")}) == 1);
  CHECK(run_cli({"remove", "--dim", "2", "--len", "5", "--node", "0", "--edge", "0:1",
                 "--output", dir.file("x.csv")}) == 1);
  CHECK(run_cli({"bounds", "--len", "5", "--x", "3", "--output", dir.file("x.csv")}) == 1);
}
