#include "tspectra/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tspectra/bounds.hpp"
#include "tspectra/deletion.hpp"
#include "tspectra/sis.hpp"
#include "tspectra/spectral.hpp"
#include "tspectra/topology.hpp"
#include "tspectra/walks.hpp"

namespace tspectra::cli {

namespace {

std::string format_double(double v) {
  char buffer[40];
  const double snapped = std::nearbyint(v);
  // Display rounding only: quotients like 0.6/0.1 land a few ulps off an
  // integer.
  if (std::isfinite(v) && std::abs(v - snapped) <= 1e-9 * std::max(1.0, std::abs(snapped)) &&
      std::abs(v) < 1e15) {
    std::snprintf(buffer, sizeof(buffer), "%.1f", snapped);
  } else {
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  }
  return buffer;
}

std::string format_sci(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

std::vector<NodeId> parse_node_list(const std::string& text) {
  std::vector<NodeId> nodes;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw DomainError("empty entry in node list '" + text + "'");
    nodes.push_back(std::stoll(item));
  }
  if (nodes.empty()) throw DomainError("empty node list");
  return nodes;
}

std::pair<NodeId, NodeId> parse_edge(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw DomainError("edge must be written i:j");
  return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
}

void apply_thread_cap() {
  if (const char* env = std::getenv("TORUS_SPECTRA_THREADS")) {
    const int requested = std::atoi(env);
    if (requested >= 1) omp_set_num_threads(std::min(requested, omp_get_max_threads()));
  }
}

// Options shared by subcommands that materialize a topology.
struct TopologyOptions {
  std::string topology = "torus";
  int dim = 2;
  int len = 5;
  std::string delete_nodes_list;
  std::string delete_edge_spec;
  std::string dump_graph_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--topology", topology, "torus|grid")->check(CLI::IsMember({"torus", "grid"}));
    cmd->add_option("--dim", dim, "dimension d");
    cmd->add_option("--len", len, "side length m");
    cmd->add_option("--delete-nodes", delete_nodes_list, "nodes to remove, e.g. 0,12");
    cmd->add_option("--delete-edge", delete_edge_spec, "edge to remove, e.g. 0:1");
    cmd->add_option("--dump-graph", dump_graph_path, "write the built graph as an edge list");
  }

  bool intact_torus() const {
    return topology == "torus" && delete_nodes_list.empty() && delete_edge_spec.empty();
  }

  TorusSpec spec() const { return {dim, len}; }

  Graph build() const {
    Graph g = topology == "torus" ? build_torus(spec()) : build_grid(spec());
    if (!delete_nodes_list.empty()) g = delete_nodes(g, parse_node_list(delete_nodes_list)).graph;
    if (!delete_edge_spec.empty()) {
      const auto [i, j] = parse_edge(delete_edge_spec);
      g = delete_edge(g, i, j);
    }
    if (!dump_graph_path.empty()) {
      std::ofstream out(dump_graph_path, std::ios::binary);
      if (!out) throw DomainError("cannot open " + dump_graph_path);
      out << to_edge_list(g);
    }
    return g;
  }
};

struct OutputOptions {
  std::string output_path;
  std::string manifest_path;
  std::string format = "csv";

  void attach(CLI::App* cmd) {
    cmd->add_option("--output", output_path, "write results here instead of stdout");
    cmd->add_option("--manifest", manifest_path, "write the run manifest here");
    cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"csv"}));
  }
};

struct RunContext {
  std::string subcommand;
  std::vector<std::string> arguments;
  std::optional<std::uint64_t> rng_seed;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();
};

// Every run emits a manifest: to --manifest, else alongside --output, else as
// one JSON line on stderr.
void emit(const OutputOptions& out, const RunContext& ctx, const std::string& payload) {
  std::vector<std::string> outputs;
  if (out.output_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream file(out.output_path, std::ios::binary);
    if (!file) throw DomainError("cannot open " + out.output_path);
    file << payload;
    outputs.push_back(out.output_path);
  }

  nlohmann::json manifest{
      {"subcommand", ctx.subcommand},
      {"arguments", ctx.arguments},
      {"tool_version", kToolVersion},
      {"duration_ms",
       std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - ctx.started)
           .count()},
      {"outputs", outputs},
  };
  if (ctx.rng_seed) manifest["rng_seed"] = *ctx.rng_seed;

  std::string manifest_path = out.manifest_path;
  if (manifest_path.empty() && !out.output_path.empty()) {
    manifest_path = out.output_path + ".manifest.json";
  }
  if (manifest_path.empty()) {
    std::cerr << manifest.dump() << "\n";
  } else {
    std::ofstream file(manifest_path, std::ios::binary);
    if (!file) throw DomainError("cannot open " + manifest_path);
    file << manifest.dump(2) << "\n";
  }
}

std::string spectra_csv(const TopologyOptions& topo) {
  const Spectrum spectrum =
      topo.intact_torus() ? torus_eigenvalues(topo.spec()) : dense_spectrum(topo.build());
  std::ostringstream csv;
  csv << "value,multiplicity\n";
  for (const auto& [value, multiplicity] : spectrum.clustered()) {
    csv << format_sci(value) << "," << multiplicity << "\n";
  }
  return csv.str();
}

std::string charpoly_csv(const TorusSpec& spec, double x) {
  const PolyEval value = charpoly_eval_torus(spec, x);
  std::ostringstream csv;
  csv << "sign,log_magnitude,value_if_finite\n";
  csv << value.sign << "," << format_sci(value.log_magnitude) << ",";
  if (value.sign == 0) {
    csv << "0";
  } else if (value.log_magnitude < 709.0) {
    csv << format_sci(value.value());
  }
  csv << "\n";
  return csv.str();
}

BigInt torus_closed_or_exact(const TorusSpec& spec, int length) {
  try {
    return torus_closed_walks(spec, length).count;
  } catch (const DomainError&) {
    return count_walks_exact(build_torus(spec), 0, 0, length);
  }
}

BigInt torus_between_or_exact(const TorusSpec& spec, NodeId i, NodeId j, int length) {
  try {
    return torus_walks_between(spec, i, j, length).count;
  } catch (const DomainError&) {
    return count_walks_exact(build_torus(spec), i, j, length);
  }
}

struct WalksOptions {
  bool lattice = false;
  bool closed = false;
  int dim = 2;
  int side = 5;
  int length = 10;
  NodeId from = 0;
  std::string to;  // node index, or "a,b" for lattice targets
};

std::string walks_csv(const WalksOptions& opt) {
  std::ostringstream csv;
  csv << "ell,count\n";
  if (opt.lattice && opt.closed) {
    // Row ell counts closed lattice walks of length 2*ell.
    for (int half = 0; 2 * half <= opt.length; ++half) {
      csv << half << "," << lattice_closed_walks(half).count.str() << "\n";
    }
    return csv.str();
  }
  if (opt.lattice) {
    if (opt.to.empty()) throw DomainError("lattice walks need --to a,b or --closed");
    const std::vector<NodeId> target = parse_node_list(opt.to);
    if (target.size() != 2) throw DomainError("lattice target must be --to a,b");
    for (int l = 0; l <= opt.length; ++l) {
      csv << l << ","
          << lattice_walks_to(static_cast<int>(target[0]), static_cast<int>(target[1]), l).count.str()
          << "\n";
    }
    return csv.str();
  }
  const TorusSpec spec{opt.dim, opt.side};
  if (opt.closed) {
    for (int l = 0; l <= opt.length; ++l) {
      csv << l << "," << torus_closed_or_exact(spec, l).str() << "\n";
    }
    return csv.str();
  }
  if (opt.to.empty()) throw DomainError("torus walks need --closed or --from/--to");
  const NodeId to = std::stoll(opt.to);
  for (int l = 0; l <= opt.length; ++l) {
    csv << l << "," << torus_between_or_exact(spec, opt.from, to, l).str() << "\n";
  }
  return csv.str();
}

std::string removal_csv(const DeletionResult& result) {
  std::ostringstream csv;
  csv << "removal,rho_analytic,rho_oracle,discrepancy\n";
  csv << result.target << "," << format_sci(result.spectral_radius) << ","
      << format_sci(result.oracle_radius) << "," << format_sci(result.discrepancy) << "\n";
  return csv.str();
}

std::string bounds_csv(const TorusSpec& spec, const std::vector<double>& xs, int terms) {
  std::ostringstream csv;
  csv << "x,stirling_lower,lattice_truncated,torus_resolvent,gap_stirling,gap_lattice,lattice_tail\n";
  for (double x : xs) {
    const BoundReport report = bound_chain(spec, x, terms);
    csv << format_sci(report.x) << "," << format_sci(report.stirling_value) << ","
        << format_sci(report.lattice_value) << "," << format_sci(report.torus_value) << ","
        << format_sci(report.gap_stirling) << "," << format_sci(report.gap_lattice) << ","
        << format_sci(report.lattice_tail) << "\n";
  }
  return csv.str();
}

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows, bool with_std) {
  std::ostringstream csv;
  csv << (with_std ? "t,infected_mean,infected_std\n" : "t,infected_mean\n");
  for (const auto& row : rows) {
    csv << row.t << "," << format_sci(row.infected_mean);
    if (with_std) csv << "," << format_sci(row.infected_std);
    csv << "\n";
  }
  return csv.str();
}

std::string threshold_line(const TopologyOptions& topo, double beta, double delta) {
  const SisParams params{beta, delta, 0, 0};
  double rho = 0.0;
  if (topo.intact_torus()) {
    validate_torus_spec(topo.spec());
    rho = 2.0 * topo.dim;  // closed form for the intact torus
    validate_sis_params(params, topo.spec().node_count());
  } else {
    rho = spectral_radius_power(topo.build());
  }
  const double ratio = beta == 0.0 ? std::numeric_limits<double>::infinity() : delta / beta;
  const bool stable = rho < ratio;
  std::ostringstream out;
  out << "rho=" << format_double(rho) << ",ratio=" << format_double(ratio) << ","
      << "stable=" << (stable ? "true" : "false") << "\n";
  return out.str();
}

std::string figure1_csv(int len, int seeds, int steps, int replicas, std::uint64_t rng_seed) {
  const Graph g = build_torus({2, len});
  SisParams spreading{0.1, 0.2, steps, seeds};
  SisParams dying{0.1, 0.6, steps, seeds};
  const auto mc_spreading = run_experiment(g, spreading, SisMode::MonteCarlo, replicas, rng_seed);
  const auto mc_dying = run_experiment(g, dying, SisMode::MonteCarlo, replicas, rng_seed);
  const auto mf_spreading = run_experiment(g, spreading, SisMode::MeanField, 1, rng_seed);
  const auto mf_dying = run_experiment(g, dying, SisMode::MeanField, 1, rng_seed);
  std::ostringstream csv;
  csv << "t,mc_delta02,mc_delta06,mf_delta02,mf_delta06\n";
  for (std::size_t t = 0; t < mc_spreading.size(); ++t) {
    csv << mc_spreading[t].t << "," << format_sci(mc_spreading[t].infected_mean) << ","
        << format_sci(mc_dying[t].infected_mean) << "," << format_sci(mf_spreading[t].infected_mean)
        << "," << format_sci(mf_dying[t].infected_mean) << "\n";
  }
  return csv.str();
}

std::string figure3_csv(const std::vector<int>& lens) {
  std::vector<DeletionResult> results(lens.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(lens.size()); ++k) {
    results[static_cast<std::size_t>(k)] =
        spectral_radius_after_deletion({2, lens[static_cast<std::size_t>(k)]}, Removal::node(0));
  }
  std::ostringstream csv;
  csv << "len,rho_analytic,rho_oracle,reduction\n";
  for (std::size_t k = 0; k < lens.size(); ++k) {
    csv << lens[k] << "," << format_sci(results[k].spectral_radius) << ","
        << format_sci(results[k].oracle_radius) << ","
        << format_sci(4.0 - results[k].spectral_radius) << "\n";
  }
  return csv.str();
}

std::string figure4_csv(int len) {
  const TorusSpec spec{2, len};
  const NodeId center = index_of(spec, NodeCoord{{len / 2, len / 2}});
  const NodeId n = spec.node_count();
  std::vector<DeletionResult> results(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (NodeId j = 0; j < n; ++j) {
    if (j == center) continue;
    results[static_cast<std::size_t>(j)] =
        spectral_radius_after_deletion(spec, Removal::node_set({center, j}));
  }
  std::ostringstream csv;
  csv << "node,x,y,rho_analytic,reduction\n";
  for (NodeId j = 0; j < n; ++j) {
    if (j == center) continue;
    const NodeCoord coord = coord_of(spec, j);
    csv << j << "," << coord.coords[0] << "," << coord.coords[1] << ","
        << format_sci(results[static_cast<std::size_t>(j)].spectral_radius) << ","
        << format_sci(4.0 - results[static_cast<std::size_t>(j)].spectral_radius) << "\n";
  }
  return csv.str();
}

std::string figure56_csv(int which, int len, int max_length) {
  const auto rows = compare_walks(len, max_length);
  std::ostringstream csv;
  if (which == 5) {
    csv << "ell,torus_count,lattice_count\n";
    for (const auto& row : rows) {
      csv << row.length << "," << row.torus_count.str() << "," << row.lattice_count.str() << "\n";
    }
  } else {
    csv << "ell,percent_diff\n";
    for (const auto& row : rows) csv << row.length << "," << format_sci(row.percent_diff) << "\n";
  }
  return csv.str();
}

std::string figure78_csv(int which, int ell, const std::vector<int>& lens) {
  const auto rows = compare_walks_vs_len(ell, lens);
  std::ostringstream csv;
  if (which == 7) {
    csv << "len,torus_count,lattice_count\n";
    for (const auto& row : rows) {
      csv << row.len << "," << row.torus_count.str() << "," << row.lattice_count.str() << "\n";
    }
  } else {
    csv << "len,percent_diff\n";
    for (const auto& row : rows) csv << row.len << "," << format_sci(row.percent_diff) << "\n";
  }
  return csv.str();
}

}  // namespace

int run(int argc, const char* const* argv) {
  apply_thread_cap();

  CLI::App app{std::string(kToolVersion) +
               " - spectra, walk counts, deletion identities and SIS spreading on torus networks"};
  app.require_subcommand(1);

  RunContext ctx;
  for (int k = 1; k < argc; ++k) ctx.arguments.emplace_back(argv[k]);

  // spectra
  auto* spectra_cmd = app.add_subcommand("spectra", "eigenvalues as value,multiplicity CSV");
  TopologyOptions spectra_topo;
  OutputOptions spectra_out;
  spectra_topo.attach(spectra_cmd);
  spectra_out.attach(spectra_cmd);

  // charpoly
  auto* charpoly_cmd = app.add_subcommand("charpoly", "torus characteristic polynomial at a point");
  int charpoly_dim = 2;
  int charpoly_len = 5;
  double charpoly_at = 5.0;
  OutputOptions charpoly_out;
  charpoly_cmd->add_option("--dim", charpoly_dim, "dimension d");
  charpoly_cmd->add_option("--len", charpoly_len, "side length m");
  charpoly_cmd->add_option("--at", charpoly_at, "evaluation point x")->required();
  charpoly_out.attach(charpoly_cmd);

  // walks
  auto* walks_cmd = app.add_subcommand(
      "walks",
      "walk counts as ell,count CSV; --len is the walk length here, the torus side is --side; "
      "with --lattice --closed, row ell counts walks of length 2*ell");
  WalksOptions walks_opt;
  OutputOptions walks_out;
  walks_cmd->add_flag("--lattice", walks_opt.lattice, "count on the infinite lattice");
  walks_cmd->add_flag("--closed", walks_opt.closed, "closed walks");
  walks_cmd->add_option("--len", walks_opt.length, "maximum walk length");
  walks_cmd->add_option("--dim", walks_opt.dim, "torus dimension");
  walks_cmd->add_option("--side", walks_opt.side, "torus side length");
  walks_cmd->add_option("--from", walks_opt.from, "start node");
  walks_cmd->add_option("--to", walks_opt.to, "end node, or a,b lattice target");
  walks_out.attach(walks_cmd);

  // remove
  auto* remove_cmd = app.add_subcommand("remove", "spectral radius after a removal, with oracle");
  int remove_dim = 2;
  int remove_len = 5;
  double remove_tol = 1e-10;
  std::string remove_node;
  std::string remove_nodes;
  std::string remove_edge;
  std::string remove_report = "csv";
  OutputOptions remove_out;
  remove_cmd->add_option("--dim", remove_dim, "dimension d");
  remove_cmd->add_option("--len", remove_len, "side length m");
  remove_cmd->add_option("--node", remove_node, "remove one node");
  remove_cmd->add_option("--nodes", remove_nodes, "remove a node set i,j,...");
  remove_cmd->add_option("--edge", remove_edge, "remove one edge i:j");
  remove_cmd->add_option("--tol", remove_tol, "bisection tolerance");
  remove_cmd->add_option("--report", remove_report, "report format")->check(CLI::IsMember({"csv"}));
  remove_out.attach(remove_cmd);

  // bounds
  auto* bounds_cmd = app.add_subcommand(
      "bounds",
      "lattice/stirling lower-bound chain; CSV columns: x (evaluation point), stirling_lower "
      "(truncated stirling-bound series), lattice_truncated (exact lattice series), "
      "torus_resolvent (diagonal resolvent entry), gap_stirling (lattice - stirling), "
      "gap_lattice (torus - lattice), lattice_tail (lattice truncation allowance)");
  int bounds_len = 5;
  int bounds_terms = 200;
  std::vector<double> bounds_x{6.0, 8.0, 10.0};
  OutputOptions bounds_out;
  bounds_cmd->add_option("--len", bounds_len, "torus side length (dim is 2)");
  bounds_cmd->add_option("--x", bounds_x, "evaluation points (x > 4)")->delimiter(',');
  bounds_cmd->add_option("--terms", bounds_terms, "series truncation");
  bounds_out.attach(bounds_cmd);

  // sis
  auto* sis_cmd = app.add_subcommand("sis", "SIS trajectories as t,infected_mean[,infected_std]");
  TopologyOptions sis_topo;
  sis_topo.len = 30;
  std::string sis_mode = "meanfield";
  double sis_beta = 0.1;
  double sis_delta = 0.2;
  std::string sis_seeds = "20";
  int sis_steps = 100;
  int sis_replicas = 100;
  std::uint64_t sis_seed = kDefaultRngSeed;
  OutputOptions sis_out;
  sis_topo.attach(sis_cmd);
  sis_cmd->add_option("--mode", sis_mode, "meanfield|mc")->check(CLI::IsMember({"meanfield", "mc"}));
  sis_cmd->add_option("--beta", sis_beta, "infection probability per edge per slot");
  sis_cmd->add_option("--delta", sis_delta, "recovery probability per slot");
  sis_cmd->add_option("--seeds", sis_seeds, "seed count k, or explicit nodes i,j,...");
  sis_cmd->add_option("--steps", sis_steps, "time horizon");
  sis_cmd->add_option("--replicas", sis_replicas, "Monte Carlo replicas");
  sis_cmd->add_option("--rng-seed", sis_seed, "RNG seed (replica r runs on seed + r)");
  sis_out.attach(sis_cmd);

  // threshold
  auto* threshold_cmd = app.add_subcommand("threshold", "rho(A) vs delta/beta verdict");
  TopologyOptions threshold_topo;
  threshold_topo.len = 30;
  double threshold_beta = 0.1;
  double threshold_delta = 0.2;
  OutputOptions threshold_out;
  threshold_topo.attach(threshold_cmd);
  threshold_cmd->add_option("--beta", threshold_beta, "infection probability");
  threshold_cmd->add_option("--delta", threshold_delta, "recovery probability");
  threshold_out.attach(threshold_cmd);

  // figures
  auto* figures_cmd = app.add_subcommand("figures", "experiment sweeps, one CSV per figure");
  int figures_which = 3;
  std::vector<int> figures_lens{5, 7, 9, 11};
  int figures_len = 0;  // 0: per-figure default
  int figures_maxlen = 20;
  int figures_ell = 10;
  int figures_steps = 500;
  int figures_replicas = 100;
  int figures_seeds = 20;
  std::uint64_t figures_seed = kDefaultRngSeed;
  OutputOptions figures_out;
  figures_cmd->add_option("--which", figures_which, "figure number: 1,3,4,5,6,7,8")
      ->required()
      ->check(CLI::IsMember({1, 3, 4, 5, 6, 7, 8}));
  figures_cmd->add_option("--lens", figures_lens, "torus side sweep (figures 3, 7, 8)")->delimiter(',');
  figures_cmd->add_option("--len", figures_len, "torus side (figures 1, 4, 5, 6)");
  figures_cmd->add_option("--maxlen", figures_maxlen, "maximum walk length (figures 5, 6)");
  figures_cmd->add_option("--ell", figures_ell, "fixed walk length (figures 7, 8)");
  figures_cmd->add_option("--steps", figures_steps, "time horizon (figure 1)");
  figures_cmd->add_option("--replicas", figures_replicas, "Monte Carlo replicas (figure 1)");
  figures_cmd->add_option("--seeds", figures_seeds, "seed count (figure 1)");
  figures_cmd->add_option("--rng-seed", figures_seed, "RNG seed (figure 1)");
  figures_out.attach(figures_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (spectra_cmd->parsed()) {
      ctx.subcommand = "spectra";
      emit(spectra_out, ctx, spectra_csv(spectra_topo));
    } else if (charpoly_cmd->parsed()) {
      ctx.subcommand = "charpoly";
      emit(charpoly_out, ctx, charpoly_csv({charpoly_dim, charpoly_len}, charpoly_at));
    } else if (walks_cmd->parsed()) {
      ctx.subcommand = "walks";
      emit(walks_out, ctx, walks_csv(walks_opt));
    } else if (remove_cmd->parsed()) {
      ctx.subcommand = "remove";
      const int selections = (remove_node.empty() ? 0 : 1) + (remove_nodes.empty() ? 0 : 1) +
                             (remove_edge.empty() ? 0 : 1);
      if (selections != 1) {
        throw DomainError("pick exactly one of --node, --nodes, --edge");
      }
      Removal removal = Removal::node(0);
      if (!remove_node.empty()) {
        removal = Removal::node(std::stoll(remove_node));
      } else if (!remove_nodes.empty()) {
        removal = Removal::node_set(parse_node_list(remove_nodes));
      } else {
        const auto [i, j] = parse_edge(remove_edge);
        removal = Removal::edge(i, j);
      }
      emit(remove_out, ctx,
           removal_csv(spectral_radius_after_deletion({remove_dim, remove_len}, removal, remove_tol)));
    } else if (bounds_cmd->parsed()) {
      ctx.subcommand = "bounds";
      emit(bounds_out, ctx, bounds_csv({2, bounds_len}, bounds_x, bounds_terms));
    } else if (sis_cmd->parsed()) {
      ctx.subcommand = "sis";
      ctx.rng_seed = sis_seed;
      SisParams params;
      params.beta = sis_beta;
      params.delta = sis_delta;
      params.horizon = sis_steps;
      if (sis_seeds.find(',') == std::string::npos) {
        params.seeds = std::stoi(sis_seeds);
      } else {
        params.seeds = parse_node_list(sis_seeds);
      }
      const Graph g = sis_topo.build();
      const SisMode mode = sis_mode == "mc" ? SisMode::MonteCarlo : SisMode::MeanField;
      const auto rows = run_experiment(g, params, mode, sis_replicas, sis_seed);
      emit(sis_out, ctx, trajectory_csv(rows, mode == SisMode::MonteCarlo));
    } else if (threshold_cmd->parsed()) {
      ctx.subcommand = "threshold";
      emit(threshold_out, ctx, threshold_line(threshold_topo, threshold_beta, threshold_delta));
    } else if (figures_cmd->parsed()) {
      ctx.subcommand = "figures";
      std::string csv;
      switch (figures_which) {
        case 1:
          ctx.rng_seed = figures_seed;
          csv = figure1_csv(figures_len > 0 ? figures_len : 30, figures_seeds, figures_steps,
                            figures_replicas, figures_seed);
          break;
        case 3:
          csv = figure3_csv(figures_lens);
          break;
        case 4:
          csv = figure4_csv(figures_len > 0 ? figures_len : 7);
          break;
        case 5:
        case 6:
          csv = figure56_csv(figures_which, figures_len > 0 ? figures_len : 5, figures_maxlen);
          break;
        default:
          csv = figure78_csv(figures_which, figures_ell, figures_lens);
          break;
      }
      emit(figures_out, ctx, csv);
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid number: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace tspectra::cli
