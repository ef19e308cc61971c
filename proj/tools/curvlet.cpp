// curvlet: curvature, reweighting, edge dropping, framelet dynamics, and
// desk-scale label-propagation experiments over edge-list graphs. Every
// command writes its outputs plus a manifest.json into --out-dir; `rerun`
// replays a manifest into a fresh directory.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "curvlet/curvlet.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace curvlet;

namespace {

using Clock = std::chrono::steady_clock;

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error(dir + ": cannot create output directory (" + ec.message() + ")");
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error(path + ": write failed");
}

// Everything a handler needs to leave a replayable record behind.
struct ManifestSink {
  std::vector<std::string> argv;  // original command line, program name excluded
  Clock::time_point start = Clock::now();

  void write(const std::string& out_dir, const std::string& command,
             const std::vector<std::string>& inputs, ordered_json params,
             ordered_json seed = nullptr) const {
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    ordered_json m;
    m["tool"] = "curvlet";
    m["tool_version"] = CURVLET_VERSION;
    m["command"] = command;
    m["argv"] = argv;
    m["inputs"] = inputs;
    m["params"] = std::move(params);
    m["seed"] = std::move(seed);
    m["duration_ms"] = elapsed.count();
    write_text(join_path(out_dir, "manifest.json"), m.dump(2) + "\n");
  }
};

// ---- shared flag groups -----------------------------------------------

struct CurvatureFlags {
  double alpha = 0.0;
  std::string solver = "exact";
  double reg = SinkhornParams{}.reg;
  bool uniform_masses = false;
  int workers = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha", alpha, "Laziness of the node measures, in [0, 1]")
        ->capture_default_str();
    cmd->add_option("--solver", solver, "Wasserstein-1 solver")
        ->check(CLI::IsMember({"exact", "sinkhorn"}))
        ->capture_default_str();
    cmd->add_option("--reg", reg, "Entropic regularization for the sinkhorn solver")
        ->capture_default_str();
    cmd->add_flag("--uniform-masses", uniform_masses,
                  "Spread neighbor mass uniformly, ignoring edge weights");
    cmd->add_option("--workers", workers, "Worker threads; 0 resolves from CURVLET_WORKERS / cores")
        ->capture_default_str();
  }

  CurvatureConfig to_config() const {
    CurvatureConfig cfg;
    cfg.alpha = alpha;
    cfg.solver = solver == "sinkhorn" ? W1Solver::sinkhorn : W1Solver::exact;
    cfg.sinkhorn.reg = reg;
    cfg.uniform_masses = uniform_masses;
    cfg.workers = workers;
    return cfg;
  }

  ordered_json params() const {
    ordered_json p;
    p["alpha"] = alpha;
    p["solver"] = solver;
    p["reg"] = reg;
    p["uniform_masses"] = uniform_masses;
    p["workers"] = workers;
    return p;
  }
};

std::string regime_name(Regime regime) {
  switch (regime) {
    case Regime::lfd: return "lfd";
    case Regime::hfd: return "hfd";
    default: return "undetermined";
  }
}

Variant parse_variant(const std::string& name) {
  if (name == "plain") return Variant::plain;
  if (name == "hom") return Variant::hom;
  if (name == "het") return Variant::het;
  return Variant::het_cbed;
}

// ---- command handlers --------------------------------------------------

struct CurvatureOpts {
  std::string graph, out_dir;
  bool one_based = false;
  int bins = 20;
  CurvatureFlags flags;
};

void cmd_curvature(const ManifestSink& sink, const CurvatureOpts& opt) {
  const Graph g = read_edge_list(opt.graph, opt.one_based);
  if (g.edge_count() == 0) throw std::invalid_argument("curvature: graph has no edges");
  ensure_out_dir(opt.out_dir);

  const CurvatureMap map = normalize_curvatures(all_curvatures(g, opt.flags.to_config()));
  write_curvature_edge_list(join_path(opt.out_dir, "curvature.txt"), g, map);
  write_histogram_csv(join_path(opt.out_dir, "histogram.csv"), curvature_histogram(map, opt.bins));

  ordered_json params = opt.flags.params();
  params["bins"] = opt.bins;
  params["one_based"] = opt.one_based;
  params["out_dir"] = opt.out_dir;
  sink.write(opt.out_dir, "curvature", {opt.graph}, std::move(params));
  std::cout << "edges=" << g.edge_count() << " kappa_min=" << format_double(map.min())
            << " kappa_max=" << format_double(map.max()) << "\n";
}

struct ReweightOpts {
  std::string graph, variant, out_dir;
  bool one_based = false;
  CurvatureFlags flags;
};

void cmd_reweight(const ManifestSink& sink, const ReweightOpts& opt) {
  const Graph g = read_edge_list(opt.graph, opt.one_based);
  if (g.edge_count() == 0) throw std::invalid_argument("reweight: graph has no edges");
  ensure_out_dir(opt.out_dir);

  const ZetaKind kind = opt.variant == "hom" ? ZetaKind::hom : ZetaKind::het;
  const ReweightedGraph rw = reweight_pipeline(g, kind, opt.flags.to_config());
  write_edge_list(join_path(opt.out_dir, "reweighted.txt"), rw.graph);
  write_matrix_coordinate(join_path(opt.out_dir, "laplacian.txt"), rw.laplacian);

  double zeta_min = rw.zeta_weights.front(), zeta_max = zeta_min;
  for (double z : rw.zeta_weights) {
    zeta_min = std::min(zeta_min, z);
    zeta_max = std::max(zeta_max, z);
  }
  ordered_json params = opt.flags.params();
  params["variant"] = opt.variant;
  params["one_based"] = opt.one_based;
  params["out_dir"] = opt.out_dir;
  sink.write(opt.out_dir, "reweight", {opt.graph}, std::move(params));
  std::cout << "edges_kept=" << rw.graph.edge_count() << " dropped=" << rw.zero_weight_edges.size()
            << " zeta_min=" << format_double(zeta_min) << " zeta_max=" << format_double(zeta_max)
            << "\n";
}

struct CbedOpts {
  std::string graph, out_dir;
  bool one_based = false, guard = false, full_refresh = false;
  double target = CbedConfig{}.target_kappa_upper;
  int max_iter = CbedConfig{}.max_iterations;
  int cuts = CbedConfig{}.cuts_per_iteration;
  std::uint64_t seed = 0;
  CurvatureFlags flags;
};

void cmd_cbed(const ManifestSink& sink, const CbedOpts& opt) {
  const Graph g = read_edge_list(opt.graph, opt.one_based);
  ensure_out_dir(opt.out_dir);

  CbedConfig cfg;
  cfg.target_kappa_upper = opt.target;
  cfg.max_iterations = opt.max_iter;
  cfg.cuts_per_iteration = opt.cuts;
  cfg.seed = opt.seed;
  cfg.connectivity_guard = opt.guard;
  cfg.full_refresh_only = opt.full_refresh;
  cfg.curvature = opt.flags.to_config();
  const auto [rewired, report] = cbed_run(g, cfg);

  write_edge_list(join_path(opt.out_dir, "rewired.txt"), rewired);
  const std::string stop =
      report.terminated_by == CbedStop::target_reached ? "target" : "iteration_cap";
  ordered_json rep;
  rep["iterations"] = report.iterations;
  rep["terminated_by"] = stop;
  rep["removed_edges"] = ordered_json::array();
  for (const auto& [u, v] : report.removed_edges) rep["removed_edges"].push_back({u, v});
  rep["kappa_max_trajectory"] = report.kappa_max_trajectory;
  rep["guard_note"] = report.guard_note;
  write_text(join_path(opt.out_dir, "report.json"), rep.dump(2) + "\n");

  ordered_json params = opt.flags.params();
  params["target_kappa"] = opt.target;
  params["max_iter"] = opt.max_iter;
  params["cuts"] = opt.cuts;
  params["guard"] = opt.guard;
  params["full_refresh"] = opt.full_refresh;
  params["one_based"] = opt.one_based;
  params["out_dir"] = opt.out_dir;
  sink.write(opt.out_dir, "cbed", {opt.graph}, std::move(params), opt.seed);
  std::cout << "iterations=" << report.iterations << " removed=" << report.removed_edges.size()
            << " final_kappa_max=" << format_double(report.kappa_max_trajectory.back())
            << " terminated_by=" << stop << "\n";
}

struct DynamicsOpts {
  std::string graph, variant = "plain", mode = "spectral", out_dir;
  bool one_based = false, dump_bands = false;
  double theta = 1.0, tau = 1.0;
  int steps = 100, levels = 1, scale = 0, degree = -1, columns = 4;
  std::uint64_t seed = 0;
  CurvatureFlags flags;
};

void cmd_dynamics(const ManifestSink& sink, const DynamicsOpts& opt) {
  const Graph g = read_edge_list(opt.graph, opt.one_based);
  ensure_out_dir(opt.out_dir);

  Eigen::MatrixXd laplacian;
  if (opt.variant == "plain")
    laplacian = g.normalized_laplacian();
  else
    laplacian = reweight_pipeline(g, opt.variant == "hom" ? ZetaKind::hom : ZetaKind::het,
                                  opt.flags.to_config())
                    .laplacian;

  const SpectralDecomposition decomp = eigendecompose(laplacian);
  const FrameletSystem system =
      opt.degree < 0
          ? FrameletSystem::build_exact(decomp, haar_filter_bank(), opt.levels, opt.scale)
          : FrameletSystem::build_chebyshev(laplacian, haar_filter_bank(), opt.levels, opt.degree,
                                            2.0, opt.scale);

  PropagationConfig pc;
  pc.band_gains = uniform_gains(system, opt.theta);
  pc.steps = opt.steps;
  pc.step_size = opt.tau;
  pc.mode = opt.mode == "spatial" ? StepMode::spatial : StepMode::spectral;
  const EnergyTrace trace =
      propagate(system, pc, generic_initial_features(decomp, opt.columns, opt.seed));

  write_energy_csv(join_path(opt.out_dir, "energy.csv"), trace);
  if (opt.dump_bands) {
    for (int b = 0; b < system.band_count(); ++b) {
      const BandId id = system.band_ids()[static_cast<std::size_t>(b)];
      write_matrix_coordinate(join_path(opt.out_dir, "band_" + std::to_string(id.r) + "_" +
                                                         std::to_string(id.j) + ".txt"),
                              system.band_matrix(b));
    }
  }

  ordered_json params = opt.flags.params();
  params["variant"] = opt.variant;
  params["theta"] = opt.theta;
  params["steps"] = opt.steps;
  params["tau"] = opt.tau;
  params["levels"] = opt.levels;
  params["scale"] = opt.scale;
  params["degree"] = opt.degree;
  params["columns"] = opt.columns;
  params["mode"] = opt.mode;
  params["dump_bands"] = opt.dump_bands;
  params["one_based"] = opt.one_based;
  params["out_dir"] = opt.out_dir;
  sink.write(opt.out_dir, "dynamics", {opt.graph}, std::move(params), opt.seed);
  std::cout << "regime=" << regime_name(trace.regime) << " rho=" << format_double(trace.rho)
            << " final_energy=" << format_double(trace.energy.back()) << "\n";
}

struct ExperimentOpts {
  std::string graph, labels, generator, out_dir;
  bool one_based = false;
  std::vector<std::string> variants = {"plain", "hom", "het", "het_cbed"};
  int seeds = 10;
  std::uint64_t base_seed = 500;
  double train_fraction = 0.1;
  double theta_smooth = ExperimentConfig{}.theta_smooth;
  double theta_sharp = ExperimentConfig{}.theta_sharp;
  int steps = ExperimentConfig{}.steps;
  int levels = ExperimentConfig{}.levels;
  int scale = ExperimentConfig{}.coarse_scale;
  double target_kappa = 0.15;
  int cbed_max_iter = 100;
  int cuts = 1;
  CurvatureFlags flags;
};

void cmd_experiment(const ManifestSink& sink, const ExperimentOpts& opt) {
  if (opt.generator.empty() == opt.graph.empty())
    throw CLI::ValidationError("experiment", "give either a graph file or --generator");
  if (!opt.graph.empty() && opt.labels.empty())
    throw CLI::ValidationError("experiment", "--labels is required with a graph file");
  if (opt.seeds < 1) throw std::invalid_argument("experiment: need at least one seed");
  ensure_out_dir(opt.out_dir);

  ExperimentConfig cfg;
  cfg.curvature = opt.flags.to_config();
  cfg.cbed.target_kappa_upper = opt.target_kappa;
  cfg.cbed.max_iterations = opt.cbed_max_iter;
  cfg.cbed.cuts_per_iteration = opt.cuts;
  cfg.theta_smooth = opt.theta_smooth;
  cfg.theta_sharp = opt.theta_sharp;
  cfg.steps = opt.steps;
  cfg.levels = opt.levels;
  cfg.coarse_scale = opt.scale;

  Graph fixed;
  if (!opt.graph.empty()) {
    fixed = read_edge_list(opt.graph, opt.one_based);
    fixed = fixed.with_labels(read_labels_csv(opt.labels, fixed.node_count(), opt.one_based));
  }

  std::vector<std::uint64_t> seed_list;
  for (int i = 0; i < opt.seeds; ++i)
    seed_list.push_back(opt.base_seed + static_cast<std::uint64_t>(i));

  ordered_json results = ordered_json::object();
  for (const std::string& name : opt.variants) {
    std::vector<double> accuracies;
    for (std::uint64_t seed : seed_list) {
      Graph g;
      if (opt.generator == "homophilic")
        g = make_sbm({{20, 20}, 0.6, 0.05}, seed);
      else if (opt.generator == "heterophilic")
        g = make_planted_pocket_graph(14, 0.4, 3, 6, seed);
      else
        g = fixed;
      const LabeledPartition part = stratified_partition(g, opt.train_fraction, seed);
      accuracies.push_back(label_propagation_experiment(g, part, parse_variant(name), cfg));
    }
    double mean = 0.0;
    for (double a : accuracies) mean += a;
    mean /= static_cast<double>(accuracies.size());
    results[name] = {{"accuracies", accuracies}, {"mean", mean}};
    std::cout << "variant=" << name << " mean_accuracy=" << format_double(mean) << "\n";
  }

  ordered_json doc;
  doc["generator"] = opt.generator.empty() ? ordered_json(nullptr) : ordered_json(opt.generator);
  doc["graph"] = opt.graph.empty() ? ordered_json(nullptr) : ordered_json(opt.graph);
  doc["train_fraction"] = opt.train_fraction;
  doc["seeds"] = seed_list;
  doc["results"] = results;
  write_text(join_path(opt.out_dir, "results.json"), doc.dump(2) + "\n");

  ordered_json params = opt.flags.params();
  params["generator"] = opt.generator;
  params["variants"] = opt.variants;
  params["seeds"] = opt.seeds;
  params["train_fraction"] = opt.train_fraction;
  params["theta_smooth"] = opt.theta_smooth;
  params["theta_sharp"] = opt.theta_sharp;
  params["steps"] = opt.steps;
  params["levels"] = opt.levels;
  params["scale"] = opt.scale;
  params["target_kappa"] = opt.target_kappa;
  params["cbed_max_iter"] = opt.cbed_max_iter;
  params["cuts"] = opt.cuts;
  params["one_based"] = opt.one_based;
  params["out_dir"] = opt.out_dir;
  std::vector<std::string> inputs;
  if (!opt.graph.empty()) inputs = {opt.graph, opt.labels};
  sink.write(opt.out_dir, "experiment", inputs, std::move(params), opt.base_seed);
}

struct HomophilyOpts {
  std::string graph, labels, out_dir;
  bool one_based = false;
};

void cmd_homophily(const ManifestSink& sink, const HomophilyOpts& opt) {
  Graph g = read_edge_list(opt.graph, opt.one_based);
  g = g.with_labels(read_labels_csv(opt.labels, g.node_count(), opt.one_based));
  ensure_out_dir(opt.out_dir);

  const double h = homophily_measure(g);
  write_text(join_path(opt.out_dir, "homophily.txt"), format_double(h) + "\n");
  ordered_json params;
  params["one_based"] = opt.one_based;
  params["out_dir"] = opt.out_dir;
  sink.write(opt.out_dir, "homophily", {opt.graph, opt.labels}, std::move(params));
  std::cout << "H(G)=" << format_double(h) << "\n";
}

// Replays a manifest's argv with the output directory swapped out; the
// dispatched command writes a fresh manifest of its own.
std::vector<std::string> rerun_argv(const std::string& manifest_path, const std::string& out_dir) {
  std::ifstream in(manifest_path);
  if (!in) throw ParseError(manifest_path + ": cannot open for reading");
  ordered_json m;
  try {
    m = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(manifest_path + ": " + err.what());
  }
  if (!m.contains("argv") || !m["argv"].is_array() || m["argv"].empty())
    throw std::invalid_argument(manifest_path + ": manifest has no argv to replay");
  std::vector<std::string> argv = m["argv"].get<std::vector<std::string>>();
  if (argv.front() == "rerun")
    throw std::invalid_argument(manifest_path + ": refusing to replay a rerun command");

  std::vector<std::string> replay;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (argv[i] == "--out-dir") {
      ++i;  // drop the flag and its value
      continue;
    }
    if (argv[i].rfind("--out-dir=", 0) == 0) continue;
    replay.push_back(argv[i]);
  }
  replay.push_back("--out-dir");
  replay.push_back(out_dir);
  return replay;
}

int run(const std::vector<std::string>& args) {
  ManifestSink sink;
  sink.argv = args;

  CLI::App app{"curvature toolkit for graphs: Ollivier-Ricci curvature, curvature-enhanced "
               "Laplacians, edge dropping, framelet propagation, and label-propagation "
               "experiments"};
  app.set_version_flag("--version", CURVLET_VERSION);
  app.require_subcommand(1);
  int nested_code = 0;

  {
    auto* cmd = app.add_subcommand("curvature", "Per-edge curvature with histogram");
    auto opt = std::make_shared<CurvatureOpts>();
    cmd->add_option("graph", opt->graph, "Edge-list file")->required();
    cmd->add_flag("--one-based", opt->one_based, "Node ids in the input start at 1");
    opt->flags.attach(cmd);
    cmd->add_option("--bins", opt->bins, "Histogram bin count")->capture_default_str();
    cmd->add_option("--out-dir", opt->out_dir, "Output directory")->required();
    cmd->callback([&sink, opt] { cmd_curvature(sink, *opt); });
  }
  {
    auto* cmd = app.add_subcommand("reweight", "Curvature-reweighted graph and Laplacian");
    auto opt = std::make_shared<ReweightOpts>();
    cmd->add_option("graph", opt->graph, "Edge-list file")->required();
    cmd->add_option("--variant", opt->variant, "Weight transform")
        ->check(CLI::IsMember({"hom", "het"}))
        ->required();
    cmd->add_flag("--one-based", opt->one_based, "Node ids in the input start at 1");
    opt->flags.attach(cmd);
    cmd->add_option("--out-dir", opt->out_dir, "Output directory")->required();
    cmd->callback([&sink, opt] { cmd_reweight(sink, *opt); });
  }
  {
    auto* cmd = app.add_subcommand("cbed", "Drop edges until max curvature meets the target");
    auto opt = std::make_shared<CbedOpts>();
    cmd->add_option("graph", opt->graph, "Edge-list file")->required();
    cmd->add_flag("--one-based", opt->one_based, "Node ids in the input start at 1");
    opt->flags.attach(cmd);
    cmd->add_option("--target-kappa", opt->target, "Upper curvature target")
        ->capture_default_str();
    cmd->add_option("--max-iter", opt->max_iter, "Iteration cap")->capture_default_str();
    cmd->add_option("--cuts", opt->cuts, "Edge removals per iteration")->capture_default_str();
    cmd->add_option("--seed", opt->seed, "Random seed for triangle picks")->capture_default_str();
    cmd->add_flag("--guard", opt->guard, "Skip removals that would disconnect the graph");
    cmd->add_flag("--full-refresh", opt->full_refresh,
                  "Recompute every curvature each iteration even on unit-weight graphs");
    cmd->add_option("--out-dir", opt->out_dir, "Output directory")->required();
    cmd->callback([&sink, opt] { cmd_cbed(sink, *opt); });
  }
  {
    auto* cmd = app.add_subcommand("dynamics", "Framelet propagation energy trace");
    auto opt = std::make_shared<DynamicsOpts>();
    cmd->add_option("graph", opt->graph, "Edge-list file")->required();
    cmd->add_option("--variant", opt->variant, "Laplacian to propagate under")
        ->check(CLI::IsMember({"plain", "hom", "het"}))
        ->capture_default_str();
    cmd->add_flag("--one-based", opt->one_based, "Node ids in the input start at 1");
    opt->flags.attach(cmd);
    cmd->add_option("--theta", opt->theta, "Highpass band gain")->capture_default_str();
    cmd->add_option("--steps", opt->steps, "Propagation steps")->capture_default_str();
    cmd->add_option("--tau", opt->tau, "Step size")->capture_default_str();
    cmd->add_option("--levels", opt->levels, "Framelet levels J")->capture_default_str();
    cmd->add_option("--scale", opt->scale, "Coarsest dilation scale m")->capture_default_str();
    cmd->add_option("--degree", opt->degree,
                    "Chebyshev degree; negative uses the exact transform")
        ->capture_default_str();
    cmd->add_option("--columns", opt->columns, "Feature columns in H0")->capture_default_str();
    cmd->add_option("--seed", opt->seed, "Seed for the generic H0 draw")->capture_default_str();
    cmd->add_option("--mode", opt->mode, "Step flavor")
        ->check(CLI::IsMember({"spectral", "spatial"}))
        ->capture_default_str();
    cmd->add_flag("--dump-bands", opt->dump_bands,
                  "Write each band matrix in coordinate format");
    cmd->add_option("--out-dir", opt->out_dir, "Output directory")->required();
    cmd->callback([&sink, opt] { cmd_dynamics(sink, *opt); });
  }
  {
    auto* cmd =
        app.add_subcommand("experiment", "Label propagation accuracy across variants and seeds");
    auto opt = std::make_shared<ExperimentOpts>();
    cmd->add_option("graph", opt->graph, "Edge-list file (alternative to --generator)");
    cmd->add_option("--labels", opt->labels, "Labels CSV for a graph file");
    cmd->add_option("--generator", opt->generator, "Synthetic family, one graph per seed")
        ->check(CLI::IsMember({"homophilic", "heterophilic"}));
    cmd->add_flag("--one-based", opt->one_based, "Node ids in the inputs start at 1");
    cmd->add_option("--variants", opt->variants, "Variants to score")
        ->delimiter(',')
        ->check(CLI::IsMember({"plain", "hom", "het", "het_cbed"}));
    cmd->add_option("--seeds", opt->seeds, "Number of seeds")->capture_default_str();
    cmd->add_option("--base-seed", opt->base_seed, "First seed; run i uses base + i")
        ->capture_default_str();
    cmd->add_option("--train-frac", opt->train_fraction, "Stratified train fraction")
        ->capture_default_str();
    opt->flags.attach(cmd);
    cmd->add_option("--theta-smooth", opt->theta_smooth, "Highpass gain for plain / hom")
        ->capture_default_str();
    cmd->add_option("--theta-sharp", opt->theta_sharp, "Highpass gain for het / het_cbed")
        ->capture_default_str();
    cmd->add_option("--steps", opt->steps, "Propagation steps")->capture_default_str();
    cmd->add_option("--levels", opt->levels, "Framelet levels J")->capture_default_str();
    cmd->add_option("--scale", opt->scale, "Coarsest dilation scale m")->capture_default_str();
    cmd->add_option("--target-kappa", opt->target_kappa, "CBED curvature target")
        ->capture_default_str();
    cmd->add_option("--cbed-max-iter", opt->cbed_max_iter, "CBED iteration cap")
        ->capture_default_str();
    cmd->add_option("--cuts", opt->cuts, "CBED removals per iteration")->capture_default_str();
    cmd->add_option("--out-dir", opt->out_dir, "Output directory")->required();
    cmd->callback([&sink, opt] { cmd_experiment(sink, *opt); });
  }
  {
    auto* cmd = app.add_subcommand("homophily", "Mean same-label neighbor fraction");
    auto opt = std::make_shared<HomophilyOpts>();
    cmd->add_option("graph", opt->graph, "Edge-list file")->required();
    cmd->add_option("--labels", opt->labels, "Labels CSV")->required();
    cmd->add_flag("--one-based", opt->one_based, "Node ids in the inputs start at 1");
    cmd->add_option("--out-dir", opt->out_dir, "Output directory")->required();
    cmd->callback([&sink, opt] { cmd_homophily(sink, *opt); });
  }
  {
    auto* cmd = app.add_subcommand("rerun", "Replay a manifest into a new output directory");
    auto manifest = std::make_shared<std::string>();
    auto out_dir = std::make_shared<std::string>();
    cmd->add_option("--manifest", *manifest, "manifest.json from a previous run")->required();
    cmd->add_option("--out-dir", *out_dir, "Output directory for the replay")->required();
    cmd->callback(
        [&nested_code, manifest, out_dir] { nested_code = run(rerun_argv(*manifest, *out_dir)); });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
  return nested_code;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}
