#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ssms/analysis.hpp"
#include "ssms/error.hpp"
#include "ssms/kernels.hpp"
#include "ssms/report.hpp"
#include "ssms/run_config.hpp"
#include "ssms/sampler.hpp"
#include "ssms/suites.hpp"

using namespace ssms;

namespace {

void add_model_options(CLI::App* cmd, ModelSpec& model, std::string& graph) {
  cmd->add_option("--model", model.name, "hardcore | ising | coloring | monomer-dimer")->required();
  cmd->add_option("--lambda", model.lambda, "activity (hardcore) or edge weight (ising)");
  cmd->add_option("--gamma", model.gamma, "dimer activity (monomer-dimer)");
  cmd->add_option("--q", model.q, "number of colours (coloring)");
  cmd->add_option("--graph", graph, "z2 | zd:D | tree:DEG | file:PATH | path:N | cycle:N | grid:RxC | complete:N | "
                                    "star:N | petersen | line:<spec>")
      ->capture_default_str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << bytes;
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path);
}

/// Refuses systems whose partition function vanishes when the graph is small
/// enough to enumerate.
void check_nondegenerate(const Model& m) {
  if (!m.graph.is_finite()) return;
  auto n = m.graph.vertices().size();
  if (static_cast<double>(n) * std::log2(m.system.q()) > kernels::kCapLog2) return;
  partition_function(m.system, m.graph);
}

int cmd_sample(const RunConfig& cfg) {
  cfg.validate();
  Model m = build_model(cfg.model, parse_graph(cfg.graph));
  check_nondegenerate(m);
  auto window = parse_window(cfg.window, m.graph);
  Sampler sampler(m.system, m.graph, {cfg.radius, cfg.budget, false});

  RandomSource rng(cfg.seed);
  auto t0 = std::chrono::steady_clock::now();
  auto sample = sampler.sample_window(window, rng);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  auto report = RunReport::from(cfg.seed, m.system.label(), m.graph.description(), cfg.radius, window, sample);
  if (cfg.record_time) report.wall_time_ms = ms;

  std::ostringstream csv;
  write_spins_csv(csv, sample.spins);
  write_file(cfg.out + ".csv", csv.str());
  write_file(cfg.out + ".json", report.to_json());
  std::ostringstream pgm;
  bool image = m.system.q() == 2 && m.graph.kind() == LocalGraph::Kind::Lattice && m.graph.dimension() == 2 &&
               write_pgm(pgm, sample.spins);
  if (image) write_file(cfg.out + ".pgm", pgm.str());

  std::cout << "sampled " << window.size() << " vertices with " << report.total_calls << " calls (max depth "
            << report.max_depth << ", " << report.indecision_events << " indecision events); wrote " << cfg.out
            << ".csv " << cfg.out << ".json" << (image ? " " + cfg.out + ".pgm" : "") << "\n";
  return 0;
}

int cmd_estimate(const ModelSpec& spec, const std::string& graph, int min_radius, int max_radius, int probes,
                 std::uint64_t probe_seed, const std::string& out, const std::string& save_rate) {
  if (min_radius < 1 || max_radius < min_radius)
    throw Error(ErrorCode::ConfigError, "empty radius range " + std::to_string(min_radius) + ".." +
                                            std::to_string(max_radius));
  if (probes < 0) throw Error(ErrorCode::ConfigError, "probe count must be nonnegative");
  Model m = build_model(spec, parse_graph(graph));
  std::vector<int> radii;
  for (int r = min_radius; r <= max_radius; ++r) radii.push_back(r);
  auto rate = estimate_mixing_rate(m.system, m.graph, radii, ProbeSpec{probes, probe_seed});

  std::vector<BranchingBound> rows;
  std::optional<int> least;
  for (int r : radii) {
    rows.push_back(branching_bound(m.system, m.graph, r, rate));
    if (!least && rows.back().contractive()) least = r;
  }
  std::ostringstream csv;
  csv << std::setprecision(10) << "ell,f_hat,g,alpha,bound,least_contractive\n";
  for (const auto& b : rows) {
    csv << b.radius << ',' << b.f << ',' << b.g << ',' << b.alpha << ',';
    if (b.expected_size) csv << *b.expected_size;
    csv << ',' << (least && *least == b.radius ? "yes" : "") << '\n';
  }
  if (out.empty())
    std::cout << csv.str();
  else
    write_file(out, csv.str());
  if (!save_rate.empty()) {
    std::ostringstream r;
    rate.write_csv(r);
    write_file(save_rate, r.str());
  }
  return 0;
}

int cmd_verify(const std::string& suite, const suites::SuiteOptions& opts, const std::string& out) {
  auto result = suites::run(suite, opts);
  std::ostringstream csv;
  result.write_csv(csv);
  if (out.empty())
    std::cout << csv.str();
  else
    write_file(out, csv.str());
  return result.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perfect sampler for spin systems on finite and infinite graphs"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto* sample = app.add_subcommand("sample", "draw one window sample and write CSV, JSON and PGM outputs");
  add_model_options(sample, cfg.model, cfg.graph);
  sample->add_option("--window", cfg.window, "all | box:RxC@X,Y | list:V1|V2|...")->capture_default_str();
  sample->add_option("--radius", cfg.radius, "sphere radius ell")->capture_default_str();
  sample->add_option("--seed", cfg.seed, "random seed (positive)")->capture_default_str();
  auto* budget_opt = sample->add_option("--budget", cfg.budget, "call budget per window vertex");
  sample->add_option("--out", cfg.out, "output path prefix")->capture_default_str();
  sample->add_flag("--record-time", cfg.record_time, "store wall-clock time in the JSON report");

  ModelSpec est_model;
  std::string est_graph = "z2", est_out, est_save;
  int min_radius = 1, max_radius = 2, probes = 8;
  std::uint64_t probe_seed = 1;
  auto* estimate = app.add_subcommand("estimate-mixing", "estimate f(ell) and the branching factor per radius");
  add_model_options(estimate, est_model, est_graph);
  estimate->add_option("--min-radius", min_radius)->capture_default_str();
  estimate->add_option("--max-radius", max_radius)->capture_default_str();
  estimate->add_option("--probes", probes, "random probe contexts per vertex")->capture_default_str();
  estimate->add_option("--probe-seed", probe_seed)->capture_default_str();
  estimate->add_option("--out", est_out, "CSV path (default stdout)");
  estimate->add_option("--save-rate", est_save, "write the radius,f table here");

  std::string suite, verify_out;
  suites::SuiteOptions vopts;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "distribution | lemma1 | runtime | coupling")->required();
  verify->add_option("--seed", vopts.seed)->capture_default_str();
  verify->add_option("--scale", vopts.scale, "multiplier on sample counts")->capture_default_str();
  auto* verify_budget = verify->add_option("--budget", vopts.budget, "call budget per vertex")->capture_default_str();
  verify->add_option("--out", verify_out, "CSV path (default stdout)");
  bool verbose = false;
  verify->add_flag("--progress", verbose, "print per-case progress to stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << code_name(ErrorCode::ConfigError) << ": " << e.what() << "\n";
    return exit_status(ErrorCode::ConfigError);
  }

  try {
    if (*sample) {
      if (budget_opt->count() == 0) cfg.budget = budget_from_env(cfg.budget);
      return cmd_sample(cfg);
    }
    if (*estimate) return cmd_estimate(est_model, est_graph, min_radius, max_radius, probes, probe_seed, est_out, est_save);
    if (*verify) {
      if (verify_budget->count() == 0) vopts.budget = budget_from_env(vopts.budget);
      if (verbose) vopts.progress = &std::cerr;
      return cmd_verify(suite, vopts, verify_out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << code_name(e.code()) << ": " << e.what() << "\n";
    return exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << code_name(ErrorCode::InternalError) << ": " << e.what() << "\n";
    return exit_status(ErrorCode::InternalError);
  }
  return 0;
}
