// Command-line front end: generate synthetic instances, run the solver,
// score estimates against ground truth, and sweep method/corruption grids.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "misync/errors.hpp"
#include "misync/evaluation.hpp"
#include "misync/io.hpp"
#include "misync/solver.hpp"
#include "misync/synthesis.hpp"

namespace {

using nlohmann::ordered_json;

misync::Group parse_group(const std::string& s) {
  if (s == "SO2" || s == "so2") return misync::Group::SO2;
  if (s == "SO3" || s == "so3") return misync::Group::SO3;
  throw misync::UsageError("cli: unknown group '" + s + "' (expected SO2 or SO3)");
}

misync::Topology parse_topology(const std::string& s) {
  if (s == "complete") return misync::Topology::Complete;
  if (s == "small-world") return misync::Topology::SmallWorld;
  throw misync::UsageError("cli: unknown topology '" + s + "' (expected complete or small-world)");
}

// Method tokens for sweeps: "baseline" or "<loss>-l<band>", e.g. "cauchy-l8".
misync::SolverConfig parse_method(const std::string& token) {
  misync::SolverConfig cfg;
  if (token == "baseline") {
    cfg.baseline = true;
    return cfg;
  }
  const auto dash = token.rfind("-l");
  if (dash == std::string::npos)
    throw misync::UsageError("cli: bad method '" + token + "' (expected baseline or <loss>-l<N>)");
  cfg.loss = misync::loss_from_name(token.substr(0, dash));
  try {
    cfg.lmax = std::stoi(token.substr(dash + 2));
  } catch (const std::exception&) {
    throw misync::UsageError("cli: bad band limit in method '" + token + "'");
  }
  return cfg;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_json(const ordered_json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw misync::UsageError("cli: cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
}

void save_text(const misync::MeasurementGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw misync::UsageError("cli: cannot open '" + path + "' for writing");
  misync::write_graph_text(g, out);
}

ordered_json eval_json(const misync::EvalReport& rep) {
  return ordered_json{{"frobenius", rep.frobenius},
                      {"worst", rep.worst},
                      {"mean_angle", rep.mean_angle},
                      {"max_angle", rep.max_angle}};
}

int cmd_generate(const misync::SynthesisConfig& cfg, const std::string& out_prefix) {
  const misync::SyntheticInstance inst = misync::synthesize(cfg);

  misync::MeasurementGraph graph_only = inst.graph;
  graph_only.truth.clear();
  save_text(graph_only, out_prefix + ".graph");

  misync::MeasurementGraph truth_only;
  truth_only.group = inst.graph.group;
  truth_only.num_nodes = inst.graph.num_nodes;
  truth_only.truth = inst.graph.truth;
  save_text(truth_only, out_prefix + ".truth");

  ordered_json manifest;
  manifest["group"] = inst.graph.group == misync::Group::SO2 ? "SO2" : "SO3";
  manifest["nodes"] = inst.graph.num_nodes;
  manifest["edges"] = inst.graph.edges.size();
  manifest["topology"] = cfg.topology == misync::Topology::Complete ? "complete" : "small-world";
  manifest["k_local"] = cfg.k_local;
  manifest["rewire_prob"] = cfg.rewire_prob;
  manifest["kappa"] = std::isinf(cfg.kappa) ? -1.0 : cfg.kappa;
  manifest["exact_measurements"] = std::isinf(cfg.kappa);
  manifest["corrupt_fraction"] = cfg.corrupt_fraction;
  manifest["corrupted_edges"] = inst.corrupted_edges;
  manifest["seed"] = cfg.seed;
  manifest["files"] = {out_prefix + ".graph", out_prefix + ".truth"};
  write_json(manifest, out_prefix + ".json");

  std::cout << "wrote " << out_prefix << ".graph (" << inst.graph.edges.size() << " edges), "
            << out_prefix << ".truth, " << out_prefix << ".json\n";
  return 0;
}

int cmd_solve(const std::string& graph_path, const std::string& truth_path,
              misync::SolverConfig cfg, const std::string& out_prefix,
              const std::string& posterior_path, bool verbose) {
  if (verbose) cfg.log = &std::cerr;
  misync::MeasurementGraph g = misync::load_graph(graph_path);
  if (!truth_path.empty()) {
    const misync::MeasurementGraph t = misync::load_graph(truth_path);
    if (t.truth.empty()) throw misync::UsageError("cli: '" + truth_path + "' has no NODE lines");
    g.truth = t.truth;
    misync::validate_graph(g);
  }

  const misync::SolveResult res = misync::solve(g, cfg);

  misync::MeasurementGraph estimate;
  estimate.group = g.group;
  estimate.num_nodes = g.num_nodes;
  estimate.truth = res.rotations;
  save_text(estimate, out_prefix + ".estimate");

  misync::MeasurementGraph denoised = res.denoised.graph;
  denoised.truth.clear();
  save_text(denoised, out_prefix + ".denoised");

  ordered_json rep;
  rep["config"] = {{"lmax", cfg.baseline ? 1 : cfg.lmax},
                   {"loss", misync::loss_name(cfg.baseline ? misync::LossKind::Quadratic : cfg.loss)},
                   {"lambda", cfg.lambda},
                   {"kernel", misync::kernel_name(cfg.kernel)},
                   {"baseline", cfg.baseline},
                   {"clamp_negative", cfg.clamp_negative},
                   {"grid_res", cfg.consensus.grid_res},
                   {"refine_steps", cfg.consensus.refine_steps},
                   {"threads", cfg.consensus.threads},
                   {"seed", cfg.eig.seed}};
  rep["graph"] = {{"group", g.group == misync::Group::SO2 ? "SO2" : "SO3"},
                  {"nodes", g.num_nodes},
                  {"edges", g.edges.size()}};
  ordered_json timings;
  for (const auto& p : res.timings) timings[p.name] = p.seconds;
  rep["timings_s"] = timings;
  rep["quadrature"] = {{"nodes", res.quadrature.nodes},
                       {"est_error", res.quadrature.est_error},
                       {"fallback", res.quadrature.fallback}};
  rep["distinct_weight_profiles"] = res.distinct_weight_profiles;

  ordered_json irreps = ordered_json::array();
  for (std::size_t k = 0; k < res.blocks.size(); ++k) {
    const misync::SpectralBlock& b = res.blocks[k];
    std::vector<double> evals(b.eigenvalues.data(), b.eigenvalues.data() + b.eigenvalues.size());
    irreps.push_back({{"irrep", b.rho.index},
                      {"spectral_gap", b.spectral_gap},
                      {"gap_degenerate", b.gap_degenerate},
                      {"stiefel_error", b.stiefel_error},
                      {"dense_solver", b.dense},
                      {"iterations", b.iterations},
                      {"negative_weight_edges", res.negative_edges_by_irrep[k]},
                      {"eigenvalues", evals}});
  }
  rep["irreps"] = irreps;

  double mean_sharp = 0.0, min_sharp = std::numeric_limits<double>::infinity();
  ordered_json edges = ordered_json::array();
  for (const misync::EdgeEstimate& e : res.denoised.edges) {
    mean_sharp += e.sharpness;
    min_sharp = std::min(min_sharp, e.sharpness);
    edges.push_back({{"i", e.i}, {"j", e.j}, {"peak", e.peak}, {"sharpness", e.sharpness}});
  }
  if (!res.denoised.edges.empty()) mean_sharp /= static_cast<double>(res.denoised.edges.size());
  rep["consensus"] = {{"delta_height", misync::delta_height(g.group, cfg.baseline ? 1 : cfg.lmax)},
                      {"mean_sharpness", mean_sharp},
                      {"min_sharpness", min_sharp}};
  rep["edges"] = edges;

  if (!g.truth.empty()) {
    rep["evaluation"] = eval_json(misync::compare_rotations(g.truth, res.rotations));
    const misync::EdgeErrorStats es = misync::denoised_edge_errors(g, res.denoised.edges);
    rep["denoised_edges"] = {{"mean_angle", es.mean_angle},
                             {"max_angle", es.max_angle},
                             {"rms_chordal", es.rms_chordal}};
  }
  write_json(rep, out_prefix + ".report.json");

  if (!posterior_path.empty()) {
    std::ofstream out(posterior_path);
    if (!out) throw misync::UsageError("cli: cannot open '" + posterior_path + "' for writing");
    out << std::setprecision(17) << "i,j,irrep,row,col,value\n";
    for (const misync::Edge& e : g.edges) {
      const misync::EdgePosterior p = misync::edge_posterior(res.blocks, e.i, e.j);
      for (std::size_t r = 0; r < p.d.size(); ++r)
        for (int a = 0; a < p.d[r].rows(); ++a)
          for (int b = 0; b < p.d[r].cols(); ++b)
            out << e.i << ',' << e.j << ',' << r + 1 << ',' << a << ',' << b << ','
                << p.d[r](a, b) << '\n';
    }
  }

  std::cout << "wrote " << out_prefix << ".estimate, " << out_prefix << ".denoised, "
            << out_prefix << ".report.json\n";
  if (!g.truth.empty()) {
    const auto& ev = rep["evaluation"];
    std::cout << "frobenius " << ev["frobenius"].get<double>() << "  worst "
              << ev["worst"].get<double>() << "  mean angle " << ev["mean_angle"].get<double>()
              << " rad\n";
  }
  return 0;
}

int cmd_eval(const std::string& truth_path, const std::string& estimate_path,
             const std::string& out_path) {
  const misync::MeasurementGraph t = misync::load_graph(truth_path);
  const misync::MeasurementGraph e = misync::load_graph(estimate_path);
  if (t.truth.empty()) throw misync::UsageError("cli: '" + truth_path + "' has no NODE lines");
  if (e.truth.empty()) throw misync::UsageError("cli: '" + estimate_path + "' has no NODE lines");
  const misync::EvalReport rep = misync::compare_rotations(t.truth, e.truth);
  std::cout << "frobenius " << rep.frobenius << '\n'
            << "worst     " << rep.worst << '\n'
            << "mean angle " << rep.mean_angle << " rad\n"
            << "max angle  " << rep.max_angle << " rad\n";
  if (!out_path.empty()) write_json(eval_json(rep), out_path);
  return 0;
}

int cmd_sweep(misync::SynthesisConfig base, const std::string& corrupt_csv,
              const std::string& methods_csv, int seeds, int threads,
              const std::string& out_path) {
  const std::vector<std::string> method_tokens = split_list(methods_csv);
  std::vector<double> corruptions;
  for (const std::string& c : split_list(corrupt_csv)) corruptions.push_back(std::stod(c));
  if (method_tokens.empty() || corruptions.empty() || seeds < 1)
    throw misync::UsageError("cli: sweep needs at least one method, corruption level and seed");

  std::ofstream out(out_path);
  if (!out) throw misync::UsageError("cli: cannot open '" + out_path + "' for writing");
  out << "method,corruption,seeds,failures,mean_frobenius,mean_worst\n";

  for (const std::string& token : method_tokens) {
    misync::SolverConfig cfg = parse_method(token);
    cfg.consensus.threads = threads;
    for (double corrupt : corruptions) {
      double sum_f = 0.0, sum_w = 0.0;
      int ok = 0, failed = 0;
      for (int s = 0; s < seeds; ++s) {
        misync::SynthesisConfig scfg = base;
        scfg.corrupt_fraction = corrupt;
        scfg.seed = base.seed + static_cast<unsigned>(s);
        try {
          const misync::SyntheticInstance inst = misync::synthesize(scfg);
          const misync::SolveResult res = misync::solve(inst.graph, cfg);
          const misync::EvalReport rep = misync::compare_rotations(inst.graph.truth, res.rotations);
          sum_f += rep.frobenius;
          sum_w += rep.worst;
          ++ok;
        } catch (const std::exception& ex) {
          ++failed;
          std::cerr << "sweep: " << token << " corrupt=" << corrupt << " seed=" << scfg.seed
                    << " failed: " << ex.what() << '\n';
        }
      }
      out << token << ',' << corrupt << ',' << ok << ',' << failed << ',';
      if (ok > 0) {
        out << sum_f / ok << ',' << sum_w / ok << '\n';
      } else {
        out << "nan,nan\n";
      }
      out.flush();
      std::cerr << "sweep: " << token << " corrupt=" << corrupt << " done (" << ok << '/'
                << seeds << " seeds)\n";
    }
  }
  std::cout << "wrote " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-irreducible spectral synchronization over SO(2) and SO(3)"};
  app.require_subcommand(1);

  // generate
  std::string gen_group = "SO3", gen_topology = "small-world", gen_out = "instance";
  misync::SynthesisConfig gen_cfg;
  bool gen_exact = false;
  CLI::App* gen = app.add_subcommand("generate", "Synthesize a measurement graph");
  gen->set_config("--config", "", "Read options from a key=value file");
  gen->add_option("--group", gen_group, "SO2 or SO3")->capture_default_str();
  gen->add_option("--nodes", gen_cfg.num_nodes, "Number of nodes")->capture_default_str();
  gen->add_option("--topology", gen_topology, "complete or small-world")->capture_default_str();
  gen->add_option("--k-local", gen_cfg.k_local, "Ring degree before rewiring")
      ->capture_default_str();
  gen->add_option("--rewire", gen_cfg.rewire_prob, "Rewiring probability")->capture_default_str();
  gen->add_option("--kappa", gen_cfg.kappa, "Langevin concentration; 0 picks the group default")
      ->capture_default_str();
  gen->add_flag("--exact", gen_exact, "Noise-free measurements");
  gen->add_option("--corrupt", gen_cfg.corrupt_fraction, "Fraction of edges replaced uniformly")
      ->capture_default_str();
  gen->add_option("--seed", gen_cfg.seed, "RNG seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output prefix")->capture_default_str();

  // solve
  std::string sol_graph, sol_truth, sol_out = "solution", sol_posterior;
  std::string sol_loss = "cauchy", sol_kernel = "fejer";
  bool sol_verbose = false;
  misync::SolverConfig sol_cfg;
  CLI::App* sol = app.add_subcommand("solve", "Run the synchronization pipeline");
  sol->add_option("--graph", sol_graph, "Input graph (native text or g2o)")->required();
  sol->add_option("--truth", sol_truth, "Ground-truth NODE file for scoring");
  sol->add_option("--lmax", sol_cfg.lmax, "Band limit")->capture_default_str();
  sol->add_option("--loss", sol_loss, "quadratic, cauchy or gmc")->capture_default_str();
  sol->add_option("--lambda", sol_cfg.lambda, "Robust scale; 0 derives it from kappa")
      ->capture_default_str();
  sol->add_option("--kernel", sol_kernel, "dirichlet or fejer")->capture_default_str();
  sol->add_flag("--baseline", sol_cfg.baseline, "Classical spectral baseline (quadratic, lmax 1)");
  sol->add_flag("--clamp-negative", sol_cfg.clamp_negative, "Drop negative transformed weights");
  sol->add_option("--grid-res", sol_cfg.consensus.grid_res,
                  "Consensus grid step in radians; 0 derives it from the band limit")
      ->capture_default_str();
  sol->add_option("--refine-steps", sol_cfg.consensus.refine_steps,
                  "Golden-section iterations per axis")
      ->capture_default_str();
  sol->add_option("--sweeps", sol_cfg.consensus.max_sweeps, "Coordinate-descent sweeps")
      ->capture_default_str();
  sol->add_option("--threads", sol_cfg.consensus.threads, "Consensus worker threads")
      ->capture_default_str();
  sol->add_option("--seed", sol_cfg.eig.seed, "Eigensolver seed")->capture_default_str();
  sol->add_option("--dump-posterior", sol_posterior, "CSV of per-edge posterior coefficients");
  sol->add_flag("--verbose", sol_verbose, "Phase timings and warnings on stderr");
  sol->add_option("--out", sol_out, "Output prefix")->capture_default_str();

  // eval
  std::string ev_truth, ev_estimate, ev_out;
  CLI::App* ev = app.add_subcommand("eval", "Score an estimate against ground truth");
  ev->add_option("--truth", ev_truth, "Ground-truth NODE file")->required();
  ev->add_option("--estimate", ev_estimate, "Estimate NODE file")->required();
  ev->add_option("--out", ev_out, "Optional JSON report path");

  // sweep
  std::string sw_group = "SO3", sw_corrupt = "0,0.1,0.2", sw_methods = "baseline,cauchy-l8";
  std::string sw_out = "sweep.csv";
  int sw_seeds = 10, sw_threads = 1;
  misync::SynthesisConfig sw_cfg;
  sw_cfg.num_nodes = 50;
  sw_cfg.k_local = 8;
  sw_cfg.rewire_prob = 0.3;
  CLI::App* sw = app.add_subcommand("sweep", "Method x corruption grid on synthetic instances");
  sw->set_config("--config", "", "Read options from a key=value file");
  sw->add_option("--group", sw_group, "SO2 or SO3")->capture_default_str();
  sw->add_option("--nodes", sw_cfg.num_nodes, "Number of nodes")->capture_default_str();
  sw->add_option("--k-local", sw_cfg.k_local, "Ring degree before rewiring")
      ->capture_default_str();
  sw->add_option("--rewire", sw_cfg.rewire_prob, "Rewiring probability")->capture_default_str();
  sw->add_option("--kappa", sw_cfg.kappa, "Langevin concentration; 0 picks the group default")
      ->capture_default_str();
  sw->add_option("--corrupt", sw_corrupt, "Comma-separated corruption fractions")
      ->capture_default_str();
  sw->add_option("--methods", sw_methods, "Comma-separated method tokens")->capture_default_str();
  sw->add_option("--seeds", sw_seeds, "Seeds per cell")->capture_default_str();
  sw->add_option("--seed", sw_cfg.seed, "Base RNG seed")->capture_default_str();
  sw->add_option("--threads", sw_threads, "Consensus worker threads")->capture_default_str();
  sw->add_option("--out", sw_out, "Output CSV path")->capture_default_str();

  try {
    app.parse(argc, argv);
    if (gen->parsed()) {
      gen_cfg.group = parse_group(gen_group);
      gen_cfg.topology = parse_topology(gen_topology);
      if (gen_exact) gen_cfg.kappa = std::numeric_limits<double>::infinity();
      return cmd_generate(gen_cfg, gen_out);
    }
    if (sol->parsed()) {
      sol_cfg.loss = misync::loss_from_name(sol_loss);
      sol_cfg.kernel = misync::kernel_from_name(sol_kernel);
      return cmd_solve(sol_graph, sol_truth, sol_cfg, sol_out, sol_posterior, sol_verbose);
    }
    if (ev->parsed()) return cmd_eval(ev_truth, ev_estimate, ev_out);
    if (sw->parsed()) {
      sw_cfg.group = parse_group(sw_group);
      return cmd_sweep(sw_cfg, sw_corrupt, sw_methods, sw_seeds, sw_threads, sw_out);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "misync: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
