#include "misync/solver.hpp"

#include <chrono>
#include <map>
#include <ostream>
#include <utility>

#include "misync/errors.hpp"
#include "misync/laplacian.hpp"

namespace misync {
namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SolverConfig effective(const SolverConfig& cfg) {
  SolverConfig e = cfg;
  if (e.baseline) {
    e.loss = LossKind::Quadratic;
    e.lmax = 1;
  }
  if (e.lmax < 1) throw UsageError("solver: lmax must be at least 1");
  if (e.lmax > kMaxIrrepIndex)
    throw CapabilityError("solver: lmax " + std::to_string(e.lmax) + " exceeds the cap of " +
                          std::to_string(kMaxIrrepIndex));
  if (e.loss == LossKind::Custom)
    throw UsageError("solver: custom losses need explicit weights; use the library API");
  return e;
}

}  // namespace

std::vector<FourierWeights> edge_weight_profiles(const MeasurementGraph& g,
                                                 const SolverConfig& cfg_in,
                                                 QuadratureInfo* total, int* distinct) {
  const SolverConfig cfg = effective(cfg_in);
  // Langevin-sampled instances reuse a handful of kappa values, so key the
  // transform on (kappa, lambda) rather than recomputing per edge.
  std::map<std::pair<double, double>, FourierWeights> cache;
  std::vector<FourierWeights> out;
  out.reserve(g.edges.size());
  QuadratureInfo agg;
  for (const Edge& e : g.edges) {
    const LossSpec spec = edge_loss(cfg.loss, g.group, e.kappa, cfg.lambda);
    const std::pair<double, double> key{e.kappa, spec.kind == LossKind::Quadratic ? 0.0
                                                                                  : spec.lambda};
    auto it = cache.find(key);
    if (it == cache.end()) {
      FourierWeights w =
          loss_fourier_coefficients(g.group, spec, cfg.lmax, cfg.kernel, cfg.quadrature);
      agg.nodes += w.quad.nodes;
      agg.est_error += w.quad.est_error;
      agg.fallback = agg.fallback || w.quad.fallback;
      it = cache.emplace(key, std::move(w)).first;
    }
    out.push_back(it->second);
  }
  if (total) *total = agg;
  if (distinct) *distinct = static_cast<int>(cache.size());
  return out;
}

SolveResult solve(const MeasurementGraph& g, const SolverConfig& cfg_in) {
  const SolverConfig cfg = effective(cfg_in);
  validate_graph(g);
  require_connected(g);

  SolveResult res;
  auto t0 = std::chrono::steady_clock::now();
  const std::vector<FourierWeights> weights =
      edge_weight_profiles(g, cfg, &res.quadrature, &res.distinct_weight_profiles);
  res.timings.push_back({"transform", seconds_since(t0)});

  t0 = std::chrono::steady_clock::now();
  LaplacianOptions lopts;
  lopts.clamp_negative = cfg.clamp_negative;
  res.blocks.reserve(cfg.lmax);
  res.negative_edges_by_irrep.reserve(cfg.lmax);
  for (int r = 1; r <= cfg.lmax; ++r) {
    const IrrepIndex rho{g.group, r};
    RhoLaplacian lap = build_rho_laplacian(g, weights, rho, lopts);
    res.negative_edges_by_irrep.push_back(lap.negative_weight_edges);
    if (lap.negative_weight_edges > 0 && cfg.log)
      *cfg.log << "solver: irrep " << r << ": " << lap.negative_weight_edges
               << " negative edge weights" << (cfg.clamp_negative ? " dropped" : " kept") << '\n';
    res.blocks.push_back(extract_block(lap, cfg.eig));
    if (res.blocks.back().gap_degenerate && cfg.log)
      *cfg.log << "solver: irrep " << r << ": spectral gap below the degeneracy floor\n";
  }
  res.timings.push_back({"spectral", seconds_since(t0)});

  t0 = std::chrono::steady_clock::now();
  res.denoised = denoise_graph(g, res.blocks, cfg.consensus);
  res.timings.push_back({"consensus", seconds_since(t0)});

  t0 = std::chrono::steady_clock::now();
  res.rotations = recover_rotations(res.denoised.graph, cfg.eig);
  res.timings.push_back({"recovery", seconds_since(t0)});

  if (cfg.log) {
    for (const PhaseTiming& p : res.timings)
      *cfg.log << "solver: " << p.name << ' ' << p.seconds << "s\n";
  }
  return res;
}

}  // namespace misync
