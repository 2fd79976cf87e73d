#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "misync/consensus.hpp"
#include "misync/fourier.hpp"
#include "misync/graph.hpp"
#include "misync/loss.hpp"
#include "misync/spectral.hpp"

namespace misync {

struct SolverConfig {
  int lmax = 8;                 // band limit, 1..kMaxIrrepIndex
  LossKind loss = LossKind::Cauchy;
  double lambda = 0.0;          // robust scale; 0 derives it from each edge's kappa
  KernelTag kernel = KernelTag::Fejer;
  bool baseline = false;        // classical spectral pipeline: quadratic loss, lmax 1
  bool clamp_negative = false;  // drop edges whose transformed weight went negative
  ConsensusOptions consensus;
  EigOptions eig;
  QuadratureOptions quadrature;
  std::ostream* log = nullptr;  // phase timings and warnings, when set
};

struct PhaseTiming {
  std::string name;
  double seconds = 0.0;
};

struct SolveResult {
  std::vector<Rotation> rotations;  // gauge: node 0 is the identity
  DenoiseResult denoised;
  std::vector<SpectralBlock> blocks;          // irreps 1..lmax on the input graph
  std::vector<int> negative_edges_by_irrep;   // dropped or kept per clamp_negative
  QuadratureInfo quadrature;                  // summed over distinct weight profiles
  int distinct_weight_profiles = 0;           // transforms actually computed
  std::vector<PhaseTiming> timings;           // transform, spectral, consensus, recovery
};

// Transformed per-edge weights in graph.edges order, memoized across edges
// sharing (kappa, lambda). Exposed separately so tests and tools can inspect
// the transform the solve would use.
std::vector<FourierWeights> edge_weight_profiles(const MeasurementGraph& g,
                                                 const SolverConfig& cfg,
                                                 QuadratureInfo* total = nullptr,
                                                 int* distinct = nullptr);

// Full pipeline: transform edge losses, synchronize every irreducible up to
// the band limit, denoise each edge by consensus over the per-irrep Gram
// blocks, then re-synchronize the denoised graph at the fundamental irrep.
SolveResult solve(const MeasurementGraph& g, const SolverConfig& cfg = {});

}  // namespace misync
