#pragma once

#include <vector>

#include "misync/graph.hpp"
#include "misync/spectral.hpp"

namespace misync {

struct ConsensusOptions {
  // Coarse grid step in radians; 0 derives one from the band limit. Must not
  // exceed pi / (2 lmax + 1), the sampling bound for a band-limited peak.
  double grid_res = 0.0;
  int refine_steps = 40;  // golden-section iterations per axis
  int max_sweeps = 8;     // coordinate-descent sweeps after the grid stage
  int threads = 1;
};

// Band coefficients of one edge's posterior: d[r-1] = (phi_i)^T phi_j at
// irrep r. Gauge free (any orthogonal remix of an embedding cancels in the
// Gram product) and, for a perfect embedding, equal to rho(g_i^{-1} g_j).
struct EdgePosterior {
  Group group = Group::SO3;
  int i = 0;
  int j = 0;
  std::vector<Eigen::MatrixXd> d;
};

// blocks must cover irreps 1..lmax in order.
EdgePosterior edge_posterior(const std::vector<SpectralBlock>& blocks, int i, int j);

// Pointwise posterior 1 + sum_rho d_rho <rho(g), D_rho>; a perfect embedding
// makes this the band-limited delta peaked at the true relative rotation.
double posterior_value(const EdgePosterior& p, const Rotation& g);

// Height of the band-limited delta at its center; normalizes peak values
// into the sharpness diagnostic.
double delta_height(Group group, int lmax);

struct EdgeEstimate {
  int i = 0;
  int j = 0;
  Rotation g;              // posterior maximizer; estimates g_i^{-1} g_j
  double peak = 0.0;       // posterior value at the maximizer
  double sharpness = 0.0;  // peak / delta_height, 1 when noiseless
};

// Argmax of the squared posterior over the group: coarse grid (ties to the
// lowest grid index) then coordinate-wise golden-section refinement.
EdgeEstimate argmax_on_group(const EdgePosterior& p, const ConsensusOptions& opts = {});

struct DenoiseResult {
  // Input topology and kappas with each rel replaced by the posterior
  // maximizer. Reverse orientations are implied: the estimate for (j,i) is
  // the stored estimate's inverse, which Rotation computes exactly.
  MeasurementGraph graph;
  std::vector<EdgeEstimate> edges;  // aligned with graph.edges
};

DenoiseResult denoise_graph(const MeasurementGraph& g,
                            const std::vector<SpectralBlock>& blocks,
                            const ConsensusOptions& opts = {});

// Nearest rotation matrix in Frobenius norm. Throws NumericError when the
// input is too close to singular for the projection to mean anything.
Eigen::MatrixXd project_to_group(const Eigen::MatrixXd& m);

// Per-node rotations from a fundamental-irrep embedding: repair the global
// reflection if the embedding landed in the orientation-reversing coset,
// project each block column, then gauge fix so node 0 is the identity.
std::vector<Rotation> rotations_from_block(const SpectralBlock& fundamental);

// Absolute rotations from denoised relative measurements: unit-weight
// fundamental-irrep synchronization over the given graph, then
// rotations_from_block. Gauge: node 0 is the identity.
std::vector<Rotation> recover_rotations(const MeasurementGraph& denoised,
                                        const EigOptions& eig = {});

}  // namespace misync
