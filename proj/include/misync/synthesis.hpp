#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "misync/graph.hpp"
#include "misync/sampling.hpp"

namespace misync {

enum class Topology { Complete, SmallWorld, Custom };

struct SynthesisConfig {
  Group group = Group::SO3;
  int num_nodes = 60;
  Topology topology = Topology::SmallWorld;
  int k_local = 6;          // even: ring neighbors per node before rewiring
  double rewire_prob = 0.1;
  std::vector<std::pair<int, int>> custom_edges;  // used when topology = Custom
  // Measurement concentration; 0 picks the group default, +infinity draws
  // exact measurements (the stored per-edge kappa then falls back to the
  // group default so downstream lambda policies stay finite).
  double kappa = 0.0;
  std::vector<double> per_edge_kappa;  // optional, Custom topology only
  double corrupt_fraction = 0.0;       // edges replaced by uniform junk
  std::uint64_t seed = 1;
};

double default_kappa(Group group);  // 25 for SO(3), 50 for SO(2)

struct SyntheticInstance {
  MeasurementGraph graph;            // ground truth stored in graph.truth
  std::vector<int> corrupted_edges;  // indices into graph.edges, ascending
};

// Measurement graph with uniform ground truth and rel_e = g_i^{-1} g_j times
// unit-mode Langevin noise at the edge's kappa; a seeded subset of edges is
// replaced by uniform samples instead. Corruption is invisible to the
// solver: every edge stores its nominal kappa. Deterministic in the seed.
SyntheticInstance synthesize(const SynthesisConfig& cfg);

// Exposed for topology tests: ring lattice with k_local/2 neighbors per
// side, each edge rewired with probability p (keep endpoint i, redraw j
// avoiding self loops and duplicates). Edge pairs returned with i < j.
std::vector<std::pair<int, int>> watts_strogatz(int n, int k_local, double p, Rng& rng);

}  // namespace misync
