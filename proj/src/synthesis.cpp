#include "misync/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "misync/errors.hpp"

namespace misync {

double default_kappa(Group group) { return group == Group::SO3 ? 25.0 : 50.0; }

std::vector<std::pair<int, int>> watts_strogatz(int n, int k_local, double p, Rng& rng) {
  if (k_local < 2 || k_local % 2 != 0 || k_local >= n)
    throw UsageError("synthesis: k_local must be even, >= 2 and < num_nodes");
  if (p < 0.0 || p > 1.0) throw UsageError("synthesis: rewire_prob outside [0, 1]");

  std::set<std::pair<int, int>> edges;
  // minmax by value: the reference pair it returns would dangle.
  const auto key = [](int a, int b) { return std::pair<int, int>(std::min(a, b), std::max(a, b)); };
  for (int v = 0; v < n; ++v)
    for (int s = 1; s <= k_local / 2; ++s) edges.insert(key(v, (v + s) % n));

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> node(0, n - 1);
  std::vector<std::pair<int, int>> out(edges.begin(), edges.end());
  for (auto& e : out) {
    if (unit(rng) >= p) continue;
    const int i = e.first;
    for (int attempt = 0; attempt < 64; ++attempt) {
      const int j = node(rng);
      if (j == i || edges.count(key(i, j))) continue;
      edges.erase(e);
      e = key(i, j);
      edges.insert(e);
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<std::pair<int, int>> topology_edges(const SynthesisConfig& cfg, Rng& rng) {
  switch (cfg.topology) {
    case Topology::Complete: {
      std::vector<std::pair<int, int>> out;
      out.reserve(std::size_t(cfg.num_nodes) * (cfg.num_nodes - 1) / 2);
      for (int i = 0; i < cfg.num_nodes; ++i)
        for (int j = i + 1; j < cfg.num_nodes; ++j) out.emplace_back(i, j);
      return out;
    }
    case Topology::SmallWorld:
      return watts_strogatz(cfg.num_nodes, cfg.k_local, cfg.rewire_prob, rng);
    case Topology::Custom: {
      auto out = cfg.custom_edges;
      for (auto& [i, j] : out)
        if (i > j) std::swap(i, j);
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  throw UsageError("synthesis: unknown topology");
}

}  // namespace

SyntheticInstance synthesize(const SynthesisConfig& cfg) {
  if (cfg.num_nodes < 2) throw UsageError("synthesis: graph must have >= 2 nodes");
  if (cfg.corrupt_fraction < 0.0 || cfg.corrupt_fraction > 1.0)
    throw UsageError("synthesis: corrupt_fraction outside [0, 1]");
  if (cfg.kappa < 0.0) throw UsageError("synthesis: negative kappa");
  if (!cfg.per_edge_kappa.empty() && cfg.topology != Topology::Custom)
    throw UsageError("synthesis: per-edge kappa needs a custom edge list");
  const bool exact = std::isinf(cfg.kappa);
  const double kappa = (cfg.kappa > 0.0 && !exact) ? cfg.kappa : default_kappa(cfg.group);

  // Rewiring can in principle disconnect the ring; retry with a perturbed
  // stream, still a pure function of the seed.
  for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
    Rng rng(cfg.seed + 0x9e3779b97f4a7c15ull * attempt);

    SyntheticInstance inst;
    MeasurementGraph& g = inst.graph;
    g.group = cfg.group;
    g.num_nodes = cfg.num_nodes;
    const auto topo = topology_edges(cfg, rng);
    if (!cfg.per_edge_kappa.empty() && cfg.per_edge_kappa.size() != topo.size())
      throw UsageError("synthesis: per-edge kappa list does not match the edge list");

    g.truth.reserve(cfg.num_nodes);
    for (int v = 0; v < cfg.num_nodes; ++v) g.truth.push_back(sample_haar(cfg.group, rng));

    g.edges.reserve(topo.size());
    for (int e = 0; e < int(topo.size()); ++e) {
      Edge ed;
      ed.i = topo[e].first;
      ed.j = topo[e].second;
      ed.kappa = cfg.per_edge_kappa.empty() ? kappa : cfg.per_edge_kappa[e];
      const Rotation rel = compose(inverse(g.truth[ed.i]), g.truth[ed.j]);
      ed.rel = exact ? rel
                     : compose(rel, sample_langevin(Rotation::identity(cfg.group), ed.kappa, rng));
      g.edges.push_back(ed);
    }

    const int bad = int(cfg.corrupt_fraction * double(topo.size()));
    if (bad > 0) {
      std::vector<int> order(topo.size());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      order.resize(bad);
      std::sort(order.begin(), order.end());
      for (int e : order) g.edges[e].rel = sample_haar(cfg.group, rng);
      inst.corrupted_edges = std::move(order);
    }

    validate_graph(g);
    if (is_connected(g)) return inst;
    if (cfg.topology != Topology::SmallWorld) break;  // retries cannot change fixed topologies
  }
  throw StructuralError(
      "synthesis: generated graph is not connected; raise k_local or fix the edge list");
}

}  // namespace misync
