#include "misync/graph.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "misync/errors.hpp"

namespace misync {

void validate_graph(const MeasurementGraph& g) {
  if (g.num_nodes < 2) throw StructuralError("graph: need at least two nodes");
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : g.edges) {
    if (e.i < 0 || e.i >= g.num_nodes || e.j < 0 || e.j >= g.num_nodes)
      throw StructuralError("graph: edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                            ") references a node outside 0.." + std::to_string(g.num_nodes - 1));
    if (e.i == e.j) throw StructuralError("graph: self loop at node " + std::to_string(e.i));
    if (e.i > e.j)
      throw StructuralError("graph: edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                            ") stored against orientation; keep i < j and invert the rotation");
    const auto key = std::minmax(e.i, e.j);
    if (!seen.insert(key).second)
      throw StructuralError("graph: duplicate edge (" + std::to_string(e.i) + "," +
                            std::to_string(e.j) + ")");
    if (!(e.kappa > 0.0))
      throw StructuralError("graph: edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                            ") has non-positive kappa");
    if (e.rel.group() != g.group)
      throw StructuralError("graph: edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                            ") rotation group does not match the graph");
  }
  if (!g.truth.empty()) {
    if (int(g.truth.size()) != g.num_nodes)
      throw StructuralError("graph: truth holds " + std::to_string(g.truth.size()) +
                            " rotations for " + std::to_string(g.num_nodes) + " nodes");
    for (const Rotation& r : g.truth)
      if (r.group() != g.group) throw StructuralError("graph: truth rotation group mismatch");
  }
}

namespace {

std::vector<int> reachable_from_zero(const MeasurementGraph& g) {
  std::vector<std::vector<int>> nbr(g.num_nodes);
  for (const Edge& e : g.edges) {
    nbr[e.i].push_back(e.j);
    nbr[e.j].push_back(e.i);
  }
  std::vector<int> mark(g.num_nodes, 0);
  std::vector<int> stack{0};
  mark[0] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : nbr[v])
      if (!mark[u]) {
        mark[u] = 1;
        stack.push_back(u);
      }
  }
  return mark;
}

}  // namespace

bool is_connected(const MeasurementGraph& g) {
  if (g.num_nodes == 0) return false;
  const auto mark = reachable_from_zero(g);
  for (int m : mark)
    if (!m) return false;
  return true;
}

void require_connected(const MeasurementGraph& g) {
  if (g.num_nodes == 0) throw StructuralError("graph: empty graph");
  const auto mark = reachable_from_zero(g);
  for (int v = 0; v < g.num_nodes; ++v)
    if (!mark[v])
      throw StructuralError("graph: node " + std::to_string(v) +
                            " is not reachable from node 0; synchronization needs a connected graph");
}

std::vector<std::vector<int>> incidence_lists(const MeasurementGraph& g) {
  std::vector<std::vector<int>> out(g.num_nodes);
  for (int e = 0; e < int(g.edges.size()); ++e) {
    out[g.edges[e].i].push_back(e);
    out[g.edges[e].j].push_back(e);
  }
  return out;
}

}  // namespace misync
