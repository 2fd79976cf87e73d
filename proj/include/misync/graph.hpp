#pragma once

#include <vector>

#include "misync/rotation.hpp"

namespace misync {

// One relative-rotation measurement, stored once per unordered pair with
// i < j. `rel` estimates g_i^{-1} g_j for the (unknown) absolute rotations;
// the reverse measurement is rel^{-1} by construction. kappa is the
// measurement precision.
struct Edge {
  int i = 0;
  int j = 0;
  Rotation rel;
  double kappa = 1.0;
};

struct MeasurementGraph {
  Group group = Group::SO3;
  int num_nodes = 0;
  std::vector<Edge> edges;
  // Ground-truth absolute rotations; empty unless the graph is synthetic or
  // was loaded from a file that carried node poses.
  std::vector<Rotation> truth;
};

// Structural checks: node ids in range, no self loops, no duplicate edge in
// either orientation, kappa > 0, every rotation in the declared group, truth
// either empty or one rotation per node. Throws StructuralError.
void validate_graph(const MeasurementGraph& g);

bool is_connected(const MeasurementGraph& g);

// Throws StructuralError naming an unreachable node.
void require_connected(const MeasurementGraph& g);

// Edge indices incident to each node.
std::vector<std::vector<int>> incidence_lists(const MeasurementGraph& g);

}  // namespace misync
