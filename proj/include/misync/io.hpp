#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "misync/graph.hpp"

namespace misync {

// Native text format, '#' comments allowed:
//   SO3 <num_nodes>
//   NODE <i> <qw qx qy qz>            (optional ground truth / estimates)
//   EDGE <i> <j> <qw qx qy qz> <kappa>
// SO2 files carry a single angle in place of the quaternion. A file may hold
// only NODE lines (an estimate or ground-truth companion) or only EDGE lines.
MeasurementGraph read_graph_text(std::istream& in);
void write_graph_text(const MeasurementGraph& g, std::ostream& out);

// g2o pose-graph subset: rotational parts of VERTEX_SE2 / VERTEX_SE3:QUAT and
// EDGE_SE2 / EDGE_SE3:QUAT records; translations are ignored. kappa is the
// mean of the rotational information-matrix diagonal. Unknown record types
// are skipped and counted. Vertex poses populate truth only when every node
// has one.
struct G2oStats {
  int skipped_records = 0;
};
MeasurementGraph read_g2o(std::istream& in, G2oStats* stats = nullptr);
void write_g2o(const MeasurementGraph& g, std::ostream& out);

// Format picked by content: a leading SO2/SO3 token reads as native text,
// VERTEX_/EDGE_ records as g2o. Saving picks g2o for a .g2o extension.
MeasurementGraph load_graph(const std::string& path);
void save_graph(const MeasurementGraph& g, const std::string& path);

// Flat `key = value` lines, '#' comments; later keys override earlier ones.
std::map<std::string, std::string> read_config(std::istream& in);
std::map<std::string, std::string> read_config_file(const std::string& path);

}  // namespace misync
