#include "misync/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "misync/errors.hpp"

namespace misync {
namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw ParseError("io: line " + std::to_string(line_no) + ": " + what);
}

std::string strip(const std::string& raw) {
  std::string s = raw.substr(0, raw.find('#'));
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(std::istringstream& ss, int line_no, const char* field) {
  double v = 0.0;
  if (!(ss >> v) || !std::isfinite(v)) fail(line_no, std::string("expected a finite number for ") + field);
  return v;
}

long parse_id(std::istringstream& ss, int line_no, const char* field) {
  long v = 0;
  if (!(ss >> v) || v < 0) fail(line_no, std::string("expected a nonnegative id for ") + field);
  return v;
}

void expect_end(std::istringstream& ss, int line_no) {
  std::string tail;
  if (ss >> tail) fail(line_no, "unexpected trailing token '" + tail + "'");
}

Rotation parse_rotation(Group group, std::istringstream& ss, int line_no) {
  if (group == Group::SO2) return Rotation::from_angle(parse_double(ss, line_no, "angle"));
  const double w = parse_double(ss, line_no, "qw");
  const double x = parse_double(ss, line_no, "qx");
  const double y = parse_double(ss, line_no, "qy");
  const double z = parse_double(ss, line_no, "qz");
  Eigen::Quaterniond q(w, x, y, z);
  if (std::abs(q.norm() - 1.0) > 1e-3) fail(line_no, "quaternion is not close to unit length");
  q.normalize();
  return Rotation::from_quaternion(q);
}

void print_rotation(std::ostream& out, const Rotation& r) {
  if (r.group() == Group::SO2) {
    out << r.angle();
  } else {
    const Eigen::Quaterniond& q = r.quaternion();
    out << q.w() << ' ' << q.x() << ' ' << q.y() << ' ' << q.z();
  }
}

// Normalizes endpoint order; the stored measurement always points i -> j.
void push_edge(MeasurementGraph& g, int i, int j, Rotation rel, double kappa, int line_no) {
  if (i == j) fail(line_no, "self loop on node " + std::to_string(i));
  if (kappa <= 0.0 || !std::isfinite(kappa)) fail(line_no, "kappa must be positive and finite");
  if (i > j) {
    std::swap(i, j);
    rel = inverse(rel);
  }
  g.edges.push_back(Edge{i, j, rel, kappa});
}

}  // namespace

MeasurementGraph read_graph_text(std::istream& in) {
  MeasurementGraph g;
  bool have_header = false;
  std::unordered_map<int, Rotation> nodes;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip(raw);
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (!have_header) {
      if (tag == "SO2") {
        g.group = Group::SO2;
      } else if (tag == "SO3") {
        g.group = Group::SO3;
      } else {
        fail(line_no, "expected header 'SO2 <n>' or 'SO3 <n>', got '" + tag + "'");
      }
      g.num_nodes = static_cast<int>(parse_id(ss, line_no, "node count"));
      expect_end(ss, line_no);
      have_header = true;
      continue;
    }
    if (tag == "NODE") {
      const int i = static_cast<int>(parse_id(ss, line_no, "node id"));
      if (i >= g.num_nodes) fail(line_no, "node id " + std::to_string(i) + " out of range");
      Rotation r = parse_rotation(g.group, ss, line_no);
      expect_end(ss, line_no);
      if (!nodes.emplace(i, r).second) fail(line_no, "duplicate NODE " + std::to_string(i));
    } else if (tag == "EDGE") {
      const int i = static_cast<int>(parse_id(ss, line_no, "edge endpoint"));
      const int j = static_cast<int>(parse_id(ss, line_no, "edge endpoint"));
      if (i >= g.num_nodes || j >= g.num_nodes) fail(line_no, "edge endpoint out of range");
      Rotation rel = parse_rotation(g.group, ss, line_no);
      const double kappa = parse_double(ss, line_no, "kappa");
      expect_end(ss, line_no);
      push_edge(g, i, j, rel, kappa, line_no);
    } else {
      fail(line_no, "unknown record '" + tag + "'");
    }
  }
  if (!have_header) throw ParseError("io: empty graph file");
  if (!nodes.empty()) {
    if (static_cast<int>(nodes.size()) != g.num_nodes)
      throw ParseError("io: file has NODE lines for " + std::to_string(nodes.size()) + " of " +
                       std::to_string(g.num_nodes) + " nodes; ground truth must cover all or none");
    g.truth.resize(g.num_nodes, Rotation::identity(g.group));
    for (const auto& [i, r] : nodes) g.truth[i] = r;
  }
  if (!g.edges.empty()) validate_graph(g);
  return g;
}

void write_graph_text(const MeasurementGraph& g, std::ostream& out) {
  out << std::setprecision(17);
  out << (g.group == Group::SO2 ? "SO2" : "SO3") << ' ' << g.num_nodes << '\n';
  for (int i = 0; i < static_cast<int>(g.truth.size()); ++i) {
    out << "NODE " << i << ' ';
    print_rotation(out, g.truth[i]);
    out << '\n';
  }
  for (const Edge& e : g.edges) {
    out << "EDGE " << e.i << ' ' << e.j << ' ';
    print_rotation(out, e.rel);
    out << ' ' << e.kappa << '\n';
  }
}

MeasurementGraph read_g2o(std::istream& in, G2oStats* stats) {
  struct RawEdge {
    long i, j;
    Rotation rel;
    double kappa;
    int line_no;
  };
  Group group = Group::SO3;
  bool have_group = false;
  std::unordered_map<long, Rotation> vertices;
  std::vector<RawEdge> raw_edges;
  std::vector<long> ids;
  int skipped = 0;

  const auto claim_group = [&](Group want, int line_no) {
    if (have_group && group != want) fail(line_no, "mixed SE2 and SE3 records");
    group = want;
    have_group = true;
  };

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip(raw);
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "VERTEX_SE2" || tag == "VERTEX_SE3:QUAT") {
      const bool planar = (tag == "VERTEX_SE2");
      claim_group(planar ? Group::SO2 : Group::SO3, line_no);
      const long id = parse_id(ss, line_no, "vertex id");
      Rotation r = Rotation::identity(group);
      if (planar) {
        parse_double(ss, line_no, "x");
        parse_double(ss, line_no, "y");
        r = Rotation::from_angle(parse_double(ss, line_no, "theta"));
      } else {
        for (const char* f : {"x", "y", "z"}) parse_double(ss, line_no, f);
        const double x = parse_double(ss, line_no, "qx");
        const double y = parse_double(ss, line_no, "qy");
        const double z = parse_double(ss, line_no, "qz");
        const double w = parse_double(ss, line_no, "qw");
        Eigen::Quaterniond q(w, x, y, z);
        if (std::abs(q.norm() - 1.0) > 1e-3) fail(line_no, "quaternion is not close to unit length");
        q.normalize();
        r = Rotation::from_quaternion(q);
      }
      expect_end(ss, line_no);
      if (!vertices.emplace(id, r).second) fail(line_no, "duplicate vertex " + std::to_string(id));
      ids.push_back(id);
    } else if (tag == "EDGE_SE2" || tag == "EDGE_SE3:QUAT") {
      const bool planar = (tag == "EDGE_SE2");
      claim_group(planar ? Group::SO2 : Group::SO3, line_no);
      const long i = parse_id(ss, line_no, "edge endpoint");
      const long j = parse_id(ss, line_no, "edge endpoint");
      Rotation rel = Rotation::identity(group);
      double kappa = 0.0;
      if (planar) {
        parse_double(ss, line_no, "dx");
        parse_double(ss, line_no, "dy");
        rel = Rotation::from_angle(parse_double(ss, line_no, "dtheta"));
        // Information matrix, upper triangle of a 3x3: the (theta, theta)
        // entry sits last.
        double info[6];
        for (double& v : info) v = parse_double(ss, line_no, "information entry");
        kappa = info[5];
      } else {
        for (const char* f : {"dx", "dy", "dz"}) parse_double(ss, line_no, f);
        const double x = parse_double(ss, line_no, "qx");
        const double y = parse_double(ss, line_no, "qy");
        const double z = parse_double(ss, line_no, "qz");
        const double w = parse_double(ss, line_no, "qw");
        Eigen::Quaterniond q(w, x, y, z);
        if (std::abs(q.norm() - 1.0) > 1e-3) fail(line_no, "quaternion is not close to unit length");
        q.normalize();
        rel = Rotation::from_quaternion(q);
        // Upper triangle of a 6x6; rotational diagonal sits at flat indices
        // 15, 18, 20. Their mean stands in for a scalar concentration.
        double info[21];
        for (double& v : info) v = parse_double(ss, line_no, "information entry");
        kappa = (info[15] + info[18] + info[20]) / 3.0;
      }
      expect_end(ss, line_no);
      if (kappa <= 0.0 || !std::isfinite(kappa)) fail(line_no, "nonpositive rotational information");
      raw_edges.push_back(RawEdge{i, j, rel, kappa, line_no});
      ids.push_back(i);
      ids.push_back(j);
    } else {
      ++skipped;
    }
  }
  if (stats) stats->skipped_records = skipped;
  if (raw_edges.empty()) throw ParseError("io: g2o file holds no supported edge records");

  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::unordered_map<long, int> remap;
  remap.reserve(ids.size());
  for (int k = 0; k < static_cast<int>(ids.size()); ++k) remap[ids[k]] = k;

  MeasurementGraph g;
  g.group = group;
  g.num_nodes = static_cast<int>(ids.size());
  for (const RawEdge& e : raw_edges)
    push_edge(g, remap.at(e.i), remap.at(e.j), e.rel, e.kappa, e.line_no);
  if (static_cast<int>(vertices.size()) == g.num_nodes) {
    g.truth.resize(g.num_nodes, Rotation::identity(group));
    for (const auto& [id, r] : vertices) g.truth[remap.at(id)] = r;
  }
  validate_graph(g);
  return g;
}

void write_g2o(const MeasurementGraph& g, std::ostream& out) {
  out << std::setprecision(17);
  const bool planar = (g.group == Group::SO2);
  for (int i = 0; i < static_cast<int>(g.truth.size()); ++i) {
    if (planar) {
      out << "VERTEX_SE2 " << i << " 0 0 " << g.truth[i].angle() << '\n';
    } else {
      const Eigen::Quaterniond& q = g.truth[i].quaternion();
      out << "VERTEX_SE3:QUAT " << i << " 0 0 0 " << q.x() << ' ' << q.y() << ' ' << q.z() << ' '
          << q.w() << '\n';
    }
  }
  for (const Edge& e : g.edges) {
    if (planar) {
      out << "EDGE_SE2 " << e.i << ' ' << e.j << " 0 0 " << e.rel.angle() << " 1 0 0 1 0 "
          << e.kappa << '\n';
    } else {
      const Eigen::Quaterniond& q = e.rel.quaternion();
      out << "EDGE_SE3:QUAT " << e.i << ' ' << e.j << " 0 0 0 " << q.x() << ' ' << q.y() << ' '
          << q.z() << ' ' << q.w() << " 1 0 0 0 0 0 1 0 0 0 0 1 0 0 0 " << e.kappa << " 0 0 "
          << e.kappa << " 0 " << e.kappa << '\n';
    }
  }
}

MeasurementGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("io: cannot open '" + path + "'");
  std::string raw;
  std::string first;
  while (std::getline(in, raw)) {
    const std::string line = strip(raw);
    if (line.empty()) continue;
    first = line.substr(0, line.find_first_of(" \t"));
    break;
  }
  in.clear();
  in.seekg(0);
  if (first == "SO2" || first == "SO3") return read_graph_text(in);
  if (first.rfind("VERTEX_", 0) == 0 || first.rfind("EDGE_", 0) == 0) return read_g2o(in);
  throw ParseError("io: '" + path + "' is neither native text nor g2o");
}

void save_graph(const MeasurementGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("io: cannot open '" + path + "' for writing");
  const bool g2o = path.size() >= 4 && path.compare(path.size() - 4, 4, ".g2o") == 0;
  if (g2o) {
    write_g2o(g, out);
  } else {
    write_graph_text(g, out);
  }
  if (!out) throw UsageError("io: short write to '" + path + "'");
}

std::map<std::string, std::string> read_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    out[key] = value;
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("io: cannot open '" + path + "'");
  return read_config(in);
}

}  // namespace misync
