#include "misync/laplacian.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "misync/errors.hpp"

namespace misync {

Eigen::MatrixXd RhoLaplacian::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size(), size());
  for (int v = 0; v < num_nodes; ++v)
    m.block(v * dim, v * dim, dim, dim) = degree(v) * Eigen::MatrixXd::Identity(dim, dim);
  for (const OffDiag& b : off) {
    m.block(b.i * dim, b.j * dim, dim, dim) = -b.block;
    m.block(b.j * dim, b.i * dim, dim, dim) = -b.block.transpose();
  }
  return m;
}

Eigen::MatrixXd RhoLaplacian::apply(const Eigen::MatrixXd& x) const {
  if (x.rows() != size()) throw UsageError("laplacian: operand has wrong row count");
  Eigen::MatrixXd y(x.rows(), x.cols());
  for (int v = 0; v < num_nodes; ++v) y.middleRows(v * dim, dim) = degree(v) * x.middleRows(v * dim, dim);
  for (const OffDiag& b : off) {
    y.middleRows(b.i * dim, dim).noalias() -= b.block * x.middleRows(b.j * dim, dim);
    y.middleRows(b.j * dim, dim).noalias() -= b.block.transpose() * x.middleRows(b.i * dim, dim);
  }
  return y;
}

double RhoLaplacian::gershgorin_bound() const {
  // Row sum of |entries|: degree + sum of incident |w| (blocks are w * rho
  // with rho orthogonal, so the induced 2-norm of each block is |w|).
  Eigen::VectorXd row = degree.cwiseAbs();
  for (const OffDiag& b : off) {
    const double w = b.block.norm() / std::sqrt(double(dim));
    row(b.i) += w;
    row(b.j) += w;
  }
  return row.size() ? row.maxCoeff() : 0.0;
}

void RhoLaplacian::write_triplets(std::ostream& out) const {
  const auto saved = out.precision(17);
  for (int v = 0; v < num_nodes; ++v)
    for (int r = 0; r < dim; ++r) out << v * dim + r << ' ' << v * dim + r << ' ' << degree(v) << '\n';
  for (const OffDiag& b : off)
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        out << b.i * dim + r << ' ' << b.j * dim + c << ' ' << -b.block(r, c) << '\n';
        out << b.j * dim + c << ' ' << b.i * dim + r << ' ' << -b.block(r, c) << '\n';
      }
  out.precision(saved);
}

RhoLaplacian build_rho_laplacian(const MeasurementGraph& g, IrrepIndex rho,
                                 const Eigen::VectorXd& edge_weights,
                                 const LaplacianOptions& opts) {
  if (rho.group != g.group) throw UsageError("laplacian: irrep group does not match the graph");
  if (edge_weights.size() != Eigen::Index(g.edges.size()))
    throw UsageError("laplacian: expected one weight per edge");
  require_connected(g);

  RhoLaplacian L;
  L.rho = rho;
  L.num_nodes = g.num_nodes;
  L.dim = irrep_dimension(rho);
  L.degree = Eigen::VectorXd::Zero(g.num_nodes);
  L.off.reserve(g.edges.size());

  for (int e = 0; e < int(g.edges.size()); ++e) {
    double w = edge_weights(e);
    if (!std::isfinite(w)) throw NumericError("laplacian: non-finite edge weight");
    if (w < 0.0) {
      ++L.negative_weight_edges;
      if (opts.clamp_negative) continue;
    }
    if (w == 0.0) continue;
    const Edge& ed = g.edges[e];
    L.off.push_back({ed.i, ed.j, w * irrep_matrix(rho, ed.rel)});
    L.degree(ed.i) += w;
    L.degree(ed.j) += w;
  }
  return L;
}

namespace {

Eigen::VectorXd weights_at_irrep(const MeasurementGraph& g,
                                 const std::vector<FourierWeights>& weights, IrrepIndex rho) {
  if (weights.size() != g.edges.size())
    throw UsageError("laplacian: expected transformed weights for every edge");
  Eigen::VectorXd k(g.edges.size());
  for (int e = 0; e < int(g.edges.size()); ++e) {
    const FourierWeights& w = weights[e];
    if (w.group != rho.group || rho.index < 1 || rho.index > w.lmax)
      throw UsageError("laplacian: edge " + std::to_string(e) +
                       " carries no weight for irrep " + std::to_string(rho.index));
    k(e) = w.k(rho.index - 1);
  }
  return k;
}

}  // namespace

RhoLaplacian build_rho_laplacian(const MeasurementGraph& g,
                                 const std::vector<FourierWeights>& weights, IrrepIndex rho,
                                 const LaplacianOptions& opts) {
  return build_rho_laplacian(g, rho, weights_at_irrep(g, weights, rho), opts);
}

Eigen::MatrixXd build_weight_laplacian(const MeasurementGraph& g,
                                       const std::vector<FourierWeights>& weights,
                                       IrrepIndex rho) {
  return build_weight_laplacian(g, weights_at_irrep(g, weights, rho));
}

Eigen::MatrixXd build_weight_laplacian(const MeasurementGraph& g,
                                       const Eigen::VectorXd& edge_weights) {
  if (edge_weights.size() != Eigen::Index(g.edges.size()))
    throw UsageError("laplacian: expected one weight per edge");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(g.num_nodes, g.num_nodes);
  for (int e = 0; e < int(g.edges.size()); ++e) {
    const Edge& ed = g.edges[e];
    const double w = edge_weights(e);
    m(ed.i, ed.j) -= w;
    m(ed.j, ed.i) -= w;
    m(ed.i, ed.i) += w;
    m(ed.j, ed.j) += w;
  }
  return m;
}

Eigen::MatrixXd block_diagonal_irreps(const std::vector<Rotation>& rotations, IrrepIndex rho) {
  const int d = irrep_dimension(rho);
  const int n = int(rotations.size());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n * d, n * d);
  for (int v = 0; v < n; ++v) s.block(v * d, v * d, d, d) = irrep_matrix(rho, rotations[v]);
  return s;
}

}  // namespace misync
