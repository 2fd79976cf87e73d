#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "misync/fourier.hpp"
#include "misync/graph.hpp"
#include "misync/irrep.hpp"

namespace misync {

// Symmetric block operator over the graph for one irreducible: off-diagonal
// block (i,j) is -w_e * rho(rel_e), block (j,i) its transpose, diagonal block
// i is (sum of incident w_e) * I. Positive semi-definite when all w_e >= 0.
struct RhoLaplacian {
  IrrepIndex rho{Group::SO3, 1};
  int num_nodes = 0;
  int dim = 0;  // block edge length d_rho

  struct OffDiag {
    int i = 0;
    int j = 0;
    Eigen::MatrixXd block;  // w_e * rho(rel_e); the minus sign lives in apply()
  };
  std::vector<OffDiag> off;
  Eigen::VectorXd degree;  // per-node sum of incident edge weights

  // Edges whose weight came in negative. Such weights make the quadratic form
  // indefinite; callers decide whether that deserves a warning or a clamp.
  int negative_weight_edges = 0;

  int size() const { return num_nodes * dim; }
  Eigen::MatrixXd dense() const;
  // y = L x, x holding one or more stacked block vectors of length N*d.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
  // Upper bound on the spectral radius from row sums.
  double gershgorin_bound() const;
  // (row, col, value) triplets of the nonzero entries, for external inspection.
  void write_triplets(std::ostream& out) const;
};

struct LaplacianOptions {
  // Drop (weight-zero) edges whose weight is negative instead of keeping them.
  bool clamp_negative = false;
};

// edge_weights holds one scalar per graph edge, in graph.edges order. The
// graph must be connected.
RhoLaplacian build_rho_laplacian(const MeasurementGraph& g, IrrepIndex rho,
                                 const Eigen::VectorXd& edge_weights,
                                 const LaplacianOptions& opts = {});

// Weight lookup form: weights[e] carries the transformed loss of edge e and
// must cover the requested irrep.
RhoLaplacian build_rho_laplacian(const MeasurementGraph& g,
                                 const std::vector<FourierWeights>& weights, IrrepIndex rho,
                                 const LaplacianOptions& opts = {});

// Plain scalar graph Laplacian with the same weights (the d=1 case).
Eigen::MatrixXd build_weight_laplacian(const MeasurementGraph& g,
                                       const Eigen::VectorXd& edge_weights);
Eigen::MatrixXd build_weight_laplacian(const MeasurementGraph& g,
                                       const std::vector<FourierWeights>& weights,
                                       IrrepIndex rho);

// Block diagonal S = diag(rho(r_0), ..., rho(r_{N-1})). With noiseless
// measurements rel_e = r_i^{-1} r_j the block operator factors as
// S^T (L_w kron I_d) S, which pins its kernel; tests lean on this identity.
Eigen::MatrixXd block_diagonal_irreps(const std::vector<Rotation>& rotations, IrrepIndex rho);

}  // namespace misync
