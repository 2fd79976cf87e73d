#pragma once

#include <Eigen/Dense>

#include "misync/laplacian.hpp"

namespace misync {

struct EigOptions {
  double tol = 1e-10;       // residual tolerance relative to max(1, |L|)
  int max_iterations = 500;
  unsigned seed = 12345;    // iterative starting block
  int dense_threshold = 2000;  // full solve when N*d is at most this
};

struct EigResult {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns
  bool dense = false;
  int iterations = 0;
  double residual = 0.0;    // max |L v - lambda v| over returned pairs
};

// Bottom m eigenpairs of the block Laplacian. Small problems go through a
// full symmetric solve; larger ones through block inverse-free LOBPCG driven
// by RhoLaplacian::apply. Throws NumericError when the iteration stalls
// above tolerance.
EigResult smallest_eigenpairs(const RhoLaplacian& L, int m, const EigOptions& opts = {});

// Row-stacked spectral embedding for one irreducible. phi is d x (N*d);
// block column i estimates Q^T rho(g_i) for a common orthogonal Q, so the
// Gram blocks phi_i^T phi_j are gauge free.
struct SpectralBlock {
  IrrepIndex rho{Group::SO3, 1};
  int num_nodes = 0;
  Eigen::MatrixXd phi;
  Eigen::VectorXd eigenvalues;  // bottom d_rho + 1, for gap diagnostics
  double stiefel_error = 0.0;   // |phi phi^T - N I|_F
  double spectral_gap = 0.0;    // eigenvalue d_rho+1 minus eigenvalue d_rho
  bool gap_degenerate = false;  // gap below 1e-9 * |L|; embedding is unstable
  bool dense = false;
  int iterations = 0;

  // d x d Gram block phi_i^T phi_j, the band component of the edge posterior.
  Eigen::MatrixXd gram(int i, int j) const;
};

SpectralBlock extract_block(const RhoLaplacian& L, const EigOptions& opts = {});

}  // namespace misync
