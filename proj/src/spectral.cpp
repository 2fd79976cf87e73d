#include "misync/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "misync/errors.hpp"

namespace misync {

namespace {

// Columns of a spanning orthonormal basis, rank-revealing so a degenerate
// search space cannot poison the Rayleigh-Ritz step.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& x) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::Index rank = qr.rank();
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(x.rows(), rank);
  return q;
}

EigResult lobpcg(const RhoLaplacian& L, int m, const EigOptions& opts) {
  const int n = L.size();
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;

  Eigen::MatrixXd x(n, m);
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < n; ++r) x(r, c) = gauss(rng);
  x = orthonormalize(x);

  const double scale = std::max(1.0, L.gershgorin_bound());
  Eigen::MatrixXd p(n, 0);
  Eigen::VectorXd values = Eigen::VectorXd::Zero(m);
  double worst = 0.0;

  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    Eigen::MatrixXd hx = L.apply(x);
    Eigen::MatrixXd small = x.transpose() * hx;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rr(0.5 * (small + small.transpose()));
    x = x * rr.eigenvectors();
    hx = hx * rr.eigenvectors();
    values = rr.eigenvalues();

    Eigen::MatrixXd resid = hx - x * values.asDiagonal();
    worst = resid.colwise().norm().maxCoeff();
    if (worst <= opts.tol * scale) break;

    // Search space: current block, residuals, previous step directions.
    Eigen::MatrixXd z(n, x.cols() + resid.cols() + p.cols());
    if (p.cols() > 0)
      z << x, resid, p;
    else
      z << x, resid;
    z = orthonormalize(z);

    Eigen::MatrixXd hz = L.apply(z);
    Eigen::MatrixXd t = z.transpose() * hz;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(0.5 * (t + t.transpose()));
    Eigen::MatrixXd y = ritz.eigenvectors().leftCols(m);

    Eigen::MatrixXd x_next = z * y;
    // Implicit p: the part of the step outside the previous block.
    p = x_next - x * (x.transpose() * x_next);
    x = orthonormalize(x_next);
  }

  if (worst > opts.tol * scale)
    throw NumericError("spectral: eigensolver stalled at residual " + std::to_string(worst) +
                       " after " + std::to_string(opts.max_iterations) + " iterations");

  EigResult out;
  out.values = values;
  out.vectors = x;
  out.dense = false;
  out.iterations = it + 1;
  out.residual = worst;
  return out;
}

}  // namespace

EigResult smallest_eigenpairs(const RhoLaplacian& L, int m, const EigOptions& opts) {
  const int n = L.size();
  if (m < 1 || m > n) throw UsageError("spectral: invalid eigenpair count");

  if (n <= opts.dense_threshold) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L.dense());
    if (es.info() != Eigen::Success) throw NumericError("spectral: dense eigensolver failed");
    EigResult out;
    out.values = es.eigenvalues().head(m);
    out.vectors = es.eigenvectors().leftCols(m);
    out.dense = true;
    Eigen::MatrixXd resid = L.apply(out.vectors) - out.vectors * out.values.asDiagonal();
    out.residual = resid.colwise().norm().maxCoeff();
    return out;
  }
  return lobpcg(L, m, opts);
}

Eigen::MatrixXd SpectralBlock::gram(int i, int j) const {
  const int d = phi.rows();
  return phi.middleCols(i * d, d).transpose() * phi.middleCols(j * d, d);
}

SpectralBlock extract_block(const RhoLaplacian& L, const EigOptions& opts) {
  const int d = L.dim;
  const int n = L.num_nodes;
  const int want = std::min(d + 1, L.size());
  EigResult eig = smallest_eigenpairs(L, want, opts);

  SpectralBlock b;
  b.rho = L.rho;
  b.num_nodes = n;
  b.phi = std::sqrt(double(n)) * eig.vectors.leftCols(d).transpose();
  b.eigenvalues = eig.values;
  b.dense = eig.dense;
  b.iterations = eig.iterations;

  Eigen::MatrixXd gram = b.phi * b.phi.transpose();
  b.stiefel_error = (gram - double(n) * Eigen::MatrixXd::Identity(d, d)).norm();
  if (b.stiefel_error > 1e-8 * n)
    throw NumericError("spectral: embedding lost orthonormality (deviation " +
                       std::to_string(b.stiefel_error) + ")");

  if (want > d) {
    b.spectral_gap = eig.values(d) - eig.values(d - 1);
    b.gap_degenerate = b.spectral_gap < 1e-9 * std::max(1.0, L.gershgorin_bound());
  }
  return b;
}

}  // namespace misync
