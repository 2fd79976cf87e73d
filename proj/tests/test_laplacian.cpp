#include <sstream>

#include "doctest.h"
#include "misync/errors.hpp"
#include "misync/laplacian.hpp"
#include "misync/sampling.hpp"
#include "misync/synthesis.hpp"

using namespace misync;

namespace {

// Noiseless measurement graph over given truth, complete topology.
MeasurementGraph noiseless_complete(Group grp, int n, Rng& rng) {
  MeasurementGraph g;
  g.group = grp;
  g.num_nodes = n;
  for (int v = 0; v < n; ++v) g.truth.push_back(sample_haar(grp, rng));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      g.edges.push_back({i, j, compose(inverse(g.truth[i]), g.truth[j]), 1.0});
  return g;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, int d) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows() * d, a.cols() * d);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * d, j * d, d, d) = a(i, j) * Eigen::MatrixXd::Identity(d, d);
  return out;
}

}  // namespace

TEST_SUITE("laplacian") {

TEST_CASE("noiseless operator factors through the block-diagonal embedding") {
  Rng rng(41);
  for (Group grp : {Group::SO2, Group::SO3}) {
    for (int index : {1, 2, 5}) {
      const MeasurementGraph g = noiseless_complete(grp, 6, rng);
      Eigen::VectorXd w(g.edges.size());
      std::uniform_real_distribution<double> uni(0.2, 3.0);
      for (int e = 0; e < w.size(); ++e) w(e) = uni(rng);

      const IrrepIndex rho{grp, index};
      const RhoLaplacian lap = build_rho_laplacian(g, rho, w);
      const Eigen::MatrixXd lw = build_weight_laplacian(g, w);
      const Eigen::MatrixXd s = block_diagonal_irreps(g.truth, rho);
      const Eigen::MatrixXd want = s.transpose() * kron(lw, irrep_dimension(rho)) * s;
      CHECK((lap.dense() - want).norm() < 1e-10 * want.norm());
    }
  }
}

TEST_CASE("apply agrees with the dense matrix") {
  Rng rng(42);
  SynthesisConfig cfg;
  cfg.group = Group::SO3;
  cfg.num_nodes = 10;
  cfg.seed = 3;
  const MeasurementGraph g = synthesize(cfg).graph;
  Eigen::VectorXd w = Eigen::VectorXd::LinSpaced(static_cast<int>(g.edges.size()), 0.5, 2.0);
  const RhoLaplacian lap = build_rho_laplacian(g, {Group::SO3, 2}, w);
  const Eigen::MatrixXd dense = lap.dense();
  CHECK((dense - dense.transpose()).norm() < 1e-12);

  std::normal_distribution<double> nd;
  Eigen::MatrixXd x(lap.size(), 3);
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < 3; ++j) x(i, j) = nd(rng);
  CHECK((lap.apply(x) - dense * x).norm() < 1e-11 * x.norm() * dense.norm());
}

TEST_CASE("gershgorin bounds the spectrum") {
  Rng rng(43);
  const MeasurementGraph g = noiseless_complete(Group::SO3, 5, rng);
  const Eigen::VectorXd w = Eigen::VectorXd::Ones(static_cast<int>(g.edges.size()));
  const RhoLaplacian lap = build_rho_laplacian(g, {Group::SO3, 1}, w);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lap.dense());
  CHECK(eig.eigenvalues().maxCoeff() <= lap.gershgorin_bound() + 1e-10);
}

TEST_CASE("negative weights are counted, clamping drops them") {
  Rng rng(44);
  const MeasurementGraph g = noiseless_complete(Group::SO2, 4, rng);
  Eigen::VectorXd w = Eigen::VectorXd::Ones(static_cast<int>(g.edges.size()));
  // Effective resistance across a K4 edge is 1/2, so anything above -2 leaves
  // the matrix positive semidefinite; -3 makes keeping the edge visible.
  w(1) = -3.0;

  const RhoLaplacian kept = build_rho_laplacian(g, {Group::SO2, 1}, w);
  CHECK(kept.negative_weight_edges == 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(kept.dense());
  CHECK(eig.eigenvalues()(0) < -1e-6);  // indefinite with the kept edge

  LaplacianOptions opts;
  opts.clamp_negative = true;
  const RhoLaplacian dropped = build_rho_laplacian(g, {Group::SO2, 1}, w, opts);
  CHECK(dropped.negative_weight_edges == 1);
  CHECK(dropped.off.size() == kept.off.size() - 1);
  CHECK(dropped.degree(g.edges[1].i) ==
        doctest::Approx(kept.degree(g.edges[1].i) + 3.0));  // -(-3.0) removed
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig2(dropped.dense());
  CHECK(eig2.eigenvalues()(0) > -1e-10);
}

TEST_CASE("triplets reassemble the dense matrix") {
  Rng rng(45);
  const MeasurementGraph g = noiseless_complete(Group::SO3, 4, rng);
  const Eigen::VectorXd w = Eigen::VectorXd::Ones(static_cast<int>(g.edges.size()));
  const RhoLaplacian lap = build_rho_laplacian(g, {Group::SO3, 1}, w);
  std::stringstream ss;
  lap.write_triplets(ss);
  Eigen::MatrixXd re = Eigen::MatrixXd::Zero(lap.size(), lap.size());
  int r, c;
  double v;
  while (ss >> r >> c >> v) re(r, c) += v;
  CHECK((re - lap.dense()).norm() < 1e-12);
}

TEST_CASE("fourier weight lookup covers the requested irrep") {
  Rng rng(46);
  const MeasurementGraph g = noiseless_complete(Group::SO3, 4, rng);
  std::vector<FourierWeights> weights(g.edges.size());
  for (auto& w : weights) {
    w.group = Group::SO3;
    w.lmax = 2;
    w.k = Eigen::VectorXd::Ones(2);
  }
  CHECK_NOTHROW(build_rho_laplacian(g, weights, {Group::SO3, 2}));
  CHECK_THROWS_AS(build_rho_laplacian(g, weights, {Group::SO3, 3}), UsageError);
}

TEST_CASE("scalar laplacian matches the hand construction") {
  MeasurementGraph g;
  g.group = Group::SO2;
  g.num_nodes = 3;
  g.edges = {{0, 1, Rotation::from_angle(0.3), 1.0}, {1, 2, Rotation::from_angle(-0.1), 1.0}};
  Eigen::VectorXd w(2);
  w << 2.0, 5.0;
  Eigen::Matrix3d want;
  want << 2, -2, 0, -2, 7, -5, 0, -5, 5;
  CHECK((build_weight_laplacian(g, w) - want).norm() < 1e-14);
}

TEST_CASE("disconnected graphs are rejected") {
  MeasurementGraph g;
  g.group = Group::SO2;
  g.num_nodes = 4;
  g.edges = {{0, 1, Rotation::identity(Group::SO2), 1.0},
             {2, 3, Rotation::identity(Group::SO2), 1.0}};
  const Eigen::VectorXd w = Eigen::VectorXd::Ones(2);
  CHECK_THROWS_AS(build_rho_laplacian(g, {Group::SO2, 1}, w), StructuralError);
}

}  // TEST_SUITE
