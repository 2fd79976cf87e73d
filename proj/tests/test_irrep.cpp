#include <cmath>

#include "doctest.h"
#include "misync/errors.hpp"
#include "misync/irrep.hpp"
#include "misync/sampling.hpp"

using namespace misync;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Real degree-2 harmonics on the unit sphere, ordered m = -2..2 and scaled to
// a common L2 norm so the induced representation matrix is orthogonal.
Eigen::VectorXd sh2(const Eigen::Vector3d& v) {
  const double x = v.x(), y = v.y(), z = v.z();
  Eigen::VectorXd u(5);
  const double s3 = std::sqrt(3.0);
  u << s3 * x * y, s3 * y * z, 0.5 * (3.0 * z * z - 1.0), s3 * z * x,
      0.5 * s3 * (x * x - y * y);
  return u;
}

}  // namespace

TEST_SUITE("irrep") {

TEST_CASE("irreps are homomorphisms into the orthogonal group") {
  Rng rng(21);
  for (int rep = 0; rep < 8; ++rep) {
    const Rotation a = sample_haar(Group::SO3, rng);
    const Rotation b = sample_haar(Group::SO3, rng);
    for (int l = 1; l <= 6; ++l) {
      const IrrepIndex rho{Group::SO3, l};
      const Eigen::MatrixXd ma = irrep_matrix(rho, a);
      const Eigen::MatrixXd mb = irrep_matrix(rho, b);
      const Eigen::MatrixXd mab = irrep_matrix(rho, compose(a, b));
      const int d = irrep_dimension(rho);
      CHECK((mab - ma * mb).norm() < 1e-11 * d);
      CHECK((ma * ma.transpose() - Eigen::MatrixXd::Identity(d, d)).norm() < 1e-11 * d);
    }
    for (int k = 1; k <= 6; ++k) {
      const IrrepIndex rho{Group::SO2, k};
      const Rotation c = sample_haar(Group::SO2, rng);
      const Rotation d2 = sample_haar(Group::SO2, rng);
      CHECK((irrep_matrix(rho, compose(c, d2)) - irrep_matrix(rho, c) * irrep_matrix(rho, d2))
                .norm() < 1e-12);
    }
  }
  CHECK((irrep_matrix({Group::SO3, 5}, Rotation::identity(Group::SO3)) -
         Eigen::MatrixXd::Identity(11, 11))
            .norm() < 1e-13);
}

TEST_CASE("the fundamental block is the rotation matrix in (y,z,x) order") {
  Rng rng(22);
  Eigen::Matrix3d p = Eigen::Matrix3d::Zero();  // maps (x,y,z) to (y,z,x)
  p(0, 1) = p(1, 2) = p(2, 0) = 1.0;
  for (int rep = 0; rep < 20; ++rep) {
    const Rotation g = sample_haar(Group::SO3, rng);
    const Eigen::MatrixXd lhs = irrep_matrix({Group::SO3, 1}, g);
    const Eigen::Matrix3d rhs = p * fundamental_matrix(g) * p.transpose();
    CHECK((lhs - rhs).norm() < 1e-13);
  }
}

TEST_CASE("band 2 acts on degree-2 harmonics") {
  // Independent route: evaluate the harmonics at rotated points. The
  // recursion never sees polynomials, so agreement here pins its convention.
  Rng rng(23);
  std::normal_distribution<double> nd;
  for (int rep = 0; rep < 30; ++rep) {
    const Rotation g = sample_haar(Group::SO3, rng);
    const Eigen::Vector3d v = Eigen::Vector3d(nd(rng), nd(rng), nd(rng)).normalized();
    const Eigen::MatrixXd rho2 = irrep_matrix({Group::SO3, 2}, g);
    const Eigen::VectorXd lhs = sh2(fundamental_matrix(g) * v);
    const Eigen::VectorXd rhs = rho2 * sh2(v);
    CHECK((lhs - rhs).norm() < 1e-12);
  }
}

TEST_CASE("z rotations match the closed form") {
  Rng rng(24);
  for (double alpha : {0.0, 0.3, -2.5, 3.1, 6.6}) {
    const Rotation g = Rotation::from_axis_angle(Eigen::Vector3d::UnitZ(), alpha);
    for (int l = 1; l <= 8; ++l) {
      const Eigen::MatrixXd lhs = irrep_matrix({Group::SO3, l}, g);
      const Eigen::MatrixXd rhs = so3_zrot_irrep(l, alpha);
      CHECK((lhs - rhs).norm() < 1e-11);
    }
  }
}

TEST_CASE("the ladder agrees with per-band calls") {
  Rng rng(25);
  const Rotation g = sample_haar(Group::SO3, rng);
  const auto ladder = so3_irrep_ladder(fundamental_matrix(g), 8);
  REQUIRE(ladder.size() == 9);
  CHECK((ladder[0] - Eigen::MatrixXd::Ones(1, 1)).norm() < 1e-15);
  for (int l = 1; l <= 8; ++l)
    CHECK((ladder[l] - irrep_matrix({Group::SO3, l}, g)).norm() < 1e-11);
}

TEST_CASE("characters are the traces") {
  Rng rng(26);
  for (int rep = 0; rep < 10; ++rep) {
    const Rotation g = sample_haar(Group::SO3, rng);
    for (int l = 0; l <= 8; ++l)
      CHECK(irrep_matrix({Group::SO3, l}, g).trace() ==
            doctest::Approx(character({Group::SO3, l}, g.rotation_angle())).epsilon(1e-10));
    const Rotation h = sample_haar(Group::SO2, rng);
    for (int k = 1; k <= 8; ++k)
      CHECK(irrep_matrix({Group::SO2, k}, h).trace() ==
            doctest::Approx(character({Group::SO2, k}, h.rotation_angle())).epsilon(1e-10));
  }
  // Removable singularity at the identity: chi_l(0) = 2l + 1.
  CHECK(character({Group::SO3, 7}, 0.0) == doctest::Approx(15.0));
  CHECK(character({Group::SO3, 7}, 1e-12) == doctest::Approx(15.0));
}

TEST_CASE("zyz euler factorization round trips") {
  Rng rng(27);
  for (int rep = 0; rep < 100; ++rep) {
    const Rotation g = sample_haar(Group::SO3, rng);
    const Zyz e = zyz_from_rotation(g);
    CHECK(e.beta >= 0.0);
    CHECK(e.beta <= kPi);
    CHECK(std::abs(e.alpha) <= kPi + 1e-12);
    CHECK(std::abs(e.gamma) <= kPi + 1e-12);
    CHECK(geodesic_distance(g, rotation_from_zyz(e)) < 1e-9);
  }
  // Gimbal branch: a pure z rotation must come back with gamma = 0.
  const Zyz e = zyz_from_rotation(Rotation::from_axis_angle(Eigen::Vector3d::UnitZ(), 1.1));
  CHECK(e.gamma == 0.0);
  CHECK(e.beta == doctest::Approx(0.0));
  CHECK(e.alpha == doctest::Approx(1.1));
}

TEST_CASE("index cap and trivial irreps") {
  const Rotation g = Rotation::from_axis_angle(Eigen::Vector3d::UnitY(), 0.4);
  CHECK_THROWS_AS(irrep_matrix({Group::SO3, kMaxIrrepIndex + 1}, g), CapabilityError);
  const Eigen::MatrixXd triv = irrep_matrix({Group::SO2, 0}, Rotation::from_angle(1.0));
  REQUIRE(triv.rows() == 1);
  CHECK(triv(0, 0) == doctest::Approx(1.0));
}

}  // TEST_SUITE
