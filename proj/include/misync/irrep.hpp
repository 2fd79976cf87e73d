#pragma once

#include <Eigen/Dense>
#include <vector>

#include "misync/rotation.hpp"

namespace misync {

// Real irreducible representations. SO(2): index k, dimension 1 (k=0) or 2.
// SO(3): index l, dimension 2l+1, realized on real spherical harmonics ordered
// m = -l..l; the l=1 block is the fundamental matrix conjugated by the fixed
// (x,y,z) -> (y,z,x) permutation.
struct IrrepIndex {
  Group group;
  int index;
};

constexpr int kMaxIrrepIndex = 16;

inline int irrep_dimension(const IrrepIndex& rho) {
  if (rho.group == Group::SO2) return rho.index == 0 ? 1 : 2;
  return 2 * rho.index + 1;
}

// rho(g) as a real orthogonal matrix. Throws CapabilityError above max_index.
Eigen::MatrixXd irrep_matrix(const IrrepIndex& rho, const Rotation& g,
                             int max_index = kMaxIrrepIndex);

// All SO(3) bands 0..lmax for the rotation with the given fundamental matrix,
// built in one recursion pass (cheaper than lmax separate irrep_matrix calls).
std::vector<Eigen::MatrixXd> so3_irrep_ladder(const Eigen::Matrix3d& fund, int lmax);

// Character as a function of the class angle: 2cos(k t) resp.
// sin((l+1/2)t)/sin(t/2) with the series form near the removable singularity.
double character(const IrrepIndex& rho, double rotation_angle);

// Closed-form irrep of a rotation about z by alpha: identity on m=0 and
// [[cos(p a), sin(p a)], [-sin(p a), cos(p a)]] on each (-p,+p) pair.
Eigen::MatrixXd so3_zrot_irrep(int l, double alpha);

// ZYZ Euler factorization g = Rz(alpha) Ry(beta) Rz(gamma),
// alpha, gamma in [-pi, pi], beta in [0, pi]; gamma = 0 on the gimbal branches.
struct Zyz {
  double alpha, beta, gamma;
};
Zyz zyz_from_rotation(const Rotation& g);
Rotation rotation_from_zyz(const Zyz& e);

}  // namespace misync
