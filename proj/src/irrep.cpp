#include "misync/irrep.hpp"

#include <cmath>

#include "misync/errors.hpp"

namespace misync {

namespace {

// Band recursion on real spherical harmonics: each band l >= 2 is assembled
// from band l-1 and the permuted fundamental matrix r1. Entries are indexed by
// m in [-l, l] with array offset m+l. P/U/V/W follow the standard recurrence
// for real bases; terms are only evaluated when their coefficient is nonzero,
// which also keeps every index of the previous band in range.
struct BandBuilder {
  const Eigen::Matrix3d& r1;             // indices -1..1 (offset +1)
  const Eigen::MatrixXd& prev;           // band l-1      (offset +(l-1))
  int l;

  double P(int i, int a, int b) const {
    if (b == l) return r1(i + 1, 2) * prev(a + l - 1, 2 * l - 2) - r1(i + 1, 0) * prev(a + l - 1, 0);
    if (b == -l) return r1(i + 1, 2) * prev(a + l - 1, 0) + r1(i + 1, 0) * prev(a + l - 1, 2 * l - 2);
    return r1(i + 1, 1) * prev(a + l - 1, b + l - 1);
  }

  double entry(int m, int mp) const {
    const double denom = (std::abs(mp) == l) ? double(2 * l) * (2 * l - 1)
                                             : double(l + mp) * (l - mp);
    double val = 0.0;

    const double u_num = double(l + m) * (l - m);
    if (u_num > 0.0) val += std::sqrt(u_num / denom) * P(0, m, mp);

    if (m == 0) {
      const double v = -0.5 * std::sqrt(2.0 * double(l - 1) * l / denom);
      val += v * (P(1, 1, mp) + P(-1, -1, mp));
    } else {
      const int am = std::abs(m);
      const double v = 0.5 * std::sqrt(double(l + am - 1) * (l + am) / denom);
      if (m > 0) {
        const double d1 = (m == 1) ? 1.0 : 0.0;
        val += v * (P(1, m - 1, mp) * std::sqrt(1.0 + d1) - P(-1, -m + 1, mp) * (1.0 - d1));
      } else {
        const double d1 = (m == -1) ? 1.0 : 0.0;
        val += v * (P(1, m + 1, mp) * (1.0 - d1) + P(-1, -m - 1, mp) * std::sqrt(1.0 + d1));
      }
      const double w_num = double(l - am - 1) * (l - am);
      if (w_num > 0.0) {
        const double w = -0.5 * std::sqrt(w_num / denom);
        if (m > 0)
          val += w * (P(1, m + 1, mp) + P(-1, -m - 1, mp));
        else
          val += w * (P(1, m - 1, mp) - P(-1, -m + 1, mp));
      }
    }
    return val;
  }
};

void check_index(const IrrepIndex& rho, int max_index) {
  if (rho.index < 0) throw UsageError("irrep: negative irrep index");
  if (rho.index > max_index)
    throw CapabilityError("irrep: index " + std::to_string(rho.index) +
                          " exceeds configured maximum " + std::to_string(max_index));
}

}  // namespace

std::vector<Eigen::MatrixXd> so3_irrep_ladder(const Eigen::Matrix3d& fund, int lmax) {
  std::vector<Eigen::MatrixXd> bands(lmax + 1);
  bands[0] = Eigen::MatrixXd::Ones(1, 1);
  if (lmax == 0) return bands;

  // Fundamental matrix re-indexed to spherical-harmonic order (y, z, x).
  static const int perm[3] = {1, 2, 0};
  Eigen::Matrix3d r1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r1(i, j) = fund(perm[i], perm[j]);
  bands[1] = r1;

  for (int l = 2; l <= lmax; ++l) {
    const int d = 2 * l + 1;
    Eigen::MatrixXd band(d, d);
    BandBuilder bb{r1, bands[l - 1], l};
    for (int m = -l; m <= l; ++m)
      for (int mp = -l; mp <= l; ++mp) band(m + l, mp + l) = bb.entry(m, mp);
    bands[l] = std::move(band);
  }
  return bands;
}

Eigen::MatrixXd irrep_matrix(const IrrepIndex& rho, const Rotation& g, int max_index) {
  check_index(rho, max_index);
  if (rho.group != g.group()) throw UsageError("irrep: group mismatch between index and element");

  if (rho.group == Group::SO2) {
    if (rho.index == 0) return Eigen::MatrixXd::Ones(1, 1);
    const double t = rho.index * g.angle();
    Eigen::MatrixXd m(2, 2);
    m << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
    return m;
  }
  return so3_irrep_ladder(fundamental_matrix(g), rho.index)[rho.index];
}

double character(const IrrepIndex& rho, double rotation_angle) {
  if (rho.index < 0) throw UsageError("irrep: negative irrep index");
  if (rho.group == Group::SO2)
    return rho.index == 0 ? 1.0 : 2.0 * std::cos(rho.index * rotation_angle);

  const int l = rho.index;
  const double s = std::sin(0.5 * rotation_angle);
  if (std::abs(s) < 1e-7) {
    double acc = 1.0;
    for (int k = 1; k <= l; ++k) acc += 2.0 * std::cos(k * rotation_angle);
    return acc;
  }
  return std::sin((l + 0.5) * rotation_angle) / s;
}

Eigen::MatrixXd so3_zrot_irrep(int l, double alpha) {
  if (l < 0) throw UsageError("irrep: negative irrep index");
  const int d = 2 * l + 1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  m(l, l) = 1.0;
  for (int p = 1; p <= l; ++p) {
    const double c = std::cos(p * alpha), s = std::sin(p * alpha);
    m(l - p, l - p) = c;
    m(l - p, l + p) = s;
    m(l + p, l - p) = -s;
    m(l + p, l + p) = c;
  }
  return m;
}

Zyz zyz_from_rotation(const Rotation& g) {
  const Eigen::MatrixXd m = fundamental_matrix(g);
  const double sb = std::hypot(m(0, 2), m(1, 2));
  Zyz e{};
  e.beta = std::atan2(sb, m(2, 2));
  if (sb > 1e-7) {
    e.alpha = std::atan2(m(1, 2), m(0, 2));
    e.gamma = std::atan2(m(2, 1), -m(2, 0));
  } else if (m(2, 2) > 0.0) {  // beta ~ 0: only alpha+gamma matters
    e.alpha = std::atan2(m(1, 0), m(0, 0));
    e.gamma = 0.0;
  } else {  // beta ~ pi
    e.alpha = std::atan2(-m(0, 1), m(1, 1));
    e.gamma = 0.0;
  }
  return e;
}

Rotation rotation_from_zyz(const Zyz& e) {
  const Eigen::Quaterniond q = Eigen::Quaterniond(Eigen::AngleAxisd(e.alpha, Eigen::Vector3d::UnitZ())) *
                               Eigen::Quaterniond(Eigen::AngleAxisd(e.beta, Eigen::Vector3d::UnitY())) *
                               Eigen::Quaterniond(Eigen::AngleAxisd(e.gamma, Eigen::Vector3d::UnitZ()));
  return Rotation::from_quaternion(q);
}

}  // namespace misync
