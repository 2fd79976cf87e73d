#include "misync/rotation.hpp"

#include <cmath>
#include <numbers>

#include "misync/errors.hpp"

namespace misync {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  // fmod can return exactly 2*pi after the correction when theta is a tiny
  // negative number; fold that back to 0.
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

// Canonical hemisphere: w > 0, or w == 0 and the first nonzero of (x,y,z) > 0.
Eigen::Quaterniond canonicalize(Eigen::Quaterniond q) {
  q.normalize();
  if (q.w() < 0.0 ||
      (q.w() == 0.0 &&
       (q.x() < 0.0 || (q.x() == 0.0 && (q.y() < 0.0 || (q.y() == 0.0 && q.z() < 0.0)))))) {
    q.coeffs() = -q.coeffs();
  }
  return q;
}

}  // namespace

const char* group_name(Group g) { return g == Group::SO2 ? "SO2" : "SO3"; }

Group group_from_name(const std::string& name) {
  if (name == "SO2" || name == "so2") return Group::SO2;
  if (name == "SO3" || name == "so3") return Group::SO3;
  throw UsageError("rotation: unknown group name '" + name + "' (expected SO2 or SO3)");
}

Rotation Rotation::identity(Group g) {
  Rotation r;
  r.group_ = g;
  return r;
}

Rotation Rotation::from_angle(double theta) {
  if (!std::isfinite(theta)) throw UsageError("rotation: non-finite SO(2) angle");
  Rotation r;
  r.group_ = Group::SO2;
  r.angle_ = wrap_angle(theta);
  return r;
}

Rotation Rotation::from_quaternion(const Eigen::Quaterniond& q) {
  // Mild drift from composition chains is re-normalized away; junk is rejected.
  const double n = q.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-9)
    throw UsageError("rotation: quaternion norm deviates from 1 beyond tolerance");
  Rotation r;
  r.group_ = Group::SO3;
  r.q_ = canonicalize(q);
  return r;
}

Rotation Rotation::from_axis_angle(const Eigen::Vector3d& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0.0) || !std::isfinite(n) || !std::isfinite(angle))
    throw UsageError("rotation: axis-angle requires a nonzero finite axis and finite angle");
  return from_quaternion(Eigen::Quaterniond(Eigen::AngleAxisd(angle, axis / n)));
}

Rotation Rotation::from_matrix(Group g, const Eigen::MatrixXd& m) {
  const int d = ambient_dim(g);
  if (m.rows() != d || m.cols() != d)
    throw UsageError("rotation: matrix size does not match group");
  const double ortho = (m.transpose() * m - Eigen::MatrixXd::Identity(d, d)).norm();
  if (ortho > 1e-9 || m.determinant() < 0.0)
    throw UsageError("rotation: matrix is not a rotation within 1e-9");
  if (g == Group::SO2) {
    // Convention matches fundamental_matrix: m(0,1) = +sin(theta).
    return from_angle(std::atan2(m(0, 1), m(0, 0)));
  }
  Eigen::Matrix3d r = m;
  return from_quaternion(Eigen::Quaterniond(r));
}

double Rotation::angle() const {
  if (group_ != Group::SO2) throw UsageError("rotation: angle() is SO(2)-only");
  return angle_;
}

const Eigen::Quaterniond& Rotation::quaternion() const {
  if (group_ != Group::SO3) throw UsageError("rotation: quaternion() is SO(3)-only");
  return q_;
}

double Rotation::rotation_angle() const {
  if (group_ == Group::SO2) {
    const double t = angle_;
    return std::min(t, kTwoPi - t);
  }
  // atan2-based form is well conditioned at both ends of [0, pi]; quaternions
  // make the acos((tr-1)/2) branch problem a non-issue.
  const double v = q_.vec().norm();
  return 2.0 * std::atan2(v, std::abs(q_.w()));
}

Rotation compose(const Rotation& a, const Rotation& b) {
  if (a.group() != b.group()) throw UsageError("rotation: compose across groups");
  if (a.group() == Group::SO2) return Rotation::from_angle(a.angle() + b.angle());
  return Rotation::from_quaternion(a.quaternion() * b.quaternion());
}

Rotation inverse(const Rotation& a) {
  if (a.group() == Group::SO2) return Rotation::from_angle(-a.angle());
  return Rotation::from_quaternion(a.quaternion().conjugate());
}

Eigen::MatrixXd fundamental_matrix(const Rotation& a) {
  if (a.group() == Group::SO2) {
    const double c = std::cos(a.angle()), s = std::sin(a.angle());
    Eigen::Matrix2d m;
    m << c, s, -s, c;
    return m;
  }
  return a.quaternion().toRotationMatrix();
}

double geodesic_distance(const Rotation& a, const Rotation& b) {
  return compose(inverse(a), b).rotation_angle();
}

}  // namespace misync
