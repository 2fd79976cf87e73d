#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <cstdint>
#include <string>

namespace misync {

enum class Group : std::uint8_t { SO2, SO3 };

inline int ambient_dim(Group g) { return g == Group::SO2 ? 2 : 3; }
const char* group_name(Group g);
Group group_from_name(const std::string& name);

// Element of SO(2) or SO(3). SO(2) keeps the angle in [0, 2*pi); SO(3) keeps a
// unit quaternion canonicalized to the w >= 0 hemisphere so that equal rotations
// compare (and serialize) identically.
class Rotation {
 public:
  Rotation() : group_(Group::SO2), angle_(0.0), q_(Eigen::Quaterniond::Identity()) {}

  static Rotation identity(Group g);
  static Rotation from_angle(double theta);                       // SO(2)
  static Rotation from_quaternion(const Eigen::Quaterniond& q);   // SO(3); normalizes, ||q|-1| <= 1e-9 required
  static Rotation from_axis_angle(const Eigen::Vector3d& axis, double angle);  // SO(3)
  static Rotation from_matrix(Group g, const Eigen::MatrixXd& m); // nearest exact element; m must be in the group within 1e-9

  Group group() const { return group_; }
  double angle() const;                       // SO(2) only: angle in [0, 2*pi)
  const Eigen::Quaterniond& quaternion() const;  // SO(3) only

  // Geodesic rotation angle in [0, pi].
  double rotation_angle() const;

 private:
  Group group_;
  double angle_;          // SO(2)
  Eigen::Quaterniond q_;  // SO(3)
};

Rotation compose(const Rotation& a, const Rotation& b);  // a * b
Rotation inverse(const Rotation& a);

// Defining matrix: 2x2 [[cos t, sin t], [-sin t, cos t]] for SO(2) (equals the
// k=1 irreducible), standard 3x3 rotation matrix for SO(3).
Eigen::MatrixXd fundamental_matrix(const Rotation& a);

// rotation_angle(inverse(a) * b), i.e. geodesic distance in [0, pi].
double geodesic_distance(const Rotation& a, const Rotation& b);

}  // namespace misync
