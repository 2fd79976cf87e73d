#include "misync/sampling.hpp"

#include <cmath>
#include <numbers>

#include "misync/errors.hpp"

namespace misync {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Vector3d sample_unit_axis(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Vector3d v;
  do {
    v << n(rng), n(rng), n(rng);
  } while (v.norm() < 1e-12);
  return v.normalized();
}

// Angle marginal of the SO(3) Langevin at the identity:
//   p(phi) ~ (1 - cos phi) * exp(2 kappa cos phi)  on [0, pi].
// kappa < 1: propose |von Mises(2 kappa)|, accept w.p. (1 - cos phi)/2.
// kappa >= 1: propose phi ~ Maxwell(sigma^2 = pi^2 / (8 kappa)) truncated to
// [0, pi] and accept w.p.
//   [(1 - cos phi) / (phi^2/2)] * exp(2 kappa (cos phi - 1 + 2 phi^2/pi^2)).
// Both factors are <= 1 on (0, pi] because 2 phi^2/pi^2 <= 1 - cos phi <=
// phi^2/2, so this is exact; acceptance stays near 26% for large kappa.
double sample_so3_angle(double kappa, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (kappa < 1.0) {
    for (;;) {
      const double phi = std::abs(sample_von_mises(2.0 * kappa, rng));
      if (unif(rng) <= 0.5 * (1.0 - std::cos(phi))) return phi;
    }
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  const double sigma = kPi / std::sqrt(8.0 * kappa);
  for (;;) {
    const double x = normal(rng), y = normal(rng), z = normal(rng);
    const double phi = sigma * std::sqrt(x * x + y * y + z * z);
    if (phi >= kPi || phi <= 0.0) continue;
    const double c = std::cos(phi);
    const double ratio = (2.0 * (1.0 - c) / (phi * phi)) *
                         std::exp(2.0 * kappa * (c - 1.0 + 2.0 * phi * phi / (kPi * kPi)));
    if (unif(rng) <= ratio) return phi;
  }
}

}  // namespace

double sample_von_mises(double conc, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (conc < 1e-10) return kPi * (2.0 * unif(rng) - 1.0);

  // Best & Fisher wrapped-Cauchy envelope.
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * conc * conc);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * conc);
  const double r = (1.0 + rho * rho) / (2.0 * rho);
  for (;;) {
    const double z = std::cos(kPi * unif(rng));
    const double f = (1.0 + r * z) / (r + z);
    const double c = conc * (r - f);
    const double u2 = unif(rng);
    if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
      const double sign = unif(rng) < 0.5 ? -1.0 : 1.0;
      return sign * std::acos(std::clamp(f, -1.0, 1.0));
    }
  }
}

Rotation sample_haar(Group g, Rng& rng) {
  if (g == Group::SO2) {
    std::uniform_real_distribution<double> unif(0.0, 2.0 * kPi);
    return Rotation::from_angle(unif(rng));
  }
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q;
  double norm;
  do {
    q = Eigen::Quaterniond(n(rng), n(rng), n(rng), n(rng));
    norm = q.norm();
  } while (norm < 1e-12);
  q.coeffs() /= norm;
  return Rotation::from_quaternion(q);
}

Rotation sample_langevin(const Rotation& mode, double kappa, Rng& rng) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw UsageError("sampling: Langevin concentration must be finite and >= 0");
  if (kappa == 0.0) return compose(mode, sample_haar(mode.group(), rng));

  if (mode.group() == Group::SO2) {
    // Tr = 2 cos phi, so the angle is von Mises with concentration 2 kappa.
    return compose(mode, Rotation::from_angle(sample_von_mises(2.0 * kappa, rng)));
  }
  const double phi = sample_so3_angle(kappa, rng);
  return compose(mode, Rotation::from_axis_angle(sample_unit_axis(rng), phi));
}

}  // namespace misync
