#include <cmath>
#include <functional>

#include "doctest.h"
#include "misync/errors.hpp"
#include "misync/fourier.hpp"
#include "misync/irrep.hpp"
#include "misync/sampling.hpp"

using namespace misync;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Midpoint rule over one period; spectrally accurate for smooth periodic
// integrands and never lands on t = 0.
double periodic_mean(const std::function<double(double)>& f, int n = 400000) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += f(-kPi + (i + 0.5) * (2.0 * kPi / n));
  return s / n;
}

double chordal(double t) { return std::sqrt(std::max(0.0, 4.0 - 4.0 * std::cos(t))); }

}  // namespace

TEST_SUITE("fourier") {

TEST_CASE("quadratic loss transforms in closed form") {
  // h(a(t)) = 2 kappa (1 - cos t) is a degree-1 trig polynomial, so every
  // coefficient reduces to a handful of cosine overlaps.
  for (double kappa : {1.0, 25.0, 3.7}) {
    LossSpec q;
    q.kind = LossKind::Quadratic;
    q.weight = kappa;

    const FourierWeights sd = loss_fourier_coefficients(Group::SO2, q, 6, KernelTag::Dirichlet);
    CHECK(sd.k0 == doctest::Approx(2.0 * kappa).epsilon(1e-9));
    CHECK(sd.k(0) == doctest::Approx(-kappa).epsilon(1e-9));
    for (int k = 2; k <= 6; ++k) CHECK(std::abs(sd.k(k - 1)) < 1e-9 * kappa);

    const FourierWeights sf = loss_fourier_coefficients(Group::SO2, q, 6, KernelTag::Fejer);
    CHECK(sf.k0 == doctest::Approx(2.0 * kappa).epsilon(1e-9));
    for (int k = 1; k <= 6; ++k) CHECK(sf.k(k - 1) == doctest::Approx(kappa / k).epsilon(1e-9));

    const FourierWeights td = loss_fourier_coefficients(Group::SO3, q, 6, KernelTag::Dirichlet);
    CHECK(td.k0 == doctest::Approx(3.0 * kappa).epsilon(1e-9));
    CHECK(td.k(0) == doctest::Approx(-kappa / 3.0).epsilon(1e-9));
    for (int l = 2; l <= 6; ++l) CHECK(std::abs(td.k(l - 1)) < 1e-9 * kappa);

    const FourierWeights tf = loss_fourier_coefficients(Group::SO3, q, 6, KernelTag::Fejer);
    CHECK(tf.k0 == doctest::Approx(3.0 * kappa).epsilon(1e-9));
    CHECK(tf.k(0) == doctest::Approx(kappa).epsilon(1e-9));
    for (int l = 2; l <= 6; ++l)
      CHECK(tf.k(l - 1) == doctest::Approx(2.0 * kappa / (l * (2.0 * l + 1.0))).epsilon(1e-9));
  }
}

TEST_CASE("cauchy loss at unit scale transforms in closed form") {
  // With lambda = 1 the class profile is log(5 - 4 cos t), whose series is
  // log 4 - 2 sum_m 2^-m cos(mt)/m. Every coefficient below follows from the
  // cosine overlaps of that series.
  LossSpec c;
  c.kind = LossKind::Cauchy;
  c.lambda = 1.0;
  const double log4 = std::log(4.0);

  const FourierWeights sd = loss_fourier_coefficients(Group::SO2, c, 8, KernelTag::Dirichlet);
  CHECK(sd.k0 == doctest::Approx(log4).epsilon(1e-9));
  for (int k = 1; k <= 8; ++k)
    CHECK(sd.k(k - 1) == doctest::Approx(-std::pow(0.5, k) / k).epsilon(1e-8));

  const FourierWeights sf = loss_fourier_coefficients(Group::SO2, c, 3, KernelTag::Fejer);
  CHECK(sf.k(0) == doctest::Approx(0.5 * log4).epsilon(1e-9));
  CHECK(sf.k(2) == doctest::Approx(0.5 * log4 - 0.375).epsilon(1e-8));

  const FourierWeights td = loss_fourier_coefficients(Group::SO3, c, 1, KernelTag::Dirichlet);
  CHECK(td.k(0) == doctest::Approx(-0.125).epsilon(1e-8));

  const FourierWeights tf = loss_fourier_coefficients(Group::SO3, c, 8, KernelTag::Fejer);
  CHECK(tf.k0 == doctest::Approx(log4 + 0.5).epsilon(1e-9));
  for (int l = 1; l <= 8; ++l) {
    const double want = (log4 + std::pow(0.5, l) / l) / (l * (2.0 * l + 1.0));
    CHECK(tf.k(l - 1) == doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("gmc loss matches a flat periodic quadrature") {
  LossSpec g;
  g.kind = LossKind::Gmc;
  g.lambda = 0.7;
  const auto h = [&](double t) { return evaluate_loss(g, chordal(t)); };

  const FourierWeights tf = loss_fourier_coefficients(Group::SO3, g, 6, KernelTag::Fejer);
  for (int l = 1; l <= 6; ++l) {
    const double want =
        periodic_mean([&](double t) { return (1.0 - std::cos(l * t)) * h(t); }) /
        (l * (2.0 * l + 1.0));
    CHECK(tf.k(l - 1) == doctest::Approx(want).epsilon(1e-8));
  }
  const FourierWeights td = loss_fourier_coefficients(Group::SO3, g, 4, KernelTag::Dirichlet);
  for (int l = 1; l <= 4; ++l) {
    const double want = periodic_mean([&](double t) {
                          return (1.0 - std::cos(t)) * h(t) *
                                 character({Group::SO3, l}, t);
                        }) /
                        (2.0 * l + 1.0);
    CHECK(td.k(l - 1) == doctest::Approx(want).epsilon(1e-8));
  }
  const FourierWeights sf = loss_fourier_coefficients(Group::SO2, g, 4, KernelTag::Fejer);
  for (int k = 1; k <= 4; ++k) {
    const double want = periodic_mean([&](double t) {
                          const double r = std::sin(k * t / 2.0) / std::sin(t / 2.0);
                          return h(t) * r * r;
                        }) /
                        (2.0 * k);
    CHECK(sf.k(k - 1) == doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("fejer coefficients of nonnegative losses stay nonnegative") {
  Rng rng(31);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    // Random mixture of gaussian bumps, strictly nonnegative.
    const double a1 = uni(rng), a2 = uni(rng);
    const double c1 = 4.0 * uni(rng), c2 = 4.0 * uni(rng);
    const double b1 = 0.5 + 4.0 * uni(rng), b2 = 0.5 + 4.0 * uni(rng);
    LossSpec spec;
    spec.kind = LossKind::Custom;
    spec.custom = [=](double x) {
      return a1 * std::exp(-b1 * (x - c1) * (x - c1)) + a2 * std::exp(-b2 * (x - c2) * (x - c2));
    };
    const Group grp = (rep % 2 == 0) ? Group::SO2 : Group::SO3;
    const FourierWeights w = loss_fourier_coefficients(grp, spec, 6, KernelTag::Fejer);
    for (int r = 1; r <= 6; ++r) CHECK(w.k(r - 1) >= -1e-12);
  }
}

TEST_CASE("shifted coefficients evaluate as a character series") {
  Rng rng(32);
  LossSpec c;
  c.kind = LossKind::Cauchy;
  c.lambda = 0.8;
  for (Group grp : {Group::SO2, Group::SO3}) {
    const FourierWeights w = loss_fourier_coefficients(grp, c, 5, KernelTag::Fejer);
    const Rotation gt = sample_haar(grp, rng);
    const BandLimitedFunction f = shifted_loss_coefficients(w, gt);
    for (int rep = 0; rep < 10; ++rep) {
      const Rotation g = sample_haar(grp, rng);
      const double rel = geodesic_distance(g, gt);
      double series = w.k0;
      for (int r = 1; r <= 5; ++r) {
        const double d = (grp == Group::SO2) ? 2.0 : 2.0 * r + 1.0;
        series += d * w.k(r - 1) * character({grp, r}, rel);
      }
      CHECK(evaluate(f, g) == doctest::Approx(series).epsilon(1e-9));
    }
  }
}

TEST_CASE("truncation error shrinks with the band limit") {
  // Dirichlet coefficients are plain transform values, so the evaluated series
  // is the partial Peter-Weyl sum of the loss and must converge to it
  // pointwise. The loss is a class function, so probing one axis suffices.
  LossSpec c;
  c.kind = LossKind::Cauchy;
  c.lambda = 1.0;
  const Rotation gt = Rotation::identity(Group::SO3);
  double err3 = 0.0, err12 = 0.0;
  for (int lmax : {3, 12}) {
    const FourierWeights w = loss_fourier_coefficients(Group::SO3, c, lmax, KernelTag::Dirichlet);
    const BandLimitedFunction f = shifted_loss_coefficients(w, gt);
    double worst = 0.0;
    for (int i = 0; i <= 64; ++i) {
      const double t = kPi * i / 64.0;
      const double direct = evaluate_loss(c, chordal(t));
      const Rotation g = Rotation::from_axis_angle(Eigen::Vector3d::UnitX(), t);
      worst = std::max(worst, std::abs(evaluate(f, g) - direct));
    }
    (lmax == 3 ? err3 : err12) = worst;
  }
  CHECK(err12 < 0.2 * err3);
  CHECK(err12 < 0.05);
}

TEST_CASE("parseval weights reproduce the monte carlo L2 norm") {
  Rng rng(33);
  std::normal_distribution<double> nd;
  for (Group grp : {Group::SO2, Group::SO3}) {
    BandLimitedFunction f;
    f.group = grp;
    f.lmax = 2;
    f.f0 = nd(rng);
    for (int r = 1; r <= 2; ++r) {
      const int d = grp == Group::SO2 ? 2 : 2 * r + 1;
      Eigen::MatrixXd m(d, d);
      if (grp == Group::SO2) {
        // The transform of a real function lands in the span of the rotation
        // block and its quarter turn; sample the coefficient there.
        const double a = nd(rng), b = nd(rng);
        m << a, b, -b, a;
      } else {
        for (int p = 0; p < d; ++p)
          for (int q = 0; q < d; ++q) m(p, q) = nd(rng);
      }
      f.fhat.push_back(0.3 * m);
    }
    const int mc = 40000;
    double s = 0.0, s2 = 0.0;
    for (int t = 0; t < mc; ++t) {
      const double v = evaluate(f, sample_haar(grp, rng));
      s += v * v;
      s2 += v * v * v * v;
    }
    const double mean = s / mc;
    const double sigma = std::sqrt(std::max(0.0, s2 / mc - mean * mean) / mc);
    CHECK(std::abs(parseval_norm(f) - mean) < 5.0 * sigma + 1e-12);
  }
}

TEST_CASE("quadrature diagnostics and failure modes") {
  LossSpec kinked;
  kinked.kind = LossKind::Custom;
  kinked.custom = [](double x) { return std::abs(x - 1.0); };
  const FourierWeights w = loss_fourier_coefficients(Group::SO2, kinked, 3, KernelTag::Dirichlet);
  CHECK(w.quad.nodes > 0);
  const double want = periodic_mean([&](double t) { return std::abs(chordal(t) - 1.0) * std::cos(t); },
                                    2000000);
  CHECK(w.k(0) == doctest::Approx(want).epsilon(1e-7));

  LossSpec bad;
  bad.kind = LossKind::Custom;
  bad.custom = [](double x) { return x < 1.0 ? 0.0 : std::nan(""); };
  CHECK_THROWS_AS(loss_fourier_coefficients(Group::SO2, bad, 2, KernelTag::Fejer),
                  EvaluationError);

  LossSpec q;
  q.kind = LossKind::Quadratic;
  CHECK_THROWS_AS(loss_fourier_coefficients(Group::SO2, q, 0, KernelTag::Fejer), UsageError);
  CHECK_THROWS_AS(loss_fourier_coefficients(Group::SO2, q, kMaxIrrepIndex + 1, KernelTag::Fejer),
                  CapabilityError);
}

TEST_CASE("kernel names round trip") {
  CHECK(kernel_from_name("fejer") == KernelTag::Fejer);
  CHECK(kernel_from_name("dirichlet") == KernelTag::Dirichlet);
  CHECK(kernel_from_name(kernel_name(KernelTag::Fejer)) == KernelTag::Fejer);
  CHECK_THROWS_AS(kernel_from_name("hann"), UsageError);
}

}  // TEST_SUITE
