#include "misync/fourier.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "misync/errors.hpp"

namespace misync {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct QuadResult {
  double value = 0.0;
  double err = 0.0;
  long long evals = 0;
  bool converged = true;
  bool fallback = false;
};

struct Simpson {
  const std::function<double(double)>& f;
  QuadResult out;

  double eval(double x) {
    ++out.evals;
    const double v = f(x);
    if (!std::isfinite(v))
      throw EvaluationError("harmonic: loss integrand non-finite at angle " + std::to_string(x));
    return v;
  }

  void recurse(double a, double m, double b, double fa, double fm, double fb, double whole,
               double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = eval(lm), frm = eval(rm);
    const double h6 = (b - a) / 12.0;
    const double left = h6 * (fa + 4.0 * flm + fm);
    const double right = h6 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth <= 0) {
      out.value += left + right + delta / 15.0;
      out.err += std::abs(delta) / 15.0;
      if (depth <= 0 && std::abs(delta) > 15.0 * tol) out.converged = false;
      return;
    }
    recurse(a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1);
    recurse(m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }
};

// Adapts each of `panels` equal panels independently. The panel count must not
// divide the integrand's oscillation period: seeding straight from {0, pi/2,
// pi, ...} puts every initial node on a zero of the harmonic factor for some
// frequencies and the refinement never starts.
QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b, int panels,
                            const QuadratureOptions& opts) {
  Simpson s{f, {}};
  const double width = (b - a) / double(panels);
  const double tol = opts.target / double(panels);
  for (int p = 0; p < panels; ++p) {
    const double pa = a + width * double(p);
    const double pb = (p + 1 == panels) ? b : a + width * double(p + 1);
    const double m = 0.5 * (pa + pb);
    const double fa = s.eval(pa), fm = s.eval(m), fb = s.eval(pb);
    const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
    s.recurse(pa, m, pb, fa, fm, fb, whole, tol, opts.max_depth);
  }
  return s.out;
}

QuadResult trapezoid(const std::function<double(double)>& f, double a, double b, long long n) {
  QuadResult r;
  const double h = (b - a) / double(n);
  // Half-weight endpoints; also evaluate at n/2 spacing for an error estimate.
  double coarse = 0.0, fine = 0.0;
  for (long long i = 0; i <= n; ++i) {
    const double v = f(a + h * double(i));
    if (!std::isfinite(v))
      throw EvaluationError("harmonic: loss integrand non-finite during fallback quadrature");
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    fine += w * v;
    if (i % 2 == 0) coarse += (i == 0 || i == n) ? 0.5 * v : v;
  }
  r.value = fine * h;
  r.err = std::abs(fine * h - coarse * 2.0 * h) / 3.0;
  r.evals = n + 1;
  r.fallback = true;
  return r;
}

// Chordal residual of the fundamental representation at class angle t; the
// same expression for both groups.
double residual(double t) { return std::sqrt(std::max(0.0, 4.0 - 4.0 * std::cos(t))); }

// (sin(k t/2) / sin(t/2))^2 with its removable singularities filled in.
double fejer_ratio(int k, double t) {
  const double s = std::sin(0.5 * t);
  if (std::abs(s) < 1e-8) return double(k) * k;
  const double q = std::sin(0.5 * k * t) / s;
  return q * q;
}

}  // namespace

const char* kernel_name(KernelTag k) { return k == KernelTag::Dirichlet ? "dirichlet" : "fejer"; }

KernelTag kernel_from_name(const std::string& name) {
  if (name == "dirichlet") return KernelTag::Dirichlet;
  if (name == "fejer") return KernelTag::Fejer;
  throw UsageError("harmonic: unknown kernel name '" + name + "'");
}

FourierWeights loss_fourier_coefficients(Group group, const LossSpec& loss, int lmax,
                                         KernelTag kernel, const QuadratureOptions& opts) {
  if (lmax < 1) throw UsageError("harmonic: lmax must be >= 1");
  if (lmax > kMaxIrrepIndex)
    throw CapabilityError("harmonic: lmax " + std::to_string(lmax) + " exceeds maximum " +
                          std::to_string(kMaxIrrepIndex));

  FourierWeights w;
  w.group = group;
  w.kernel = kernel;
  w.lmax = lmax;
  w.k.resize(lmax);

  const auto h = [&](double t) { return evaluate_loss(loss, residual(t)); };

  // index 0 computes k0 (always via the plain character integral).
  for (int r = 0; r <= lmax; ++r) {
    std::function<double(double)> integrand;
    if (group == Group::SO3) {
      if (r == 0) {
        integrand = [&](double t) { return (1.0 - std::cos(t)) * h(t) / kTwoPi; };
      } else if (kernel == KernelTag::Dirichlet) {
        const double scale = 1.0 / (kTwoPi * (2.0 * r + 1.0));
        integrand = [&, r, scale](double t) {
          return scale * (1.0 - std::cos(t)) * h(t) * character({Group::SO3, r}, t);
        };
      } else {
        const double scale = 1.0 / (kTwoPi * double(r) * (2.0 * r + 1.0));
        integrand = [&, r, scale](double t) { return scale * (1.0 - std::cos(r * t)) * h(t); };
      }
    } else {
      if (r == 0) {
        integrand = [&](double t) { return h(t) / kTwoPi; };
      } else if (kernel == KernelTag::Dirichlet) {
        integrand = [&, r](double t) { return h(t) * std::cos(r * t) / kTwoPi; };
      } else {
        const double scale = 1.0 / (kTwoPi * 2.0 * r);
        integrand = [&, r, scale](double t) { return scale * h(t) * fejer_ratio(r, t); };
      }
    }

    // 4*panels > r: seed nodes are spaced tighter than the zeros of cos(r t),
    // so no panel can see an all-zero stencil.
    const int panels = std::max(9, 2 * r + 1);
    QuadResult q = adaptive_simpson(integrand, 0.0, kTwoPi, panels, opts);
    if (!q.converged) {
      q = trapezoid(integrand, 0.0, kTwoPi, opts.fallback_nodes);
      w.quad.fallback = true;
      if (q.err > 1e-8)
        throw NumericError("harmonic: quadrature failed to converge (estimated error " +
                           std::to_string(q.err) + " after fallback)");
    }
    w.quad.nodes += q.evals;
    w.quad.est_error += q.err;
    if (r == 0)
      w.k0 = q.value;
    else
      w.k(r - 1) = q.value;
  }
  return w;
}

BandLimitedFunction shifted_loss_coefficients(const FourierWeights& w, const Rotation& gtilde) {
  if (gtilde.group() != w.group) throw UsageError("harmonic: group mismatch");
  BandLimitedFunction f;
  f.group = w.group;
  f.lmax = w.lmax;
  f.f0 = w.k0;
  f.fhat.resize(w.lmax);
  if (w.group == Group::SO3) {
    const auto ladder = so3_irrep_ladder(fundamental_matrix(gtilde), w.lmax);
    for (int r = 1; r <= w.lmax; ++r) f.fhat[r - 1] = w.k(r - 1) * ladder[r];
  } else {
    for (int r = 1; r <= w.lmax; ++r)
      f.fhat[r - 1] = w.k(r - 1) * irrep_matrix({Group::SO2, r}, gtilde);
  }
  return f;
}

double evaluate(const BandLimitedFunction& f, const Rotation& g) {
  if (g.group() != f.group) throw UsageError("harmonic: group mismatch");
  double acc = f.f0;
  if (f.group == Group::SO3) {
    const auto ladder = so3_irrep_ladder(fundamental_matrix(g), f.lmax);
    // d_rho Tr[rho(g^-1) fhat] = d_rho <rho(g), fhat>_F.
    for (int r = 1; r <= f.lmax; ++r)
      acc += (2.0 * r + 1.0) * ladder[r].cwiseProduct(f.fhat[r - 1]).sum();
  } else {
    for (int r = 1; r <= f.lmax; ++r)
      acc += 2.0 * irrep_matrix({Group::SO2, r}, g).cwiseProduct(f.fhat[r - 1]).sum();
  }
  return acc;
}

double parseval_norm(const BandLimitedFunction& f) {
  // L2 weight per irreducible: d_rho^2 for SO(2) (the 2x2 real block carries a
  // conjugate pair of complex irreducibles), d_rho for SO(3).
  double acc = f.f0 * f.f0;
  for (int r = 1; r <= f.lmax; ++r) {
    const double w = f.group == Group::SO2 ? 4.0 : 2.0 * r + 1.0;
    acc += w * f.fhat[r - 1].squaredNorm();
  }
  return acc;
}

}  // namespace misync
