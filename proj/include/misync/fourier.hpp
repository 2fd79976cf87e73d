#pragma once

#include <Eigen/Dense>
#include <vector>

#include "misync/irrep.hpp"
#include "misync/loss.hpp"
#include "misync/rotation.hpp"

namespace misync {

// Kernel used when projecting a loss onto irreducibles. Dirichlet is the plain
// character integral; Fejer is its Cesaro resummation, nonnegative whenever the
// loss is nonnegative, and the default everywhere downstream.
enum class KernelTag { Dirichlet, Fejer };

const char* kernel_name(KernelTag k);
KernelTag kernel_from_name(const std::string& name);

struct QuadratureOptions {
  double target = 1e-10;          // absolute error target per coefficient
  int max_depth = 30;
  long long fallback_nodes = 100000;
};

struct QuadratureInfo {
  long long nodes = 0;
  double est_error = 0.0;
  bool fallback = false;
};

// Scalar coefficients K^rho of a class-symmetric loss, rho = 1..lmax.
// The trivial-irrep coefficient k0 (the Haar mean of the loss; kernel-independent)
// is carried for diagnostics but excluded from the synchronization pipeline.
struct FourierWeights {
  Group group = Group::SO3;
  KernelTag kernel = KernelTag::Fejer;
  int lmax = 0;
  double k0 = 0.0;
  Eigen::VectorXd k;
  QuadratureInfo quad;
};

// Single-angle class integrals with normalized Haar measure:
//   SO(3) Dirichlet: K^l = 1/(2l+1) * (1/2pi) Int (1-cos t) h(a(t)) chi^l(t) dt
//   SO(3) Fejer:     K^l = 1/(l(2l+1)) * (1/2pi) Int (1-cos l t) h(a(t)) dt
//   SO(2) Dirichlet: K^k = (1/2pi) Int h(a(t)) cos(k t) dt
//   SO(2) Fejer:     K^k = 1/(2k) * (1/2pi) Int h(a(t)) (sin(k t/2)/sin(t/2))^2 dt
// with a(t) = sqrt(4 - 4 cos t) the chordal residual at class angle t.
FourierWeights loss_fourier_coefficients(Group group, const LossSpec& loss, int lmax,
                                         KernelTag kernel,
                                         const QuadratureOptions& opts = {});

// Band-limited function on the group: f0 plus one coefficient matrix per
// irreducible 1..lmax.
struct BandLimitedFunction {
  Group group = Group::SO3;
  int lmax = 0;
  double f0 = 0.0;
  std::vector<Eigen::MatrixXd> fhat;  // fhat[r-1] is d_r x d_r
};

// Coefficients of h(|sigma(g) - sigma(gtilde)|): fhat^rho = K^rho * rho(gtilde).
BandLimitedFunction shifted_loss_coefficients(const FourierWeights& w, const Rotation& gtilde);

// Inverse transform: f(g) = f0 + sum_rho d_rho Tr[rho(g^-1) fhat^rho].
double evaluate(const BandLimitedFunction& f, const Rotation& g);

// L2(G) norm squared under normalized Haar. Weight per irreducible block:
// d_rho^2 for SO(2) (each real 2x2 block packs a conjugate pair of complex
// irreducibles), d_rho for SO(3) (real-type irreducibles, one copy each).
double parseval_norm(const BandLimitedFunction& f);

}  // namespace misync
