#pragma once

#include <functional>

#include "misync/rotation.hpp"

namespace misync {

enum class LossKind { Quadratic, Cauchy, Gmc, Custom };

const char* loss_name(LossKind k);
LossKind loss_from_name(const std::string& name);

// Scalar loss h(x) of the chordal residual x = |sigma(g) - sigma(g~)|_F.
//   Quadratic: (weight/2) x^2  (weight carries the per-edge concentration)
//   Cauchy:    lambda^2 log(1 + (x/lambda)^2)
//   Gmc:       2 x^2 / (x^2 + 4 lambda^2)
//   Custom:    user callable, must be finite on [0, 2 sqrt(d)]
struct LossSpec {
  LossKind kind = LossKind::Quadratic;
  double lambda = 1.0;
  double weight = 1.0;
  std::function<double(double)> custom;
};

double evaluate_loss(const LossSpec& spec, double x);

// Scale parameter tuned to the Langevin concentration:
//   Cauchy: (d + sqrt(10)) / sqrt(kappa)
//   Gmc:    (d sqrt(3) + sqrt(30)) / (2 sqrt(kappa))
// d is the ambient matrix dimension. kappa <= 0 is a usage error; Quadratic has
// no scale and Custom manages its own, both are capability errors here.
double lambda_policy(LossKind kind, Group group, double kappa);

// Per-edge loss for the solver: Quadratic gets weight = kappa, so the loss is
// (kappa/2) x^2, the Langevin negative log-likelihood up to a constant.
// Robust losses get lambda from the policy unless overridden.
LossSpec edge_loss(LossKind kind, Group group, double kappa, double lambda_override = 0.0);

}  // namespace misync
