#include "misync/loss.hpp"

#include <cmath>

#include "misync/errors.hpp"

namespace misync {

const char* loss_name(LossKind k) {
  switch (k) {
    case LossKind::Quadratic: return "quadratic";
    case LossKind::Cauchy: return "cauchy";
    case LossKind::Gmc: return "gmc";
    default: return "custom";
  }
}

LossKind loss_from_name(const std::string& name) {
  if (name == "quadratic") return LossKind::Quadratic;
  if (name == "cauchy") return LossKind::Cauchy;
  if (name == "gmc") return LossKind::Gmc;
  if (name == "custom") return LossKind::Custom;
  throw UsageError("loss: unknown loss name '" + name + "'");
}

double evaluate_loss(const LossSpec& spec, double x) {
  switch (spec.kind) {
    case LossKind::Quadratic:
      return 0.5 * spec.weight * x * x;
    case LossKind::Cauchy: {
      const double r = x / spec.lambda;
      return spec.weight * spec.lambda * spec.lambda * std::log1p(r * r);
    }
    case LossKind::Gmc: {
      const double x2 = x * x;
      return spec.weight * 2.0 * x2 / (x2 + 4.0 * spec.lambda * spec.lambda);
    }
    case LossKind::Custom: {
      if (!spec.custom) throw UsageError("loss: custom loss without a callable");
      const double v = spec.custom(x);
      if (!std::isfinite(v))
        throw EvaluationError("loss: custom loss returned a non-finite value at x=" +
                              std::to_string(x));
      return spec.weight * v;
    }
  }
  throw UsageError("loss: unknown loss kind");
}

double lambda_policy(LossKind kind, Group group, double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw UsageError("loss: lambda policy requires kappa > 0");
  const double d = ambient_dim(group);
  switch (kind) {
    case LossKind::Cauchy:
      return (d + std::sqrt(10.0)) / std::sqrt(kappa);
    case LossKind::Gmc:
      return (d * std::sqrt(3.0) + std::sqrt(30.0)) / (2.0 * std::sqrt(kappa));
    case LossKind::Quadratic:
      throw CapabilityError("loss: quadratic loss has no scale parameter");
    default:
      throw CapabilityError("loss: custom losses manage their own scale");
  }
}

LossSpec edge_loss(LossKind kind, Group group, double kappa, double lambda_override) {
  LossSpec spec;
  spec.kind = kind;
  if (kind == LossKind::Quadratic) {
    if (!(kappa > 0.0)) throw UsageError("loss: quadratic edge loss requires kappa > 0");
    spec.weight = kappa;  // evaluate_loss multiplies by 1/2
    return spec;
  }
  if (kind == LossKind::Custom)
    throw UsageError("loss: custom edge losses must be constructed explicitly");
  spec.lambda = lambda_override > 0.0 ? lambda_override : lambda_policy(kind, group, kappa);
  return spec;
}

}  // namespace misync
