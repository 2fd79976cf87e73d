#pragma once

#include <random>

#include "misync/rotation.hpp"

namespace misync {

using Rng = std::mt19937_64;

Rotation sample_haar(Group g, Rng& rng);

// Isotropic Langevin density ~ exp(kappa * Tr[fundamental(mode^-1 g)]).
// kappa = 0 reduces to Haar; kappa < 0 is a usage error. Exact rejection
// sampling; acceptance stays O(1) for kappa up to 1e6 and beyond.
Rotation sample_langevin(const Rotation& mode, double kappa, Rng& rng);

// von Mises(0, conc) on [-pi, pi) via Best-Fisher rejection. Exposed for tests.
double sample_von_mises(double conc, Rng& rng);

}  // namespace misync
