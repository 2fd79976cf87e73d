#pragma once

#include <Eigen/Dense>
#include <vector>

#include "misync/consensus.hpp"
#include "misync/graph.hpp"

namespace misync {

// Estimates are compared up to a single global rotation: the Procrustes
// aligner U maximizing sum_i <R_i, U Rhat_i> absorbs the gauge before any
// error is read off.
struct EvalReport {
  double frobenius = 0.0;   // sqrt(sum_i |R_i - U Rhat_i|_F^2) / (2 sqrt(d N)), in [0, 1]
  double worst = 0.0;       // max_i |R_i - U Rhat_i|_F / (2 sqrt(d)), in [0, 1]
  Rotation gauge;           // the aligner U
  double mean_angle = 0.0;  // radians, after alignment
  double max_angle = 0.0;
  Eigen::VectorXd node_angles;
};

EvalReport compare_rotations(const std::vector<Rotation>& truth,
                             const std::vector<Rotation>& estimate);

// How far denoised edge estimates sit from the relative rotations implied by
// the graph's stored ground truth. No alignment is involved: relative
// rotations are gauge free.
struct EdgeErrorStats {
  double mean_angle = 0.0;
  double max_angle = 0.0;
  double rms_chordal = 0.0;  // root mean square of |R - Rhat|_F over edges
};

EdgeErrorStats denoised_edge_errors(const MeasurementGraph& g,
                                    const std::vector<EdgeEstimate>& estimates);

}  // namespace misync
