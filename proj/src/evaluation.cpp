#include "misync/evaluation.hpp"

#include <cmath>
#include <string>

#include "misync/errors.hpp"

namespace misync {

EvalReport compare_rotations(const std::vector<Rotation>& truth,
                             const std::vector<Rotation>& estimate) {
  if (truth.empty() || truth.size() != estimate.size())
    throw UsageError("evaluation: need matching non-empty rotation lists");
  const Group group = truth[0].group();
  const int d = ambient_dim(group);
  const int n = int(truth.size());

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (int v = 0; v < n; ++v)
    m += fundamental_matrix(truth[v]) * fundamental_matrix(estimate[v]).transpose();
  const Rotation gauge = Rotation::from_matrix(group, project_to_group(m));

  EvalReport rep;
  rep.gauge = gauge;
  rep.node_angles.resize(n);
  double sq = 0.0;
  for (int v = 0; v < n; ++v) {
    const Rotation aligned = compose(gauge, estimate[v]);
    const double chord = (fundamental_matrix(truth[v]) - fundamental_matrix(aligned)).norm();
    sq += chord * chord;
    rep.worst = std::max(rep.worst, chord / (2.0 * std::sqrt(double(d))));
    const double ang = geodesic_distance(truth[v], aligned);
    rep.node_angles(v) = ang;
    rep.mean_angle += ang / n;
    rep.max_angle = std::max(rep.max_angle, ang);
  }
  rep.frobenius = std::sqrt(sq) / (2.0 * std::sqrt(double(d) * n));
  return rep;
}

EdgeErrorStats denoised_edge_errors(const MeasurementGraph& g,
                                    const std::vector<EdgeEstimate>& estimates) {
  if (g.truth.empty()) throw UsageError("evaluation: graph carries no ground truth");
  if (estimates.empty()) throw UsageError("evaluation: no edge estimates");
  EdgeErrorStats st;
  double sq = 0.0;
  for (const EdgeEstimate& e : estimates) {
    const Rotation rel = compose(inverse(g.truth[e.i]), g.truth[e.j]);
    const double ang = geodesic_distance(rel, e.g);
    st.mean_angle += ang / double(estimates.size());
    st.max_angle = std::max(st.max_angle, ang);
    const double chord = (fundamental_matrix(rel) - fundamental_matrix(e.g)).norm();
    sq += chord * chord;
  }
  st.rms_chordal = std::sqrt(sq / double(estimates.size()));
  return st;
}

}  // namespace misync
