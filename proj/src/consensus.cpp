#include "misync/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "misync/errors.hpp"
#include "misync/parallel.hpp"

namespace misync {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGolden = 0.6180339887498949;  // (sqrt(5)-1)/2

double posterior_from_ladder(const std::vector<Eigen::MatrixXd>& blocks,
                             const std::vector<Eigen::MatrixXd>& ladder) {
  double acc = 1.0;
  for (int r = 1; r <= int(blocks.size()); ++r)
    acc += (2.0 * r + 1.0) * ladder[r].cwiseProduct(blocks[r - 1]).sum();
  return acc;
}

// Degree-1 blocks live in spherical-harmonic order (y, z, x); undo that
// re-indexing to read off a fundamental rotation matrix.
Eigen::MatrixXd fundamental_from_degree1(Group group, const Eigen::MatrixXd& m) {
  if (group == Group::SO2) return m;
  static const int inv[3] = {2, 0, 1};
  Eigen::Matrix3d f;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) f(i, j) = m(inv[i], inv[j]);
  return f;
}

Rotation exp_rot(const Eigen::Vector3d& w) {
  const double n = w.norm();
  return n == 0.0 ? Rotation::identity(Group::SO3) : Rotation::from_axis_angle(w, n);
}

double posterior_so2(const std::vector<Eigen::MatrixXd>& blocks, double theta) {
  double acc = 1.0;
  for (int k = 1; k <= int(blocks.size()); ++k) {
    const Eigen::MatrixXd& d = blocks[k - 1];
    acc += 2.0 * (std::cos(k * theta) * (d(0, 0) + d(1, 1)) +
                  std::sin(k * theta) * (d(0, 1) - d(1, 0)));
  }
  return acc;
}

// Maximize a scalar function on [a, b] by golden section; assumes the grid
// stage already bracketed the peak.
double golden_max(const std::function<double(double)>& f, double a, double b, int steps) {
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int s = 0; s < steps; ++s) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

double grid_step(const ConsensusOptions& opts, double bound) {
  if (opts.grid_res <= 0.0) return bound;
  if (opts.grid_res > bound + 1e-12)
    throw UsageError("consensus: grid_res " + std::to_string(opts.grid_res) +
                     " exceeds the band-limit sampling bound " + std::to_string(bound));
  return opts.grid_res;
}

// Best few grid samples of the squared posterior, kept apart so each seeds a
// different basin. The refinement stage climbs from every survivor; one seed
// is not enough because the grid can sample a slightly lower basin at a more
// flattering point than the true one.
struct Seed {
  double v = 0.0;  // signed posterior value at the grid point
  Rotation g = Rotation::identity(Group::SO2);
};

class SeedSet {
 public:
  SeedSet(std::size_t capacity, double separation) : cap_(capacity), sep_(separation) {}

  double floor() const { return seeds_.size() < cap_ ? -1.0 : seeds_.back().v * seeds_.back().v; }

  void offer(double v, const Rotation& g) {
    const double s = v * v;
    if (s <= floor()) return;
    for (Seed& have : seeds_) {
      if (geodesic_distance(have.g, g) >= sep_) continue;
      if (s > have.v * have.v) {
        have = {v, g};
        std::sort(seeds_.begin(), seeds_.end(),
                  [](const Seed& a, const Seed& b) { return a.v * a.v > b.v * b.v; });
      }
      return;
    }
    seeds_.push_back({v, g});
    std::sort(seeds_.begin(), seeds_.end(),
              [](const Seed& a, const Seed& b) { return a.v * a.v > b.v * b.v; });
    if (seeds_.size() > cap_) seeds_.pop_back();
  }

  const std::vector<Seed>& seeds() const { return seeds_; }

 private:
  std::size_t cap_;
  double sep_;
  std::vector<Seed> seeds_;
};

EdgeEstimate maximize_so2(const EdgePosterior& p, const ConsensusOptions& opts) {
  const int lmax = int(p.d.size());
  const double step = grid_step(opts, kTwoPi / (8.0 * lmax));
  const int n = std::max(8, int(std::ceil(kTwoPi / step)));
  const double h = kTwoPi / n;

  SeedSet seeds(3, 2.0 * h);
  for (int t = 0; t < n; ++t) {
    const double theta = kTwoPi * t / n;
    seeds.offer(posterior_so2(p.d, theta), Rotation::from_angle(theta));
  }

  EdgeEstimate est;
  bool first = true;
  for (const Seed& seed : seeds.seeds()) {
    // Fold the sign in so the refinement still climbs when the seed sits in a
    // trough of the raw value.
    const double sgn = seed.v < 0.0 ? -1.0 : 1.0;
    const auto f = [&](double th) { return sgn * posterior_so2(p.d, th); };
    const double t0 = seed.g.angle();
    const double theta = golden_max(f, t0 - h, t0 + h, opts.refine_steps);
    const double v = posterior_so2(p.d, theta);
    if (first || v * v > est.peak * est.peak) {
      first = false;
      est.g = Rotation::from_angle(theta);
      est.peak = v;
    }
  }
  return est;
}

EdgeEstimate maximize_so3(const EdgePosterior& p, const ConsensusOptions& opts) {
  const int lmax = int(p.d.size());
  const double step = grid_step(opts, kPi / (2.0 * lmax + 1.0));
  const int n_ab = std::max(8, int(std::ceil(kTwoPi / step)));  // alpha, gamma
  const int n_beta = std::max(5, int(std::ceil(kPi / step)) + 1);

  // rho(Z(a) Y(b) Z(c)) splits over the z-rotation harmonics: for fixed
  // (b, c) the posterior in a is a degree-lmax trigonometric polynomial whose
  // coefficients come from C_l = D_l (Y_l(b) Z_l(c))^T, so one (b, c) pass
  // prices every alpha at once.
  std::vector<std::vector<Eigen::MatrixXd>> ybeta(n_beta);
  for (int t = 0; t < n_beta; ++t) {
    const double beta = kPi * t / (n_beta - 1);
    const Eigen::Matrix3d ry = Eigen::AngleAxisd(beta, Eigen::Vector3d::UnitY()).toRotationMatrix();
    ybeta[t] = so3_irrep_ladder(ry, lmax);
  }
  std::vector<std::vector<Eigen::MatrixXd>> zgamma(n_ab);
  for (int u = 0; u < n_ab; ++u) {
    const double gamma = kTwoPi * u / n_ab;
    zgamma[u].resize(lmax + 1);
    for (int l = 1; l <= lmax; ++l) zgamma[u][l] = so3_zrot_irrep(l, gamma);
  }

  SeedSet seeds(3, 2.0 * step);
  Eigen::VectorXd acos(lmax + 1), asin(lmax + 1);
  for (int t = 0; t < n_beta; ++t) {
    for (int u = 0; u < n_ab; ++u) {
      acos.setZero();
      asin.setZero();
      for (int l = 1; l <= lmax; ++l) {
        const Eigen::MatrixXd c = p.d[l - 1] * (ybeta[t][l] * zgamma[u][l]).transpose();
        const double dl = 2.0 * l + 1.0;
        acos(0) += dl * c(l, l);
        for (int q = 1; q <= l; ++q) {
          acos(q) += dl * (c(l - q, l - q) + c(l + q, l + q));
          asin(q) += dl * (c(l - q, l + q) - c(l + q, l - q));
        }
      }
      for (int s = 0; s < n_ab; ++s) {
        const double alpha = kTwoPi * s / n_ab;
        double v = 1.0 + acos(0);
        for (int q = 1; q <= lmax; ++q)
          v += acos(q) * std::cos(q * alpha) + asin(q) * std::sin(q * alpha);
        if (v * v > seeds.floor())
          seeds.offer(v, rotation_from_zyz({alpha, kPi * t / (n_beta - 1), kTwoPi * u / n_ab}));
      }
    }
  }

  // Refine each seed with Newton ascent in the exponential chart, re-centered
  // every step. The chart has no seam at the iterate, unlike the euler angles
  // used for the grid, and the sign fold keeps troughs climbable.
  EdgeEstimate est;
  bool first = true;
  for (const Seed& seed : seeds.seeds()) {
    const double sgn = seed.v < 0.0 ? -1.0 : 1.0;
    const auto value = [&](const Rotation& r) {
      return sgn * posterior_from_ladder(p.d, so3_irrep_ladder(fundamental_matrix(r), lmax));
    };

    Rotation g = seed.g;
    double fg = value(g);
    const double fd = 1e-4;
    for (int it = 0; it < 4 * opts.max_sweeps; ++it) {
      const auto probe = [&](const Eigen::Vector3d& w) { return value(compose(g, exp_rot(w))); };
      Eigen::Vector3d grad;
      Eigen::Matrix3d hess;
      double fp[3], fm[3];
      for (int i = 0; i < 3; ++i) {
        Eigen::Vector3d e = Eigen::Vector3d::Zero();
        e(i) = fd;
        fp[i] = probe(e);
        fm[i] = probe(-e);
        grad(i) = (fp[i] - fm[i]) / (2.0 * fd);
        hess(i, i) = (fp[i] + fm[i] - 2.0 * fg) / (fd * fd);
      }
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          Eigen::Vector3d e = Eigen::Vector3d::Zero();
          e(i) = fd;
          e(j) = fd;
          const double pp = probe(e);
          const double mm = probe(-e);
          e(j) = -fd;
          const double pm = probe(e);
          const double mp = probe(-e);
          hess(i, j) = hess(j, i) = (pp - pm - mp + mm) / (4.0 * fd * fd);
        }

      Eigen::Vector3d d = -hess.ldlt().solve(grad);
      if (!d.allFinite() || d.norm() > step) {
        // Hessian unusable this far from the peak; take an ascent step instead.
        const double gn = grad.norm();
        if (gn < 1e-13) break;
        d = grad * (step / gn);
      }
      double fnew = probe(d);
      int halvings = 0;
      while (fnew < fg && halvings < 30) {
        d *= 0.5;
        fnew = probe(d);
        ++halvings;
      }
      if (fnew < fg) break;
      g = compose(g, exp_rot(d));
      fg = fnew;
      if (d.norm() < 1e-12) break;
    }

    if (first || fg * fg > est.peak * est.peak) {
      first = false;
      est.g = g;
      est.peak = sgn * fg;
    }
  }
  return est;
}

}  // namespace

EdgePosterior edge_posterior(const std::vector<SpectralBlock>& blocks, int i, int j) {
  if (blocks.empty()) throw UsageError("consensus: no spectral blocks");
  EdgePosterior p;
  p.group = blocks[0].rho.group;
  p.i = i;
  p.j = j;
  p.d.reserve(blocks.size());
  for (int r = 1; r <= int(blocks.size()); ++r) {
    const SpectralBlock& b = blocks[r - 1];
    if (b.rho.index != r || b.rho.group != p.group)
      throw UsageError("consensus: blocks must cover irreps 1..lmax in order");
    p.d.push_back(b.gram(i, j));
  }
  return p;
}

double posterior_value(const EdgePosterior& p, const Rotation& g) {
  if (g.group() != p.group) throw UsageError("consensus: group mismatch");
  if (p.group == Group::SO2) return posterior_so2(p.d, g.angle());
  const auto ladder = so3_irrep_ladder(fundamental_matrix(g), int(p.d.size()));
  return posterior_from_ladder(p.d, ladder);
}

double delta_height(Group group, int lmax) {
  if (group == Group::SO2) return 1.0 + 4.0 * lmax;
  double h = 1.0;
  for (int l = 1; l <= lmax; ++l) h += (2.0 * l + 1.0) * (2.0 * l + 1.0);
  return h;
}

EdgeEstimate argmax_on_group(const EdgePosterior& p, const ConsensusOptions& opts) {
  if (p.d.empty()) throw UsageError("consensus: empty coefficient set");
  EdgeEstimate est = p.group == Group::SO2 ? maximize_so2(p, opts) : maximize_so3(p, opts);
  est.i = p.i;
  est.j = p.j;
  est.sharpness = est.peak / delta_height(p.group, int(p.d.size()));
  return est;
}

DenoiseResult denoise_graph(const MeasurementGraph& g,
                            const std::vector<SpectralBlock>& blocks,
                            const ConsensusOptions& opts) {
  DenoiseResult out;
  out.graph = g;
  out.edges.resize(g.edges.size());
  parallel_for(int(g.edges.size()), opts.threads, [&](int e) {
    out.edges[e] = argmax_on_group(edge_posterior(blocks, g.edges[e].i, g.edges[e].j), opts);
    out.graph.edges[e].rel = out.edges[e].g;
  });
  return out;
}

Eigen::MatrixXd project_to_group(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw UsageError("consensus: projection needs a square matrix");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) < 1e-12 * std::max(1.0, sv(0)))
    throw NumericError("consensus: nearest-rotation projection of a near-singular matrix");
  Eigen::MatrixXd u = svd.matrixU(), v = svd.matrixV();
  if ((u * v.transpose()).determinant() < 0.0) u.col(u.cols() - 1) *= -1.0;
  return u * v.transpose();
}

std::vector<Rotation> rotations_from_block(const SpectralBlock& fundamental) {
  if (fundamental.rho.index != 1)
    throw UsageError("consensus: rotation recovery uses the fundamental irrep block");
  const int d = int(fundamental.phi.rows());
  const int n = fundamental.num_nodes;

  // The embedding determines the blocks up to one common orthogonal factor,
  // which may be orientation reversing; vote on det sign before projecting.
  int neg = 0;
  for (int v = 0; v < n; ++v)
    if (fundamental.phi.middleCols(v * d, d).determinant() < 0.0) ++neg;
  Eigen::MatrixXd flip = Eigen::MatrixXd::Identity(d, d);
  if (2 * neg > n) flip(d - 1, d - 1) = -1.0;

  std::vector<Eigen::MatrixXd> p(n);
  for (int v = 0; v < n; ++v)
    p[v] = project_to_group(flip * fundamental.phi.middleCols(v * d, d));

  std::vector<Rotation> out;
  out.reserve(n);
  const Group group = fundamental.rho.group;
  for (int v = 0; v < n; ++v)
    out.push_back(
        Rotation::from_matrix(group, fundamental_from_degree1(group, p[0].transpose() * p[v])));
  return out;
}

std::vector<Rotation> recover_rotations(const MeasurementGraph& denoised,
                                        const EigOptions& eig) {
  require_connected(denoised);
  const IrrepIndex fund{denoised.group, 1};
  const Eigen::VectorXd unit = Eigen::VectorXd::Ones(Eigen::Index(denoised.edges.size()));
  const RhoLaplacian L = build_rho_laplacian(denoised, fund, unit);
  return rotations_from_block(extract_block(L, eig));
}

}  // namespace misync
