#include "fabris/sdp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace fabris {

namespace {

// Clamps the diagonal into [0,1] and pins the homogenization entry.
void project_box(Eigen::MatrixXd& v) {
  const int d = static_cast<int>(v.rows());
  for (int i = 0; i < d - 1; ++i)
    v(i, i) = std::clamp(v(i, i), 0.0, 1.0);
  v(d - 1, d - 1) = 1.0;
}

double box_residual(const Eigen::MatrixXd& v) {
  const int d = static_cast<int>(v.rows());
  double r = std::abs(v(d - 1, d - 1) - 1.0);
  for (int i = 0; i < d - 1; ++i) {
    r = std::max(r, v(i, i) - 1.0);
    r = std::max(r, -v(i, i));
  }
  return std::max(r, 0.0);
}

// Alternating projections until the iterate sits in the intersection of the
// box/anchor set and the PSD cone (ends on the cone, so min eig >= 0).
double polish(Eigen::MatrixXd& v, double target_residual, int max_rounds) {
  double r = box_residual(v);
  for (int k = 0; k < max_rounds && r > target_residual; ++k) {
    project_box(v);
    v = project_psd(v);
    r = box_residual(v);
  }
  return r;
}

}  // namespace

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m, double symmetry_tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("project_psd: matrix is not square");
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > symmetry_tol * (1.0 + scale))
    throw std::invalid_argument("project_psd: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      0.5 * (m + m.transpose()));
  Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * lambda.asDiagonal() *
         eig.eigenvectors().transpose();
}

SdpInstance SdpInstance::at_level(const LiftedProblem& lp, double level) {
  SdpInstance inst;
  Eigen::MatrixXd q = lp.signal_quadratic() - level * lp.leakage_quadratic();
  inst.objective = 0.5 * (q + q.transpose());
  inst.level = level;
  inst.noise_over_power = lp.noise_over_power;
  return inst;
}

SdpSolution solve_feasibility_step(
    const SdpInstance& inst, double tol, int max_iter,
    const std::optional<Eigen::MatrixXd>& warm_start) {
  const int d = inst.dim();

  // Channel powers put the raw objective many orders of magnitude below 1.
  // The decision max <Q,V> >= thr is invariant under joint scaling of Q and
  // thr, so normalize by thr itself; then the slack is a relative margin.
  // thr = 0 only at t = 0, where any scale gives the right (feasible) answer.
  const double thr_raw = inst.feasibility_threshold();
  const double scale =
      thr_raw > 0.0 ? thr_raw
                    : std::max(inst.objective.cwiseAbs().maxCoeff(),
                               std::numeric_limits<double>::min());
  const Eigen::MatrixXd q = inst.objective / scale;
  const double thr = thr_raw / scale;
  const double slack = tol * (1.0 + std::abs(thr));

  const double q_norm = q.norm();
  const double step = q_norm > 0.0 ? 1.0 / q_norm : 1.0;

  // Three-operator (Davis-Yin) splitting for max <Q,V> over box ∩ PSD:
  // each round takes one ascent step, one box projection and one PSD
  // projection, and the shadow pair (vb, vs) converges to the optimum.
  Eigen::MatrixXd z;
  if (warm_start && warm_start->rows() == d) {
    z = *warm_start;
  } else {
    z = Eigen::MatrixXd::Zero(d, d);
    z(d - 1, d - 1) = 1.0;
  }

  // Weak-duality upper bound on max <q,V> built from the splitting state:
  // diag(z - vb)/step approximates the multipliers of the diagonal
  // constraints, and shifting by the residual's top eigenvalue makes the
  // dual matrix certificate exact regardless of convergence.
  const auto dual_upper_bound = [&](const Eigen::MatrixXd& z_cur,
                                    const Eigen::MatrixXd& vb_cur) {
    Eigen::VectorXd s = (z_cur - vb_cur).diagonal() / step;
    Eigen::MatrixXd m = q;
    m.diagonal() -= s;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m,
                                                       Eigen::EigenvaluesOnly);
    const double shift = std::max(eig.eigenvalues().maxCoeff(), 0.0);
    return s.head(d - 1).cwiseMax(0.0).sum() + s[d - 1] + d * shift;
  };

  SdpSolution sol;
  Eigen::MatrixXd vb = z;
  Eigen::MatrixXd vs = z;
  double change = 0.0;
  double ubound = std::numeric_limits<double>::infinity();
  int iter = 0;
  bool converged = false;
  for (; iter < max_iter; ++iter) {
    vb = z;
    project_box(vb);
    vs = project_psd(2.0 * vb - z + step * q);
    z += vs - vb;
    change = (vs - vb).norm();

    // The threshold test only needs a point in the constraint set whose
    // objective clears thr, so stop as soon as the iterate can certify it.
    if ((q.cwiseProduct(vs)).sum() >= thr + slack) {
      Eigen::MatrixXd candidate = vs;
      if (polish(candidate, 1e-9, 200) <= 1e-7 &&
          (q.cwiseProduct(candidate)).sum() >= thr - slack) {
        sol.v_star = candidate;
        sol.status = SdpStatus::kFeasible;
        sol.objective_value = (q.cwiseProduct(candidate)).sum() * scale;
        sol.primal_residual = box_residual(candidate);
        sol.dual_residual = change;
        sol.iterations = iter + 1;
        return sol;
      }
    }
    converged = change <= tol * (1.0 + vb.norm());
    if (converged || iter % 16 == 15) {
      ubound = dual_upper_bound(z, vb);
      if (ubound < thr - slack) {
        converged = false;  // decided by certificate, not by stagnation
        ++iter;
        break;
      }
    }
    if (converged) {
      ++iter;
      break;
    }
  }

  Eigen::MatrixXd v = vs;
  sol.primal_residual = polish(v, 1e-9, 1000);
  const double attained = (q.cwiseProduct(v)).sum();
  sol.objective_value = attained * scale;
  sol.v_star = v;
  sol.dual_residual = change;
  sol.iterations = iter;
  if (attained >= thr - slack && sol.primal_residual <= 1e-7)
    sol.status = SdpStatus::kFeasible;
  else if (ubound < thr + slack)
    sol.status = SdpStatus::kInfeasible;
  else
    sol.status = SdpStatus::kMaxIterations;
  return sol;
}

BisectionResult sdr_bisection(const LiftedProblem& lp, double t_lo,
                              double t_hi, double tol, double feasibility_tol,
                              int max_iter) {
  if (!(t_lo <= t_hi) || !std::isfinite(t_lo) || !std::isfinite(t_hi))
    throw std::invalid_argument("sdr_bisection: invalid interval");
  if (!(tol > 0.0)) throw std::invalid_argument("sdr_bisection: tol must be positive");

  SdpSolution lo_sol = solve_feasibility_step(SdpInstance::at_level(lp, t_lo),
                                              feasibility_tol, max_iter);
  if (lo_sol.status != SdpStatus::kFeasible)
    throw std::invalid_argument("sdr_bisection: t_lo is not feasible");
  SdpSolution hi_sol = solve_feasibility_step(SdpInstance::at_level(lp, t_hi),
                                              feasibility_tol, max_iter,
                                              lo_sol.v_star);
  if (hi_sol.status == SdpStatus::kFeasible)
    throw std::invalid_argument("sdr_bisection: t_hi is not infeasible");

  BisectionResult result;
  result.v_star = lo_sol.v_star;
  result.t_star = t_lo;
  Eigen::MatrixXd warm = lo_sol.v_star;
  while (t_hi - t_lo > tol * std::max(t_hi, std::numeric_limits<double>::min())) {
    const double mid = 0.5 * (t_lo + t_hi);
    if (mid <= t_lo || mid >= t_hi) break;  // interval exhausted in doubles
    SdpSolution mid_sol = solve_feasibility_step(
        SdpInstance::at_level(lp, mid), feasibility_tol, max_iter, warm);
    if (mid_sol.status == SdpStatus::kFeasible) {
      t_lo = mid;
      warm = mid_sol.v_star;
      result.v_star = mid_sol.v_star;
      result.t_star = mid;
    } else {
      t_hi = mid;
    }
  }
  return result;
}

bool activation_candidate_better(double ratio, const Eigen::VectorXi& alpha,
                                 double best_ratio,
                                 const Eigen::VectorXi& best_alpha) {
  if (ratio != best_ratio) return ratio > best_ratio;
  const int active = alpha.sum();
  const int best_active = best_alpha.sum();
  if (active != best_active) return active < best_active;
  for (Eigen::Index i = 0; i < alpha.size(); ++i)
    if (alpha[i] != best_alpha[i]) return alpha[i] < best_alpha[i];
  return false;
}

ActivationProfile gaussian_randomization(const Eigen::MatrixXd& v_star,
                                         const LiftedProblem& lp,
                                         int num_samples,
                                         std::uint64_t rng_seed) {
  const int d = lp.dim();
  const int n = d - 1;
  if (v_star.rows() != d || v_star.cols() != d)
    throw std::invalid_argument("gaussian_randomization: dimension mismatch");
  if (num_samples < 1)
    throw std::invalid_argument("gaussian_randomization: num_samples < 1");

  // Covariance factor with clamped spectrum; V* is only numerically PSD.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      0.5 * (v_star + v_star.transpose()));
  Eigen::MatrixXd factor =
      eig.eigenvectors() *
      eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();

  Eigen::VectorXi best = Eigen::VectorXi::Ones(n);
  double best_ratio = lp.binary_ratio(best);

  Eigen::VectorXi diag_rounded(n);
  for (int i = 0; i < n; ++i) diag_rounded[i] = v_star(i, i) >= 0.5 ? 1 : 0;
  double r = lp.binary_ratio(diag_rounded);
  if (activation_candidate_better(r, diag_rounded, best_ratio, best)) {
    best = diag_rounded;
    best_ratio = r;
  }

  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(d);
  Eigen::VectorXi alpha(n);
  for (int s = 0; s < num_samples; ++s) {
    for (int i = 0; i < d; ++i) z[i] = normal(rng);
    Eigen::VectorXd x = factor * z;
    const double sign = x[d - 1] < 0.0 ? -1.0 : 1.0;  // resolve +-alpha_bar
    for (int i = 0; i < n; ++i) {
      const double y = std::clamp(x[i] * sign, 0.0, 1.0);
      alpha[i] = y >= 0.5 ? 1 : 0;
    }
    r = lp.binary_ratio(alpha);
    if (activation_candidate_better(r, alpha, best_ratio, best)) {
      best = alpha;
      best_ratio = r;
    }
  }

  // Greedy 1- and 2-flip polish. Each accepted move strictly improves the
  // (ratio, active count, lexicographic) order, so this terminates; it is
  // deterministic and can only raise the returned ratio.
  const auto polish_flips = [&lp, n](Eigen::VectorXi& a, double& ratio) {
    bool improved = true;
    while (improved) {
      improved = false;
      Eigen::VectorXi cand = a;
      double cand_ratio = ratio;
      Eigen::VectorXi flipped = a;
      for (int i = 0; i < n; ++i) {
        flipped = a;
        flipped[i] ^= 1;
        double r2 = lp.binary_ratio(flipped);
        if (activation_candidate_better(r2, flipped, cand_ratio, cand)) {
          cand = flipped;
          cand_ratio = r2;
        }
        for (int j = i + 1; j < n; ++j) {
          flipped[j] ^= 1;
          r2 = lp.binary_ratio(flipped);
          if (activation_candidate_better(r2, flipped, cand_ratio, cand)) {
            cand = flipped;
            cand_ratio = r2;
          }
          flipped[j] ^= 1;
        }
      }
      if (cand != a) {
        a = cand;
        ratio = cand_ratio;
        improved = true;
      }
    }
  };

  // Polishing the deterministic candidates separately explores different
  // basins than polishing the sample winner alone.
  std::array<Eigen::VectorXi, 3> starts = {best, Eigen::VectorXi::Ones(n),
                                           diag_rounded};
  for (Eigen::VectorXi& start : starts) {
    double ratio = lp.binary_ratio(start);
    polish_flips(start, ratio);
    if (activation_candidate_better(ratio, start, best_ratio, best)) {
      best = start;
      best_ratio = ratio;
    }
  }
  return ActivationProfile(best);
}

}  // namespace fabris
