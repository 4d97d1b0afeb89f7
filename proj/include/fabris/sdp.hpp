#ifndef FABRIS_SDP_HPP
#define FABRIS_SDP_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

#include "fabris/array.hpp"
#include "fabris/slnr.hpp"

namespace fabris {

/// One bisection step's problem: maximize tr((R_H - t*R_G) V) over
/// { V psd, V_{N+1,N+1} = 1, 0 <= V_ii <= 1 }.
struct SdpInstance {
  Eigen::MatrixXd objective;  // R_H - t * R_G, symmetric
  double level = 0.0;         // t
  double noise_over_power = 0.0;

  static SdpInstance at_level(const LiftedProblem& lp, double level);
  int dim() const { return static_cast<int>(objective.rows()); }
  double feasibility_threshold() const { return level * noise_over_power; }
};

enum class SdpStatus { kFeasible, kInfeasible, kMaxIterations };

struct SdpSolution {
  Eigen::MatrixXd v_star;
  SdpStatus status = SdpStatus::kInfeasible;
  double objective_value = 0.0;
  double primal_residual = 0.0;  // distance to the box/anchor constraints
  double dual_residual = 0.0;    // last primal change (stationarity proxy)
  int iterations = 0;
};

/// Frobenius-nearest PSD matrix: eigendecompose and clamp negative
/// eigenvalues. Idempotent.
Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m,
                            double symmetry_tol = 1e-9);

/// Projected-ascent feasibility test at a fixed level t. Alternates a
/// gradient step on the linear objective with projections onto the
/// box/anchor set and the PSD cone, then polishes the iterate into the
/// constraint intersection before comparing against t * sigma^2/P.
SdpSolution solve_feasibility_step(
    const SdpInstance& inst, double tol, int max_iter,
    const std::optional<Eigen::MatrixXd>& warm_start = std::nullopt);

struct BisectionResult {
  Eigen::MatrixXd v_star;  // solution at the last feasible level
  double t_star = 0.0;
};

/// Largest t (to relative width `tol`) whose feasibility step succeeds.
/// Requires t_lo feasible and t_hi infeasible.
BisectionResult sdr_bisection(const LiftedProblem& lp, double t_lo,
                              double t_hi, double tol,
                              double feasibility_tol = 1e-6,
                              int max_iter = 5000);

/// Rank-1 recovery: Gaussian samples with covariance V*, sign-anchored on
/// the homogenization entry, thresholded at 0.5; all-ones and the rounded
/// diagonal of V* are always candidates. Returns the best exact binary
/// ratio. Deterministic given the seed.
ActivationProfile gaussian_randomization(const Eigen::MatrixXd& v_star,
                                         const LiftedProblem& lp,
                                         int num_samples, std::uint64_t rng_seed);

/// Tie-break used across the activation search: higher ratio wins; on exact
/// ties, fewer active elements, then lexicographically smaller profile.
bool activation_candidate_better(double ratio, const Eigen::VectorXi& alpha,
                                 double best_ratio,
                                 const Eigen::VectorXi& best_alpha);

}  // namespace fabris

#endif
