#include "fabris/optimizer.hpp"

#include <cmath>
#include <stdexcept>

#include "fabris/errors.hpp"

namespace fabris {

namespace {

// Any level above (sum |H_i|)^2 * P / sigma^2 is infeasible: the numerator
// quadratic form cannot exceed the coherent bound while the leakage term is
// nonnegative.
double level_upper_bound(const LiftedProblem& lp) {
  const double coherent = lp.big_h.cwiseAbs().sum();
  return coherent * coherent / lp.noise_over_power;
}

}  // namespace

OptimizeResult optimize(const ChannelSet& ch, double tx_power_w,
                        double noise_power_w, const OptimizerOptions& opts) {
  if (opts.outer_iterations < 1)
    throw std::invalid_argument("optimize: outer_iterations must be >= 1");

  PhaseProfile phases = optimal_phase_profile(ch);
  ActivationProfile activation = naive(ch.num_elements());
  double t_star = 0.0;

  for (int pass = 0; pass < opts.outer_iterations; ++pass) {
    // Eq.-(7)-style phases depend only on the channels, so every pass
    // recomputes the same profile and only the first activation solve can
    // change anything.
    phases = optimal_phase_profile(ch);
    const LiftedProblem lp = lift(ch, phases, tx_power_w, noise_power_w);

    // Expand geometrically until infeasible; the analytic cap bounds the
    // loop. The 1% margin keeps the cap decisively outside the feasibility
    // slack of the inner solver.
    const double cap = level_upper_bound(lp) * 1.01;
    double t_hi = std::max(lp.binary_ratio(activation.alpha), 1.0);
    std::optional<Eigen::MatrixXd> warm;
    while (t_hi < cap) {
      SdpSolution probe =
          solve_feasibility_step(SdpInstance::at_level(lp, t_hi),
                                 opts.feasibility_tol, opts.max_iter, warm);
      // Only a certified infeasible level may serve as the bracket top;
      // an undecided probe just keeps expanding toward the analytic cap.
      if (probe.status == SdpStatus::kInfeasible) break;
      if (probe.status == SdpStatus::kFeasible) warm = probe.v_star;
      t_hi *= 2.0;
    }
    t_hi = std::min(t_hi, cap);

    BisectionResult bisect =
        sdr_bisection(lp, 0.0, t_hi, opts.bisection_tol, opts.feasibility_tol,
                      opts.max_iter);
    t_star = bisect.t_star;
    activation = gaussian_randomization(bisect.v_star, lp, opts.num_samples,
                                        opts.seed);
  }

  RisConfiguration config(std::move(phases), std::move(activation));
  const double achieved = slnr(ch, config, tx_power_w, noise_power_w);
  return {std::move(config), achieved, t_star};
}

BruteForceResult brute_force(const ChannelSet& ch, const PhaseProfile& phases,
                             double tx_power_w, double noise_power_w) {
  const int n = ch.num_elements();
  if (n > 20)
    throw std::invalid_argument(
        "brute_force: N > 20 would enumerate more than 2^20 profiles");
  const LiftedProblem lp = lift(ch, phases, tx_power_w, noise_power_w);

  Eigen::VectorXi best = Eigen::VectorXi::Zero(n);
  double best_ratio = lp.binary_ratio(best);
  Eigen::VectorXi alpha(n);
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    for (int i = 0; i < n; ++i) alpha[i] = (mask >> i) & 1u;
    const double ratio = lp.binary_ratio(alpha);
    if (activation_candidate_better(ratio, alpha, best_ratio, best)) {
      best = alpha;
      best_ratio = ratio;
    }
  }
  return {ActivationProfile(best), best_ratio};
}

ActivationProfile naive(int n) {
  if (n < 1) throw std::invalid_argument("naive: n must be >= 1");
  return ActivationProfile::all_on(n);
}

}  // namespace fabris
