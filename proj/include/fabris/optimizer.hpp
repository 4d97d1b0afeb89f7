#ifndef FABRIS_OPTIMIZER_HPP
#define FABRIS_OPTIMIZER_HPP

#include <cstdint>

#include "fabris/array.hpp"
#include "fabris/channel.hpp"
#include "fabris/sdp.hpp"
#include "fabris/slnr.hpp"

namespace fabris {

struct OptimizerOptions {
  int num_samples = 1000;       // Gaussian randomization candidates
  double bisection_tol = 1e-3;  // relative width of the final t interval
  double feasibility_tol = 1e-6;
  int max_iter = 5000;
  std::uint64_t seed = 0;
  int outer_iterations = 1;  // alternating passes; phases are alpha-free, so
                             // extra passes only exist for experimentation
};

struct OptimizeResult {
  RisConfiguration config;
  double achieved_slnr = 0.0;  // exact ratio of the returned configuration
  double relaxation_level = 0.0;  // t* from the bisection (upper bound)
};

/// Full pipeline: closed-form phases, homogenized lift, SDR bisection on the
/// SLNR level, Gaussian randomization. Never returns a configuration worse
/// than all-ones with the same phases (all-ones is always a candidate).
OptimizeResult optimize(const ChannelSet& ch, double tx_power_w,
                        double noise_power_w,
                        const OptimizerOptions& opts = {});

struct BruteForceResult {
  ActivationProfile activation;
  double slnr = 0.0;
};

/// Exhaustive activation search for a fixed phase profile. Guarded to
/// N <= 20; refuses larger problems.
BruteForceResult brute_force(const ChannelSet& ch, const PhaseProfile& phases,
                             double tx_power_w, double noise_power_w);

/// Reference baseline: every element active.
ActivationProfile naive(int n);

}  // namespace fabris

#endif
