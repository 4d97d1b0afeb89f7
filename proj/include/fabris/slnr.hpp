#ifndef FABRIS_SLNR_HPP
#define FABRIS_SLNR_HPP

#include <Eigen/Dense>
#include <complex>

#include "fabris/array.hpp"
#include "fabris/channel.hpp"

namespace fabris {

/// Homogenized data of the binary activation problem. With
/// alpha_bar = [alpha^T 1]^T, the SLNR numerator is |big_h^H alpha_bar|^2 and
/// the leakage sum is ||big_g^H alpha_bar||^2. big_g holds one column per
/// non-intended UE.
struct LiftedProblem {
  Eigen::VectorXcd big_h;   // length N+1
  Eigen::MatrixXcd big_g;   // (N+1) x T
  double noise_over_power;  // sigma_n^2 / P

  int dim() const { return static_cast<int>(big_h.size()); }

  /// Re(HH^H) and Re(GG^H); real symmetric PSD, used by the SDR stage.
  Eigen::MatrixXd signal_quadratic() const;
  Eigen::MatrixXd leakage_quadratic() const;

  /// Exact SLNR of a binary activation: the real-quadratic-form ratio.
  double binary_ratio(const Eigen::VectorXi& alpha) const;
};

/// h^H A(alpha) Phi g + h_d.
std::complex<double> cascaded_gain(const ChannelSet& ch,
                                   const RisConfiguration& cfg);

/// |h^H A Phi g + h_d|^2 / (sigma^2/P + sum_t |h_t^H A Phi g + h_dt|^2).
double slnr(const ChannelSet& ch, const RisConfiguration& cfg,
            double tx_power_w, double noise_power_w);

/// Phases aligning every cascaded term with the direct link: the n-th term
/// h_n^* e^{j phi_n} g_n lands on the phase of h_d, so the fully-active
/// cascade sums coherently.
PhaseProfile optimal_phase_profile(const ChannelSet& ch);

/// Builds the homogenized problem data for a fixed phase profile.
LiftedProblem lift(const ChannelSet& ch, const PhaseProfile& phases,
                   double tx_power_w, double noise_power_w);

}  // namespace fabris

#endif
