#include "fabris/slnr.hpp"

#include <cmath>
#include <stdexcept>

#include "fabris/errors.hpp"

namespace fabris {

namespace {

void check_dims(const ChannelSet& ch, const RisConfiguration& cfg) {
  if (cfg.size() != ch.num_elements())
    throw std::invalid_argument("configuration length differs from channel N");
}

std::complex<double> cascade(const Eigen::VectorXcd& h_rx,
                             std::complex<double> direct,
                             const Eigen::VectorXcd& g,
                             const RisConfiguration& cfg) {
  std::complex<double> sum = direct;
  for (Eigen::Index n = 0; n < h_rx.size(); ++n) {
    if (cfg.activation.alpha[static_cast<int>(n)] == 0) continue;
    sum += std::conj(h_rx[n]) * std::polar(1.0, cfg.phases.phases[n]) * g[n];
  }
  return sum;
}

}  // namespace

std::complex<double> cascaded_gain(const ChannelSet& ch,
                                   const RisConfiguration& cfg) {
  check_dims(ch, cfg);
  return cascade(ch.h, ch.h_d, ch.g, cfg);
}

double slnr(const ChannelSet& ch, const RisConfiguration& cfg,
            double tx_power_w, double noise_power_w) {
  check_dims(ch, cfg);
  if (!(tx_power_w > 0.0) || !(noise_power_w > 0.0))
    throw std::invalid_argument("slnr: powers must be positive");
  const double numerator = std::norm(cascade(ch.h, ch.h_d, ch.g, cfg));
  double denominator = noise_power_w / tx_power_w;
  for (int t = 0; t < ch.num_nonintended(); ++t)
    denominator += std::norm(cascade(ch.h_t[t], ch.h_dt[t], ch.g, cfg));
  return numerator / denominator;
}

PhaseProfile optimal_phase_profile(const ChannelSet& ch) {
  if (ch.h_d == std::complex<double>(0.0, 0.0))
    throw DegenerateChannelError("optimal_phase_profile: zero direct link");
  const double direct_phase = std::arg(ch.h_d);
  Eigen::VectorXd phases(ch.num_elements());
  for (Eigen::Index n = 0; n < ch.h.size(); ++n) {
    const std::complex<double> hbar = std::conj(ch.h[n]) * ch.g[n];
    if (hbar == std::complex<double>(0.0, 0.0))
      throw DegenerateChannelError(
          "optimal_phase_profile: zero cascaded entry");
    phases[n] = wrap_phase(direct_phase - std::arg(hbar));
  }
  return PhaseProfile(std::move(phases));
}

LiftedProblem lift(const ChannelSet& ch, const PhaseProfile& phases,
                   double tx_power_w, double noise_power_w) {
  if (phases.size() != ch.num_elements())
    throw std::invalid_argument("lift: phase profile length differs from N");
  if (!(tx_power_w > 0.0) || !(noise_power_w > 0.0))
    throw std::invalid_argument("lift: powers must be positive");
  const int n = ch.num_elements();
  const int t_count = ch.num_nonintended();

  Eigen::VectorXcd phi(n);
  for (int i = 0; i < n; ++i) phi[i] = std::polar(1.0, phases.phases[i]);

  LiftedProblem lp;
  lp.big_h.resize(n + 1);
  for (int i = 0; i < n; ++i) lp.big_h[i] = std::conj(ch.h[i]) * phi[i] * ch.g[i];
  lp.big_h[n] = ch.h_d;

  lp.big_g.resize(n + 1, t_count);
  for (int t = 0; t < t_count; ++t) {
    for (int i = 0; i < n; ++i)
      lp.big_g(i, t) = std::conj(ch.h_t[t][i]) * phi[i] * ch.g[i];
    lp.big_g(n, t) = ch.h_dt[t];
  }
  lp.noise_over_power = noise_power_w / tx_power_w;
  return lp;
}

Eigen::MatrixXd LiftedProblem::signal_quadratic() const {
  return (big_h * big_h.adjoint()).real();
}

Eigen::MatrixXd LiftedProblem::leakage_quadratic() const {
  if (big_g.cols() == 0)
    return Eigen::MatrixXd::Zero(dim(), dim());
  return (big_g * big_g.adjoint()).real();
}

double LiftedProblem::binary_ratio(const Eigen::VectorXi& alpha) const {
  const int n = dim() - 1;
  if (alpha.size() != n)
    throw std::invalid_argument("binary_ratio: activation length differs from N");
  std::complex<double> signal = big_h[n];
  for (int i = 0; i < n; ++i)
    if (alpha[i] != 0) signal += big_h[i];
  double denominator = noise_over_power;
  for (Eigen::Index t = 0; t < big_g.cols(); ++t) {
    std::complex<double> leak = big_g(n, t);
    for (int i = 0; i < n; ++i)
      if (alpha[i] != 0) leak += big_g(i, t);
    denominator += std::norm(leak);
  }
  return std::norm(signal) / denominator;
}

}  // namespace fabris
