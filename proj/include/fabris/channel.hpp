#ifndef FABRIS_CHANNEL_HPP
#define FABRIS_CHANNEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "fabris/array.hpp"

namespace fabris {

using Position3 = Eigen::Vector3d;

/// Scenario geometry and link budget. The BS sits at the origin.
struct ScenarioLayout {
  Position3 p_ris;
  Position3 p_ue;
  std::vector<Position3> nonintended;
  double beta0 = 1e-3;        // linear power gain at 1 m reference distance
  double tx_power_w = 1.0;
  double noise_power_w = 1e-11;
  ArrayGeometry ris_geometry;
  OperatingBand band;

  void validate() const;  // throws on degenerate geometry / bad powers
};

/// All LOS channels of one scenario at one wavelength.
struct ChannelSet {
  Eigen::VectorXcd h;                   // RIS -> target UE
  Eigen::VectorXcd g;                   // BS -> RIS
  std::complex<double> h_d;             // BS -> target UE direct
  std::vector<Eigen::VectorXcd> h_t;    // RIS -> non-intended UEs
  std::vector<std::complex<double>> h_dt;  // BS -> non-intended UEs direct

  int num_elements() const { return static_cast<int>(h.size()); }
  int num_nonintended() const { return static_cast<int>(h_t.size()); }
};

/// Inverse-square LOS power gain beta0 / ||dst - src||^2.
double path_gain(const Position3& src, const Position3& dst, double beta0);

/// Azimuth/elevation of `target` as seen from `p_ris`:
/// theta = atan2(dy, dx), phi = asin(dz / ||delta||).
SteeringAngles angles_from_positions(const Position3& p_ris,
                                     const Position3& target);

/// sqrt(path gain) times the steering vector toward `target`. With
/// target = origin this yields the BS->RIS channel g.
Eigen::VectorXcd ris_link_channel(const ScenarioLayout& scenario,
                                  const Position3& target);

/// Direct BS->UE link: sqrt(beta0)/||p_ue|| * exp(j*2*pi*||p_ue||/lambda).
std::complex<double> direct_channel(const Position3& p_ue,
                                    const OperatingBand& band, double beta0);

/// Assembles h, g, h_d and the non-intended lists. Pure LOS, deterministic.
ChannelSet build_channel_set(const ScenarioLayout& scenario);

/// Receive signal y = (h^H A(alpha) Phi g + h_d) s + n.
std::complex<double> receive_signal(const ChannelSet& ch,
                                    const RisConfiguration& cfg,
                                    std::complex<double> symbol,
                                    std::complex<double> noise);

double dbm_to_watts(double dbm);
double db_to_linear(double db);
double linear_to_db(double linear);

}  // namespace fabris

#endif
