#include "fabris/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "fabris/errors.hpp"
#include "fabris/slnr.hpp"

namespace fabris {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

void ScenarioLayout::validate() const {
  if (p_ris.norm() == 0.0)
    throw DegenerateGeometryError("scenario: RIS coincides with the BS");
  if ((p_ue - p_ris).norm() == 0.0)
    throw DegenerateGeometryError("scenario: UE coincides with the RIS");
  if (p_ue.norm() == 0.0)
    throw DegenerateGeometryError("scenario: UE coincides with the BS");
  if (!(beta0 > 0.0)) throw std::invalid_argument("scenario: beta0 must be positive");
  if (!(tx_power_w > 0.0))
    throw std::invalid_argument("scenario: tx_power_w must be positive");
  if (!(noise_power_w > 0.0))
    throw std::invalid_argument("scenario: noise_power_w must be positive");
}

double path_gain(const Position3& src, const Position3& dst, double beta0) {
  const double d2 = (dst - src).squaredNorm();
  if (d2 == 0.0)
    throw DegenerateGeometryError("path_gain: coincident positions");
  return beta0 / d2;
}

SteeringAngles angles_from_positions(const Position3& p_ris,
                                     const Position3& target) {
  const Position3 delta = target - p_ris;
  const double norm = delta.norm();
  if (norm == 0.0)
    throw DegenerateGeometryError("angles_from_positions: coincident positions");
  return {std::atan2(delta.y(), delta.x()), std::asin(delta.z() / norm)};
}

Eigen::VectorXcd ris_link_channel(const ScenarioLayout& scenario,
                                  const Position3& target) {
  const double gain = path_gain(scenario.p_ris, target, scenario.beta0);
  const SteeringAngles angles = angles_from_positions(scenario.p_ris, target);
  return std::sqrt(gain) * steering_vector(scenario.ris_geometry, angles,
                                           scenario.band.wavelength_m);
}

std::complex<double> direct_channel(const Position3& p_ue,
                                    const OperatingBand& band, double beta0) {
  const double dist = p_ue.norm();
  if (dist == 0.0) throw DegenerateGeometryError("direct_channel: UE at the origin");
  return std::polar(std::sqrt(beta0) / dist,
                    kTwoPi * dist / band.wavelength_m);
}

ChannelSet build_channel_set(const ScenarioLayout& scenario) {
  scenario.validate();
  ChannelSet ch;
  ch.h = ris_link_channel(scenario, scenario.p_ue);
  ch.g = ris_link_channel(scenario, Position3::Zero());
  ch.h_d = direct_channel(scenario.p_ue, scenario.band, scenario.beta0);
  ch.h_t.reserve(scenario.nonintended.size());
  ch.h_dt.reserve(scenario.nonintended.size());
  for (const Position3& p : scenario.nonintended) {
    ch.h_t.push_back(ris_link_channel(scenario, p));
    ch.h_dt.push_back(direct_channel(p, scenario.band, scenario.beta0));
  }
  return ch;
}

std::complex<double> receive_signal(const ChannelSet& ch,
                                    const RisConfiguration& cfg,
                                    std::complex<double> symbol,
                                    std::complex<double> noise) {
  return cascaded_gain(ch, cfg) * symbol + noise;
}

}  // namespace fabris
