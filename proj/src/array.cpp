#include "fabris/array.hpp"

#include <cmath>
#include <stdexcept>

#include "fabris/errors.hpp"

namespace fabris {

ArrayGeometry::ArrayGeometry(int nx_, int ny_, double spacing_m_)
    : nx(nx_), ny(ny_), spacing_m(spacing_m_) {
  if (nx < 1 || ny < 1)
    throw std::invalid_argument("ArrayGeometry: element counts must be >= 1");
  if (!(spacing_m > 0.0))
    throw std::invalid_argument("ArrayGeometry: spacing_m must be positive");
}

OperatingBand OperatingBand::from_frequency(double frequency_hz) {
  if (!(frequency_hz > 0.0))
    throw std::invalid_argument("OperatingBand: frequency must be positive");
  return {frequency_hz, kSpeedOfLight / frequency_hz};
}

OperatingBand OperatingBand::from_wavelength(double wavelength_m) {
  if (!(wavelength_m > 0.0))
    throw std::invalid_argument("OperatingBand: wavelength must be positive");
  return {kSpeedOfLight / wavelength_m, wavelength_m};
}

ActivationProfile::ActivationProfile(Eigen::VectorXi alpha_)
    : alpha(std::move(alpha_)) {
  if (alpha.size() < 1)
    throw std::invalid_argument("ActivationProfile: empty profile");
  for (Eigen::Index i = 0; i < alpha.size(); ++i)
    if (alpha[i] != 0 && alpha[i] != 1)
      throw std::invalid_argument("ActivationProfile: entries must be 0 or 1");
}

ActivationProfile ActivationProfile::all_on(int n) {
  return ActivationProfile(Eigen::VectorXi::Ones(n));
}

ActivationProfile ActivationProfile::all_off(int n) {
  return ActivationProfile(Eigen::VectorXi::Zero(n));
}

double wrap_phase(double rad) {
  double w = std::fmod(rad, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;  // fmod can land exactly on 2pi after the add
  return w;
}

PhaseProfile::PhaseProfile(Eigen::VectorXd phases_)
    : phases(std::move(phases_)) {
  if (phases.size() < 1)
    throw std::invalid_argument("PhaseProfile: empty profile");
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    if (!(phases[i] >= 0.0 && phases[i] < kTwoPi))
      throw std::invalid_argument("PhaseProfile: phase outside [0, 2pi)");
}

PhaseProfile PhaseProfile::wrapped(const Eigen::VectorXd& raw) {
  Eigen::VectorXd w(raw.size());
  for (Eigen::Index i = 0; i < raw.size(); ++i) w[i] = wrap_phase(raw[i]);
  return PhaseProfile(std::move(w));
}

PhaseProfile PhaseProfile::zeros(int n) {
  return PhaseProfile(Eigen::VectorXd::Zero(n));
}

RisConfiguration::RisConfiguration(PhaseProfile p, ActivationProfile a)
    : phases(std::move(p)), activation(std::move(a)) {
  if (phases.size() != activation.size())
    throw std::invalid_argument(
        "RisConfiguration: phase and activation lengths differ");
}

Eigen::VectorXcd steering_vector(const ArrayGeometry& geom,
                                 const SteeringAngles& angles,
                                 double wavelength_m) {
  if (!(wavelength_m > 0.0))
    throw std::invalid_argument("steering_vector: wavelength must be positive");
  const double ratio = geom.spacing_m / wavelength_m;
  const double step_x = -kTwoPi * ratio * std::cos(angles.theta_rad);
  const double step_y = -kTwoPi * ratio * std::sin(angles.phi_rad);

  Eigen::VectorXcd ax(geom.nx), ay(geom.ny);
  for (int k = 0; k < geom.nx; ++k)
    ax[k] = std::polar(1.0, step_x * static_cast<double>(k));
  for (int m = 0; m < geom.ny; ++m)
    ay[m] = std::polar(1.0, step_y * static_cast<double>(m));

  Eigen::VectorXcd a(geom.size());
  for (int k = 0; k < geom.nx; ++k)
    for (int m = 0; m < geom.ny; ++m) a[k * geom.ny + m] = ax[k] * ay[m];
  return a;
}

double spacing_ratio(const ArrayGeometry& geom, const OperatingBand& band) {
  return geom.spacing_m / band.wavelength_m;
}

double microstrip_length(double phase_rad, double velocity_factor,
                         double frequency_hz) {
  if (!(phase_rad >= 0.0 && phase_rad < kTwoPi))
    throw std::invalid_argument("microstrip_length: phase outside [0, 2pi)");
  if (!(velocity_factor > 0.0 && velocity_factor <= 1.0))
    throw std::invalid_argument(
        "microstrip_length: velocity factor outside (0, 1]");
  if (!(frequency_hz > 0.0))
    throw std::invalid_argument("microstrip_length: frequency must be positive");
  return 0.5 * phase_rad * velocity_factor * kSpeedOfLight /
         (kTwoPi * frequency_hz);
}

Eigen::MatrixXd activation_matrix(const ActivationProfile& activation) {
  return activation.alpha.cast<double>().asDiagonal();
}

}  // namespace fabris
