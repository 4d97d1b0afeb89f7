#ifndef FABRIS_ARRAY_HPP
#define FABRIS_ARRAY_HPP

#include <Eigen/Dense>
#include <complex>

namespace fabris {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform planar RIS layout. Spacing is fixed at fabrication time and does
/// not track the operating wavelength.
struct ArrayGeometry {
  int nx = 1;         // elements along x
  int ny = 1;         // elements along y
  double spacing_m = 0.0;

  ArrayGeometry(int nx_, int ny_, double spacing_m_);
  int size() const { return nx * ny; }
};

/// Carrier frequency and its free-space wavelength.
struct OperatingBand {
  double frequency_hz;
  double wavelength_m;

  static OperatingBand from_frequency(double frequency_hz);
  static OperatingBand from_wavelength(double wavelength_m);
};

struct SteeringAngles {
  double theta_rad = 0.0;  // azimuth
  double phi_rad = 0.0;    // elevation
};

/// Binary on/off state per element; 0 routes the element into its matched
/// load, 1 reflects.
struct ActivationProfile {
  Eigen::VectorXi alpha;

  explicit ActivationProfile(Eigen::VectorXi alpha_);
  static ActivationProfile all_on(int n);
  static ActivationProfile all_off(int n);
  int size() const { return static_cast<int>(alpha.size()); }
  int active_count() const { return alpha.sum(); }
};

/// Per-element reflection phases, stored in [0, 2pi).
struct PhaseProfile {
  Eigen::VectorXd phases;

  explicit PhaseProfile(Eigen::VectorXd phases_);  // rejects out-of-range
  static PhaseProfile wrapped(const Eigen::VectorXd& raw);
  static PhaseProfile zeros(int n);
  int size() const { return static_cast<int>(phases.size()); }
};

/// The two optimization variables bundled: reflection phases and activation.
struct RisConfiguration {
  PhaseProfile phases;
  ActivationProfile activation;

  RisConfiguration(PhaseProfile p, ActivationProfile a);
  int size() const { return phases.size(); }
};

double wrap_phase(double rad);  // into [0, 2pi)

/// Planar-array response a(theta, phi, lambda): Kronecker product of the
/// x-axis progression in cos(theta) and the y-axis progression in sin(phi).
/// Entry layout: index n = k*ny + m for x-index k, y-index m.
Eigen::VectorXcd steering_vector(const ArrayGeometry& geom,
                                 const SteeringAngles& angles,
                                 double wavelength_m);

/// Inter-element spacing over operating wavelength (d / lambda).
double spacing_ratio(const ArrayGeometry& geom, const OperatingBand& band);

/// Microstrip line length realizing a phase shift at a given frequency:
/// l = (phase/2) * v_f * c / (2*pi*f).
double microstrip_length(double phase_rad, double velocity_factor,
                         double frequency_hz);

/// A(alpha) = diag(alpha).
Eigen::MatrixXd activation_matrix(const ActivationProfile& activation);

}  // namespace fabris

#endif
