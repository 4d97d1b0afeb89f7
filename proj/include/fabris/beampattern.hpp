#ifndef FABRIS_BEAMPATTERN_HPP
#define FABRIS_BEAMPATTERN_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "fabris/array.hpp"

namespace fabris {

/// Array-factor gain over an angular grid, in dB relative to a single
/// element. Exact nulls are stored as -inf (written as -400 dB in files).
struct Pattern2D {
  Eigen::VectorXd theta_grid;  // radians, sorted
  Eigen::VectorXd phi_grid;    // radians, sorted
  Eigen::MatrixXd gain_db;     // |theta_grid| x |phi_grid|
  OperatingBand band;
  ArrayGeometry geometry;
};

struct LobeMetrics {
  double main_lobe_db = 0.0;
  double width_3db_deg = 0.0;
  double sll_db = 0.0;  // relative to the main lobe, <= 0
};

/// Evaluates 10*log10(|a(theta,phi,lambda)^H A(alpha) v|^2) with
/// v = diag(Phi^H) at every grid point.
Pattern2D synthesize(const ArrayGeometry& geom, const OperatingBand& band,
                     const RisConfiguration& cfg,
                     const Eigen::VectorXd& theta_grid,
                     const Eigen::VectorXd& phi_grid);

/// Main-lobe magnitude, 3 dB width along the theta cut through the peak,
/// and side-lobe level. The main-lobe region is the connected set above the
/// peak-minus-10-dB contour.
LobeMetrics lobe_metrics(const Pattern2D& p);

/// Max gain over a set of directions, bilinearly interpolated (in linear
/// power) between grid points.
double leakage_in_region(
    const Pattern2D& p,
    const std::vector<std::pair<double, double>>& directions);

void write_pattern_csv(const Pattern2D& p, const std::string& path);

}  // namespace fabris

#endif
