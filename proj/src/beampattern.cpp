#include "fabris/beampattern.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <deque>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fabris/errors.hpp"

namespace fabris {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNullSentinelDb = -400.0;

void check_sorted(const Eigen::VectorXd& grid, const char* name) {
  if (grid.size() == 0)
    throw std::invalid_argument(std::string("synthesize: empty ") + name);
  for (Eigen::Index i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument(std::string("synthesize: unsorted ") + name);
}

double to_db(double linear_power) {
  return linear_power > 0.0 ? 10.0 * std::log10(linear_power) : -kInf;
}

}  // namespace

Pattern2D synthesize(const ArrayGeometry& geom, const OperatingBand& band,
                     const RisConfiguration& cfg,
                     const Eigen::VectorXd& theta_grid,
                     const Eigen::VectorXd& phi_grid) {
  if (cfg.size() != geom.size())
    throw std::invalid_argument("synthesize: configuration length differs from N");
  check_sorted(theta_grid, "theta grid");
  check_sorted(phi_grid, "phi grid");

  const double ratio = spacing_ratio(geom, band);
  // Weights w_{k,m} = alpha_n * v_n with v = diag(Phi^H); the quadratic form
  // a^H A v separates into x- and y-axis phase progressions, so evaluate the
  // y sums once per phi and sweep theta with an nx-term polynomial.
  Eigen::MatrixXcd w(geom.nx, geom.ny);
  for (int k = 0; k < geom.nx; ++k)
    for (int m = 0; m < geom.ny; ++m) {
      const int n = k * geom.ny + m;
      w(k, m) = cfg.activation.alpha[n] == 0
                    ? std::complex<double>(0.0, 0.0)
                    : std::polar(1.0, -cfg.phases.phases[n]);
    }

  Pattern2D p{theta_grid, phi_grid,
              Eigen::MatrixXd(theta_grid.size(), phi_grid.size()), band, geom};
  Eigen::VectorXcd ysum(geom.nx);
  for (Eigen::Index j = 0; j < phi_grid.size(); ++j) {
    const std::complex<double> y =
        std::polar(1.0, kTwoPi * ratio * std::sin(phi_grid[j]));
    for (int k = 0; k < geom.nx; ++k) {
      std::complex<double> acc(0.0, 0.0);
      std::complex<double> ypow(1.0, 0.0);
      for (int m = 0; m < geom.ny; ++m) {
        acc += w(k, m) * ypow;
        ypow *= y;
      }
      ysum[k] = acc;
    }
    for (Eigen::Index i = 0; i < theta_grid.size(); ++i) {
      const std::complex<double> x =
          std::polar(1.0, kTwoPi * ratio * std::cos(theta_grid[i]));
      std::complex<double> acc(0.0, 0.0);
      std::complex<double> xpow(1.0, 0.0);
      for (int k = 0; k < geom.nx; ++k) {
        acc += ysum[k] * xpow;
        xpow *= x;
      }
      p.gain_db(i, j) = to_db(std::norm(acc));
    }
  }
  return p;
}

LobeMetrics lobe_metrics(const Pattern2D& p) {
  const Eigen::Index rows = p.gain_db.rows();
  const Eigen::Index cols = p.gain_db.cols();
  Eigen::Index pi = 0, pj = 0;
  double peak = -kInf;
  double floor = kInf;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double v = p.gain_db(i, j);
      if (v > peak) {
        peak = v;
        pi = i;
        pj = j;
      }
      floor = std::min(floor, v);
    }
  if (!std::isfinite(peak) || peak - floor < 1e-9)
    throw DegeneratePatternError("lobe_metrics: flat pattern");

  LobeMetrics metrics;
  metrics.main_lobe_db = peak;

  // 3 dB width along the theta cut through the peak, with linear
  // interpolation at the crossings.
  const double level = peak - 3.0;
  const double rad2deg = 180.0 / M_PI;
  double left = p.theta_grid[0] * rad2deg;
  for (Eigen::Index i = pi; i > 0; --i) {
    const double a = p.gain_db(i, pj), b = p.gain_db(i - 1, pj);
    if (b < level) {
      const double frac = std::isfinite(b) ? (a - level) / (a - b) : 1.0;
      left = (p.theta_grid[i] + frac * (p.theta_grid[i - 1] - p.theta_grid[i])) *
             rad2deg;
      break;
    }
    left = p.theta_grid[i - 1] * rad2deg;
  }
  double right = p.theta_grid[rows - 1] * rad2deg;
  for (Eigen::Index i = pi; i + 1 < rows; ++i) {
    const double a = p.gain_db(i, pj), b = p.gain_db(i + 1, pj);
    if (b < level) {
      const double frac = std::isfinite(b) ? (a - level) / (a - b) : 1.0;
      right = (p.theta_grid[i] + frac * (p.theta_grid[i + 1] - p.theta_grid[i])) *
              rad2deg;
      break;
    }
    right = p.theta_grid[i + 1] * rad2deg;
  }
  metrics.width_3db_deg = right - left;

  // Flood fill the connected region above peak - 10 dB; everything outside
  // is side-lobe territory.
  const double lobe_floor = peak - 10.0;
  std::vector<char> in_lobe(static_cast<size_t>(rows * cols), 0);
  std::deque<std::pair<Eigen::Index, Eigen::Index>> queue{{pi, pj}};
  in_lobe[static_cast<size_t>(pi * cols + pj)] = 1;
  while (!queue.empty()) {
    auto [i, j] = queue.front();
    queue.pop_front();
    const Eigen::Index di[] = {-1, 1, 0, 0};
    const Eigen::Index dj[] = {0, 0, -1, 1};
    for (int k = 0; k < 4; ++k) {
      const Eigen::Index ni = i + di[k], nj = j + dj[k];
      if (ni < 0 || ni >= rows || nj < 0 || nj >= cols) continue;
      const size_t idx = static_cast<size_t>(ni * cols + nj);
      if (in_lobe[idx] || p.gain_db(ni, nj) < lobe_floor) continue;
      in_lobe[idx] = 1;
      queue.emplace_back(ni, nj);
    }
  }

  double best_side = -kInf;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (in_lobe[static_cast<size_t>(i * cols + j)]) continue;
      const double v = p.gain_db(i, j);
      bool local_max = true;
      if (i > 0 && p.gain_db(i - 1, j) > v) local_max = false;
      if (i + 1 < rows && p.gain_db(i + 1, j) > v) local_max = false;
      if (j > 0 && p.gain_db(i, j - 1) > v) local_max = false;
      if (j + 1 < cols && p.gain_db(i, j + 1) > v) local_max = false;
      if (local_max) best_side = std::max(best_side, v);
    }
  metrics.sll_db = best_side - peak;
  return metrics;
}

double leakage_in_region(
    const Pattern2D& p,
    const std::vector<std::pair<double, double>>& directions) {
  if (directions.empty())
    throw std::invalid_argument("leakage_in_region: empty direction set");
  const auto& tg = p.theta_grid;
  const auto& fg = p.phi_grid;
  double best = -kInf;
  for (const auto& [theta, phi] : directions) {
    if (theta < tg[0] || theta > tg[tg.size() - 1] || phi < fg[0] ||
        phi > fg[fg.size() - 1])
      throw std::invalid_argument("leakage_in_region: direction outside grid");
    auto locate = [](const Eigen::VectorXd& g, double v) {
      Eigen::Index lo = 0, hi = g.size() - 1;
      while (hi - lo > 1) {
        const Eigen::Index mid = (lo + hi) / 2;
        (g[mid] <= v ? lo : hi) = mid;
      }
      return lo;
    };
    const Eigen::Index i = tg.size() == 1 ? 0 : locate(tg, theta);
    const Eigen::Index j = fg.size() == 1 ? 0 : locate(fg, phi);
    const double ft =
        tg.size() == 1 ? 0.0 : (theta - tg[i]) / (tg[i + 1] - tg[i]);
    const double fp =
        fg.size() == 1 ? 0.0 : (phi - fg[j]) / (fg[j + 1] - fg[j]);
    auto lin = [&](Eigen::Index a, Eigen::Index b) {
      const double db = p.gain_db(a, b);
      return std::isfinite(db) ? std::pow(10.0, db / 10.0) : 0.0;
    };
    const Eigen::Index i1 = tg.size() == 1 ? i : i + 1;
    const Eigen::Index j1 = fg.size() == 1 ? j : j + 1;
    const double power = (1 - ft) * (1 - fp) * lin(i, j) +
                         ft * (1 - fp) * lin(i1, j) +
                         (1 - ft) * fp * lin(i, j1) + ft * fp * lin(i1, j1);
    best = std::max(best, to_db(power));
  }
  return best;
}

void write_pattern_csv(const Pattern2D& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_pattern_csv: cannot open " + path);
  out << "theta_deg,phi_deg,gain_db\n";
  char buf[128];
  const double rad2deg = 180.0 / M_PI;
  for (Eigen::Index i = 0; i < p.theta_grid.size(); ++i)
    for (Eigen::Index j = 0; j < p.phi_grid.size(); ++j) {
      const double db =
          std::isfinite(p.gain_db(i, j)) ? p.gain_db(i, j) : kNullSentinelDb;
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n",
                    p.theta_grid[i] * rad2deg, p.phi_grid[j] * rad2deg, db);
      out << buf;
    }
}

}  // namespace fabris
