#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fabris/beampattern.hpp"
#include "fabris/config.hpp"
#include "fabris/errors.hpp"
#include "fabris/harness.hpp"
#include "fabris/optimizer.hpp"
#include "fabris/slnr.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitDegenerateGeometry = 3;
constexpr int kExitDegeneratePattern = 4;
constexpr int kExitSolverFailure = 5;

constexpr double kDegToRad = M_PI / 180.0;

fabris::Config load_or_exit(const std::string& path) {
  try {
    return fabris::load_config(path);
  } catch (const fabris::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    std::exit(kExitConfigError);
  }
}

// --frequency accepts f1, f2, or a custom value in GHz.
void apply_frequency_override(fabris::ExperimentSpec& spec,
                              const std::string& frequency) {
  if (frequency.empty()) return;
  double hz = 0.0;
  if (frequency == "f1") {
    hz = fabris::kDesignFrequencyF1Hz;
  } else if (frequency == "f2") {
    hz = fabris::kDesignFrequencyF2Hz;
  } else {
    try {
      hz = std::stod(frequency) * 1e9;
    } catch (const std::exception&) {
      std::cerr << "config error: bad --frequency value \"" << frequency
                << "\"\n";
      std::exit(kExitConfigError);
    }
  }
  spec.band = fabris::OperatingBand::from_frequency(hz);
}

Eigen::VectorXd degree_grid(double lo_deg, double hi_deg, double step_deg) {
  const int count = static_cast<int>(std::floor((hi_deg - lo_deg) / step_deg)) + 1;
  Eigen::VectorXd grid(count);
  for (int i = 0; i < count; ++i) grid[i] = (lo_deg + i * step_deg) * kDegToRad;
  return grid;
}

std::vector<int> read_activation_file(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "config error: cannot open activation file \"" << path << "\"\n";
    std::exit(kExitConfigError);
  }
  std::vector<int> values;
  int v;
  while (in >> v) values.push_back(v);
  if (static_cast<int>(values.size()) != n) {
    std::cerr << "config error: activation file has " << values.size()
              << " entries, expected " << n << "\n";
    std::exit(kExitConfigError);
  }
  return values;
}

std::vector<double> read_phases_file(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "config error: cannot open phases file \"" << path << "\"\n";
    std::exit(kExitConfigError);
  }
  std::vector<double> values;
  double v;
  while (in >> v) values.push_back(v);
  if (static_cast<int>(values.size()) != n) {
    std::cerr << "config error: phases file has " << values.size()
              << " entries, expected " << n << "\n";
    std::exit(kExitConfigError);
  }
  return values;
}

int cmd_steer(const std::string& config_path, double theta_deg, double phi_deg,
              const std::string& out_path) {
  const fabris::Config cfg = load_or_exit(config_path);
  const Eigen::VectorXcd a = fabris::steering_vector(
      cfg.spec.ris_geometry, {theta_deg * kDegToRad, phi_deg * kDegToRad},
      cfg.spec.band.wavelength_m);
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    out = &file;
  }
  char buf[96];
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    // +0.0 canonicalizes the negative zero produced by sin(-0.0)
    std::snprintf(buf, sizeof(buf), "%lld,%.17g,%.17g\n",
                  static_cast<long long>(i), a[i].real() + 0.0,
                  a[i].imag() + 0.0);
    *out << buf;
  }
  return 0;
}

int cmd_optimize(const std::string& config_path, std::uint64_t seed,
                 const std::string& out_path) {
  fabris::Config cfg = load_or_exit(config_path);
  cfg.spec.seed = seed;
  cfg.spec.optimizer.seed = seed;
  try {
    fabris::ScenarioLayout scenario{
        cfg.spec.p_ris,
        cfg.spec.p_ue,
        fabris::place_nonintended(cfg.spec.p_ue, cfg.spec.radius_m,
                                  cfg.spec.num_nonintended, seed,
                                  cfg.spec.region),
        cfg.spec.beta0,
        cfg.spec.tx_power_w,
        cfg.spec.noise_power_w,
        cfg.spec.ris_geometry,
        cfg.spec.band};
    const fabris::ChannelSet ch = fabris::build_channel_set(scenario);
    const fabris::OptimizeResult result = fabris::optimize(
        ch, cfg.spec.tx_power_w, cfg.spec.noise_power_w, cfg.spec.optimizer);
    const fabris::RisConfiguration naive_cfg(
        result.config.phases, fabris::naive(ch.num_elements()));
    const double naive_slnr = fabris::slnr(ch, naive_cfg, cfg.spec.tx_power_w,
                                           cfg.spec.noise_power_w);

    if (!out_path.empty()) {
      std::ofstream out(out_path);
      out << "element,phase_rad,active\n";
      char buf[96];
      for (int i = 0; i < result.config.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%d\n", i,
                      result.config.phases.phases[i],
                      result.config.activation.alpha[i]);
        out << buf;
      }
    }
    std::printf("fabris_slnr_db=%.6f\n", fabris::linear_to_db(result.achieved_slnr));
    std::printf("naive_slnr_db=%.6f\n", fabris::linear_to_db(naive_slnr));
    std::printf("active_elements=%d/%d\n",
                result.config.activation.active_count(), result.config.size());
    return 0;
  } catch (const fabris::DegenerateGeometryError& e) {
    std::cerr << "degenerate geometry: " << e.what() << "\n";
    return kExitDegenerateGeometry;
  } catch (const fabris::DegenerateChannelError& e) {
    std::cerr << "degenerate channel: " << e.what() << "\n";
    return kExitDegenerateGeometry;
  }
}

int cmd_montecarlo(const std::string& config_path, int trials,
                   std::uint64_t seed, const std::string& out_dir,
                   const std::vector<std::string>& methods,
                   std::optional<double> radius_override,
                   const std::string& frequency) {
  fabris::Config cfg = load_or_exit(config_path);
  cfg.spec.num_trials = trials;
  cfg.spec.seed = seed;
  if (radius_override) cfg.spec.radius_m = *radius_override;
  apply_frequency_override(cfg.spec, frequency);
  if (!methods.empty()) {
    cfg.spec.methods.clear();
    for (const std::string& m : methods) {
      if (m == "fabris") cfg.spec.methods.push_back(fabris::Method::kFabris);
      else if (m == "naive") cfg.spec.methods.push_back(fabris::Method::kNaive);
      else if (m == "brute") cfg.spec.methods.push_back(fabris::Method::kBruteForce);
      else {
        std::cerr << "config error: unknown method \"" << m << "\"\n";
        return kExitConfigError;
      }
    }
  }
  try {
    const fabris::SlnrReport report = fabris::monte_carlo(cfg.spec);
    std::filesystem::create_directories(out_dir);
    fabris::write_trials_csv(report, out_dir + "/trials.csv");
    fabris::write_cdf_csv(report, out_dir + "/cdf.csv");
    const std::string summary = fabris::summary_text(report);
    std::ofstream(out_dir + "/summary.txt") << summary;
    std::cout << summary;
    return 0;
  } catch (const fabris::DegenerateGeometryError& e) {
    std::cerr << "degenerate geometry: " << e.what() << "\n";
    return kExitDegenerateGeometry;
  } catch (const fabris::DegenerateChannelError& e) {
    std::cerr << "degenerate channel: " << e.what() << "\n";
    return kExitDegenerateGeometry;
  }
}

int cmd_beampattern(const std::string& config_path,
                    const std::string& phases_file,
                    const std::string& activation_file, double grid_step_deg,
                    const std::string& out_path) {
  const fabris::Config cfg = load_or_exit(config_path);
  const int n = cfg.spec.ris_geometry.size();

  Eigen::VectorXd phases = Eigen::VectorXd::Zero(n);
  if (!phases_file.empty()) {
    const std::vector<double> raw = read_phases_file(phases_file, n);
    for (int i = 0; i < n; ++i) phases[i] = raw[static_cast<size_t>(i)];
  }
  Eigen::VectorXi alpha = Eigen::VectorXi::Ones(n);
  if (!activation_file.empty()) {
    const std::vector<int> raw = read_activation_file(activation_file, n);
    for (int i = 0; i < n; ++i) alpha[i] = raw[static_cast<size_t>(i)];
  }

  try {
    fabris::RisConfiguration ris_cfg(fabris::PhaseProfile::wrapped(phases),
                                     fabris::ActivationProfile(alpha));
    const fabris::Pattern2D pattern = fabris::synthesize(
        cfg.spec.ris_geometry, cfg.spec.band, ris_cfg,
        degree_grid(-90.0, 90.0, grid_step_deg),
        degree_grid(-90.0, 90.0, grid_step_deg));
    if (!out_path.empty()) fabris::write_pattern_csv(pattern, out_path);
    const fabris::LobeMetrics m = fabris::lobe_metrics(pattern);
    std::printf("main_lobe_db=%.1f\n", m.main_lobe_db);
    std::printf("width_3db_deg=%.2f\n", m.width_3db_deg);
    std::printf("sll_db=%.2f\n", m.sll_db);
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const fabris::DegeneratePatternError& e) {
    std::cerr << "degenerate pattern: " << e.what() << "\n";
    return kExitDegeneratePattern;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FABRIS: multi-frequency RIS phase/activation optimization"};
  app.require_subcommand(1);

  std::string config_path, out_path, out_dir, frequency;
  std::string phases_file, activation_file;
  std::vector<std::string> methods;
  double theta_deg = 0.0, phi_deg = 0.0, grid_step_deg = 0.25;
  std::optional<double> radius_override;
  int trials = 1000;
  std::uint64_t seed = 0;

  CLI::App* steer = app.add_subcommand("steer", "print a steering vector");
  steer->add_option("config", config_path)->required();
  steer->add_option("--theta-deg", theta_deg);
  steer->add_option("--phi-deg", phi_deg);
  steer->add_option("--out", out_path);

  CLI::App* optimize = app.add_subcommand("optimize", "run the FABRIS pipeline once");
  optimize->add_option("config", config_path)->required();
  optimize->add_option("--seed", seed);
  optimize->add_option("--out", out_path);

  CLI::App* montecarlo =
      app.add_subcommand("montecarlo", "Monte Carlo SLNR comparison");
  montecarlo->add_option("config", config_path)->required();
  montecarlo->add_option("--trials", trials);
  montecarlo->add_option("--seed", seed);
  montecarlo->add_option("--out-dir", out_dir)->required();
  montecarlo->add_option("--method", methods);
  double radius_value = -1.0;
  montecarlo->add_option("--radius-m", radius_value);
  montecarlo->add_option("--frequency", frequency);

  CLI::App* beampattern =
      app.add_subcommand("beampattern", "array-factor pattern and lobe metrics");
  beampattern->add_option("config", config_path)->required();
  beampattern->add_option("--phases-file", phases_file);
  beampattern->add_option("--activation-file", activation_file);
  beampattern->add_option("--grid-step-deg", grid_step_deg);
  beampattern->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (steer->parsed())
      return cmd_steer(config_path, theta_deg, phi_deg, out_path);
    if (optimize->parsed()) return cmd_optimize(config_path, seed, out_path);
    if (montecarlo->parsed()) {
      if (radius_value >= 0.0) radius_override = radius_value;
      return cmd_montecarlo(config_path, trials, seed, out_dir, methods,
                            radius_override, frequency);
    }
    if (beampattern->parsed())
      return cmd_beampattern(config_path, phases_file, activation_file,
                             grid_step_deg, out_path);
  } catch (const fabris::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  return 0;
}
