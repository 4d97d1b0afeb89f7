#ifndef FABRIS_HARNESS_HPP
#define FABRIS_HARNESS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fabris/channel.hpp"
#include "fabris/optimizer.hpp"

namespace fabris {

enum class Method { kFabris, kNaive, kBruteForce };

std::string method_name(Method m);

enum class PlacementRegion { kCircle, kDisk };

/// Monte Carlo experiment: a fixed base scenario plus randomly placed
/// non-intended UEs on a circle of radius r around the target UE.
struct ExperimentSpec {
  Position3 p_ris;
  Position3 p_ue;
  double beta0 = 1e-3;
  double tx_power_w = 1.0;
  double noise_power_w = 1e-11;
  ArrayGeometry ris_geometry;
  OperatingBand band;

  double radius_m = 10.0;
  int num_nonintended = 20;
  int num_trials = 1000;
  std::uint64_t seed = 0;
  std::vector<Method> methods = {Method::kFabris, Method::kNaive};
  OptimizerOptions optimizer;
  PlacementRegion region = PlacementRegion::kCircle;

  void validate() const;
};

struct MethodSummary {
  double median_db = 0.0;
  double mean_db = 0.0;
  double p5_db = 0.0;
  double p95_db = 0.0;
};

struct SlnrReport {
  std::map<Method, std::vector<double>> slnr_linear;  // per trial
  std::map<Method, std::vector<double>> slnr_db;
  std::map<Method, std::vector<std::pair<double, double>>> cdf_db;
  std::map<Method, MethodSummary> summary;
  std::uint64_t seed = 0;
  std::uint64_t spec_hash = 0;
};

/// Points at exact distance r from p_ue in the vertical plane through it
/// (p_ue + r*(cos psi, 0, sin psi)); psi i.i.d. uniform on [0, 2pi).
/// Disk mode scales the radius by sqrt(U) for a uniform fill.
std::vector<Position3> place_nonintended(const Position3& p_ue, double r,
                                         int t_count, std::uint64_t rng_seed,
                                         PlacementRegion region =
                                             PlacementRegion::kCircle);

/// Per-trial stream: seed and trial index mixed through a splittable
/// counter-based generator, so execution order cannot change results.
std::uint64_t trial_seed(std::uint64_t seed, int trial_index);

/// One placement realization evaluated under every requested method.
std::map<Method, double> run_trial(const ExperimentSpec& spec, int trial_index);

SlnrReport monte_carlo(const ExperimentSpec& spec);

/// Sorted (value, k/n) pairs with duplicate values collapsed.
std::vector<std::pair<double, double>> empirical_cdf(
    const std::vector<double>& samples);

void write_trials_csv(const SlnrReport& report, const std::string& path);
void write_cdf_csv(const SlnrReport& report, const std::string& path);
std::string summary_text(const SlnrReport& report);

}  // namespace fabris

#endif
