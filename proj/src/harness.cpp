#include "fabris/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fabris/errors.hpp"
#include "fabris/slnr.hpp"

namespace fabris {

namespace {

// splitmix64; fixed algorithm so streams are stable across platforms.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double percentile(std::vector<double> sorted, double q) {
  const double pos = q * (static_cast<double>(sorted.size()) - 1.0);
  const size_t lo = static_cast<size_t>(pos);
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::uint64_t hash_spec(const ExperimentSpec& spec) {
  // FNV-1a over the fields that shape the experiment.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    std::memcpy(&bits, &v, sizeof(bits));
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  for (int i = 0; i < 3; ++i) mix(spec.p_ris[i]);
  for (int i = 0; i < 3; ++i) mix(spec.p_ue[i]);
  mix(spec.beta0);
  mix(spec.tx_power_w);
  mix(spec.noise_power_w);
  mix(spec.ris_geometry.spacing_m);
  mix(static_cast<double>(spec.ris_geometry.nx));
  mix(static_cast<double>(spec.ris_geometry.ny));
  mix(spec.band.frequency_hz);
  mix(spec.radius_m);
  mix(static_cast<double>(spec.num_nonintended));
  mix(static_cast<double>(spec.num_trials));
  mix(static_cast<double>(spec.seed));
  return h;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::kFabris: return "fabris";
    case Method::kNaive: return "naive";
    case Method::kBruteForce: return "brute_force";
  }
  return "unknown";
}

void ExperimentSpec::validate() const {
  if (num_trials < 1)
    throw std::invalid_argument("experiment: num_trials must be >= 1");
  if (radius_m < 0.0)
    throw std::invalid_argument("experiment: radius_m must be >= 0");
  if (num_nonintended < 0)
    throw std::invalid_argument("experiment: num_nonintended must be >= 0");
  if (methods.empty())
    throw std::invalid_argument("experiment: methods must be non-empty");
}

std::uint64_t trial_seed(std::uint64_t seed, int trial_index) {
  return splitmix64(seed ^ static_cast<std::uint64_t>(trial_index));
}

std::vector<Position3> place_nonintended(const Position3& p_ue, double r,
                                         int t_count, std::uint64_t rng_seed,
                                         PlacementRegion region) {
  if (r < 0.0) throw std::invalid_argument("place_nonintended: negative radius");
  if (t_count < 0)
    throw std::invalid_argument("place_nonintended: negative count");
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<Position3> points;
  points.reserve(static_cast<size_t>(t_count));
  for (int t = 0; t < t_count; ++t) {
    const double psi = kTwoPi * uniform(rng);
    const double rho =
        region == PlacementRegion::kDisk ? r * std::sqrt(uniform(rng)) : r;
    points.emplace_back(p_ue + rho * Position3(std::cos(psi), 0.0, std::sin(psi)));
  }
  return points;
}

std::map<Method, double> run_trial(const ExperimentSpec& spec,
                                   int trial_index) {
  spec.validate();
  ScenarioLayout scenario{spec.p_ris,
                          spec.p_ue,
                          place_nonintended(spec.p_ue, spec.radius_m,
                                            spec.num_nonintended,
                                            trial_seed(spec.seed, trial_index),
                                            spec.region),
                          spec.beta0,
                          spec.tx_power_w,
                          spec.noise_power_w,
                          spec.ris_geometry,
                          spec.band};
  std::map<Method, double> values;
  try {
    const ChannelSet ch = build_channel_set(scenario);
    const PhaseProfile phases = optimal_phase_profile(ch);
    for (Method m : spec.methods) {
      switch (m) {
        case Method::kFabris: {
          OptimizerOptions opts = spec.optimizer;
          opts.seed = trial_seed(spec.seed, trial_index);
          values[m] = optimize(ch, spec.tx_power_w, spec.noise_power_w, opts)
                          .achieved_slnr;
          break;
        }
        case Method::kNaive: {
          RisConfiguration cfg(phases, naive(ch.num_elements()));
          values[m] = slnr(ch, cfg, spec.tx_power_w, spec.noise_power_w);
          break;
        }
        case Method::kBruteForce:
          values[m] =
              brute_force(ch, phases, spec.tx_power_w, spec.noise_power_w).slnr;
          break;
      }
    }
  } catch (const std::exception& e) {
    throw std::runtime_error("trial " + std::to_string(trial_index) + ": " +
                             e.what());
  }
  return values;
}

SlnrReport monte_carlo(const ExperimentSpec& spec) {
  spec.validate();
  SlnrReport report;
  report.seed = spec.seed;
  report.spec_hash = hash_spec(spec);
  for (Method m : spec.methods) {
    report.slnr_linear[m].resize(static_cast<size_t>(spec.num_trials));
    report.slnr_db[m].resize(static_cast<size_t>(spec.num_trials));
  }
  for (int i = 0; i < spec.num_trials; ++i) {
    const auto values = run_trial(spec, i);
    for (const auto& [m, v] : values) {
      report.slnr_linear[m][static_cast<size_t>(i)] = v;
      report.slnr_db[m][static_cast<size_t>(i)] = linear_to_db(v);
    }
  }
  for (Method m : spec.methods) {
    report.cdf_db[m] = empirical_cdf(report.slnr_db[m]);
    std::vector<double> sorted = report.slnr_db[m];
    std::sort(sorted.begin(), sorted.end());
    MethodSummary s;
    s.median_db = percentile(sorted, 0.5);
    s.mean_db = std::accumulate(sorted.begin(), sorted.end(), 0.0) /
                static_cast<double>(sorted.size());
    s.p5_db = percentile(sorted, 0.05);
    s.p95_db = percentile(sorted, 0.95);
    report.summary[m] = s;
  }
  return report;
}

std::vector<std::pair<double, double>> empirical_cdf(
    const std::vector<double>& samples) {
  if (samples.empty())
    throw std::invalid_argument("empirical_cdf: empty sample vector");
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> cdf;
  const double n = static_cast<double>(sorted.size());
  for (size_t k = 0; k < sorted.size(); ++k) {
    const double prob = static_cast<double>(k + 1) / n;
    if (!cdf.empty() && cdf.back().first == sorted[k])
      cdf.back().second = prob;  // duplicate values collapse to the last step
    else
      cdf.emplace_back(sorted[k], prob);
  }
  return cdf;
}

void write_trials_csv(const SlnrReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_trials_csv: cannot open " + path);
  out << "trial,method,slnr_db\n";
  char buf[96];
  for (const auto& [m, values] : report.slnr_db)
    for (size_t i = 0; i < values.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%zu,%s,%.17g\n", i,
                    method_name(m).c_str(), values[i]);
      out << buf;
    }
}

void write_cdf_csv(const SlnrReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_cdf_csv: cannot open " + path);
  out << "method,slnr_db,prob\n";
  char buf[96];
  for (const auto& [m, cdf] : report.cdf_db)
    for (const auto& [value, prob] : cdf) {
      std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g\n",
                    method_name(m).c_str(), value, prob);
      out << buf;
    }
}

std::string summary_text(const SlnrReport& report) {
  std::ostringstream out;
  out << "seed=" << report.seed << " spec_hash=" << report.spec_hash << "\n";
  for (const auto& [m, s] : report.summary) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "%-11s median=%.3f dB  mean=%.3f dB  p5=%.3f dB  p95=%.3f dB\n",
                  method_name(m).c_str(), s.median_db, s.mean_db, s.p5_db,
                  s.p95_db);
    out << buf;
  }
  return out.str();
}

}  // namespace fabris
