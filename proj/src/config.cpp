#include "fabris/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "fabris/errors.hpp"

namespace fabris {

namespace {

using nlohmann::json;

const json& require(const json& parent, const std::string& key,
                    const std::string& context) {
  auto it = parent.find(key);
  if (it == parent.end())
    throw ConfigError("missing required field \"" + context + key + "\"");
  return *it;
}

double require_number(const json& parent, const std::string& key,
                      const std::string& context) {
  const json& v = require(parent, key, context);
  if (!v.is_number())
    throw ConfigError("field \"" + context + key + "\" must be a number");
  return v.get<double>();
}

int require_int(const json& parent, const std::string& key,
                const std::string& context) {
  const json& v = require(parent, key, context);
  if (!v.is_number_integer())
    throw ConfigError("field \"" + context + key + "\" must be an integer");
  return v.get<int>();
}

Position3 require_vec3(const json& parent, const std::string& key,
                       const std::string& context) {
  const json& v = require(parent, key, context);
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() ||
      !v[1].is_number() || !v[2].is_number())
    throw ConfigError("field \"" + context + key +
                      "\" must be an array of 3 numbers");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

}  // namespace

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file \"" + path + "\"");
  json root;
  try {
    in >> root;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  const json& geometry = require(root, "geometry", "");
  const int nx = require_int(geometry, "nx", "geometry.");
  const int ny = require_int(geometry, "ny", "geometry.");

  const json& band_json = require(root, "band", "");
  const double freq_ghz = require_number(band_json, "frequency_ghz", "band.");
  if (!(freq_ghz > 0.0))
    throw ConfigError("field \"band.frequency_ghz\" must be positive");
  const OperatingBand band = OperatingBand::from_frequency(freq_ghz * 1e9);

  double spacing_m = 0.0;
  if (geometry.contains("spacing_mm")) {
    spacing_m = require_number(geometry, "spacing_mm", "geometry.") * 1e-3;
  } else if (geometry.contains("spacing_over_lambda1")) {
    const double mult =
        require_number(geometry, "spacing_over_lambda1", "geometry.");
    spacing_m = mult * kSpeedOfLight / kDesignFrequencyF1Hz;
  } else {
    throw ConfigError(
        "geometry needs \"spacing_mm\" or \"spacing_over_lambda1\"");
  }
  if (!(spacing_m > 0.0))
    throw ConfigError("field \"geometry.spacing\" must be positive");
  if (nx < 1 || ny < 1)
    throw ConfigError("fields \"geometry.nx\"/\"geometry.ny\" must be >= 1");

  const json& scenario = require(root, "scenario", "");
  Config cfg{ExperimentSpec{
      require_vec3(scenario, "p_ris", "scenario."),
      require_vec3(scenario, "p_ue", "scenario."),
      db_to_linear(require_number(scenario, "beta0_db", "scenario.")),
      dbm_to_watts(require_number(scenario, "tx_power_dbm", "scenario.")),
      dbm_to_watts(require_number(scenario, "noise_power_dbm", "scenario.")),
      ArrayGeometry(nx, ny, spacing_m),
      band,
  }};
  cfg.spec.num_nonintended = require_int(scenario, "t_count", "scenario.");
  cfg.spec.radius_m = require_number(scenario, "radius_m", "scenario.");
  if (cfg.spec.num_nonintended < 0)
    throw ConfigError("field \"scenario.t_count\" must be >= 0");
  if (cfg.spec.radius_m < 0.0)
    throw ConfigError("field \"scenario.radius_m\" must be >= 0");
  if (scenario.contains("placement") ) {
    const std::string region = require(scenario, "placement", "scenario.")
                                   .get<std::string>();
    if (region == "circle")
      cfg.spec.region = PlacementRegion::kCircle;
    else if (region == "disk")
      cfg.spec.region = PlacementRegion::kDisk;
    else
      throw ConfigError("field \"scenario.placement\" must be circle or disk");
  }

  if (root.contains("optimizer")) {
    const json& opt = root["optimizer"];
    OptimizerOptions& o = cfg.spec.optimizer;
    if (opt.contains("num_samples"))
      o.num_samples = require_int(opt, "num_samples", "optimizer.");
    if (opt.contains("bisection_tol"))
      o.bisection_tol = require_number(opt, "bisection_tol", "optimizer.");
    if (opt.contains("feasibility_tol"))
      o.feasibility_tol = require_number(opt, "feasibility_tol", "optimizer.");
    if (opt.contains("max_iter"))
      o.max_iter = require_int(opt, "max_iter", "optimizer.");
    if (o.num_samples < 1)
      throw ConfigError("field \"optimizer.num_samples\" must be >= 1");
    if (!(o.bisection_tol > 0.0))
      throw ConfigError("field \"optimizer.bisection_tol\" must be positive");
    if (!(o.feasibility_tol > 0.0))
      throw ConfigError("field \"optimizer.feasibility_tol\" must be positive");
    if (o.max_iter < 1)
      throw ConfigError("field \"optimizer.max_iter\" must be >= 1");
  }
  return cfg;
}

}  // namespace fabris
