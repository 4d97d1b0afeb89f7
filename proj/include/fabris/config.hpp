#ifndef FABRIS_CONFIG_HPP
#define FABRIS_CONFIG_HPP

#include <string>

#include "fabris/harness.hpp"

namespace fabris {

/// Parsed scenario configuration. Powers are dBm in the file and watts here;
/// spacing is either absolute millimeters or a multiple of lambda_1
/// (the wavelength at the f1 design frequency, 27.96 GHz).
struct Config {
  ExperimentSpec spec;  // geometry, band, scenario, optimizer settings
};

inline constexpr double kDesignFrequencyF1Hz = 27.96e9;
inline constexpr double kDesignFrequencyF2Hz = 21.28e9;

/// Loads a JSON config file. Throws ConfigError naming the offending field.
Config load_config(const std::string& path);

}  // namespace fabris

#endif
