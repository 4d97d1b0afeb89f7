#ifndef FABRIS_ERRORS_HPP
#define FABRIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fabris {

// Coincident positions, zero link distances, UE at the origin.
class DegenerateGeometryError : public std::runtime_error {
 public:
  explicit DegenerateGeometryError(const std::string& what)
      : std::runtime_error(what) {}
};

// Phase profile undefined (zero direct link or zero cascaded entry).
class DegenerateChannelError : public std::runtime_error {
 public:
  explicit DegenerateChannelError(const std::string& what)
      : std::runtime_error(what) {}
};

// Flat beampattern with no strict global maximum.
class DegeneratePatternError : public std::runtime_error {
 public:
  explicit DegeneratePatternError(const std::string& what)
      : std::runtime_error(what) {}
};

// Malformed or missing configuration fields.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fabris

#endif
