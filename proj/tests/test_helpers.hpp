#ifndef FABRIS_TEST_HELPERS_HPP
#define FABRIS_TEST_HELPERS_HPP

#include <complex>
#include <random>

#include "fabris/channel.hpp"

namespace fabris::testing {

// Unstructured random channels: the SLNR/SDR machinery must not depend on
// steering structure, so tests draw arbitrary complex entries.
inline ChannelSet random_channel_set(int n, int t_count, std::uint64_t seed,
                                     double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, scale);
  auto cplx = [&] { return std::complex<double>(normal(rng), normal(rng)); };
  auto vec = [&](int len) {
    Eigen::VectorXcd v(len);
    for (int i = 0; i < len; ++i) v[i] = cplx();
    return v;
  };
  ChannelSet ch;
  ch.h = vec(n);
  ch.g = vec(n);
  do {
    ch.h_d = cplx();
  } while (std::abs(ch.h_d) < 1e-3 * scale);
  for (int t = 0; t < t_count; ++t) {
    ch.h_t.push_back(vec(n));
    ch.h_dt.push_back(cplx());
  }
  // Keep every cascaded entry away from zero so Eq.-(7)-style phases exist.
  for (int i = 0; i < n; ++i) {
    if (std::abs(ch.h[i]) < 1e-3 * scale) ch.h[i] += scale;
    if (std::abs(ch.g[i]) < 1e-3 * scale) ch.g[i] += scale;
  }
  return ch;
}

// Reference evaluation scenario: RIS at [10,20,0], UE at [10,0,-10],
// P = 24 dBm, noise = -80 dBm, d = 0.56*lambda_1, operated at f2.
inline ScenarioLayout reference_scenario(int nx, int ny) {
  const double lambda1 = kSpeedOfLight / 27.96e9;
  return ScenarioLayout{Position3(10.0, 20.0, 0.0),
                        Position3(10.0, 0.0, -10.0),
                        {},
                        db_to_linear(-30.0),
                        dbm_to_watts(24.0),
                        dbm_to_watts(-80.0),
                        ArrayGeometry(nx, ny, 0.56 * lambda1),
                        OperatingBand::from_frequency(21.28e9)};
}

}  // namespace fabris::testing

#endif
