#include <doctest.h>

#include <cmath>

#include "fabris/channel.hpp"
#include "fabris/errors.hpp"
#include "fabris/slnr.hpp"
#include "test_helpers.hpp"

using namespace fabris;
using fabris::testing::reference_scenario;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("path gain: inverse square law") {
  const double beta0 = db_to_linear(-30.0);
  CHECK(path_gain({0, 0, 0}, {1, 0, 0}, beta0) == doctest::Approx(beta0));
  CHECK(path_gain({0, 0, 0}, {10, 20, 0}, beta0) ==
        doctest::Approx(beta0 / 500.0).epsilon(1e-12));
  CHECK(path_gain({0, 0, 0}, {2, 0, 0}, beta0) ==
        doctest::Approx(path_gain({0, 0, 0}, {1, 0, 0}, beta0) / 4.0));
  CHECK_THROWS_AS(path_gain({1, 2, 3}, {1, 2, 3}, beta0),
                  DegenerateGeometryError);
}

TEST_CASE("angles from positions") {
  SteeringAngles a = angles_from_positions({0, 0, 0}, {1, 0, 0});
  CHECK(a.theta_rad == doctest::Approx(0.0));
  CHECK(a.phi_rad == doctest::Approx(0.0));

  a = angles_from_positions({0, 0, 0}, {0, 0, 1});
  CHECK(a.phi_rad == doctest::Approx(kPi / 2.0));

  // UE as seen from the reference RIS position: delta = [0, -20, -10].
  a = angles_from_positions({10, 20, 0}, {10, 0, -10});
  CHECK(a.theta_rad == doctest::Approx(-kPi / 2.0));
  CHECK(a.phi_rad == doctest::Approx(std::asin(-10.0 / std::sqrt(500.0))));
  CHECK(a.phi_rad == doctest::Approx(-0.4636).epsilon(1e-3));

  CHECK_THROWS_AS(angles_from_positions({1, 1, 1}, {1, 1, 1}),
                  DegenerateGeometryError);
}

TEST_CASE("ris link channel: norm carries the path gain") {
  ScenarioLayout s = reference_scenario(10, 10);
  const Eigen::VectorXcd h = ris_link_channel(s, s.p_ue);
  REQUIRE(h.size() == 100);
  const double gamma = s.beta0 / 500.0;
  CHECK(h.squaredNorm() ==
        doctest::Approx(100.0 * gamma).epsilon(1e-9));
  for (Eigen::Index i = 0; i < h.size(); ++i)
    CHECK(std::abs(h[i]) == doctest::Approx(std::sqrt(gamma)).epsilon(1e-9));

  ScenarioLayout one = reference_scenario(1, 1);
  const Eigen::VectorXcd h1 = ris_link_channel(one, one.p_ue);
  CHECK(std::abs(h1[0]) == doctest::Approx(std::sqrt(gamma)).epsilon(1e-12));
}

TEST_CASE("direct channel: magnitude and phase") {
  const OperatingBand band = OperatingBand::from_frequency(21.28e9);
  const double beta0 = db_to_linear(-30.0);
  const double lambda = band.wavelength_m;

  std::complex<double> hd = direct_channel({lambda, 0, 0}, band, beta0);
  CHECK(std::abs(hd) == doctest::Approx(std::sqrt(beta0) / lambda).epsilon(1e-12));
  CHECK(std::arg(hd) == doctest::Approx(0.0).epsilon(1e-9));

  hd = direct_channel({0.5 * lambda, 0, 0}, band, beta0);
  CHECK(std::abs(std::arg(hd)) == doctest::Approx(kPi).epsilon(1e-9));

  hd = direct_channel({10, 0, -10}, band, beta0);
  CHECK(std::abs(hd) == doctest::Approx(std::sqrt(beta0 / 200.0)).epsilon(1e-12));

  CHECK_THROWS_AS(direct_channel({0, 0, 0}, band, beta0),
                  DegenerateGeometryError);
}

TEST_CASE("build_channel_set: shapes and determinism") {
  ScenarioLayout s = reference_scenario(4, 4);
  const ChannelSet empty = build_channel_set(s);
  CHECK(empty.h_t.empty());
  CHECK(empty.h_dt.empty());

  for (int t = 0; t < 20; ++t)
    s.nonintended.emplace_back(10.0 + std::cos(t), 1.0 + t, -9.0);
  const ChannelSet a = build_channel_set(s);
  const ChannelSet b = build_channel_set(s);
  CHECK(a.h_t.size() == 20);
  CHECK(a.h_dt.size() == 20);
  CHECK(a.h == b.h);
  CHECK(a.g == b.g);
  CHECK(a.h_d == b.h_d);
  for (int t = 0; t < 20; ++t) CHECK(a.h_t[t] == b.h_t[t]);
}

TEST_CASE("scaling beta0 scales magnitudes, preserves phases") {
  ScenarioLayout s = reference_scenario(3, 2);
  s.nonintended.emplace_back(12.0, 1.0, -9.0);
  const ChannelSet base = build_channel_set(s);
  s.beta0 *= 4.0;
  const ChannelSet scaled = build_channel_set(s);
  for (Eigen::Index i = 0; i < base.h.size(); ++i) {
    CHECK(std::abs(scaled.h[i]) == doctest::Approx(2.0 * std::abs(base.h[i])));
    CHECK(std::arg(scaled.h[i]) == doctest::Approx(std::arg(base.h[i])));
  }
  CHECK(std::abs(scaled.h_d) == doctest::Approx(2.0 * std::abs(base.h_d)));
  CHECK(std::arg(scaled.h_d) == doctest::Approx(std::arg(base.h_d)));
}

TEST_CASE("receive signal") {
  ScenarioLayout s = reference_scenario(2, 1);
  const ChannelSet ch = build_channel_set(s);
  const double symbol_mag = std::sqrt(s.tx_power_w);

  SUBCASE("RIS fully off reduces to the direct link") {
    RisConfiguration cfg(PhaseProfile::zeros(2), ActivationProfile::all_off(2));
    const std::complex<double> y =
        receive_signal(ch, cfg, {symbol_mag, 0.0}, {0.0, 0.0});
    CHECK(std::abs(y - ch.h_d * symbol_mag) < 1e-15);
  }

  SUBCASE("zero symbol leaves only noise") {
    RisConfiguration cfg(PhaseProfile::zeros(2), ActivationProfile::all_on(2));
    const std::complex<double> noise{1.5e-7, -2.5e-7};
    CHECK(receive_signal(ch, cfg, {0.0, 0.0}, noise) == noise);
  }

  SUBCASE("matches the scalar expansion") {
    const PhaseProfile phases = PhaseProfile::wrapped(
        (Eigen::VectorXd(2) << 0.3, 5.1).finished());
    RisConfiguration cfg(phases, ActivationProfile::all_on(2));
    const std::complex<double> s0{symbol_mag, 0.0};
    const std::complex<double> noise{1e-8, 3e-8};
    const std::complex<double> expected =
        (std::conj(ch.h[0]) * std::polar(1.0, 0.3) * ch.g[0] +
         std::conj(ch.h[1]) * std::polar(1.0, 5.1) * ch.g[1] + ch.h_d) *
            s0 +
        noise;
    CHECK(std::abs(receive_signal(ch, cfg, s0, noise) - expected) < 1e-18);
  }

  SUBCASE("dimension mismatch is rejected") {
    RisConfiguration cfg(PhaseProfile::zeros(3), ActivationProfile::all_on(3));
    CHECK_THROWS_AS(receive_signal(ch, cfg, {1.0, 0.0}, {0.0, 0.0}),
                    std::invalid_argument);
  }
}

TEST_CASE("scenario validation flags degenerate placements") {
  ScenarioLayout s = reference_scenario(2, 2);
  s.p_ue = s.p_ris;
  CHECK_THROWS_AS(build_channel_set(s), DegenerateGeometryError);

  ScenarioLayout s2 = reference_scenario(2, 2);
  s2.p_ris = Position3::Zero();
  CHECK_THROWS_AS(build_channel_set(s2), DegenerateGeometryError);
}
