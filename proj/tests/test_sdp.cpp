#include <doctest.h>

#include <cmath>
#include <random>

#include "fabris/sdp.hpp"
#include "test_helpers.hpp"

using namespace fabris;
using fabris::testing::random_channel_set;

namespace {

Eigen::MatrixXd random_symmetric(int n, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = normal(rng);
  return m;
}

double max_binary_ratio(const LiftedProblem& lp) {
  const int n = lp.dim() - 1;
  double best = 0.0;
  Eigen::VectorXi alpha(n);
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    for (int i = 0; i < n; ++i) alpha[i] = (mask >> i) & 1u;
    best = std::max(best, lp.binary_ratio(alpha));
  }
  return best;
}

Eigen::VectorXi argmax_binary_ratio(const LiftedProblem& lp) {
  const int n = lp.dim() - 1;
  Eigen::VectorXi best = Eigen::VectorXi::Zero(n);
  double best_ratio = lp.binary_ratio(best);
  Eigen::VectorXi alpha(n);
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    for (int i = 0; i < n; ++i) alpha[i] = (mask >> i) & 1u;
    const double r = lp.binary_ratio(alpha);
    if (activation_candidate_better(r, alpha, best_ratio, best)) {
      best = alpha;
      best_ratio = r;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("project_psd") {
  SUBCASE("identity is a fixed point") {
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(4, 4);
    CHECK(project_psd(eye).isApprox(eye, 1e-12));
  }

  SUBCASE("clamps negative eigenvalues") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    const Eigen::MatrixXd r = project_psd(m);
    CHECK(r(0, 0) == doctest::Approx(1.0));
    CHECK(r(1, 1) == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("idempotent and Frobenius-nearest among sampled PSD matrices") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 10; ++rep) {
      const Eigen::MatrixXd m = random_symmetric(8, rng, 1.0);
      const Eigen::MatrixXd r = project_psd(m);

      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(r);
      CHECK(eig.eigenvalues().minCoeff() >= -1e-10 * r.norm());
      CHECK((project_psd(r) - r).norm() < 1e-10 * (1.0 + r.norm()));

      const double base = (m - r).norm();
      for (int s = 0; s < 100; ++s) {
        Eigen::MatrixXd root = random_symmetric(8, rng, 0.7);
        Eigen::MatrixXd competitor = root * root.transpose();
        CHECK((m - competitor).norm() >= base - 1e-9);
      }
    }
  }

  SUBCASE("rejects asymmetric input") {
    Eigen::MatrixXd m(2, 2);
    m << 1.0, 2.0, -2.0, 1.0;
    CHECK_THROWS_AS(project_psd(m), std::invalid_argument);
  }
}

TEST_CASE("feasibility step") {
  SUBCASE("t = 0 is always feasible") {
    for (int rep = 0; rep < 10; ++rep) {
      const ChannelSet ch = random_channel_set(5, 2, 500 + rep);
      const LiftedProblem lp = lift(ch, optimal_phase_profile(ch), 0.25, 1e-11);
      const SdpSolution sol =
          solve_feasibility_step(SdpInstance::at_level(lp, 0.0), 1e-6, 5000);
      CHECK(sol.status == SdpStatus::kFeasible);
      CHECK(std::abs(sol.v_star(lp.dim() - 1, lp.dim() - 1) - 1.0) <= 1e-7);
      for (int i = 0; i < lp.dim(); ++i) {
        CHECK(sol.v_star(i, i) >= -1e-7);
        CHECK(sol.v_star(i, i) <= 1.0 + 1e-7);
      }
    }
  }

  SUBCASE("levels above the exhaustive optimum are infeasible (N=4)") {
    for (int rep = 0; rep < 10; ++rep) {
      const ChannelSet ch = random_channel_set(4, 2, 600 + rep);
      const LiftedProblem lp = lift(ch, optimal_phase_profile(ch), 0.25, 1e-11);
      const double best = max_binary_ratio(lp);
      // Far above the best binary ratio and the rank-relaxed value.
      const double coherent = lp.big_h.cwiseAbs().sum();
      const double cap = coherent * coherent / lp.noise_over_power;
      const SdpSolution sol = solve_feasibility_step(
          SdpInstance::at_level(lp, cap * 1.01), 1e-6, 5000);
      CHECK(sol.status != SdpStatus::kFeasible);
      CHECK(cap * 1.01 > best);
    }
  }

  SUBCASE("nonnegative rank-1 objective with no leakage is tight at all-ones") {
    Eigen::VectorXd q(5);
    q << 0.9, 0.4, 1.3, 0.2, 1.0;
    LiftedProblem lp;
    lp.big_h = q.cast<std::complex<double>>();
    lp.big_g.resize(5, 0);
    lp.noise_over_power = 1.0;
    const double coherent = q.sum() * q.sum();
    const SdpSolution sol = solve_feasibility_step(
        SdpInstance::at_level(lp, coherent * 0.999), 1e-8, 20000);
    CHECK(sol.status == SdpStatus::kFeasible);
    CHECK(sol.objective_value >=
          coherent * 0.999 * lp.noise_over_power * (1.0 - 1e-6));
  }
}

TEST_CASE("sdr bisection") {
  SUBCASE("T = 0 recovers the coherent ratio") {
    for (int rep = 0; rep < 5; ++rep) {
      const ChannelSet ch = random_channel_set(6, 0, 700 + rep);
      const LiftedProblem lp = lift(ch, optimal_phase_profile(ch), 0.25, 1e-11);
      const double coherent = lp.big_h.cwiseAbs().sum();
      const double expected = coherent * coherent / lp.noise_over_power;
      const BisectionResult r =
          sdr_bisection(lp, 0.0, expected * 1.05, 1e-4, 1e-7, 20000);
      CHECK(r.t_star == doctest::Approx(expected).epsilon(1e-3));
    }
  }

  SUBCASE("relaxation upper-bounds the exhaustive optimum (N=8)") {
    for (int rep = 0; rep < 5; ++rep) {
      const ChannelSet ch = random_channel_set(8, 3, 800 + rep);
      const LiftedProblem lp = lift(ch, optimal_phase_profile(ch), 0.25, 1e-11);
      const double best = max_binary_ratio(lp);
      const double coherent = lp.big_h.cwiseAbs().sum();
      const double cap =
          coherent * coherent / lp.noise_over_power * (1.0 + 1e-6);
      const BisectionResult r = sdr_bisection(lp, 0.0, cap, 1e-3, 1e-6, 5000);
      CHECK(r.t_star >= best * (1.0 - 2e-3));
    }
  }

  SUBCASE("rejects a non-bracketing interval") {
    const ChannelSet ch = random_channel_set(4, 1, 900);
    const LiftedProblem lp = lift(ch, optimal_phase_profile(ch), 0.25, 1e-11);
    // t_hi = 0 is feasible, so (0, 0-ish) cannot bracket.
    CHECK_THROWS_AS(sdr_bisection(lp, 0.0, 0.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(sdr_bisection(lp, 1.0, 0.5, 1e-3), std::invalid_argument);
  }
}

TEST_CASE("gaussian randomization") {
  SUBCASE("rank-1 V from the optimal binary profile is a fixed point") {
    const ChannelSet ch = random_channel_set(6, 2, 1000);
    const LiftedProblem lp = lift(ch, optimal_phase_profile(ch), 0.25, 1e-11);
    const Eigen::VectorXi opt = argmax_binary_ratio(lp);
    Eigen::VectorXd ab(7);
    for (int i = 0; i < 6; ++i) ab[i] = opt[i];
    ab[6] = 1.0;
    const Eigen::MatrixXd v = ab * ab.transpose();
    const ActivationProfile alpha = gaussian_randomization(v, lp, 50, 1);
    for (int i = 0; i < 6; ++i) CHECK(alpha.alpha[i] == opt[i]);
  }

  SUBCASE("no leakage: all-ones wins") {
    const ChannelSet ch = random_channel_set(8, 0, 1001);
    const LiftedProblem lp = lift(ch, optimal_phase_profile(ch), 0.25, 1e-11);
    const Eigen::MatrixXd v = Eigen::MatrixXd::Ones(9, 9);
    const ActivationProfile alpha = gaussian_randomization(v, lp, 200, 2);
    CHECK(alpha.active_count() == 8);
  }

  SUBCASE("never worse than the all-ones baseline") {
    for (int rep = 0; rep < 10; ++rep) {
      const ChannelSet ch = random_channel_set(10, 4, 1100 + rep);
      const LiftedProblem lp = lift(ch, optimal_phase_profile(ch), 0.25, 1e-11);
      const BisectionResult r = sdr_bisection(
          lp, 0.0,
          std::pow(lp.big_h.cwiseAbs().sum(), 2) / lp.noise_over_power *
              (1.0 + 1e-6),
          1e-3, 1e-6, 5000);
      const ActivationProfile alpha =
          gaussian_randomization(r.v_star, lp, 1000, 3);
      CHECK(lp.binary_ratio(alpha.alpha) >=
            lp.binary_ratio(Eigen::VectorXi::Ones(10)));
    }
  }

  SUBCASE("deterministic given the seed") {
    const ChannelSet ch = random_channel_set(7, 3, 1200);
    const LiftedProblem lp = lift(ch, optimal_phase_profile(ch), 0.25, 1e-11);
    const Eigen::MatrixXd v =
        solve_feasibility_step(SdpInstance::at_level(lp, 0.0), 1e-6, 5000)
            .v_star;
    const ActivationProfile a = gaussian_randomization(v, lp, 500, 77);
    const ActivationProfile b = gaussian_randomization(v, lp, 500, 77);
    CHECK(a.alpha == b.alpha);
  }
}

TEST_CASE("candidate tie-breaking") {
  Eigen::VectorXi sparse(3), dense(3), lex_small(3), lex_big(3);
  sparse << 1, 0, 0;
  dense << 1, 1, 0;
  lex_small << 0, 1, 1;
  lex_big << 1, 0, 1;
  CHECK(activation_candidate_better(2.0, dense, 1.0, sparse));
  CHECK_FALSE(activation_candidate_better(1.0, sparse, 2.0, dense));
  CHECK(activation_candidate_better(1.0, sparse, 1.0, dense));
  CHECK(activation_candidate_better(1.0, lex_small, 1.0, lex_big));
  CHECK_FALSE(activation_candidate_better(1.0, lex_big, 1.0, lex_small));
}
