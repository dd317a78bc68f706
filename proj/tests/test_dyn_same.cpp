#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "leapfrog/dyn_same.hpp"
#include "oracles.hpp"

using namespace leapfrog;

namespace {
ModelParams same(double beta, double d = 1.0, double alpha = 0.1) {
  return {Regime::SameSign, alpha, beta, d};
}
constexpr double kPi2 = std::numbers::pi / 2;
}  // namespace

TEST_CASE("field_same: closed form at the beta=1 symmetric point") {
  // beta=1, alpha=0.1, d=1: at (pi/4, 1) both sin-cos factors vanish
  Deriv2 f = field_same({std::numbers::pi / 4, 1.0}, same(1.0));
  CHECK(f.dtheta == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(std::abs(f.dw) < 1e-14);
}

TEST_CASE("field_same: reversibility (parity in W)") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> th(0.05, kPi2 - 0.05);
  std::uniform_real_distribution<double> w(0.05, 2.0);
  for (int i = 0; i < 300; ++i) {
    ModelParams p = same(1.0 + 3.0 * (i % 4), 0.7 + 0.2 * (i % 3));
    ReducedState s{th(rng), w(rng)};
    Deriv2 fp = field_same(s, p);
    Deriv2 fm = field_same({s.theta, -s.w}, p);
    CHECK(fm.dtheta == doctest::Approx(-fp.dtheta).epsilon(1e-14));
    CHECK(fm.dw == doctest::Approx(fp.dw).epsilon(1e-14));
  }
}

TEST_CASE("field_same matches Hamiltonian gradient by central differences") {
  // beta=2, alpha=0.1, d=1 at (0.5, 0.3), relative error < 1e-6
  ModelParams p = same(2.0);
  ReducedState s{0.5, 0.3};
  Deriv2 f = field_same(s, p);
  double dH_dW = oracle::cdiff([&](double w) { return hamiltonian_same({s.theta, w}, p); }, s.w);
  double dH_dth =
      oracle::cdiff([&](double th) { return hamiltonian_same({th, s.w}, p); }, s.theta);
  CHECK(f.dtheta == doctest::Approx(dH_dW).epsilon(1e-6));
  CHECK(f.dw == doctest::Approx(-dH_dth).epsilon(1e-6));
}

TEST_CASE("field_same and hamiltonian_same guard the singular point and domain") {
  ModelParams p = same(1.0);
  double thb = std::numbers::pi / 4;
  CHECK_THROWS_AS((void)field_same({thb, 0.0}, p), Error);
  CHECK_THROWS_AS((void)field_same({thb + 1e-13, 0.0}, p), Error);
  CHECK_NOTHROW((void)field_same({thb + 1e-6, 0.0}, p));
  CHECK_THROWS_AS((void)hamiltonian_same({-0.2, 0.0}, p), Error);
  CHECK_THROWS_AS((void)hamiltonian_same({kPi2 + 0.1, 0.0}, p), Error);
}

TEST_CASE("hamiltonian_same: parity, beta=1 exchange symmetry, frozen value") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> th(0.05, kPi2 - 0.05);
  std::uniform_real_distribution<double> w(0.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    ModelParams p = same(1.0 + (i % 5), 1.2);
    double theta = th(rng), W = w(rng);
    if (std::hypot(theta - std::atan(1 / std::sqrt(p.ratio)), W) < 1e-3) continue;
    CHECK(hamiltonian_same({theta, W}, p) ==
          doctest::Approx(hamiltonian_same({theta, -W}, p)).epsilon(1e-14));
  }
  ModelParams p1 = same(1.0);
  for (int i = 0; i < 200; ++i) {
    double theta = th(rng), W = 0.3 + w(rng);
    CHECK(hamiltonian_same({theta, W}, p1) ==
          doctest::Approx(hamiltonian_same({kPi2 - theta, W}, p1)).epsilon(1e-13));
  }
  // independently computed with 30-digit arithmetic
  CHECK(hamiltonian_same({std::numbers::pi / 4, 1.0}, p1) ==
        doctest::Approx(-1.8627471740390860505).epsilon(1e-12));
}

TEST_CASE("hamiltonian gradient identity on 1000 random interior points") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int tested = 0;
  while (tested < 1000) {
    double beta = 1.0 + 3.0 * u(rng);
    ModelParams p = same(beta, 0.6 + u(rng));
    double thb = std::atan(1.0 / std::sqrt(beta));
    ReducedState s{0.05 + (kPi2 - 0.1) * u(rng), 4.0 * u(rng) - 2.0};
    if (std::hypot(s.theta - thb, s.w) < 0.05) continue;
    Deriv2 f = field_same(s, p);
    double g1 = oracle::cdiff([&](double w) { return hamiltonian_same({s.theta, w}, p); }, s.w);
    double g2 = oracle::cdiff([&](double th) { return hamiltonian_same({th, s.w}, p); }, s.theta);
    double num = std::hypot(f.dtheta - g1, f.dw + g2);
    double den = std::hypot(f.dtheta, f.dw);
    if (den < 1e-3) continue;  // too close to an equilibrium for a relative check
    CHECK(num / den < 1e-6);
    ++tested;
  }
}

TEST_CASE("equilibria_same: beta=1 against bisection oracle and symmetry") {
  // oracle: h(y) = (y-1)^3 + 0.1*y*(y+1) on (0,1), theta* = atan(y*)
  double y_star =
      oracle::bisect([](double y) { return std::pow(y - 1, 3) + 0.1 * y * (y + 1); }, 0.0, 1.0);
  double theta_star = std::atan(y_star);

  EquilibriumReportSame rep = equilibria_same(same(1.0));
  CHECK(rep.theta_beta == doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
  CHECK(rep.theta_star == doctest::Approx(theta_star).epsilon(1e-10));
  // beta=1 exchange symmetry makes theta** the mirror of theta*
  CHECK(rep.theta_star2 == doctest::Approx(kPi2 - theta_star).epsilon(1e-10));
  CHECK(rep.h_star == doctest::Approx(hamiltonian_same({rep.theta_star, 0.0}, same(1.0)))
                          .epsilon(1e-14));

  // residuals and ordering
  for (double beta : {1.0, 2.0, 4.0}) {
    EquilibriumReportSame r = equilibria_same(same(beta));
    CHECK(0.0 < r.theta_star);
    CHECK(r.theta_star < r.theta_beta);
    CHECK(r.theta_beta < r.theta_star2);
    CHECK(r.theta_star2 < kPi2);
    CHECK(std::abs(field_same({r.theta_star, 0.0}, same(beta)).dw) < 1e-10);
    CHECK(std::abs(field_same({r.theta_star2, 0.0}, same(beta)).dw) < 1e-10);
    // f' > 0 at both zeros (finite differences)
    auto f = [&](double th) { return field_same({th, 0.0}, same(beta)).dw; };
    CHECK(oracle::cdiff(f, r.theta_star) > 0.0);
    CHECK(oracle::cdiff(f, r.theta_star2) > 0.0);
  }
}

TEST_CASE("equilibria_same: cubic bracket endpoints are always valid") {
  for (double beta : {1.0, 2.0, 7.5}) {
    for (double alpha : {0.01, 0.1, 0.3}) {
      auto h = [&](double y) {
        return beta * y * y * y - (2 * beta + 1) * y * y + (beta + 2) * y - 1 +
               alpha * (y * y + beta * y);
      };
      CHECK(h(0.0) == doctest::Approx(-1.0));
      CHECK(h(1.0) == doctest::Approx(alpha * (1 + beta)));
      CHECK(h(1.0) > 0.0);
    }
  }
}

TEST_CASE("equilibria_same: sign pattern of f sampled at 100 points (beta=4)") {
  ModelParams p = same(4.0);
  EquilibriumReportSame r = equilibria_same(p);
  auto f = [&](double th) { return field_same({th, 0.0}, p).dw; };
  auto scan = [&](double lo, double hi, double sign) {
    for (int i = 1; i <= 100; ++i) {
      double th = lo + (hi - lo) * i / 101.0;
      CHECK(sign * f(th) > 0.0);
    }
  };
  // f < 0 left of theta* and between theta_beta and theta**; f > 0 on the
  // complementary interior intervals (f -> -inf at theta_beta+, +inf at pi/2-)
  scan(1e-4, r.theta_star, -1.0);
  scan(r.theta_star, r.theta_beta - 1e-6, +1.0);
  scan(r.theta_beta + 1e-6, r.theta_star2, -1.0);
  scan(r.theta_star2, kPi2 - 1e-5, +1.0);
}

TEST_CASE("equilibria_same rejects alpha outside (0, 1/3)") {
  try {
    (void)equilibria_same(same(1.0, 1.0, 0.4));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::AlphaOutOfRange);
  }
  CHECK_THROWS_AS((void)equilibria_same(same(1.0, 1.0, 1.0 / 3.0)), Error);
}

TEST_CASE("hamiltonian diverges to -inf toward the domain ends and singular point") {
  ModelParams p = same(2.0);
  double thb = std::atan(1.0 / std::sqrt(2.0));
  double prev0 = 0.0, prev1 = 0.0, prev2 = 0.0;
  for (int k = 1; k <= 10; ++k) {
    double eps = std::pow(10.0, -k);
    double h0 = hamiltonian_same({eps, 0.5}, p);
    double h1 = hamiltonian_same({kPi2 - eps, 0.5}, p);
    double h2 = hamiltonian_same({thb, eps}, p);
    if (k > 1) {
      CHECK(h0 < prev0);
      CHECK(h1 < prev1);
      CHECK(h2 < prev2);
    }
    prev0 = h0;
    prev1 = h1;
    prev2 = h2;
  }
  CHECK(prev0 < -10.0);
  CHECK(prev2 < -1e6);
}

TEST_CASE("classify_same: verdicts and boundary handling") {
  ModelParams p = same(1.0);
  EquilibriumReportSame r = equilibria_same(p);

  Verdict lf = classify_same({0.7, 0.0}, p);
  CHECK(lf.kind == VerdictKind::Leapfrog);
  CHECK(lf.hamiltonian < lf.threshold);

  Verdict nl = classify_same({0.3, 0.0}, p);
  CHECK(nl.kind == VerdictKind::NonLeapfrog);
  CHECK(nl.hamiltonian < nl.threshold);  // below threshold but outside the window

  Verdict oos = classify_same({0.7, 0.0}, same(1.0, 1.0, 0.4));
  CHECK(oos.kind == VerdictKind::OutOfTheoremScope);

  Verdict sep = classify_same({r.theta_star, 0.0}, p);
  CHECK(sep.kind == VerdictKind::NonLeapfrog);
  CHECK(sep.detail == "separatrix/equilibrium-convergent");

  // large |W| pushes H above the threshold: single-passage family
  Verdict sp = classify_same({0.7, 3.0}, p);
  CHECK(sp.kind == VerdictKind::NonLeapfrog);
  CHECK(sp.hamiltonian > sp.threshold);
}
