#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "leapfrog/core.hpp"

using namespace leapfrog;

namespace {
ModelParams same(double beta, double d, double alpha = 0.1) {
  return {Regime::SameSign, alpha, beta, d};
}
ModelParams opp(double gamma, double d, double alpha = 0.1) {
  return {Regime::OppositeSign, alpha, gamma, d};
}
}  // namespace

TEST_CASE("physical_to_reduced: symmetric same-sign configuration") {
  // beta=1, d=sqrt(2), R1=R2=1, z1=z2 -> theta=pi/4, W=0
  ReducedState red = physical_to_reduced({1.0, 0.3, 1.0, 0.3}, same(1.0, std::sqrt(2.0)));
  CHECK(red.theta == doctest::Approx(std::numbers::pi / 4).epsilon(1e-14));
  CHECK(red.w == 0.0);
}

TEST_CASE("physical_to_reduced: opposite-sign direct map") {
  // gamma=4, d=1, R1=cosh(0.5)/2, R2=sinh(0.5) -> theta=0.5
  PhysicalState phys{std::cosh(0.5) / 2, 1.0, std::sinh(0.5), 0.25};
  ReducedState red = physical_to_reduced(phys, opp(4.0, 1.0));
  CHECK(red.theta == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(red.w == doctest::Approx(0.75));
}

TEST_CASE("physical_to_reduced rejects invariant mismatch") {
  CHECK_THROWS_AS((void)physical_to_reduced({1.0, 0.0, 1.0, 1.0}, same(1.0, 1.5)), Error);
  try {
    (void)physical_to_reduced({1.0, 0.0, 1.0, 1.0}, same(1.0, 1.5));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvariantMismatch);
  }
}

TEST_CASE("reduced_to_physical: invariant identities and positivity") {
  // beta=4, d=1, theta=arctan(1/2): r1=cos/2, r2=sin, 4 r1^2 + r2^2 = 1
  double theta = std::atan(0.5);
  RadiiW rw = reduced_to_physical({theta, 0.0}, same(4.0, 1.0));
  CHECK(rw.r1 == doctest::Approx(std::cos(theta) / 2).epsilon(1e-15));
  CHECK(rw.r2 == doctest::Approx(std::sin(theta)).epsilon(1e-15));
  CHECK(4 * rw.r1 * rw.r1 + rw.r2 * rw.r2 == doctest::Approx(1.0).epsilon(1e-14));

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> th(1e-3, std::numbers::pi / 2 - 1e-3);
  for (int i = 0; i < 200; ++i) {
    RadiiW r = reduced_to_physical({th(rng), 0.0}, same(2.0, 1.3));
    CHECK(r.r1 > 0.0);
    CHECK(r.r2 > 0.0);
  }

  // gamma=2, d=1, theta=theta_gamma -> r1 = r2
  double thg = std::atanh(1.0 / std::sqrt(2.0));
  RadiiW req = reduced_to_physical({thg, 0.0}, opp(2.0, 1.0));
  CHECK(req.r1 == doctest::Approx(req.r2).epsilon(1e-14));

  CHECK_THROWS_AS((void)reduced_to_physical({-0.1, 0.0}, same(1.0, 1.0)), Error);
  CHECK_THROWS_AS((void)reduced_to_physical({1.6, 0.0}, same(1.0, 1.0)), Error);
}

TEST_CASE("roundtrip reduced -> physical -> reduced is the identity") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    ModelParams p = same(1.0 + 3.0 * u(rng), 0.5 + 2.0 * u(rng));
    ReducedState s0{1e-3 + (std::numbers::pi / 2 - 2e-3) * u(rng), 4.0 * u(rng) - 2.0};
    RadiiW rw = reduced_to_physical(s0, p);
    ReducedState s1 = physical_to_reduced({rw.r1, rw.w, rw.r2, 0.0}, p);
    CHECK(std::abs(s1.theta - s0.theta) <= 1e-12 * std::max(1.0, std::abs(s0.theta)));
    CHECK(std::abs(s1.w - s0.w) <= 1e-12 * std::max(1.0, std::abs(s0.w)));
    // conserved relation holds to roundoff by construction
    CHECK(std::abs(p.ratio * rw.r1 * rw.r1 + rw.r2 * rw.r2 - p.d * p.d) <=
          1e-14 * p.d * p.d);
  }
  for (int i = 0; i < 1000; ++i) {
    ModelParams p = opp(1.0 + 9.0 * u(rng), 0.5 + 2.0 * u(rng));
    ReducedState s0{1e-3 + 3.0 * u(rng), 4.0 * u(rng) - 2.0};
    RadiiW rw = reduced_to_physical(s0, p);
    ReducedState s1 = physical_to_reduced({rw.r1, rw.w, rw.r2, 0.0}, p);
    CHECK(std::abs(s1.theta - s0.theta) <= 1e-12 * std::max(1.0, std::abs(s0.theta)));
    CHECK(std::abs(s1.w - s0.w) <= 1e-12 * std::max(1.0, std::abs(s0.w)));
    CHECK(std::abs(p.ratio * rw.r1 * rw.r1 - rw.r2 * rw.r2 - p.d) <= 1e-13 * p.d);
  }
}

TEST_CASE("canonicalize: regime detection and renaming") {
  PhysicalState phys{2.0, 0.0, 1.0, 1.0};

  CanonicalSetup a = canonicalize(2.0, 1.0, phys, 0.1);
  CHECK(a.params.regime == Regime::SameSign);
  CHECK(a.params.ratio == doctest::Approx(2.0));
  CHECK_FALSE(a.swapped);
  CHECK_FALSE(a.time_reversed);
  CHECK(a.time_scale == doctest::Approx(1.0));
  CHECK(a.params.d == doctest::Approx(std::sqrt(2.0 * 4.0 + 1.0)));

  CanonicalSetup b = canonicalize(1.0, 2.0, phys, 0.1);
  CHECK(b.params.regime == Regime::SameSign);
  CHECK(b.params.ratio == doctest::Approx(2.0));
  CHECK(b.swapped);
  CHECK(b.time_scale == doctest::Approx(1.0));
  // swapped state: R1'=1, R2'=2 -> d^2 = 2*1+4
  CHECK(b.params.d == doctest::Approx(std::sqrt(6.0)));

  // beta = 1/-2 in (-1,0): renamed to (-2,1), so beta=-2, gamma=2, no flip
  // (swapped radii must keep gamma*R1^2 - R2^2 > 0: here 2*4 - 1 = 7)
  PhysicalState physo{1.0, 1.0, 2.0, 0.0};
  CanonicalSetup c = canonicalize(1.0, -2.0, physo, 0.1);
  CHECK(c.params.regime == Regime::OppositeSign);
  CHECK(c.params.ratio == doctest::Approx(2.0));
  CHECK(c.swapped);
  CHECK_FALSE(c.time_reversed);
  CHECK(c.time_scale == doctest::Approx(1.0));

  // Gamma2 negative after renaming: time direction flips
  CanonicalSetup e = canonicalize(2.0, -1.0, phys, 0.1);
  CHECK(e.params.regime == Regime::OppositeSign);
  CHECK(e.params.ratio == doctest::Approx(2.0));
  CHECK_FALSE(e.swapped);
  CHECK(e.time_reversed);
  CHECK(e.time_scale == doctest::Approx(1.0));

  CanonicalSetup f = canonicalize(-2.0, -1.0, phys, 0.1);
  CHECK(f.params.regime == Regime::SameSign);
  CHECK(f.params.ratio == doctest::Approx(2.0));
  CHECK(f.time_reversed);
}

TEST_CASE("canonicalize is idempotent on canonical inputs") {
  PhysicalState phys{1.5, 0.2, 0.8, -0.1};
  CanonicalSetup a = canonicalize(3.0, 1.0, phys, 0.05);
  CHECK_FALSE(a.swapped);
  CHECK_FALSE(a.time_reversed);
  CHECK(a.time_scale == doctest::Approx(1.0));
}

TEST_CASE("canonicalize roundtrip recovers (r1, r2, W) exactly") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.2, 2.5);
  std::uniform_real_distribution<double> g(-3.0, 3.0);
  int checked = 0;
  while (checked < 300) {
    double g1 = g(rng), g2 = g(rng);
    if (std::abs(g1) < 0.05 || std::abs(g2) < 0.05) continue;
    PhysicalState phys{u(rng), g(rng), u(rng), g(rng)};
    if ((phys.r1 - phys.r2) * (phys.r1 - phys.r2) + (phys.z1 - phys.z2) * (phys.z1 - phys.z2) ==
        0.0)
      continue;
    CanonicalSetup s;
    try {
      s = canonicalize(g1, g2, phys, 0.1);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::InfeasibleInvariant);
      continue;
    }
    ++checked;
    RadiiW rw = reduced_to_physical(s.reduced0, s.params);
    double w = s.time_reversed ? -rw.w : rw.w;
    double r1 = s.swapped ? rw.r2 : rw.r1;
    double r2 = s.swapped ? rw.r1 : rw.r2;
    if (s.swapped) w = -w;
    CHECK(std::abs(r1 - phys.r1) <= 1e-12 * phys.r1);
    CHECK(std::abs(r2 - phys.r2) <= 1e-12 * phys.r2);
    CHECK(std::abs(w - (phys.z1 - phys.z2)) <= 1e-12 * std::max(1.0, std::abs(w)));
    // ratio >= 1 always, and time_scale restores the weaker strength
    CHECK(s.params.ratio >= 1.0);
    CHECK(s.time_scale == doctest::Approx(std::min(std::abs(g1), std::abs(g2))));
  }
}

TEST_CASE("canonicalize error paths") {
  PhysicalState overlap{1.0, 0.5, 1.0, 0.5};
  CHECK_THROWS_AS((void)canonicalize(1.0, 1.0, overlap, 0.1), Error);

  // gamma*R1^2 - R2^2 = 2*1 - 4 < 0: infeasible, leapfrogging impossible
  PhysicalState thin{1.0, 0.0, 2.0, 0.0};
  try {
    (void)canonicalize(-2.0, 1.0, thin, 0.1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InfeasibleInvariant);
  }

  CHECK_THROWS_AS((void)canonicalize(0.0, 1.0, thin, 0.1), Error);
  CHECK_THROWS_AS((void)canonicalize(1.0, 1.0, thin, -0.1), Error);
}

TEST_CASE("check_params guards") {
  CHECK_THROWS_AS(check_params({Regime::SameSign, -1.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(check_params({Regime::SameSign, 0.1, 0.5, 1.0}), Error);
  CHECK_THROWS_AS(check_params({Regime::SameSign, 0.1, 1.0, 0.0}), Error);
  CHECK_NOTHROW(check_params({Regime::SameSign, 0.1, 1.0, 1.0}));
}

TEST_CASE("in_phase_space excludes the singular point") {
  ModelParams p = same(1.0, 1.0);
  double thb = std::numbers::pi / 4;
  CHECK(in_phase_space({0.3, 0.0}, p));
  CHECK_FALSE(in_phase_space({thb, 0.0}, p));
  CHECK(in_phase_space({thb, 0.1}, p));
  CHECK_FALSE(in_phase_space({-0.1, 0.0}, p));
  CHECK_FALSE(in_phase_space({1.6, 0.0}, p));
  CHECK(in_phase_space({5.0, 0.0}, opp(4.0, 1.0)));
}
