#include <cmath>

#include "doctest.h"
#include "euler1d/riemann.hpp"
#include "oracles.hpp"

using namespace euler1d;
using State = PrimState<double>;
using Solution = RiemannSolution<double>;

namespace {

const GasModel<double> air{1.4};
const State sod_l{1.0, 0.0, 1.0};
const State sod_r{0.125, 0.0, 0.1};

Vec3<double> rh_residual(const State& a, const State& b, double sigma) {
  const Vec3<double> df =
      physical_flux(a, air).vector() - physical_flux(b, air).vector();
  const Vec3<double> dw =
      prim_to_cons(a, air).vector() - prim_to_cons(b, air).vector();
  return df - sigma * dw;
}

// Drift of the j-family Riemann invariants across a reported rarefaction,
// measured at 100 points of the fan against the outer state.
double rarefaction_drift(const Solution& sol, int family) {
  const auto& w = sol.waves[family == 1 ? 0 : 2];
  REQUIRE(w.kind == WaveKind::Rarefaction);
  const State outer = family == 1 ? sol.left : sol.right;
  const double sign = family == 1 ? 1.0 : -1.0;
  const double s_ref = entropy(outer, air);
  const double psi_ref =
      outer.u + sign * 2.0 * sound_speed(outer, air) / air.gm1();
  double drift = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double xi = w.head + (w.tail - w.head) * (i + 0.5) / 100.0;
    const State v = sample(sol, xi);
    const double psi = v.u + sign * 2.0 * sound_speed(v, air) / air.gm1();
    drift = std::max(drift, std::abs(entropy(v, air) - s_ref) / s_ref);
    drift = std::max(drift, std::abs(psi - psi_ref) /
                                std::max(1.0, std::abs(psi_ref)));
  }
  return drift;
}

}  // namespace

TEST_CASE("identical states give a zero-strength fan") {
  const auto sol = solve_exact<double>({1.0, 0.0, 1.0}, {1.0, 0.0, 1.0}, air);
  CHECK(sol.p_star == 1.0);
  CHECK(sol.u_star == 0.0);
  for (const auto& w : sol.waves) CHECK(w.head == w.tail);
  CHECK(sol.waves[1].kind == WaveKind::Contact);
}

TEST_CASE("Sod star state matches the bisection oracle") {
  const double p_oracle = oracles::star_pressure_bisection(sod_l, sod_r, 1.4);
  const auto sol = solve_exact(sod_l, sod_r, air);
  CHECK(sol.p_star == doctest::Approx(p_oracle).epsilon(1e-11));
  CHECK(sol.p_star == doctest::Approx(0.30313017805064682).epsilon(1e-11));
  CHECK(sol.u_star == doctest::Approx(0.92745262004894995).epsilon(1e-11));
  CHECK(sol.waves[0].kind == WaveKind::Rarefaction);
  CHECK(sol.waves[2].kind == WaveKind::Shock);
  CHECK(sol.star_left.rho ==
        doctest::Approx(0.42631942817849519).epsilon(1e-11));
  CHECK(sol.star_right.rho ==
        doctest::Approx(0.26557371170530706).epsilon(1e-11));
}

TEST_CASE("symmetric collision has exactly zero star velocity") {
  for (double a : {0.3, 1.0, 2.5}) {
    const auto sol = solve_exact<double>({1.0, a, 1.0}, {1.0, -a, 1.0}, air);
    CHECK(sol.u_star == 0.0);
    CHECK(sol.p_star > 1.0);
  }
}

TEST_CASE("sampling the fan") {
  const auto sol = solve_exact(sod_l, sod_r, air);

  SUBCASE("far field returns the end states") {
    const auto l = sample(sol, -100.0);
    CHECK(l.rho == sod_l.rho);
    CHECK(l.u == sod_l.u);
    const auto r = sample(sol, 100.0);
    CHECK(r.p == sod_r.p);
  }

  SUBCASE("the time axis lies in the left star region") {
    const auto v = sample(sol, 0.0);
    CHECK(v.rho == doctest::Approx(0.42631942817849519).epsilon(1e-11));
    CHECK(v.u == doctest::Approx(0.92745262004894995).epsilon(1e-11));
    CHECK(v.p == doctest::Approx(0.30313017805064682).epsilon(1e-11));
  }

  SUBCASE("breakpoints are exactly the wave speeds") {
    const double eps = 1e-9;
    const auto& fan = sol.waves[0];
    const auto before = sample(sol, fan.head - eps);
    CHECK(before.rho == sod_l.rho);
    const auto after = sample(sol, fan.tail + eps);
    CHECK(after.rho ==
          doctest::Approx(sol.star_left.rho).epsilon(1e-6));
    const double shock = sol.waves[2].head;
    CHECK(sample(sol, shock - eps).rho ==
          doctest::Approx(sol.star_right.rho).epsilon(1e-6));
    CHECK(sample(sol, shock + eps).rho == sod_r.rho);
    // a speed exactly on the shock takes the downstream (right) side
    CHECK(sample(sol, shock).rho == sod_r.rho);
  }
}

TEST_CASE("Rankine-Hugoniot residuals across reported discontinuities") {
  oracles::StateGen gen(11);
  int shocks = 0;
  for (int i = 0; i < 300; ++i) {
    const State wl = gen();
    const State wr = gen();
    if (!vacuum_check(wl, wr, air)) continue;
    const auto sol = solve_exact(wl, wr, air);
    if (sol.waves[0].kind == WaveKind::Shock) {
      ++shocks;
      const auto r = rh_residual(wl, sol.star_left, sol.waves[0].head);
      CHECK(r.norm() <= 1e-8 * std::max(1.0, sol.p_star));
    }
    if (sol.waves[2].kind == WaveKind::Shock) {
      ++shocks;
      const auto r = rh_residual(sol.star_right, wr, sol.waves[2].head);
      CHECK(r.norm() <= 1e-8 * std::max(1.0, sol.p_star));
    }
    const auto rc = rh_residual(sol.star_left, sol.star_right, sol.u_star);
    CHECK(rc.norm() <= 1e-8 * std::max(1.0, sol.p_star));
  }
  CHECK(shocks > 50);
}

TEST_CASE("Riemann invariants hold through rarefactions") {
  oracles::StateGen gen(12);
  int fans = 0;
  for (int i = 0; i < 300; ++i) {
    const State wl = gen();
    const State wr = gen();
    if (!vacuum_check(wl, wr, air)) continue;
    const auto sol = solve_exact(wl, wr, air);
    if (sol.waves[0].kind == WaveKind::Rarefaction &&
        sol.waves[0].tail - sol.waves[0].head > 1e-12) {
      ++fans;
      CHECK(rarefaction_drift(sol, 1) <= 1e-8);
    }
    if (sol.waves[2].kind == WaveKind::Rarefaction &&
        sol.waves[2].tail - sol.waves[2].head > 1e-12) {
      ++fans;
      CHECK(rarefaction_drift(sol, 3) <= 1e-8);
    }
  }
  CHECK(fans > 50);
}

TEST_CASE("Galilean shift moves u_star and leaves p_star") {
  oracles::StateGen gen(13);
  for (int i = 0; i < 100; ++i) {
    State wl = gen();
    State wr = gen();
    if (!vacuum_check(wl, wr, air)) continue;
    const auto sol = solve_exact(wl, wr, air);
    const double s = 0.75;
    const auto shifted =
        solve_exact<double>({wl.rho, wl.u + s, wl.p}, {wr.rho, wr.u + s, wr.p},
                            air);
    CHECK(shifted.p_star ==
          doctest::Approx(sol.p_star).epsilon(1e-10));
    CHECK(shifted.u_star ==
          doctest::Approx(sol.u_star + s).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("godunov flux consistency and upwinding") {
  const State rest{1.0, 0.0, 1.0};
  const auto f = godunov_flux(rest, rest, air);
  CHECK(f.mass == 0.0);
  CHECK(f.mom == 1.0);
  CHECK(f.ener == 0.0);

  const State fast{1.0, 2.0, 1.0};  // u > c
  const auto fs = godunov_flux(fast, fast, air);
  const auto ref = physical_flux(fast, air);
  CHECK(fs.mass == ref.mass);
  CHECK(fs.mom == ref.mom);
  CHECK(fs.ener == ref.ener);

  const auto sod = godunov_flux(sod_l, sod_r, air);
  CHECK(sod.mass == doctest::Approx(0.39539107064191551).epsilon(1e-10));
  CHECK(sod.mom == doctest::Approx(0.66983666246145082).epsilon(1e-10));
  CHECK(sod.ener == doctest::Approx(1.15403751734928963).epsilon(1e-10));
}

TEST_CASE("godunov flux reflection covariance") {
  oracles::StateGen gen(14);
  for (int i = 0; i < 100; ++i) {
    const State wl = gen();
    const State wr = gen();
    if (!vacuum_check(wl, wr, air)) continue;
    const auto f = godunov_flux(wl, wr, air);
    const auto g = godunov_flux(reflect(wr), reflect(wl), air);
    CHECK(g.mass == doctest::Approx(-f.mass).epsilon(1e-10).scale(1.0));
    CHECK(g.mom == doctest::Approx(f.mom).epsilon(1e-10).scale(1.0));
    CHECK(g.ener == doctest::Approx(-f.ener).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("osher flux consistency") {
  const State rest{1.0, 0.0, 1.0};
  const auto f = osher_flux(rest, rest, air);
  CHECK(f.mass == 0.0);
  CHECK(f.mom == 1.0);
  CHECK(f.ener == 0.0);

  const State fast{1.0, 2.0, 1.0};
  const auto fs = osher_flux(fast, fast, air);
  const auto ref = physical_flux(fast, air);
  CHECK(fs.mass == ref.mass);
  CHECK(fs.mom == ref.mom);
  CHECK(fs.ener == ref.ener);
}

TEST_CASE("osher flux of a sonic single 3-rarefaction") {
  // build wr on the 3-curve of wl so that the fan straddles the time axis
  const double cl = std::sqrt(1.4);
  const State wl{1.0, -1.2 * cl, 1.0};
  const double cr = 1.1 * cl;
  const double ur = wl.u + 2.0 / air.gm1() * (cr - cl);
  const double rho_r = std::pow(cr * cr / 1.4, 1.0 / air.gm1());  // S = 1
  const State wr{rho_r, ur, rho_r * cr * cr / 1.4};
  REQUIRE(wl.u + cl < 0.0);
  REQUIRE(wr.u + cr > 0.0);

  // sonic state of the 3-curve, from the two invariant relations
  const double psi = wl.u - 2.0 * cl / air.gm1();
  const double c_star = -psi * air.gm1() / air.gp1();
  const double rho_star = std::pow(c_star * c_star / 1.4, 1.0 / air.gm1());
  const State w_star{rho_star, -c_star, rho_star * c_star * c_star / 1.4};
  const auto expected = physical_flux(w_star, air);

  const auto f = osher_flux(wl, wr, air);
  CHECK(f.mass == doctest::Approx(expected.mass).epsilon(1e-10).scale(1.0));
  CHECK(f.mom == doctest::Approx(expected.mom).epsilon(1e-10).scale(1.0));
  CHECK(f.ener == doctest::Approx(expected.ener).epsilon(1e-10).scale(1.0));

  // the exact solution is the same pure rarefaction, so Godunov agrees
  const auto g = godunov_flux(wl, wr, air);
  CHECK(f.mass == doctest::Approx(g.mass).epsilon(1e-10).scale(1.0));
  CHECK(f.mom == doctest::Approx(g.mom).epsilon(1e-10).scale(1.0));
  CHECK(f.ener == doctest::Approx(g.ener).epsilon(1e-10).scale(1.0));
}

TEST_CASE("osher equals godunov on two-rarefaction solutions") {
  oracles::StateGen gen(15);
  int matched = 0;
  for (int i = 0; i < 400; ++i) {
    const State wl = gen();
    const State wr = gen();
    if (!vacuum_check(wl, wr, air)) continue;
    const auto sol = solve_exact(wl, wr, air);
    if (sol.waves[0].kind != WaveKind::Rarefaction ||
        sol.waves[2].kind != WaveKind::Rarefaction)
      continue;
    ++matched;
    const auto f = osher_flux(wl, wr, air);
    const auto g = godunov_flux(wl, wr, air);
    const double scale = std::max({1.0, std::abs(g.mass), std::abs(g.mom),
                                   std::abs(g.ener)});
    CHECK(std::abs(f.mass - g.mass) <= 1e-10 * scale);
    CHECK(std::abs(f.mom - g.mom) <= 1e-10 * scale);
    CHECK(std::abs(f.ener - g.ener) <= 1e-10 * scale);
  }
  CHECK(matched > 30);
}

TEST_CASE("vacuum check") {
  CHECK(vacuum_check<double>({1.0, 0.0, 1.0}, {1.0, 0.0, 1.0}, air));
  CHECK_FALSE(vacuum_check<double>({1.0, -10.0, 1.0}, {1.0, 10.0, 1.0}, air));
  // critical separation counts as vacuum (closed condition)
  const double c = std::sqrt(1.4);
  const double crit = 2.0 * c / air.gm1();
  CHECK_FALSE(vacuum_check<double>({1.0, -crit, 1.0}, {1.0, crit, 1.0}, air));
  CHECK_THROWS_AS(solve_exact<double>({1.0, -10.0, 1.0}, {1.0, 10.0, 1.0}, air),
                  VacuumFormation);
}
