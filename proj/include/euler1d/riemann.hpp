#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "euler1d/common.hpp"
#include "euler1d/gas.hpp"

namespace euler1d {

/// Physical flux f(W) = (rho u, rho u^2 + p, u (rho E + p)).
template <class Scalar>
struct Flux {
  Scalar mass;
  Scalar mom;
  Scalar ener;

  Vec3<Scalar> vector() const { return {mass, mom, ener}; }
  static Flux from_vector(const Vec3<Scalar>& v) { return {v[0], v[1], v[2]}; }
};

/// Flux seen through the mirror x -> -x.
template <class Scalar>
Flux<Scalar> reflect(const Flux<Scalar>& f) {
  return {-f.mass, f.mom, -f.ener};
}

template <class Scalar>
Flux<Scalar> physical_flux(const PrimState<Scalar>& v,
                           const GasModel<Scalar>& gas) {
  const Scalar rho_e = v.p / gas.gm1() + Scalar(0.5) * v.rho * v.u * v.u;
  return {v.rho * v.u, v.rho * v.u * v.u + v.p, v.u * (rho_e + v.p)};
}

enum class WaveKind { Shock, Rarefaction, Contact };

inline const char* to_string(WaveKind k) {
  switch (k) {
    case WaveKind::Shock: return "shock";
    case WaveKind::Rarefaction: return "rarefaction";
    case WaveKind::Contact: return "contact";
  }
  return "?";
}

/// One wave of the self-similar fan. head == tail for shocks and contacts;
/// head <= tail for rarefactions.
template <class Scalar>
struct WaveDescriptor {
  int family;  // 1, 2 or 3
  WaveKind kind;
  Scalar head;
  Scalar tail;
};

/// Entropy solution of R(left, right): two star states separated by the
/// contact, three waves ordered across the fan.
template <class Scalar>
struct RiemannSolution {
  GasModel<Scalar> gas;
  PrimState<Scalar> left, right;
  PrimState<Scalar> star_left, star_right;
  std::array<WaveDescriptor<Scalar>, 3> waves;
  Scalar p_star;
  Scalar u_star;
};

/// True iff the star pressure stays positive, i.e. no vacuum opens:
/// 2 c_l/(gamma-1) + 2 c_r/(gamma-1) > u_r - u_l. The boundary case counts
/// as vacuum.
template <class Scalar>
bool vacuum_check(const PrimState<Scalar>& wl, const PrimState<Scalar>& wr,
                  const GasModel<Scalar>& gas) {
  const Scalar two_over_gm1 = Scalar(2) / gas.gm1();
  return two_over_gm1 * (sound_speed(wl, gas) + sound_speed(wr, gas)) >
         wr.u - wl.u;
}

namespace detail {

/// u-change across the wave of the given end state as a function of the
/// pressure behind it: shock branch for p > p_k, rarefaction branch below.
/// This is the classic two-wave function; the star velocity is
/// u* = u_l - wave_fn(p*, wl) = u_r + wave_fn(p*, wr).
template <class Scalar>
Scalar wave_fn(Scalar p, const PrimState<Scalar>& w, const GasModel<Scalar>& gas) {
  using std::pow;
  using std::sqrt;
  if (p > w.p) {
    const Scalar a = Scalar(2) / (gas.gp1() * w.rho);
    const Scalar b = gas.gm1() / gas.gp1() * w.p;
    return (p - w.p) * sqrt(a / (p + b));
  }
  const Scalar c = sound_speed(w, gas);
  return Scalar(2) * c / gas.gm1() *
         (pow(p / w.p, gas.gm1() / (Scalar(2) * gas.gamma)) - Scalar(1));
}

template <class Scalar>
Scalar wave_fn_deriv(Scalar p, const PrimState<Scalar>& w,
                     const GasModel<Scalar>& gas) {
  using std::pow;
  using std::sqrt;
  if (p > w.p) {
    const Scalar a = Scalar(2) / (gas.gp1() * w.rho);
    const Scalar b = gas.gm1() / gas.gp1() * w.p;
    return sqrt(a / (p + b)) *
           (Scalar(1) - (p - w.p) / (Scalar(2) * (p + b)));
  }
  const Scalar c = sound_speed(w, gas);
  return pow(p / w.p, -gas.gp1() / (Scalar(2) * gas.gamma)) / (w.rho * c);
}

/// Closed-form star pressure of the two-rarefaction approximation, used as
/// the Newton starting guess.
template <class Scalar>
Scalar two_rarefaction_pressure(const PrimState<Scalar>& wl,
                                const PrimState<Scalar>& wr,
                                const GasModel<Scalar>& gas) {
  using std::pow;
  const Scalar z = gas.gm1() / (Scalar(2) * gas.gamma);
  const Scalar cl = sound_speed(wl, gas);
  const Scalar cr = sound_speed(wr, gas);
  const Scalar num = cl + cr - Scalar(0.5) * gas.gm1() * (wr.u - wl.u);
  const Scalar den = cl / pow(wl.p, z) + cr / pow(wr.p, z);
  return pow(num / den, Scalar(1) / z);
}

/// Density behind a wave of the given end state at pressure p.
template <class Scalar>
Scalar star_density(Scalar p, const PrimState<Scalar>& w,
                    const GasModel<Scalar>& gas) {
  using std::pow;
  if (p > w.p) {
    const Scalar b = gas.gm1() / gas.gp1();
    const Scalar r = p / w.p;
    return w.rho * (r + b) / (b * r + Scalar(1));
  }
  return w.rho * pow(p / w.p, Scalar(1) / gas.gamma);
}

/// Shock Mach factor q with shock speed u_k -+ c_k q.
template <class Scalar>
Scalar shock_speed_factor(Scalar p, const PrimState<Scalar>& w,
                          const GasModel<Scalar>& gas) {
  using std::sqrt;
  return sqrt(gas.gp1() / (Scalar(2) * gas.gamma) * p / w.p +
              gas.gm1() / (Scalar(2) * gas.gamma));
}

template <class Scalar>
bool same_state(const PrimState<Scalar>& a, const PrimState<Scalar>& b) {
  return a.rho == b.rho && a.u == b.u && a.p == b.p;
}

}  // namespace detail

/// Exact solution of the Riemann problem. The star pressure is found by a
/// safeguarded Newton iteration (bisection fallback) started from the
/// two-rarefaction guess, converged to relative 1e-12.
template <class Scalar>
RiemannSolution<Scalar> solve_exact(const PrimState<Scalar>& wl,
                                    const PrimState<Scalar>& wr,
                                    const GasModel<Scalar>& gas) {
  using std::abs;
  using std::max;
  using std::min;

  RiemannSolution<Scalar> sol{gas, wl, wr, wl, wr, {}, Scalar(0), Scalar(0)};

  if (detail::same_state(wl, wr)) {
    const Scalar c = sound_speed(wl, gas);
    sol.p_star = wl.p;
    sol.u_star = wl.u;
    sol.star_left = wl;
    sol.star_right = wl;
    sol.waves = {WaveDescriptor<Scalar>{1, WaveKind::Rarefaction, wl.u - c,
                                        wl.u - c},
                 WaveDescriptor<Scalar>{2, WaveKind::Contact, wl.u, wl.u},
                 WaveDescriptor<Scalar>{3, WaveKind::Rarefaction, wl.u + c,
                                        wl.u + c}};
    return sol;
  }

  if (!vacuum_check(wl, wr, gas))
    throw VacuumFormation("solve_exact: receding states open a vacuum");

  const auto pressure_fn = [&](Scalar p) {
    return detail::wave_fn(p, wl, gas) + detail::wave_fn(p, wr, gas) +
           (wr.u - wl.u);
  };

  // Bracket the root. pressure_fn is strictly increasing and negative at
  // p -> 0+ once the vacuum check has passed; near-vacuum roots can sit
  // many orders below the input pressures, so the floor is the smallest
  // normal number.
  Scalar p_lo = std::numeric_limits<Scalar>::min();
  Scalar p_hi = max(wl.p, wr.p);
  for (int i = 0; i < 600 && pressure_fn(p_hi) < Scalar(0); ++i)
    p_hi *= Scalar(2);

  Scalar p = min(max(detail::two_rarefaction_pressure(wl, wr, gas), p_lo), p_hi);
  const Scalar rel_tol = Scalar(1e-12);
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    const Scalar f = pressure_fn(p);
    if (f == Scalar(0)) {
      converged = true;
      break;
    }
    if (f > Scalar(0))
      p_hi = p;
    else
      p_lo = p;
    const Scalar df = detail::wave_fn_deriv(p, wl, gas) +
                      detail::wave_fn_deriv(p, wr, gas);
    Scalar p_next = p - f / df;
    if (!(p_next > p_lo && p_next < p_hi))
      p_next = Scalar(0.5) * (p_lo + p_hi);
    const Scalar dp = abs(p_next - p);
    p = p_next;
    if (dp <= rel_tol * p) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw NoConvergence("solve_exact: star pressure iteration did not converge");

  // polish to machine precision so downstream jump relations close tightly
  for (int i = 0; i < 2; ++i) {
    const Scalar f = pressure_fn(p);
    const Scalar df = detail::wave_fn_deriv(p, wl, gas) +
                      detail::wave_fn_deriv(p, wr, gas);
    const Scalar q = p - f / df;
    if (q > Scalar(0) && std::isfinite(q)) p = q;
  }

  sol.p_star = p;
  sol.u_star = Scalar(0.5) * (wl.u + wr.u) +
               Scalar(0.5) * (detail::wave_fn(p, wr, gas) -
                              detail::wave_fn(p, wl, gas));
  sol.star_left = {detail::star_density(p, wl, gas), sol.u_star, p};
  sol.star_right = {detail::star_density(p, wr, gas), sol.u_star, p};

  const Scalar cl = sound_speed(wl, gas);
  const Scalar cr = sound_speed(wr, gas);
  if (p > wl.p) {
    const Scalar s = wl.u - cl * detail::shock_speed_factor(p, wl, gas);
    sol.waves[0] = {1, WaveKind::Shock, s, s};
  } else {
    sol.waves[0] = {1, WaveKind::Rarefaction, wl.u - cl,
                    sol.u_star - sound_speed(sol.star_left, gas)};
  }
  sol.waves[1] = {2, WaveKind::Contact, sol.u_star, sol.u_star};
  if (p > wr.p) {
    const Scalar s = wr.u + cr * detail::shock_speed_factor(p, wr, gas);
    sol.waves[2] = {3, WaveKind::Shock, s, s};
  } else {
    sol.waves[2] = {3, WaveKind::Rarefaction,
                    sol.u_star + sound_speed(sol.star_right, gas),
                    wr.u + cr};
  }
  return sol;
}

/// Value of the self-similar solution at xi = x/t. When xi coincides with a
/// discontinuity speed the state on the right (downstream) side is returned.
template <class Scalar>
PrimState<Scalar> sample(const RiemannSolution<Scalar>& sol, Scalar xi) {
  using std::pow;
  const GasModel<Scalar>& gas = sol.gas;
  const auto& w1 = sol.waves[0];
  const auto& w3 = sol.waves[2];

  if (xi < w1.head) return sol.left;
  if (xi < w1.tail) {
    // inside the 1-fan
    const Scalar cl = sound_speed(sol.left, gas);
    const Scalar u = (Scalar(2) * (cl + Scalar(0.5) * gas.gm1() * sol.left.u +
                                   xi)) /
                     gas.gp1();
    const Scalar c = (Scalar(2) * (cl + Scalar(0.5) * gas.gm1() *
                                            (sol.left.u - xi))) /
                     gas.gp1();
    const Scalar rho = sol.left.rho * pow(c / cl, Scalar(2) / gas.gm1());
    const Scalar p = sol.left.p * pow(c / cl, Scalar(2) * gas.gamma / gas.gm1());
    return {rho, u, p};
  }
  if (xi < sol.u_star) return sol.star_left;
  if (xi < w3.head) return sol.star_right;
  if (xi < w3.tail) {
    // inside the 3-fan
    const Scalar cr = sound_speed(sol.right, gas);
    const Scalar u = (Scalar(2) * (-cr + Scalar(0.5) * gas.gm1() * sol.right.u +
                                   xi)) /
                     gas.gp1();
    const Scalar c = (Scalar(2) * (cr - Scalar(0.5) * gas.gm1() *
                                            (sol.right.u - xi))) /
                     gas.gp1();
    const Scalar rho = sol.right.rho * pow(c / cr, Scalar(2) / gas.gm1());
    const Scalar p =
        sol.right.p * pow(c / cr, Scalar(2) * gas.gamma / gas.gm1());
    return {rho, u, p};
  }
  return sol.right;
}

/// Mirror image of a solution: states reflected, families 1 and 3 swapped,
/// all speeds negated.
template <class Scalar>
RiemannSolution<Scalar> reflect(const RiemannSolution<Scalar>& sol) {
  RiemannSolution<Scalar> r{sol.gas,
                            reflect(sol.right),
                            reflect(sol.left),
                            reflect(sol.star_right),
                            reflect(sol.star_left),
                            {},
                            sol.p_star,
                            -sol.u_star};
  for (int j = 0; j < 3; ++j) {
    const auto& w = sol.waves[2 - j];
    r.waves[j] = {4 - w.family, w.kind, -w.tail, -w.head};
  }
  return r;
}

/// Compact wave-pattern tag, one token per wave: family, kind initial and
/// the sign of its speed range ('0' when a fan straddles the time axis).
/// Example: "1R- 2C+ 3S+".
template <class Scalar>
std::string pattern_string(const RiemannSolution<Scalar>& sol) {
  std::string out;
  for (const auto& w : sol.waves) {
    if (!out.empty()) out += ' ';
    out += static_cast<char>('0' + w.family);
    out += w.kind == WaveKind::Shock ? 'S'
           : w.kind == WaveKind::Contact ? 'C'
                                         : 'R';
    if (w.tail <= Scalar(0))
      out += '-';
    else if (w.head >= Scalar(0))
      out += '+';
    else
      out += '0';
  }
  return out;
}

/// Godunov flux: physical flux of the exact solution sampled on the time
/// axis. Exactly consistent, Phi(W, W) = f(W).
template <class Scalar>
Flux<Scalar> godunov_flux(const PrimState<Scalar>& wl,
                          const PrimState<Scalar>& wr,
                          const GasModel<Scalar>& gas) {
  return physical_flux(sample(solve_exact(wl, wr, gas), Scalar(0)), gas);
}

namespace detail {

/// Sonic state on the 1-path through w (constant S and u + 2c/(gamma-1)),
/// where u - c = 0.
template <class Scalar>
PrimState<Scalar> sonic_on_1_path(const PrimState<Scalar>& w,
                                  const GasModel<Scalar>& gas) {
  using std::pow;
  const Scalar psi = w.u + Scalar(2) * sound_speed(w, gas) / gas.gm1();
  const Scalar c = psi * gas.gm1() / gas.gp1();
  if (!(c > Scalar(0)))
    throw VacuumFormation("sonic_on_1_path: invariant forces c <= 0");
  const Scalar s = entropy(w, gas);
  const Scalar rho = pow(c * c / (gas.gamma * s), Scalar(1) / gas.gm1());
  return {rho, c, rho * c * c / gas.gamma};
}

/// Sonic state on the 3-path through w (constant S and u - 2c/(gamma-1)),
/// where u + c = 0.
template <class Scalar>
PrimState<Scalar> sonic_on_3_path(const PrimState<Scalar>& w,
                                  const GasModel<Scalar>& gas) {
  using std::pow;
  const Scalar psi = w.u - Scalar(2) * sound_speed(w, gas) / gas.gm1();
  const Scalar c = -psi * gas.gm1() / gas.gp1();
  if (!(c > Scalar(0)))
    throw VacuumFormation("sonic_on_3_path: invariant forces c <= 0");
  const Scalar s = entropy(w, gas);
  const Scalar rho = pow(c * c / (gas.gamma * s), Scalar(1) / gas.gm1());
  return {rho, -c, rho * c * c / gas.gamma};
}

}  // namespace detail

/// Osher flux with the natural sub-path ordering (families 1, 2, 3 from
/// left to right). The integration path uses only rarefaction curves; the
/// contributions of sub-paths where the characteristic speed is negative
/// are added as signed flux differences, with sonic splitting where the
/// speed changes sign. Exactly consistent.
template <class Scalar>
Flux<Scalar> osher_flux(const PrimState<Scalar>& wl,
                        const PrimState<Scalar>& wr,
                        const GasModel<Scalar>& gas) {
  using std::pow;

  if (detail::same_state(wl, wr)) return physical_flux(wl, gas);

  const Scalar cl = sound_speed(wl, gas);
  const Scalar cr = sound_speed(wr, gas);
  const Scalar psi_l = wl.u + Scalar(2) * cl / gas.gm1();
  const Scalar psi_r = wr.u - Scalar(2) * cr / gas.gm1();
  if (!(psi_l - psi_r > Scalar(0)))
    throw VacuumFormation("osher_flux: integration path reaches vacuum");

  // Intermediate states where the 1-, 2- and 3-paths meet: common velocity
  // and pressure, sound speeds in the ratio fixed by the isentropes.
  const Scalar z = gas.gm1() / (Scalar(2) * gas.gamma);
  const Scalar h = pow(wl.p / wr.p, z) * cr / cl;
  const Scalar c13 = gas.gm1() / Scalar(2) * (psi_l - psi_r) / (Scalar(1) + h);
  const Scalar c23 = h * c13;
  const Scalar um = psi_l - Scalar(2) * c13 / gas.gm1();
  const Scalar pm = wl.p * pow(c13 / cl, Scalar(1) / z);
  const PrimState<Scalar> w13{gas.gamma * pm / (c13 * c13), um, pm};
  const PrimState<Scalar> w23{gas.gamma * pm / (c23 * c23), um, pm};

  Vec3<Scalar> f = physical_flux(wl, gas).vector();

  // 1-path from wl to w13; lambda_1 = u - c is monotone along it.
  {
    const Scalar la = wl.u - cl;
    const Scalar lb = um - c13;
    if (la < Scalar(0) || lb < Scalar(0)) {
      const auto fa = physical_flux(wl, gas).vector();
      const auto fb = physical_flux(w13, gas).vector();
      if (la < Scalar(0) && lb < Scalar(0)) {
        f += fb - fa;
      } else {
        const auto fs =
            physical_flux(detail::sonic_on_1_path(wl, gas), gas).vector();
        if (la < Scalar(0))
          f += fs - fa;  // entering the fan from the left of the sonic point
        else
          f += fb - fs;
      }
    }
  }

  // 2-path (contact) from w13 to w23 at speed um.
  if (um < Scalar(0))
    f += physical_flux(w23, gas).vector() - physical_flux(w13, gas).vector();

  // 3-path from w23 to wr; lambda_3 = u + c is monotone along it.
  {
    const Scalar la = um + c23;
    const Scalar lb = wr.u + cr;
    if (la < Scalar(0) || lb < Scalar(0)) {
      const auto fa = physical_flux(w23, gas).vector();
      const auto fb = physical_flux(wr, gas).vector();
      if (la < Scalar(0) && lb < Scalar(0)) {
        f += fb - fa;
      } else {
        const auto fs =
            physical_flux(detail::sonic_on_3_path(wr, gas), gas).vector();
        if (la < Scalar(0))
          f += fs - fa;
        else
          f += fb - fs;
      }
    }
  }

  return Flux<Scalar>::from_vector(f);
}

}  // namespace euler1d
