#pragma once

#include <cmath>
#include <string>

#include "euler1d/common.hpp"

namespace euler1d {

/// Polytropic ideal gas, p = (gamma - 1) rho e.
template <class Scalar>
struct GasModel {
  Scalar gamma;

  explicit GasModel(Scalar gamma_) : gamma(gamma_) {
    if (!(gamma > Scalar(1)))
      throw std::invalid_argument("GasModel: gamma must exceed 1, got " +
                                  std::to_string(double(gamma_)));
  }

  Scalar gm1() const { return gamma - Scalar(1); }
  Scalar gp1() const { return gamma + Scalar(1); }
};

/// Conservative variables (rho, rho u, rho E).
template <class Scalar>
struct ConsState {
  Scalar rho;   // mass density
  Scalar mom;   // momentum density rho*u
  Scalar ener;  // total energy density rho*E

  Vec3<Scalar> vector() const { return {rho, mom, ener}; }
  static ConsState from_vector(const Vec3<Scalar>& v) {
    return {v[0], v[1], v[2]};
  }
};

/// Primitive variables (rho, u, p).
template <class Scalar>
struct PrimState {
  Scalar rho;
  Scalar u;
  Scalar p;

  Vec3<Scalar> vector() const { return {rho, u, p}; }
};

template <class Scalar>
bool valid(const PrimState<Scalar>& v) {
  return v.rho > Scalar(0) && v.p > Scalar(0) && std::isfinite(v.u);
}

/// Mirror image under x -> -x.
template <class Scalar>
PrimState<Scalar> reflect(const PrimState<Scalar>& v) {
  return {v.rho, -v.u, v.p};
}

template <class Scalar>
ConsState<Scalar> reflect(const ConsState<Scalar>& w) {
  return {w.rho, -w.mom, w.ener};
}

template <class Scalar>
PrimState<Scalar> cons_to_prim(const ConsState<Scalar>& w,
                               const GasModel<Scalar>& gas) {
  if (!(w.rho > Scalar(0)))
    throw NonPhysicalState("cons_to_prim: rho = " +
                           std::to_string(double(w.rho)));
  const Scalar u = w.mom / w.rho;
  const Scalar p = gas.gm1() * (w.ener - Scalar(0.5) * w.mom * u);
  if (!(p > Scalar(0)))
    throw NonPhysicalState("cons_to_prim: p = " + std::to_string(double(p)));
  return {w.rho, u, p};
}

template <class Scalar>
ConsState<Scalar> prim_to_cons(const PrimState<Scalar>& v,
                               const GasModel<Scalar>& gas) {
  return {v.rho, v.rho * v.u,
          v.p / gas.gm1() + Scalar(0.5) * v.rho * v.u * v.u};
}

template <class Scalar>
Scalar sound_speed(const PrimState<Scalar>& v, const GasModel<Scalar>& gas) {
  using std::sqrt;
  return sqrt(gas.gamma * v.p / v.rho);
}

/// Nondimensional specific entropy S with p = S rho^gamma.
template <class Scalar>
Scalar entropy(const PrimState<Scalar>& v, const GasModel<Scalar>& gas) {
  using std::pow;
  return v.p / pow(v.rho, gas.gamma);
}

/// Total specific enthalpy H = u^2/2 + h, h = gamma p / ((gamma-1) rho).
template <class Scalar>
Scalar total_enthalpy(const PrimState<Scalar>& v, const GasModel<Scalar>& gas) {
  return Scalar(0.5) * v.u * v.u + gas.gamma * v.p / (gas.gm1() * v.rho);
}

template <class Scalar>
Scalar mach_number(const PrimState<Scalar>& v, const GasModel<Scalar>& gas) {
  using std::abs;
  return abs(v.u) / sound_speed(v, gas);
}

/// Wave speeds and right eigenvectors of the quasilinear form in
/// (rho, u, S) coordinates. Columns of rvec are r_1, r_2, r_3 with the
/// normalization r_1 = (rho, -c, 0), r_2 = (dp/dS, 0, -c^2),
/// r_3 = (rho, c, 0).
template <class Scalar>
struct Eigenstructure {
  Vec3<Scalar> lambda;
  Mat3<Scalar> rvec;
};

template <class Scalar>
Eigenstructure<Scalar> eigenstructure(const PrimState<Scalar>& v,
                                      const GasModel<Scalar>& gas) {
  using std::pow;
  const Scalar c = sound_speed(v, gas);
  const Scalar dp_dS = pow(v.rho, gas.gamma);
  Eigenstructure<Scalar> e;
  e.lambda = {v.u - c, v.u, v.u + c};
  e.rvec.col(0) = Vec3<Scalar>{v.rho, -c, Scalar(0)};
  e.rvec.col(1) = Vec3<Scalar>{dp_dS, Scalar(0), -c * c};
  e.rvec.col(2) = Vec3<Scalar>{v.rho, c, Scalar(0)};
  return e;
}

/// Coefficient matrix A(V) of the quasilinear form in (rho, u, S)
/// coordinates.
template <class Scalar>
Mat3<Scalar> quasilinear_matrix(const PrimState<Scalar>& v,
                                const GasModel<Scalar>& gas) {
  using std::pow;
  const Scalar c2 = gas.gamma * v.p / v.rho;
  Mat3<Scalar> a;
  a << v.u, v.rho, Scalar(0),                             //
      c2 / v.rho, v.u, pow(v.rho, gas.gamma) / v.rho,     //
      Scalar(0), Scalar(0), v.u;
  return a;
}

/// Perturbation about a reference state, in (rho', u', S') coordinates.
template <class Scalar>
struct Perturbation {
  Scalar drho;
  Scalar du;
  Scalar dS;
};

/// Characteristic amplitudes of a perturbation about a reference state.
template <class Scalar>
struct CharCoords {
  Scalar phi1;
  Scalar phi2;
  Scalar phi3;
};

/// Linearized pressure perturbation p' = (dp/dS) S' + c^2 rho'.
template <class Scalar>
Scalar pressure_perturbation(const Perturbation<Scalar>& dv,
                             const PrimState<Scalar>& ref,
                             const GasModel<Scalar>& gas) {
  using std::pow;
  const Scalar c2 = gas.gamma * ref.p / ref.rho;
  return pow(ref.rho, gas.gamma) * dv.dS + c2 * dv.drho;
}

template <class Scalar>
CharCoords<Scalar> char_coords(const Perturbation<Scalar>& dv,
                               const PrimState<Scalar>& ref,
                               const GasModel<Scalar>& gas) {
  const Scalar c = sound_speed(ref, gas);
  const Scalar c2 = c * c;
  const Scalar dp = pressure_perturbation(dv, ref, gas);
  return {(dp - ref.rho * c * dv.du) / (Scalar(2) * ref.rho * c2),
          -dv.dS / c2,
          (dp + ref.rho * c * dv.du) / (Scalar(2) * ref.rho * c2)};
}

/// Inverse of char_coords: V' = sum_j phi_j r_j(ref).
template <class Scalar>
Perturbation<Scalar> reconstruct(const CharCoords<Scalar>& phi,
                                 const PrimState<Scalar>& ref,
                                 const GasModel<Scalar>& gas) {
  const auto e = eigenstructure(ref, gas);
  const Vec3<Scalar> dv = phi.phi1 * e.rvec.col(0) + phi.phi2 * e.rvec.col(1) +
                          phi.phi3 * e.rvec.col(2);
  return {dv[0], dv[1], dv[2]};
}

enum class Regime {
  SupersonicInflow,
  SubsonicInflow,
  Characteristic,  // zero normal velocity (wall-like)
  SubsonicOutflow,
  SupersonicOutflow,
};

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::SupersonicInflow: return "supersonic-inflow";
    case Regime::SubsonicInflow: return "subsonic-inflow";
    case Regime::Characteristic: return "characteristic";
    case Regime::SubsonicOutflow: return "subsonic-outflow";
    case Regime::SupersonicOutflow: return "supersonic-outflow";
  }
  return "?";
}

/// Classify a state seen from one side of the domain. Thresholds are taken
/// on the outward-normal velocity; equalities go to the supersonic and
/// characteristic tags.
template <class Scalar>
Regime regime_classify(const PrimState<Scalar>& v, Side side,
                       const GasModel<Scalar>& gas) {
  const Scalar c = sound_speed(v, gas);
  const Scalar un = Scalar(outward_normal(side)) * v.u;
  if (un >= c) return Regime::SupersonicOutflow;
  if (un > Scalar(0)) return Regime::SubsonicOutflow;
  if (un == Scalar(0)) return Regime::Characteristic;
  if (un > -c) return Regime::SubsonicInflow;
  return Regime::SupersonicInflow;
}

}  // namespace euler1d
