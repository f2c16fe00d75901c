#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "euler1d/boundary.hpp"
#include "euler1d/common.hpp"
#include "euler1d/gas.hpp"
#include "euler1d/riemann.hpp"

namespace euler1d {

/// Uniform mesh of the unit interval, cell centers at (j + 1/2) dx.
template <class Scalar>
struct Mesh {
  int cells;

  explicit Mesh(int n) : cells(n) {
    if (n < 2) throw std::invalid_argument("Mesh: need at least 2 cells");
  }
  Scalar dx() const { return Scalar(1) / Scalar(cells); }
  Scalar center(int j) const { return (Scalar(j) + Scalar(0.5)) * dx(); }
  Scalar face(int j) const { return Scalar(j) * dx(); }
};

/// Duct section sampled at the mesh faces; cell values are face averages.
template <class Scalar>
struct NozzleGeometry {
  std::vector<Scalar> face_area;  // cells + 1
  std::vector<Scalar> cell_area;  // cells
  bool constant = true;

  static NozzleGeometry from_function(const Mesh<Scalar>& mesh,
                                      const std::function<Scalar(Scalar)>& area) {
    NozzleGeometry g;
    g.face_area.resize(mesh.cells + 1);
    for (int j = 0; j <= mesh.cells; ++j) {
      g.face_area[j] = area(mesh.face(j));
      if (!(g.face_area[j] > Scalar(0)))
        throw std::invalid_argument("NozzleGeometry: area must be positive");
      g.constant = g.constant && g.face_area[j] == g.face_area[0];
    }
    g.cell_area.resize(mesh.cells);
    for (int j = 0; j < mesh.cells; ++j)
      g.cell_area[j] = Scalar(0.5) * (g.face_area[j] + g.face_area[j + 1]);
    return g;
  }
};

template <class Scalar>
struct SolverConfig {
  Mesh<Scalar> mesh;
  std::optional<NozzleGeometry<Scalar>> geometry;  // absent = constant area
  GasModel<Scalar> gas;
  BoundaryManifold<Scalar> left;
  BoundaryManifold<Scalar> right;
  Scalar cfl = Scalar(0.9);
  int max_steps = 100000;
  Scalar residual_threshold = Scalar(1e-8);
  FluxScheme scheme = FluxScheme::Godunov;
  std::vector<int> snapshot_steps;

  void validate() const {
    if (!(cfl > Scalar(0)) || cfl > Scalar(1))
      throw std::invalid_argument("SolverConfig: CFL must lie in (0, 1]");
    if (max_steps < 1)
      throw std::invalid_argument("SolverConfig: max_steps must be positive");
  }
};

/// Cell-averaged conservative states at one time level.
template <class Scalar>
struct SolverField {
  std::vector<ConsState<Scalar>> cells;
  Scalar time = Scalar(0);
};

template <class Scalar>
struct Snapshot {
  int step;
  Scalar time;
  std::vector<PrimState<Scalar>> prim;
};

/// Run diagnostics: per-step normalized residuals, velocity traces in the
/// first and last cells, boundary-flux traces, and requested snapshots.
template <class Scalar>
struct RunReport {
  int steps = 0;
  bool converged = false;
  std::vector<Scalar> residuals;
  std::vector<Scalar> u_left, u_right;
  std::vector<Flux<Scalar>> flux_left, flux_right;
  std::vector<Snapshot<Scalar>> snapshots;
  SolverField<Scalar> final_field;
};

/// Section law of the divergent-nozzle test case.
template <class Scalar>
Scalar nozzle_area(Scalar x) {
  using std::tanh;
  return Scalar(1.598) + Scalar(0.347) * tanh(Scalar(8) * x - Scalar(4));
}

/// Supersonic inlet state of the divergent-nozzle test case.
template <class Scalar>
PrimState<Scalar> divergent_nozzle_inlet() {
  return {Scalar(0.502), Scalar(1.299), Scalar(0.381)};
}

/// Rest state sharing entropy and total enthalpy with the nozzle inlet.
template <class Scalar>
PrimState<Scalar> divergent_nozzle_initial_state() {
  return {Scalar(1), Scalar(0), Scalar(1)};
}

template <class Scalar>
SolverField<Scalar> initial_field(
    const SolverConfig<Scalar>& config,
    const std::function<PrimState<Scalar>(Scalar)>& profile) {
  SolverField<Scalar> field;
  field.cells.reserve(config.mesh.cells);
  for (int j = 0; j < config.mesh.cells; ++j)
    field.cells.push_back(
        prim_to_cons(profile(config.mesh.center(j)), config.gas));
  return field;
}

/// Default initial data: the rest state of the nozzle experiment in every
/// cell.
template <class Scalar>
SolverField<Scalar> initial_field(const SolverConfig<Scalar>& config) {
  return initial_field<Scalar>(
      config, [](Scalar) { return divergent_nozzle_initial_state<Scalar>(); });
}

template <class Scalar>
struct StepResult {
  SolverField<Scalar> field;
  Scalar dt;
  Flux<Scalar> left_flux, right_flux;
};

namespace detail {

template <class Scalar>
std::vector<PrimState<Scalar>> primitives_checked(
    const SolverField<Scalar>& field, const GasModel<Scalar>& gas,
    const char* where) {
  std::vector<PrimState<Scalar>> prim;
  prim.reserve(field.cells.size());
  for (std::size_t j = 0; j < field.cells.size(); ++j) {
    try {
      prim.push_back(cons_to_prim(field.cells[j], gas));
    } catch (const NonPhysicalState& e) {
      throw NonPhysicalState(std::string(where) + ": cell " +
                             std::to_string(j) + ": " + e.what());
    }
  }
  return prim;
}

}  // namespace detail

/// One explicit step. dt is set by the CFL condition on the current field
/// (and optionally capped); interior fluxes use the configured scheme, end
/// fluxes come from the partial Riemann problems of the configured
/// manifolds. With a geometry present, face-area-weighted fluxes and the
/// momentum pressure source discretize the quasi-1D balance; constant-area
/// runs take the plain conservative update.
template <class Scalar>
StepResult<Scalar> step(const SolverField<Scalar>& field,
                        const SolverConfig<Scalar>& config,
                        Scalar dt_limit = std::numeric_limits<Scalar>::infinity()) {
  config.validate();
  const int n = config.mesh.cells;
  if (int(field.cells.size()) != n)
    throw std::invalid_argument("step: field size does not match the mesh");
  const GasModel<Scalar>& gas = config.gas;
  const auto prim = detail::primitives_checked(field, gas, "step");

  Scalar smax = Scalar(0);
  for (const auto& v : prim)
    smax = std::max(smax, std::abs(v.u) + sound_speed(v, gas));
  const Scalar dx = config.mesh.dx();
  const Scalar dt = std::min(config.cfl * dx / smax, dt_limit);

  std::vector<Vec3<Scalar>> flux(n + 1);
  Flux<Scalar> left_flux, right_flux;
  try {
    left_flux = resolve(config.left, prim.front(), Side::Left, gas,
                        config.scheme).flux;
  } catch (const VacuumFormation& e) {
    throw VacuumFormation(std::string("step: left boundary: ") + e.what());
  }
  try {
    right_flux = resolve(config.right, prim.back(), Side::Right, gas,
                         config.scheme).flux;
  } catch (const VacuumFormation& e) {
    throw VacuumFormation(std::string("step: right boundary: ") + e.what());
  }
  flux.front() = left_flux.vector();
  flux.back() = right_flux.vector();
  for (int j = 1; j < n; ++j) {
    try {
      flux[j] = config.scheme == FluxScheme::Godunov
                    ? godunov_flux(prim[j - 1], prim[j], gas).vector()
                    : osher_flux(prim[j - 1], prim[j], gas).vector();
    } catch (const VacuumFormation& e) {
      throw VacuumFormation("step: interface " + std::to_string(j) + ": " +
                            e.what());
    }
  }

  StepResult<Scalar> out{{std::vector<ConsState<Scalar>>(n), field.time + dt},
                         dt, left_flux, right_flux};
  const bool plain = !config.geometry || config.geometry->constant;
  for (int j = 0; j < n; ++j) {
    Vec3<Scalar> w = field.cells[j].vector();
    if (plain) {
      w -= dt / dx * (flux[j + 1] - flux[j]);
    } else {
      const auto& g = *config.geometry;
      const Scalar a_l = g.face_area[j], a_r = g.face_area[j + 1];
      const Scalar a_c = g.cell_area[j];
      w -= dt / (a_c * dx) * (a_r * flux[j + 1] - a_l * flux[j]);
      w[1] += dt * prim[j].p * (a_r - a_l) / (a_c * dx);
    }
    out.field.cells[j] = ConsState<Scalar>::from_vector(w);
  }
  detail::primitives_checked(out.field, gas, "step (after update)");
  return out;
}

/// March to the steady state: stop when the L2 norm of the update, scaled
/// by the first update, drops below the residual threshold.
template <class Scalar>
RunReport<Scalar> run_to_steady(const SolverConfig<Scalar>& config,
                                const SolverField<Scalar>& start) {
  config.validate();
  RunReport<Scalar> rep;
  SolverField<Scalar> field = start;
  Scalar denom = Scalar(0);
  for (int n = 1; n <= config.max_steps; ++n) {
    const auto sr = step(field, config);
    Scalar raw = Scalar(0);
    for (int j = 0; j < config.mesh.cells; ++j)
      raw += (sr.field.cells[j].vector() - field.cells[j].vector())
                 .squaredNorm();
    raw = std::sqrt(raw);
    field = sr.field;
    if (n == 1)
      denom = std::max(raw, std::numeric_limits<Scalar>::min());
    const Scalar res = raw / denom;
    rep.residuals.push_back(res);
    const auto first = cons_to_prim(field.cells.front(), config.gas);
    const auto last = cons_to_prim(field.cells.back(), config.gas);
    rep.u_left.push_back(first.u);
    rep.u_right.push_back(last.u);
    rep.flux_left.push_back(sr.left_flux);
    rep.flux_right.push_back(sr.right_flux);
    for (int s : config.snapshot_steps) {
      if (s == n) {
        Snapshot<Scalar> snap{n, field.time, {}};
        for (const auto& w : field.cells)
          snap.prim.push_back(cons_to_prim(w, config.gas));
        rep.snapshots.push_back(std::move(snap));
      }
    }
    if (res <= config.residual_threshold) {
      rep.converged = true;
      break;
    }
  }
  rep.steps = int(rep.residuals.size());
  rep.final_field = field;
  Snapshot<Scalar> last{rep.steps, field.time, {}};
  for (const auto& w : field.cells)
    last.prim.push_back(cons_to_prim(w, config.gas));
  rep.snapshots.push_back(std::move(last));
  return rep;
}

template <class Scalar>
RunReport<Scalar> run_to_steady(const SolverConfig<Scalar>& config) {
  return run_to_steady(config, initial_field(config));
}

/// Exact steady quasi-1D profile through the divergent nozzle: the
/// supersonic branch of the area-Mach relation at constant mass flow,
/// total enthalpy and entropy. This is the independent oracle the
/// computed steady states are compared against.
template <class Scalar>
PrimState<Scalar> exact_nozzle_steady(
    Scalar x, const PrimState<Scalar>& inlet, const GasModel<Scalar>& gas,
    const std::function<Scalar(Scalar)>& area_fn = nozzle_area<Scalar>) {
  using std::pow;
  using std::sqrt;
  if (regime_classify(inlet, Side::Left, gas) != Regime::SupersonicInflow)
    throw std::invalid_argument(
        "exact_nozzle_steady: inlet must be supersonic into the domain");
  const Scalar h0 = total_enthalpy(inlet, gas);
  const Scalar s0 = entropy(inlet, gas);
  const Scalar flow = inlet.rho * inlet.u * area_fn(Scalar(0));
  const Scalar area = area_fn(x);

  // state on the (H, S) manifold at a given Mach number
  const auto state_at = [&](Scalar m) {
    const Scalar c2 = h0 / (Scalar(0.5) * m * m + Scalar(1) / gas.gm1());
    const Scalar rho = pow(c2 / (gas.gamma * s0), Scalar(1) / gas.gm1());
    return PrimState<Scalar>{rho, m * sqrt(c2), rho * c2 / gas.gamma};
  };
  const auto mass_defect = [&](Scalar m) {
    const auto v = state_at(m);
    return v.rho * v.u * area - flow;
  };

  // On the supersonic branch the mass flow per area decreases with Mach;
  // it peaks at the sonic throat condition.
  if (mass_defect(Scalar(1)) < Scalar(0))
    throw NoSupersonicBranch(
        "exact_nozzle_steady: section narrower than the critical throat at x=" +
        std::to_string(double(x)));
  Scalar lo = Scalar(1), hi = Scalar(2);
  while (mass_defect(hi) > Scalar(0)) {
    hi *= Scalar(2);
    if (hi > Scalar(1e6))
      throw NoConvergence("exact_nozzle_steady: Mach bracket failed");
  }
  for (int i = 0; i < 200; ++i) {
    const Scalar mid = Scalar(0.5) * (lo + hi);
    if (mass_defect(mid) > Scalar(0))
      lo = mid;
    else
      hi = mid;
  }
  return state_at(Scalar(0.5) * (lo + hi));
}

/// Configuration of the divergent-nozzle experiment: supersonic inflow on
/// the left (or the forced-flux legacy mode), supersonic outflow on the
/// right (or plain extrapolation).
template <class Scalar>
SolverConfig<Scalar> divergent_nozzle_config(int cells, Scalar cfl,
                                             bool prescribed_flux_inlet,
                                             bool extrapolation_outlet,
                                             FluxScheme scheme,
                                             int max_steps = 100000,
                                             Scalar threshold = Scalar(1e-8)) {
  const Mesh<Scalar> mesh{cells};
  const auto inlet = divergent_nozzle_inlet<Scalar>();
  SolverConfig<Scalar> config{
      mesh,
      NozzleGeometry<Scalar>::from_function(mesh, nozzle_area<Scalar>),
      GasModel<Scalar>{Scalar(1.4)},
      prescribed_flux_inlet
          ? BoundaryManifold<Scalar>{PrescribedFlux<Scalar>{inlet}}
          : BoundaryManifold<Scalar>{SupersonicInflow<Scalar>{inlet}},
      extrapolation_outlet
          ? BoundaryManifold<Scalar>{Extrapolation<Scalar>{}}
          : BoundaryManifold<Scalar>{SupersonicOutflow<Scalar>{}},
      cfl,
      max_steps,
      threshold,
      scheme,
      {}};
  return config;
}

}  // namespace euler1d
