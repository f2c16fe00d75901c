#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "euler1d/common.hpp"
#include "euler1d/gas.hpp"
#include "euler1d/riemann.hpp"

namespace euler1d {

template <class Scalar>
struct Advection {
  Scalar speed;
};

struct Burgers {};

template <class Scalar>
using ScalarLaw = std::variant<Advection<Scalar>, Burgers>;

/// Closed-form admissible boundary set E(w0) for Burgers:
/// w0 >= 0 -> (-inf, -w0] union {w0};  w0 <= 0 -> (-inf, 0].
/// Set membership is closed; comparisons carry a relative slack so grid
/// values that should lie exactly on the boundary are kept.
template <class Scalar>
bool burgers_E_closed(Scalar w0, Scalar w, Scalar tol = Scalar(1e-12)) {
  using std::abs;
  using std::max;
  const Scalar slack = tol * max(Scalar(1), max(abs(w0), abs(w)));
  if (abs(w - w0) <= slack) return true;
  if (w0 >= Scalar(0)) return w <= -w0 + slack;
  return w <= slack;
}

/// Brute-force admissibility through the boundary entropy inequality
/// sampled over the Kruzkov family eta(w) = |w - k|: the oracle for
/// burgers_E_closed. The k-grid must cover [min(w, w0) - 1, max(w, w0) + 1].
template <class Scalar>
bool burgers_E_kruzkov(Scalar w0, Scalar w, const std::vector<Scalar>& kgrid,
                       Scalar tol = Scalar(1e-12)) {
  using std::abs;
  using std::max;
  const auto flux = [](Scalar v) { return Scalar(0.5) * v * v; };
  const auto sgn = [](Scalar x) {
    return x > Scalar(0) ? Scalar(1) : x < Scalar(0) ? Scalar(-1) : Scalar(0);
  };
  const Scalar scale =
      max(Scalar(1), max(w * w, w0 * w0));
  for (Scalar k : kgrid) {
    const Scalar xi_w = sgn(w - k) * (flux(w) - flux(k));
    const Scalar xi_w0 = sgn(w0 - k) * (flux(w0) - flux(k));
    const Scalar lhs = xi_w - xi_w0 - sgn(w0 - k) * (flux(w) - flux(w0));
    if (lhs > tol * scale) return false;
  }
  return true;
}

/// Default Kruzkov sampling of the covering interval.
template <class Scalar>
std::vector<Scalar> default_kruzkov_grid(Scalar w0, Scalar w, int n = 801) {
  using std::max;
  using std::min;
  const Scalar lo = min(w, w0) - Scalar(1);
  const Scalar hi = max(w, w0) + Scalar(1);
  std::vector<Scalar> k(n);
  for (int i = 0; i < n; ++i)
    k[i] = lo + (hi - lo) * Scalar(i) / Scalar(n - 1);
  return k;
}

template <class Scalar>
bool burgers_E_kruzkov(Scalar w0, Scalar w) {
  return burgers_E_kruzkov(w0, w, default_kruzkov_grid(w0, w));
}

/// Trace at x/t = 0+ of the entropy solution of the scalar Riemann problem
/// R(w0, w). A wave sitting exactly on the axis contributes its right
/// (downstream) value.
template <class Scalar>
Scalar scalar_V_trace(const ScalarLaw<Scalar>& law, Scalar w0, Scalar w) {
  if (const auto* adv = std::get_if<Advection<Scalar>>(&law))
    return adv->speed > Scalar(0) ? w0 : w;
  // Burgers
  if (w0 > w) {  // shock of speed (w0 + w)/2
    return w0 + w > Scalar(0) ? w0 : w;
  }
  // rarefaction fan spanning characteristic speeds [w0, w]
  if (w0 > Scalar(0)) return w0;
  if (w < Scalar(0)) return w;
  return Scalar(0);
}

/// Membership in the Riemann-trace set V(w0) for a scalar law: w is a
/// fixed point of the trace map.
template <class Scalar>
bool scalar_V_member(const ScalarLaw<Scalar>& law, Scalar w0, Scalar w,
                     Scalar tol = Scalar(1e-12)) {
  using std::abs;
  using std::max;
  return abs(scalar_V_trace(law, w0, w) - w) <=
         tol * max(Scalar(1), abs(w));
}

/// Boundary entropy inequality for the advection equation with the
/// quadratic entropy pair: a (w - w0)^2 <= 0.
template <class Scalar>
bool advection_admissible(Scalar w0, Scalar w, Scalar a) {
  return a <= Scalar(0) || w == w0;
}

/// Membership of w in the Euler Riemann-trace set V(w0): the trace of
/// R(w0, w) on the time axis reproduces w within the relative tolerance.
/// The second member tags the wave pattern and the region the axis falls
/// in, e.g. "1S- 2C- 3S- @right".
template <class Scalar>
std::pair<bool, std::string> euler_V_membership(const PrimState<Scalar>& w0,
                                                const PrimState<Scalar>& w,
                                                const GasModel<Scalar>& gas,
                                                Scalar tol = Scalar(1e-9)) {
  using std::abs;
  using std::max;
  if (!vacuum_check(w0, w, gas))
    throw VacuumFormation("euler_V_membership: R(w0, w) opens a vacuum");
  const auto sol = solve_exact(w0, w, gas);
  const auto trace = sample(sol, Scalar(0));
  const Scalar cw = sound_speed(w, gas);
  const Scalar err = max({abs(trace.rho - w.rho) / w.rho,
                          abs(trace.u - w.u) / (abs(w.u) + cw),
                          abs(trace.p - w.p) / w.p});

  const char* region = "right";
  if (Scalar(0) < sol.waves[0].head)
    region = "left";
  else if (Scalar(0) < sol.waves[0].tail)
    region = "fan1";
  else if (Scalar(0) < sol.u_star)
    region = "star-left";
  else if (Scalar(0) < sol.waves[2].head)
    region = "star-right";
  else if (Scalar(0) < sol.waves[2].tail)
    region = "fan3";
  return {err <= tol, pattern_string(sol) + " @" + region};
}

enum class RegionPlane { VelocitySound, DensityVelocity };

template <class Scalar>
struct RegionAxis {
  Scalar lo;
  Scalar step;
  int count;

  Scalar coord(int i) const { return lo + step * Scalar(i); }

  static RegionAxis from_range(Scalar lo, Scalar hi, Scalar step) {
    if (!(step > Scalar(0)) || !(hi >= lo))
      throw std::invalid_argument("RegionAxis: empty or descending range");
    const int n = int((hi - lo) / step + Scalar(1.5));
    return {lo, step, n};
  }
};

enum class NodeStatus { NonMember = 0, Member = 1, Untestable = 2 };

/// Membership tags of V(w0) over a plane of states at the entropy of w0,
/// the data behind the region plots.
template <class Scalar>
struct RegionGrid {
  RegionPlane plane;
  RegionAxis<Scalar> axis1, axis2;
  Scalar entropy_slice;
  std::vector<NodeStatus> status;    // axis1-major
  std::vector<std::string> pattern;

  int index(int i, int j) const { return i * axis2.count + j; }
  NodeStatus at(int i, int j) const { return status[index(i, j)]; }
};

/// State of a grid node; rho and p follow from the fixed entropy slice.
/// Returns false when the node does not map to a valid state.
template <class Scalar>
bool region_node_state(RegionPlane plane, Scalar coord1, Scalar coord2,
                       Scalar entropy_slice, const GasModel<Scalar>& gas,
                       PrimState<Scalar>& out) {
  using std::pow;
  if (plane == RegionPlane::VelocitySound) {
    const Scalar u = coord1, c = coord2;
    if (!(c > Scalar(0))) return false;
    const Scalar rho =
        pow(c * c / (gas.gamma * entropy_slice), Scalar(1) / gas.gm1());
    out = {rho, u, rho * c * c / gas.gamma};
  } else {
    const Scalar rho = coord1, u = coord2;
    if (!(rho > Scalar(0))) return false;
    out = {rho, u, entropy_slice * pow(rho, gas.gamma)};
  }
  return valid(out);
}

template <class Scalar>
RegionGrid<Scalar> sample_V_region(const PrimState<Scalar>& w0,
                                   RegionPlane plane,
                                   const RegionAxis<Scalar>& axis1,
                                   const RegionAxis<Scalar>& axis2,
                                   const GasModel<Scalar>& gas,
                                   Scalar tol = Scalar(1e-9)) {
  RegionGrid<Scalar> grid{plane, axis1, axis2, entropy(w0, gas), {}, {}};
  grid.status.resize(std::size_t(axis1.count) * axis2.count);
  grid.pattern.resize(grid.status.size());
  for (int i = 0; i < axis1.count; ++i) {
    for (int j = 0; j < axis2.count; ++j) {
      const int idx = grid.index(i, j);
      PrimState<Scalar> w;
      if (!region_node_state(plane, axis1.coord(i), axis2.coord(j),
                             grid.entropy_slice, gas, w) ||
          !vacuum_check(w0, w, gas)) {
        grid.status[idx] = NodeStatus::Untestable;
        grid.pattern[idx] = "vacuum";
        continue;
      }
      const auto [member, tag] = euler_V_membership(w0, w, gas, tol);
      grid.status[idx] = member ? NodeStatus::Member : NodeStatus::NonMember;
      grid.pattern[idx] = tag;
    }
  }
  return grid;
}

/// CSV serialization: columns (coord1, coord2, member, pattern) with
/// member in {1, 0, na}.
template <class Scalar>
void write_region_csv(const RegionGrid<Scalar>& grid, std::ostream& os) {
  os << "coord1,coord2,member,pattern\n";
  char buf[64];
  for (int i = 0; i < grid.axis1.count; ++i) {
    for (int j = 0; j < grid.axis2.count; ++j) {
      const int idx = grid.index(i, j);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,", double(grid.axis1.coord(i)),
                    double(grid.axis2.coord(j)));
      os << buf;
      switch (grid.status[idx]) {
        case NodeStatus::Member: os << '1'; break;
        case NodeStatus::NonMember: os << '0'; break;
        case NodeStatus::Untestable: os << "na"; break;
      }
      os << ',' << grid.pattern[idx] << '\n';
    }
  }
}

}  // namespace euler1d
