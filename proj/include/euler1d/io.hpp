#pragma once

#include <cstdio>
#include <ostream>
#include <vector>

#include "json.hpp"

#include "euler1d/gas.hpp"
#include "euler1d/solver.hpp"

namespace euler1d {

/// Snapshot CSV: columns (x, rho, u, p, mach, entropy), full double
/// precision so downstream comparisons are exact.
template <class Scalar>
void write_snapshot_csv(std::ostream& os, const Mesh<Scalar>& mesh,
                        const std::vector<PrimState<Scalar>>& prim,
                        const GasModel<Scalar>& gas) {
  os << "x,rho,u,p,mach,entropy\n";
  char buf[160];
  for (std::size_t j = 0; j < prim.size(); ++j) {
    const auto& v = prim[j];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  double(mesh.center(int(j))), double(v.rho), double(v.u),
                  double(v.p), double(mach_number(v, gas)),
                  double(entropy(v, gas)));
    os << buf;
  }
}

template <class Scalar>
nlohmann::json report_to_json(const RunReport<Scalar>& rep) {
  return {{"steps", rep.steps},
          {"converged", rep.converged},
          {"residuals", rep.residuals},
          {"u_left", rep.u_left},
          {"u_right", rep.u_right}};
}

}  // namespace euler1d
