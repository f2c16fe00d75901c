#include "euler1d/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "euler1d/boundary_sets.hpp"
#include "euler1d/io.hpp"
#include "euler1d/solver.hpp"

namespace euler1d::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

fs::path prepare_out_dir(const std::string& out_dir) {
  fs::path dir(out_dir);
  fs::create_directories(dir);
  return dir;
}

void write_manifest(const fs::path& dir, const std::string& command,
                    json config) {
  write_text(dir / "manifest.json",
             json{{"command", command}, {"config", std::move(config)}}
                 .dump(2) +
                 "\n");
}

int physical_failure(const PhysicsError& e) {
  const char* type = "PhysicsError";
  if (dynamic_cast<const VacuumFormation*>(&e)) type = "VacuumFormation";
  if (dynamic_cast<const NoConvergence*>(&e)) type = "NoConvergence";
  if (dynamic_cast<const NonPhysicalState*>(&e)) type = "NonPhysicalState";
  if (dynamic_cast<const NoIntersection*>(&e)) type = "NoIntersection";
  if (dynamic_cast<const AmbiguousResolution*>(&e)) type = "AmbiguousResolution";
  std::cout << json{{"error", {{"type", type}, {"message", e.what()}}}}.dump()
            << "\n";
  return exit_physical_failure;
}

struct Range {
  double lo, hi, step;
};

Range parse_range(const std::string& text) {
  Range r{};
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &r.lo, &r.hi, &r.step,
                  &tail) != 3)
    throw UsageError("range must be lo:hi:step, got '" + text + "'");
  if (!(r.step > 0) || !(r.hi >= r.lo))
    throw UsageError("empty range '" + text + "'");
  return r;
}

PrimState<double> state_from(const std::array<double, 3>& triple) {
  return {triple[0], triple[1], triple[2]};
}

json state_json(const PrimState<double>& v) {
  return {{"rho", v.rho}, {"u", v.u}, {"p", v.p}};
}

// Applies a JSON config file onto a spec field by field; unknown keys are
// rejected so typos cannot silently change a run.
template <class Apply>
void apply_config(const std::string& path, const char* command,
                  const Apply& apply) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot read config file " + path);
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw UsageError("config file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!apply(key, value))
      throw UsageError(std::string("config key '") + key +
                       "' is not understood by the " + command + " command");
  }
}

template <class T>
bool assign(const json& value, T& out) {
  try {
    out = value.get<T>();
    return true;
  } catch (const json::exception&) {
    return false;
  }
}

std::optional<std::string> find_config_flag(int argc,
                                            const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return std::nullopt;
}

}  // namespace

int cmd_riemann(const RiemannSpec& spec) {
  try {
    if (!(spec.gamma > 1)) throw UsageError("gamma must exceed 1");
    if (!(spec.time > 0)) throw UsageError("time must be positive");
    if (spec.samples < 2) throw UsageError("need at least 2 samples");
    const auto wl = state_from(spec.left);
    const auto wr = state_from(spec.right);
    if (!valid(wl) || !valid(wr))
      throw UsageError("states need positive density and pressure");

    const auto dir = prepare_out_dir(spec.out_dir);
    write_manifest(dir, "riemann",
                   {{"left", spec.left},
                    {"right", spec.right},
                    {"gamma", spec.gamma},
                    {"time", spec.time},
                    {"samples", spec.samples},
                    {"out", spec.out_dir}});

    const GasModel<double> gas{spec.gamma};
    RiemannSolution<double> sol{gas, wl, wr, wl, wr, {}, 0, 0};
    try {
      sol = solve_exact(wl, wr, gas);
    } catch (const PhysicsError& e) {
      return physical_failure(e);
    }

    json waves = json::array();
    for (const auto& w : sol.waves)
      waves.push_back({{"family", w.family},
                       {"kind", to_string(w.kind)},
                       {"head", w.head},
                       {"tail", w.tail}});
    write_text(dir / "summary.json",
               json{{"p_star", sol.p_star},
                    {"u_star", sol.u_star},
                    {"star_left", state_json(sol.star_left)},
                    {"star_right", state_json(sol.star_right)},
                    {"waves", waves},
                    {"pattern", pattern_string(sol)}}
                       .dump(2) +
                   "\n");

    std::string csv = "x,rho,u,p\n";
    char buf[120];
    for (int i = 0; i < spec.samples; ++i) {
      const double x = double(i) / (spec.samples - 1);
      const auto v = sample(sol, (x - 0.5) / spec.time);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", x, v.rho,
                    v.u, v.p);
      csv += buf;
    }
    write_text(dir / "profile.csv", csv);
    return exit_ok;
  } catch (const UsageError& e) {
    std::cerr << "riemann: " << e.what() << "\n";
    return exit_usage;
  }
}

int cmd_nozzle(const NozzleSpec& spec) {
  try {
    if (spec.cells < 2) throw UsageError("need at least 2 cells");
    if (!(spec.cfl > 0) || spec.cfl > 1) throw UsageError("cfl must lie in (0, 1]");
    if (spec.max_steps < 1) throw UsageError("max-steps must be positive");
    if (!(spec.residual_threshold > 0))
      throw UsageError("residual-threshold must be positive");
    if (spec.inlet_bc != "riemann" && spec.inlet_bc != "prescribed-flux")
      throw UsageError("inlet-bc must be riemann or prescribed-flux");
    if (spec.outlet_bc != "riemann" && spec.outlet_bc != "extrapolation")
      throw UsageError("outlet-bc must be riemann or extrapolation");
    if (spec.flux != "osher" && spec.flux != "godunov")
      throw UsageError("flux must be osher or godunov");

    const auto dir = prepare_out_dir(spec.out_dir);
    write_manifest(dir, "nozzle",
                   {{"cells", spec.cells},
                    {"cfl", spec.cfl},
                    {"inlet-bc", spec.inlet_bc},
                    {"outlet-bc", spec.outlet_bc},
                    {"flux", spec.flux},
                    {"max-steps", spec.max_steps},
                    {"residual-threshold", spec.residual_threshold},
                    {"compare-exact", spec.compare_exact},
                    {"snapshot-steps", spec.snapshot_steps},
                    {"out", spec.out_dir}});

    auto config = divergent_nozzle_config<double>(
        spec.cells, spec.cfl, spec.inlet_bc == "prescribed-flux",
        spec.outlet_bc == "extrapolation",
        spec.flux == "osher" ? FluxScheme::Osher : FluxScheme::Godunov,
        spec.max_steps, spec.residual_threshold);
    config.snapshot_steps = spec.snapshot_steps;

    RunReport<double> rep;
    try {
      rep = run_to_steady(config);
    } catch (const PhysicsError& e) {
      return physical_failure(e);
    }

    json report = report_to_json(rep);
    for (const auto& snap : rep.snapshots) {
      std::ostringstream os;
      write_snapshot_csv(os, config.mesh, snap.prim, config.gas);
      const std::string name = snap.step == rep.steps
                                   ? std::string("snapshot_final.csv")
                                   : "snapshot_" + std::to_string(snap.step) +
                                         ".csv";
      write_text(dir / name, os.str());
    }

    if (spec.compare_exact) {
      const auto inlet = divergent_nozzle_inlet<double>();
      std::vector<PrimState<double>> exact;
      double num = 0, den = 0;
      const auto& final_prim = rep.snapshots.back().prim;
      for (int j = 0; j < spec.cells; ++j) {
        const auto ex =
            exact_nozzle_steady(config.mesh.center(j), inlet, config.gas);
        exact.push_back(ex);
        num += std::abs(mach_number(final_prim[j], config.gas) -
                        mach_number(ex, config.gas));
        den += mach_number(ex, config.gas);
      }
      std::ostringstream os;
      write_snapshot_csv(os, config.mesh, exact, config.gas);
      write_text(dir / "exact_profile.csv", os.str());
      report["l1_mach_rel_error"] = num / den;
    }
    write_text(dir / "report.json", report.dump(2) + "\n");
    return rep.converged ? exit_ok : exit_not_converged;
  } catch (const UsageError& e) {
    std::cerr << "nozzle: " << e.what() << "\n";
    return exit_usage;
  }
}

int cmd_region(const RegionSpec& spec) {
  try {
    if (spec.burgers == spec.euler)
      throw UsageError("choose exactly one of --burgers / --euler");
    if (!(spec.gamma > 1)) throw UsageError("gamma must exceed 1");
    const auto dir = prepare_out_dir(spec.out_dir);

    if (spec.burgers) {
      if (spec.w0.size() != 1)
        throw UsageError("--burgers needs a scalar --w0");
      const Range r = parse_range(spec.range);
      write_manifest(dir, "region",
                     {{"burgers", true},
                      {"w0", spec.w0},
                      {"range", spec.range},
                      {"out", spec.out_dir}});
      const double w0 = spec.w0[0];
      std::string csv = "w,closed,kruzkov\n";
      char buf[80];
      const int n = int((r.hi - r.lo) / r.step + 1.5);
      for (int i = 0; i < n; ++i) {
        const double w = r.lo + i * r.step;
        std::snprintf(buf, sizeof buf, "%.17g,%d,%d\n", w,
                      burgers_E_closed(w0, w) ? 1 : 0,
                      burgers_E_kruzkov(w0, w) ? 1 : 0);
        csv += buf;
      }
      write_text(dir / "region.csv", csv);
      return exit_ok;
    }

    if (spec.w0.size() != 3)
      throw UsageError("--euler needs --w0 rho,u,p");
    RegionPlane plane;
    if (spec.plane == "u,c")
      plane = RegionPlane::VelocitySound;
    else if (spec.plane == "rho,u")
      plane = RegionPlane::DensityVelocity;
    else
      throw UsageError("plane must be u,c or rho,u");
    const Range r1 = parse_range(spec.range1);
    const Range r2 = parse_range(spec.range2);
    const auto w0 = state_from({spec.w0[0], spec.w0[1], spec.w0[2]});
    if (!valid(w0)) throw UsageError("w0 needs positive density and pressure");
    if (!(spec.tol > 0)) throw UsageError("tol must be positive");

    write_manifest(dir, "region",
                   {{"euler", true},
                    {"w0", spec.w0},
                    {"gamma", spec.gamma},
                    {"plane", spec.plane},
                    {"range1", spec.range1},
                    {"range2", spec.range2},
                    {"tol", spec.tol},
                    {"out", spec.out_dir}});

    const GasModel<double> gas{spec.gamma};
    const auto grid = sample_V_region(
        w0, plane, RegionAxis<double>::from_range(r1.lo, r1.hi, r1.step),
        RegionAxis<double>::from_range(r2.lo, r2.hi, r2.step), gas, spec.tol);
    std::ostringstream os;
    write_region_csv(grid, os);
    write_text(dir / "region.csv", os.str());
    return exit_ok;
  } catch (const UsageError& e) {
    std::cerr << "region: " << e.what() << "\n";
    return exit_usage;
  }
}

int run(int argc, const char* const* argv) {
  RiemannSpec rspec;
  NozzleSpec nspec;
  RegionSpec gspec;

  // A config file supplies defaults; explicit flags override it below.
  try {
    if (const auto config = find_config_flag(argc, argv)) {
      const std::string command = argc > 1 ? argv[1] : "";
      if (command == "riemann") {
        apply_config(*config, "riemann", [&](const std::string& k, const json& v) {
          if (k == "left") return assign(v, rspec.left);
          if (k == "right") return assign(v, rspec.right);
          if (k == "gamma") return assign(v, rspec.gamma);
          if (k == "time") return assign(v, rspec.time);
          if (k == "samples") return assign(v, rspec.samples);
          if (k == "out") return assign(v, rspec.out_dir);
          return false;
        });
      } else if (command == "nozzle") {
        apply_config(*config, "nozzle", [&](const std::string& k, const json& v) {
          if (k == "cells") return assign(v, nspec.cells);
          if (k == "cfl") return assign(v, nspec.cfl);
          if (k == "inlet-bc") return assign(v, nspec.inlet_bc);
          if (k == "outlet-bc") return assign(v, nspec.outlet_bc);
          if (k == "flux") return assign(v, nspec.flux);
          if (k == "max-steps") return assign(v, nspec.max_steps);
          if (k == "residual-threshold")
            return assign(v, nspec.residual_threshold);
          if (k == "compare-exact") return assign(v, nspec.compare_exact);
          if (k == "snapshot-steps") return assign(v, nspec.snapshot_steps);
          if (k == "out") return assign(v, nspec.out_dir);
          return false;
        });
      } else if (command == "region") {
        apply_config(*config, "region", [&](const std::string& k, const json& v) {
          if (k == "burgers") return assign(v, gspec.burgers);
          if (k == "euler") return assign(v, gspec.euler);
          if (k == "w0") return assign(v, gspec.w0);
          if (k == "gamma") return assign(v, gspec.gamma);
          if (k == "range") return assign(v, gspec.range);
          if (k == "plane") return assign(v, gspec.plane);
          if (k == "range1") return assign(v, gspec.range1);
          if (k == "range2") return assign(v, gspec.range2);
          if (k == "tol") return assign(v, gspec.tol);
          if (k == "out") return assign(v, gspec.out_dir);
          return false;
        });
      } else {
        throw UsageError("--config requires a subcommand");
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "euler1d: " << e.what() << "\n";
    return exit_usage;
  }

  CLI::App app{"Finite-volume toolkit for the 1D Euler equations"};
  app.require_subcommand(1);
  std::string config_path;  // consumed above; declared so CLI11 accepts it

  auto* r = app.add_subcommand("riemann", "solve one Riemann problem");
  r->add_option("--config", config_path, "JSON config file");
  r->add_option("--left", rspec.left, "left state rho,u,p")->delimiter(',');
  r->add_option("--right", rspec.right, "right state rho,u,p")->delimiter(',');
  r->add_option("--gamma", rspec.gamma, "adiabatic exponent");
  r->add_option("--time", rspec.time, "profile time");
  r->add_option("--samples", rspec.samples, "profile sample count");
  r->add_option("--out", rspec.out_dir, "output directory");

  auto* n = app.add_subcommand("nozzle", "divergent-nozzle experiment");
  n->add_option("--config", config_path, "JSON config file");
  n->add_option("--cells", nspec.cells, "mesh cells");
  n->add_option("--cfl", nspec.cfl, "CFL number");
  n->add_option("--inlet-bc", nspec.inlet_bc, "riemann | prescribed-flux");
  n->add_option("--outlet-bc", nspec.outlet_bc, "riemann | extrapolation");
  n->add_option("--flux", nspec.flux, "osher | godunov");
  n->add_option("--max-steps", nspec.max_steps, "step cap");
  n->add_option("--residual-threshold", nspec.residual_threshold,
                "steady-state residual threshold");
  n->add_flag("--compare-exact", nspec.compare_exact,
              "emit the exact steady profile and error norms");
  n->add_option("--snapshot-steps", nspec.snapshot_steps,
                "steps at which to write snapshots")
      ->delimiter(',');
  n->add_option("--out", nspec.out_dir, "output directory");

  auto* g = app.add_subcommand("region", "boundary-set region sampling");
  g->add_option("--config", config_path, "JSON config file");
  g->add_flag("--burgers", gspec.burgers, "Burgers boundary sets");
  g->add_flag("--euler", gspec.euler, "Euler trace-set region");
  g->add_option("--w0", gspec.w0, "boundary state (scalar or rho,u,p)")
      ->delimiter(',');
  g->add_option("--gamma", gspec.gamma, "adiabatic exponent");
  g->add_option("--range", gspec.range, "scalar range lo:hi:step");
  g->add_option("--plane", gspec.plane, "u,c | rho,u");
  g->add_option("--range1", gspec.range1, "first axis lo:hi:step");
  g->add_option("--range2", gspec.range2, "second axis lo:hi:step");
  g->add_option("--tol", gspec.tol, "membership tolerance");
  g->add_option("--out", gspec.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  if (r->parsed()) return cmd_riemann(rspec);
  if (n->parsed()) return cmd_nozzle(nspec);
  return cmd_region(gspec);
}

}  // namespace euler1d::cli
