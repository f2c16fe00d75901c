#pragma once

#include <array>
#include <string>
#include <vector>

namespace euler1d::cli {

// Exit codes of the command-line tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_not_converged = 2;
inline constexpr int exit_physical_failure = 3;
inline constexpr int exit_usage = 64;

struct RiemannSpec {
  std::array<double, 3> left{1.0, 0.0, 1.0};
  std::array<double, 3> right{0.125, 0.0, 0.1};
  double gamma = 1.4;
  double time = 0.2;
  int samples = 200;
  std::string out_dir = ".";
};

struct NozzleSpec {
  int cells = 80;
  double cfl = 0.9;
  std::string inlet_bc = "riemann";   // riemann | prescribed-flux
  std::string outlet_bc = "riemann";  // riemann | extrapolation
  std::string flux = "osher";        // osher | godunov
  int max_steps = 100000;
  double residual_threshold = 1e-8;
  bool compare_exact = false;
  std::vector<int> snapshot_steps;
  std::string out_dir = ".";
};

struct RegionSpec {
  bool burgers = false;
  bool euler = false;
  std::vector<double> w0;             // one value (burgers) or rho,u,p (euler)
  double gamma = 1.4;
  std::string range;                  // burgers: lo:hi:step
  std::string plane = "u,c";          // euler: u,c | rho,u
  std::string range1, range2;         // euler axis ranges, lo:hi:step
  double tol = 1e-9;
  std::string out_dir = ".";
};

int cmd_riemann(const RiemannSpec& spec);
int cmd_nozzle(const NozzleSpec& spec);
int cmd_region(const RegionSpec& spec);

/// Full command-line front end (subcommands riemann, nozzle, region).
int run(int argc, const char* const* argv);

}  // namespace euler1d::cli
