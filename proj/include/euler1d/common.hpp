#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace euler1d {

template <class Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

template <class Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;

/// Base class for all failures of the physical algorithms (as opposed to
/// programming errors, which use the standard logic_error family).
struct PhysicsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A state with non-positive density or pressure was produced or requested.
struct NonPhysicalState : PhysicsError {
  using PhysicsError::PhysicsError;
};

/// The wave construction would open a vacuum region.
struct VacuumFormation : PhysicsError {
  using PhysicsError::PhysicsError;
};

/// An iterative solve exceeded its iteration cap.
struct NoConvergence : PhysicsError {
  using PhysicsError::PhysicsError;
};

/// A wave curve does not intersect the requested boundary manifold.
struct NoIntersection : PhysicsError {
  using PhysicsError::PhysicsError;
};

/// Several admissible intersections exist and no branch rule separates them.
struct AmbiguousResolution : PhysicsError {
  using PhysicsError::PhysicsError;
};

/// The steady area-Mach relation has no supersonic solution at this station.
struct NoSupersonicBranch : PhysicsError {
  using PhysicsError::PhysicsError;
};

enum class Side { Left, Right };

/// Outward normal of the 1D domain at the given side.
constexpr int outward_normal(Side s) { return s == Side::Left ? -1 : +1; }

}  // namespace euler1d
