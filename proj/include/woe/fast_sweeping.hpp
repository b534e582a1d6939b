#pragma once

#include "woe/grid.hpp"

#include <Eigen/Dense>

namespace woe {

/// Viscosity solution of the anisotropic Eikonal equation
///   sqrt(grad(Psi)^T A grad(Psi)) = 1,  Psi > 0 inside,  Psi = 0 outside,
/// for constant SPD A, by Gauss-Seidel Lax-Friedrichs fast sweeping over the
/// four axis orderings. Psi(x) is the arrival time at x of an ellipsoidal
/// front with semiaxes lambda_i * t along the eigenvectors of A; the level
/// set through x is the largest A-shaped ellipsoid centred at x still inside
/// the domain. Only D = 2 is supported. Interior nodes (mask > 0.5) must not
/// touch the grid border. Throws on non-SPD input and on failure to reach
/// tol within max_sweeps.
GridField fast_sweep_anisotropic(const Eigen::Matrix2d& a, const GridField& interior_mask,
                                 double tol = 1e-8, int max_sweeps = 10000);

}  // namespace woe
