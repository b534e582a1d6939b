#include "woe/fast_sweeping.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace woe {

GridField fast_sweep_anisotropic(const Eigen::Matrix2d& a, const GridField& interior_mask,
                                 double tol, int max_sweeps) {
  interior_mask.check();
  if (interior_mask.dim() != 2)
    throw std::invalid_argument("fast_sweep_anisotropic: only D = 2 is supported");
  if (tol <= 0.0) throw std::invalid_argument("fast_sweep_anisotropic: tol must be positive");
  if (std::abs(a(0, 1) - a(1, 0)) > 1e-12 * a.norm() || a(0, 0) <= 0.0 ||
      a.determinant() <= 0.0)
    throw std::invalid_argument("fast_sweep_anisotropic: matrix must be SPD");

  const Eigen::Index nx = interior_mask.shape[0];
  const Eigen::Index ny = interior_mask.shape[1];
  const double hx = interior_mask.spacing[0];
  const double hy = interior_mask.spacing[1];

  auto at = [ny](Eigen::Index i, Eigen::Index j) { return i * ny + j; };
  auto is_inside = [&](Eigen::Index i, Eigen::Index j) {
    return interior_mask.values[at(i, j)] > 0.5;
  };
  for (Eigen::Index i = 0; i < nx; ++i)
    for (Eigen::Index j = 0; j < ny; ++j)
      if (is_inside(i, j) && (i == 0 || i + 1 == nx || j == 0 || j + 1 == ny))
        throw std::invalid_argument(
            "fast_sweep_anisotropic: interior nodes must not touch the grid border");

  GridField psi{interior_mask.origin, interior_mask.spacing, interior_mask.shape, {}};
  psi.values = Eigen::VectorXd::Zero(nx * ny);
  const double init = 1e8;
  for (Eigen::Index i = 0; i < nx; ++i)
    for (Eigen::Index j = 0; j < ny; ++j)
      if (is_inside(i, j)) psi.values[at(i, j)] = init;

  // Artificial viscosities bound |dH/dp_i| for H(p) = sqrt(p^T A p):
  // |(Ap)_i| <= sqrt(a_ii) * H(p) by Cauchy-Schwarz in the A inner product.
  const double sx = std::sqrt(a(0, 0));
  const double sy = std::sqrt(a(1, 1));
  const double denom = sx / hx + sy / hy;

  double max_change = 0.0;
  auto update = [&](Eigen::Index i, Eigen::Index j) {
    if (!is_inside(i, j)) return;
    const double e = psi.values[at(i + 1, j)], w = psi.values[at(i - 1, j)];
    const double n = psi.values[at(i, j + 1)], s = psi.values[at(i, j - 1)];
    const double p = (e - w) / (2.0 * hx);
    const double q = (n - s) / (2.0 * hy);
    const double ham = std::sqrt(std::max(0.0, a(0, 0) * p * p + 2.0 * a(0, 1) * p * q +
                                                   a(1, 1) * q * q));
    double cand = (1.0 - ham + sx * (e + w) / (2.0 * hx) + sy * (n + s) / (2.0 * hy)) / denom;
    cand = std::max(cand, 0.0);
    double& value = psi.values[at(i, j)];
    if (cand < value) {
      max_change = std::max(max_change, value - cand);
      value = cand;
    }
  };

  for (int sweep = 0; sweep < max_sweeps; sweep += 4) {
    max_change = 0.0;
    for (Eigen::Index i = 1; i + 1 < nx; ++i)
      for (Eigen::Index j = 1; j + 1 < ny; ++j) update(i, j);
    for (Eigen::Index i = nx - 2; i >= 1; --i)
      for (Eigen::Index j = 1; j + 1 < ny; ++j) update(i, j);
    for (Eigen::Index i = nx - 2; i >= 1; --i)
      for (Eigen::Index j = ny - 2; j >= 1; --j) update(i, j);
    for (Eigen::Index i = 1; i + 1 < nx; ++i)
      for (Eigen::Index j = ny - 2; j >= 1; --j) update(i, j);
    if (max_change < tol) return psi;
  }
  throw std::runtime_error("fast_sweep_anisotropic: no convergence within sweep cap, residual " +
                           std::to_string(max_change));
}

}  // namespace woe
