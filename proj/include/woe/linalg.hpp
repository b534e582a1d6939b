#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace woe {

template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix,
/// with strictly positive diagonal. Throws std::invalid_argument if the
/// factorization hits a non-positive pivot.
template <class Derived>
MatrixX<typename Derived::Scalar> cholesky_lower(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw std::invalid_argument("cholesky_lower: matrix must be square");
  Eigen::LLT<MatrixX<Scalar>> llt(a);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("cholesky_lower: matrix is not positive definite");
  return llt.matrixL();
}

/// Solves L x = rhs in place for lower-triangular L.
template <class DerivedL, class Scalar>
void forward_substitute_in_place(const Eigen::MatrixBase<DerivedL>& lower,
                                 Eigen::Ref<VectorX<Scalar>> x) {
  const Eigen::Index n = lower.rows();
  if (lower.cols() != n || x.size() != n)
    throw std::invalid_argument("forward_substitute: dimension mismatch");
  for (Eigen::Index i = 0; i < n; ++i)
    if (lower(i, i) == Scalar(0))
      throw std::invalid_argument("forward_substitute: zero diagonal entry");
  lower.template triangularView<Eigen::Lower>().solveInPlace(x);
}

template <class DerivedL, class DerivedB>
VectorX<typename DerivedL::Scalar> forward_substitute(const Eigen::MatrixBase<DerivedL>& lower,
                                                      const Eigen::MatrixBase<DerivedB>& rhs) {
  using Scalar = typename DerivedL::Scalar;
  VectorX<Scalar> x = rhs;
  forward_substitute_in_place<DerivedL, Scalar>(lower, x);
  return x;
}

/// Gershgorin upper bound on the largest eigenvalue: max over columns of the
/// absolute column sum. O(D^2), never looser than lambda_1 for SPD input.
template <class Derived>
typename Derived::Scalar gershgorin_lambda1(const Eigen::MatrixBase<Derived>& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

/// A sequence of D-1 Givens rotations G(1,2)..G(1,D), stored as angle
/// cosines/sines only. Together with a sign flip it represents the orthogonal
/// map sending a reference unit vector to (-1,0,...,0) without ever forming
/// the matrix; applying it costs O(D).
template <class Scalar>
struct GivensFrame {
  VectorX<Scalar> cosines;
  VectorX<Scalar> sines;

  Eigen::Index dim() const { return cosines.size() + 1; }
};

/// Builds the frame zeroing components 2..D of v. Returns the frame and
/// beta = ||v||, the surviving first component after the sweep.
/// Rotations with both pivot components zero degenerate to the identity
/// (cos = 1, sin = 0). Throws on the zero vector.
template <class Derived>
std::pair<GivensFrame<typename Derived::Scalar>, typename Derived::Scalar> givens_init(
    const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = v.size();
  if (n < 2) throw std::invalid_argument("givens_init: need dimension >= 2");
  if (v.norm() == Scalar(0)) throw std::invalid_argument("givens_init: zero vector");

  GivensFrame<Scalar> frame{VectorX<Scalar>(n - 1), VectorX<Scalar>(n - 1)};
  Scalar v1 = v[0];
  for (Eigen::Index k = 1; k < n; ++k) {
    const Scalar w = std::hypot(v1, v[k]);
    if (w == Scalar(0)) {
      frame.cosines[k - 1] = Scalar(1);
      frame.sines[k - 1] = Scalar(0);
    } else {
      frame.cosines[k - 1] = v1 / w;
      frame.sines[k - 1] = v[k] / w;
      v1 = w;
    }
  }
  return {std::move(frame), v1};
}

enum class RotationDirection { Forth, Back };

/// Applies G(1,2)..G(1,D) left to right in index order.
template <class Scalar>
void rotations_forth_in_place(const GivensFrame<Scalar>& frame, Eigen::Ref<VectorX<Scalar>> x) {
  if (x.size() != frame.dim()) throw std::invalid_argument("rotations: dimension mismatch");
  for (Eigen::Index k = 1; k < x.size(); ++k) {
    const Scalar c = frame.cosines[k - 1], s = frame.sines[k - 1];
    const Scalar x1 = c * x[0] + s * x[k];
    x[k] = -s * x[0] + c * x[k];
    x[0] = x1;
  }
}

/// Applies the transposed rotations in reverse order D..2 (the inverse sweep).
template <class Scalar>
void rotations_back_in_place(const GivensFrame<Scalar>& frame, Eigen::Ref<VectorX<Scalar>> x) {
  if (x.size() != frame.dim()) throw std::invalid_argument("rotations: dimension mismatch");
  for (Eigen::Index k = x.size() - 1; k >= 1; --k) {
    const Scalar c = frame.cosines[k - 1], s = frame.sines[k - 1];
    const Scalar x1 = c * x[0] - s * x[k];
    x[k] = s * x[0] + c * x[k];
    x[0] = x1;
  }
}

template <class Scalar, class Derived>
VectorX<Scalar> apply_rotations(const GivensFrame<Scalar>& frame,
                                const Eigen::MatrixBase<Derived>& v, RotationDirection direction) {
  VectorX<Scalar> x = v;
  if (direction == RotationDirection::Forth)
    rotations_forth_in_place(frame, x);
  else
    rotations_back_in_place(frame, x);
  return x;
}

/// Q v = -ROTATIONS(v, forth); with the frame built from the outward normal N
/// this realizes Q N = (-1, 0, ..., 0)^T.
template <class Scalar>
void apply_q_in_place(const GivensFrame<Scalar>& frame, Eigen::Ref<VectorX<Scalar>> x) {
  rotations_forth_in_place(frame, x);
  x = -x;
}

/// Q^T v = -ROTATIONS(v, back).
template <class Scalar>
void apply_qt_in_place(const GivensFrame<Scalar>& frame, Eigen::Ref<VectorX<Scalar>> x) {
  rotations_back_in_place(frame, x);
  x = -x;
}

template <class Scalar, class Derived>
VectorX<Scalar> apply_q(const GivensFrame<Scalar>& frame, const Eigen::MatrixBase<Derived>& v) {
  VectorX<Scalar> x = v;
  apply_q_in_place(frame, x);
  return x;
}

template <class Scalar, class Derived>
VectorX<Scalar> apply_qt(const GivensFrame<Scalar>& frame, const Eigen::MatrixBase<Derived>& v) {
  VectorX<Scalar> x = v;
  apply_qt_in_place(frame, x);
  return x;
}

/// First column of A_hat = Q A Q^T for A = sigma sigma^T and the frame built
/// from the unit normal N: equals ROTATIONS(sigma sigma^T N, forth). The
/// leading entry is strictly positive for SPD A.
template <class DerivedS, class DerivedN, class Scalar>
VectorX<Scalar> a_hat_first_column(const Eigen::MatrixBase<DerivedS>& sigma,
                                   const Eigen::MatrixBase<DerivedN>& normal,
                                   const GivensFrame<Scalar>& frame) {
  VectorX<Scalar> col = sigma * (sigma.transpose() * normal);
  rotations_forth_in_place(frame, col);
  return col;
}

/// Computes Lambda_* nu where Lambda_* Lambda_*^T equals the trailing
/// (D-1)x(D-1) block of Q A Q^T, recycling the lower-triangular factor sigma
/// of A in O(D^2). The generic branch uses the rank-one ansatz
/// Lambda_* = Q_* sigma_* (I + alpha z z^T) with sigma_* z = s - (s11/N1) Nvec;
/// it degenerates when N1 = 0, where the closed form
/// Lambda_* = Q_* sigma_* + w r^T / ||r|| with sigma_* r = Nvec applies.
template <class DerivedS, class DerivedN, class DerivedV, class Scalar>
VectorX<Scalar> lambda_star_apply(const Eigen::MatrixBase<DerivedS>& sigma,
                                  const GivensFrame<Scalar>& frame,
                                  const Eigen::MatrixBase<DerivedN>& normal,
                                  const Eigen::MatrixBase<DerivedV>& nu, Scalar n1_tol) {
  const Eigen::Index n = sigma.rows();
  if (n < 2) throw std::invalid_argument("lambda_star_apply: need dimension >= 2");
  if (sigma.cols() != n || normal.size() != n || nu.size() != n - 1 || frame.dim() != n)
    throw std::invalid_argument("lambda_star_apply: dimension mismatch");

  const auto sigma_star = sigma.bottomRightCorner(n - 1, n - 1);
  const VectorX<Scalar> s = sigma.col(0).tail(n - 1);
  const Scalar s11 = sigma(0, 0);

  // q2 = trailing block of Q e1; Q_* v = trailing block of Q (0; v).
  VectorX<Scalar> pad = VectorX<Scalar>::Zero(n);
  pad[0] = Scalar(1);
  apply_q_in_place(frame, pad);
  const VectorX<Scalar> q2 = pad.tail(n - 1);

  pad[0] = Scalar(0);
  pad.tail(n - 1) = sigma_star.template triangularView<Eigen::Lower>() * nu;
  apply_q_in_place(frame, pad);
  VectorX<Scalar> result = pad.tail(n - 1);  // Q_* (sigma_* nu)

  pad[0] = Scalar(0);
  pad.tail(n - 1) = s;
  apply_q_in_place(frame, pad);
  const VectorX<Scalar> w = s11 * q2 + pad.tail(n - 1);

  if (std::abs(normal[0]) > n1_tol) {
    VectorX<Scalar> z = s - (s11 / normal[0]) * normal.tail(n - 1);
    forward_substitute_in_place<decltype(sigma_star), Scalar>(sigma_star, z);
    const Scalar z2 = z.squaredNorm();
    if (z2 > Scalar(0)) result += (std::sqrt(Scalar(1) + z2) - Scalar(1)) * (z.dot(nu) / z2) * w;
  } else {
    VectorX<Scalar> r = normal.tail(n - 1);
    forward_substitute_in_place<decltype(sigma_star), Scalar>(sigma_star, r);
    result += (r.dot(nu) / r.norm()) * w;
  }
  return result;
}

}  // namespace woe
