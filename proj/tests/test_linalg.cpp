#include <woe/linalg.hpp>

#include "doctest.h"
#include "oracles.hpp"

#include <random>

using Eigen::MatrixXd;
using Eigen::VectorXd;
using namespace woe;

namespace {

MatrixXd min_index_matrix(Eigen::Index n) {
  MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = double(std::min(i, j) + 1);
  return a;
}

MatrixXd example3_a() {
  MatrixXd a(2, 2);
  a << 8.0, -2.71, -2.71, 1.0;
  return a;
}

}  // namespace

TEST_CASE("cholesky_lower basics") {
  CHECK(cholesky_lower(MatrixXd::Identity(3, 3)).isApprox(MatrixXd::Identity(3, 3), 1e-14));

  MatrixXd s = cholesky_lower(example3_a());
  CHECK(s(0, 1) == 0.0);
  CHECK(s(0, 0) == doctest::Approx(2.8284).epsilon(1e-4));
  CHECK(s(1, 0) == doctest::Approx(-0.9581).epsilon(1e-4));
  CHECK(s(1, 1) == doctest::Approx(0.2863).epsilon(1e-3));

  MatrixXd ones_lower = cholesky_lower(min_index_matrix(4));
  MatrixXd expected = MatrixXd::Zero(4, 4);
  expected.triangularView<Eigen::Lower>().setOnes();
  CHECK((ones_lower - expected).cwiseAbs().maxCoeff() < 1e-12);

  MatrixXd not_spd(2, 2);
  not_spd << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(cholesky_lower(not_spd), std::invalid_argument);
}

TEST_CASE("cholesky_lower reproduces A on random SPD input") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    for (Eigen::Index d = 2; d <= 8; ++d) {
      MatrixXd a = oracles::random_spd(d, rng);
      MatrixXd s = cholesky_lower(a);
      CHECK((s * s.transpose() - a).cwiseAbs().maxCoeff() < 1e-12 * a.norm());
      CHECK(s.diagonal().minCoeff() > 0.0);
    }
  }
}

TEST_CASE("forward_substitute") {
  VectorXd b(3);
  b << 1.0, 2.0, 3.0;
  CHECK(forward_substitute(MatrixXd::Identity(3, 3), b).isApprox(b, 1e-14));

  MatrixXd ones = MatrixXd::Zero(3, 3);
  ones.triangularView<Eigen::Lower>().setOnes();
  VectorXd x = forward_substitute(ones, b);
  VectorXd via_dense = ones.fullPivLu().solve(b);  // generic solver oracle
  CHECK(x.isApprox(via_dense, 1e-12));
  CHECK(x.isApprox(VectorXd::Ones(3), 1e-12));

  MatrixXd diag = VectorXd{{2.0, 4.0}}.asDiagonal();
  VectorXd rhs(2);
  rhs << 2.0, 8.0;
  VectorXd sol = forward_substitute(diag, rhs);
  CHECK(sol[0] == doctest::Approx(1.0));
  CHECK(sol[1] == doctest::Approx(2.0));

  MatrixXd zero_diag = ones;
  zero_diag(1, 1) = 0.0;
  CHECK_THROWS_AS(forward_substitute(zero_diag, b), std::invalid_argument);
}

TEST_CASE("forward_substitute inverts L*") {
  std::mt19937_64 rng(22);
  for (int rep = 0; rep < 200; ++rep) {
    Eigen::Index d = 2 + rep % 7;
    MatrixXd l = oracles::random_lower(d, rng);
    VectorXd v = VectorXd::Random(d);
    VectorXd back = forward_substitute(l, (l * v).eval());
    CHECK((back - v).cwiseAbs().maxCoeff() < 1e-12 * (1.0 + v.norm()));
  }
}

TEST_CASE("gershgorin_lambda1 examples") {
  CHECK(gershgorin_lambda1(MatrixXd::Identity(4, 4)) == doctest::Approx(1.0));

  MatrixXd a3 = min_index_matrix(3);
  CHECK(gershgorin_lambda1(a3) == doctest::Approx(6.0));
  double lam3 = oracles::lambda1_eigensolve(a3);
  CHECK(lam3 == doctest::Approx(5.05).epsilon(0.01));
  CHECK(gershgorin_lambda1(a3) >= lam3);

  MatrixXd aex3 = example3_a();
  CHECK(gershgorin_lambda1(aex3) == doctest::Approx(10.71));
  CHECK(gershgorin_lambda1(aex3) >= oracles::lambda1_eigensolve(aex3));
}

TEST_CASE("gershgorin bound dominates lambda1 on random SPD matrices") {
  std::mt19937_64 rng(33);
  for (Eigen::Index d = 2; d <= 10; ++d) {
    for (int rep = 0; rep < 100; ++rep) {
      MatrixXd a = oracles::random_spd(d, rng);
      CHECK(gershgorin_lambda1(a) >= oracles::lambda1_eigensolve(a));
    }
  }
}

TEST_CASE("givens_init examples") {
  VectorXd v(2);
  v << 3.0, 4.0;
  auto [frame, beta] = givens_init(v);
  CHECK(frame.cosines[0] == doctest::Approx(0.6));
  CHECK(frame.sines[0] == doctest::Approx(0.8));
  CHECK(beta == doctest::Approx(5.0));

  VectorXd e1 = VectorXd::Zero(5);
  e1[0] = 1.0;
  auto [f1, b1] = givens_init(e1);
  CHECK(f1.cosines.isApprox(VectorXd::Ones(4)));
  CHECK(f1.sines.cwiseAbs().maxCoeff() == 0.0);
  CHECK(b1 == doctest::Approx(1.0));

  VectorXd z(3);
  z << 0.0, 0.0, 1.0;
  auto [f2, b2] = givens_init(z);
  CHECK(f2.cosines[0] == 1.0);  // 0/0 convention
  CHECK(f2.sines[0] == 0.0);
  CHECK(f2.sines[1] == doctest::Approx(1.0));
  CHECK(b2 == doctest::Approx(1.0));
  // sequential application oracle: the sweep maps z to (||z||, 0, 0)
  VectorXd swept = apply_rotations(f2, z, RotationDirection::Forth);
  CHECK(swept[0] == doctest::Approx(1.0));
  CHECK(std::abs(swept[1]) < 1e-15);
  CHECK(std::abs(swept[2]) < 1e-15);

  CHECK_THROWS_AS(givens_init(VectorXd::Zero(4)), std::invalid_argument);
}

TEST_CASE("rotation frame properties against explicit assembly") {
  std::mt19937_64 rng(44);
  for (Eigen::Index d = 2; d <= 8; ++d) {
    for (int rep = 0; rep < 100; ++rep) {
      std::uniform_real_distribution<double> u(-2.0, 2.0);
      VectorXd v(d);
      for (Eigen::Index i = 0; i < d; ++i) v[i] = u(rng);
      if (v.norm() == 0.0) continue;
      auto [frame, beta] = givens_init(v);
      CHECK(beta == doctest::Approx(v.norm()).epsilon(1e-12));
      CHECK(((frame.cosines.array().square() + frame.sines.array().square()) - 1.0)
                .abs()
                .maxCoeff() < 1e-12);

      MatrixXd g = oracles::assemble_givens(frame);
      // Minor removing first row/column is lower triangular
      MatrixXd g_star = g.bottomRightCorner(d - 1, d - 1);
      CHECK(g_star.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().cwiseAbs().maxCoeff() <
            1e-12);
      VectorXd gv = g * v;
      CHECK(gv[0] == doctest::Approx(v.norm()).epsilon(1e-12));
      CHECK(gv.tail(d - 1).cwiseAbs().maxCoeff() < 1e-12 * (1.0 + v.norm()));

      MatrixXd q = oracles::assemble_q(frame);
      CHECK((q * q.transpose() - MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("apply_q maps the normal to -e1 and is orthogonal") {
  std::mt19937_64 rng(55);
  for (Eigen::Index d = 2; d <= 8; ++d) {
    VectorXd n = oracles::random_unit(d, rng);
    auto [frame, beta] = givens_init(n);
    VectorXd qn = apply_q(frame, n);
    CHECK(qn[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(qn.tail(d - 1).cwiseAbs().maxCoeff() < 1e-12);

    VectorXd v = VectorXd::Random(d);
    VectorXd roundtrip = apply_qt(frame, apply_q(frame, v).eval());
    CHECK((roundtrip - v).cwiseAbs().maxCoeff() < 1e-12);
  }

  VectorXd n2(2);
  n2 << 0.0, 1.0;
  auto [frame2, b2] = givens_init(n2);
  VectorXd out = apply_q(frame2, n2);
  CHECK(out[0] == doctest::Approx(-1.0));
  CHECK(std::abs(out[1]) < 1e-15);
}

TEST_CASE("a_hat_first_column") {
  std::mt19937_64 rng(66);

  VectorXd n = oracles::random_unit(4, rng);
  auto [frame_i, bi] = givens_init(n);
  VectorXd col = a_hat_first_column(MatrixXd::Identity(4, 4), n, frame_i);
  CHECK(col[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(col.tail(3).cwiseAbs().maxCoeff() < 1e-12);

  for (Eigen::Index d = 2; d <= 8; ++d) {
    for (int rep = 0; rep < 50; ++rep) {
      MatrixXd sigma = oracles::random_lower(d, rng);
      MatrixXd a = sigma * sigma.transpose();
      VectorXd nr = oracles::random_unit(d, rng);
      auto [frame, beta] = givens_init(nr);
      VectorXd fast = a_hat_first_column(sigma, nr, frame);
      MatrixXd q = oracles::assemble_q(frame);
      VectorXd slow = (q * a * q.transpose()).col(0);
      CHECK((fast - slow).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(fast[0] > 0.0);
    }
  }

  // Example III sigma with N = (0,1): explicit 2x2 computation
  MatrixXd s3 = cholesky_lower(example3_a());
  VectorXd n3(2);
  n3 << 0.0, 1.0;
  auto [frame3, b3] = givens_init(n3);
  MatrixXd q3 = oracles::assemble_q(frame3);
  VectorXd expect = (q3 * example3_a() * q3.transpose()).col(0);
  CHECK(a_hat_first_column(s3, n3, frame3).isApprox(expect, 1e-12));
}

namespace {

// Assembles Lambda_* column by column and checks the factorization identity
// Lambda_* Lambda_*^T = (Q A Q^T)_* against explicitly formed matrices.
double factorization_residual(const MatrixXd& sigma, const VectorXd& n, double tol) {
  const Eigen::Index d = sigma.rows();
  auto [frame, beta] = givens_init(n);
  MatrixXd lambda(d - 1, d - 1);
  for (Eigen::Index j = 0; j < d - 1; ++j)
    lambda.col(j) = lambda_star_apply(sigma, frame, n, VectorXd::Unit(d - 1, j).eval(), tol);
  MatrixXd q = oracles::assemble_q(frame);
  MatrixXd a_hat = q * sigma * sigma.transpose() * q.transpose();
  return (lambda * lambda.transpose() - a_hat.bottomRightCorner(d - 1, d - 1))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace

TEST_CASE("lambda_star_apply: identity diffusion in 2D") {
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 20; ++rep) {
    VectorXd n = oracles::random_unit(2, rng);
    auto [frame, beta] = givens_init(n);
    VectorXd nu(1);
    nu << 1.0;
    VectorXd eta = lambda_star_apply(MatrixXd::Identity(2, 2), frame, n, nu, 1e-10);
    CHECK(eta[0] * eta[0] == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("lambda_star_apply satisfies the factorization identity") {
  std::mt19937_64 rng(88);
  for (Eigen::Index d = 2; d <= 8; ++d) {
    for (int rep = 0; rep < 100; ++rep) {
      MatrixXd sigma = oracles::random_lower(d, rng);

      // generic branch
      VectorXd n;
      do {
        n = oracles::random_unit(d, rng);
      } while (std::abs(n[0]) <= 0.1);
      CHECK(factorization_residual(sigma, n, 1e-10) < 1e-10);

      // N1 = 0 branch
      VectorXd n0 = VectorXd::Zero(d);
      n0.tail(d - 1) = oracles::random_unit(d - 1, rng);
      CHECK(factorization_residual(sigma, n0, 1e-10) < 1e-10);
    }
  }
}

TEST_CASE("lambda_star_apply branch consistency near the N1 threshold") {
  std::mt19937_64 rng(99);
  const double tol = 1e-10;
  for (Eigen::Index d = 3; d <= 6; ++d) {
    MatrixXd sigma = oracles::random_lower(d, rng);
    VectorXd tail = oracles::random_unit(d - 1, rng);
    for (double n1 : {2.0 * tol, -2.0 * tol, 0.5 * tol, -0.5 * tol}) {
      VectorXd n(d);
      n[0] = n1;
      n.tail(d - 1) = std::sqrt(1.0 - n1 * n1) * tail;
      // Above threshold the identity is exact; below it the Lemma-6 formula
      // carries an O(N1) error.
      CHECK(factorization_residual(sigma, n, tol) < 1e-8);
    }
  }
}

TEST_CASE("lambda_star_apply rejects dimension 1") {
  MatrixXd sigma(1, 1);
  sigma << 1.0;
  GivensFrame<double> frame{VectorXd(0), VectorXd(0)};
  VectorXd n(1);
  n << 1.0;
  CHECK_THROWS_AS(lambda_star_apply(sigma, frame, n, VectorXd(0).eval(), 1e-10),
                  std::invalid_argument);
}
