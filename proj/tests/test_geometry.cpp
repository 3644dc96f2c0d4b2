#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "kelab/geometry.hpp"
#include "kelab/potentials.hpp"

using namespace kelab;

namespace {
std::shared_ptr<const RadialProfile> shared_profile() {
  static auto prof = std::make_shared<const RadialProfile>(ball_profile(2, 30.0, 1e-6));
  return prof;
}
}  // namespace

TEST_CASE("cube metric is flat") {
  CubePotential C(2);
  QuasiRandom2D qr(23);
  for (int t = 0; t < 20; ++t) {
    Vec2 x = qr.next_in_box(5.0);
    PointGeometry pg = point_geometry(C.jet2(x, 3));
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j)
          for (int l = 0; l < 2; ++l) CHECK(std::abs(pg.riemann[i][k][j][l]) < 5e-12);
    CHECK(std::abs(pg.lambda) < 5e-12);
    CHECK(pg.lambda_anisotropy < 5e-12);
  }
}

TEST_CASE("simplex has constant lambda = 1/3") {
  SimplexPotential S(2);
  QuasiRandom2D qr(5);
  for (int t = 0; t < 20; ++t) {
    Vec2 x = qr.next_in_box(6.0);
    PointGeometry pg = point_geometry(S.jet2(x, 3));
    CHECK(std::abs(pg.lambda - 1.0 / 3.0) < 1e-9);
    CHECK(pg.lambda_anisotropy < 1e-9);
    // metric inverse really inverts
    Mat2 ident = pg.metric * pg.metric_inv;
    CHECK(std::abs(ident.a - 1.0) < 1e-12);
    CHECK(std::abs(ident.b) < 1e-12);
    CHECK(std::abs(ident.d - 1.0) < 1e-12);
  }
}

TEST_CASE("cube eigenvalues of the Riemannian Hessian") {
  CubePotential C(2);
  for (double t : {0.5, 1.3, -2.1}) {
    PointGeometry pg = point_geometry(C.jet2({t, 0.0}, 3));
    REQUIRE(pg.has_eigenframe);
    double phi = CubePotential::phi1(t);
    double dphi = CubePotential::dphi1(t);
    double expected = 1.0 + 0.5 * std::exp(phi) * dphi * dphi;
    CHECK(pg.Lambda_e == doctest::Approx(expected).epsilon(1e-12));
    CHECK(pg.Lambda_u == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("frames are h-orthonormal with the right gauges") {
  SimplexPotential S(2);
  QuasiRandom2D qr(31);
  for (int t = 0; t < 10; ++t) {
    Vec2 x = qr.next_in_box(4.0);
    PointGeometry pg = point_geometry(S.jet2(x, 3));
    if (!pg.has_nv) continue;
    CHECK(pg.dir2(pg.n_vec, pg.n_vec) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(pg.dir2(pg.v_vec, pg.v_vec) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(pg.dir2(pg.n_vec, pg.v_vec)) < 1e-10);
    // Phi_n = |grad|, Phi_v = 0
    CHECK(pg.dir1(pg.n_vec) == doctest::Approx(std::sqrt(pg.grad_h2)).epsilon(1e-10));
    CHECK(std::abs(pg.dir1(pg.v_vec)) < 1e-10);
    if (pg.has_eigenframe) {
      CHECK(pg.dir2(pg.e_vec, pg.e_vec) == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(std::abs(pg.dir2(pg.e_vec, pg.u_vec)) < 1e-10);
      CHECK(pg.Lambda_e >= pg.Lambda_u);
      CHECK(pg.hess_h_of(pg.e_vec, pg.e_vec) == doctest::Approx(pg.Lambda_e).epsilon(1e-9));
      CHECK(std::abs(pg.hess_h_of(pg.e_vec, pg.u_vec)) < 1e-9);
      CHECK(pg.dir1(pg.e_vec) >= -1e-13);
      // eigenframe consequence when grad != 0: Phi_eun = 0
      double grad_h = std::sqrt(pg.grad_h2);
      if (grad_h > 1e-6) {
        double phi_eun = 0.0;
        for (int i = 0; i < 2; ++i)
          for (int jj = 0; jj < 2; ++jj)
            for (int k = 0; k < 2; ++k)
              phi_eun += pg.third[i][jj][k] * pg.e_vec[i] * pg.u_vec[jj] * pg.n_vec[k];
        CHECK(std::abs(phi_eun) < 1e-9);
      }
    }
  }
}

TEST_CASE("2D Riemann structure in the (n,v) frame") {
  SimplexPotential S(2);
  RadialPotential B(shared_profile());
  QuasiRandom2D qr(43);
  for (int t = 0; t < 8; ++t) {
    Vec2 x = qr.next_in_box(3.0);
    if (x.norm() < 0.3) continue;
    for (const Potential* P :
         {static_cast<const Potential*>(&S), static_cast<const Potential*>(&B)}) {
      PointGeometry pg = point_geometry(P->jet2(x, 3));
      if (!pg.has_nv) continue;
      double R = pg.lambda / 4.0;
      Vec2 n = pg.n_vec, v = pg.v_vec;
      double tol = (P->source() == JetSource::radial) ? 1e-8 : 1e-10;
      CHECK(pg.riem_of(n, v, n, v) == doctest::Approx(R).epsilon(1e-7).scale(1.0));
      CHECK(std::abs(pg.riem_of(v, n, n, v) + R) < tol);
      CHECK(std::abs(pg.riem_of(n, v, v, n) + R) < tol);
      CHECK(std::abs(pg.riem_of(v, n, v, n) - R) < tol);
      CHECK(std::abs(pg.riem_of(n, n, n, v)) < tol);
      CHECK(std::abs(pg.riem_of(n, n, v, v)) < tol);
      CHECK(std::abs(pg.riemann_square() - pg.lambda * pg.lambda / 4.0) < 1e-9);
    }
  }
}

TEST_CASE("Bakry-Emery tensor identity") {
  SimplexPotential S(2);
  CubePotential C(2);
  QuasiRandom2D qr(17);
  for (int t = 0; t < 10; ++t) {
    Vec2 x = qr.next_in_box(5.0);
    for (const Potential* P :
         {static_cast<const Potential*>(&S), static_cast<const Potential*>(&C)}) {
      PointGeometry pg = point_geometry(P->jet2(x, 3));
      Mat2 rhs = pg.g_tensor.scaled(0.25) + pg.metric.scaled(0.5);
      CHECK(std::abs(pg.bakry_emery.a - rhs.a) < 1e-9);
      CHECK(std::abs(pg.bakry_emery.b - rhs.b) < 1e-9);
      CHECK(std::abs(pg.bakry_emery.d - rhs.d) < 1e-9);
    }
  }
}

TEST_CASE("covariant Q at the cube origin and its trace") {
  CubePotential C(2);
  Jet j = C.jet2({0.0, 0.0}, 4);
  QTensor Q = covariant_Q(j);
  CHECK(Q.q[0][0][0][0] == doctest::Approx(-0.25).epsilon(1e-13));
  CHECK(Q.max_asymmetry < 1e-13);
  // trace check: Q_11cd Phi^{cd} = -1/2 = -(hess_h)_11
  PointGeometry pg = point_geometry(j);
  double tr = 0.0;
  for (int c = 0; c < 2; ++c)
    for (int d = 0; d < 2; ++d) tr += Q.q[0][0][c][d] * pg.metric_inv(c, d);
  CHECK(tr == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(tr == doctest::Approx(-pg.hess_h.a).epsilon(1e-13));
}

TEST_CASE("Q symmetry on simplex and odd-index vanishing on radial points") {
  SimplexPotential S(2);
  QuasiRandom2D qr(29);
  for (int t = 0; t < 10; ++t) {
    QTensor Q = covariant_Q(S.jet2(qr.next_in_box(4.0), 4));
    CHECK(Q.max_asymmetry < 1e-10);
  }
  RadialPotential B(shared_profile());
  for (double r : {0.7, 1.6, 3.2}) {
    QTensor Q = covariant_Q(B.jet2({r, 0.0}, 4));
    // odd number of tangential (second) indices -> zero by reflection symmetry
    CHECK(std::abs(Q.q[0][0][0][1]) < 1e-9);
    CHECK(std::abs(Q.q[0][1][1][1]) < 1e-9);
  }
}

TEST_CASE("scalar weighted Laplacian basics") {
  SimplexPotential S(2);
  QuasiRandom2D qr(37);
  for (int t = 0; t < 8; ++t) {
    Vec2 x = qr.next_in_box(4.0);
    GeometryCalc calc(S.jet2(x, 4));
    // L Phi = Phi^{ij} Phi_ij = n = 2
    CHECK(calc.laplacian_scalar(calc.phi()) == doctest::Approx(2.0).epsilon(1e-11));
    // eigenfunction property of first derivatives: L Phi_i = -Phi_i
    auto d1 = calc.phi_i_fields();
    for (int i = 0; i < 2; ++i) {
      double lhs = calc.laplacian_scalar(d1[i]);
      int a[2] = {i == 0 ? 1 : 0, i == 1 ? 1 : 0};
      CHECK(lhs == doctest::Approx(-calc.phi().partial(a)).epsilon(1e-8).scale(1.0));
    }
  }
  // L |grad|^2 at the cube origin equals 4
  CubePotential C(2);
  GeometryCalc cc(C.jet2({0.0, 0.0}, 4));
  CHECK(cc.laplacian_scalar(cc.grad_norm2_field()) == doctest::Approx(4.0).epsilon(1e-11));
}

TEST_CASE("covariant tensor Laplacians on radial points") {
  RadialPotential B(shared_profile());
  for (double r : {0.6, 1.1, 2.3}) {
    Vec2 x{r * 0.8, r * 0.6};
    Jet j5 = B.jet2(x, 5);
    GeometryCalc calc(j5);
    PointGeometry pg = calc.point();

    // LPhi_i = (1/2)Phi_i + (1/4) g_i^k Phi_k
    auto lphi = calc.laplacian_tensor(calc.phi_i_fields(), 1);
    for (int i = 0; i < 2; ++i) {
      double gk = 0.0;
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          gk += pg.g_tensor(i, k) * pg.metric_inv(k, l) * pg.grad[l];
      double rhs = 0.5 * pg.grad[i] + 0.25 * gk;
      CHECK(std::abs(lphi[i] - rhs) < 1e-7);
    }

    // LPhi_iab full identity tested in the identities suite; smoke one entry
    auto l3 = calc.laplacian_tensor(calc.phi_ijk_fields(), 3);
    CHECK(std::isfinite(l3[0]));
  }

  // Lg at the cube origin: both sides reduce to 2 Q-contraction terms
  CubePotential C(2);
  GeometryCalc cc(C.jet2({0.0, 0.0}, 5));
  auto lg = cc.laplacian_tensor(cc.g_fields(), 2);
  QTensor Q = cc.covariant_q();
  PointGeometry pg = cc.point();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      // g = 0 and Riem = 0 at the origin, so Lg_ij = 2 grad_p Phi_iab grad^p Phi_j^{ab}
      double contraction = 0.0;
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
              for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                  contraction += Q.q[p][i][a][b] * Q.q[q][j][c][d] * pg.metric_inv(p, q) *
                                 pg.metric_inv(a, c) * pg.metric_inv(b, d);
      CHECK(std::abs(lg[i * 2 + j] - 2.0 * contraction) < 1e-8);
    }
}

TEST_CASE("point geometry rejects bad input") {
  SimplexPotential S(2);
  CHECK_THROWS_AS(point_geometry(S.jet2({0.0, 0.0}, 2)), JetError);
  SimplexPotential S3(3);
  double x3[3] = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(point_geometry(S3.jet(std::span<const double>(x3, 3), 3)), JetError);
}
