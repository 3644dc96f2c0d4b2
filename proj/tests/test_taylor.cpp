#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kelab/taylor.hpp"

using namespace kelab;

TEST_CASE("univariate arithmetic against hand series") {
  // f(t) = exp(2t) at t0 = 0.3
  Taylor1 t = Taylor1::variable(6, 0.3);
  Taylor1 f = t1_exp(2.0 * t);
  double e = std::exp(0.6);
  for (int k = 0; k < 6; ++k) {
    double fact = 1.0;
    for (int j = 2; j <= k; ++j) fact *= j;
    CHECK(f[k] == doctest::Approx(e * std::pow(2.0, k) / fact).epsilon(1e-13));
  }

  // log(sqrt(x)) == 0.5 log(x)
  Taylor1 x = Taylor1::variable(7, 1.7);
  Taylor1 a = t1_log(t1_sqrt(x));
  Taylor1 b = 0.5 * t1_log(x);
  for (int k = 0; k < 7; ++k) CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-13));

  // division round trip
  Taylor1 q = t1_div(a + 3.0, b + 3.0);
  CHECK(q[0] == doctest::Approx(1.0));
  for (int k = 1; k < 7; ++k) CHECK(std::abs(q[k]) < 1e-14);
}

TEST_CASE("derivative extraction and evaluation") {
  Taylor1 t = Taylor1::variable(8, 0.5);
  Taylor1 f = t1_exp(t * t);  // exp(t^2)
  // f'(t) = 2t exp(t^2)
  CHECK(f.derivative(1) == doctest::Approx(1.0 * std::exp(0.25)).epsilon(1e-13));
  Taylor1 df = t1_derive(f);
  CHECK(df[0] == doctest::Approx(std::exp(0.25)).epsilon(1e-13));
  // eval at small offset vs direct
  CHECK(f.eval(0.01) == doctest::Approx(std::exp(0.51 * 0.51)).epsilon(1e-12));
  CHECK(f.eval_derivative(0.0, 2) == doctest::Approx(f.derivative(2)));
}

TEST_CASE("cube 1D profile derivatives: phi(t) = log(2 cosh^2(t/2))") {
  auto phi_taylor = [](double t0, std::size_t len) {
    Taylor1 u = 0.5 * Taylor1::variable(len, t0);
    Taylor1 c = 0.5 * (t1_exp(u) + t1_exp(-u));
    return t1_log(2.0 * (c * c));
  };
  Taylor1 p0 = phi_taylor(0.0, 6);
  CHECK(p0.derivative(0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(std::abs(p0.derivative(1)) < 1e-15);
  CHECK(p0.derivative(2) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(p0.derivative(3)) < 1e-15);
  // phi'''' (0) = -1/4: with s = sech(t/2), tau = tanh(t/2),
  // phi'''' = s^2 tau^2 / 2 - s^4 / 4, at 0 gives -1/4.
  CHECK(p0.derivative(4) == doctest::Approx(-0.25).epsilon(1e-13));

  // phi'' = exp(-phi) along the line (the 1D equation)
  for (double t0 : {-1.3, 0.2, 2.7}) {
    Taylor1 p = phi_taylor(t0, 6);
    CHECK(p.derivative(2) == doctest::Approx(std::exp(-p.derivative(0))).epsilon(1e-13));
  }
}

TEST_CASE("multivariate product and composition") {
  const auto* tab = MultiIndexTable::get(2, 5);
  TaylorN x = TaylorN::variable(tab, 0, 0.4);
  TaylorN y = TaylorN::variable(tab, 1, -0.7);
  TaylorN f = tn_exp(x * y);  // exp(xy)

  auto partial = [&](int i, int j) {
    int a[2] = {i, j};
    return f.partial(a);
  };
  double v = std::exp(0.4 * -0.7);
  // hand derivatives of exp(xy)
  CHECK(f.value() == doctest::Approx(v).epsilon(1e-14));
  CHECK(partial(1, 0) == doctest::Approx(-0.7 * v).epsilon(1e-13));
  CHECK(partial(0, 1) == doctest::Approx(0.4 * v).epsilon(1e-13));
  CHECK(partial(1, 1) == doctest::Approx((1.0 + 0.4 * -0.7) * v).epsilon(1e-13));
  CHECK(partial(2, 0) == doctest::Approx(0.49 * v).epsilon(1e-13));

  // tn_derive consistency: d/dx exp(xy) = y exp(xy)
  TaylorN fx = tn_derive(f, 0);
  TaylorN ref = y * f;
  for (int pos = 0; pos < tab->n_coeffs(); ++pos) {
    if (tab->degree_of(pos) > 4) continue;  // top degree lost by tn_derive
    CHECK(fx.raw(pos) == doctest::Approx(ref.raw(pos)).epsilon(1e-12));
  }
}

TEST_CASE("multivariate division, sqrt, log round trips") {
  const auto* tab = MultiIndexTable::get(2, 5);
  TaylorN x = TaylorN::variable(tab, 0, 1.1);
  TaylorN y = TaylorN::variable(tab, 1, 0.3);
  TaylorN g = x * x + y * y + 1.0;
  TaylorN s = tn_sqrt(g);
  TaylorN back = s * s - g;
  for (std::size_t p = 0; p < back.size(); ++p) CHECK(std::abs(back.raw(static_cast<int>(p))) < 1e-13);
  TaylorN l = tn_log(g);
  TaylorN exp_l = tn_exp(l) - g;
  for (std::size_t p = 0; p < exp_l.size(); ++p)
    CHECK(std::abs(exp_l.raw(static_cast<int>(p))) < 1e-12);
  TaylorN r = tn_div(x, g) * g - x;
  for (std::size_t p = 0; p < r.size(); ++p) CHECK(std::abs(r.raw(static_cast<int>(p))) < 1e-13);
}

TEST_CASE("finite differences confirm TaylorN partials") {
  // f(x, y) = log(1 + e^x + e^y), third partial d^3 f / dx^2 dy
  const auto* tab = MultiIndexTable::get(2, 5);
  auto fval = [](double x, double y) { return std::log(1.0 + std::exp(x) + std::exp(y)); };
  double x0 = 0.37, y0 = -0.21;
  TaylorN f = tn_log(TaylorN(tab, 1.0) + tn_exp(TaylorN::variable(tab, 0, x0)) +
                     tn_exp(TaylorN::variable(tab, 1, y0)));
  int a[2] = {2, 1};
  double exact = f.partial(a);
  auto fd = [&](double h) {
    auto fxx = [&](double y) {
      return (fval(x0 + h, y) - 2.0 * fval(x0, y) + fval(x0 - h, y)) / (h * h);
    };
    return (fxx(y0 + h) - fxx(y0 - h)) / (2.0 * h);
  };
  double e1 = std::abs(fd(1e-2) - exact);
  double e2 = std::abs(fd(5e-3) - exact);
  CHECK(e1 < 1e-5);
  CHECK(e2 < e1);  // second-order shrinking
}
