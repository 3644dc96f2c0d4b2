#include "kelab/ode.hpp"

#include <algorithm>

namespace kelab {

namespace {
// Dormand-Prince coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace

double integrate_dopri5(const OdeRhs& f, double t0, double t1, std::vector<double>& y,
                        const OdeOptions& opt, const OdeObserver& observer) {
  const std::size_t n = y.size();
  const double dir = (t1 >= t0) ? 1.0 : -1.0;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n), ynew(n), err(n);

  double t = t0;
  double dt = std::min(opt.initial_dt, opt.max_dt) * dir;
  double prev_err_norm = 1.0;
  f(t, y, k1);

  for (std::size_t step = 0; step < opt.max_steps; ++step) {
    if ((t - t1) * dir >= 0.0) return t;
    if ((t + dt - t1) * dir > 0.0) dt = t1 - t;

    for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + dt * a21 * k1[i];
    f(t + c2 * dt, yt, k2);
    for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + dt * (a31 * k1[i] + a32 * k2[i]);
    f(t + c3 * dt, yt, k3);
    for (std::size_t i = 0; i < n; ++i)
      yt[i] = y[i] + dt * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(t + c4 * dt, yt, k4);
    for (std::size_t i = 0; i < n; ++i)
      yt[i] = y[i] + dt * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(t + c5 * dt, yt, k5);
    for (std::size_t i = 0; i < n; ++i)
      yt[i] = y[i] + dt * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    f(t + dt, yt, k6);
    for (std::size_t i = 0; i < n; ++i)
      ynew[i] = y[i] + dt * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    f(t + dt, ynew, k7);

    double err_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      err[i] = dt * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      double r = err[i] / sc;
      err_norm += r * r;
    }
    err_norm = std::sqrt(err_norm / static_cast<double>(n));

    if (err_norm <= 1.0 || std::abs(dt) <= 1e-14 * std::max(1.0, std::abs(t))) {
      t += dt;
      y = ynew;
      k1 = k7;  // FSAL
      if (observer && !observer(t, y)) return t;
      // PI controller
      double fac = 0.9 * std::pow(std::max(err_norm, 1e-10), -0.7 / 5.0) *
                   std::pow(std::max(prev_err_norm, 1e-10), 0.4 / 5.0);
      fac = std::clamp(fac, 0.2, 5.0);
      prev_err_norm = std::max(err_norm, 1e-10);
      dt *= fac;
      if (std::abs(dt) > opt.max_dt) dt = opt.max_dt * dir;
    } else {
      dt *= std::clamp(0.9 * std::pow(err_norm, -1.0 / 5.0), 0.2, 1.0);
    }
  }
  throw std::runtime_error("integrate_dopri5: step limit exceeded");
}

void integrate_rk4(const OdeRhs& f, double t0, double t1, std::vector<double>& y,
                   std::size_t n_steps, const OdeObserver& observer) {
  const std::size_t n = y.size();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), yt(n);
  double dt = (t1 - t0) / static_cast<double>(n_steps);
  double t = t0;
  for (std::size_t s = 0; s < n_steps; ++s) {
    f(t, y, k1);
    for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + 0.5 * dt * k1[i];
    f(t + 0.5 * dt, yt, k2);
    for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + 0.5 * dt * k2[i];
    f(t + 0.5 * dt, yt, k3);
    for (std::size_t i = 0; i < n; ++i) yt[i] = y[i] + dt * k3[i];
    f(t + dt, yt, k4);
    for (std::size_t i = 0; i < n; ++i)
      y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    t = t0 + dt * static_cast<double>(s + 1);
    if (observer && !observer(t, y)) return;
  }
}

}  // namespace kelab
