#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace kelab {

// Dormand-Prince 5(4) with PI step control.  Small fixed-dimension problems
// only (radial profiles, geodesics), so std::function overhead is fine.
struct OdeOptions {
  double atol = 1e-12;
  double rtol = 1e-12;
  double max_dt = 0.05;
  double initial_dt = 1e-3;
  std::size_t max_steps = 2'000'000;
};

using OdeRhs = std::function<void(double, std::span<const double>, std::span<double>)>;
// Called after each accepted step; return false to stop the integration.
using OdeObserver = std::function<bool(double, std::span<const double>)>;

// Integrates y' = f(t, y) from t0 to t1 in place.  Returns the final time
// (== t1 unless the observer stopped early).
double integrate_dopri5(const OdeRhs& f, double t0, double t1, std::vector<double>& y,
                        const OdeOptions& opt = {}, const OdeObserver& observer = {});

// Classic fixed-step RK4 with n_steps steps; observer sees every step.
void integrate_rk4(const OdeRhs& f, double t0, double t1, std::vector<double>& y,
                   std::size_t n_steps, const OdeObserver& observer = {});

}  // namespace kelab
