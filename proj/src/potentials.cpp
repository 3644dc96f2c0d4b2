#include "kelab/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "kelab/ode.hpp"

namespace kelab {

namespace {

std::array<double, 6> closed_form_errors(int order) {
  std::array<double, 6> e{};
  for (int k = 0; k <= order && k < 6; ++k) e[k] = 1e-13;
  return e;
}

}  // namespace

// ---------------------------------------------------------------------------
// Simplex

SimplexPotential::SimplexPotential(int n) : n_(n) {
  if (n < 1) throw ValidationError("simplex potential: n must be >= 1");
}

double SimplexPotential::value(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw ValidationError("simplex potential: wrong dimension");
  double s = 1.0, lin = 0.0;
  for (double xi : x) {
    s += std::exp(xi);
    lin += xi;
  }
  return (n_ + 1) * std::log(s) - lin - n_ * std::log(static_cast<double>(n_ + 1));
}

double SimplexPotential::min_value() const {
  // gradient vanishes at the origin
  return std::log(static_cast<double>(n_ + 1));
}

Jet SimplexPotential::jet(std::span<const double> x, int order) const {
  if (order < 0 || order > 5) throw JetError("simplex potential: order out of range");
  if (static_cast<int>(x.size()) != n_) throw ValidationError("simplex potential: wrong dimension");
  const auto* tab = MultiIndexTable::get(n_, order);
  TaylorN s(tab, 1.0);
  TaylorN lin(tab, 0.0);
  for (int i = 0; i < n_; ++i) {
    TaylorN xi = TaylorN::variable(tab, i, x[i]);
    s += tn_exp(xi);
    lin += xi;
  }
  TaylorN phi = static_cast<double>(n_ + 1) * tn_log(s) - lin -
                TaylorN(tab, n_ * std::log(static_cast<double>(n_ + 1)));
  Jet j;
  j.point.assign(x.begin(), x.end());
  j.order = order;
  j.source = JetSource::closed_form;
  j.poly = phi;
  j.est_error = closed_form_errors(order);
  if (order >= 2) j.require_convex();
  return j;
}

// ---------------------------------------------------------------------------
// Cube

CubePotential::CubePotential(int n) : n_(n) {
  if (n < 1) throw ValidationError("cube potential: n must be >= 1");
}

double CubePotential::phi1(double t) {
  // log(2 cosh^2(t/2)), written to avoid overflow for large |t|
  double a = std::abs(t);
  return a + 2.0 * std::log1p(std::exp(-a)) - std::log(2.0);
}

double CubePotential::dphi1(double t) { return std::tanh(0.5 * t); }

Taylor1 CubePotential::phi1_taylor(double t, std::size_t len) {
  Taylor1 u = 0.5 * Taylor1::variable(len, t);
  Taylor1 c = 0.5 * (t1_exp(u) + t1_exp(-u));
  return t1_log(2.0 * (c * c));
}

double CubePotential::value(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw ValidationError("cube potential: wrong dimension");
  double v = 0.0;
  for (double xi : x) v += phi1(xi);
  return v;
}

double CubePotential::min_value() const { return n_ * std::log(2.0); }

Jet CubePotential::jet(std::span<const double> x, int order) const {
  if (order < 0 || order > 5) throw JetError("cube potential: order out of range");
  if (static_cast<int>(x.size()) != n_) throw ValidationError("cube potential: wrong dimension");
  const auto* tab = MultiIndexTable::get(n_, order);
  TaylorN phi(tab, 0.0);
  for (int i = 0; i < n_; ++i) {
    Taylor1 f = phi1_taylor(x[i], static_cast<std::size_t>(order) + 1);
    phi += tn_compose(f, TaylorN::variable(tab, i, x[i]));
  }
  Jet j;
  j.point.assign(x.begin(), x.end());
  j.order = order;
  j.source = JetSource::closed_form;
  j.poly = phi;
  j.est_error = closed_form_errors(order);
  if (order >= 2) j.require_convex();
  return j;
}

// ---------------------------------------------------------------------------
// Radial profile: series start, shooting, Taylor continuation.

namespace {

// Even-series coefficients u_k of phi = sum u_k r^{2k} solving
// (phi'/r)^{n-1} phi'' = e^{-phi} with phi(0) = u0.  In s = r^2 the equation
// reads (2u')^{n-1} (2u' + 4 s u'') = e^{-u}, regular at s = 0; coefficients
// follow recursively.
std::vector<double> even_series(int n, double u0, std::size_t terms) {
  std::vector<double> u(terms, 0.0);
  u[0] = u0;
  u[1] = 0.5 * std::exp(-u0 / n);
  for (std::size_t k = 1; k + 1 < terms; ++k) {
    // Build LHS and RHS series up to s^k with u_{k+1} still zero.
    Taylor1 us(terms, 0.0);
    for (std::size_t m = 0; m <= k; ++m) us[m] = u[m];
    Taylor1 du = t1_derive(us);           // length terms-1
    Taylor1 A(terms, 0.0), B(terms, 0.0);
    for (std::size_t m = 0; m + 1 < terms; ++m) A[m] = 2.0 * du[m];
    for (std::size_t m = 0; m + 1 < terms; ++m)
      B[m] = 2.0 * du[m] + 4.0 * static_cast<double>(m) * du[m];
    Taylor1 lhs = t1_pow_int(A, n - 1) * B;
    Taylor1 rhs = t1_exp(-us);
    double defect = rhs[k] - lhs[k];
    double denom = 2.0 * static_cast<double>(k + 1) * std::pow(2.0 * u[1], n - 1) *
                   static_cast<double>(n + 2 * k);
    u[k + 1] = defect / denom;
  }
  return u;
}

double even_series_eval(const std::vector<double>& u, double r) {
  double s = r * r, v = 0.0;
  for (std::size_t k = u.size(); k-- > 0;) v = v * s + u[k];
  return v;
}

double even_series_eval_dr(const std::vector<double>& u, double r) {
  // d/dr of u(r^2) = 2 r u'(r^2)
  double s = r * r, v = 0.0;
  for (std::size_t k = u.size(); k-- > 1;) v = v * s + static_cast<double>(k) * u[k];
  return 2.0 * r * v;
}

// Taylor coefficients of phi at r0 > 0 from (phi(r0), phi'(r0)) via the ODE
// recurrence: the series of phi'' = e^{-phi} (r/phi')^{n-1} determines each
// next coefficient.
Taylor1 ode_taylor(int n, double r0, double phi0, double dphi0, std::size_t len) {
  Taylor1 P(len, 0.0);
  P[0] = phi0;
  if (len > 1) P[1] = dphi0;
  Taylor1 rr = Taylor1::variable(len, r0);
  for (std::size_t k = 0; k + 2 < len; ++k) {
    Taylor1 dP = t1_derive(P);  // uses P up to k+1: valid
    Taylor1 dPfull(len, 0.0);
    for (std::size_t m = 0; m + 1 < len; ++m) dPfull[m] = dP[m];
    Taylor1 rhs = t1_exp(-P) * t1_pow_int(t1_div(rr, dPfull), n - 1);
    P[k + 2] = rhs[k] / (static_cast<double>(k + 2) * static_cast<double>(k + 1));
  }
  return P;
}

struct TrialResult {
  bool overshoot = false;        // phi' crossed 1 before r_max
  double r_end = 0.0;
  double phi_end = 0.0, dphi_end = 0.0;
};

TrialResult integrate_trial(int n, double u0, double r_start, double r_max,
                            const std::vector<double>& series, double max_dt,
                            std::vector<double>* rec_r, std::vector<double>* rec_phi,
                            std::vector<double>* rec_dphi) {
  std::vector<double> y = {even_series_eval(series, r_start), even_series_eval_dr(series, r_start)};
  (void)u0;
  OdeRhs f = [n](double r, std::span<const double> s, std::span<double> dy) {
    dy[0] = s[1];
    dy[1] = std::exp(-s[0]) * std::pow(r / s[1], n - 1);
  };
  TrialResult res;
  OdeOptions opt;
  opt.atol = 1e-13;
  opt.rtol = 1e-13;
  opt.max_dt = max_dt;
  OdeObserver obs = [&](double r, std::span<const double> s) {
    if (rec_r) {
      rec_r->push_back(r);
      rec_phi->push_back(s[0]);
      rec_dphi->push_back(s[1]);
    }
    if (s[1] >= 1.0) {
      res.overshoot = true;
      return false;
    }
    return true;
  };
  double r_end = integrate_dopri5(f, r_start, r_max, y, opt, obs);
  res.r_end = r_end;
  res.phi_end = y[0];
  res.dphi_end = y[1];
  return res;
}

}  // namespace

RadialProfile ball_profile(int n, double r_max, double eps_far, ShootingDiagnostics* diag) {
  if (n < 2) throw ValidationError("ball profile: n must be >= 2");
  if (r_max < 10.0) throw ValidationError("ball profile: r_max too small for the far field");

  const double r_start = 0.2;
  const std::size_t series_terms = 10;

  auto classify = [&](double u0) {
    auto series = even_series(n, u0, series_terms);
    return integrate_trial(n, u0, r_start, r_max, series, 0.5, nullptr, nullptr, nullptr);
  };

  // Bracket: small phi(0) makes e^{-phi} large and phi' overshoot 1.
  double lo = 0.0, hi = 0.0;
  bool have_lo = false, have_hi = false;
  for (double c : {1.0, 0.0, 2.0, -2.0, 4.0, -4.0, 8.0, -8.0, 12.0}) {
    auto t = classify(c);
    if (diag) diag->trace.push_back(c);
    if (t.overshoot) {
      if (!have_lo || c > lo) { lo = c; have_lo = true; }
    } else {
      if (!have_hi || c < hi) { hi = c; have_hi = true; }
    }
    if (have_lo && have_hi) break;
  }
  if (!have_lo || !have_hi || lo >= hi)
    throw ShootingError("ball profile: failed to bracket phi(0)");

  int steps = 0;
  while (hi - lo > 1e-12 && steps < 200) {
    double mid = 0.5 * (lo + hi);
    if (classify(mid).overshoot)
      lo = mid;
    else
      hi = mid;
    if (diag) diag->trace.push_back(mid);
    ++steps;
  }

  RadialProfile prof;
  prof.n = n;
  prof.phi0 = 0.5 * (lo + hi);
  prof.r_max = r_max;
  prof.eps_far = eps_far;
  prof.series_radius = 0.25;
  prof.even_coeffs = even_series(n, prof.phi0, series_terms);
  if (diag) {
    diag->bisection_steps = steps;
    diag->bracket_lo = lo;
    diag->bracket_hi = hi;
  }

  // Final dense integration (max step 0.05 so Taylor continuation from the
  // nearest node always converges fast).
  prof.r.push_back(r_start);
  prof.phi.push_back(even_series_eval(prof.even_coeffs, r_start));
  prof.dphi.push_back(even_series_eval_dr(prof.even_coeffs, r_start));
  auto t = integrate_trial(n, prof.phi0, r_start, r_max, prof.even_coeffs, 0.05, &prof.r,
                           &prof.phi, &prof.dphi);
  if (!t.overshoot && 1.0 - t.dphi_end > eps_far)
    throw ShootingError("ball profile: far field saturated below 1 - eps_far");
  return prof;
}

Taylor1 RadialProfile::taylor_at(double rq, std::size_t len) const {
  if (rq < 0.0 || rq > r_max) throw JetError("radial profile: r out of range");
  if (rq < series_radius) {
    // phi(rq + t) from the even series u(s), s = (rq + t)^2.
    Taylor1 rr = Taylor1::variable(len, rq);
    Taylor1 s = rr * rr;
    std::vector<double> ucoef(len, 0.0);
    // u as univariate series in (s - s0): recentre the polynomial at s0.
    double s0 = rq * rq;
    // binomial re-expansion of sum u_k s^k around s0
    std::vector<double> shifted(len, 0.0);
    for (std::size_t k = 0; k < even_coeffs.size(); ++k) {
      // add u_k (s0 + ds)^k
      double binom = 1.0;
      double pw = std::pow(s0, static_cast<double>(k));
      for (std::size_t j = 0; j <= k && j < len; ++j) {
        shifted[j] += even_coeffs[k] * binom * pw;
        binom *= static_cast<double>(k - j) / static_cast<double>(j + 1);
        if (s0 != 0.0)
          pw /= s0;
        else
          pw = (j + 1 == k) ? 1.0 : 0.0;  // only the ds^k term survives at s0 = 0
      }
    }
    (void)ucoef;
    return s.compose_scalar(shifted);
  }
  // continuation from the nearest recorded node
  auto it = std::lower_bound(r.begin(), r.end(), rq);
  std::size_t i = (it == r.begin()) ? 0 : static_cast<std::size_t>(it - r.begin() - 1);
  if (i + 1 < r.size() && std::abs(r[i + 1] - rq) < std::abs(r[i] - rq)) ++i;
  Taylor1 node = ode_taylor(n, r[i], phi[i], dphi[i], len + 6);
  double dt = rq - r[i];
  double phi_q = node.eval(dt);
  double dphi_q = node.eval_derivative(dt, 1);
  return ode_taylor(n, rq, phi_q, dphi_q, len);
}

double RadialProfile::phi_at(double rq) const { return taylor_at(rq, 2)[0]; }
double RadialProfile::dphi_at(double rq) const { return taylor_at(rq, 2)[1]; }
double RadialProfile::ddphi_at(double rq) const { return 2.0 * taylor_at(rq, 3)[2]; }

double RadialProfile::fd_ode_residual(double rq, double h) const {
  double ddphi_fd = (dphi_at(rq + h) - dphi_at(rq - h)) / (2.0 * h);
  double p = phi_at(rq), dp = dphi_at(rq);
  return std::abs(std::pow(dp / rq, n - 1) * ddphi_fd - std::exp(-p));
}

std::string RadialProfile::to_csv() const {
  std::string out = "r,phi,dphi,ddphi\n";
  char buf[128];
  for (std::size_t i = 0; i < r.size(); ++i) {
    double dd = std::exp(-phi[i]) * std::pow(r[i] / dphi[i], n - 1);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r[i], phi[i], dphi[i], dd);
    out += buf;
  }
  return out;
}

// ---------------------------------------------------------------------------
// RadialPotential: 2D jets by composing phi with |x|.

RadialPotential::RadialPotential(std::shared_ptr<const RadialProfile> profile, double r_min)
    : profile_(std::move(profile)), r_min_(r_min) {
  if (profile_->n != 2)
    throw ValidationError("radial potential jets are two-dimensional; need an n = 2 profile");
}

double RadialPotential::value(std::span<const double> x) const {
  double r = std::sqrt(x[0] * x[0] + x[1] * x[1]);
  if (r > profile_->r_max) throw JetError("radial potential: point beyond r_max");
  return profile_->phi_at(std::max(r, 1e-8));
}

Jet RadialPotential::jet(std::span<const double> x, int order) const {
  if (order < 0 || order > 5) throw JetError("radial potential: order out of range");
  double rq = std::sqrt(x[0] * x[0] + x[1] * x[1]);
  if (rq < r_min_) throw JetError("radial potential: point too close to the origin");
  if (rq > profile_->r_max) throw JetError("radial potential: point beyond r_max");

  const auto* tab = MultiIndexTable::get(2, order);
  TaylorN x0 = TaylorN::variable(tab, 0, x[0]);
  TaylorN x1 = TaylorN::variable(tab, 1, x[1]);
  TaylorN rser = tn_sqrt(x0 * x0 + x1 * x1);
  Taylor1 phi_ser = profile_->taylor_at(rser.value(), static_cast<std::size_t>(order) + 1);
  TaylorN phi = tn_compose(phi_ser, rser);

  Jet j;
  j.point.assign(x.begin(), x.end());
  j.order = order;
  j.source = JetSource::radial;
  j.poly = phi;
  for (int k = 0; k <= order && k < 6; ++k)
    j.est_error[k] = 1e-10 * std::max(1.0, std::pow(rq, 1.0 - k));
  if (order >= 2) j.require_convex();
  return j;
}

}  // namespace kelab
