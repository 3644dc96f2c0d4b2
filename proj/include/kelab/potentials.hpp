#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "kelab/jets.hpp"

namespace kelab {

// A potential that can hand out jets.  Closed forms and radial profiles
// support order 5 anywhere in their domain; grid potentials cap at order 4
// (see grid.hpp).
class Potential {
 public:
  virtual ~Potential() = default;
  virtual int dim() const = 0;
  virtual int max_order() const = 0;
  virtual JetSource source() const = 0;
  virtual std::string name() const = 0;
  virtual double value(std::span<const double> x) const = 0;
  virtual Jet jet(std::span<const double> x, int order) const = 0;
  // min over R^n of the potential (the Appendix bounds need it).
  virtual double min_value() const = 0;

  Jet jet2(Vec2 x, int order) const {
    const double p[2] = {x.x, x.y};
    return jet(std::span<const double>(p, 2), order);
  }
  double value2(Vec2 x) const {
    const double p[2] = {x.x, x.y};
    return value(std::span<const double>(p, 2));
  }
};

// Phi = (n+1) log(1 + sum e^{x_i}) - sum x_i - n log(n+1); the additive
// constant makes exp(-Phi) = det D^2 Phi hold exactly.
class SimplexPotential : public Potential {
 public:
  explicit SimplexPotential(int n);
  int dim() const override { return n_; }
  int max_order() const override { return 5; }
  JetSource source() const override { return JetSource::closed_form; }
  std::string name() const override { return "simplex"; }
  double value(std::span<const double> x) const override;
  Jet jet(std::span<const double> x, int order) const override;
  double min_value() const override;

 private:
  int n_;
};

// Phi = sum phi(x_i) with phi(t) = log(2 cosh^2(t/2)), the separable product
// solution for the cube [-1,1]^n.
class CubePotential : public Potential {
 public:
  explicit CubePotential(int n);
  int dim() const override { return n_; }
  int max_order() const override { return 5; }
  JetSource source() const override { return JetSource::closed_form; }
  std::string name() const override { return "cube"; }
  double value(std::span<const double> x) const override;
  Jet jet(std::span<const double> x, int order) const override;
  double min_value() const override;

  // 1D profile helpers.
  static double phi1(double t);
  static double dphi1(double t);
  static Taylor1 phi1_taylor(double t, std::size_t len);

 private:
  int n_;
};

// Converged solution of the radial boundary value problem
//   (phi'(r)/r)^{n-1} phi''(r) = exp(-phi(r)),  phi'(0) = 0, phi'(inf) = 1,
// found by shooting on phi(0).
struct RadialProfile {
  int n = 2;
  double phi0 = 0.0;   // shooting value phi(0)
  double r_max = 30.0;
  double eps_far = 1e-6;
  double series_radius = 0.25;  // even series in r^2 is used below this
  std::vector<double> r, phi, dphi;  // accepted integration nodes (r >= series_radius)
  std::vector<double> even_coeffs;   // u_k with phi = sum u_k r^{2k}

  double phi_at(double rq) const;
  double dphi_at(double rq) const;
  double ddphi_at(double rq) const;  // from the ODE
  // Taylor coefficients of phi at rq (len terms), by ODE continuation.
  Taylor1 taylor_at(double rq, std::size_t len) const;
  // |(phi'/r)^{n-1} phi'' - e^{-phi}| with phi'' from an independent finite
  // difference of phi' (the stored phi'' is the ODE value by construction).
  double fd_ode_residual(double rq, double h = 1e-4) const;

  std::string to_csv() const;
};

struct ShootingDiagnostics {
  int bisection_steps = 0;
  double bracket_lo = 0.0, bracket_hi = 0.0;
  std::vector<double> trace;  // tried phi(0) values
};

// Shoots the radial profile; throws ShootingError (with trace) on bracket
// failure or far-field saturation below 1 - eps_far.
RadialProfile ball_profile(int n, double r_max = 30.0, double eps_far = 1e-6,
                           ShootingDiagnostics* diag = nullptr);

// 2D jets for Phi(x) = phi(|x|).  |x| must stay in [r_min, r_max].
class RadialPotential : public Potential {
 public:
  explicit RadialPotential(std::shared_ptr<const RadialProfile> profile, double r_min = 1e-3);
  int dim() const override { return 2; }
  int max_order() const override { return 5; }
  JetSource source() const override { return JetSource::radial; }
  std::string name() const override { return "ball"; }
  double value(std::span<const double> x) const override;
  Jet jet(std::span<const double> x, int order) const override;
  double min_value() const override { return profile_->phi0; }

  const RadialProfile& profile() const { return *profile_; }
  double r_min() const { return r_min_; }

 private:
  std::shared_ptr<const RadialProfile> profile_;
  double r_min_;
};

// jet_at: the uniform derivative oracle (spec'd operation name).
inline Jet jet_at(const Potential& p, std::span<const double> x, int order) {
  return p.jet(x, order);
}

}  // namespace kelab
