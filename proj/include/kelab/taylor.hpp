#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Truncated Taylor arithmetic, the derivative engine behind every jet in the
// project.  Taylor1 is a univariate series of dynamic length; TaylorN is a
// dense multivariate polynomial truncated at a fixed total degree.  All
// transcendental functions go through a single universal composition rule,
// so derivative orders 4 and 5 cost nothing extra to get right.

namespace kelab {

// ---------------------------------------------------------------------------
// Univariate truncated series.  coeff[k] is the Taylor coefficient, i.e.
// f^(k)(t0)/k!.  Length fixes the truncation order.

class Taylor1 {
 public:
  Taylor1() = default;
  explicit Taylor1(std::size_t len, double c0 = 0.0) : c_(len, 0.0) {
    if (len == 0) throw std::invalid_argument("Taylor1: zero length");
    c_[0] = c0;
  }
  static Taylor1 variable(std::size_t len, double t0) {
    Taylor1 r(len, t0);
    if (len > 1) r.c_[1] = 1.0;
    return r;
  }

  std::size_t size() const { return c_.size(); }
  double& operator[](std::size_t k) { return c_[k]; }
  double operator[](std::size_t k) const { return c_[k]; }
  const std::vector<double>& coeffs() const { return c_; }

  // k-th derivative value at the expansion point.
  double derivative(std::size_t k) const;
  // Evaluate the polynomial (and optionally derivatives) at offset dt.
  double eval(double dt) const;
  double eval_derivative(double dt, std::size_t k) const;

  Taylor1 operator-() const;
  Taylor1& operator+=(const Taylor1& o);
  Taylor1& operator-=(const Taylor1& o);
  friend Taylor1 operator+(Taylor1 a, const Taylor1& b) { return a += b; }
  friend Taylor1 operator-(Taylor1 a, const Taylor1& b) { return a -= b; }
  friend Taylor1 operator*(const Taylor1& a, const Taylor1& b);
  friend Taylor1 operator*(double s, Taylor1 a);
  friend Taylor1 operator+(Taylor1 a, double s) { a.c_[0] += s; return a; }
  friend Taylor1 operator-(Taylor1 a, double s) { a.c_[0] -= s; return a; }

  // f(g) for f given by its Taylor coefficients at g[0].
  Taylor1 compose_scalar(std::span<const double> f_coeffs) const;

 private:
  std::vector<double> c_;
};

Taylor1 t1_exp(const Taylor1& g);
Taylor1 t1_log(const Taylor1& g);
Taylor1 t1_sqrt(const Taylor1& g);
Taylor1 t1_recip(const Taylor1& g);
Taylor1 t1_div(const Taylor1& a, const Taylor1& b);
Taylor1 t1_pow_int(const Taylor1& g, int p);
// Series of the derivative f' (one order shorter).
Taylor1 t1_derive(const Taylor1& g);

// ---------------------------------------------------------------------------
// Multi-index bookkeeping for dense truncated multivariate polynomials.
// Indices are enumerated by total degree, then lexicographically.  Tables are
// cached per (dim, degree) pair and shared by all TaylorN values.

class MultiIndexTable {
 public:
  static const MultiIndexTable* get(int dim, int max_degree);

  int dim() const { return dim_; }
  int max_degree() const { return deg_; }
  int n_coeffs() const { return static_cast<int>(exps_.size()); }

  std::span<const std::uint8_t> exponents(int pos) const {
    return {exps_[pos].data(), static_cast<std::size_t>(dim_)};
  }
  int degree_of(int pos) const { return degree_[pos]; }
  // Position of a multi-index; -1 when the degree exceeds the table.
  int position(std::span<const int> alpha) const;
  double factorial(int pos) const { return fact_[pos]; }

  struct ProdTerm { std::int32_t a, b; };
  // For result position k, the list of coefficient pairs contributing to it.
  std::span<const ProdTerm> product_terms(int k) const {
    return {terms_.data() + term_off_[k], term_off_[k + 1] - term_off_[k]};
  }

 private:
  MultiIndexTable(int dim, int deg);
  int dim_, deg_;
  std::vector<std::array<std::uint8_t, 8>> exps_;
  std::vector<int> degree_;
  std::vector<double> fact_;
  std::vector<int> key_to_pos_;
  std::vector<ProdTerm> terms_;
  std::vector<std::size_t> term_off_;
};

// Dense truncated multivariate Taylor polynomial.  coeff(alpha) holds
// D^alpha f(x0) / alpha!.
class TaylorN {
 public:
  TaylorN() : tab_(nullptr) {}
  explicit TaylorN(const MultiIndexTable* tab, double c0 = 0.0)
      : tab_(tab), c_(tab->n_coeffs(), 0.0) {
    c_[0] = c0;
  }
  static TaylorN variable(const MultiIndexTable* tab, int i, double x0);

  const MultiIndexTable* table() const { return tab_; }
  bool valid() const { return tab_ != nullptr; }
  double value() const { return c_[0]; }
  double& raw(int pos) { return c_[pos]; }
  double raw(int pos) const { return c_[pos]; }
  std::size_t size() const { return c_.size(); }

  double coeff(std::span<const int> alpha) const;
  void set_coeff(std::span<const int> alpha, double v);
  // Partial derivative D^alpha at the expansion point (= coeff * alpha!).
  double partial(std::span<const int> alpha) const;
  void set_partial(std::span<const int> alpha, double v);

  TaylorN operator-() const;
  TaylorN& operator+=(const TaylorN& o);
  TaylorN& operator-=(const TaylorN& o);
  friend TaylorN operator+(TaylorN a, const TaylorN& b) { return a += b; }
  friend TaylorN operator-(TaylorN a, const TaylorN& b) { return a -= b; }
  friend TaylorN operator*(const TaylorN& a, const TaylorN& b);
  friend TaylorN operator*(double s, TaylorN a);
  friend TaylorN operator+(TaylorN a, double s) { a.c_[0] += s; return a; }
  friend TaylorN operator-(TaylorN a, double s) { a.c_[0] -= s; return a; }

  // f(g) for f given by Taylor coefficients at g.value().
  TaylorN compose_scalar(std::span<const double> f_coeffs) const;

 private:
  const MultiIndexTable* tab_;
  std::vector<double> c_;
};

TaylorN tn_exp(const TaylorN& g);
TaylorN tn_log(const TaylorN& g);
TaylorN tn_sqrt(const TaylorN& g);
TaylorN tn_recip(const TaylorN& g);
TaylorN tn_div(const TaylorN& a, const TaylorN& b);
// Compose a univariate series f (expanded at g.value()) with g.
TaylorN tn_compose(const Taylor1& f, const TaylorN& g);
// Partial derivative with respect to variable `var`.  The result is one
// degree less accurate than the input (top-degree coefficients are zeroed).
TaylorN tn_derive(const TaylorN& g, int var);
// Re-expansion of the (truncated) polynomial about x0 + delta.
TaylorN tn_shift(const TaylorN& g, std::span<const double> delta);

}  // namespace kelab
