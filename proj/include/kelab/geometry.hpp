#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "kelab/jets.hpp"

namespace kelab {

// Full tensor package of the Hessian metric at one point (2D).
struct PointGeometry {
  Vec2 point{};
  JetSource source = JetSource::closed_form;
  int order = 0;

  Mat2 metric, metric_inv;
  Vec2 grad;          // Euclidean partials Phi_i
  Vec2 grad_vec;      // raised gradient Phi^{ij} Phi_j
  double grad_h2 = 0.0;  // |grad Phi|^2 in the metric

  double christoffel[2][2][2] = {};  // Gamma^k_ij indexed [k][i][j]
  double riemann[2][2][2][2] = {};   // Riem_{ikjl}
  Mat2 ricci;
  double lambda = 0.0;             // 4R, metric projection of Ric onto Phi_ij
  double lambda_anisotropy = 0.0;  // max |4 Ric_ij - lambda Phi_ij|
  Mat2 g_tensor;                   // g_ij = Phi_iab Phi_j^{ab}
  Mat2 hess_h;                     // Riemannian Hessian of Phi
  Mat2 bakry_emery;                // Ric + (1/2) hess_h

  double trace_hess_h = 0.0;  // Phi^{ij} (hess_h)_ij
  double hs2_hess_h = 0.0;    // squared Hilbert-Schmidt norm in the metric
  double det_hess_h = 0.0;    // det of the mixed endomorphism

  bool has_nv = false;
  Vec2 n_vec{}, v_vec{};  // h-orthonormal frame with Phi_v = 0 (contravariant)

  bool has_eigenframe = false;
  Vec2 e_vec{}, u_vec{};  // h-orthonormal eigenframe of hess_h
  double Lambda_e = 0.0, Lambda_u = 0.0;

  // Frame scalars.
  double dir1(Vec2 a) const { return grad.x * a.x + grad.y * a.y; }              // Phi_a
  double dir2(Vec2 a, Vec2 b) const;                                             // Phi_ab
  double dir3(Vec2 a, Vec2 b, Vec2 c) const;                                     // Phi_abc
  double g_of(Vec2 a, Vec2 b) const;                                             // g(a,b)
  double hess_h_of(Vec2 a, Vec2 b) const;
  double riem_of(Vec2 a, Vec2 b, Vec2 c, Vec2 d) const;
  double riemann_square() const;  // Riem_abcd Riem^{abcd}

  double third[2][2][2] = {};  // Phi_ijk

  std::string to_json() const;
};

// Fully symmetric covariant derivative Q_abcd = nabla_a Phi_bcd.
struct QTensor {
  double q[2][2][2][2] = {};
  double max_asymmetry = 0.0;  // before symmetrization
  double of(Vec2 a, Vec2 b, Vec2 c, Vec2 d) const;
};

// Taylor-backed tensor calculus at one jet point.  Field accessors return
// truncated polynomials in the jet's chart whose low-order coefficients are
// exact; validity degree = jet order minus the derivatives consumed.
class GeometryCalc {
 public:
  explicit GeometryCalc(const Jet& jet);

  const Jet& jet() const { return jet_; }
  int dim() const { return d_; }

  PointGeometry point(double delta_grad = 1e-8, double eigen_tol = 1e-8) const;
  QTensor covariant_q() const;  // needs order >= 4

  // Scalar fields.
  const TaylorN& phi() const { return phi_; }
  TaylorN grad_norm2_field() const;         // |grad Phi|^2_h, valid to order-2
  TaylorN trg_field() const;                // Tr g = Phi_abc Phi^{abc}, order-3
  TaylorN lambda_field() const;             // 2D only, order-3
  const TaylorN& metric_inv_field(int i, int j) const { return inv_[i * d_ + j]; }
  TaylorN g_field(int i, int j) const;

  // Scalar weighted Laplacian L f = Phi^{ij} f_ij (plain partials).
  double laplacian_scalar(const TaylorN& f) const;
  // Euclidean partials (f_1, ..., f_d) of a field at the point.
  std::vector<double> partials(const TaylorN& f) const;
  // Metric inner product of differentials: Phi^{ij} f_i g_j.
  double grad_inner(const TaylorN& f, const TaylorN& g) const;

  // Covariant weighted Laplacian of a rank-1..3 tensor field given by
  // components (flattened, TaylorN valid to degree >= 2).
  std::vector<double> laplacian_tensor(std::span<const TaylorN> comp, int rank) const;

  // Component fields for the standard inputs.
  std::vector<TaylorN> phi_i_fields() const;    // rank 1
  std::vector<TaylorN> phi_ijk_fields() const;  // rank 3
  std::vector<TaylorN> g_fields() const;        // rank 2

 private:
  std::vector<TaylorN> covariant_derivative(std::span<const TaylorN> comp, int rank) const;

  Jet jet_;
  int d_;
  const MultiIndexTable* tab_;
  TaylorN phi_;
  std::vector<TaylorN> d1_, d2_, d3_;  // Phi_i, Phi_ij, Phi_ijk fields
  std::vector<TaylorN> inv_;           // Phi^{ij} field
  std::vector<TaylorN> gamma_;         // Gamma^k_ij field, [k][i][j]
};

// Convenience wrappers (spec operation names).
PointGeometry point_geometry(const Jet& jet, double delta_grad = 1e-8, double eigen_tol = 1e-8);
QTensor covariant_Q(const Jet& jet);

// L f at the jet point for a field supplied only as a callback, via centered
// second differences contracted with Phi^{ij}.
double weighted_laplacian_scalar_fd(const Jet& jet, const std::function<double(Vec2)>& f,
                                    double h = 1e-3);

}  // namespace kelab
