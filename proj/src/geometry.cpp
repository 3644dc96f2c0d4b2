#include "kelab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <json.hpp>

namespace kelab {

namespace {

int idx2(int d, int i, int j) { return i * d + j; }
int idx3(int d, int i, int j, int k) { return (i * d + j) * d + k; }

}  // namespace

// ---------------------------------------------------------------------------
// GeometryCalc

GeometryCalc::GeometryCalc(const Jet& jet) : jet_(jet), d_(jet.dim()), tab_(jet.poly.table()) {
  if (jet_.order < 3) throw JetError("geometry: jet order must be >= 3");
  phi_ = jet_.poly;
  d1_.reserve(d_);
  for (int i = 0; i < d_; ++i) d1_.push_back(tn_derive(phi_, i));
  d2_.reserve(d_ * d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) d2_.push_back(tn_derive(d1_[i], j));
  d3_.reserve(d_ * d_ * d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j)
      for (int k = 0; k < d_; ++k) d3_.push_back(tn_derive(d2_[idx2(d_, i, j)], k));

  // Metric inverse by Gauss-Jordan over the Taylor ring; pivots are the
  // metric diagonal, positive for a convex jet.
  std::vector<TaylorN> m = d2_;
  inv_.assign(d_ * d_, TaylorN(tab_));
  for (int i = 0; i < d_; ++i) inv_[idx2(d_, i, i)] = TaylorN(tab_, 1.0);
  for (int col = 0; col < d_; ++col) {
    int piv = col;
    for (int r = col + 1; r < d_; ++r)
      if (std::abs(m[idx2(d_, r, col)].value()) > std::abs(m[idx2(d_, piv, col)].value())) piv = r;
    if (std::abs(m[idx2(d_, piv, col)].value()) < 1e-300)
      throw JetError("geometry: singular metric");
    if (piv != col)
      for (int j = 0; j < d_; ++j) {
        std::swap(m[idx2(d_, piv, j)], m[idx2(d_, col, j)]);
        std::swap(inv_[idx2(d_, piv, j)], inv_[idx2(d_, col, j)]);
      }
    TaylorN pinv = tn_recip(m[idx2(d_, col, col)]);
    for (int j = 0; j < d_; ++j) {
      m[idx2(d_, col, j)] = m[idx2(d_, col, j)] * pinv;
      inv_[idx2(d_, col, j)] = inv_[idx2(d_, col, j)] * pinv;
    }
    for (int r = 0; r < d_; ++r) {
      if (r == col) continue;
      TaylorN f = m[idx2(d_, r, col)];
      if (f.value() == 0.0) {
        bool all_zero = true;
        for (std::size_t p = 0; p < f.size(); ++p)
          if (f.raw(static_cast<int>(p)) != 0.0) { all_zero = false; break; }
        if (all_zero) continue;
      }
      for (int j = 0; j < d_; ++j) {
        m[idx2(d_, r, j)] -= f * m[idx2(d_, col, j)];
        inv_[idx2(d_, r, j)] -= f * inv_[idx2(d_, col, j)];
      }
    }
  }

  gamma_.assign(d_ * d_ * d_, TaylorN(tab_));
  for (int k = 0; k < d_; ++k)
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) {
        TaylorN acc(tab_);
        for (int l = 0; l < d_; ++l) acc += inv_[idx2(d_, k, l)] * d3_[idx3(d_, l, i, j)];
        gamma_[idx3(d_, k, i, j)] = 0.5 * acc;
      }
}

TaylorN GeometryCalc::grad_norm2_field() const {
  TaylorN acc(tab_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) acc += inv_[idx2(d_, i, j)] * d1_[i] * d1_[j];
  return acc;
}

TaylorN GeometryCalc::g_field(int i, int j) const {
  TaylorN acc(tab_);
  for (int a = 0; a < d_; ++a)
    for (int b = 0; b < d_; ++b)
      for (int c = 0; c < d_; ++c)
        for (int e = 0; e < d_; ++e)
          acc += d3_[idx3(d_, i, a, b)] * d3_[idx3(d_, j, c, e)] * inv_[idx2(d_, a, c)] *
                 inv_[idx2(d_, b, e)];
  return acc;
}

TaylorN GeometryCalc::trg_field() const {
  TaylorN acc(tab_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) acc += inv_[idx2(d_, i, j)] * g_field(i, j);
  return acc;
}

TaylorN GeometryCalc::lambda_field() const {
  if (d_ != 2) throw JetError("lambda is defined for the 2D engine only");
  // raised gradient field
  std::vector<TaylorN> G;
  for (int k = 0; k < d_; ++k) {
    TaylorN acc(tab_);
    for (int l = 0; l < d_; ++l) acc += inv_[idx2(d_, k, l)] * d1_[l];
    G.push_back(acc);
  }
  TaylorN lam(tab_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) {
      TaylorN ric = g_field(i, j);
      for (int k = 0; k < d_; ++k) ric += d3_[idx3(d_, i, j, k)] * G[k];
      lam += inv_[idx2(d_, i, j)] * ric;  // 4 Tr_h Ric accumulating
    }
  return 0.5 * lam;  // lambda = 2 Tr_h Ric, and ric above is 4 Ric
}

double GeometryCalc::laplacian_scalar(const TaylorN& f) const {
  std::vector<int> alpha(d_, 0);
  double acc = 0.0;
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) {
      std::fill(alpha.begin(), alpha.end(), 0);
      ++alpha[i];
      ++alpha[j];
      acc += inv_[idx2(d_, i, j)].value() * f.partial(alpha);
    }
  return acc;
}

std::vector<double> GeometryCalc::partials(const TaylorN& f) const {
  std::vector<double> r(d_);
  std::vector<int> alpha(d_, 0);
  for (int i = 0; i < d_; ++i) {
    std::fill(alpha.begin(), alpha.end(), 0);
    alpha[i] = 1;
    r[i] = f.partial(alpha);
  }
  return r;
}

double GeometryCalc::grad_inner(const TaylorN& f, const TaylorN& g) const {
  auto fi = partials(f);
  auto gi = partials(g);
  double acc = 0.0;
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) acc += inv_[idx2(d_, i, j)].value() * fi[i] * gi[j];
  return acc;
}

std::vector<TaylorN> GeometryCalc::covariant_derivative(std::span<const TaylorN> comp,
                                                        int rank) const {
  int sz = 1;
  for (int r = 0; r < rank; ++r) sz *= d_;
  std::vector<TaylorN> out(d_ * sz, TaylorN(tab_));
  std::vector<int> idx(rank);
  for (int p = 0; p < d_; ++p) {
    for (int flat = 0; flat < sz; ++flat) {
      int rem = flat;
      for (int r = rank - 1; r >= 0; --r) {
        idx[r] = rem % d_;
        rem /= d_;
      }
      TaylorN acc = tn_derive(comp[flat], p);
      for (int slot = 0; slot < rank; ++slot) {
        // replace idx[slot] by m and contract with Gamma^m_{p idx[slot]}
        int stride = 1;
        for (int r = slot + 1; r < rank; ++r) stride *= d_;
        int base = flat - idx[slot] * stride;
        for (int m = 0; m < d_; ++m)
          acc -= gamma_[idx3(d_, m, p, idx[slot])] * comp[base + m * stride];
      }
      out[p * sz + flat] = acc;
    }
  }
  return out;
}

std::vector<double> GeometryCalc::laplacian_tensor(std::span<const TaylorN> comp, int rank) const {
  int sz = 1;
  for (int r = 0; r < rank; ++r) sz *= d_;
  auto s1 = covariant_derivative(comp, rank);
  auto s2 = covariant_derivative(s1, rank + 1);
  // raised gradient values
  std::vector<double> G(d_, 0.0);
  for (int k = 0; k < d_; ++k)
    for (int l = 0; l < d_; ++l) G[k] += inv_[idx2(d_, k, l)].value() * d1_[l].value();
  std::vector<double> out(sz, 0.0);
  for (int flat = 0; flat < sz; ++flat) {
    double acc = 0.0;
    for (int p = 0; p < d_; ++p)
      for (int q = 0; q < d_; ++q)
        acc += inv_[idx2(d_, p, q)].value() * s2[q * (d_ * sz) + p * sz + flat].value();
    for (int k = 0; k < d_; ++k) acc -= 0.5 * G[k] * s1[k * sz + flat].value();
    out[flat] = acc;
  }
  return out;
}

std::vector<TaylorN> GeometryCalc::phi_i_fields() const { return d1_; }
std::vector<TaylorN> GeometryCalc::phi_ijk_fields() const { return d3_; }

std::vector<TaylorN> GeometryCalc::g_fields() const {
  std::vector<TaylorN> g;
  g.reserve(d_ * d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) g.push_back(g_field(i, j));
  return g;
}

// ---------------------------------------------------------------------------
// Pointwise package

namespace {

Vec2 normalize_h(Vec2 w, const Mat2& metric) {
  double n2 = metric.a * w.x * w.x + 2.0 * metric.b * w.x * w.y + metric.d * w.y * w.y;
  if (!(n2 > 0.0)) throw JetError("geometry: cannot normalize null vector");
  return w * (1.0 / std::sqrt(n2));
}

double h_inner(Vec2 a, Vec2 b, const Mat2& m) {
  return m.a * a.x * b.x + m.b * (a.x * b.y + a.y * b.x) + m.d * a.y * b.y;
}

}  // namespace

PointGeometry GeometryCalc::point(double delta_grad, double eigen_tol) const {
  if (d_ != 2) throw JetError("point_geometry: 2D jets only");
  PointGeometry pg;
  pg.point = {jet_.point[0], jet_.point[1]};
  pg.source = jet_.source;
  pg.order = jet_.order;

  pg.grad = {d1_[0].value(), d1_[1].value()};
  pg.metric = {d2_[0].value(), d2_[1].value(), d2_[2].value(), d2_[3].value()};
  if (!(pg.metric.a > 0.0 && pg.metric.det() > 0.0))
    throw JetError("point_geometry: indefinite metric");
  pg.metric_inv = pg.metric.inverse();
  pg.grad_vec = pg.metric_inv.apply(pg.grad);
  pg.grad_h2 = pg.grad.dot(pg.grad_vec);

  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) pg.third[i][j][k] = d3_[idx3(2, i, j, k)].value();

  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) pg.christoffel[k][i][j] = gamma_[idx3(2, k, i, j)].value();

  // raised third derivatives Phi^a_{kj}
  double raised[2][2][2];  // [a][k][j]
  for (int a = 0; a < 2; ++a)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j) {
        double acc = 0.0;
        for (int b = 0; b < 2; ++b) acc += pg.metric_inv(a, b) * pg.third[b][k][j];
        raised[a][k][j] = acc;
      }

  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) {
          double acc = 0.0;
          for (int a = 0; a < 2; ++a)
            acc += pg.third[i][l][a] * raised[a][k][j] - pg.third[i][j][a] * raised[a][k][l];
          pg.riemann[i][k][j][l] = 0.25 * acc;
        }

  // g tensor: g_ij = Phi_iab Phi_j^{ab} = Phi^a_{ib} Phi^b_{ja}
  double g[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      double acc = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) acc += raised[a][i][b] * raised[b][j][a];
      g[i][j] = acc;
    }
  pg.g_tensor = {g[0][0], g[0][1], g[1][0], g[1][1]};

  Mat2 ric;
  {
    double r[2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double acc = g[i][j];
        for (int k = 0; k < 2; ++k)
          acc += pg.third[i][j][k] * pg.grad_vec[k];
        r[i][j] = 0.25 * acc;
      }
    ric = {r[0][0], r[0][1], r[1][0], r[1][1]};
  }
  pg.ricci = ric;

  // lambda by metric projection; anisotropy is the defect of 4Ric = lambda*Phi.
  double trh_ric = pg.metric_inv.a * ric.a + pg.metric_inv.b * ric.b + pg.metric_inv.c * ric.c +
                   pg.metric_inv.d * ric.d;
  pg.lambda = 2.0 * trh_ric;
  Mat2 dev = ric.scaled(4.0) - pg.metric.scaled(pg.lambda);
  pg.lambda_anisotropy = std::max(std::max(std::abs(dev.a), std::abs(dev.b)),
                                  std::max(std::abs(dev.c), std::abs(dev.d)));

  // Riemannian Hessian of Phi and its metric invariants.
  {
    double H[2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double acc = pg.metric(i, j);
        for (int k = 0; k < 2; ++k) acc -= pg.christoffel[k][i][j] * pg.grad[k];
        H[i][j] = acc;
      }
    pg.hess_h = {H[0][0], H[0][1], H[1][0], H[1][1]};
  }
  Mat2 mixed = pg.metric_inv * pg.hess_h;
  pg.trace_hess_h = mixed.trace();
  pg.det_hess_h = mixed.det();
  {
    // ||H||^2 = H_ij H_kl Phi^{ik} Phi^{jl} = tr(mixed * mixed)
    Mat2 mm = mixed * mixed;
    pg.hs2_hess_h = mm.trace();
  }

  pg.bakry_emery = pg.ricci + pg.hess_h.scaled(0.5);

  // (n, v) frame.
  double grad_h = std::sqrt(std::max(0.0, pg.grad_h2));
  if (grad_h >= delta_grad) {
    pg.has_nv = true;
    pg.n_vec = pg.grad_vec * (1.0 / grad_h);
    Vec2 t = (std::abs(h_inner({1, 0}, pg.n_vec, pg.metric)) <
              std::abs(h_inner({0, 1}, pg.n_vec, pg.metric)))
                 ? Vec2{1, 0}
                 : Vec2{0, 1};
    Vec2 w = t - pg.n_vec * h_inner(t, pg.n_vec, pg.metric);
    pg.v_vec = normalize_h(w, pg.metric);
    if (pg.n_vec.cross(pg.v_vec) < 0.0) pg.v_vec = -pg.v_vec;
  }

  // Eigenframe of the Riemannian Hessian (generalized symmetric problem).
  {
    double tr = mixed.trace(), det = mixed.det();
    double disc = tr * tr - 4.0 * det;
    if (disc >= 0.0 || disc > -1e-14 * std::max(1.0, tr * tr)) {
      disc = std::sqrt(std::max(0.0, disc));
      double le = 0.5 * (tr + disc), lu = 0.5 * (tr - disc);
      if (std::abs(le - lu) >= eigen_tol) {
        auto eigvec = [&](double lam_this, double lam_other) {
          Mat2 A{mixed.a - lam_other, mixed.b, mixed.c, mixed.d - lam_other};
          Vec2 c0{A.a, A.c}, c1{A.b, A.d};
          Vec2 w = (c0.norm2() >= c1.norm2()) ? c0 : c1;
          return normalize_h(w, pg.metric);
        };
        pg.has_eigenframe = true;
        pg.Lambda_e = le;
        pg.Lambda_u = lu;
        pg.e_vec = eigvec(le, lu);
        pg.u_vec = eigvec(lu, le);
        // deterministic signs: Phi_e >= 0, then Phi_u >= 0, orientation fallback
        double pe = pg.dir1(pg.e_vec);
        if (pe < 0.0)
          pg.e_vec = -pg.e_vec;
        else if (std::abs(pe) < 1e-13 && (pg.e_vec.x < 0.0 || (pg.e_vec.x == 0.0 && pg.e_vec.y < 0.0)))
          pg.e_vec = -pg.e_vec;
        double pu = pg.dir1(pg.u_vec);
        if (pu < 0.0)
          pg.u_vec = -pg.u_vec;
        else if (std::abs(pu) < 1e-13 && pg.e_vec.cross(pg.u_vec) < 0.0)
          pg.u_vec = -pg.u_vec;
      }
    }
  }
  return pg;
}

QTensor GeometryCalc::covariant_q() const {
  if (d_ != 2) throw JetError("covariant_Q: 2D jets only");
  if (jet_.order < 4) throw JetError("covariant_Q: jet order must be >= 4");
  double fourth[2][2][2][2];
  {
    std::vector<int> alpha(2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          for (int e = 0; e < 2; ++e) {
            alpha[0] = (a == 0) + (b == 0) + (c == 0) + (e == 0);
            alpha[1] = 4 - alpha[0];
            fourth[a][b][c][e] = phi_.partial(alpha);
          }
  }
  double third[2][2][2], raised[2][2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) third[i][j][k] = d3_[idx3(2, i, j, k)].value();
  Mat2 metric{d2_[0].value(), d2_[1].value(), d2_[2].value(), d2_[3].value()};
  Mat2 minv = metric.inverse();
  for (int a = 0; a < 2; ++a)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        double acc = 0.0;
        for (int b = 0; b < 2; ++b) acc += minv(a, b) * third[b][j][k];
        raised[a][j][k] = acc;
      }

  QTensor Q;
  double raw[2][2][2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e) {
          double corr = 0.0;
          for (int k = 0; k < 2; ++k)
            corr += raised[k][a][b] * third[k][c][e] + raised[k][a][c] * third[k][b][e] +
                    raised[k][a][e] * third[k][b][c];
          raw[a][b][c][e] = fourth[a][b][c][e] - 0.5 * corr;
        }

  // symmetrize over all permutations; track the worst deviation
  int perm4[24][4];
  {
    int p[4] = {0, 1, 2, 3};
    int n = 0;
    std::sort(p, p + 4);
    do {
      for (int i = 0; i < 4; ++i) perm4[n][i] = p[i];
      ++n;
    } while (std::next_permutation(p, p + 4));
  }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int e = 0; e < 2; ++e) {
          int id[4] = {a, b, c, e};
          double mean = 0.0;
          for (auto& pm : perm4) mean += raw[id[pm[0]]][id[pm[1]]][id[pm[2]]][id[pm[3]]];
          mean /= 24.0;
          for (auto& pm : perm4)
            Q.max_asymmetry = std::max(
                Q.max_asymmetry, std::abs(raw[id[pm[0]]][id[pm[1]]][id[pm[2]]][id[pm[3]]] - mean));
          Q.q[a][b][c][e] = mean;
        }
  return Q;
}

// ---------------------------------------------------------------------------

double PointGeometry::dir2(Vec2 a, Vec2 b) const {
  return metric.a * a.x * b.x + metric.b * a.x * b.y + metric.c * a.y * b.x +
         metric.d * a.y * b.y;
}

double PointGeometry::dir3(Vec2 a, Vec2 b, Vec2 c) const {
  double acc = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) acc += third[i][j][k] * a[i] * b[j] * c[k];
  return acc;
}

double PointGeometry::g_of(Vec2 a, Vec2 b) const {
  return g_tensor.a * a.x * b.x + g_tensor.b * a.x * b.y + g_tensor.c * a.y * b.x +
         g_tensor.d * a.y * b.y;
}

double PointGeometry::hess_h_of(Vec2 a, Vec2 b) const {
  return hess_h.a * a.x * b.x + hess_h.b * a.x * b.y + hess_h.c * a.y * b.x +
         hess_h.d * a.y * b.y;
}

double PointGeometry::riem_of(Vec2 a, Vec2 b, Vec2 c, Vec2 dd) const {
  double acc = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) acc += riemann[i][k][j][l] * a[i] * b[k] * c[j] * dd[l];
  return acc;
}

double PointGeometry::riemann_square() const {
  double acc = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l) {
          double up = 0.0;
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
              for (int c = 0; c < 2; ++c)
                for (int e = 0; e < 2; ++e)
                  up += metric_inv(i, a) * metric_inv(k, b) * metric_inv(j, c) *
                        metric_inv(l, e) * riemann[a][b][c][e];
          acc += riemann[i][k][j][l] * up;
        }
  return acc;
}

double QTensor::of(Vec2 a, Vec2 b, Vec2 c, Vec2 dd) const {
  double acc = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) acc += q[i][j][k][l] * a[i] * b[j] * c[k] * dd[l];
  return acc;
}

std::string PointGeometry::to_json() const {
  nlohmann::json j;
  j["point"] = {point.x, point.y};
  j["source"] = source_name(source);
  j["order"] = order;
  j["metric"] = {{metric.a, metric.b}, {metric.c, metric.d}};
  j["metric_inv"] = {{metric_inv.a, metric_inv.b}, {metric_inv.c, metric_inv.d}};
  j["grad"] = {grad.x, grad.y};
  j["grad_h2"] = grad_h2;
  j["lambda"] = lambda;
  j["lambda_anisotropy"] = lambda_anisotropy;
  j["ricci"] = {{ricci.a, ricci.b}, {ricci.c, ricci.d}};
  j["g"] = {{g_tensor.a, g_tensor.b}, {g_tensor.c, g_tensor.d}};
  j["hess_h"] = {{hess_h.a, hess_h.b}, {hess_h.c, hess_h.d}};
  j["bakry_emery"] = {{bakry_emery.a, bakry_emery.b}, {bakry_emery.c, bakry_emery.d}};
  j["trace_hess_h"] = trace_hess_h;
  j["hs2_hess_h"] = hs2_hess_h;
  j["det_hess_h"] = det_hess_h;
  nlohmann::json gam = nlohmann::json::array();
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j2 = 0; j2 < 2; ++j2)
        gam.push_back({k, i, j2, christoffel[k][i][j2]});
  j["christoffel"] = gam;
  if (has_nv) {
    j["n"] = {n_vec.x, n_vec.y};
    j["v"] = {v_vec.x, v_vec.y};
  }
  if (has_eigenframe) {
    j["e"] = {e_vec.x, e_vec.y};
    j["u"] = {u_vec.x, u_vec.y};
    j["Lambda_e"] = Lambda_e;
    j["Lambda_u"] = Lambda_u;
  }
  return j.dump();
}

PointGeometry point_geometry(const Jet& jet, double delta_grad, double eigen_tol) {
  return GeometryCalc(jet).point(delta_grad, eigen_tol);
}

QTensor covariant_Q(const Jet& jet) { return GeometryCalc(jet).covariant_q(); }

double weighted_laplacian_scalar_fd(const Jet& jet, const std::function<double(Vec2)>& f,
                                    double h) {
  if (jet.dim() != 2) throw JetError("weighted_laplacian_scalar_fd: 2D only");
  Vec2 x{jet.point[0], jet.point[1]};
  // 4th-order second-derivative stencils on a 5x5 patch
  double v[5][5];
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j) v[i + 2][j + 2] = f({x.x + i * h, x.y + j * h});
  const double w1[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};   // f'
  const double w2[5] = {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};  // f''
  double fxx = 0.0, fyy = 0.0, fxy = 0.0;
  for (int i = 0; i < 5; ++i) {
    fxx += w2[i] * v[i][2];
    fyy += w2[i] * v[2][i];
    for (int j = 0; j < 5; ++j) fxy += w1[i] * w1[j] * v[i][j];
  }
  fxx /= h * h;
  fyy /= h * h;
  fxy /= h * h;
  Mat2 minv = jet.hess2().inverse();
  return minv.a * fxx + 2.0 * minv.b * fxy + minv.d * fyy;
}

}  // namespace kelab
