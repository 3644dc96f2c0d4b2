#include "kelab/ma_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <cstdlib>

#include "kelab/geometry.hpp"
#include "kelab/parallel.hpp"

namespace kelab {

namespace {
bool trace_on() {
  static bool on = std::getenv("KELAB_SOLVER_TRACE") != nullptr;
  return on;
}
}  // namespace

void SolverConfig::validate() const {
  if (N < 33 || N % 2 == 0) throw ValidationError("solver: N must be odd and >= 33");
  if (L < 4.0) throw ValidationError("solver: L must be >= 4");
  if (!(tol > 0.0)) throw ValidationError("solver: tolerance must be positive");
  if (boundary == Boundary::oracle && !oracle_data)
    throw ValidationError("solver: oracle boundary mode needs data");
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Trip = Eigen::Triplet<double>;

// Initial guess: log-sum-exp smoothing of the support function at scale tau
// (smoothed norm for disks) plus log(area) plus a small quadratic floor.
double smooth_guess(const ConvexBody& body, Vec2 x, double tau, double quad) {
  double lse;
  if (body.kind() == ConvexBody::Kind::disk) {
    double r = body.radius();
    lse = std::sqrt(r * r * x.norm2() + tau * tau);
  } else {
    const auto& vs = body.vertices();
    double m = -1e300;
    for (const auto& v : vs) m = std::max(m, x.dot(v));
    double acc = 0.0;
    for (const auto& v : vs) acc += std::exp((x.dot(v) - m) / tau);
    lse = m + tau * std::log(acc);
  }
  return lse + std::log(body.area()) + 0.5 * quad * x.norm2();
}

struct NewtonWork {
  std::vector<double> dxx, dyy, dxy;
};

// Residual of the regularized equation, F = log det D2h(u) - log(e^{-u}+eps)
// at interior nodes.  Returns false if the discrete Hessian is indefinite
// anywhere.  ke_max gets max |det/(e^{-u}+eps) - 1|.
bool assemble_residual(const GridPotential& g, double eps, NewtonWork& w, std::vector<double>& F,
                       double* ke_max, bool parallel) {
  const int N = g.N;
  const double h2 = g.h() * g.h();
  const std::size_t ni = static_cast<std::size_t>(N - 2);
  F.assign(ni * ni, 0.0);
  w.dxx.assign(ni * ni, 0.0);
  w.dyy.assign(ni * ni, 0.0);
  w.dxy.assign(ni * ni, 0.0);
  std::vector<int> bad(ni, 0);
  std::vector<double> rowmax(ni, 0.0);
  bool saved = par::enabled();
  par::enabled() = parallel;
  par::for_each_index(ni, [&](std::size_t row) {
    int j = static_cast<int>(row) + 1;
    int nbad = 0;
    double mx = 0.0;
    for (int i = 1; i < N - 1; ++i) {
      std::size_t k = row * ni + (i - 1);
      double dxx = (g.at(i + 1, j) - 2.0 * g.at(i, j) + g.at(i - 1, j)) / h2;
      double dyy = (g.at(i, j + 1) - 2.0 * g.at(i, j) + g.at(i, j - 1)) / h2;
      double dxy = (g.at(i + 1, j + 1) + g.at(i - 1, j - 1) - g.at(i + 1, j - 1) -
                    g.at(i - 1, j + 1)) /
                   (4.0 * h2);
      w.dxx[k] = dxx;
      w.dyy[k] = dyy;
      w.dxy[k] = dxy;
      double det = dxx * dyy - dxy * dxy;
      if (det <= 0.0 || dxx <= 0.0) {
        ++nbad;
        continue;
      }
      double target = std::exp(-g.at(i, j)) + eps;
      F[k] = std::log(det) - std::log(target);
      mx = std::max(mx, std::abs(det / target - 1.0));
    }
    bad[row] = nbad;
    rowmax[row] = mx;
  });
  par::enabled() = saved;
  int nbad = 0;
  double mx = 0.0;
  for (std::size_t r = 0; r < ni; ++r) {
    nbad += bad[r];
    mx = std::max(mx, rowmax[r]);
  }
  if (ke_max) *ke_max = mx;
  return nbad == 0;
}

bool pd_ok(const GridPotential& g) {
  NewtonWork w;
  std::vector<double> F;
  return assemble_residual(g, 1.0, w, F, nullptr, true);
}

// Damped Newton for the eps-regularized equation at fixed Dirichlet data.
void newton(GridPotential& g, double eps, double tol, const SolverConfig& cfg, SolveInfo* info) {
  const int N = g.N;
  const std::size_t ni = static_cast<std::size_t>(N - 2);
  const double h2 = g.h() * g.h();
  NewtonWork w;
  std::vector<double> F;
  std::vector<double> history;

  double ke_max = 0.0;
  if (!assemble_residual(g, eps, w, F, &ke_max, true))
    throw ConvexityError("solver: initial state has an indefinite discrete Hessian");

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    history.push_back(ke_max);
    if (ke_max < tol) {
      if (info) {
        info->residual_history.insert(info->residual_history.end(), history.begin(),
                                      history.end());
        info->newton_iterations += iter;
        info->final_residual = ke_max;
      }
      return;
    }

    std::vector<Trip> trips;
    trips.reserve(ni * ni * 9);
    for (std::size_t row = 0; row < ni; ++row) {
      int j = static_cast<int>(row) + 1;
      for (int i = 1; i < N - 1; ++i) {
        std::size_t k = row * ni + (i - 1);
        double det = w.dxx[k] * w.dyy[k] - w.dxy[k] * w.dxy[k];
        double m11 = w.dyy[k] / det, m22 = w.dxx[k] / det, m12 = -w.dxy[k] / det;
        double eu = std::exp(-g.at(i, j));
        double react = eu / (eu + eps);  // -d/du of -log(e^{-u}+eps)
        long K = static_cast<long>(k);
        auto add = [&](int di, int dj, double v) {
          int ii = i + di, jj = j + dj;
          if (ii <= 0 || jj <= 0 || ii >= N - 1 || jj >= N - 1) return;  // Dirichlet
          trips.emplace_back(K, static_cast<long>(jj - 1) * static_cast<long>(ni) + (ii - 1), v);
        };
        add(-1, 0, m11 / h2);
        add(1, 0, m11 / h2);
        add(0, -1, m22 / h2);
        add(0, 1, m22 / h2);
        add(1, 1, 0.5 * m12 / h2);
        add(-1, -1, 0.5 * m12 / h2);
        add(1, -1, -0.5 * m12 / h2);
        add(-1, 1, -0.5 * m12 / h2);
        add(0, 0, -2.0 * (m11 + m22) / h2 + react);
      }
    }
    SpMat J(static_cast<long>(ni * ni), static_cast<long>(ni * ni));
    J.setFromTriplets(trips.begin(), trips.end());
    Eigen::VectorXd rhs(static_cast<long>(ni * ni));
    for (std::size_t k = 0; k < ni * ni; ++k) rhs[static_cast<long>(k)] = -F[k];

    Eigen::SparseLU<SpMat> lu;
    lu.compute(J);
    if (lu.info() != Eigen::Success)
      throw SolverError("solver: sparse factorization failed", history);
    Eigen::VectorXd delta = lu.solve(rhs);
    if (lu.info() != Eigen::Success) throw SolverError("solver: linear solve failed", history);

    auto rms = [](const std::vector<double>& v) {
      double s = 0.0;
      for (double x : v) s += x * x;
      return std::sqrt(s / static_cast<double>(v.size()));
    };
    double fnorm = rms(F);
    GridPotential trial = g;
    bool accepted = false;
    std::vector<double> Ft;
    for (double t = 1.0; t >= cfg.min_step; t *= 0.5) {
      par::for_each_index(ni, [&](std::size_t row) {
        for (std::size_t c = 0; c < ni; ++c)
          trial.at(static_cast<int>(c) + 1, static_cast<int>(row) + 1) =
              g.at(static_cast<int>(c) + 1, static_cast<int>(row) + 1) +
              t * delta[static_cast<long>(row * ni + c)];
      });
      double ke_trial = 0.0;
      if (!assemble_residual(trial, eps, w, Ft, &ke_trial, true)) continue;
      if (rms(Ft) <= (1.0 - 1e-4 * t) * fnorm || ke_trial < tol) {
        g.phi.swap(trial.phi);
        F.swap(Ft);
        ke_max = ke_trial;
        accepted = true;
        break;
      }
    }
    if (trace_on())
      std::fprintf(stderr, "[newton] N=%d eps=%.3g iter=%d ke=%.3e fnorm=%.3e accepted=%d\n", N,
                   eps, iter, ke_max, fnorm, accepted ? 1 : 0);
    if (!accepted)
      throw ConvexityError(
          "solver: line search could not restore convexity or reduce the residual", history);
  }
  history.push_back(ke_max);
  throw SolverError("solver: no convergence within max iterations", history);
}

// Moves the solution from its current Dirichlet data to `data`, applying the
// change as a smooth field over the whole grid (constant along rays from the
// center, faded to the mean near the origin) so the discrete Hessian is never
// kicked by a boundary-localized jump.  Bisects when a chunk would break
// convexity.
void morph_to_data(GridPotential& g, const std::function<double(Vec2)>& data, double eps,
                   double tol, const SolverConfig& cfg, SolveInfo* info) {
  const int N = g.N;
  // boundary delta as a function of the boundary point
  auto bdelta = [&](Vec2 xb) { return data(xb) - g.value_bilinear(xb); };
  // mean over boundary nodes
  double mean = 0.0;
  {
    int cnt = 0;
    for (int i = 0; i < N; ++i) {
      mean += bdelta(g.node(i, 0)) + bdelta(g.node(i, N - 1));
      cnt += 2;
      if (i > 0 && i < N - 1) {
        mean += bdelta(g.node(0, i)) + bdelta(g.node(N - 1, i));
        cnt += 2;
      }
    }
    mean /= cnt;
  }
  std::vector<double> de(g.phi.size());
  par::for_each_index(static_cast<std::size_t>(N), [&](std::size_t row) {
    int j = static_cast<int>(row);
    for (int i = 0; i < N; ++i) {
      Vec2 x = g.node(i, j);
      double s = std::max(std::abs(x.x), std::abs(x.y)) / g.L;
      double v;
      if (s <= 0.25) {
        v = mean;
      } else {
        Vec2 xb = x * (g.L / std::max(std::abs(x.x), std::abs(x.y)));
        double t = std::min(1.0, (s - 0.25) / 0.5);
        double wgt = t * t * (3.0 - 2.0 * t);
        v = mean + wgt * (bdelta(xb) - mean);
      }
      de[static_cast<std::size_t>(j) * N + i] = v;
    }
  });
  // exact boundary increments (no interpolation error on the boundary row)
  for (int i = 0; i < N; ++i) {
    de[i] = data(g.node(i, 0)) - g.at(i, 0);
    de[static_cast<std::size_t>(N - 1) * N + i] = data(g.node(i, N - 1)) - g.at(i, N - 1);
    de[static_cast<std::size_t>(i) * N] = data(g.node(0, i)) - g.at(0, i);
    de[static_cast<std::size_t>(i) * N + (N - 1)] = data(g.node(N - 1, i)) - g.at(N - 1, i);
  }

  std::vector<double> base = g.phi;
  double done = 0.0;
  while (done < 1.0) {
    double t = 1.0;
    for (;;) {
      par::for_each_index(g.phi.size(), [&](std::size_t k) { g.phi[k] = base[k] + t * de[k]; });
      if (pd_ok(g)) break;
      t = done + 0.5 * (t - done);
      if (t - done < 1e-3) {
        par::for_each_index(g.phi.size(),
                            [&](std::size_t k) { g.phi[k] = base[k] + done * de[k]; });
        throw ConvexityError("solver: boundary-data continuation stalled");
      }
    }
    newton(g, eps, tol, cfg, info);
    done = t;
    // newton changed the interior; rebase the remaining fraction
    if (done < 1.0) {
      base = g.phi;
      double remaining = 1.0 - done;
      par::for_each_index(g.phi.size(), [&](std::size_t k) { de[k] *= remaining; });
      done = 0.0;
      // renormalize: de now holds the leftover change
      // (loop continues with fresh [0,1] parametrization)
    }
  }
}

// Regularization ladder from the current eps down to zero.
void descend_eps(GridPotential& g, double& eps, double eps_floor, const SolverConfig& cfg,
                 double stage_tol, double final_tol, SolveInfo* info) {
  double factor = 0.02;
  while (eps > 0.0) {
    double next = (eps <= eps_floor) ? 0.0 : std::max(eps * factor, eps_floor);
    GridPotential save = g;
    try {
      newton(g, next, next == 0.0 ? final_tol : stage_tol, cfg, info);
      eps = next;
    } catch (const ConvexityError&) {
      g = save;
      factor = std::sqrt(factor);
      if (factor > 0.7) throw;
    }
  }
}

GridPotential prolong(const GridPotential& coarse) {
  GridPotential fine;
  fine.L = coarse.L;
  fine.N = 2 * coarse.N - 1;
  fine.body = coarse.body;
  fine.phi.assign(static_cast<std::size_t>(fine.N) * fine.N, 0.0);
  for (int j = 0; j < fine.N; ++j)
    for (int i = 0; i < fine.N; ++i) {
      int ci = i / 2, cj = j / 2;
      if (i % 2 == 0 && j % 2 == 0)
        fine.at(i, j) = coarse.at(ci, cj);
      else if (i % 2 == 1 && j % 2 == 0)
        fine.at(i, j) = 0.5 * (coarse.at(ci, cj) + coarse.at(ci + 1, cj));
      else if (i % 2 == 0 && j % 2 == 1)
        fine.at(i, j) = 0.5 * (coarse.at(ci, cj) + coarse.at(ci, cj + 1));
      else
        fine.at(i, j) = 0.25 * (coarse.at(ci, cj) + coarse.at(ci + 1, cj) +
                                coarse.at(ci, cj + 1) + coarse.at(ci + 1, cj + 1));
    }
  return fine;
}

void set_boundary(GridPotential& g, const std::function<double(Vec2)>& data) {
  const int N = g.N;
  for (int i = 0; i < N; ++i) {
    g.at(i, 0) = data(g.node(i, 0));
    g.at(i, N - 1) = data(g.node(i, N - 1));
    g.at(0, i) = data(g.node(0, i));
    g.at(N - 1, i) = data(g.node(N - 1, i));
  }
}

}  // namespace

GridPotential solve(const ConvexBody& body, const SolverConfig& cfg, SolveInfo* info) {
  auto t0 = std::chrono::steady_clock::now();
  cfg.validate();
  if (!body.is_centered(1e-9)) throw ValidationError("solver: body must be recentered first");
  const double area = body.area();
  const double stage_tol = 1e-8;

  double bc_c = 0.0;
  std::shared_ptr<GridPotential> shape_ref;
  double shape_ring = cfg.bc_ring;
  auto data = [&](Vec2 x) -> double {
    if (cfg.boundary == SolverConfig::Boundary::oracle) return cfg.oracle_data(x);
    double base = body.support(x);
    if (cfg.boundary == SolverConfig::Boundary::support_raw) return base;
    double v = base + bc_c;
    if (shape_ref) {
      Vec2 ring = x * (shape_ring * shape_ref->L / std::max(std::abs(x.x), std::abs(x.y)));
      v += shape_ref->value_bilinear(ring) - body.support(ring);
    }
    return v;
  };

  std::vector<int> levels{cfg.N};
  if (cfg.cascade)
    while (levels.back() >= 2 * 129 - 1) levels.push_back((levels.back() + 1) / 2);
  std::reverse(levels.begin(), levels.end());
  const int n0 = levels.front();
  const double h0 = 2.0 * cfg.L / (n0 - 1);
  const int m_target = (n0 - 1) / 2;

  // Domain growth: start on a small box where the far field is mild, then
  // extend toward the requested halfwidth with ray-extended warm starts.
  int m = std::min(m_target, std::max(8, static_cast<int>(std::ceil(4.2 / h0))));

  GridPotential g;
  g.L = m * h0;
  g.N = 2 * m + 1;
  g.body = body;
  g.phi.assign(static_cast<std::size_t>(g.N) * g.N, 0.0);
  for (int j = 0; j < g.N; ++j)
    for (int i = 0; i < g.N; ++i) g.at(i, j) = smooth_guess(body, g.node(i, j), 0.5, 1e-3);

  // Stage 0: regularized solve against the guess's own boundary, morph the
  // data to the target, remove the regularization.
  double eps = 1e-4;
  newton(g, eps, 1e-6, cfg, info);
  morph_to_data(g, data, eps, 1e-6, cfg, info);
  {
    double data_max = 0.0;
    for (int i = 0; i < g.N; ++i)
      data_max = std::max({data_max, g.at(i, 0), g.at(i, g.N - 1), g.at(0, i), g.at(g.N - 1, i)});
    descend_eps(g, eps, 1e-3 * std::exp(-data_max), cfg, 1e-6, stage_tol, info);
  }

  // Calibration at the small box: mass fixes the additive constant; the ring
  // relaxation fixes the direction-dependent far-field offset.  Shape passes
  // only run here, where the far field is still tame enough to morph.
  if (cfg.boundary == SolverConfig::Boundary::support_calibrated) {
    for (int pass = 0; pass < cfg.bc_outer; ++pass) {
      double dc = std::log(g.mass() / area);
      if (cfg.bc_relax && std::abs(dc) < 0.2) {
        shape_ref = std::make_shared<GridPotential>(g);
        bc_c = dc;
      } else {
        bc_c += dc;
      }
      double drift = 0.0;
      int step = std::max(1, g.N / 64);
      for (int i = 0; i < g.N; i += step) {
        drift = std::max(drift, std::abs(data(g.node(i, 0)) - g.at(i, 0)));
        drift = std::max(drift, std::abs(data(g.node(i, g.N - 1)) - g.at(i, g.N - 1)));
        drift = std::max(drift, std::abs(data(g.node(0, i)) - g.at(0, i)));
        drift = std::max(drift, std::abs(data(g.node(g.N - 1, i)) - g.at(g.N - 1, i)));
      }
      if (info) {
        info->outer_passes = pass + 1;
        info->bc_constant = bc_c;
      }
      if (drift < 1e-5 && std::abs(dc) < cfg.mass_rel_tol) break;
      morph_to_data(g, data, 0.0, stage_tol, cfg, info);
    }
  }

  // Grow the box toward the target halfwidth.
  while (m < m_target) {
    m = std::min(m_target, std::max(m + 2, static_cast<int>(std::lround(m * 1.35))));
    GridPotential big;
    big.L = m * h0;
    big.N = 2 * m + 1;
    big.body = body;
    big.phi.assign(static_cast<std::size_t>(big.N) * big.N, 0.0);
    const int off = (big.N - g.N) / 2;
    const double clamp_l = g.L - 2.0 * h0;
    for (int j = 0; j < big.N; ++j)
      for (int i = 0; i < big.N; ++i) {
        int si = i - off, sj = j - off;
        if (si >= 1 && sj >= 1 && si < g.N - 1 && sj < g.N - 1) {
          big.at(i, j) = g.at(si, sj);
          continue;
        }
        Vec2 x = big.node(i, j);
        double nx = std::max(std::abs(x.x), std::abs(x.y));
        Vec2 xp = x * (clamp_l / nx);
        double ray = g.value_bilinear(xp) + body.support(x) - body.support(xp);
        // quadratic seed at the solution's own curvature scale
        double dist = nx - clamp_l;
        ray += 0.5 * std::exp(-ray) * dist * dist;
        big.at(i, j) = ray;
      }
    g = std::move(big);
    morph_to_data(g, data, 0.0, stage_tol, cfg, info);
    if (cfg.boundary == SolverConfig::Boundary::support_calibrated) {
      double dc = std::log(g.mass() / area);
      if (std::abs(dc) > cfg.mass_rel_tol) {
        bc_c += dc;
        morph_to_data(g, data, 0.0, stage_tol, cfg, info);
      }
    }
  }

  // Refine to the requested resolution.
  for (std::size_t l = 1; l < levels.size(); ++l) {
    g = prolong(g);
    set_boundary(g, data);
    newton(g, 0.0, cfg.tol, cfg, info);
  }
  if (levels.size() == 1) newton(g, 0.0, cfg.tol, cfg, info);

  // Mass touch-up on the fine grid (additive constant only: safe at any L).
  if (cfg.boundary == SolverConfig::Boundary::support_calibrated) {
    double dc = std::log(g.mass() / area);
    if (std::abs(dc) > cfg.mass_rel_tol) {
      bc_c += dc;
      morph_to_data(g, data, 0.0, cfg.tol, cfg, info);
    }
  }

  if (info) {
    double mv = 1e300;
    int mi = 0, mj = 0;
    for (int j = 1; j < g.N - 1; ++j)
      for (int i = 1; i < g.N - 1; ++i)
        if (g.at(i, j) < mv) {
          mv = g.at(i, j);
          mi = i;
          mj = j;
        }
    Vec2 xm = g.node(mi, mj);
    double hh = g.h();
    {
      double a = g.at(mi - 1, mj), b = g.at(mi, mj), c = g.at(mi + 1, mj);
      if (a - 2 * b + c > 0) xm.x += 0.5 * hh * (a - c) / (a - 2 * b + c);
    }
    {
      double a = g.at(mi, mj - 1), b = g.at(mi, mj), c = g.at(mi, mj + 1);
      if (a - 2 * b + c > 0) xm.y += 0.5 * hh * (a - c) / (a - 2 * b + c);
    }
    info->minimizer = xm;
    info->min_phi = mv;
    info->final_mass = g.mass();
    info->bc_constant = bc_c;
    info->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return g;
}

std::vector<ConvergenceRow> convergence_study(const ConvexBody& body,
                                              std::span<const SolverConfig> configs,
                                              const Potential* oracle, double window,
                                              std::vector<GridPotential>* grids) {
  std::vector<ConvergenceRow> rows;
  for (const auto& cfg : configs) {
    SolveInfo info;
    GridPotential g = solve(body, cfg, &info);
    ConvergenceRow row;
    row.N = cfg.N;
    row.L = cfg.L;
    row.seconds = info.seconds;
    row.mass = info.final_mass;
    GridPotential::ResidualSummary rs;
    g.ke_residual(&rs);
    row.max_residual = rs.max_abs;
    row.err_vs_oracle = std::numeric_limits<double>::quiet_NaN();
    if (oracle) {
      double err = 0.0;
      for (int j = 0; j < g.N; ++j)
        for (int i = 0; i < g.N; ++i) {
          Vec2 x = g.node(i, j);
          if (std::abs(x.x) > window || std::abs(x.y) > window) continue;
          err = std::max(err, std::abs(g.at(i, j) - oracle->value2(x)));
        }
      row.err_vs_oracle = err;
    }
    double lmin = 1e300, lmax = -1e300;
    int step = std::max(1, (g.N - 1) / 64);
    for (int j = 5; j < g.N - 5; j += step)
      for (int i = 5; i < g.N - 5; i += step) {
        Vec2 x = g.node(i, j);
        if (std::abs(x.x) > window || std::abs(x.y) > window) continue;
        if (!g.jet_ok(i, j)) continue;
        PointGeometry pg = point_geometry(g.jet_at_node(i, j, 3));
        lmin = std::min(lmin, pg.lambda);
        lmax = std::max(lmax, pg.lambda);
      }
    row.lambda_min = lmin;
    row.lambda_max = lmax;
    rows.push_back(row);
    if (grids) grids->push_back(std::move(g));
  }
  return rows;
}

std::string convergence_csv(std::span<const ConvergenceRow> rows) {
  std::string out = "N,L,max_residual,err_vs_oracle,lambda_min,lambda_max,mass,seconds\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.3f\n", r.N, r.L,
                  r.max_residual, r.err_vs_oracle, r.lambda_min, r.lambda_max, r.mass, r.seconds);
    out += buf;
  }
  return out;
}

namespace detail {

std::vector<double> newton_residual(const GridPotential& g, bool parallel) {
  NewtonWork w;
  std::vector<double> F;
  double ke = 0.0;
  assemble_residual(g, 0.0, w, F, &ke, parallel);
  return F;
}

double residual_max_norm(const GridPotential& g, bool parallel) {
  NewtonWork w;
  std::vector<double> F;
  double ke = 0.0;
  assemble_residual(g, 0.0, w, F, &ke, parallel);
  return ke;
}

}  // namespace detail

}  // namespace kelab
