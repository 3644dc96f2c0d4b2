#include "kelab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "kelab/parallel.hpp"

namespace kelab {

namespace {

// 1D stencils over offsets -2..2.
constexpr double kD1_4[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
constexpr double kD2_4[5] = {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
constexpr double kD1_2[5] = {0.0, -0.5, 0.0, 0.5, 0.0};
constexpr double kD2_2[5] = {0.0, 1.0, -2.0, 1.0, 0.0};
constexpr double kD3_2[5] = {-0.5, 1.0, 0.0, -1.0, 0.5};
constexpr double kD4_2[5] = {1.0, -4.0, 6.0, -4.0, 1.0};

// Fourth-order accurate up to total derivative order 2, second order above.
void stencil_1d(int order, bool high_acc, const double*& w) {
  switch (order) {
    case 0: w = nullptr; return;
    case 1: w = high_acc ? kD1_4 : kD1_2; return;
    case 2: w = high_acc ? kD2_4 : kD2_2; return;
    case 3: w = kD3_2; return;
    case 4: w = kD4_2; return;
    default: throw JetError("grid stencil: order out of range");
  }
}

}  // namespace

Jet GridPotential::jet_at_node(int i, int j, int order, int spacing) const {
  if (order < 0 || order > 4) throw JetError("grid jets support order <= 4");
  if (!jet_ok(i, j, spacing)) throw JetError("grid jet: node too close to the boundary");
  const double hs = h() * spacing;
  const auto* tab = MultiIndexTable::get(2, order);
  TaylorN poly(tab);

  double patch[5][5];
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) patch[a + 2][b + 2] = at(i + a * spacing, j + b * spacing);

  std::vector<int> alpha(2);
  for (int ax = 0; ax <= order; ++ax)
    for (int ay = 0; ay + ax <= order; ++ay) {
      bool high = (ax + ay <= 2);
      double v = 0.0;
      if (ax == 0 && ay == 0) {
        v = patch[2][2];
      } else {
        const double *wx, *wy;
        stencil_1d(ax, high, wx);
        stencil_1d(ay, high, wy);
        for (int a = 0; a < 5; ++a) {
          double wa = wx ? wx[a] : (a == 2 ? 1.0 : 0.0);
          if (wa == 0.0) continue;
          for (int b = 0; b < 5; ++b) {
            double wb = wy ? wy[b] : (b == 2 ? 1.0 : 0.0);
            if (wb == 0.0) continue;
            v += wa * wb * patch[a][b];
          }
        }
        v /= std::pow(hs, ax + ay);
      }
      alpha[0] = ax;
      alpha[1] = ay;
      poly.set_partial(alpha, v);
    }

  Jet jet;
  Vec2 x = node(i, j);
  jet.point = {x.x, x.y};
  jet.order = order;
  jet.source = JetSource::grid;
  jet.poly = poly;
  double scale = std::max(1.0, std::abs(poly.value()));
  for (int k = 0; k <= order && k < 6; ++k)
    jet.est_error[k] = scale * ((k <= 2) ? hs * hs * hs * hs : hs * hs);
  if (order >= 2) jet.require_convex();
  return jet;
}

Jet GridPotential::jet_near(Vec2 x, int order) const {
  const double hh = h();
  int i = static_cast<int>(std::lround((x.x + L) / hh));
  int j = static_cast<int>(std::lround((x.y + L) / hh));
  int m = 5;
  i = std::clamp(i, m, N - 1 - m);
  j = std::clamp(j, m, N - 1 - m);
  Vec2 base = node(i, j);
  if (std::abs(base.x - x.x) > hh || std::abs(base.y - x.y) > hh)
    throw JetError("grid jet: point outside the jet-supported region");
  Jet jet = jet_at_node(i, j, order);
  double delta[2] = {x.x - base.x, x.y - base.y};
  jet.poly = tn_shift(jet.poly, delta);
  jet.point = {x.x, x.y};
  if (order >= 2) jet.require_convex();
  return jet;
}

double GridPotential::value_bilinear(Vec2 x) const {
  const double hh = h();
  double fx = (x.x + L) / hh, fy = (x.y + L) / hh;
  int i = std::clamp(static_cast<int>(std::floor(fx)), 0, N - 2);
  int j = std::clamp(static_cast<int>(std::floor(fy)), 0, N - 2);
  double tx = fx - i, ty = fy - j;
  return (1 - tx) * (1 - ty) * at(i, j) + tx * (1 - ty) * at(i + 1, j) +
         (1 - tx) * ty * at(i, j + 1) + tx * ty * at(i + 1, j + 1);
}

std::vector<double> GridPotential::ke_residual(ResidualSummary* summary) const {
  std::vector<double> res(phi.size(), 0.0);
  const double hh = h();
  const double h2 = hh * hh;
  std::vector<int> indefinite(N - 2, 0);
  std::vector<double> rowmax(N - 2, 0.0);
  par::for_each_index(static_cast<std::size_t>(N - 2), [&](std::size_t row) {
    int j = static_cast<int>(row) + 1;
    int bad = 0;
    double mx = 0.0;
    for (int i = 1; i < N - 1; ++i) {
      double dxx = (at(i + 1, j) - 2.0 * at(i, j) + at(i - 1, j)) / h2;
      double dyy = (at(i, j + 1) - 2.0 * at(i, j) + at(i, j - 1)) / h2;
      double dxy =
          (at(i + 1, j + 1) + at(i - 1, j - 1) - at(i + 1, j - 1) - at(i - 1, j + 1)) / (4.0 * h2);
      double det = dxx * dyy - dxy * dxy;
      double& r = res[static_cast<std::size_t>(j) * N + i];
      if (det <= 0.0 || dxx <= 0.0) {
        r = std::numeric_limits<double>::quiet_NaN();
        ++bad;
      } else {
        r = det * std::exp(at(i, j)) - 1.0;
        mx = std::max(mx, std::abs(r));
      }
    }
    indefinite[row] = bad;
    rowmax[row] = mx;
  });
  if (summary) {
    summary->max_abs = 0.0;
    summary->n_indefinite = 0;
    for (int r = 0; r < N - 2; ++r) {
      summary->max_abs = std::max(summary->max_abs, rowmax[r]);
      summary->n_indefinite += indefinite[r];
    }
  }
  return res;
}

double GridPotential::mass() const {
  const double h2 = h() * h();
  const std::size_t ni = static_cast<std::size_t>(N - 2);
  return par::block_sum(ni * ni, [&](std::size_t k) {
    int i = 1 + static_cast<int>(k % ni);
    int j = 1 + static_cast<int>(k / ni);
    return std::exp(-at(i, j)) * h2;
  });
}

std::string GridPotential::to_csv() const {
  std::string out = "x,y,phi\n";
  out.reserve(phi.size() * 40);
  char buf[96];
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      Vec2 p = node(i, j);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.x, p.y, at(i, j));
      out += buf;
    }
  return out;
}

std::string GridPotential::meta_json() const {
  nlohmann::json j;
  j["L"] = L;
  j["N"] = N;
  j["body"] = nlohmann::json::parse(body.to_json());
  return j.dump(2);
}

GridPotential GridPotential::from_csv(const std::string& csv, const std::string& meta) {
  nlohmann::json m;
  try {
    m = nlohmann::json::parse(meta);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("grid meta: bad JSON: ") + e.what());
  }
  GridPotential g;
  g.L = m.at("L").get<double>();
  g.N = m.at("N").get<int>();
  g.body = ConvexBody::from_json(m.at("body").dump());
  g.phi.assign(static_cast<std::size_t>(g.N) * g.N, 0.0);

  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("grid csv: empty");
  std::size_t k = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double x, y, v;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &y, &v) != 3)
      throw ValidationError("grid csv: bad row '" + line + "'");
    if (k >= g.phi.size()) throw ValidationError("grid csv: too many rows");
    g.phi[k++] = v;
  }
  if (k != g.phi.size()) throw ValidationError("grid csv: wrong number of rows");
  return g;
}

double GridPotentialSource::min_value() const {
  double m = 1e300;
  for (double v : g_->phi) m = std::min(m, v);
  return m;
}

}  // namespace kelab
