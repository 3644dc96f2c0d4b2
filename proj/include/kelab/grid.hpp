#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kelab/bodies.hpp"
#include "kelab/potentials.hpp"

namespace kelab {

// Discrete solution of the Kahler-Einstein equation on [-L,L]^2 with N nodes
// per axis (N odd, the origin is a node).  Row-major storage, idx = j*N + i,
// x = -L + i*h, y = -L + j*h.
struct GridPotential {
  double L = 0.0;
  int N = 0;
  ConvexBody body = ConvexBody::box({1.0, 1.0});
  std::vector<double> phi;

  double h() const { return 2.0 * L / (N - 1); }
  double& at(int i, int j) { return phi[static_cast<std::size_t>(j) * N + i]; }
  double at(int i, int j) const { return phi[static_cast<std::size_t>(j) * N + i]; }
  Vec2 node(int i, int j) const { return {-L + i * h(), -L + j * h()}; }

  // Nodes eligible for FD jets keep 5 stencil-widths of margin per spacing.
  bool jet_ok(int i, int j, int spacing = 1) const {
    int m = 5 * spacing;
    return i >= m && j >= m && i < N - m && j < N - m;
  }
  // FD jet at a node: orders <= 2 from fourth-order stencils, orders 3-4 from
  // second-order stencils, all scaled to `spacing` grid steps.
  Jet jet_at_node(int i, int j, int order, int spacing = 1) const;
  // Jet at an arbitrary point: nearest eligible node + Taylor shift.
  Jet jet_near(Vec2 x, int order) const;

  double value_bilinear(Vec2 x) const;

  struct ResidualSummary {
    double max_abs = 0.0;
    int n_indefinite = 0;
  };
  // det D^2 Phi * e^Phi - 1 with the solver's second-order stencils;
  // NaN at indefinite nodes.  Index layout matches phi (boundary = 0).
  std::vector<double> ke_residual(ResidualSummary* summary = nullptr) const;

  double mass() const;  // sum of exp(-phi) h^2 over interior nodes

  std::string to_csv() const;
  std::string meta_json() const;
  static GridPotential from_csv(const std::string& csv, const std::string& meta);
};

// Potential interface over a solved grid (jets capped at order 4).
class GridPotentialSource : public Potential {
 public:
  explicit GridPotentialSource(std::shared_ptr<const GridPotential> g) : g_(std::move(g)) {}
  int dim() const override { return 2; }
  int max_order() const override { return 4; }
  JetSource source() const override { return JetSource::grid; }
  std::string name() const override { return "grid"; }
  double value(std::span<const double> x) const override {
    return g_->value_bilinear({x[0], x[1]});
  }
  Jet jet(std::span<const double> x, int order) const override {
    return g_->jet_near({x[0], x[1]}, order);
  }
  double min_value() const override;
  const GridPotential& grid() const { return *g_; }

 private:
  std::shared_ptr<const GridPotential> g_;
};

}  // namespace kelab
