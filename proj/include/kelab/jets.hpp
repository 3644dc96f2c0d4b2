#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "kelab/common.hpp"
#include "kelab/taylor.hpp"

namespace kelab {

enum class JetSource { closed_form, radial, grid };

std::string source_name(JetSource s);

// All partial derivatives of a potential at one point, up to `order` (<= 5),
// stored as the truncated Taylor polynomial.  Tensors extracted from it are
// symmetric by construction.
struct Jet {
  std::vector<double> point;
  int order = 0;
  JetSource source = JetSource::closed_form;
  TaylorN poly;
  std::array<double, 6> est_error{};  // per derivative order 0..5

  int dim() const { return poly.table()->dim(); }
  double value() const { return poly.value(); }

  // Partial derivative by variable list, e.g. d({0,0,1}) = d^3 Phi / dx0 dx0 dx1.
  double d(std::span<const int> vars) const;
  double d(std::initializer_list<int> vars) const { return d(std::span<const int>(vars)); }

  // 2D conveniences.
  Vec2 grad2() const;
  Mat2 hess2() const;

  // Throws JetError unless the Hessian is positive definite.
  void require_convex() const;

  // JSON record keyed by multi-index strings ("", "1", "112", ...).
  std::string to_json() const;
};

}  // namespace kelab
