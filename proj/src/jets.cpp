#include "kelab/jets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace kelab {

std::string source_name(JetSource s) {
  switch (s) {
    case JetSource::closed_form: return "closed_form";
    case JetSource::radial: return "radial";
    case JetSource::grid: return "grid";
  }
  return "?";
}

double Jet::d(std::span<const int> vars) const {
  std::vector<int> alpha(dim(), 0);
  for (int v : vars) {
    if (v < 0 || v >= dim()) throw std::out_of_range("Jet::d: variable index");
    ++alpha[v];
  }
  return poly.partial(alpha);
}

Vec2 Jet::grad2() const {
  if (dim() != 2) throw JetError("Jet::grad2: not a 2D jet");
  return {d({0}), d({1})};
}

Mat2 Jet::hess2() const {
  if (dim() != 2) throw JetError("Jet::hess2: not a 2D jet");
  double xy = d({0, 1});
  return {d({0, 0}), xy, xy, d({1, 1})};
}

void Jet::require_convex() const {
  // Cholesky-style positivity check on the Hessian, any dimension.
  const int n = dim();
  std::vector<double> H(n * n);
  std::vector<int> alpha(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::fill(alpha.begin(), alpha.end(), 0);
      ++alpha[i];
      ++alpha[j];
      H[i * n + j] = poly.partial(alpha);
    }
  for (int k = 0; k < n; ++k) {
    double p = H[k * n + k];
    if (!(p > 0.0)) throw JetError("jet has indefinite Hessian");
    for (int i = k + 1; i < n; ++i) {
      double f = H[i * n + k] / p;
      for (int j = k; j < n; ++j) H[i * n + j] -= f * H[k * n + j];
    }
  }
}

std::string Jet::to_json() const {
  nlohmann::json j;
  j["point"] = point;
  j["order"] = order;
  j["source"] = source_name(source);
  nlohmann::json derivs = nlohmann::json::object();
  const auto* tab = poly.table();
  for (int pos = 0; pos < tab->n_coeffs(); ++pos) {
    if (tab->degree_of(pos) > order) continue;
    auto exps = tab->exponents(pos);
    std::string key;
    for (int v = 0; v < dim(); ++v)
      for (int k = 0; k < exps[v]; ++k) key += static_cast<char>('1' + v);
    derivs[key] = poly.raw(pos) * tab->factorial(pos);
  }
  j["derivs"] = derivs;
  nlohmann::json err = nlohmann::json::array();
  for (int k = 0; k <= order && k < 6; ++k) err.push_back(est_error[k]);
  j["est_error"] = err;
  return j.dump();
}

}  // namespace kelab
