#include "kelab/taylor.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace kelab {

namespace {

// Universal coefficient sequences f^(k)(a)/k! for the analytic functions we
// need.  Throwing on invalid arguments keeps the callers honest about
// domains (log/sqrt of non-positive leading terms are always bugs here).
std::vector<double> exp_seq(double a, std::size_t len) {
  std::vector<double> f(len);
  double acc = std::exp(a);  // e^a / k!
  for (std::size_t k = 0; k < len; ++k) {
    f[k] = acc;
    acc /= static_cast<double>(k + 1);
  }
  return f;
}

std::vector<double> log_seq(double a, std::size_t len) {
  if (a <= 0.0) throw std::domain_error("taylor: log of non-positive value");
  std::vector<double> f(len);
  f[0] = std::log(a);
  double p = 1.0 / a;  // (1/a)^k accumulator
  for (std::size_t k = 1; k < len; ++k) {
    f[k] = ((k % 2 == 1) ? 1.0 : -1.0) * p / static_cast<double>(k);
    p /= a;
  }
  return f;
}

std::vector<double> sqrt_seq(double a, std::size_t len) {
  if (a <= 0.0) throw std::domain_error("taylor: sqrt of non-positive value");
  std::vector<double> f(len);
  double s = std::sqrt(a);
  f[0] = s;
  // binom(1/2, k) * a^(1/2 - k)
  double coef = s;
  for (std::size_t k = 1; k < len; ++k) {
    coef *= (0.5 - static_cast<double>(k - 1)) / static_cast<double>(k) / a;
    f[k] = coef;
  }
  return f;
}

std::vector<double> recip_seq(double a, std::size_t len) {
  if (a == 0.0) throw std::domain_error("taylor: division by zero constant term");
  std::vector<double> f(len);
  double p = 1.0 / a;
  for (std::size_t k = 0; k < len; ++k) {
    f[k] = p;
    p *= -1.0 / a;
  }
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------
// Taylor1

double Taylor1::derivative(std::size_t k) const {
  if (k >= c_.size()) throw std::out_of_range("Taylor1::derivative: order too high");
  double f = 1.0;
  for (std::size_t j = 2; j <= k; ++j) f *= static_cast<double>(j);
  return c_[k] * f;
}

double Taylor1::eval(double dt) const {
  double r = 0.0;
  for (std::size_t k = c_.size(); k-- > 0;) r = r * dt + c_[k];
  return r;
}

double Taylor1::eval_derivative(double dt, std::size_t k) const {
  if (k >= c_.size()) return 0.0;
  // Horner on the k-th derivative coefficients.
  double r = 0.0;
  for (std::size_t j = c_.size(); j-- > k;) {
    double f = 1.0;
    for (std::size_t m = j - k + 1; m <= j; ++m) f *= static_cast<double>(m);
    r = r * dt + c_[j] * f;
  }
  return r;
}

Taylor1 Taylor1::operator-() const {
  Taylor1 r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Taylor1& Taylor1::operator+=(const Taylor1& o) {
  if (o.c_.size() != c_.size()) throw std::invalid_argument("Taylor1: length mismatch");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Taylor1& Taylor1::operator-=(const Taylor1& o) {
  if (o.c_.size() != c_.size()) throw std::invalid_argument("Taylor1: length mismatch");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Taylor1 operator*(const Taylor1& a, const Taylor1& b) {
  if (a.c_.size() != b.c_.size()) throw std::invalid_argument("Taylor1: length mismatch");
  Taylor1 r(a.c_.size());
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; i + j < a.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  return r;
}

Taylor1 operator*(double s, Taylor1 a) {
  for (auto& v : a.c_) v *= s;
  return a;
}

Taylor1 Taylor1::compose_scalar(std::span<const double> f) const {
  if (f.size() != c_.size()) throw std::invalid_argument("Taylor1: compose length mismatch");
  Taylor1 ghat = *this;
  ghat.c_[0] = 0.0;
  Taylor1 r(c_.size(), f[0]);
  Taylor1 p(c_.size(), 1.0);
  for (std::size_t k = 1; k < f.size(); ++k) {
    p = p * ghat;
    for (std::size_t j = 0; j < c_.size(); ++j) r.c_[j] += f[k] * p.c_[j];
  }
  return r;
}

Taylor1 t1_exp(const Taylor1& g) { return g.compose_scalar(exp_seq(g[0], g.size())); }
Taylor1 t1_log(const Taylor1& g) { return g.compose_scalar(log_seq(g[0], g.size())); }
Taylor1 t1_sqrt(const Taylor1& g) { return g.compose_scalar(sqrt_seq(g[0], g.size())); }
Taylor1 t1_recip(const Taylor1& g) { return g.compose_scalar(recip_seq(g[0], g.size())); }
Taylor1 t1_div(const Taylor1& a, const Taylor1& b) { return a * t1_recip(b); }

Taylor1 t1_pow_int(const Taylor1& g, int p) {
  if (p < 0) return t1_recip(t1_pow_int(g, -p));
  Taylor1 r(g.size(), 1.0);
  for (int k = 0; k < p; ++k) r = r * g;
  return r;
}

Taylor1 t1_derive(const Taylor1& g) {
  if (g.size() < 2) throw std::invalid_argument("Taylor1: cannot differentiate length-1 series");
  Taylor1 r(g.size() - 1);
  for (std::size_t k = 0; k + 1 < g.size(); ++k)
    r[k] = g[k + 1] * static_cast<double>(k + 1);
  return r;
}

// ---------------------------------------------------------------------------
// MultiIndexTable

const MultiIndexTable* MultiIndexTable::get(int dim, int max_degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<MultiIndexTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(dim, max_degree);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::unique_ptr<MultiIndexTable>(new MultiIndexTable(dim, max_degree))).first;
  return it->second.get();
}

MultiIndexTable::MultiIndexTable(int dim, int deg) : dim_(dim), deg_(deg) {
  if (dim < 1 || dim > 8) throw std::invalid_argument("MultiIndexTable: dim out of range");
  if (deg < 0 || deg > 12) throw std::invalid_argument("MultiIndexTable: degree out of range");

  // Enumerate multi-indices by total degree, lexicographically within each.
  std::array<std::uint8_t, 8> cur{};
  std::function<void(int, int)> emit = [&](int pos, int rem) {
    if (pos == dim - 1) {
      cur[pos] = static_cast<std::uint8_t>(rem);
      exps_.push_back(cur);
      return;
    }
    for (int e = rem; e >= 0; --e) {
      cur[pos] = static_cast<std::uint8_t>(e);
      emit(pos + 1, rem - e);
    }
  };
  for (int s = 0; s <= deg; ++s) emit(0, s);

  degree_.resize(exps_.size());
  fact_.resize(exps_.size());
  int stride = deg + 1;
  int keyspace = 1;
  for (int i = 0; i < dim; ++i) keyspace *= stride;
  key_to_pos_.assign(keyspace, -1);
  for (std::size_t p = 0; p < exps_.size(); ++p) {
    int s = 0, key = 0, mult = 1;
    double f = 1.0;
    for (int i = 0; i < dim; ++i) {
      int e = exps_[p][i];
      s += e;
      key += e * mult;
      mult *= stride;
      for (int j = 2; j <= e; ++j) f *= j;
    }
    degree_[p] = s;
    fact_[p] = f;
    key_to_pos_[key] = static_cast<int>(p);
  }

  // Product contribution lists grouped by result position.
  std::vector<std::vector<ProdTerm>> by_result(exps_.size());
  for (std::size_t a = 0; a < exps_.size(); ++a) {
    for (std::size_t b = 0; b < exps_.size(); ++b) {
      if (degree_[a] + degree_[b] > deg) continue;
      int key = 0, mult = 1;
      for (int i = 0; i < dim; ++i) {
        key += (exps_[a][i] + exps_[b][i]) * mult;
        mult *= stride;
      }
      by_result[key_to_pos_[key]].push_back({static_cast<std::int32_t>(a), static_cast<std::int32_t>(b)});
    }
  }
  term_off_.assign(exps_.size() + 1, 0);
  for (std::size_t k = 0; k < exps_.size(); ++k)
    term_off_[k + 1] = term_off_[k] + by_result[k].size();
  terms_.reserve(term_off_.back());
  for (auto& v : by_result) terms_.insert(terms_.end(), v.begin(), v.end());
}

int MultiIndexTable::position(std::span<const int> alpha) const {
  if (static_cast<int>(alpha.size()) != dim_)
    throw std::invalid_argument("MultiIndexTable: wrong multi-index dimension");
  int key = 0, mult = 1, s = 0;
  for (int i = 0; i < dim_; ++i) {
    if (alpha[i] < 0) throw std::invalid_argument("MultiIndexTable: negative exponent");
    s += alpha[i];
    if (s > deg_) return -1;
    key += alpha[i] * mult;
    mult *= deg_ + 1;
  }
  return key_to_pos_[key];
}

// ---------------------------------------------------------------------------
// TaylorN

TaylorN TaylorN::variable(const MultiIndexTable* tab, int i, double x0) {
  TaylorN r(tab, x0);
  std::vector<int> alpha(tab->dim(), 0);
  alpha[i] = 1;
  int pos = tab->position(alpha);
  if (pos >= 0) r.c_[pos] = 1.0;
  return r;
}

double TaylorN::coeff(std::span<const int> alpha) const {
  int pos = tab_->position(alpha);
  if (pos < 0) throw std::out_of_range("TaylorN: multi-index beyond truncation");
  return c_[pos];
}

void TaylorN::set_coeff(std::span<const int> alpha, double v) {
  int pos = tab_->position(alpha);
  if (pos < 0) throw std::out_of_range("TaylorN: multi-index beyond truncation");
  c_[pos] = v;
}

double TaylorN::partial(std::span<const int> alpha) const {
  int pos = tab_->position(alpha);
  if (pos < 0) throw std::out_of_range("TaylorN: multi-index beyond truncation");
  return c_[pos] * tab_->factorial(pos);
}

void TaylorN::set_partial(std::span<const int> alpha, double v) {
  int pos = tab_->position(alpha);
  if (pos < 0) throw std::out_of_range("TaylorN: multi-index beyond truncation");
  c_[pos] = v / tab_->factorial(pos);
}

TaylorN TaylorN::operator-() const {
  TaylorN r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

TaylorN& TaylorN::operator+=(const TaylorN& o) {
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

TaylorN& TaylorN::operator-=(const TaylorN& o) {
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

TaylorN operator*(const TaylorN& a, const TaylorN& b) {
  TaylorN r(a.tab_);
  const int n = a.tab_->n_coeffs();
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (const auto& t : a.tab_->product_terms(k)) acc += a.c_[t.a] * b.c_[t.b];
    r.c_[k] = acc;
  }
  return r;
}

TaylorN operator*(double s, TaylorN a) {
  for (auto& v : a.c_) v *= s;
  return a;
}

TaylorN TaylorN::compose_scalar(std::span<const double> f) const {
  TaylorN ghat = *this;
  ghat.c_[0] = 0.0;
  TaylorN r(tab_, f[0]);
  TaylorN p(tab_, 1.0);
  for (std::size_t k = 1; k < f.size(); ++k) {
    p = p * ghat;
    for (std::size_t j = 0; j < c_.size(); ++j) r.c_[j] += f[k] * p.c_[j];
  }
  return r;
}

TaylorN tn_exp(const TaylorN& g) {
  return g.compose_scalar(exp_seq(g.value(), static_cast<std::size_t>(g.table()->max_degree()) + 1));
}
TaylorN tn_log(const TaylorN& g) {
  return g.compose_scalar(log_seq(g.value(), static_cast<std::size_t>(g.table()->max_degree()) + 1));
}
TaylorN tn_sqrt(const TaylorN& g) {
  return g.compose_scalar(sqrt_seq(g.value(), static_cast<std::size_t>(g.table()->max_degree()) + 1));
}
TaylorN tn_recip(const TaylorN& g) {
  return g.compose_scalar(recip_seq(g.value(), static_cast<std::size_t>(g.table()->max_degree()) + 1));
}
TaylorN tn_div(const TaylorN& a, const TaylorN& b) { return a * tn_recip(b); }

TaylorN tn_compose(const Taylor1& f, const TaylorN& g) {
  std::size_t want = static_cast<std::size_t>(g.table()->max_degree()) + 1;
  std::vector<double> fc(want, 0.0);
  for (std::size_t k = 0; k < want && k < f.size(); ++k) fc[k] = f[k];
  return g.compose_scalar(fc);
}

TaylorN tn_shift(const TaylorN& g, std::span<const double> delta) {
  const auto* tab = g.table();
  const int d = tab->dim();
  if (static_cast<int>(delta.size()) != d) throw std::invalid_argument("tn_shift: bad delta");
  TaylorN r(tab);
  for (int src = 0; src < tab->n_coeffs(); ++src) {
    double c = g.raw(src);
    if (c == 0.0) continue;
    auto gam = tab->exponents(src);
    for (int dst = 0; dst < tab->n_coeffs(); ++dst) {
      auto alp = tab->exponents(dst);
      double w = c;
      bool ok = true;
      for (int i = 0; i < d && ok; ++i) {
        if (alp[i] > gam[i]) {
          ok = false;
          break;
        }
        int diff = gam[i] - alp[i];
        // binomial(gam_i, alp_i) * delta_i^diff
        double binom = 1.0;
        for (int k = 0; k < alp[i]; ++k)
          binom *= static_cast<double>(gam[i] - k) / static_cast<double>(k + 1);
        w *= binom;
        for (int k = 0; k < diff; ++k) w *= delta[i];
      }
      if (ok) r.raw(dst) += w;
    }
  }
  return r;
}

TaylorN tn_derive(const TaylorN& g, int var) {
  const auto* tab = g.table();
  if (var < 0 || var >= tab->dim()) throw std::invalid_argument("tn_derive: bad variable");
  TaylorN r(tab);
  std::vector<int> alpha(tab->dim());
  for (int pos = 0; pos < tab->n_coeffs(); ++pos) {
    auto e = tab->exponents(pos);
    if (e[var] == 0) continue;
    for (int i = 0; i < tab->dim(); ++i) alpha[i] = e[i];
    alpha[var] -= 1;
    int tgt = tab->position(alpha);
    r.raw(tgt) = g.raw(pos) * static_cast<double>(e[var]);
  }
  return r;
}

}  // namespace kelab
