#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kelab {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& msg, std::vector<double> history = {})
      : std::runtime_error(msg), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};
struct ConvexityError : SolverError {
  using SolverError::SolverError;
};
struct ShootingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct JetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Vec2 {
  double x = 0.0, y = 0.0;
  double& operator[](int i) { return i == 0 ? x : y; }
  double operator[](int i) const { return i == 0 ? x : y; }
  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }
};
inline Vec2 operator*(double s, Vec2 v) { return v * s; }

struct Mat2 {
  // row-major: a b / c d
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  double det() const { return a * d - b * c; }
  double trace() const { return a + d; }
  Mat2 inverse() const {
    double dt = det();
    if (dt == 0.0) throw std::domain_error("Mat2: singular");
    return {d / dt, -b / dt, -c / dt, a / dt};
  }
  Vec2 apply(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Mat2 scaled(double s) const { return {a * s, b * s, c * s, d * s}; }
  double operator()(int i, int j) const { return i == 0 ? (j == 0 ? a : b) : (j == 0 ? c : d); }
};

// Eigenvalues of a symmetric 2x2 (a, b; b, d), ascending.
inline std::array<double, 2> sym2_eigenvalues(double a, double b, double d) {
  double tr = a + d;
  double disc = std::sqrt(std::max(0.0, (a - d) * (a - d) + 4.0 * b * b));
  return {0.5 * (tr - disc), 0.5 * (tr + disc)};
}

// Low-discrepancy 2D points (R2 additive recurrence).  seed shifts the
// sequence start so runs are reproducible yet configurable.
class QuasiRandom2D {
 public:
  explicit QuasiRandom2D(std::uint64_t seed = 0) : k_(seed) {}
  Vec2 next() {
    ++k_;
    // plastic constant based recurrence
    const double a1 = 0.7548776662466927;
    const double a2 = 0.5698402909980532;
    double u = std::fmod(0.5 + a1 * static_cast<double>(k_), 1.0);
    double v = std::fmod(0.5 + a2 * static_cast<double>(k_), 1.0);
    return {u, v};
  }
  // Point in the square [-half, half]^2.
  Vec2 next_in_box(double half) {
    Vec2 p = next();
    return {(2.0 * p.x - 1.0) * half, (2.0 * p.y - 1.0) * half};
  }

 private:
  std::uint64_t k_;
};

constexpr double kPi = 3.14159265358979323846;

}  // namespace kelab
