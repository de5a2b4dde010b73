#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace voxelvol {

// Points and directions live in a 3-slot array regardless of the working
// dimension d in {2,3}; coordinates past d are kept at zero.
using Vec3 = std::array<double, 3>;

inline Vec3 vec(double x, double y = 0.0, double z = 0.0) { return {x, y, z}; }

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }

inline Vec3 normalized(const Vec3& a) {
  double n = norm(a);
  if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
  return (1.0 / n) * a;
}

// Row-major d x d rotation stored in a 3x3 slot; the unused block is identity.
struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  static Mat3 identity() { return Mat3{}; }

  double operator()(int i, int j) const { return m[3 * i + j]; }
  double& operator()(int i, int j) { return m[3 * i + j]; }

  Vec3 apply(const Vec3& v) const {
    return {m[0] * v[0] + m[1] * v[1] + m[2] * v[2],
            m[3] * v[0] + m[4] * v[1] + m[5] * v[2],
            m[6] * v[0] + m[7] * v[1] + m[8] * v[2]};
  }
  // R^T v; for orthonormal R this is the inverse action.
  Vec3 apply_transposed(const Vec3& v) const {
    return {m[0] * v[0] + m[3] * v[1] + m[6] * v[2],
            m[1] * v[0] + m[4] * v[1] + m[7] * v[2],
            m[2] * v[0] + m[5] * v[1] + m[8] * v[2]};
  }

  Mat3 transposed() const {
    Mat3 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
    return t;
  }
};

inline Mat3 rotation2d(double angle) {
  Mat3 r;
  double c = std::cos(angle), s = std::sin(angle);
  r(0, 0) = c; r(0, 1) = -s;
  r(1, 0) = s; r(1, 1) = c;
  return r;
}

inline Mat3 rotation_from_quaternion(double w, double x, double y, double z) {
  double n = std::sqrt(w * w + x * x + y * y + z * z);
  w /= n; x /= n; y /= n; z /= n;
  Mat3 r;
  r(0, 0) = 1 - 2 * (y * y + z * z); r(0, 1) = 2 * (x * y - w * z);     r(0, 2) = 2 * (x * z + w * y);
  r(1, 0) = 2 * (x * y + w * z);     r(1, 1) = 1 - 2 * (x * x + z * z); r(1, 2) = 2 * (y * z - w * x);
  r(2, 0) = 2 * (x * z - w * y);     r(2, 1) = 2 * (y * z + w * x);     r(2, 2) = 1 - 2 * (x * x + y * y);
  return r;
}

// Max deviation of R^T R from the identity over the leading d x d block.
inline double orthonormality_defect(const Mat3& r, int dim) {
  double worst = 0.0;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      double s = 0.0;
      for (int k = 0; k < dim; ++k) s += r(k, i) * r(k, j);
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

// Completes unit vector u (in dim d) to an orthonormal frame; e and f span
// the orthogonal complement slice used for circles around u.
inline void orthonormal_complement(const Vec3& u, int dim, Vec3& e, Vec3& f) {
  if (dim == 2) {
    e = {-u[1], u[0], 0.0};
    f = {0.0, 0.0, 1.0};
    return;
  }
  Vec3 trial = std::abs(u[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  e = normalized(trial - dot(trial, u) * u);
  f = cross(u, e);
}

inline constexpr double kPi = 3.14159265358979323846;

// Volume of the unit ball in R^n (kappa_n).
inline double unit_ball_volume(int n) {
  if (n == 0) return 1.0;
  if (n == 1) return 2.0;
  double km1 = 1.0;  // kappa_0
  double k = 2.0;    // kappa_1
  for (int i = 2; i <= n; ++i) {
    double next = 2.0 * kPi / i * km1;
    km1 = k;
    k = next;
  }
  return k;
}

}  // namespace voxelvol
