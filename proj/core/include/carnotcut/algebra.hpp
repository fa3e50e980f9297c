#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace carnotcut {

/// Element of the 3-dimensional horizontal layer (orthonormal frame e1,e2,e3).
struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }

  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  constexpr double norm_sq() const { return dot(*this); }
  double norm() const { return std::sqrt(norm_sq()); }
  Vec3 normalized() const;

  static constexpr Vec3 e1() { return {1, 0, 0}; }
  static constexpr Vec3 e2() { return {0, 1, 0}; }
  static constexpr Vec3 e3() { return {0, 0, 1}; }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// Bivector over the horizontal layer, coordinates in the frame
/// e1^e2, e1^e3, e2^e3.
struct Bivec3 {
  double t12 = 0.0, t13 = 0.0, t23 = 0.0;

  constexpr Bivec3() = default;
  constexpr Bivec3(double a, double b, double c) : t12(a), t13(b), t23(c) {}

  constexpr Bivec3 operator+(const Bivec3& o) const {
    return {t12 + o.t12, t13 + o.t13, t23 + o.t23};
  }
  constexpr Bivec3 operator-(const Bivec3& o) const {
    return {t12 - o.t12, t13 - o.t13, t23 - o.t23};
  }
  constexpr Bivec3 operator-() const { return {-t12, -t13, -t23}; }
  constexpr Bivec3 operator*(double s) const { return {t12 * s, t13 * s, t23 * s}; }

  constexpr double inner(const Bivec3& o) const {
    return t12 * o.t12 + t13 * o.t13 + t23 * o.t23;
  }
  constexpr double norm_sq() const { return inner(*this); }
  double norm() const { return std::sqrt(norm_sq()); }
};

constexpr Bivec3 operator*(double s, const Bivec3& b) { return b * s; }

/// Wedge product of two vectors: components x_j y_k - x_k y_j for j < k.
constexpr Bivec3 wedge(const Vec3& a, const Vec3& b) {
  return {a.x * b.y - a.y * b.x, a.x * b.z - a.z * b.x, a.y * b.z - a.z * b.y};
}

/// Inner product on bivectors; on elementary inputs equals
/// <x,xi><y,eta> - <x,eta><y,xi>.
constexpr double bivec_inner(const Bivec3& s, const Bivec3& t) { return s.inner(t); }

/// Vector dual of a bivector: (t23, -t13, t12).  Intertwines wedge and
/// cross product, dual(x ^ y) = x x y, and preserves norms.
constexpr Vec3 bivec_dual(const Bivec3& t) { return {t.t23, -t.t13, t.t12}; }

/// Inverse of bivec_dual.
constexpr Bivec3 dual_bivec(const Vec3& v) { return {v.z, -v.y, v.x}; }

/// Unit normal of the support plane of a nonzero bivector.
/// Throws std::domain_error on the zero bivector.
Vec3 support_normal(const Bivec3& t);

/// Deterministic factorization t = y ^ yperp with <y,yperp> = 0 and
/// |y| = |yperp| = |t|^(1/2).  The frame is fixed by picking the coordinate
/// axis least aligned with the support normal.
std::pair<Vec3, Vec3> factorize(const Bivec3& t);

/// Point of the step-two group in the wedge model.
struct GroupPoint {
  Vec3 x;
  Bivec3 t;
};

/// Point in the cross-product model (second layer carried as a vector).
struct CrossPoint {
  Vec3 x;
  Vec3 t;
};

/// Group law (x,t)*(xi,tau) = (x+xi, t+tau+1/2 x^xi).
constexpr GroupPoint group_mul(const GroupPoint& p, const GroupPoint& q) {
  return {p.x + q.x, p.t + q.t + 0.5 * wedge(p.x, q.x)};
}

constexpr GroupPoint group_inverse(const GroupPoint& p) { return {-p.x, -p.t}; }

/// Anisotropic dilation (x,t) -> (r x, r^2 t), r > 0.
GroupPoint dilate(double r, const GroupPoint& p);

/// 3x3 matrix, row-major.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  static constexpr Mat3 identity() {
    Mat3 r;
    r.m = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    return r;
  }
  /// Rotation by `angle` about `axis` (Rodrigues formula).
  static Mat3 rotation(const Vec3& axis, double angle);

  constexpr Vec3 apply(const Vec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }
  Mat3 mul(const Mat3& o) const;
  Mat3 transposed() const;
  double det() const;
  /// max-norm of M^T M - I.
  double orthogonality_defect() const;
};

/// Induced action of an orthogonal M on a bivector: (M y) ^ (M y') for any
/// factorization t = y ^ y'.  Computed as dual_bivec(det(M) * M * dual(t)),
/// valid for reflections as well.
Bivec3 rotate(const Mat3& rot, const Bivec3& t);

/// (M x, Lambda^2 M t).  Throws std::invalid_argument if M is not orthogonal
/// within 1e-10.
GroupPoint rotate(const Mat3& rot, const GroupPoint& p);

/// Model change t23 -> t1, t13 -> -t2, t12 -> t3, matching the commutator
/// conventions of the two coordinate systems.  Exact and involutive.
constexpr CrossPoint to_cross(const GroupPoint& p) { return {p.x, bivec_dual(p.t)}; }
constexpr GroupPoint from_cross(const CrossPoint& p) { return {p.x, dual_bivec(p.t)}; }

/// Cross-model group law (x,t)o(x',t') = (x+x', t+t'+1/2 x x x').
constexpr CrossPoint cross_mul(const CrossPoint& p, const CrossPoint& q) {
  return {p.x + q.x, p.t + q.t + 0.5 * p.x.cross(q.x)};
}

CrossPoint dilate(double r, const CrossPoint& p);

}  // namespace carnotcut
