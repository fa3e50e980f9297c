#include "carnotcut/algebra.hpp"

#include <algorithm>

namespace carnotcut {

Vec3 Vec3::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize a zero vector");
  return *this / n;
}

Vec3 support_normal(const Bivec3& t) {
  const Vec3 d = bivec_dual(t);
  const double n = d.norm();
  if (n == 0.0) throw std::domain_error("zero bivector has no support");
  return d / n;
}

std::pair<Vec3, Vec3> factorize(const Bivec3& t) {
  const Vec3 n = support_normal(t);  // throws on zero bivector
  const double r = std::sqrt(t.norm());

  // Axis least aligned with n; ties resolved by the lowest index.
  const double a1 = std::abs(n.x), a2 = std::abs(n.y), a3 = std::abs(n.z);
  Vec3 e = Vec3::e1();
  if (a2 < a1 && a2 <= a3)
    e = Vec3::e2();
  else if (a3 < a1 && a3 < a2)
    e = Vec3::e3();

  const Vec3 ydir = (e - n * e.dot(n)).normalized();
  const Vec3 y = ydir * r;
  // n x ydir is unit and spans supp(t) with ydir; the orientation of n
  // guarantees wedge(y, yperp) = +t.
  const Vec3 yperp = n.cross(ydir) * r;
  return {y, yperp};
}

GroupPoint dilate(double r, const GroupPoint& p) {
  if (!(r > 0.0)) throw std::invalid_argument("dilation factor must be positive");
  return {p.x * r, p.t * (r * r)};
}

CrossPoint dilate(double r, const CrossPoint& p) {
  if (!(r > 0.0)) throw std::invalid_argument("dilation factor must be positive");
  return {p.x * r, p.t * (r * r)};
}

Mat3 Mat3::rotation(const Vec3& axis, double angle) {
  const Vec3 u = axis.normalized();
  const double c = std::cos(angle), s = std::sin(angle), k = 1.0 - c;
  Mat3 r;
  r.m = {{{c + u.x * u.x * k, u.x * u.y * k - u.z * s, u.x * u.z * k + u.y * s},
          {u.y * u.x * k + u.z * s, c + u.y * u.y * k, u.y * u.z * k - u.x * s},
          {u.z * u.x * k - u.y * s, u.z * u.y * k + u.x * s, c + u.z * u.z * k}}};
  return r;
}

Mat3 Mat3::mul(const Mat3& o) const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += m[i][k] * o.m[k][j];
      r.m[i][j] = s;
    }
  return r;
}

Mat3 Mat3::transposed() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
  return r;
}

double Mat3::det() const {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double Mat3::orthogonality_defect() const {
  const Mat3 g = transposed().mul(*this);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double target = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(g.m[i][j] - target));
    }
  return worst;
}

Bivec3 rotate(const Mat3& rot, const Bivec3& t) {
  return dual_bivec(rot.apply(bivec_dual(t)) * rot.det());
}

GroupPoint rotate(const Mat3& rot, const GroupPoint& p) {
  if (rot.orthogonality_defect() > 1e-10)
    throw std::invalid_argument("rotation matrix is not orthogonal");
  return {rot.apply(p.x), rotate(rot, p.t)};
}

}  // namespace carnotcut
