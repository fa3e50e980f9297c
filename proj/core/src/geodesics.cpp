#include "carnotcut/geodesics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "carnotcut/scalars.hpp"

namespace carnotcut {

namespace {
constexpr double kAdmissibleTol = 1e-10;
constexpr double kSmallPhase = 1e-4;  // lambda*s below this switches to series
}  // namespace

AdmissibleTriple AdmissibleTriple::make(const Vec3& a, const Vec3& b, const Vec3& z) {
  const double na = a.norm(), nb = b.norm(), nz = z.norm();
  const double scale = std::max({na, nb, nz});
  if (scale == 0.0) throw std::invalid_argument("admissible triple: all vectors vanish");
  const double tol2 = kAdmissibleTol * scale * scale;
  if (std::abs(a.dot(b)) > tol2)
    throw std::invalid_argument("admissible triple: <a,b> != 0");
  if (std::abs(a.dot(z)) > tol2)
    throw std::invalid_argument("admissible triple: <a,z> != 0");
  if (std::abs(b.dot(z)) > tol2)
    throw std::invalid_argument("admissible triple: <b,z> != 0");
  if (std::abs(na - nb) > kAdmissibleTol * scale)
    throw std::invalid_argument("admissible triple: |a| != |b|");
  if (na == 0.0 && nz == 0.0)
    throw std::invalid_argument("admissible triple: a = b = 0 requires z != 0");
  return AdmissibleTriple(a, b, z);
}

ExtremalParams::ExtremalParams(const AdmissibleTriple& t, double phi_) : triple(t), phi(phi_) {
  if (!(phi >= 0.0)) throw std::invalid_argument("phi must be nonnegative");
  if (triple.is_degenerate()) phi = 0.0;  // constant control z
}

double ExtremalParams::speed() const {
  return std::sqrt(triple.a.norm_sq() + triple.z.norm_sq());
}

Vec3 control(const ExtremalParams& params, double s) {
  const double ph = params.lambda() * s;
  return params.triple.a * std::cos(ph) + params.triple.b * std::sin(ph) + params.triple.z;
}

GroupPoint extremal_point(const ExtremalParams& params, double s) {
  const Vec3 &a = params.triple.a, &b = params.triple.b, &z = params.triple.z;
  const double lam = params.lambda();
  const double x = lam * s;

  // Coefficients of the closed form:
  //   x-part:  ca * a + cb * b + s * z
  //   t-part:  cab * a^b + caz * a^z + cbz * b^z
  double ca, cb, cab, caz, cbz;
  if (std::abs(x) < kSmallPhase) {
    const double x2 = x * x;
    // sin(x)/x and (1-cos x)/x scaled back by s; the wedge coefficients keep
    // an explicit 1/lambda^2 which stays finite (numerators are O(x^3)).
    ca = s * (1.0 - x2 / 6.0 + x2 * x2 / 120.0);
    cb = s * (x / 2.0 - x * x2 / 24.0 + x * x2 * x2 / 720.0);
    if (lam == 0.0) {
      cab = caz = cbz = 0.0;
    } else {
      const double inv2l2 = 1.0 / (2.0 * lam * lam);
      const double x3 = x * x2;
      cab = x3 / 6.0 * (1.0 - x2 / 20.0 + x2 * x2 / 840.0) * inv2l2;
      caz = x2 * x2 / 12.0 * (1.0 - x2 / 15.0 + x2 * x2 / 560.0) * inv2l2;
      cbz = -x3 / 6.0 * (1.0 - 3.0 * x2 / 20.0 + x2 * x2 / 168.0) * inv2l2;
    }
  } else {
    const double sx = std::sin(x), cx = std::cos(x);
    const double inv2l2 = 1.0 / (2.0 * lam * lam);
    ca = sx / lam;
    cb = (1.0 - cx) / lam;
    cab = (x - sx) * inv2l2;
    caz = (2.0 * (1.0 - cx) - x * sx) * inv2l2;
    cbz = (x * (1.0 + cx) - 2.0 * sx) * inv2l2;
  }

  return {a * ca + b * cb + z * s,
          wedge(a, b) * cab + wedge(a, z) * caz + wedge(b, z) * cbz};
}

GroupPoint endpoint_F(const AdmissibleTriple& triple, double phi) {
  if (!(phi >= 0.0)) throw std::invalid_argument("phi must be nonnegative");
  const double sphi = sf::S(phi), uphi = sf::U(phi), vphi = sf::V(phi);
  const double c = std::cos(phi), s = std::sin(phi);
  const Vec3 &a = triple.a, &b = triple.b, &z = triple.z;
  return {(a * c + b * s) * sphi + z,
          wedge(a, b) * uphi + wedge(a * s - b * c, z) * vphi};
}

GroupPoint endpoint_G(const AdmissibleTriple& triple, double phi) {
  if (!(phi >= 0.0)) throw std::invalid_argument("phi must be nonnegative");
  const double sphi = sf::S(phi), uphi = sf::U(phi), vphi = sf::V(phi);
  const Vec3 &ap = triple.a, &bp = triple.b, &zeta = triple.z;
  return {bp * sphi + zeta, wedge(ap, bp * uphi + zeta * vphi)};
}

std::pair<Vec3, Vec3> change_vars(const Vec3& a, const Vec3& b, double phi) {
  const double s = std::sin(phi), c = std::cos(phi);
  return {a * s - b * c, a * c + b * s};
}

std::pair<Vec3, Vec3> change_vars_inverse(const Vec3& aprime, const Vec3& bprime, double phi) {
  const double s = std::sin(phi), c = std::cos(phi);
  return {aprime * s + bprime * c, bprime * s - aprime * c};
}

double length(const ExtremalParams& params, double s) {
  if (s < 0.0) throw std::invalid_argument("length requires s >= 0");
  return s * params.speed();
}

}  // namespace carnotcut
