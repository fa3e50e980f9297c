#pragma once

#include <utility>

#include "carnotcut/algebra.hpp"

namespace carnotcut {

/// Pairwise orthogonal a, b, z with |a| = |b|; z may vanish, and the
/// degenerate a = b = 0 (straight line with direction z) is admitted.
/// Validation happens once at construction; operations trust the invariants.
struct AdmissibleTriple {
  Vec3 a, b, z;

  /// Validates orthogonality and |a| = |b| at relative tolerance 1e-10.
  /// Throws std::invalid_argument with the violated constraint.
  static AdmissibleTriple make(const Vec3& a, const Vec3& b, const Vec3& z);

  double radius() const { return a.norm(); }  // common length of a and b
  bool is_degenerate() const { return a.norm_sq() == 0.0 && b.norm_sq() == 0.0; }

 private:
  AdmissibleTriple(const Vec3& a_, const Vec3& b_, const Vec3& z_) : a(a_), b(b_), z(z_) {}
};

/// Normal extremal from the origin: control u(s) = a cos(2 phi s) +
/// b sin(2 phi s) + z with frequency lambda = 2 phi >= 0.  A degenerate
/// triple forces phi = 0 (constant control).
struct ExtremalParams {
  AdmissibleTriple triple;
  double phi;

  ExtremalParams(const AdmissibleTriple& t, double phi_);
  double lambda() const { return 2.0 * phi; }
  double speed() const;  // |u(s)| = sqrt(|a|^2 + |z|^2), constant in s
};

/// The trigonometric control at time s.
Vec3 control(const ExtremalParams& params, double s);

/// Closed-form extremal curve point at time s.  The lambda*s -> 0 regime is
/// evaluated by series (every coefficient has a finite limit).
GroupPoint extremal_point(const ExtremalParams& params, double s);

/// Endpoint map F(a,b,z,phi) = gamma(1); equals
/// (S(phi)(a cos phi + b sin phi) + z, U(phi) a^b + V(phi)(a sin phi - b cos phi)^z).
GroupPoint endpoint_F(const AdmissibleTriple& triple, double phi);

/// Rotated-frame endpoint map G(a',b',zeta,phi) =
/// (S(phi) b' + zeta, a' ^ (U(phi) b' + V(phi) zeta)).
GroupPoint endpoint_G(const AdmissibleTriple& triple, double phi);

/// Orthogonal change of frame a' = a sin phi - b cos phi,
/// b' = a cos phi + b sin phi, and its inverse.
std::pair<Vec3, Vec3> change_vars(const Vec3& a, const Vec3& b, double phi);
std::pair<Vec3, Vec3> change_vars_inverse(const Vec3& aprime, const Vec3& bprime, double phi);

/// Arc length of the extremal over [0, s]: s * sqrt(|a|^2 + |z|^2).
double length(const ExtremalParams& params, double s);

}  // namespace carnotcut
