#pragma once

#include <vector>

#include "carnotcut/algebra.hpp"
#include "carnotcut/cutlocus.hpp"
#include "carnotcut/hamiltonian.hpp"

namespace carnotcut {

/// Multistart shooting configuration.  Results are deterministic given the
/// seed and restart count, independent of the thread count.
struct ShootingConfig {
  int restarts = 64;
  unsigned long long seed = 1234;
  double residual_tol = 1e-9;  // scaled endpoint mismatch accepted as converged
  int simplex_iters = 220;
  int polish_iters = 60;
  double tcut_slack = 1e-9;  // reject solutions past (1 + slack) * T_cut
  int threads = 0;           // 0: hardware, capped by CARNOT_CUT_THREADS
};

struct ShootingResult {
  bool converged = false;
  double distance = 0.0;
  Covector minimizer;    // unit-speed covector, |xi| = 1
  double time = 0.0;     // arc-length parameter; equals distance at unit speed
  double residual = 0.0; // scaled endpoint mismatch of the reported solution
  int restarts_used = 0;
};

/// Global distance to `target` by inverting the exponential map: minimize s
/// over unit-speed covectors with exp_map(p0, s) = target and s <= T_cut(p0).
/// Never reports a distance whose endpoint residual exceeds the tolerance;
/// check `converged`.  Throws std::invalid_argument for the origin.
ShootingResult distance(const GroupPoint& target, const ShootingConfig& cfg = {});

/// Corner-direction coefficients on the cut range [pi, phi1):
///   c1 = (-2 S V^3 - U U' + U S V')/(2 U^2 - U S V - V^2 S^2)
///   c2 = (V/U)(S c1 - 2 V)
/// c1 > 0 and c2 < 0 throughout.
struct CornerCoeffs {
  double c1, c2;
};
CornerCoeffs corner_coeffs(double phi);

/// The distance-decreasing curve through a cut point
///   sigma -> ( S_{phi-sigma}(1-c1 sigma) beta + (1-c2 sigma) zeta,
///              (1-c1 sigma) alpha x {U_{phi-sigma}(1-c1 sigma) beta
///                                    + V_{phi-sigma}(1-c2 sigma) zeta} )
/// built in the cross model from a triple satisfying the cut relation
/// |zeta|^2 / |beta|^2 = Q(phi).  At sigma = 0 it passes through the base cut
/// point with first derivative orthogonal to the base x in both components.
class CornerCurve {
 public:
  CornerCurve(const AdmissibleTriple& triple, double phi);
  static CornerCurve from_cut_point(const CutPoint& p);

  CrossPoint at_cross(double sigma) const;  // throws outside the valid range
  GroupPoint at(double sigma) const;
  CrossPoint base_cross() const { return at_cross(0.0); }
  GroupPoint base() const { return at(0.0); }

  double c1() const { return c1_; }
  double c2() const { return c2_; }
  double phi() const { return phi_; }
  double sigma_max() const { return sigma_max_; }
  double alpha_sq() const { return alpha_sq_; }
  double zeta_sq() const { return zeta_sq_; }
  const Vec3& alpha() const { return triple_.a; }
  const Vec3& beta() const { return triple_.b; }
  const Vec3& zeta() const { return triple_.z; }

  /// Exact distance of the base point, sqrt(|alpha|^2 + |zeta|^2).
  double base_distance() const;

  /// Length of the competitor extremal reaching at(sigma):
  /// sqrt((1-c1 sigma)^2 |alpha|^2 + (1-c2 sigma)^2 |zeta|^2).
  double upper_bound(double sigma) const;

 private:
  AdmissibleTriple triple_;  // (alpha, beta, zeta) in the cross model
  double phi_;
  double c1_, c2_;
  double sigma_max_;
  double alpha_sq_, zeta_sq_;
};

struct CornerProbeRow {
  double sigma;
  double upper_bound;
  double shooting_distance;
  bool bound_ok;     // shooting distance <= upper bound (+ tolerance)
  bool decrease_ok;  // shooting distance <= d0 - C sigma
};

/// Distance decrease along the corner curve.  The decrease assertion uses
/// C = (c1 |alpha|^2 + c2 |zeta|^2) / (2 d) * (1 - slack).
std::vector<CornerProbeRow> corner_decrease_probe(const CornerCurve& curve,
                                                  const std::vector<double>& sigmas,
                                                  double slack = 0.1,
                                                  const ShootingConfig& cfg = {});

struct SemiconvexityRow {
  double sigma;
  double quotient;           // midpoint taken on the chord, projected to the cut locus
  double quotient_centered;  // midpoint replaced by the base cut point
  double midpoint_displacement;  // distance moved by the cut-locus projection
  double d_plus, d_minus, d_mid;
};

/// Second-difference quotient across the cut point along the corner curve
/// and its 180-degree rotation about the base x.  The quotient diverges to
/// -infinity like -C/sigma.
std::vector<SemiconvexityRow> semiconvexity_probe(const CornerCurve& curve,
                                                  const std::vector<double>& sigmas,
                                                  const ShootingConfig& cfg = {});

}  // namespace carnotcut
