#pragma once

#include <vector>

#include "carnotcut/algebra.hpp"
#include "carnotcut/geodesics.hpp"

namespace carnotcut {

/// Cut time of an extremal.  Infinite is an explicit state, not a sentinel
/// float: straight lines (phi = 0 or a = b = 0) minimize globally.
class CutTime {
 public:
  static CutTime finite(double v);
  static CutTime infinite() { return CutTime(); }

  bool is_infinite() const { return infinite_; }
  double value() const;  // throws std::logic_error when infinite

 private:
  CutTime() = default;
  double value_ = 0.0;
  bool infinite_ = true;
};

/// Membership test for the cut locus of the origin:
/// t != 0 and x orthogonal to the support plane of t.
/// Scale-aware tolerance; default matches double-precision wedge arithmetic.
bool is_cut(const GroupPoint& p, double tol = 1e-9);

/// Membership in the abnormal set (the plane t = 0).
bool is_abnormal_point(const GroupPoint& p, double tol = 1e-9);

/// Normalized cut-time profile h_cut(mu) = Q^{-1}(mu^2), values in [pi, phi1).
double h_cut(double mu);

/// Cut time of the extremal: h_cut(|z|/|a|) / phi, infinite for straight
/// lines (phi = 0 or degenerate triple).
CutTime t_cut(const ExtremalParams& params);

/// A validated point of the cut locus with its cached inversion data:
/// theta = P^{-1}(|x|^2 / |t|) in [pi, phi1) and the deterministic
/// factorization t = y ^ yperp.
class CutPoint {
 public:
  explicit CutPoint(const GroupPoint& p, double tol = 1e-9);

  const GroupPoint& point() const { return p_; }
  double theta() const { return theta_; }
  const Vec3& y() const { return y_; }
  const Vec3& yperp() const { return yperp_; }
  double t_norm() const { return t_norm_; }

 private:
  GroupPoint p_;
  double theta_;
  Vec3 y_, yperp_;
  double t_norm_;
};

/// The point where the extremal stops minimizing; throws for straight lines
/// (infinite cut time).  The result is asserted to lie on the cut locus.
CutPoint cut_point(const ExtremalParams& params, double tol = 1e-8);

/// Exact distance from the origin: sqrt(|x|^2 + R(theta) |t|).
double cut_distance(const CutPoint& p);

/// Member of the one-parameter family of minimizers through the cut point,
/// built from the cached factorization frame; sigma sweeps the family.
/// Every member satisfies extremal_point(., 1) = p and has the same length.
ExtremalParams extremal_family(const CutPoint& p, double sigma);

/// Same construction at an explicit theta solving P(theta) = |x|^2/|t|
/// (used for the non-minimizing branches above phi1).
ExtremalParams extremal_family_at(const CutPoint& p, double theta, double sigma);

struct ThetaBranch {
  double theta;
  ExtremalParams params;  // sigma = 0 representative
  double length;          // sqrt(|x|^2 + R(theta) |t|)
};

/// One extremal per branch theta_k in ]k pi, phi_k[, k <= kmax, sorted by
/// theta.  Lengths increase with k; the first entry realizes the distance.
std::vector<ThetaBranch> minimizers_all_theta(const CutPoint& p, int kmax);

/// Grid for sphere sampling: orthonormal frames from three Euler-style
/// angles, a geometric ladder in mu = |zeta|/|alpha| including 0, and a
/// uniform theta sweep from 0 to the cut cap h_cut(mu).
struct SphereGrid {
  int n_psi1 = 4;
  int n_psi2 = 3;
  int n_psi3 = 1;
  int n_mu = 4;
  double mu_max = 10.0;
  int n_theta = 7;
};

struct SpherePoint {
  GroupPoint p;
  double theta;
  double mu;
  bool at_cut_cap;
};

/// Samples of the sphere of radius r: G(alpha, beta, zeta, theta) over
/// admissible triples with |alpha|^2 + |zeta|^2 = r^2 and
/// 0 <= theta <= h_cut(mu).  Deterministic function of the grid.
std::vector<SpherePoint> sphere_profile(double r, const SphereGrid& grid = {});

}  // namespace carnotcut
