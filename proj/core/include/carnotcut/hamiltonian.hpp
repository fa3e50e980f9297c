#pragma once

#include "carnotcut/algebra.hpp"
#include "carnotcut/cutlocus.hpp"
#include "carnotcut/geodesics.hpp"

namespace carnotcut {

/// Initial momentum (xi, tau) at the origin in the cross-product model.
struct Covector {
  Vec3 xi, tau;

  /// Strictly normal region: tau x xi != 0 beyond the degeneracy threshold
  /// (parallel covectors generate straight abnormal-limit lines).
  bool strictly_normal() const;
};

/// SubRiemannian Hamiltonian H(q, p) = 1/2 sum_j <p, Y_j(q)>^2 evaluated at
/// the cross-model point q = (x, t); equals 1/2 |xi + 1/2 tau x x|^2.
double hamiltonian(const CrossPoint& q, const Covector& p);

/// Trigonometric extremal parameters of the Hamiltonian flow from the
/// origin: lambda = |tau|, a = xi_perp, b = tau_hat x xi, z = xi_parallel.
/// Parallel or vanishing tau yields the straight-line parameters (phi = 0).
/// Throws std::invalid_argument when xi = 0 (zero control).
ExtremalParams covector_to_extremal(const Covector& p0);

/// Closed-form exponential map: the flow point q(s, p0) in the cross model.
/// Satisfies the homogeneity q(s, p) = q(1, s p).
CrossPoint exp_map(const Covector& p0, double s);

/// Full flow state of the independent fixed-step integrator.
struct FlowState {
  Vec3 u, x, t;
};

/// Classical 4th-order one-step integration of
///   u' = tau x u,  x' = u,  t' = 1/2 x x u
/// from (u, x, t) = (xi, 0, 0); global error O(steps^-4).
FlowState exp_map_ode_state(const Covector& p0, double s, int steps);

CrossPoint exp_map_ode(const Covector& p0, double s, int steps);

/// Default step count: max(100, ceil(50 s (1 + |tau|))); trajectory
/// curvature scales with |tau|.
int default_ode_steps(const Covector& p0, double s);

/// Cut time as a function of the initial covector:
/// (2/|tau|) h_cut(|<xi,tau>| / |tau x xi|) on the strictly normal region,
/// infinite on the parallel locus, error for xi = 0.
CutTime T_cut(const Covector& p0);

}  // namespace carnotcut
