#pragma once

#include <vector>

namespace carnotcut::sf {

// Scalar profile family underlying the geodesic endpoint map:
//   S(t) = sin t / t
//   U(t) = (t - sin t cos t) / (4 t^2)
//   V(t) = (sin t - t cos t) / (2 t^2)
//   W(t) = U - S V                      (> 0 for t > 0)
//   P(t) = -(S/V) sqrt(W/U)             (increasing bijection [pi,phi1) -> [0,inf))
//   Q(t) = -U S / V                     (increasing bijection [pi,phi1) -> [0,inf))
//   R(t) = (1 - S^2) / sqrt(U W)        (increasing on A = U_k ]k pi, phi_k[)
// with phi_k the k-th positive root of tan t = t (zero of V).
// Below the series threshold the functions are evaluated by Taylor expansion;
// the direct W formula cancels catastrophically near zero.

double S(double theta);
double U(double theta);
double V(double theta);
double W(double theta);

// Derivatives: S' = -2V, U' = (cos/theta) V, V' = S/2 - 2V/theta.  theta > 0.
double dS(double theta);
double dU(double theta);
double dV(double theta);
double dW(double theta);

/// k-th positive root of tan(theta) = theta, bracketed in ]k pi, (k+1/2) pi[.
/// Cached after first evaluation; k >= 1.
double phi_root(int k);

/// phi_root(1), the upper end of the normalized cut-time range.
double phi1();

double P(double theta);  // poles at phi_k rejected within 1e-12
double Q(double theta);  // domain ]0, phi1[
double R(double theta);  // theta > 0

double dP(double theta);
double dQ(double theta);

/// Unique theta in [pi, phi1) with P(theta) = v, v >= 0.  Monotone inversion by
/// bracketed bisection plus Newton polish.  Inputs beyond the representable
/// range of P saturate at phi1 - 1e-12 (see near_pole flag overload).
double P_inv(double v);
double P_inv(double v, bool* near_pole);

/// Unique theta in [pi, phi1) with Q(theta) = v, v >= 0.
double Q_inv(double v);
double Q_inv(double v, bool* near_pole);

/// All roots of P(theta) = v with theta in ]k pi, phi_k[ for k = 1..kmax,
/// located by sign-change scan (P is only known to be monotone for k = 1).
/// Returns the smallest root in each bracket, sorted ascending.
std::vector<double> solve_P_all(double v, int kmax);

}  // namespace carnotcut::sf
