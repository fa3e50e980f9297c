#include "carnotcut/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace carnotcut {

namespace {
constexpr double kParallelTol = 1e-12;
}

bool Covector::strictly_normal() const {
  return tau.cross(xi).norm() > kParallelTol * tau.norm() * xi.norm();
}

double hamiltonian(const CrossPoint& q, const Covector& p) {
  const Vec3 u = p.xi + 0.5 * p.tau.cross(q.x);
  return 0.5 * u.norm_sq();
}

ExtremalParams covector_to_extremal(const Covector& p0) {
  if (p0.xi.norm_sq() == 0.0)
    throw std::invalid_argument("zero initial covector carries no extremal");
  if (!p0.strictly_normal()) {
    // Straight line with direction xi (includes tau = 0 and tau parallel xi).
    return ExtremalParams(AdmissibleTriple::make({}, {}, p0.xi), 0.0);
  }
  const double lambda = p0.tau.norm();
  const Vec3 that = p0.tau / lambda;
  const Vec3 z = that * p0.xi.dot(that);
  const Vec3 a = p0.xi - z;
  const Vec3 b = that.cross(p0.xi);
  return ExtremalParams(AdmissibleTriple::make(a, b, z), 0.5 * lambda);
}

CrossPoint exp_map(const Covector& p0, double s) {
  if (p0.xi.norm_sq() == 0.0) return {{}, {}};  // zero control stays at the origin
  return to_cross(extremal_point(covector_to_extremal(p0), s));
}

FlowState exp_map_ode_state(const Covector& p0, double s, int steps) {
  if (steps < 1) throw std::invalid_argument("integrator requires steps >= 1");
  const Vec3& tau = p0.tau;
  FlowState y{p0.xi, {}, {}};
  const double h = s / steps;

  auto deriv = [&tau](const FlowState& w) -> FlowState {
    return {tau.cross(w.u), w.u, 0.5 * w.x.cross(w.u)};
  };
  auto axpy = [](const FlowState& w, double c, const FlowState& d) -> FlowState {
    return {w.u + d.u * c, w.x + d.x * c, w.t + d.t * c};
  };

  for (int i = 0; i < steps; ++i) {
    const FlowState k1 = deriv(y);
    const FlowState k2 = deriv(axpy(y, 0.5 * h, k1));
    const FlowState k3 = deriv(axpy(y, 0.5 * h, k2));
    const FlowState k4 = deriv(axpy(y, h, k3));
    y.u = y.u + (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u) * (h / 6.0);
    y.x = y.x + (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x) * (h / 6.0);
    y.t = y.t + (k1.t + 2.0 * k2.t + 2.0 * k3.t + k4.t) * (h / 6.0);
  }
  return y;
}

CrossPoint exp_map_ode(const Covector& p0, double s, int steps) {
  const FlowState y = exp_map_ode_state(p0, s, steps);
  return {y.x, y.t};
}

int default_ode_steps(const Covector& p0, double s) {
  const double suggested = 50.0 * std::abs(s) * (1.0 + p0.tau.norm());
  return std::max(100, static_cast<int>(std::ceil(suggested)));
}

CutTime T_cut(const Covector& p0) {
  if (p0.xi.norm_sq() == 0.0)
    throw std::domain_error("T_cut undefined for zero control (xi = 0)");
  if (!p0.strictly_normal()) return CutTime::infinite();
  const double tau_norm = p0.tau.norm();
  const double mu = std::abs(p0.xi.dot(p0.tau)) / p0.tau.cross(p0.xi).norm();
  return CutTime::finite((2.0 / tau_norm) * h_cut(mu));
}

}  // namespace carnotcut
