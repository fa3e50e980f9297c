#include "carnotcut/scalars.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace carnotcut::sf {

namespace {

constexpr double kSeriesThreshold = 1e-2;
constexpr double kPi = 3.14159265358979323846;

void require_nonnegative(double theta) {
  if (theta < 0.0) throw std::domain_error("theta must be nonnegative");
}

void require_positive(double theta) {
  if (!(theta > 0.0)) throw std::domain_error("theta must be positive");
}

// Safeguarded bisection + Newton.  f must change sign on [lo, hi]; fp may be
// null (pure bisection).  Bisects to kBisectWidth, then polishes.
constexpr double kBisectWidth = 1e-8;
constexpr int kMaxIter = 100;

double solve_bracketed(const std::function<double(double)>& f,
                       const std::function<double(double)>& fp, double lo, double hi) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) throw std::runtime_error("root solver: no sign change in bracket");
  while (hi - lo > kBisectWidth) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (flo * fm < 0.0) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  double x = 0.5 * (lo + hi);
  if (!fp) return x;
  for (int i = 0; i < kMaxIter; ++i) {
    const double fx = f(x);
    if (std::abs(fx) <= 1e-13) break;
    if (flo * fx < 0.0)
      hi = x;
    else
      lo = x;
    const double d = fp(x);
    double xn = d != 0.0 ? x - fx / d : 0.5 * (lo + hi);
    // Newton steps that leave the bracket degrade to bisection of the
    // current (shrinking) bracket, so boundary roots still converge.
    if (xn <= lo || xn >= hi) xn = 0.5 * (lo + hi);
    if (xn == x) break;
    x = xn;
  }
  return x;
}

}  // namespace

double S(double theta) {
  require_nonnegative(theta);
  if (theta < kSeriesThreshold) {
    const double t2 = theta * theta;
    return 1.0 + t2 * (-1.0 / 6.0 + t2 * (1.0 / 120.0 - t2 / 5040.0));
  }
  return std::sin(theta) / theta;
}

double U(double theta) {
  require_nonnegative(theta);
  if (theta < kSeriesThreshold) {
    const double t2 = theta * theta;
    return theta * (1.0 / 6.0 + t2 * (-1.0 / 30.0 + t2 * (1.0 / 315.0 - t2 / 5670.0)));
  }
  return (theta - std::sin(theta) * std::cos(theta)) / (4.0 * theta * theta);
}

double V(double theta) {
  require_nonnegative(theta);
  if (theta < kSeriesThreshold) {
    const double t2 = theta * theta;
    return theta * (1.0 / 6.0 + t2 * (-1.0 / 60.0 + t2 * (1.0 / 1680.0 - t2 / 90720.0)));
  }
  return (std::sin(theta) - theta * std::cos(theta)) / (2.0 * theta * theta);
}

double W(double theta) {
  require_nonnegative(theta);
  if (theta < kSeriesThreshold) {
    const double t2 = theta * theta;
    return theta * t2 *
           (1.0 / 90.0 + t2 * (-1.0 / 630.0 + t2 * (1.0 / 9450.0 - 2.0 * t2 / 467775.0)));
  }
  const double s = std::sin(theta), c = std::cos(theta);
  return (theta * theta + theta * s * c - 2.0 * s * s) / (4.0 * theta * theta * theta);
}

double dS(double theta) {
  require_positive(theta);
  return -2.0 * V(theta);
}

double dU(double theta) {
  require_positive(theta);
  return (std::cos(theta) / theta) * V(theta);
}

double dV(double theta) {
  require_positive(theta);
  return 0.5 * S(theta) - 2.0 * V(theta) / theta;
}

double dW(double theta) {
  // W' = U' - S'V - SV' = U' + 2V^2 - S V'
  require_positive(theta);
  const double v = V(theta);
  return dU(theta) + 2.0 * v * v - S(theta) * dV(theta);
}

double phi_root(int k) {
  if (k < 1) throw std::invalid_argument("phi_root requires k >= 1");
  static std::vector<double> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  // Root of sin t - t cos t (numerator of V; avoids the tan poles).
  auto f = [](double t) { return std::sin(t) - t * std::cos(t); };
  auto fp = [](double t) { return t * std::sin(t); };
  while (static_cast<int>(cache.size()) < k) {
    const int j = static_cast<int>(cache.size()) + 1;
    cache.push_back(solve_bracketed(f, fp, j * kPi, (j + 0.5) * kPi));
  }
  return cache[k - 1];
}

double phi1() {
  static const double value = phi_root(1);
  return value;
}

double P(double theta) {
  require_positive(theta);
  // Poles cluster just below (k+1/2) pi; only test the nearby bracket.
  const int k = static_cast<int>(theta / kPi);
  if (k >= 1 && std::abs(theta - phi_root(k)) < 1e-12)
    throw std::domain_error("pole of P at phi_k");
  return -(S(theta) / V(theta)) * std::sqrt(W(theta) / U(theta));
}

double Q(double theta) {
  require_positive(theta);
  if (theta >= phi1()) throw std::domain_error("Q is defined on ]0, phi1[");
  return -U(theta) * S(theta) / V(theta);
}

double R(double theta) {
  require_positive(theta);
  const double s = S(theta);
  return (1.0 - s * s) / std::sqrt(U(theta) * W(theta));
}

double dP(double theta) {
  require_positive(theta);
  const double s = S(theta), u = U(theta), v = V(theta), w = W(theta);
  const double sp = dS(theta), up = dU(theta), vp = dV(theta), wp = dW(theta);
  const double root = std::sqrt(w / u);
  return -((sp * v - s * vp) / (v * v)) * root -
         (s / v) * (wp * u - w * up) / (2.0 * u * u) / root;
}

double dQ(double theta) {
  require_positive(theta);
  const double s = S(theta), u = U(theta), v = V(theta);
  return -(dU(theta) * s + u * dS(theta)) / v + u * s * dV(theta) / (v * v);
}

namespace {

// Shared monotone inversion on [pi, phi1) for P and Q.
double invert_on_cut_range(double v, bool* near_pole, double (*fn)(double),
                           double (*dfn)(double)) {
  if (near_pole) *near_pole = false;
  if (v < 0.0) throw std::domain_error("inverse argument must be nonnegative");
  if (v == 0.0) return kPi;
  // Bracket stops short of the pole-rejection band of P; beyond it the
  // inverse saturates (legitimate: both P and Q blow up at phi1).
  const double hi = phi1() - 4e-12;
  if (v >= fn(hi)) {
    if (near_pole) *near_pole = true;
    return phi1() - 1e-12;
  }
  auto g = [&](double t) { return fn(t) - v; };
  auto gp = [&](double t) { return dfn(t); };
  return solve_bracketed(g, gp, kPi, hi);
}

}  // namespace

double P_inv(double v, bool* near_pole) { return invert_on_cut_range(v, near_pole, &P, &dP); }
double P_inv(double v) { return P_inv(v, nullptr); }

double Q_inv(double v, bool* near_pole) { return invert_on_cut_range(v, near_pole, &Q, &dQ); }
double Q_inv(double v) { return Q_inv(v, nullptr); }

std::vector<double> solve_P_all(double v, int kmax) {
  std::vector<double> roots;
  if (!(v > 0.0)) throw std::domain_error("solve_P_all requires v > 0");
  for (int k = 1; k <= kmax; ++k) {
    const double lo = k * kPi;
    const double hi = phi_root(k);
    // P runs from 0+ at k pi to +inf at phi_k-; scan for the first crossing.
    // Uniform steps plus a geometric tail resolve the pole blow-up.
    constexpr int kScan = 256;
    double prev_t = lo;
    double prev_g = -v;  // P(k pi) = 0
    bool found = false;
    for (int i = 1; i <= kScan && !found; ++i) {
      double t;
      if (i < kScan) {
        t = lo + (hi - lo) * static_cast<double>(i) / kScan;
      } else {
        t = hi - 1e-11;
      }
      const double g = P(t) - v;
      if (prev_g < 0.0 && g >= 0.0) {
        auto f = [&](double x) { return P(x) - v; };
        auto fp = [&](double x) { return dP(x); };
        roots.push_back(solve_bracketed(f, fp, prev_t, t));
        found = true;
      }
      prev_t = t;
      prev_g = g;
    }
  }
  return roots;
}

}  // namespace carnotcut::sf
