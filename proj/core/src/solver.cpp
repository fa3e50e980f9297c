#include "carnotcut/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "carnotcut/scalars.hpp"

namespace carnotcut {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Params6 = std::array<double, 6>;  // (eta, omega) = (s xi, s tau)

Params6 add_scaled(const Params6& a, double c, const Params6& b) {
  Params6 r;
  for (int i = 0; i < 6; ++i) r[i] = a[i] + c * b[i];
  return r;
}

// Endpoint of the time-1 flow for the scaled covector, as a flat residual
// against the target.  Both live at unit homogeneous scale.
struct EndpointMap {
  CrossPoint target;

  CrossPoint eval(const Params6& w) const {
    const Covector p{{w[0], w[1], w[2]}, {w[3], w[4], w[5]}};
    return exp_map(p, 1.0);
  }
  void residual(const Params6& w, std::array<double, 6>& r) const {
    const CrossPoint q = eval(w);
    r[0] = q.x.x - target.x.x;
    r[1] = q.x.y - target.x.y;
    r[2] = q.x.z - target.x.z;
    r[3] = q.t.x - target.t.x;
    r[4] = q.t.y - target.t.y;
    r[5] = q.t.z - target.t.z;
  }
  double misfit(const Params6& w) const {
    std::array<double, 6> r;
    residual(w, r);
    double s = 0.0;
    for (double v : r) s += v * v;
    return s;
  }
};

// Nelder-Mead on the squared misfit.  Unbounded: the objective is smooth
// except across the parallel locus, and decreases into the solution basins.
Params6 nelder_mead(const EndpointMap& map, const Params6& start, double scale, int iters) {
  constexpr int n = 6;
  std::array<Params6, n + 1> simplex;
  std::array<double, n + 1> value;
  simplex[0] = start;
  for (int i = 0; i < n; ++i) {
    simplex[i + 1] = start;
    simplex[i + 1][i] += scale;
  }
  for (int i = 0; i <= n; ++i) value[i] = map.misfit(simplex[i]);

  auto order = [&] {
    for (int i = 1; i <= n; ++i)
      for (int j = i; j > 0 && value[j] < value[j - 1]; --j) {
        std::swap(value[j], value[j - 1]);
        std::swap(simplex[j], simplex[j - 1]);
      }
  };
  order();

  for (int it = 0; it < iters; ++it) {
    Params6 centroid{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) centroid[j] += simplex[i][j] / n;

    const Params6 reflected = add_scaled(centroid, 1.0, add_scaled(centroid, -1.0, simplex[n]));
    const double fr = map.misfit(reflected);
    if (fr < value[0]) {
      const Params6 expanded = add_scaled(centroid, 2.0, add_scaled(centroid, -1.0, simplex[n]));
      const double fe = map.misfit(expanded);
      if (fe < fr) {
        simplex[n] = expanded;
        value[n] = fe;
      } else {
        simplex[n] = reflected;
        value[n] = fr;
      }
    } else if (fr < value[n - 1]) {
      simplex[n] = reflected;
      value[n] = fr;
    } else {
      const Params6 contracted =
          add_scaled(centroid, 0.5, add_scaled(simplex[n], -1.0, centroid));
      const double fc = map.misfit(contracted);
      if (fc < value[n]) {
        simplex[n] = contracted;
        value[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          simplex[i] = add_scaled(simplex[0], 0.5, add_scaled(simplex[i], -1.0, simplex[0]));
          value[i] = map.misfit(simplex[i]);
        }
      }
    }
    order();
    if (value[0] < 1e-30) break;
  }
  return simplex[0];
}

// Solve the 6x6 linear system in place by Gaussian elimination with partial
// pivoting; returns false when singular.
bool solve6(std::array<std::array<double, 6>, 6>& A, std::array<double, 6>& b) {
  for (int col = 0; col < 6; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 6; ++r)
      if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
    if (std::abs(A[pivot][col]) < 1e-300) return false;
    std::swap(A[pivot], A[col]);
    std::swap(b[pivot], b[col]);
    for (int r = col + 1; r < 6; ++r) {
      const double f = A[r][col] / A[col][col];
      for (int c = col; c < 6; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  for (int col = 5; col >= 0; --col) {
    double s = b[col];
    for (int c = col + 1; c < 6; ++c) s -= A[col][c] * b[c];
    b[col] = s / A[col][col];
  }
  return true;
}

// Levenberg-Marquardt polish with forward-difference Jacobian.
Params6 lm_polish(const EndpointMap& map, Params6 w, int iters) {
  double lambda = 1e-4;
  std::array<double, 6> r;
  map.residual(w, r);
  double f = 0.0;
  for (double v : r) f += v * v;

  for (int it = 0; it < iters && f > 1e-30; ++it) {
    std::array<std::array<double, 6>, 6> jac;  // jac[row][col] = d r_row / d w_col
    for (int c = 0; c < 6; ++c) {
      const double h = 1e-7 * std::max(1.0, std::abs(w[c]));
      Params6 wp = w;
      wp[c] += h;
      std::array<double, 6> rp;
      map.residual(wp, rp);
      for (int row = 0; row < 6; ++row) jac[row][c] = (rp[row] - r[row]) / h;
    }
    bool improved = false;
    for (int attempt = 0; attempt < 8 && !improved; ++attempt) {
      std::array<std::array<double, 6>, 6> A{};
      std::array<double, 6> g{};
      for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
          double s = 0.0;
          for (int row = 0; row < 6; ++row) s += jac[row][i] * jac[row][j];
          A[i][j] = s;
        }
        double s = 0.0;
        for (int row = 0; row < 6; ++row) s += jac[row][i] * r[row];
        g[i] = -s;
      }
      for (int i = 0; i < 6; ++i) A[i][i] *= 1.0 + lambda;
      if (!solve6(A, g)) {
        lambda *= 10.0;
        continue;
      }
      const Params6 wn = add_scaled(w, 1.0, g);
      std::array<double, 6> rn;
      map.residual(wn, rn);
      double fn = 0.0;
      for (double v : rn) fn += v * v;
      if (fn < f) {
        w = wn;
        r = rn;
        f = fn;
        lambda = std::max(lambda * 0.3, 1e-12);
        improved = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!improved) break;
  }
  return w;
}

// Halton low-discrepancy sequence, shifted by the seed.
double halton(unsigned long long index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

struct Candidate {
  bool accepted = false;
  double s = std::numeric_limits<double>::infinity();
  Params6 w{};
  double residual = std::numeric_limits<double>::infinity();
  bool near_cut_reject = false;  // converged but marginally past the cut
};

int resolve_threads(const ShootingConfig& cfg) {
  int n = cfg.threads;
  if (n <= 0) {
    n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("CARNOT_CUT_THREADS")) {
      const int cap = std::atoi(env);
      if (cap >= 1) n = std::min(n, cap);
    }
  }
  return std::max(1, n);
}

}  // namespace

ShootingResult distance(const GroupPoint& target, const ShootingConfig& cfg) {
  const CrossPoint tc = to_cross(target);
  const double scale = tc.x.norm() + std::sqrt(tc.t.norm());
  if (scale == 0.0) throw std::invalid_argument("distance target must differ from the origin");

  // Dilation-normalize the target to homogeneous size 1; covectors scale as
  // eta -> eta/scale, omega fixed, and the distance scales linearly.
  EndpointMap map{dilate(1.0 / scale, tc)};
  // Cheap rejection of spurious minima: |x| bounds the distance everywhere
  // (projection length); the center formula sharpens it when x vanishes.
  double lower_bound = map.target.x.norm();
  if (lower_bound <= 1e-9)
    lower_bound = std::sqrt(4.0 * kPi * map.target.t.norm()) * (1.0 - 1e-9);

  const int restarts = std::max(1, cfg.restarts);
  std::vector<Candidate> results(restarts);

  auto finish_candidate = [&](Params6 w) {
    Candidate cand;
    cand.w = w;
    cand.residual = std::sqrt(map.misfit(w));
    const Vec3 eta{w[0], w[1], w[2]};
    const Vec3 omega{w[3], w[4], w[5]};
    const double s = eta.norm();
    cand.s = s;
    if (cand.residual > cfg.residual_tol || s == 0.0) return cand;
    if (s < lower_bound * (1.0 - 1e-9)) return cand;  // below a metric lower bound
    const Covector scaled{eta, omega};
    const CutTime tcut = T_cut(scaled);  // cut time in the time-1 parametrization
    if (!tcut.is_infinite() && tcut.value() < 1.0 / (1.0 + cfg.tcut_slack)) {
      // A converged endpoint marginally past its cut means the target is near
      // the cut locus and an equal-length minimizing sibling exists nearby.
      cand.near_cut_reject = tcut.value() > 0.9;
      return cand;
    }
    cand.accepted = true;
    return cand;
  };

  auto run_restart = [&](int i) {
    const unsigned long long idx = cfg.seed * 131 + static_cast<unsigned long long>(i) + 1;
    const double u1 = halton(idx, 2), u2 = halton(idx, 3), u3 = halton(idx, 5);
    const double u4 = halton(idx, 7), u5 = halton(idx, 11), u6 = halton(idx, 13);

    // eta = s xi with s log-uniform over the normalized distance range
    // (homogeneous size 1 means the distance lies within a bounded factor),
    // omega spread over the minimizing ball |omega| = lambda s <= 2 phi1.
    const double cz1 = 2.0 * u1 - 1.0, az1 = 2.0 * kPi * u2;
    const double sz1 = std::sqrt(std::max(0.0, 1.0 - cz1 * cz1));
    const Vec3 xi{sz1 * std::cos(az1), sz1 * std::sin(az1), cz1};
    const double cz2 = 2.0 * u3 - 1.0, az2 = 2.0 * kPi * u4;
    const double sz2 = std::sqrt(std::max(0.0, 1.0 - cz2 * cz2));
    const double omega_mag = 2.1 * sf::phi1() * u5;
    const Vec3 om = Vec3{sz2 * std::cos(az2), sz2 * std::sin(az2), cz2} * omega_mag;
    const double s0 = 0.5 * std::exp(std::log(9.0) * u6);  // [0.5, 4.5]

    Params6 w{s0 * xi.x, s0 * xi.y, s0 * xi.z, om.x, om.y, om.z};
    w = nelder_mead(map, w, 0.25, cfg.simplex_iters);
    w = lm_polish(map, w, cfg.polish_iters);
    return finish_candidate(w);
  };

  const int threads = std::min(resolve_threads(cfg), restarts);
  if (threads <= 1) {
    for (int i = 0; i < restarts; ++i) results[i] = run_restart(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int i = t; i < restarts; i += threads) results[i] = run_restart(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Rescue pass: seed extra local solves around near-cut rejections whose
  // length would beat the incumbent.  Deterministic (fixed jitter table).
  {
    double incumbent = std::numeric_limits<double>::infinity();
    for (const auto& c : results)
      if (c.accepted) incumbent = std::min(incumbent, c.s);
    std::vector<Candidate> seeds;
    for (const auto& c : results)
      if (c.near_cut_reject && c.s < incumbent - 1e-12) seeds.push_back(c);
    std::sort(seeds.begin(), seeds.end(),
              [](const Candidate& a, const Candidate& b) { return a.s < b.s; });
    if (seeds.size() > 3) seeds.resize(3);
    for (size_t k = 0; k < seeds.size(); ++k) {
      for (int j = 0; j < 16; ++j) {
        const unsigned long long idx = cfg.seed * 977 + k * 16 + j + 1;
        const double radius = 0.08 * (1 << (j % 4));  // 0.08 .. 0.64 of |w|
        Params6 w = seeds[k].w;
        double wnorm = 0.0;
        for (double v : w) wnorm += v * v;
        wnorm = std::sqrt(wnorm);
        for (int c = 0; c < 6; ++c)
          w[c] += (2.0 * halton(idx, c < 3 ? 2 : 3) - 1.0) * radius * wnorm *
                  std::cos(2.0 * kPi * halton(idx, 5 + 2 * c));
        w = nelder_mead(map, w, 0.1, cfg.simplex_iters);
        w = lm_polish(map, w, cfg.polish_iters);
        const Candidate cand = finish_candidate(w);
        if (cand.accepted && cand.s < incumbent) {
          incumbent = cand.s;
          results.push_back(cand);
        }
      }
    }
  }

  ShootingResult out;
  out.restarts_used = static_cast<int>(results.size());
  int best = -1;
  double best_res = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < results.size(); ++i) {
    best_res = std::min(best_res, results[i].residual);
    if (results[i].accepted &&
        (best < 0 || results[i].s < results[best].s))
      best = static_cast<int>(i);
  }
  if (best < 0) {
    out.converged = false;
    out.residual = best_res;
    return out;
  }
  const Candidate& c = results[best];
  const Vec3 eta{c.w[0], c.w[1], c.w[2]};
  const Vec3 omega{c.w[3], c.w[4], c.w[5]};
  out.converged = true;
  out.distance = scale * c.s;
  out.time = out.distance;
  out.minimizer = Covector{eta / c.s, omega / (scale * c.s)};
  out.residual = c.residual;
  return out;
}

CornerCoeffs corner_coeffs(double phi) {
  if (!(phi >= kPi) || !(phi < sf::phi1()))
    throw std::domain_error("corner coefficients live on [pi, phi1)");
  const double s = sf::S(phi), u = sf::U(phi), v = sf::V(phi);
  const double up = sf::dU(phi), vp = sf::dV(phi);
  const double den = 2.0 * u * u - u * s * v - v * v * s * s;
  const double c1 = (-2.0 * s * v * v * v - u * up + u * s * vp) / den;
  const double c2 = (v / u) * (s * c1 - 2.0 * v);
  return {c1, c2};
}

CornerCurve::CornerCurve(const AdmissibleTriple& triple, double phi)
    : triple_(triple), phi_(phi) {
  alpha_sq_ = triple.a.norm_sq();
  zeta_sq_ = triple.z.norm_sq();
  if (alpha_sq_ == 0.0)
    throw std::invalid_argument("corner curve requires a nondegenerate triple");
  // Cut relation |zeta|^2/|beta|^2 = Q(phi): the base point lies on the cut
  // locus exactly when it holds.
  const double q = sf::Q(phi);
  if (std::abs(zeta_sq_ / alpha_sq_ - q) > 1e-8 * std::max(1.0, q))
    throw std::invalid_argument("triple does not satisfy the cut relation for phi");
  const CornerCoeffs c = corner_coeffs(phi);
  c1_ = c.c1;
  c2_ = c.c2;
  const double cmax = std::max(std::abs(c1_), std::abs(c2_));
  sigma_max_ = std::min(0.5 / cmax, 0.5 * phi);
}

CornerCurve CornerCurve::from_cut_point(const CutPoint& p) {
  const ExtremalParams family = extremal_family(p, 0.0);
  const auto [aprime, bprime] = change_vars(family.triple.a, family.triple.b, p.theta());
  return CornerCurve(AdmissibleTriple::make(aprime, bprime, family.triple.z), p.theta());
}

CrossPoint CornerCurve::at_cross(double sigma) const {
  if (std::abs(sigma) > sigma_max_)
    throw std::invalid_argument("sigma outside the validated corner-curve range");
  const double ph = phi_ - sigma;
  const double f1 = 1.0 - c1_ * sigma;
  const double f2 = 1.0 - c2_ * sigma;
  const Vec3 x = triple_.b * (sf::S(ph) * f1) + triple_.z * f2;
  const Vec3 t = (triple_.a * f1).cross(triple_.b * (sf::U(ph) * f1) + triple_.z * (sf::V(ph) * f2));
  return {x, t};
}

GroupPoint CornerCurve::at(double sigma) const { return from_cross(at_cross(sigma)); }

double CornerCurve::base_distance() const { return std::sqrt(alpha_sq_ + zeta_sq_); }

double CornerCurve::upper_bound(double sigma) const {
  const double f1 = 1.0 - c1_ * sigma;
  const double f2 = 1.0 - c2_ * sigma;
  return std::sqrt(f1 * f1 * alpha_sq_ + f2 * f2 * zeta_sq_);
}

std::vector<CornerProbeRow> corner_decrease_probe(const CornerCurve& curve,
                                                  const std::vector<double>& sigmas,
                                                  double slack,
                                                  const ShootingConfig& cfg) {
  const double d0 = curve.base_distance();
  const double decrease_rate = (curve.c1() * curve.alpha_sq() + curve.c2() * curve.zeta_sq()) /
                               (2.0 * d0) * (1.0 - slack);
  std::vector<CornerProbeRow> rows;
  rows.reserve(sigmas.size());
  for (double sigma : sigmas) {
    const ShootingResult r = distance(curve.at(sigma), cfg);
    if (!r.converged) throw std::runtime_error("corner probe: shooting did not converge");
    CornerProbeRow row;
    row.sigma = sigma;
    row.upper_bound = curve.upper_bound(sigma);
    row.shooting_distance = r.distance;
    row.bound_ok = r.distance <= row.upper_bound + 1e-7 * std::max(1.0, row.upper_bound);
    row.decrease_ok = sigma == 0.0 || r.distance <= d0 - decrease_rate * sigma;
    rows.push_back(row);
  }
  return rows;
}

std::vector<SemiconvexityRow> semiconvexity_probe(const CornerCurve& curve,
                                                  const std::vector<double>& sigmas,
                                                  const ShootingConfig& cfg) {
  const CrossPoint base = curve.base_cross();
  const double base_scale = base.x.norm() + std::sqrt(base.t.norm());
  // Rotation axis: the base x when nonzero, otherwise the (vertical) base t.
  const Vec3 axis = base.x.norm() > 1e-12 * base_scale ? base.x.normalized()
                                                       : base.t.normalized();
  const Mat3 rot = Mat3::rotation(axis, kPi);
  const double d0 = cut_distance(CutPoint(from_cross(base)));

  std::vector<SemiconvexityRow> rows;
  rows.reserve(sigmas.size());
  for (double sigma : sigmas) {
    if (!(sigma > 0.0)) throw std::invalid_argument("semiconvexity probe needs sigma > 0");
    const CrossPoint p = curve.at_cross(sigma);
    const CrossPoint mp{rot.apply(p.x), rot.apply(p.t)};  // SO(3) acts diagonally

    const ShootingResult rp = distance(from_cross(p), cfg);
    const ShootingResult rm = distance(from_cross(mp), cfg);
    if (!rp.converged || !rm.converged)
      throw std::runtime_error("semiconvexity probe: shooting did not converge");

    const Vec3 xm = (p.x + mp.x) * 0.5;
    const Vec3 tm = (p.t + mp.t) * 0.5;
    // The averaged point lies on the cut locus up to roundoff; project x onto
    // the direction of t and evaluate the exact formula there.
    const Vec3 that = tm.normalized();
    const Vec3 xm_proj = that * xm.dot(that);
    const double displacement = (xm - xm_proj).norm();
    const double dmid = cut_distance(CutPoint(from_cross({xm_proj, tm})));

    const Vec3 dx = p.x - mp.x;
    const Vec3 dt = p.t - mp.t;
    const double gap_sq = dx.norm_sq() + dt.norm_sq();

    SemiconvexityRow row;
    row.sigma = sigma;
    row.quotient = (rp.distance + rm.distance - 2.0 * dmid) / gap_sq;
    row.quotient_centered = (rp.distance + rm.distance - 2.0 * d0) / gap_sq;
    row.midpoint_displacement = displacement;
    row.d_plus = rp.distance;
    row.d_minus = rm.distance;
    row.d_mid = dmid;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace carnotcut
