#include "carnotcut/cutlocus.hpp"

#include <cmath>
#include <stdexcept>

#include "carnotcut/scalars.hpp"

namespace carnotcut {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

CutTime CutTime::finite(double v) {
  if (!(v > 0.0)) throw std::invalid_argument("finite cut time must be positive");
  CutTime t;
  t.value_ = v;
  t.infinite_ = false;
  return t;
}

double CutTime::value() const {
  if (infinite_) throw std::logic_error("cut time is infinite");
  return value_;
}

bool is_cut(const GroupPoint& p, double tol) {
  const double tn = p.t.norm();
  if (!(tn > tol)) return false;
  const auto [y, yperp] = factorize(p.t);
  const double bound = tol * std::max(1.0, p.x.norm()) * std::sqrt(tn);
  return std::abs(p.x.dot(y)) <= bound && std::abs(p.x.dot(yperp)) <= bound;
}

bool is_abnormal_point(const GroupPoint& p, double tol) {
  return p.t.norm() <= tol * std::max(1.0, p.x.norm_sq());
}

double h_cut(double mu) {
  if (!(mu >= 0.0)) throw std::domain_error("h_cut requires mu >= 0");
  return sf::Q_inv(mu * mu);
}

CutTime t_cut(const ExtremalParams& params) {
  if (params.phi == 0.0 || params.triple.radius() == 0.0) return CutTime::infinite();
  const double mu = params.triple.z.norm() / params.triple.radius();
  return CutTime::finite(h_cut(mu) / params.phi);
}

CutPoint::CutPoint(const GroupPoint& p, double tol) : p_(p) {
  t_norm_ = p.t.norm();
  if (!(t_norm_ > tol)) throw std::invalid_argument("cut point requires t != 0");
  auto [y, yperp] = factorize(p.t);
  const double bound = tol * std::max(1.0, p.x.norm()) * std::sqrt(t_norm_);
  if (std::abs(p.x.dot(y)) > bound || std::abs(p.x.dot(yperp)) > bound)
    throw std::invalid_argument("cut point requires x orthogonal to supp t");
  y_ = y;
  yperp_ = yperp;
  theta_ = sf::P_inv(p.x.norm_sq() / t_norm_);
}

CutPoint cut_point(const ExtremalParams& params, double tol) {
  const CutTime tc = t_cut(params);
  if (tc.is_infinite())
    throw std::invalid_argument("straight extremal has no finite cut point");
  const GroupPoint p = extremal_point(params, tc.value());
  return CutPoint(p, tol);  // validates membership
}

double cut_distance(const CutPoint& p) {
  return std::sqrt(p.point().x.norm_sq() + sf::R(p.theta()) * p.t_norm());
}

ExtremalParams extremal_family_at(const CutPoint& p, double theta, double sigma) {
  const double u = sf::U(theta), v = sf::V(theta), s = sf::S(theta), w = sf::W(theta);
  const double quarter = std::pow(u * w, 0.25);
  const Vec3& x = p.point().x;
  const double cs = std::cos(sigma), sn = std::sin(sigma);

  const Vec3 span_c = p.y() * cs + p.yperp() * sn;   // y cos + yperp sin
  const Vec3 span_s = p.y() * sn - p.yperp() * cs;   // y sin - yperp cos

  const Vec3 aprime = span_s / quarter;
  const Vec3 bprime = span_c * (quarter / w) - x * (v / w);
  const Vec3 zeta = x * (u / w) - span_c * (s * quarter / w);

  const auto [a, b] = change_vars_inverse(aprime, bprime, theta);
  return ExtremalParams(AdmissibleTriple::make(a, b, zeta), theta);
}

ExtremalParams extremal_family(const CutPoint& p, double sigma) {
  return extremal_family_at(p, p.theta(), sigma);
}

std::vector<ThetaBranch> minimizers_all_theta(const CutPoint& p, int kmax) {
  const double v = p.point().x.norm_sq() / p.t_norm();
  std::vector<double> thetas;
  if (v == 0.0) {
    for (int k = 1; k <= kmax; ++k) thetas.push_back(k * kPi);  // P(k pi) = 0
  } else {
    thetas = sf::solve_P_all(v, kmax);
  }
  std::vector<ThetaBranch> branches;
  branches.reserve(thetas.size());
  for (double theta : thetas) {
    const double len = std::sqrt(p.point().x.norm_sq() + sf::R(theta) * p.t_norm());
    branches.push_back({theta, extremal_family_at(p, theta, 0.0), len});
  }
  return branches;
}

std::vector<SpherePoint> sphere_profile(double r, const SphereGrid& grid) {
  if (!(r > 0.0)) throw std::invalid_argument("sphere radius must be positive");
  if (grid.n_psi1 < 1 || grid.n_psi2 < 1 || grid.n_psi3 < 1 || grid.n_mu < 1 ||
      grid.n_theta < 2 || !(grid.mu_max > 0.0))
    throw std::invalid_argument("sphere grid is empty");

  std::vector<double> mus;
  mus.push_back(0.0);
  for (int i = grid.n_mu - 2; i >= 0; --i) mus.push_back(std::ldexp(grid.mu_max, -i));

  std::vector<SpherePoint> out;
  out.reserve(static_cast<size_t>(grid.n_psi1) * grid.n_psi2 * grid.n_psi3 * mus.size() *
              grid.n_theta);

  for (int i1 = 0; i1 < grid.n_psi1; ++i1) {
    const double psi1 = 2.0 * kPi * i1 / grid.n_psi1;
    for (int i2 = 0; i2 < grid.n_psi2; ++i2) {
      const double psi2 = grid.n_psi2 == 1 ? 0.0 : kPi * i2 / (grid.n_psi2 - 1);
      for (int i3 = 0; i3 < grid.n_psi3; ++i3) {
        const double psi3 = 2.0 * kPi * i3 / grid.n_psi3;
        const Mat3 frame = Mat3::rotation(Vec3::e3(), psi1)
                               .mul(Mat3::rotation(Vec3::e2(), psi2))
                               .mul(Mat3::rotation(Vec3::e3(), psi3));
        const Vec3 alpha_dir = frame.apply(Vec3::e1());
        const Vec3 beta_dir = frame.apply(Vec3::e2());
        const Vec3 zeta_dir = frame.apply(Vec3::e3());
        for (double mu : mus) {
          const double alpha_len = r / std::sqrt(1.0 + mu * mu);
          const double zeta_len = mu * alpha_len;
          const auto triple = AdmissibleTriple::make(
              alpha_dir * alpha_len, beta_dir * alpha_len, zeta_dir * zeta_len);
          const double cap = h_cut(mu);
          for (int j = 0; j < grid.n_theta; ++j) {
            const double theta = cap * j / (grid.n_theta - 1);
            out.push_back(
                {endpoint_G(triple, theta), theta, mu, j == grid.n_theta - 1});
          }
        }
      }
    }
  }
  return out;
}

}  // namespace carnotcut
