#include "carnotcut/scalars.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace carnotcut;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent direct-formula compositions used as oracles below.
double S_direct(double t) { return std::sin(t) / t; }
double U_direct(double t) { return (t - std::sin(t) * std::cos(t)) / (4.0 * t * t); }
double V_direct(double t) { return (std::sin(t) - t * std::cos(t)) / (2.0 * t * t); }
double W_direct(double t) { return U_direct(t) - S_direct(t) * V_direct(t); }

// Plain bisection on tan(t) - t over ]k pi, (k+1/2) pi[.
double phi_bisect(int k) {
  double lo = k * kPi + 1e-9, hi = (k + 0.5) * kPi - 1e-9;
  auto f = [](double t) { return std::tan(t) - t; };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(lo) * f(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("S, U, V at reference phases") {
  CHECK(std::abs(sf::S(kPi)) <= 1e-15);
  CHECK(std::abs(sf::U(kPi) - 1.0 / (4.0 * kPi)) <= 1e-15);
  CHECK(std::abs(sf::V(kPi) - 1.0 / (2.0 * kPi)) <= 1e-15);

  CHECK(std::abs(sf::S(kPi / 2.0) - 2.0 / kPi) <= 1e-15);
  CHECK(std::abs(sf::U(kPi / 2.0) - 1.0 / (2.0 * kPi)) <= 1e-15);
  CHECK(std::abs(sf::V(kPi / 2.0) - 2.0 / (kPi * kPi)) <= 1e-15);

  CHECK(sf::S(0.0) == 1.0);
  CHECK(sf::U(0.0) == 0.0);
  CHECK(sf::V(0.0) == 0.0);
  // Leading behavior U, V ~ theta/6.
  CHECK(std::abs(sf::U(1e-6) / 1e-6 - 1.0 / 6.0) <= 1e-10);
  CHECK(std::abs(sf::V(1e-6) / 1e-6 - 1.0 / 6.0) <= 1e-10);
  CHECK_THROWS_AS(sf::S(-1.0), std::domain_error);
}

TEST_CASE("W: closed values, positivity, small-theta expansion") {
  CHECK(std::abs(sf::W(kPi) - 1.0 / (4.0 * kPi)) <= 1e-15);
  CHECK(std::abs(sf::W(2.0 * kPi) - 1.0 / (8.0 * kPi)) <= 1e-15);
  for (double t : {0.01, 0.1, 1.0, 10.0, 100.0}) CHECK(sf::W(t) > 0.0);
  CHECK(std::abs(sf::W(1e-3) / (1e-9 / 90.0) - 1.0) <= 1e-5);
}

TEST_CASE("series and direct branches agree at the switchover") {
  for (double t : {0.0099, 0.00999, 0.009999}) {
    CHECK(std::abs(sf::S(t) - S_direct(t)) <= 1e-13);
    CHECK(std::abs(sf::U(t) - U_direct(t)) <= 1e-13);
    CHECK(std::abs(sf::V(t) - V_direct(t)) <= 1e-13);
    CHECK(std::abs(sf::W(t) - W_direct(t)) <= 1e-13);
  }
}

TEST_CASE("derivatives at pi and against central differences") {
  CHECK(std::abs(sf::dS(kPi) + 1.0 / kPi) <= 1e-15);
  CHECK(std::abs(sf::dU(kPi) + 1.0 / (2.0 * kPi * kPi)) <= 1e-15);
  CHECK(std::abs(sf::dV(kPi) + 1.0 / (kPi * kPi)) <= 1e-15);

  const double h = 1e-6;
  for (double t : {0.05, 0.5, 1.7, kPi, 4.0, 9.3, 40.0}) {
    CHECK(std::abs(sf::dS(t) - (sf::S(t + h) - sf::S(t - h)) / (2 * h)) <= 1e-8);
    CHECK(std::abs(sf::dU(t) - (sf::U(t + h) - sf::U(t - h)) / (2 * h)) <= 1e-8);
    CHECK(std::abs(sf::dV(t) - (sf::V(t + h) - sf::V(t - h)) / (2 * h)) <= 1e-8);
    CHECK(std::abs(sf::dW(t) - (sf::W(t + h) - sf::W(t - h)) / (2 * h)) <= 1e-8);
  }
  CHECK_THROWS_AS(sf::dS(0.0), std::domain_error);

  // V(phi_1) = 0 kills dS and dU there.
  const double p1 = sf::phi1();
  CHECK(std::abs(sf::dS(p1)) <= 1e-13);
  CHECK(std::abs(sf::dU(p1)) <= 1e-13);
}

TEST_CASE("phi_k roots: values, residuals, brackets") {
  CHECK(std::abs(sf::phi_root(1) - 4.493409457909064) <= 1e-12);
  CHECK(std::abs(sf::phi_root(2) - 7.725251836937707) <= 1e-12);
  CHECK(std::abs(sf::phi_root(1) - phi_bisect(1)) <= 1e-9);
  CHECK(std::abs(sf::phi_root(2) - phi_bisect(2)) <= 1e-9);
  for (int k = 1; k <= 20; ++k) {
    const double p = sf::phi_root(k);
    CHECK(p > k * kPi);
    CHECK(p < (k + 0.5) * kPi);
    CHECK(std::abs(sf::V(p)) <= 1e-12);
  }
  CHECK_THROWS_AS(sf::phi_root(0), std::invalid_argument);
}

TEST_CASE("P: zeros at k pi, oracle at 4.0, pole rejection") {
  CHECK(std::abs(sf::P(kPi)) <= 1e-14);
  CHECK(std::abs(sf::P(2.0 * kPi)) <= 1e-14);

  const double t = 4.0;
  const double oracle =
      -(S_direct(t) / V_direct(t)) * std::sqrt(W_direct(t) / U_direct(t));
  CHECK(oracle > 0.0);
  CHECK(std::abs(sf::P(t) - oracle) <= 1e-13 * oracle);

  CHECK_THROWS_AS(sf::P(sf::phi1()), std::domain_error);
  CHECK_THROWS_AS(sf::P(sf::phi_root(2) + 5e-13), std::domain_error);
}

TEST_CASE("Q: zero at pi, positive inside, oracle at 4.2, domain") {
  CHECK(std::abs(sf::Q(kPi)) <= 1e-15);
  CHECK(sf::Q(0.5 * (kPi + sf::phi1())) > 0.0);
  const double t = 4.2;
  const double oracle = -U_direct(t) * S_direct(t) / V_direct(t);
  CHECK(std::abs(sf::Q(t) - oracle) <= 1e-13 * oracle);
  CHECK_THROWS_AS(sf::Q(sf::phi1()), std::domain_error);
  CHECK_THROWS_AS(sf::Q(0.0), std::domain_error);
}

TEST_CASE("R: closed values at pi and 2 pi, increasing on A") {
  CHECK(std::abs(sf::R(kPi) - 4.0 * kPi) <= 1e-13);
  CHECK(std::abs(sf::R(2.0 * kPi) - 8.0 * kPi) <= 1e-13);
  CHECK_THROWS_AS(sf::R(0.0), std::domain_error);

  std::vector<double> samples;
  for (int k = 1; k <= 5; ++k) {
    const double lo = k * kPi, hi = sf::phi_root(k);
    for (int i = 1; i < 400; ++i) samples.push_back(lo + (hi - lo) * i / 400.0);
  }
  for (size_t i = 1; i < samples.size(); ++i) CHECK(sf::R(samples[i]) > sf::R(samples[i - 1]));
}

TEST_CASE("P and Q are strictly increasing on the cut range") {
  const double lo = kPi + 1e-6, hi = sf::phi1() - 1e-6;
  double prev_p = sf::P(lo), prev_q = sf::Q(lo);
  for (int i = 1; i < 2000; ++i) {
    const double t = lo + (hi - lo) * i / 2000.0;
    const double p = sf::P(t), q = sf::Q(t);
    CHECK(p > prev_p);
    CHECK(q > prev_q);
    prev_p = p;
    prev_q = q;
  }
}

TEST_CASE("P_inv: endpoint, round trip, saturation near the pole") {
  CHECK(sf::P_inv(0.0) == kPi);
  CHECK_THROWS_AS(sf::P_inv(-1.0), std::domain_error);

  for (int i = 0; i <= 40; ++i) {
    const double t = (kPi + 1e-3) + (sf::phi1() - kPi - 2e-3) * i / 40.0;
    CHECK(std::abs(sf::P_inv(sf::P(t)) - t) <= 1e-10);
  }

  bool near_pole = false;
  const double t6 = sf::P_inv(1e6, &near_pole);
  // Near the pole P(theta) ~ 2/(phi1 - theta), so the root for v = 1e6 sits
  // about 2e-6 below phi1.
  CHECK(sf::phi1() - t6 <= 3e-6);
  CHECK(t6 < sf::phi1());
  CHECK(std::abs(sf::P(t6) - 1e6) <= 1e-2);

  const double huge = sf::P_inv(1e300, &near_pole);
  CHECK(near_pole);
  CHECK(huge < sf::phi1());
}

TEST_CASE("Q_inv: endpoint, round trip, bisection oracle at v = 1") {
  CHECK(sf::Q_inv(0.0) == kPi);
  for (int i = 0; i <= 40; ++i) {
    const double t = (kPi + 1e-3) + (sf::phi1() - kPi - 2e-3) * i / 40.0;
    CHECK(std::abs(sf::Q_inv(sf::Q(t)) - t) <= 1e-10);
  }

  // Plain bisection on the direct formulas.
  double lo = kPi + 1e-9, hi = sf::phi1() - 1e-9;
  auto q = [](double t) { return -U_direct(t) * S_direct(t) / V_direct(t); };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (q(mid) > 1.0)
      hi = mid;
    else
      lo = mid;
  }
  const double theta1 = sf::Q_inv(1.0);
  CHECK(theta1 > kPi);
  CHECK(theta1 < sf::phi1());
  CHECK(std::abs(theta1 - 0.5 * (lo + hi)) <= 1e-10);
}

TEST_CASE("solve_P_all finds one root per bracket with small residuals") {
  const double v = sf::P(4.0);
  const auto roots1 = sf::solve_P_all(v, 1);
  REQUIRE(roots1.size() == 1);
  CHECK(std::abs(roots1[0] - 4.0) <= 1e-10);

  const auto roots = sf::solve_P_all(1.0, 3);
  REQUIRE(roots.size() == 3);
  for (int k = 1; k <= 3; ++k) {
    const double r = roots[k - 1];
    CHECK(r > k * kPi);
    CHECK(r < sf::phi_root(k));
    CHECK(std::abs(sf::P(r) - 1.0) <= 1e-10);
  }
  CHECK_THROWS_AS(sf::solve_P_all(0.0, 2), std::domain_error);
}
