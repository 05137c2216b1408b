#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hlab/solutions.hpp"

#include <cmath>

using namespace hlab;

TEST_CASE("delta and c sums") {
  auto [d, c] = delta_c_exact(1, Rat(2), Rat(1));
  CHECK(d == Rat(2));    // 8 - 6
  CHECK(c == Rat(-11));  // -12 + 1

  auto [d0, c0] = delta_c_exact(1, Rat(0), Rat(1));
  CHECK(d0 == Rat(0));
  CHECK(c0 == Rat(1));

  // omega -> 0: only the n = 0 terms survive
  for (int j = 1; j <= 3; ++j) {
    auto [dj, cj] = delta_c_exact(j, Rat(3), Rat(0));
    Rat n2j1 = 1, n2j = 1;
    for (int i = 0; i < 2 * j + 1; ++i) n2j1 *= 3;
    for (int i = 0; i < 2 * j; ++i) n2j *= 3;
    CHECK(dj == n2j1);
    CHECK(cj == -Rat(2 * j + 1) * n2j);
  }

  // omega = 1 specialization: delta_0 = M^3 - 3M, c_0 = -3M^2 + 1
  for (int m = -3; m <= 3; ++m) {
    auto [dm, cm] = delta_c_exact(1, Rat(m), Rat(1));
    CHECK(dm == Rat(m) * Rat(m) * Rat(m) - 3 * Rat(m));
    CHECK(cm == -3 * Rat(m) * Rat(m) + 1);
  }
}

TEST_CASE("sech family evaluation") {
  SechFamilyParams p(1, 2.0, 1.0);
  CHECK(v_family_eval(p, 0.0, 0.0) == std::complex<double>(1.0, 0.0));
  // modulus omega on the ray x = ct
  SechFamilyParams q(2, 3.0, 0.7);
  double t = 0.3;
  CHECK(std::abs(v_family_eval(q, q.speed * t, t)) == doctest::Approx(q.omega));
  // |v| symmetric about x = ct
  CHECK(std::abs(v_family_eval(q, q.speed * t + 1.3, t)) ==
        doctest::Approx(std::abs(v_family_eval(q, q.speed * t - 1.3, t))));
}

TEST_CASE("family fourier transform vs dft oracle") {
  const double pi = 4.0 * std::atan(1.0);
  SechFamilyParams p(1, 4.0, 1.0);
  CHECK(v_family_fourier(p, 4.0, 0.0) == std::complex<double>(pi, 0.0));
  // |fourier| independent of t
  CHECK(std::abs(v_family_fourier(p, 5.2, 0.9)) ==
        doctest::Approx(std::abs(v_family_fourier(p, 5.2, 0.0))));

  // Riemann-sum DFT on a wide fine grid matches the closed form
  const double L = 200.0;
  const int n = 1 << 14;
  const double t = 0.25;
  for (double xi : {3.0, 4.0, 4.5, 6.0}) {
    std::complex<double> sum = 0.0;
    for (int m = 0; m < n; ++m) {
      double x = -L / 2 + L * m / n;
      sum += v_family_eval(p, x, t) * std::exp(std::complex<double>(0.0, -x * xi));
    }
    sum *= L / n;
    std::complex<double> closed = v_family_fourier(p, xi, t);
    CHECK(std::abs(sum - closed) / std::abs(closed) < 1e-6);
  }
}

TEST_CASE("parseval under the fixed convention") {
  const double pi = 4.0 * std::atan(1.0);
  SechFamilyParams p(2, 3.0, 0.8);
  double phys = 0.0;
  const int n = 1 << 13;
  const double L = 160.0;
  for (int m = 0; m < n; ++m) {
    double x = -L / 2 + L * m / n;
    phys += std::norm(v_family_eval(p, x, 0.1));
  }
  phys *= L / n * 2.0 * pi;
  double freq = 0.0;
  const double W = 30.0;
  const int nf = 1 << 13;
  for (int m = 0; m < nf; ++m) {
    double xi = p.carrier - W / 2 + W * m / nf;
    freq += std::norm(v_family_fourier(p, xi, 0.1));
  }
  freq *= W / nf;
  CHECK(phys == doctest::Approx(freq).epsilon(1e-8));
}

TEST_CASE("scaling compatibility of the family") {
  // v_{N omega}(x, t) = omega * u_{N/omega}(omega x, omega^{2j+1} t)
  int j = 2;
  double N = 3.0, w = 0.6;
  SechFamilyParams scaled(j, N, w), unit(j, N / w, 1.0);
  for (double x : {-1.0, 0.3, 2.0}) {
    for (double t : {0.0, 0.05}) {
      auto lhs = v_family_eval(scaled, x, t);
      auto rhs = w * v_family_eval(unit, w * x, std::pow(w, 2 * j + 1) * t);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("coefficient solver j = 1") {
  auto cs = solve_coefficients(1);
  CHECK(cs.a.size() == 2);
  CHECK(cs.a.at({1, 0}) == GaussRat(Rat(6)));
  CHECK(cs.a.at({1, 1}) == GaussRat(Rat(0)));
  CHECK(residual_check(1, cs).is_zero());
}

TEST_CASE("coefficient solver j = 2, 3") {
  auto c2 = solve_coefficients(2);
  CHECK(c2.a.size() == 6);
  CHECK(residual_check(2, c2).is_zero());

  auto c3 = solve_coefficients(3);
  CHECK(c3.a.size() == 12);
  CHECK(residual_check(3, c3).is_zero());

  // perturbing a coefficient breaks the residual
  auto bad = c2;
  bad.a[{1, 0}] = bad.a[{1, 0}] + GaussRat(Rat(1));
  CHECK_FALSE(residual_check(2, bad).is_zero());

  // the residual vanishes for every numeric carrier M as well
  auto r = residual_check(2, c2);
  CHECK(r.eval_m(Rat(7, 3)).is_zero());
}

TEST_CASE("numeric pde residual of the family") {
  const double pi = 4.0 * std::atan(1.0);
  auto cs = solve_coefficients(1);
  SechFamilyParams p(1, 4.0, 1.0);
  double rel = residual_check_numeric(1, cs, p, 2048, 40.0 * pi);
  CHECK(rel < 1e-6);
}

TEST_CASE("kdv soliton oracle") {
  CHECK(kdv_soliton(1.0, 0.0, 0.0) == doctest::Approx(-0.5));
  // traveling wave
  for (double t : {0.0, 0.7, 2.0})
    CHECK(kdv_soliton(2.0, 1.0 + 2.0 * t, t) == doctest::Approx(kdv_soliton(2.0, 1.0, 0.0)));
  // mass integral -2 sqrt(c)
  double c = 2.25, mass = 0.0;
  const int n = 1 << 12;
  const double L = 100.0;
  for (int m = 0; m < n; ++m) mass += kdv_soliton(c, -L / 2 + L * m / n, 0.0);
  mass *= L / n;
  CHECK(mass == doctest::Approx(-2.0 * std::sqrt(c)).epsilon(1e-8));
}
