#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hlab/phase.hpp"

#include <cmath>
#include <vector>

using namespace hlab;

TEST_CASE("resonance factorization") {
  // j = 1: Sigma = 3
  auto s1 = resonance_sigma(1);
  CHECK(s1.term_count() == 1);
  CHECK(s1.eval(Rat(1), Rat(1), Rat(1)) == Rat(3));

  // exact divisibility, symmetry, and Sigma(1,1,1) = (3^{2j+1}-3)/8 for j <= 6
  for (int j = 1; j <= 6; ++j) {
    auto sigma = resonance_sigma(j);
    CHECK(sigma.symmetric());
    Rat p = 1;
    for (int i = 0; i < 2 * j + 1; ++i) p *= 3;
    Rat expect = (p - 3) / 8;
    CHECK(sigma.eval(Rat(1), Rat(1), Rat(1)) == expect);
  }

  // zero factor: left side vanishes at (x, -x, y)
  auto s2 = resonance_sigma(2);
  Rat x(7, 3), y(2);
  Rat lhs = Rat(0);
  {
    auto pw = [](Rat b, int e) { Rat r = 1; for (int i = 0; i < e; ++i) r *= b; return r; };
    lhs = pw(x + (-x) + y, 5) - pw(x, 5) - pw(-x, 5) - pw(y, 5);
  }
  CHECK(lhs == (x + (-x)) * ((-x) + y) * (y + x) * s2.eval(x, -x, y));
}

TEST_CASE("resonance lower bound audit") {
  std::vector<std::array<double, 3>> grid;
  for (int a = -10; a <= 10; ++a)
    for (int b = -10; b <= 10; ++b)
      for (int c = -10; c <= 10; ++c) {
        if (a + b == 0 || b + c == 0 || c + a == 0) continue;
        grid.push_back({double(a), double(b), double(c)});
      }

  auto r1 = resonance_lower_bound_check(1, grid);
  CHECK(r1.ok);
  CHECK(r1.min_ratio == doctest::Approx(1.0));  // Sigma = 3 against 1+1+1

  auto r2 = resonance_lower_bound_check(2, grid);
  CHECK(r2.ok);
  CHECK(r2.min_ratio > 0.0);

  auto empty = resonance_lower_bound_check(2, std::span<const std::array<double, 3>>{});
  CHECK(empty.ok);
  CHECK(std::isinf(empty.min_ratio));
}

TEST_CASE("quadratic resonance") {
  CHECK(quadratic_resonance(1, 1, 1) == doctest::Approx(4.0));
  CHECK(std::pow(2.0, 3) - 1 - 1 >= quadratic_resonance(1, 1, 1));  // 6 >= 4
  CHECK(quadratic_resonance(3, 5.0, 0.0) == 0.0);
  CHECK(quadratic_resonance(2, 1.0, -1.0) == 0.0);

  // |(x1+x2)^{2j+1} - x1^{2j+1} - x2^{2j+1}| >= c * bound on samples
  for (int j = 1; j <= 3; ++j) {
    for (double x1 = -4; x1 <= 4; x1 += 0.5) {
      for (double x2 = -4; x2 <= 4; x2 += 0.5) {
        double lhs = std::abs(std::pow(x1 + x2, 2 * j + 1) - std::pow(x1, 2 * j + 1) -
                              std::pow(x2, 2 * j + 1));
        CHECK(lhs >= 0.5 * quadratic_resonance(j, x1, x2) - 1e-9);
      }
    }
  }

  // zero set is exactly {x1 = 0} u {x2 = 0} u {x1 + x2 = 0}
  CHECK(quadratic_resonance(2, 1.5, 2.5) > 0.0);
}

TEST_CASE("critical exponents") {
  auto m1 = critical_exponents(Family::mKdV, 1, Rat(2));
  CHECK(m1.s_crit == Rat(-1, 2));
  CHECK(m1.s_j == Rat(1, 4));

  auto k2 = critical_exponents(Family::KdV, 2, Rat(2));
  CHECK(k2.s_crit == Rat(-3, 2));
  CHECK(k2.s_j == Rat(3, 4));
  // j - 3/2 - 1/(2j) + (2j-1)/(2r') = 2 - 3/2 - 1/4 + 3/4 = 1 for j=2, r=2
  CHECK(k2.kdv_threshold == Rat(1));
  // the r -> 1 limit drops the last summand: 1/4, i.e. H^{-1/4} on the
  // Sobolev scaling scale sigma = s - 1/r + 1/2
  CHECK(k2.kdv_threshold - k2.s_j == Rat(1, 4));

  // s_j(r) -> 0 as r -> 1
  CHECK(critical_exponents(Family::mKdV, 3, Rat(101, 100)).s_j == Rat(5, 202));

  // strictly increasing in j and r
  Rat prev(-1);
  for (int j = 1; j <= 4; ++j) {
    auto e = critical_exponents(Family::mKdV, j, Rat(3, 2));
    CHECK(e.s_j > prev);
    prev = e.s_j;
  }
  CHECK(critical_exponents(Family::mKdV, 2, Rat(2)).s_j >
        critical_exponents(Family::mKdV, 2, Rat(3, 2)).s_j);

  CHECK_THROWS_AS(critical_exponents(Family::KdV, 1, Rat(1)), DomainError);
  CHECK_THROWS_AS(critical_exponents(Family::KdV, 1, Rat(5, 2)), DomainError);
}
