#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hlab/hierarchy.hpp"

using namespace hlab;

namespace {
DiffPoly u(int l) { return DiffPoly::var(l); }
}

TEST_CASE("lenard operator") {
  DiffPoly g1 = u(2) - Rat(3) * u(0) * u(0);
  DiffPoly expect = u(5) - Rat(10) * u(0) * u(3) - Rat(20) * u(1) * u(2) +
                    Rat(30) * u(0) * u(0) * u(1);
  CHECK(lenard_apply(g1) == expect);
  CHECK(lenard_apply(DiffPoly::zero()).is_zero());
  CHECK(lenard_apply(DiffPoly::constant(1)) == Rat(-2) * u(1));
}

TEST_CASE("kdv gradients") {
  CHECK(kdv_gradient(1) == u(2) - Rat(3) * u(0) * u(0));
  DiffPoly g2 = -u(4) + Rat(10) * u(0) * u(2) + Rat(5) * u(1) * u(1) -
                Rat(10) * u(0) * u(0) * u(0);
  CHECK(kdv_gradient(2) == g2);
  // recursion self-consistency
  CHECK(d_x(kdv_gradient(2)) == -lenard_apply(kdv_gradient(1)));
  // homogeneity: G_j has KdV rank j+1
  for (int j = 1; j <= 4; ++j) {
    auto r = rank_info(kdv_gradient(j), RankConvention::KdV);
    CHECK(r.homogeneous);
    CHECK(r.rank == Rat(j + 1));
  }
}

TEST_CASE("mkdv gradients") {
  CHECK(mkdv_gradient(1) == u(2) - Rat(2) * u(0) * u(0) * u(0));
  DiffPoly gt2 = -u(4) + Rat(10) * u(0) * u(0) * u(2) + Rat(10) * u(0) * u(1) * u(1) -
                 Rat(6) * u(0) * u(0) * u(0) * u(0) * u(0);
  CHECK(mkdv_gradient(2) == gt2);
  for (int j = 1; j <= 4; ++j) {
    auto r = rank_info(mkdv_gradient(j), RankConvention::mKdV);
    CHECK(r.homogeneous);
    // density rank k+1 drops by 1/2 when the variation removes a factor
    CHECK(r.rank == Rat(2 * j + 1, 2));
    // odd in v: every monomial has odd degree
    for (const auto& t : mkdv_gradient(j).terms()) CHECK(t.degree() % 2 == 1);
  }
}

TEST_CASE("direct recursion agrees with the Miura route") {
  CHECK(mkdv_gradient_via_recursion(2) == mkdv_gradient(2));
  CHECK(mkdv_gradient_via_recursion(3) == mkdv_gradient(3));
}

TEST_CASE("hierarchy equations and shapes") {
  auto kdv2 = hierarchy_equation(Family::KdV, 2);
  CHECK(kdv2.dispersion_coeff == Rat(-1));
  CHECK(kdv2.nonlinear == d_x(kdv_gradient(2)) + u(5));

  auto mkdv1 = hierarchy_equation(Family::mKdV, 1);
  CHECK(mkdv1.dispersion_coeff == Rat(1));
  CHECK(mkdv1.nonlinear == Rat(-6) * u(0) * u(0) * u(1));

  auto mkdv3 = hierarchy_equation(Family::mKdV, 3);
  CHECK(mkdv3.dispersion_coeff == Rat(1));

  for (int j = 1; j <= 4; ++j) {
    CHECK(scaling_check(hierarchy_equation(Family::KdV, j)));
    CHECK(scaling_check(hierarchy_equation(Family::mKdV, j)));
  }
  // a perturbed equation fails the weight audit
  auto bad = hierarchy_equation(Family::KdV, 2);
  bad.nonlinear = bad.nonlinear + u(0) * u(0);
  CHECK_FALSE(scaling_check(bad));
}

TEST_CASE("hamiltonian densities") {
  CHECK(hamiltonian_density(Family::KdV, 0) == Rat(-1, 2) * u(0) * u(0));
  CHECK(euler(hamiltonian_density(Family::KdV, 1)) == kdv_gradient(1));
  CHECK(euler(hamiltonian_density(Family::KdV, 2)) == kdv_gradient(2));
  CHECK(euler(hamiltonian_density(Family::mKdV, 2)) == mkdv_gradient(2));
}

TEST_CASE("involution") {
  for (int k = 0; k <= 3; ++k)
    for (int l = 0; l <= 3; ++l) CHECK(involution_check(Family::KdV, k, l));
  for (int k = 1; k <= 3; ++k)
    for (int l = 1; l <= 3; ++l) CHECK(involution_check(Family::mKdV, k, l));
}

TEST_CASE("miura intertwining") {
  for (int j = 1; j <= 3; ++j) CHECK(miura_identity_check(j));
}
