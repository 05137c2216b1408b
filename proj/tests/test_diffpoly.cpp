#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hlab/diffpoly.hpp"

#include <random>

using namespace hlab;

namespace {

DiffPoly u(int l) { return DiffPoly::var(l); }

// Random polynomial with degree <= 4 and derivative index <= 6 per monomial.
DiffPoly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> nterms(1, 4), deg(0, 4), coeff(-6, 6), num(1, 3);
  std::vector<DiffMonomial> terms;
  for (int t = nterms(rng); t > 0; --t) {
    DiffMonomial m;
    m.coeff = Rat(coeff(rng), num(rng));
    if (m.coeff == 0) m.coeff = 1;
    m.coeff.canonicalize();
    int budget = 6;
    for (int d = deg(rng); d > 0; --d) {
      std::uniform_int_distribution<int> ord(0, std::min(3, budget));
      int l = ord(rng);
      budget -= l;
      m.orders.push_back(l);
    }
    terms.push_back(std::move(m));
  }
  return DiffPoly::from_terms(std::move(terms));
}

}  // namespace

TEST_CASE("add merges and cancels") {
  CHECK(u(0) + u(0) == Rat(2) * u(0));
  CHECK((u(2) - Rat(3) * u(0) * u(0)) + Rat(3) * u(0) * u(0) == u(2));
  DiffPoly p = Rat(5) * u(1) * u(1) * u(0);
  CHECK(p + DiffPoly::zero() == p);
  CHECK((p - p).is_zero());
}

TEST_CASE("mul distributes") {
  CHECK(u(0) * u(1) == DiffPoly::monomial(1, {1, 0}));
  CHECK((u(0) + u(1)) * (u(0) - u(1)) == u(0) * u(0) - u(1) * u(1));
  DiffPoly sq = u(1) * u(1);
  CHECK(sq.terms().size() == 1);
  CHECK(sq.terms()[0].degree() == 2);
  CHECK(sq.terms()[0].deriv_index() == 2);
}

TEST_CASE("total derivative") {
  CHECK(d_x(u(0) * u(0)) == Rat(2) * u(0) * u(1));
  CHECK(d_x(u(0) * u(1)) == u(1) * u(1) + u(0) * u(2));
  // matches the KdV nonlinearity d_x(u_2 - 3u^2) = u_3 - 6 u u_1
  CHECK(d_x(u(2) - Rat(3) * u(0) * u(0)) == u(3) - Rat(6) * u(0) * u(1));
  CHECK(d_x(DiffPoly::constant(7)).is_zero());
}

TEST_CASE("euler operator") {
  CHECK(euler(Rat(-1, 2) * u(0) * u(0)) == -u(0));
  DiffPoly p1 = Rat(-1, 2) * u(1) * u(1) + Rat(1, 6) * u(0) * u(0) * u(0);
  CHECK(euler(p1) == u(2) + Rat(1, 2) * u(0) * u(0));
  CHECK(euler(d_x(u(0) * u(0) * u(0) * u(2))).is_zero());
}

TEST_CASE("antiderivative") {
  CHECK(antiderivative(u(1)) == u(0));
  CHECK(antiderivative(u(3) - Rat(6) * u(0) * u(1)) == u(2) - Rat(3) * u(0) * u(0));
  CHECK_THROWS_AS(antiderivative(u(0) * u(0)), NotExact);
  CHECK(antiderivative(DiffPoly::zero()).is_zero());
}

TEST_CASE("substitute") {
  DiffPoly miura = u(1) + u(0) * u(0);
  CHECK(substitute(-u(0), miura) == -u(1) - u(0) * u(0));
  DiffPoly expect = u(3) + Rat(2) * u(0) * u(2) - u(1) * u(1) -
                    Rat(6) * u(0) * u(0) * u(1) -
                    Rat(3) * u(0) * u(0) * u(0) * u(0);
  CHECK(substitute(u(2) - Rat(3) * u(0) * u(0), miura) == expect);
  DiffPoly p = u(1) * u(2);
  CHECK(substitute(p, u(0)) == p);
}

TEST_CASE("rank info") {
  auto r1 = rank_info(Rat(-1, 2) * u(1) * u(1) + Rat(1, 6) * u(0) * u(0) * u(0),
                      RankConvention::KdV);
  CHECK(r1.homogeneous);
  CHECK(r1.rank == Rat(3));
  auto r2 = rank_info(u(0) * u(0) + u(1), RankConvention::KdV);
  CHECK_FALSE(r2.homogeneous);
  auto r3 = rank_info(u(2) - Rat(2) * u(0) * u(0) * u(0), RankConvention::mKdV);
  CHECK(r3.homogeneous);
  CHECK(r3.rank == Rat(3, 2));
}

TEST_CASE("canonical serialization round trip") {
  DiffPoly g2 = -u(4) + Rat(10) * u(0) * u(2) + Rat(5) * u(1) * u(1) -
                Rat(10) * u(0) * u(0) * u(0);
  CHECK(g2.to_string() ==
        "-1 * u{4} + 10 * u{0}*u{2} + 5 * u{1}*u{1} + -10 * u{0}*u{0}*u{0}");
  CHECK(parse_diffpoly(g2.to_string()) == g2);
  CHECK(DiffPoly::zero().to_string() == "0");
  CHECK(parse_diffpoly("0").is_zero());
  CHECK(parse_diffpoly("1/2 * u{1}*u{1} + -3 * u") ==
        Rat(1, 2) * u(1) * u(1) - Rat(3) * u(0));
  CHECK_THROWS_AS(parse_diffpoly("2 * w{1}"), ParseError);
}

TEST_CASE("randomized algebra laws") {
  std::mt19937 rng(20240817);
  for (int it = 0; it < 60; ++it) {
    DiffPoly p = random_poly(rng), q = random_poly(rng);
    // euler kills exact terms
    CHECK(euler(d_x(p) + q) == euler(q));
    // Leibniz
    CHECK(d_x(p * q) == d_x(p) * q + p * d_x(q));
    // chain rule commutes with substitution
    CHECK(substitute(d_x(p), q) == d_x(substitute(p, q)));
    // antiderivative inverts d_x
    CHECK(antiderivative(d_x(p)) + DiffPoly::constant(p.coefficient({})) == p);
    // rank additivity for homogeneous inputs
    for (auto conv : {RankConvention::KdV, RankConvention::mKdV}) {
      auto rp = rank_info(p, conv), rq = rank_info(q, conv);
      if (rp.homogeneous && rq.homogeneous && !p.is_zero() && !q.is_zero()) {
        auto rpq = rank_info(p * q, conv);
        CHECK(rpq.homogeneous);
        CHECK(rpq.rank == rp.rank + rq.rank);
      }
    }
    // serialization round trip
    CHECK(parse_diffpoly(p.to_string()) == p);
  }
}
