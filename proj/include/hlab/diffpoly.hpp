#ifndef HLAB_DIFFPOLY_HPP
#define HLAB_DIFFPOLY_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hlab {

using Rat = mpq_class;

// Thrown by antiderivative() when the input is not a total x-derivative.
struct NotExact : std::runtime_error {
  explicit NotExact(const std::string& what) : std::runtime_error(what) {}
};

struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

enum class RankConvention { KdV, mKdV };

// One product c * prod_i d^{l_i} u with exact rational c and the l_i kept
// as a nonincreasing sequence. degree = number of factors, deriv_index =
// sum of the l_i. The empty sequence is a constant term.
struct DiffMonomial {
  Rat coeff;
  std::vector<int> orders;  // nonincreasing

  int degree() const { return static_cast<int>(orders.size()); }
  int deriv_index() const;
  Rat rank(RankConvention conv) const;
};

struct RankInfo {
  Rat rank;          // common rank when homogeneous, rank of the first term otherwise
  bool homogeneous;  // all monomials share the same rank (zero poly: true)
};

// Exact differential polynomial in one dependent variable. Terms are kept
// normalized: nonzero coefficients, orders nonincreasing inside a monomial,
// equal monomials merged, and the term list sorted by ascending degree and
// then descending lexicographic order on the orders sequence.
class DiffPoly {
 public:
  DiffPoly() = default;
  explicit DiffPoly(Rat constant);

  static DiffPoly zero() { return DiffPoly(); }
  static DiffPoly constant(Rat c) { return DiffPoly(std::move(c)); }
  // The single factor d^l u.
  static DiffPoly var(int l);
  static DiffPoly monomial(Rat c, std::vector<int> orders);
  static DiffPoly from_terms(std::vector<DiffMonomial> terms);

  const std::vector<DiffMonomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool operator==(const DiffPoly& o) const;
  bool operator!=(const DiffPoly& o) const { return !(*this == o); }

  DiffPoly operator+(const DiffPoly& o) const;
  DiffPoly operator-(const DiffPoly& o) const;
  DiffPoly operator-() const;
  DiffPoly operator*(const DiffPoly& o) const;
  DiffPoly operator*(const Rat& c) const;

  // Coefficient of a given orders multiset (any order; zero if absent).
  Rat coefficient(std::vector<int> orders) const;

  // Largest derivative order appearing anywhere, -1 for constants / zero.
  int max_order() const;

  std::string to_string(char symbol = 'u') const;

 private:
  std::vector<DiffMonomial> terms_;
  void normalize();
};

DiffPoly operator*(const Rat& c, const DiffPoly& p);

// Total x-derivative by the Leibniz rule; every output monomial gains
// exactly one derivative.
DiffPoly d_x(const DiffPoly& p);
DiffPoly d_x(const DiffPoly& p, int times);

// Variational derivative sum_n (-d_x)^n d/d(u_n); kills total derivatives.
DiffPoly euler(const DiffPoly& p);

// Formal antiderivative: returns q with d_x(q) = p, no constant term.
// Throws NotExact when euler(p) != 0.
DiffPoly antiderivative(const DiffPoly& p);

// Replace each factor d^l u of p by d_x^l(q) and expand.
DiffPoly substitute(const DiffPoly& p, const DiffPoly& q);

RankInfo rank_info(const DiffPoly& p, RankConvention conv);

// Inverse of DiffPoly::to_string; accepts exactly the canonical grammar
// (with "u" allowed as a synonym for "u{0}").
DiffPoly parse_diffpoly(const std::string& text, char symbol = 'u');

}  // namespace hlab

#endif
