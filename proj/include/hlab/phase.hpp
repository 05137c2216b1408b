#ifndef HLAB_PHASE_HPP
#define HLAB_PHASE_HPP

#include "hlab/hierarchy.hpp"

#include <array>
#include <map>
#include <span>

namespace hlab {

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Exact-coefficient polynomial in (xi1, xi2, xi3).
class SymmetricPoly3 {
 public:
  using Key = std::array<int, 3>;

  static SymmetricPoly3 variable(int i);  // xi_{i+1}, i in {0,1,2}
  static SymmetricPoly3 constant(Rat c);

  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const std::map<Key, Rat>& terms() const { return terms_; }

  SymmetricPoly3 operator+(const SymmetricPoly3& o) const;
  SymmetricPoly3 operator-(const SymmetricPoly3& o) const;
  SymmetricPoly3 operator*(const SymmetricPoly3& o) const;
  SymmetricPoly3 pow(int n) const;

  // Quotient by (xi_a + xi_b); fails unless the division is exact.
  SymmetricPoly3 divide_exact(int a, int b) const;

  bool symmetric() const;  // invariant under all permutations of the xi
  Rat eval(const Rat& x1, const Rat& x2, const Rat& x3) const;
  double eval(double x1, double x2, double x3) const;

 private:
  std::map<Key, Rat> terms_;
  void insert(const Key& k, const Rat& c);
};

// Sigma with (x1+x2+x3)^{2j+1} - sum xi^{2j+1} = (x1+x2)(x2+x3)(x3+x1) Sigma.
// Throws InternalError if any of the three divisions leaves a remainder.
SymmetricPoly3 resonance_sigma(int j);

struct RatioReport {
  bool ok;
  double min_ratio;  // +inf when no usable sample
  size_t samples;    // samples actually evaluated (zero-factor points skipped)
};

// Audits Sigma >= c_j * ((x1+x2)^{2j-2} + (x2+x3)^{2j-2} + (x3+x1)^{2j-2})
// over the given points and reports the infimum ratio.
RatioReport resonance_lower_bound_check(int j,
                                        std::span<const std::array<double, 3>> samples,
                                        double c_j = 1e-12);

// |xi1 xi2 (xi1+xi2)| (xi1^{2j-2} + xi2^{2j-2}), the quadratic resonance bound.
double quadratic_resonance(int j, double xi1, double xi2);

struct CriticalExponents {
  Family family;
  int j;
  Rat s_crit;          // -3/2 (KdV), -1/2 (mKdV), independent of j
  Rat s_j;             // (2j-1)/(2r') = (2j-1)(r-1)/(2r)
  Rat kdv_threshold;   // j - 3/2 - 1/(2j) + (2j-1)/(2r'), for display
};

// r must lie in (1, 2]; everything computed exactly in rationals.
CriticalExponents critical_exponents(Family family, int j, const Rat& r);

}  // namespace hlab

#endif
