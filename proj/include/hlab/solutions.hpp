#ifndef HLAB_SOLUTIONS_HPP
#define HLAB_SOLUTIONS_HPP

#include "hlab/diffpoly.hpp"

#include <array>
#include <complex>
#include <map>

namespace hlab {

struct SingularSystem : std::runtime_error {
  explicit SingularSystem(const std::string& what) : std::runtime_error(what) {}
};

// a + b i with exact rational a, b.
struct GaussRat {
  Rat re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(Rat r) : re(std::move(r)), im(0) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
  GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
  GaussRat operator-() const { return {-re, -im}; }
  GaussRat operator*(const GaussRat& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussRat operator/(const GaussRat& o) const;
  bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
  std::string str() const;
};

// Element of Q(i)[M][f, f'] with f'^2 reduced to f^2 - f^4, so the f'
// exponent stays in {0, 1}. Key: (M power, f power, f' power).
class FRingElem {
 public:
  using Key = std::array<int, 3>;

  FRingElem() = default;
  static FRingElem term(GaussRat c, int mpow, int fpow, int fppow);
  static FRingElem f() { return term(GaussRat(Rat(1)), 0, 1, 0); }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Key, GaussRat>& terms() const { return terms_; }

  FRingElem operator+(const FRingElem& o) const;
  FRingElem operator-(const FRingElem& o) const;
  FRingElem operator*(const FRingElem& o) const;
  FRingElem scaled(const GaussRat& c) const;

  // d/dz with f -> f', f'' -> f - 2f^3 (and f'^2 -> f^2 - f^4 on products).
  FRingElem dz() const;
  // Twisted x-derivative of e^{-i theta} g for theta = Mx + delta_0 t:
  // D g = i M g + dz g.
  FRingElem dx_twisted() const;

  // Substitute an exact rational value for M (collapses the M powers).
  FRingElem eval_m(const Rat& m) const;

 private:
  std::map<Key, GaussRat> terms_;
  void insert(const Key& k, const GaussRat& c);
};

// Family parameters: delta and c are the two alternating binomial sums.
struct SechFamilyParams {
  int j;
  double carrier;  // N
  double omega;    // inverse width, > 0
  double delta;
  double speed;    // c

  SechFamilyParams(int j_, double n_, double omega_);
};

// Exact version of the two sums for rational inputs.
std::pair<Rat, Rat> delta_c_exact(int j, const Rat& n, const Rat& omega);
std::pair<double, double> delta_c(int j, double n, double omega);

// omega e^{i(Nx + delta t)} sech(omega (x - c t)).
std::complex<double> v_family_eval(const SechFamilyParams& p, double x, double t);

// Spatial Fourier transform under F g(xi) = int e^{-ix xi} g(x) dx:
// pi e^{i delta t} e^{-i(xi - N) c t} sech(pi (xi - N) / (2 omega)).
std::complex<double> v_family_fourier(const SechFamilyParams& p, double xi, double t);

// a_{jkl} for the complex equation
// d_t v + (-1)^{j+1} d_x^{2j+1} v + sum a_{jkl} (d_x^l |v|^{2k}) (d_x^{2(j-k)+1-l} v) = 0
// solved so that the sech family is an exact solution.
struct CoefficientSet {
  int j;
  std::map<std::pair<int, int>, GaussRat> a;  // (k, l) -> a_{jkl}
};

CoefficientSet solve_coefficients(int j);

// Symbolic residual of the equation above for the given coefficients,
// with the formal carrier M kept as a polynomial variable. Zero certifies
// that the whole family solves the equation.
FRingElem residual_check(int j, const CoefficientSet& coeffs);

// Max pointwise PDE residual of v_family_eval on a periodic grid, by
// spectral differentiation, relative to max |d_t v|.
double residual_check_numeric(int j, const CoefficientSet& coeffs,
                              const SechFamilyParams& params, int grid_m,
                              double grid_l, double t = 0.0);

// u(x,t) = -(c/2) sech^2(sqrt(c)(x - ct)/2), solving d_t u + d_x^3 u = 6 u d_x u.
double kdv_soliton(double c, double x, double t);

}  // namespace hlab

#endif
