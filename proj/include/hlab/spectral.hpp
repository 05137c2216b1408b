#ifndef HLAB_SPECTRAL_HPP
#define HLAB_SPECTRAL_HPP

#include "hlab/hierarchy.hpp"
#include "hlab/solutions.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace hlab {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

using Cplx = std::complex<double>;

// Periodic cell [0, L) with M equispaced points; mode k carries the integer
// frequency f(k) = k for k < M/2 and k - M otherwise, i.e. xi_k = 2 pi f / L.
struct Grid {
  int M;
  double L;

  Grid(int m, double l);

  double dx() const { return L / M; }
  double x(int m) const { return L * m / M; }
  int freq(int k) const { return k < M / 2 ? k : k - M; }
  double xi(int k) const { return 2.0 * pi() * freq(k) / L; }
  static double pi() { return 3.14159265358979323846; }
  bool operator==(const Grid& o) const { return M == o.M && L == o.L; }
};

// Fourier-side state: u(x_m) = sum_k modes[k] e^{i xi_k x_m}.
struct SpectralState {
  Grid grid;
  double t = 0.0;
  std::vector<Cplx> modes;  // length M, FFTW frequency layout

  SpectralState(Grid g, double time, std::vector<Cplx> m);
};

// Sample a physical-space function onto the grid and transform.
SpectralState state_from_function(const Grid& grid,
                                  const std::function<Cplx(double)>& f,
                                  double t = 0.0);
std::vector<Cplx> to_physical(const SpectralState& state);

// Non-finite value produced while stepping; carries the last finite state.
struct Blowup : std::runtime_error {
  SpectralState last;
  Blowup(const std::string& what, SpectralState s)
      : std::runtime_error(what), last(std::move(s)) {}
};

// Symbolic nonlinearity compiled to a grid evaluator. Every monomial is a
// product of (derivative order, conjugate flag) factors; each product runs
// on its own zero-padded grid so the truncated spectrum is alias-free.
class CompiledRHS {
 public:
  struct Factor {
    int order;
    bool conj;
  };
  struct Monomial {
    Cplx coeff;
    std::vector<Factor> factors;
    int padded;  // transform size for the product
  };

  Grid grid;
  bool real_field;
  Family family;     // meaningful only when real_field
  int j;
  std::vector<Cplx> linear_symbol;  // d_t u = symbol * u + nonlinear part
  std::vector<Monomial> monomials;

  // The symbolic nonlinear term N(u) on the grid, Fourier side.
  std::vector<Cplx> nonlinear_term(const std::vector<Cplx>& modes) const;
  // Contribution of the nonlinearity to d_t u, i.e. -N(u).
  std::vector<Cplx> nonlinear_rhs(const std::vector<Cplx>& modes) const;
};

// d_t u + dispersion_coeff d_x^{2j+1} u + nonlinear(u) = 0 on the grid.
CompiledRHS compile_rhs(const HierarchyEquation& eq, const Grid& grid,
                        int max_padded = 1 << 22);

// d_t v + (-1)^{j+1} d_x^{2j+1} v
//   + sum_{k,l} a_{jkl} (d_x^l |v|^{2k}) (d_x^{2(j-k)+1-l} v) = 0,
// with d_x^l |v|^{2k} expanded by the Leibniz rule into conjugate-flagged
// factor products.
CompiledRHS compile_rhs_family(int j, const CoefficientSet& coeffs,
                               const Grid& grid, int max_padded = 1 << 22);

// One integrating-factor RK4 step: classical RK4 on e^{-t symbol} u, so a
// vanishing nonlinearity is integrated exactly.
SpectralState step_ifrk4(const SpectralState& state, double dt,
                         const CompiledRHS& rhs);

struct SolveOptions {
  double T;
  double dt;
  double snapshot_every;
  int diagnostics_upto_k = -1;  // -1: mean and mass only
};

struct Trajectory {
  std::vector<SpectralState> snapshots;
  // per snapshot: t, mean, mass, then H_0..H_k when requested
  std::vector<std::vector<double>> diagnostics;
};

Trajectory solve(const CompiledRHS& rhs, const SpectralState& initial,
                 const SolveOptions& opts);

// {mean, mass, H_0, ..., H_upto_k}: integrals of the conserved densities by
// alias-free padded products and exact periodic quadrature. The modified
// family starts at H_1 (its k = 0 density is not defined).
std::vector<double> conserved_diagnostics(const SpectralState& state,
                                          Family family, int upto_k);

}  // namespace hlab

#endif
