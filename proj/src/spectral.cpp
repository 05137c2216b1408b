#include "hlab/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>

namespace hlab {

namespace {

// One cached in-place plan pair per transform size. Transforms copy through
// the cache buffer, so callers keep plain std::vector storage.
struct PlanPair {
  fftw_complex* buf;
  fftw_plan fwd;
  fftw_plan bwd;
};

std::mutex fft_mutex;

PlanPair& plan_for(int n) {
  static std::map<int, PlanPair> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    PlanPair p;
    p.buf = fftw_alloc_complex(static_cast<size_t>(n));
    p.fwd = fftw_plan_dft_1d(n, p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_1d(n, p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    it = cache.emplace(n, p).first;
  }
  return it->second;
}

// In place, unnormalized (FFTW convention; BACKWARD sums modes e^{+i xi x}).
void transform(std::vector<Cplx>& data, bool forward) {
  std::lock_guard<std::mutex> lock(fft_mutex);
  PlanPair& p = plan_for(static_cast<int>(data.size()));
  std::memcpy(p.buf, data.data(), sizeof(Cplx) * data.size());
  fftw_execute(forward ? p.fwd : p.bwd);
  std::memcpy(data.data(), p.buf, sizeof(Cplx) * data.size());
}

bool all_finite(const std::vector<Cplx>& v) {
  for (const Cplx& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

// (i xi)^order multiplier table on the M-grid, Nyquist zeroed for odd orders.
std::vector<Cplx> derivative_symbol(const Grid& grid, int order) {
  std::vector<Cplx> sym(grid.M);
  for (int k = 0; k < grid.M; ++k) {
    if (order % 2 == 1 && grid.freq(k) == -grid.M / 2) {
      sym[k] = 0.0;
      continue;
    }
    sym[k] = std::pow(Cplx(0.0, grid.xi(k)), order);
  }
  return sym;
}

// Physical samples of d^order u (or its conjugate) on the padded grid.
std::vector<Cplx> padded_factor(const Grid& grid, const std::vector<Cplx>& modes,
                                const CompiledRHS::Factor& f, int padded) {
  std::vector<Cplx> pad(padded, Cplx(0.0, 0.0));
  for (int k = 0; k < grid.M; ++k) {
    int fr = grid.freq(k);
    if (f.order % 2 == 1 && fr == -grid.M / 2) continue;
    Cplx c = modes[k] * std::pow(Cplx(0.0, grid.xi(k)), f.order);
    pad[(fr + padded) % padded] = c;
  }
  transform(pad, false);
  if (f.conj) {
    for (Cplx& z : pad) z = std::conj(z);
  }
  return pad;
}

int padded_size_for_degree(int M, int degree) {
  return ((degree + 2) / 2) * M;  // ceil((d+1)/2) * M
}

}  // namespace

Grid::Grid(int m, double l) : M(m), L(l) {
  if (M < 16 || (M & (M - 1)) != 0) throw ConfigError("grid M must be a power of two >= 16");
  if (!(L > 0.0)) throw ConfigError("grid L must be positive");
}

SpectralState::SpectralState(Grid g, double time, std::vector<Cplx> m)
    : grid(g), t(time), modes(std::move(m)) {
  if (static_cast<int>(modes.size()) != grid.M)
    throw ConfigError("state mode count does not match grid");
  if (!all_finite(modes)) throw ConfigError("state contains non-finite modes");
}

SpectralState state_from_function(const Grid& grid,
                                  const std::function<Cplx(double)>& f,
                                  double t) {
  std::vector<Cplx> phys(grid.M);
  for (int m = 0; m < grid.M; ++m) phys[m] = f(grid.x(m));
  transform(phys, true);
  for (Cplx& z : phys) z /= grid.M;
  return SpectralState(grid, t, std::move(phys));
}

std::vector<Cplx> to_physical(const SpectralState& state) {
  std::vector<Cplx> phys = state.modes;
  transform(phys, false);
  return phys;
}

std::vector<Cplx> CompiledRHS::nonlinear_term(const std::vector<Cplx>& modes) const {
  std::vector<Cplx> out(grid.M, Cplx(0.0, 0.0));
  for (const Monomial& mono : monomials) {
    if (mono.factors.empty()) {
      out[0] += mono.coeff;
      continue;
    }
    std::vector<Cplx> prod = padded_factor(grid, modes, mono.factors[0], mono.padded);
    for (size_t i = 1; i < mono.factors.size(); ++i) {
      std::vector<Cplx> g = padded_factor(grid, modes, mono.factors[i], mono.padded);
      for (int m = 0; m < mono.padded; ++m) prod[m] *= g[m];
    }
    transform(prod, true);
    double scale = 1.0 / mono.padded;
    for (int k = 0; k < grid.M; ++k) {
      int fr = grid.freq(k);
      Cplx c = prod[(fr + mono.padded) % mono.padded];
      // +M/2 and -M/2 coincide on the M-grid: fold the pair into the
      // Nyquist slot so conjugate symmetry survives truncation
      if (fr == -grid.M / 2 && mono.padded > grid.M) c += prod[grid.M / 2];
      out[k] += mono.coeff * scale * c;
    }
  }
  return out;
}

std::vector<Cplx> CompiledRHS::nonlinear_rhs(const std::vector<Cplx>& modes) const {
  std::vector<Cplx> n = nonlinear_term(modes);
  for (Cplx& z : n) z = -z;
  return n;
}

CompiledRHS compile_rhs(const HierarchyEquation& eq, const Grid& grid,
                        int max_padded) {
  CompiledRHS rhs{grid, true, eq.family, eq.j, {}, {}};

  std::vector<Cplx> disp = derivative_symbol(grid, 2 * eq.j + 1);
  rhs.linear_symbol.resize(grid.M);
  double cd = eq.dispersion_coeff.get_d();
  for (int k = 0; k < grid.M; ++k) rhs.linear_symbol[k] = -cd * disp[k];

  for (const DiffMonomial& t : eq.nonlinear.terms()) {
    CompiledRHS::Monomial mono;
    mono.coeff = Cplx(t.coeff.get_d(), 0.0);
    for (int l : t.orders) {
      if (l > 2 * eq.j + 1) throw ShapeViolation("derivative order above 2j+1");
      mono.factors.push_back({l, false});
    }
    mono.padded = padded_size_for_degree(grid.M, t.degree());
    if (mono.padded > max_padded) throw ConfigError("padded transform exceeds memory cap");
    rhs.monomials.push_back(std::move(mono));
  }
  return rhs;
}

CompiledRHS compile_rhs_family(int j, const CoefficientSet& coeffs,
                               const Grid& grid, int max_padded) {
  if (coeffs.j != j) throw ConfigError("coefficient set is for a different j");
  CompiledRHS rhs{grid, false, Family::mKdV, j, {}, {}};

  std::vector<Cplx> disp = derivative_symbol(grid, 2 * j + 1);
  double cd = (j % 2 == 0) ? -1.0 : 1.0;  // (-1)^{j+1}
  rhs.linear_symbol.resize(grid.M);
  for (int k = 0; k < grid.M; ++k) rhs.linear_symbol[k] = -cd * disp[k];

  for (const auto& [kl, a] : coeffs.a) {
    if (a.is_zero()) continue;
    auto [k, l] = kl;
    int tail_order = 2 * (j - k) + 1 - l;
    // d^l (v vbar)^k by the Leibniz rule over the 2k factors: sum over
    // order assignments (l_1..l_{2k}) with multinomial weights.
    std::vector<int> assign(2 * k, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == 2 * k - 1) {
        assign[pos] = left;
        double mult = 1.0;
        int rem = l;
        for (int i = 0; i < 2 * k; ++i) {
          // multinomial l! / prod l_i! accumulated as binomials
          double b = 1.0;
          for (int q = 0; q < assign[i]; ++q) b = b * (rem - q) / (q + 1);
          mult *= b;
          rem -= assign[i];
        }
        CompiledRHS::Monomial mono;
        mono.coeff = a.to_complex() * mult;
        for (int i = 0; i < k; ++i) mono.factors.push_back({assign[i], false});
        for (int i = k; i < 2 * k; ++i) mono.factors.push_back({assign[i], true});
        mono.factors.push_back({tail_order, false});
        mono.padded = padded_size_for_degree(grid.M, 2 * k + 1);
        if (mono.padded > max_padded)
          throw ConfigError("padded transform exceeds memory cap");
        rhs.monomials.push_back(std::move(mono));
        return;
      }
      for (int v = 0; v <= left; ++v) {
        assign[pos] = v;
        rec(pos + 1, left - v);
      }
    };
    rec(0, l);
  }
  return rhs;
}

namespace {

std::vector<Cplx> axpy(const std::vector<Cplx>& x, double a,
                       const std::vector<Cplx>& y) {
  std::vector<Cplx> r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + a * y[i];
  return r;
}

void mul_inplace(std::vector<Cplx>& x, const std::vector<Cplx>& e) {
  for (size_t i = 0; i < x.size(); ++i) x[i] *= e[i];
}

}  // namespace

SpectralState step_ifrk4(const SpectralState& state, double dt,
                         const CompiledRHS& rhs) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(rhs.grid == state.grid)) throw ConfigError("rhs compiled on a different grid");

  const int M = state.grid.M;
  std::vector<Cplx> e1(M), e2(M);  // e^{symbol dt/2}, e^{symbol dt}
  for (int k = 0; k < M; ++k) {
    e1[k] = std::exp(rhs.linear_symbol[k] * (dt / 2.0));
    e2[k] = e1[k] * e1[k];
  }

  const std::vector<Cplx>& u = state.modes;
  std::vector<Cplx> k1 = rhs.nonlinear_rhs(u);

  std::vector<Cplx> s = axpy(u, dt / 2.0, k1);
  mul_inplace(s, e1);
  std::vector<Cplx> k2 = rhs.nonlinear_rhs(s);

  s = u;
  mul_inplace(s, e1);
  s = axpy(s, dt / 2.0, k2);
  std::vector<Cplx> k3 = rhs.nonlinear_rhs(s);

  s = u;
  mul_inplace(s, e2);
  std::vector<Cplx> k3e = k3;
  mul_inplace(k3e, e1);
  s = axpy(s, dt, k3e);
  std::vector<Cplx> k4 = rhs.nonlinear_rhs(s);

  std::vector<Cplx> next(M);
  for (int k = 0; k < M; ++k) {
    next[k] = e2[k] * u[k] +
              (dt / 6.0) * (e2[k] * k1[k] + 2.0 * e1[k] * (k2[k] + k3[k]) + k4[k]);
  }
  if (!all_finite(next))
    throw Blowup("non-finite mode after step at t = " + std::to_string(state.t), state);
  return SpectralState(state.grid, state.t + dt, std::move(next));
}

Trajectory solve(const CompiledRHS& rhs, const SpectralState& initial,
                 const SolveOptions& opts) {
  if (!(opts.T > 0.0)) throw ConfigError("T must be positive");
  if (!(opts.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(opts.snapshot_every > 0.0)) throw ConfigError("snapshot_every must be positive");

  long per_snap = std::lround(opts.snapshot_every / opts.dt);
  if (per_snap < 1 || std::abs(per_snap * opts.dt - opts.snapshot_every) >
                          1e-9 * opts.snapshot_every)
    throw ConfigError("dt must divide snapshot_every");
  long total = std::lround(opts.T / opts.dt);
  if (total < 1) total = 1;

  Trajectory traj;
  auto record = [&](const SpectralState& st) {
    std::vector<double> row;
    row.push_back(st.t);
    std::vector<double> diag =
        rhs.real_field
            ? conserved_diagnostics(st, rhs.family, opts.diagnostics_upto_k)
            : conserved_diagnostics(st, rhs.family, -1);
    row.insert(row.end(), diag.begin(), diag.end());
    traj.snapshots.push_back(st);
    traj.diagnostics.push_back(std::move(row));
  };

  SpectralState st = initial;
  record(st);
  for (long n = 1; n <= total; ++n) {
    st = step_ifrk4(st, opts.dt, rhs);  // Blowup carries the last finite state
    if (n % per_snap == 0 || n == total) record(st);
  }
  return traj;
}

std::vector<double> conserved_diagnostics(const SpectralState& state,
                                          Family family, int upto_k) {
  const Grid& g = state.grid;
  std::vector<double> out;
  out.push_back((state.modes[0] * g.L).real());  // mean: int u dx = L u_0
  double mass = 0.0;
  for (const Cplx& z : state.modes) mass += std::norm(z);
  out.push_back(mass * g.L);  // int |u|^2 dx by Plancherel

  int k_min = (family == Family::KdV) ? 0 : 1;
  for (int k = k_min; k <= upto_k; ++k) {
    DiffPoly density = hamiltonian_density(family, k);
    double h = 0.0;
    for (const DiffMonomial& t : density.terms()) {
      int P = padded_size_for_degree(g.M, t.degree());
      std::vector<Cplx> prod(P, Cplx(1.0, 0.0));
      bool first = true;
      for (int l : t.orders) {
        std::vector<Cplx> f = padded_factor(g, state.modes, {l, false}, P);
        if (first) {
          prod = std::move(f);
          first = false;
        } else {
          for (int m = 0; m < P; ++m) prod[m] *= f[m];
        }
      }
      Cplx sum(0.0, 0.0);
      for (const Cplx& z : prod) sum += z;
      // int prod dx = L * mean over the padded grid (exact: alias-free)
      h += t.coeff.get_d() * (sum.real() / P) * g.L;
    }
    out.push_back(h);
  }
  return out;
}

}  // namespace hlab
