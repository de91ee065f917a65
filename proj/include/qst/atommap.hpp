#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qst/slater.hpp"
#include "qst/trap.hpp"
#include "qst/xxz_chain.hpp"

namespace qst {

enum class IntegrationMethod { quadrature, monte_carlo };

struct McOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 4'000'000;  // total per integral
  int strata = 64;                  // strata on the bond coordinate
};

// Geometric factors alpha_j of the strong-coupling mapping: the bond-j
// contact integral over the ordered sector divided by the ordered-sector norm
// of Psi0. Only ratios alpha_j / alpha_k are resolution-independent; the
// absolute scale carries the quadrature normalization stated here (hard-wall
// box, trapezoidal weights).
struct GeometricFactors {
  std::vector<double> alphas;  // bonds 1..N-1
  int n_particles = 0;
  IntegrationMethod method = IntegrationMethod::quadrature;
  std::vector<double> alpha_stderr;      // zero for the quadrature path
  double ordered_norm_times_nfact = 0.0; // N! Int theta |Psi0|^2, ~1
  std::uint64_t seed = 0;
  std::size_t samples = 0;

  double gate_to_port_ratio() const;  // alpha_mid / alpha_1
};

GeometricFactors geometric_factors(const SingleParticleSpectrum& spectrum,
                                   int n_particles, IntegrationMethod method,
                                   const McOptions& mc = {});

// Conditional average of B at the j-th ordered coordinate,
// h_j = Int theta |Psi0|^2 B(x_j) / Int theta |Psi0|^2, evaluated through the
// exact counting polynomial det(I + (z-1) A(y)) of the prefix overlap matrix.
std::vector<double> conditional_field_averages(const SlaterWavefunction& slater,
                                               const std::function<double(double)>& b);

// Effective chain of the mapping: J_j = -alpha_j / g, delta = 1 - 2/kappa.
// fields: per-site h_j (empty selects all zeros).
XxzChain effective_chain(const GeometricFactors& factors, double g, double kappa,
                         std::vector<double> fields = {});

double delta_from_kappa(double kappa);
bool weak_coupling_regime(double g);  // g < 5: mapping accuracy degrades

// --- Full pipeline -----------------------------------------------------------

struct TrapMapOptions {
  int n_particles = 4;
  IntegrationMethod method = IntegrationMethod::quadrature;
  McOptions mc;
  bool check_convergence = true;  // re-solve at doubled grid, compare ratios
};

struct TrapMapResult {
  SingleParticleSpectrum spectrum;
  GeometricFactors factors;
  double ratio = 0.0;          // |alpha_gate / alpha_port|  (J2/J1 for N=4)
  double ratio_refined = 0.0;  // at the doubled grid, when checked
  double grid_change = 0.0;    // |ratio - ratio_refined| / ratio_refined
};

TrapMapResult map_trap_to_chain(const TrapSpec& trap, const TrapMapOptions& opt = {});

// --- Parameter sweeps ---------------------------------------------------------

enum class TrapParameter { v0, u };

struct SweepPoint {
  double value = 0.0;
  double ratio = 0.0;
  bool ok = false;
  std::string message;  // failure diagnostics, empty when ok
};

// Ratio curve over one trap parameter; solver failures mark the point and the
// sweep continues.
std::vector<SweepPoint> coupling_ratio_sweep(const TrapSpec& base, TrapParameter p,
                                             const std::vector<double>& values,
                                             int n_particles = 4);

}  // namespace qst
