#pragma once

#include <functional>
#include <vector>

#include "qst/linalg.hpp"

namespace qst {

// Symmetric triple-well trap carved into a hard-wall box of length L,
//   V(x) = -V0 [exp(-a (x-x0)^2) + exp(-a (x+x0)^2)] - U exp(-b x^2)
// on x in [-L/2, L/2], in reduced units hbar = m = L = 1 with energies in
// eps = 1/(m L^2). The side wells sit next to the box walls; the walls are
// part of the trap, which is why the default half_width is L/2 = 0.5.
// Defaults are the reference triple-well used by the bundled presets.
struct TrapSpec {
  double v0 = 500.0;
  double u = 200.0;
  double a = 384.0;
  double b = 64.0 / 5.0;
  double x0 = 7.0 / 16.0;
  double half_width = 0.5;
  int grid_points = 1500;

  double potential(double x) const;
  double resolved_half_width() const;
  void validate() const;
};

// Lowest bound orbitals of -(1/2) d^2/dx^2 + V(x) with hard walls, three-point
// finite differences on a uniform grid. Orbitals are trapezoid-normalized and
// vanish at the walls (wall nodes are not stored).
struct SingleParticleSpectrum {
  std::vector<double> x;       // interior nodes, ascending
  double step = 0.0;           // grid spacing
  double lo = 0.0, hi = 0.0;   // wall positions
  std::vector<double> energies;
  std::vector<std::vector<double>> orbitals;

  int n_states() const { return static_cast<int>(energies.size()); }
};

// General 1D solver for an arbitrary potential on [lo, hi].
SingleParticleSpectrum solve_potential_1d(const std::function<double(double)>& v,
                                          double lo, double hi, int grid_points,
                                          int n_states);

// Solves at the requested grid and verifies each energy moves by less than
// 0.1% of the spectral scale under grid doubling; throws numerical_error with
// diagnostics otherwise. The check can be disabled for throwaway solves
// inside noise realizations.
SingleParticleSpectrum solve_schrodinger_1d(const TrapSpec& trap, int n_states,
                                            bool verify_convergence = true);

}  // namespace qst
