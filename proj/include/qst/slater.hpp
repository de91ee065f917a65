#pragma once

#include <vector>

#include "qst/trap.hpp"

namespace qst {

// Ground-state Slater determinant of the lowest n_particles orbitals,
// Psi0(x_1..x_N) = det[phi_i(x_j)] / sqrt(N!), normalized over the full box.
// Orbital values between grid nodes are linearly interpolated; derivatives use
// the precomputed central-difference arrays.
class SlaterWavefunction {
 public:
  SlaterWavefunction(const SingleParticleSpectrum& spectrum, int n_particles);

  int n_particles() const { return n_; }
  double lo() const { return spectrum_.lo; }
  double hi() const { return spectrum_.hi; }
  const SingleParticleSpectrum& spectrum() const { return spectrum_; }

  double orbital(int a, double x) const;
  double orbital_derivative(int a, double x) const;
  // Nodal values, exact (no interpolation).
  double orbital_node(int a, int node) const { return spectrum_.orbitals[a][node]; }
  double orbital_derivative_node(int a, int node) const { return dphi_[a][node]; }

  // Psi0 at arbitrary positions; zero when positions coincide (antisymmetry).
  double value(const std::vector<double>& xs) const;

  // dPsi0/dx_j on the coincidence plane x_j = x_{j+1} = y: the determinant
  // with the pair columns replaced by (phi'(y), phi(y)), over sqrt(N!).
  // left holds the coordinates before the pair, right those after it.
  double contact_value(const std::vector<double>& left, double y,
                       const std::vector<double>& right) const;

 private:
  SingleParticleSpectrum spectrum_;
  int n_;
  double inv_sqrt_nfact_;
  std::vector<std::vector<double>> dphi_;
};

// The bare operation: Slater determinant value from a spectrum.
double slater_determinant(const SingleParticleSpectrum& spectrum, int n_particles,
                          const std::vector<double>& positions);

}  // namespace qst
