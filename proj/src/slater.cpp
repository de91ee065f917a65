#include "qst/slater.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace qst {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

SlaterWavefunction::SlaterWavefunction(const SingleParticleSpectrum& spectrum,
                                       int n_particles)
    : spectrum_(spectrum), n_(n_particles) {
  if (n_particles < 1 || n_particles > spectrum.n_states())
    throw std::invalid_argument(
        "SlaterWavefunction: n_particles must not exceed available orbitals");
  if (n_particles > 6)
    throw std::invalid_argument("SlaterWavefunction: more than 6 particles unsupported");
  inv_sqrt_nfact_ = 1.0 / std::sqrt(factorial(n_));

  const std::size_t n = spectrum_.x.size();
  const double h = spectrum_.step;
  dphi_.resize(n_);
  for (int a = 0; a < n_; ++a) {
    const auto& phi = spectrum_.orbitals[a];
    dphi_[a].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      double up = (i + 1 < n) ? phi[i + 1] : 0.0;  // walls hold zeros
      double dn = (i > 0) ? phi[i - 1] : 0.0;
      dphi_[a][i] = (up - dn) / (2.0 * h);
    }
  }
}

double SlaterWavefunction::orbital(int a, double x) const {
  const auto& phi = spectrum_.orbitals[a];
  const double h = spectrum_.step;
  if (x <= spectrum_.lo || x >= spectrum_.hi) return 0.0;
  // Nodes sit at lo + (i+1) h; include the wall segments.
  double s = (x - spectrum_.lo) / h - 1.0;
  double fl = std::floor(s);
  int i = static_cast<int>(fl);
  double frac = s - fl;
  double v0 = (i >= 0 && i < static_cast<int>(phi.size())) ? phi[i] : 0.0;
  double v1 = (i + 1 >= 0 && i + 1 < static_cast<int>(phi.size())) ? phi[i + 1] : 0.0;
  return v0 + frac * (v1 - v0);
}

double SlaterWavefunction::orbital_derivative(int a, double x) const {
  const auto& dphi = dphi_[a];
  const double h = spectrum_.step;
  if (x <= spectrum_.lo || x >= spectrum_.hi) return 0.0;
  double s = (x - spectrum_.lo) / h - 1.0;
  double fl = std::floor(s);
  int i = static_cast<int>(fl);
  double frac = s - fl;
  double v0 = (i >= 0 && i < static_cast<int>(dphi.size())) ? dphi[i] : 0.0;
  double v1 = (i + 1 >= 0 && i + 1 < static_cast<int>(dphi.size())) ? dphi[i + 1] : 0.0;
  return v0 + frac * (v1 - v0);
}

double SlaterWavefunction::value(const std::vector<double>& xs) const {
  if (xs.size() != static_cast<std::size_t>(n_))
    throw std::invalid_argument("SlaterWavefunction::value: wrong position count");
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (xs[i] == xs[j]) return 0.0;  // antisymmetry, exactly
  std::array<double, 36> m{};
  for (int j = 0; j < n_; ++j)
    for (int a = 0; a < n_; ++a) m[j * n_ + a] = orbital(a, xs[j]);
  return det_small(m.data(), n_) * inv_sqrt_nfact_;
}

double SlaterWavefunction::contact_value(const std::vector<double>& left, double y,
                                         const std::vector<double>& right) const {
  if (left.size() + right.size() + 2 != static_cast<std::size_t>(n_))
    throw std::invalid_argument("SlaterWavefunction::contact_value: wrong coordinate count");
  std::array<double, 36> m{};
  int col = 0;
  for (double x : left) {
    for (int a = 0; a < n_; ++a) m[col * n_ + a] = orbital(a, x);
    ++col;
  }
  for (int a = 0; a < n_; ++a) m[col * n_ + a] = orbital_derivative(a, y);
  ++col;
  for (int a = 0; a < n_; ++a) m[col * n_ + a] = orbital(a, y);
  ++col;
  for (double x : right) {
    for (int a = 0; a < n_; ++a) m[col * n_ + a] = orbital(a, x);
    ++col;
  }
  return det_small(m.data(), n_) * inv_sqrt_nfact_;
}

double slater_determinant(const SingleParticleSpectrum& spectrum, int n_particles,
                          const std::vector<double>& positions) {
  return SlaterWavefunction(spectrum, n_particles).value(positions);
}

}  // namespace qst
