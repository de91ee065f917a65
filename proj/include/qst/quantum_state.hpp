#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "qst/sector_basis.hpp"

namespace qst {

using complexd = std::complex<double>;

// Unit-norm complex amplitude vector over a SectorBasis.
struct QuantumState {
  SectorBasis basis;
  std::vector<complexd> amplitudes;

  // |config>, a single basis configuration.
  static QuantumState basis_state(const SectorBasis& basis, std::uint32_t config);

  // Validates the norm to 1e-12; throws otherwise.
  static QuantumState from_amplitudes(SectorBasis basis, std::vector<complexd> amps);

  // Normalized superposition of basis configurations.
  static QuantumState superposition(
      const SectorBasis& basis,
      const std::vector<std::pair<complexd, std::uint32_t>>& terms);

  double norm() const;

  // <this|other>
  complexd overlap(const QuantumState& other) const;

  double probability_of(std::uint32_t config) const;

  // P(site j is spin-up) for j = 0..n_sites-1.
  std::vector<double> site_excitation_probabilities() const;
};

}  // namespace qst
