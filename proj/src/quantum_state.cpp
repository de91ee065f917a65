#include "qst/quantum_state.hpp"

#include <cmath>
#include <stdexcept>

namespace qst {

QuantumState QuantumState::basis_state(const SectorBasis& basis, std::uint32_t config) {
  QuantumState st;
  st.basis = basis;
  st.amplitudes.assign(basis.dimension(), complexd(0.0, 0.0));
  st.amplitudes[basis.index_of(config)] = 1.0;
  return st;
}

QuantumState QuantumState::from_amplitudes(SectorBasis basis,
                                           std::vector<complexd> amps) {
  if (amps.size() != basis.dimension())
    throw std::invalid_argument("QuantumState: amplitude count must match basis size");
  QuantumState st;
  st.basis = std::move(basis);
  st.amplitudes = std::move(amps);
  if (std::abs(st.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("QuantumState: amplitudes are not unit norm");
  return st;
}

QuantumState QuantumState::superposition(
    const SectorBasis& basis,
    const std::vector<std::pair<complexd, std::uint32_t>>& terms) {
  std::vector<complexd> amps(basis.dimension(), complexd(0.0, 0.0));
  for (const auto& [coeff, config] : terms) amps[basis.index_of(config)] += coeff;
  double nrm = 0.0;
  for (const auto& a : amps) nrm += std::norm(a);
  nrm = std::sqrt(nrm);
  if (nrm == 0.0)
    throw std::invalid_argument("QuantumState: superposition has zero norm");
  for (auto& a : amps) a /= nrm;
  QuantumState st;
  st.basis = basis;
  st.amplitudes = std::move(amps);
  return st;
}

double QuantumState::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

complexd QuantumState::overlap(const QuantumState& other) const {
  if (!(basis == other.basis))
    throw std::invalid_argument("QuantumState::overlap: different bases");
  complexd s(0.0, 0.0);
  for (std::size_t i = 0; i < amplitudes.size(); ++i)
    s += std::conj(amplitudes[i]) * other.amplitudes[i];
  return s;
}

double QuantumState::probability_of(std::uint32_t config) const {
  return std::norm(amplitudes[basis.index_of(config)]);
}

std::vector<double> QuantumState::site_excitation_probabilities() const {
  std::vector<double> p(basis.n_sites, 0.0);
  for (std::size_t i = 0; i < amplitudes.size(); ++i) {
    double w = std::norm(amplitudes[i]);
    std::uint32_t c = basis.configs[i];
    for (int s = 0; s < basis.n_sites; ++s)
      if ((c >> s) & 1u) p[s] += w;
  }
  return p;
}

}  // namespace qst
