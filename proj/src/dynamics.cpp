#include "qst/dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qst {

SectorSpectral diagonalize_sector(const XxzChain& chain, const SectorBasis& basis) {
  return {basis, sym_eigen(build_hamiltonian(chain, basis))};
}

QuantumState evolve(const QuantumState& state, const SpectralDecomposition& spectral,
                    double t) {
  const std::size_t n = state.amplitudes.size();
  if (spectral.size() != n)
    throw std::invalid_argument("evolve: state and spectral decomposition sizes differ");
  if (t == 0.0) return state;
  const Matrix& v = spectral.eigenvectors;

  std::vector<complexd> c(n, complexd(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    complexd s(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) s += v(i, k) * state.amplitudes[i];
    double phase = -spectral.eigenvalues[k] * t;
    c[k] = s * complexd(std::cos(phase), std::sin(phase));
  }
  QuantumState out;
  out.basis = state.basis;
  out.amplitudes.assign(n, complexd(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    complexd s(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) s += v(i, k) * c[k];
    out.amplitudes[i] = s;
  }
  return out;
}

QuantumState evolve(const QuantumState& state, const SectorSpectral& sector, double t) {
  if (!(state.basis == sector.basis))
    throw std::invalid_argument("evolve: state basis differs from spectral basis");
  return evolve(state, sector.spectral, t);
}

double energy_expectation(const Matrix& h, const QuantumState& psi) {
  const std::size_t n = psi.amplitudes.size();
  if (h.size() != n)
    throw std::invalid_argument("energy_expectation: dimension mismatch");
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    complexd hij_aj(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) hij_aj += h(i, j) * psi.amplitudes[j];
    e += (std::conj(psi.amplitudes[i]) * hij_aj).real();
  }
  return e;
}

double transfer_fidelity(const XxzChain& chain, double t) {
  SectorBasis basis = enumerate_sector_basis(chain.n_sites, 1);
  auto sector = diagonalize_sector(chain, basis);
  QuantumState in = QuantumState::basis_state(basis, 1u);
  QuantumState out = evolve(in, sector, t);
  return out.probability_of(1u << (chain.n_sites - 1));
}

TransferReport transfer_report(const XxzChain& chain) {
  SectorBasis basis = enumerate_sector_basis(chain.n_sites, 1);
  auto sector = diagonalize_sector(chain, basis);
  const auto& ev = sector.spectral.eigenvalues;
  if (ev.size() < 3)
    throw std::invalid_argument("transfer_report: need at least three levels");

  TransferReport rep;
  for (std::size_t i = 0; i + 1 < ev.size(); ++i)
    rep.level_gaps.push_back(ev[i + 1] - ev[i]);

  double best = std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  for (std::size_t i = 0; i + 2 < ev.size(); ++i) {
    double spread = std::abs(rep.level_gaps[i + 1] - rep.level_gaps[i]);
    if (spread < best) {
      best = spread;
      best_i = i;
    }
  }
  rep.resonant_triplet = {best_i, best_i + 1, best_i + 2};
  double span = ev[best_i + 2] - ev[best_i];
  if (span <= 0.0)
    throw numerical_error("transfer_report: degenerate resonant triplet");
  rep.t_out = 2.0 * M_PI / span;

  QuantumState in = QuantumState::basis_state(basis, 1u);
  QuantumState out = evolve(in, sector, rep.t_out);
  rep.fidelity = out.probability_of(1u << (chain.n_sites - 1));
  return rep;
}

QuantumState control_loaded_state(const XxzChain& chain,
                                  const GateEigenstate& gate_state) {
  if (gate_state.amplitudes.size() != static_cast<std::size_t>(chain.n_sites - 2))
    throw std::invalid_argument("control_loaded_state: gate amplitude count mismatch");
  SectorBasis basis = enumerate_sector_basis(chain.n_sites, 2);
  std::vector<std::pair<complexd, std::uint32_t>> terms;
  for (std::size_t g = 0; g < gate_state.amplitudes.size(); ++g) {
    std::uint32_t config = 1u | (1u << (g + 1));
    terms.emplace_back(gate_state.amplitudes[g], config);
  }
  return QuantumState::superposition(basis, terms);
}

const GateEigenstate& control_gate_state(const GateEigens& gate, const XxzChain& chain) {
  double e_port = diagonal_energy(chain, 1u);
  const GateEigenstate* best = nullptr;
  double best_detuning = -1.0;
  for (const auto& s : gate.states) {
    double det = std::abs(s.energy - e_port);
    if (det > best_detuning) {
      best_detuning = det;
      best = &s;
    }
  }
  return *best;
}

BlockadeResult blockade_fidelity(const XxzChain& chain, const GateEigenstate& gate_state,
                                 double t) {
  BlockadeResult res;
  double e_port = diagonal_energy(chain, 1u);
  res.gate_detuning = gate_state.energy - e_port;
  double scale = std::max({1.0, std::abs(chain.gate_coupling()), std::abs(e_port)});
  res.resonant_warning = std::abs(res.gate_detuning) < 1e-9 * scale;

  SectorBasis basis = enumerate_sector_basis(chain.n_sites, 2);
  auto sector = diagonalize_sector(chain, basis);
  QuantumState psi0 = control_loaded_state(chain, gate_state);
  QuantumState psi_t = evolve(psi0, sector, t);
  res.fidelity = std::norm(psi0.overlap(psi_t));
  return res;
}

std::vector<double> perfect_transfer_conditions(const SpectralDecomposition& spectral,
                                                double t) {
  std::vector<double> residuals;
  for (std::size_t i = 0; i + 1 < spectral.size(); ++i) {
    double gap = spectral.eigenvalues[i + 1] - spectral.eigenvalues[i];
    double x = gap * t / M_PI;
    double m = std::round(0.5 * (x - 1.0));
    residuals.push_back(std::abs(x - (2.0 * m + 1.0)));
  }
  return residuals;
}

GateSuperpositionResult gate_superposition_evolution(const XxzChain& chain, double t) {
  GateSuperpositionResult res;

  SectorBasis b1 = enumerate_sector_basis(chain.n_sites, 1);
  auto s1 = diagonalize_sector(chain, b1);
  QuantumState in1 = QuantumState::basis_state(b1, 1u);
  res.one_excitation = evolve(in1, s1, t);
  double p_transfer =
      res.one_excitation.probability_of(1u << (chain.n_sites - 1));

  GateEigens gate = gate_block_eigens(chain);
  const GateEigenstate& control = control_gate_state(gate, chain);
  res.control_label = control.label;

  SectorBasis b2 = enumerate_sector_basis(chain.n_sites, 2);
  auto s2 = diagonalize_sector(chain, b2);
  QuantumState in2 = control_loaded_state(chain, control);
  res.two_excitation = evolve(in2, s2, t);
  double p_survive = std::norm(in2.overlap(res.two_excitation));

  res.p_transfer_branch = 0.5 * p_transfer;
  res.p_blockade_branch = 0.5 * p_survive;
  return res;
}

double gate_level_splitting(const XxzChain& chain) {
  if (chain.n_sites != 4)
    throw std::invalid_argument("gate_level_splitting: defined for n_sites = 4");
  GateEigens gate = gate_block_eigens(chain);
  const GateEigenstate& control = control_gate_state(gate, chain);

  SectorBasis b2 = enumerate_sector_basis(chain.n_sites, 2);
  Matrix h2 = build_hamiltonian(chain, b2);
  QuantumState loaded = control_loaded_state(chain, control);
  double e_loaded = energy_expectation(h2, loaded);
  double e_empty = diagonal_energy(chain, 1u);
  return e_loaded - e_empty;
}

}  // namespace qst
