#pragma once

#include <array>
#include <vector>

#include "qst/linalg.hpp"
#include "qst/quantum_state.hpp"
#include "qst/xxz_chain.hpp"

namespace qst {

// Spectral decomposition paired with the sector it was built over.
struct SectorSpectral {
  SectorBasis basis;
  SpectralDecomposition spectral;
};

SectorSpectral diagonalize_sector(const XxzChain& chain, const SectorBasis& basis);

// psi(t) = V exp(-i Lambda t) V^T psi(0). Exact to eigensolver precision.
QuantumState evolve(const QuantumState& state, const SpectralDecomposition& spectral,
                    double t);
QuantumState evolve(const QuantumState& state, const SectorSpectral& sector, double t);

// <psi| H |psi> for a real symmetric H.
double energy_expectation(const Matrix& h, const QuantumState& psi);

// |<down..up| U(t) |up..down>|^2 in the one-excitation sector: probability of
// finding the port excitation transferred from the first to the last site.
double transfer_fidelity(const XxzChain& chain, double t);

// Level structure behind the resonant transfer.
struct TransferReport {
  double t_out = 0.0;    // 2*pi / span of the resonant triplet
  double fidelity = 0.0; // transfer fidelity at t_out
  std::vector<double> level_gaps;
  std::array<std::size_t, 3> resonant_triplet{};  // indices into the spectrum
};

// Finds the three consecutive levels with the most equal gaps (ties toward
// the lowest energies) and evaluates the transfer at t_out = 2 pi / span.
TransferReport transfer_report(const XxzChain& chain);

// Survival probability of the two-excitation state |up G +- down> with the
// control spin parked in the given gate eigenstate.
struct BlockadeResult {
  double fidelity = 0.0;
  double gate_detuning = 0.0;  // gate level vs port diagonal energy
  bool resonant_warning = false;  // set when the chosen gate state is the
                                  // resonant one, where no blockade is expected
};

BlockadeResult blockade_fidelity(const XxzChain& chain, const GateEigenstate& gate_state,
                                 double t);

// Builds |up G down> in the two-excitation sector.
QuantumState control_loaded_state(const XxzChain& chain, const GateEigenstate& gate_state);

// For each consecutive eigenvalue gap, the distance of gap * t / pi from the
// nearest odd integer. All residuals below eps certify perfect transfer at t.
std::vector<double> perfect_transfer_conditions(const SpectralDecomposition& spectral,
                                                double t);

// Evolution of |up>(|0>_gate + |1>_gate)|down>/sqrt(2), where |0> is the empty
// gate and |1> the non-resonant (control) gate eigenstate. The two sector
// components evolve independently; each is returned normalized and the
// physical state is their equal-weight combination.
struct GateSuperpositionResult {
  QuantumState one_excitation;
  QuantumState two_excitation;
  double p_transfer_branch = 0.0;  // |<down 0 up|psi(t)>|^2
  double p_blockade_branch = 0.0;  // |<up 1 down|psi(t)>|^2
  std::string control_label;
};

GateSuperpositionResult gate_superposition_evolution(const XxzChain& chain, double t);

// Pulse detuning for addressing the gate |0> -> |1> transition with the
// target spin loaded: the exact diagonal-energy difference between
// |up G_control down> and |up down down down>. Equals J2 delta - J2 + 2h for
// the G+ control.
double gate_level_splitting(const XxzChain& chain);

// The non-resonant gate eigenstate for the chain's field (the one with the
// larger detuning from the port diagonal energy).
const GateEigenstate& control_gate_state(const GateEigens& gate, const XxzChain& chain);

}  // namespace qst
