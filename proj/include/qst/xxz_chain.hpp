#pragma once

#include <string>
#include <vector>

#include "qst/linalg.hpp"
#include "qst/sector_basis.hpp"

namespace qst {

// Heisenberg XXZ chain
//   H = sum_j h_j sigma_z^j
//       - 1/2 sum_j J_j [sx_j sx_{j+1} + sy_j sy_{j+1} + delta sz_j sz_{j+1}]
// with spin-up meaning sigma_z = +1.
struct XxzChain {
  int n_sites = 0;
  std::vector<double> couplings;  // J_1 .. J_{N-1}
  std::vector<double> fields;     // h_1 .. h_N
  double delta = 0.0;
  // When set, J_j = J_{N-j} and h_j = h_{N+1-j} hold exactly with zero port
  // fields; symmetry-based invariants are only asserted for such chains.
  bool symmetric = false;

  XxzChain() = default;
  XxzChain(int n_sites, std::vector<double> couplings, std::vector<double> fields,
           double delta, bool symmetric = false);

  double port_coupling() const { return couplings.front(); }
  double gate_coupling() const { return couplings[couplings.size() / 2]; }

  // Mirror-symmetric chains with zero port fields. h is the field on the
  // central gate site(s); h_prime the field on sites 2 and N-1 when N = 5.
  static XxzChain symmetric3(double j1, double delta, double h);
  static XxzChain symmetric4(double j1, double j2, double delta, double h);
  static XxzChain symmetric5(double j1, double j2, double delta, double h,
                             double h_prime);
};

// <config| H |config>: sum_j h_j s_j - 1/2 delta sum_j J_j s_j s_{j+1}.
double diagonal_energy(const XxzChain& chain, std::uint32_t config);

// Sector Hamiltonian matrix: diagonal from diagonal_energy, entry -J_j between
// configurations differing by one adjacent exchange. Exactly symmetric.
Matrix build_hamiltonian(const XxzChain& chain, const SectorBasis& basis);

// Same chain with the sign of the spin-exchange (sx, sy) terms flipped, the
// form produced by the |Psi_0| phase choice of the atom mapping. Unitarily
// equivalent spectrum to build_hamiltonian.
Matrix gauge_transformed_hamiltonian(const XxzChain& chain, const SectorBasis& basis);

// --- Gate eigensystem ------------------------------------------------------

struct GateEigenstate {
  std::string label;               // "G+", "G0", "G-"
  double energy = 0.0;
  std::vector<double> amplitudes;  // over gate sites 2..N-1, unit norm
};

// Single-excitation eigensystem of the isolated gate block (inner sites
// 2..N-1 of the one-excitation Hamiltonian), entries ascending in energy.
// Closed forms: N=4 energies J2*delta/2 -+ J2 with vectors (1, +-1)/sqrt(2);
// N=5 the three-level formulas with the (J2, -(h+lambda), J2) vectors.
struct GateEigens {
  std::vector<GateEigenstate> states;

  const GateEigenstate& by_label(const std::string& label) const;
};

GateEigens gate_block_eigens(const XxzChain& chain);  // n_sites in {4, 5}

// --- Resonance fields ------------------------------------------------------

// N=4 gate fields making |G+-> degenerate with the port states:
// h_plus = J2 (1 - delta) / 2,  h_minus = -J2 (1 + delta) / 2.
struct ResonancePair {
  double h_plus;
  double h_minus;
};
ResonancePair resonance_fields(double j2, double delta);

// N=3: the field giving equidistant levels, h = -J1 delta / 2.
double resonance_fields_n3(double j1, double delta);

// N=5: field h' on sites 2 and 4 bringing one gate level into resonance with
// the ports. The G0 branch works for any central field h; the +- branch is
// determined by the sign of h + J2 delta and is singular at h = -J2 delta.
enum class GateBranch { plus, zero, minus };

struct ResonanceN5 {
  double h_prime;
  GateBranch branch;
};
ResonanceN5 resonance_fields_n5(double j2, double delta, double h);
double resonance_fields_n5_g0(double j2, double delta);

// --- Closed-form one-excitation spectra (symmetric chains) -----------------

std::vector<double> closed_form_spectrum_n3(double j1, double delta, double h);
std::vector<double> closed_form_spectrum_n4(double j1, double j2, double delta,
                                            double h);

}  // namespace qst
