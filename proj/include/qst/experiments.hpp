#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qst/atommap.hpp"
#include "qst/dynamics.hpp"

namespace qst {

// The cold-atom operating point behind a chain experiment: the trap, the
// contact couplings, and the particle count.
struct OperatingPoint {
  TrapSpec trap;
  int n_particles = 4;
  double g = 10.0;
  double kappa = 1.0;  // delta = 1 - 2/kappa
};

// Ideal (noise-free) quantities derived once per operating point. The gate
// field sits at h_plus and the transfer window is t_out = pi / |J1|.
struct IdealSetup {
  GeometricFactors factors;
  XxzChain chain;
  double delta = 0.0;
  double h0 = 0.0;
  double t_out = 0.0;
  double noiseless_fidelity = 0.0;
};

IdealSetup prepare_ideal(const OperatingPoint& op);

// --- Fig-style dynamics traces ------------------------------------------------

enum class GateSetting { open, closed };

struct TraceRow {
  double t = 0.0;
  double p_in = 0.0;
  double p_out = 0.0;
  double p_gate = 0.0;
};

struct TraceResult {
  std::vector<TraceRow> rows;
  std::string control_label;  // empty for the open gate
};

// Port and gate excitation populations versus time. The open gate starts from
// the input-port excitation; the closed gate from |up G_control down> with the
// control in the non-resonant gate eigenstate.
TraceResult run_dynamics_trace(const XxzChain& chain, GateSetting gate, double t_max,
                               int n_samples);

// --- Noise robustness ----------------------------------------------------------

struct NoiseSpec {
  enum class Parameter { v0, u, h };
  Parameter parameter = Parameter::h;
  double relative_sigma = 0.0;  // used when noise_sweep gets no sigma list
  int n_realizations = 100;
  std::uint64_t seed = 0;
};

const char* noise_parameter_name(NoiseSpec::Parameter p);

// One sweep point: per-realization transfer fidelities at the ideal t_out,
// with provenance. Solver failures are excluded and counted.
struct ExperimentRecord {
  double sigma = 0.0;
  std::vector<double> fidelities;  // one per included realization
  double mean = 0.0;
  double stderr_ = 0.0;
  int n_requested = 0;
  int n_ok = 0;
  int n_failed = 0;           // excluded realizations (solver failures)
  int n_rejected_draws = 0;   // negative-depth redraws
  std::uint64_t seed = 0;
  int grid_points = 0;
  std::string version_tag;
};

// Gaussian multiplicative noise on one trap/field parameter, the others held
// at their ideal means. V0/U realizations re-solve the trap; h realizations
// only move the gate field. t_out stays fixed at the ideal value. Realization
// r of row s draws from the counter stream (seed, s * 2^32 + r), so serial and
// parallel runs agree bit-exactly.
std::vector<ExperimentRecord> noise_sweep(const OperatingPoint& op,
                                          const NoiseSpec& spec,
                                          const std::vector<double>& sigmas);

// --- Blockade versus interaction asymmetry -------------------------------------

struct BlockadePoint {
  double kappa = 0.0;
  double delta = 0.0;
  double fidelity = 0.0;
  std::string control_label;
};

// Closed-gate survival at t_out over a kappa grid, the chain geometry held
// fixed; the gate field follows h_plus(J2, delta) and the control spin sits in
// the non-resonant gate eigenstate.
std::vector<BlockadePoint> blockade_vs_kappa(const std::vector<double>& kappas,
                                             const GeometricFactors& factors,
                                             double g);

}  // namespace qst
