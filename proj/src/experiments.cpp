#include "qst/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "qst/parallel.hpp"
#include "qst/rng.hpp"
#include "qst/version.hpp"

namespace qst {

IdealSetup prepare_ideal(const OperatingPoint& op) {
  if (op.n_particles != 4)
    throw std::invalid_argument("prepare_ideal: transfer experiments need 4 particles");
  auto spectrum = solve_schrodinger_1d(op.trap, op.n_particles, false);
  IdealSetup ideal;
  ideal.factors = geometric_factors(spectrum, op.n_particles,
                                    IntegrationMethod::quadrature);
  ideal.delta = delta_from_kappa(op.kappa);

  std::vector<double> j(ideal.factors.alphas.size());
  for (std::size_t i = 0; i < j.size(); ++i) j[i] = -ideal.factors.alphas[i] / op.g;
  ideal.h0 = resonance_fields(j[1], ideal.delta).h_plus;
  ideal.chain = XxzChain(4, j, {0.0, ideal.h0, ideal.h0, 0.0}, ideal.delta);
  ideal.t_out = M_PI / std::abs(ideal.chain.couplings[0]);
  ideal.noiseless_fidelity = transfer_fidelity(ideal.chain, ideal.t_out);
  return ideal;
}

TraceResult run_dynamics_trace(const XxzChain& chain, GateSetting gate, double t_max,
                               int n_samples) {
  if (t_max < 0.0 || n_samples < 0)
    throw std::invalid_argument("run_dynamics_trace: bad sampling window");

  TraceResult res;
  QuantumState psi0 = [&] {
    if (gate == GateSetting::open) {
      return QuantumState::basis_state(enumerate_sector_basis(chain.n_sites, 1), 1u);
    }
    GateEigens eigens = gate_block_eigens(chain);
    const GateEigenstate& control = control_gate_state(eigens, chain);
    res.control_label = control.label;
    return control_loaded_state(chain, control);
  }();
  auto sector = diagonalize_sector(chain, psi0.basis);

  int n_points = (t_max == 0.0) ? 0 : n_samples;
  for (int i = 0; i <= n_points; ++i) {
    double t = (n_points == 0) ? 0.0 : t_max * i / n_points;
    QuantumState psi = evolve(psi0, sector, t);
    auto site = psi.site_excitation_probabilities();
    TraceRow row;
    row.t = t;
    row.p_in = site.front();
    row.p_out = site.back();
    for (int s = 1; s + 1 < chain.n_sites; ++s) row.p_gate += site[s];
    res.rows.push_back(row);
  }
  return res;
}

const char* noise_parameter_name(NoiseSpec::Parameter p) {
  switch (p) {
    case NoiseSpec::Parameter::v0: return "v0";
    case NoiseSpec::Parameter::u: return "u";
    case NoiseSpec::Parameter::h: return "h";
  }
  return "?";
}

namespace {

struct RealizationResult {
  double fidelity = 0.0;
  bool ok = false;
  int rejected_draws = 0;
};

RealizationResult run_realization(const OperatingPoint& op, const IdealSetup& ideal,
                                  NoiseSpec::Parameter parameter, double sigma,
                                  CounterRng& rng) {
  RealizationResult out;
  try {
    XxzChain chain = ideal.chain;
    if (parameter == NoiseSpec::Parameter::h) {
      double h = ideal.h0 * (1.0 + sigma * rng.gaussian());
      chain = XxzChain(4, ideal.chain.couplings, {0.0, h, h, 0.0}, ideal.delta);
    } else {
      double mean = (parameter == NoiseSpec::Parameter::v0) ? op.trap.v0 : op.trap.u;
      double drawn = mean;
      if (sigma > 0.0) {
        drawn = mean * (1.0 + sigma * rng.gaussian());
        while (drawn <= 0.0) {  // depths must stay attractive; redraw and count
          ++out.rejected_draws;
          drawn = mean * (1.0 + sigma * rng.gaussian());
        }
      }
      TrapSpec trap = op.trap;
      (parameter == NoiseSpec::Parameter::v0 ? trap.v0 : trap.u) = drawn;
      auto spectrum = solve_schrodinger_1d(trap, op.n_particles, false);
      auto factors = geometric_factors(spectrum, op.n_particles,
                                       IntegrationMethod::quadrature);
      std::vector<double> j(factors.alphas.size());
      for (std::size_t i = 0; i < j.size(); ++i) j[i] = -factors.alphas[i] / op.g;
      // the applied field stays at the ideal resonance value
      chain = XxzChain(4, j, {0.0, ideal.h0, ideal.h0, 0.0}, ideal.delta);
    }
    out.fidelity = transfer_fidelity(chain, ideal.t_out);
    out.ok = true;
  } catch (const std::exception&) {
    out.ok = false;
  }
  return out;
}

}  // namespace

std::vector<ExperimentRecord> noise_sweep(const OperatingPoint& op,
                                          const NoiseSpec& spec,
                                          const std::vector<double>& sigmas) {
  std::vector<double> sweep = sigmas.empty()
                                  ? std::vector<double>{spec.relative_sigma}
                                  : sigmas;
  for (double s : sweep)
    if (s < 0.0) throw std::invalid_argument("noise_sweep: sigma must be >= 0");
  if (spec.n_realizations < 1)
    throw std::invalid_argument("noise_sweep: need at least one realization");

  const IdealSetup ideal = prepare_ideal(op);

  std::vector<ExperimentRecord> records;
  for (std::size_t row = 0; row < sweep.size(); ++row) {
    const double sigma = sweep[row];
    const int n = spec.n_realizations;
    std::vector<RealizationResult> results(n);
    parallel_for(n, [&](std::size_t r) {
      CounterRng rng(spec.seed, (static_cast<std::uint64_t>(row) << 32) | r);
      results[r] = run_realization(op, ideal, spec.parameter, sigma, rng);
    });

    ExperimentRecord rec;
    rec.sigma = sigma;
    rec.n_requested = n;
    rec.seed = spec.seed;
    rec.grid_points = op.trap.grid_points;
    rec.version_tag = kVersionTag;
    for (const auto& res : results) {
      rec.n_rejected_draws += res.rejected_draws;
      if (!res.ok) {
        ++rec.n_failed;
        continue;
      }
      rec.fidelities.push_back(res.fidelity);
    }
    rec.n_ok = static_cast<int>(rec.fidelities.size());
    if (rec.n_ok == 0)
      throw numerical_error("noise_sweep: every realization failed at sigma " +
                            std::to_string(sigma));
    // Centered accumulation: at sigma = 0 every deviation is exactly zero, so
    // the mean equals the noiseless fidelity bit-for-bit.
    double base = rec.fidelities.front(), dev = 0.0;
    for (double f : rec.fidelities) dev += f - base;
    rec.mean = base + dev / rec.n_ok;
    double var = 0.0;
    for (double f : rec.fidelities) var += (f - rec.mean) * (f - rec.mean);
    rec.stderr_ = rec.n_ok > 1 ? std::sqrt(var / (rec.n_ok - 1) / rec.n_ok) : 0.0;
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<BlockadePoint> blockade_vs_kappa(const std::vector<double>& kappas,
                                             const GeometricFactors& factors,
                                             double g) {
  std::vector<BlockadePoint> points(kappas.size());
  parallel_for(kappas.size(), [&](std::size_t i) {
    BlockadePoint& pt = points[i];
    pt.kappa = kappas[i];
    pt.delta = delta_from_kappa(kappas[i]);
    std::vector<double> j(factors.alphas.size());
    for (std::size_t k = 0; k < j.size(); ++k) j[k] = -factors.alphas[k] / g;
    double h = resonance_fields(j[1], pt.delta).h_plus;
    XxzChain chain(4, j, {0.0, h, h, 0.0}, pt.delta);
    GateEigens eigens = gate_block_eigens(chain);
    const GateEigenstate& control = control_gate_state(eigens, chain);
    pt.control_label = control.label;
    double t_out = M_PI / std::abs(chain.couplings[0]);
    pt.fidelity = blockade_fidelity(chain, control, t_out).fidelity;
  });
  return points;
}

}  // namespace qst
