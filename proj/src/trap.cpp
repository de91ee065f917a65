#include "qst/trap.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qst {

double TrapSpec::potential(double x) const {
  double dm = x - x0, dp = x + x0;
  return -v0 * (std::exp(-a * dm * dm) + std::exp(-a * dp * dp)) -
         u * std::exp(-b * x * x);
}

double TrapSpec::resolved_half_width() const {
  return half_width > 0.0 ? half_width : 0.5;
}

void TrapSpec::validate() const {
  if (a <= 0.0 || b <= 0.0)
    throw std::invalid_argument("TrapSpec: widths a, b must be positive");
  if (grid_points < 200)
    throw std::invalid_argument("TrapSpec: need at least 200 grid points");
  if (x0 < 0.0) throw std::invalid_argument("TrapSpec: x0 must be non-negative");
  if (resolved_half_width() <= x0)
    throw std::invalid_argument("TrapSpec: domain must contain the side-well centers");
}

SingleParticleSpectrum solve_potential_1d(const std::function<double(double)>& v,
                                          double lo, double hi, int grid_points,
                                          int n_states) {
  if (hi <= lo) throw std::invalid_argument("solve_potential_1d: empty domain");
  if (n_states < 1 || n_states >= grid_points)
    throw std::invalid_argument("solve_potential_1d: bad state count");
  const int n = grid_points;
  const double h = (hi - lo) / (n + 1);

  SingleParticleSpectrum out;
  out.step = h;
  out.lo = lo;
  out.hi = hi;
  out.x.resize(n);
  std::vector<double> d(n), e(n - 1, -0.5 / (h * h));
  for (int i = 0; i < n; ++i) {
    out.x[i] = lo + (i + 1) * h;
    d[i] = 1.0 / (h * h) + v(out.x[i]);
  }

  auto te = tridiag_lowest(d, e, static_cast<std::size_t>(n_states));
  out.energies = std::move(te.eigenvalues);
  out.orbitals = std::move(te.vectors);
  // l2-normalized grid vectors -> unit trapezoidal norm.
  const double inv_sqrt_h = 1.0 / std::sqrt(h);
  for (auto& orb : out.orbitals)
    for (double& val : orb) val *= inv_sqrt_h;
  return out;
}

SingleParticleSpectrum solve_schrodinger_1d(const TrapSpec& trap, int n_states,
                                            bool verify_convergence) {
  if (n_states < 1 || n_states > 12)
    throw std::invalid_argument("solve_schrodinger_1d: n_states must be in [1, 12]");
  trap.validate();
  if (trap.grid_points <= n_states)
    throw std::invalid_argument("solve_schrodinger_1d: grid too coarse for n_states");

  auto v = [&trap](double x) { return trap.potential(x); };
  const double w = trap.resolved_half_width();
  SingleParticleSpectrum coarse =
      solve_potential_1d(v, -w, w, trap.grid_points, n_states);
  if (!verify_convergence) return coarse;

  SingleParticleSpectrum fine =
      solve_potential_1d(v, -w, w, 2 * trap.grid_points, n_states);
  double scale = 1.0;
  for (int k = 0; k < n_states; ++k)
    scale = std::max(scale, std::abs(fine.energies[k]));
  for (int k = 0; k < n_states; ++k) {
    double change = std::abs(coarse.energies[k] - fine.energies[k]);
    if (change > 1e-3 * scale) {
      std::ostringstream msg;
      msg << "solve_schrodinger_1d: energy " << k << " moved by " << change
          << " (scale " << scale << ") under grid doubling; increase grid_points ("
          << trap.grid_points << ")";
      throw numerical_error(msg.str());
    }
  }
  return coarse;
}

}  // namespace qst
