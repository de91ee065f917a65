#include "qst/xxz_chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qst {

XxzChain::XxzChain(int n, std::vector<double> j, std::vector<double> h, double d,
                   bool sym)
    : n_sites(n), couplings(std::move(j)), fields(std::move(h)), delta(d),
      symmetric(sym) {
  if (n_sites < 2) throw std::invalid_argument("XxzChain: need at least 2 sites");
  if (couplings.size() != static_cast<std::size_t>(n_sites - 1))
    throw std::invalid_argument("XxzChain: couplings must have n_sites - 1 entries");
  if (fields.size() != static_cast<std::size_t>(n_sites))
    throw std::invalid_argument("XxzChain: fields must have n_sites entries");
  if (symmetric) {
    for (int j1 = 0; j1 < n_sites - 1; ++j1)
      if (couplings[j1] != couplings[n_sites - 2 - j1])
        throw std::invalid_argument("XxzChain: symmetric flag requires J_j = J_{N-j}");
    for (int s = 0; s < n_sites; ++s)
      if (fields[s] != fields[n_sites - 1 - s])
        throw std::invalid_argument("XxzChain: symmetric flag requires h_j = h_{N+1-j}");
    if (fields.front() != 0.0)
      throw std::invalid_argument("XxzChain: symmetric flag requires h_1 = h_N = 0");
  }
}

XxzChain XxzChain::symmetric3(double j1, double delta, double h) {
  return XxzChain(3, {j1, j1}, {0.0, h, 0.0}, delta, true);
}

XxzChain XxzChain::symmetric4(double j1, double j2, double delta, double h) {
  return XxzChain(4, {j1, j2, j1}, {0.0, h, h, 0.0}, delta, true);
}

XxzChain XxzChain::symmetric5(double j1, double j2, double delta, double h,
                              double h_prime) {
  return XxzChain(5, {j1, j2, j2, j1}, {0.0, h_prime, h, h_prime, 0.0}, delta, true);
}

double diagonal_energy(const XxzChain& chain, std::uint32_t config) {
  // Terms are accumulated in mirror pairs so that for symmetric chains the
  // result is bit-identical under site reversal (the bisymmetry invariant
  // holds exactly, not just to rounding).
  const int n = chain.n_sites;
  auto sz = [&](int site) { return (config >> site) & 1u ? 1.0 : -1.0; };
  auto zz = [&](int bond) { return sz(bond) * sz(bond + 1); };

  double sum = 0.0;
  for (int j = 0; j <= n - 1 - j; ++j) {
    double term = chain.fields[j] * sz(j);
    if (j != n - 1 - j) term += chain.fields[n - 1 - j] * sz(n - 1 - j);
    sum += term;
  }
  for (int b = 0; b <= n - 2 - b; ++b) {
    double term = chain.couplings[b] * zz(b);
    if (b != n - 2 - b) term += chain.couplings[n - 2 - b] * zz(n - 2 - b);
    sum -= 0.5 * chain.delta * term;
  }
  return sum;
}

namespace {

Matrix build_matrix(const XxzChain& chain, const SectorBasis& basis,
                    double exchange_sign) {
  if (basis.n_sites != chain.n_sites)
    throw std::invalid_argument("build_hamiltonian: basis and chain site counts differ");
  const std::size_t dim = basis.dimension();
  Matrix h(dim);
  for (std::size_t row = 0; row < dim; ++row) {
    std::uint32_t c = basis.configs[row];
    h(row, row) = diagonal_energy(chain, c);
    for (int b = 0; b + 1 < chain.n_sites; ++b) {
      std::uint32_t pair = 3u << b;
      std::uint32_t bits = c & pair;
      if (bits == 0 || bits == pair) continue;  // parallel spins, no exchange
      std::size_t col = basis.index_of(c ^ pair);
      h(row, col) = exchange_sign * -chain.couplings[b];
    }
  }
  return h;
}

}  // namespace

Matrix build_hamiltonian(const XxzChain& chain, const SectorBasis& basis) {
  return build_matrix(chain, basis, 1.0);
}

Matrix gauge_transformed_hamiltonian(const XxzChain& chain, const SectorBasis& basis) {
  return build_matrix(chain, basis, -1.0);
}

const GateEigenstate& GateEigens::by_label(const std::string& label) const {
  for (const auto& s : states)
    if (s.label == label) return s;
  throw std::invalid_argument("GateEigens: no state labelled " + label);
}

GateEigens gate_block_eigens(const XxzChain& chain) {
  GateEigens out;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (chain.n_sites == 4) {
    double j2 = chain.couplings[1];
    out.states.push_back({"G+", 0.5 * j2 * chain.delta - j2, {inv_sqrt2, inv_sqrt2}});
    out.states.push_back({"G-", 0.5 * j2 * chain.delta + j2, {inv_sqrt2, -inv_sqrt2}});
  } else if (chain.n_sites == 5) {
    double j1 = chain.couplings[0];
    double j2 = chain.couplings[1];
    double h_prime = chain.fields[1];
    double h = chain.fields[2];
    double mid = -h_prime + 0.5 * (j2 - j1) * chain.delta;
    double root = std::sqrt(2.0 * j2 * j2 + (h + mid) * (h + mid));
    auto side_state = [&](const std::string& label, double lambda) {
      double a = j2, b = -(h + lambda);
      double nrm = std::sqrt(2.0 * a * a + b * b);
      return GateEigenstate{label, lambda, {a / nrm, b / nrm, a / nrm}};
    };
    out.states.push_back(side_state("G+", mid + root));
    out.states.push_back({"G0", -h, {inv_sqrt2, 0.0, -inv_sqrt2}});
    out.states.push_back(side_state("G-", mid - root));
  } else {
    throw std::invalid_argument("gate_block_eigens: supported for n_sites in {4, 5}");
  }
  std::sort(out.states.begin(), out.states.end(),
            [](const GateEigenstate& a, const GateEigenstate& b) {
              return a.energy < b.energy;
            });
  return out;
}

ResonancePair resonance_fields(double j2, double delta) {
  if (j2 == 0.0) throw std::invalid_argument("resonance_fields: J2 must be nonzero");
  return {0.5 * j2 * (1.0 - delta), -0.5 * j2 * (1.0 + delta)};
}

double resonance_fields_n3(double j1, double delta) {
  if (j1 == 0.0) throw std::invalid_argument("resonance_fields_n3: J1 must be nonzero");
  return -0.5 * j1 * delta;
}

ResonanceN5 resonance_fields_n5(double j2, double delta, double h) {
  if (j2 == 0.0) throw std::invalid_argument("resonance_fields_n5: J2 must be nonzero");
  double denom = h + j2 * delta;
  if (denom == 0.0)
    throw std::invalid_argument(
        "resonance_fields_n5: h = -J2 delta is singular on the +- branch");
  double h_prime = j2 * j2 / (2.0 * denom) - 0.5 * j2 * delta;
  return {h_prime, h < -j2 * delta ? GateBranch::plus : GateBranch::minus};
}

double resonance_fields_n5_g0(double j2, double delta) {
  if (j2 == 0.0) throw std::invalid_argument("resonance_fields_n5_g0: J2 must be nonzero");
  return -0.5 * j2 * delta;
}

std::vector<double> closed_form_spectrum_n3(double j1, double delta, double h) {
  double mid = 0.5 * j1 * delta;
  double root = std::sqrt(2.0 * j1 * j1 + (h + mid) * (h + mid));
  std::vector<double> ev = {mid - root, -h, mid + root};
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::vector<double> closed_form_spectrum_n4(double j1, double j2, double delta,
                                            double h) {
  double ra = std::sqrt(j1 * j1 + std::pow(h - 0.5 * j2 * (1.0 - delta), 2));
  double rb = std::sqrt(j1 * j1 + std::pow(h + 0.5 * j2 * (1.0 + delta), 2));
  std::vector<double> ev = {-0.5 * j2 - h - ra, 0.5 * j2 - h - rb,
                            -0.5 * j2 - h + ra, 0.5 * j2 - h + rb};
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace qst
