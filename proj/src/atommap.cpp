#include "qst/atommap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qst/parallel.hpp"
#include "qst/rng.hpp"

namespace qst {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Nodal data shared by the quadrature kernels: orbital values/derivatives and
// the prefix/suffix overlap matrices
//   pre_{ab}(t) = Int_lo^{x_t} phi_a phi_b,   suf_{ab}(t) = Int_{x_t}^hi,
// cumulative trapezoid with hard-wall zeros at the ends.
struct Nodal {
  int no = 0;  // orbitals
  std::size_t n = 0;
  double h = 0.0;
  std::vector<double> x;
  std::vector<double> phi, dphi;  // [t * no + a]
  std::vector<double> pre, suf;   // [t * no * no + a * no + b]
};

Nodal build_nodal(const SlaterWavefunction& w) {
  const auto& sp = w.spectrum();
  Nodal nd;
  nd.no = w.n_particles();
  nd.n = sp.x.size();
  nd.h = sp.step;
  nd.x = sp.x;
  const int no = nd.no;
  nd.phi.resize(nd.n * no);
  nd.dphi.resize(nd.n * no);
  for (std::size_t t = 0; t < nd.n; ++t)
    for (int a = 0; a < no; ++a) {
      nd.phi[t * no + a] = w.orbital_node(a, static_cast<int>(t));
      nd.dphi[t * no + a] = w.orbital_derivative_node(a, static_cast<int>(t));
    }

  const int nn = no * no;
  nd.pre.resize(nd.n * nn);
  nd.suf.resize(nd.n * nn);
  std::vector<double> running(nn, 0.0), total(nn, 0.0);
  for (std::size_t t = 0; t < nd.n; ++t) {
    for (int a = 0; a < no; ++a)
      for (int b = 0; b < no; ++b) {
        double fab = nd.phi[t * no + a] * nd.phi[t * no + b];
        running[a * no + b] += nd.h * fab;
        nd.pre[t * nn + a * no + b] = running[a * no + b] - 0.5 * nd.h * fab;
      }
  }
  total = running;  // full-box integral (half-weights vanish at the walls)
  for (std::size_t t = 0; t < nd.n; ++t)
    for (int i = 0; i < nn; ++i) nd.suf[t * nn + i] = total[i] - nd.pre[t * nn + i];
  return nd;
}

// det of the no x no matrix whose columns are unit vectors or data vectors.
struct Col {
  const double* vec = nullptr;  // nullptr means unit vector e_unit
  int unit = -1;
};

double mixed_det(int no, const Col* cols) {
  double buf[36];
  for (int c = 0; c < no; ++c)
    for (int r = 0; r < no; ++r)
      buf[c * no + r] = cols[c].vec ? cols[c].vec[r] : (r == cols[c].unit ? 1.0 : 0.0);
  return det_small(buf, no);
}

struct ContactQuadrature {
  std::vector<double> numerators;
  double ordered_norm = 0.0;
};

ContactQuadrature contact_quadrature(const SlaterWavefunction& w) {
  const Nodal nd = build_nodal(w);
  const int no = nd.no;
  const int nn = no * no;
  const double nfact = factorial(no);

  ContactQuadrature out;
  out.numerators.assign(no - 1, 0.0);

  for (std::size_t t = 0; t < nd.n; ++t) {
    const double* u = &nd.dphi[t * no];
    const double* v = &nd.phi[t * no];
    const double* c = &nd.pre[t * nn];
    const double* s = &nd.suf[t * nn];

    if (no == 2) {
      Col uv[2] = {{u, -1}, {v, -1}};
      double d = mixed_det(2, uv);
      out.numerators[0] += nd.h * d * d / nfact;

      double g[2];
      for (int a = 0; a < 2; ++a) {
        Col cols[2] = {{nullptr, a}, {v, -1}};
        g[a] = mixed_det(2, cols);
      }
      double acc = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int a2 = 0; a2 < 2; ++a2) acc += g[a] * g[a2] * c[a * 2 + a2];
      out.ordered_norm += nd.h * acc / nfact;
    } else if (no == 3) {
      double k[3], l[3], g[9];
      for (int a = 0; a < 3; ++a) {
        Col ck[3] = {{u, -1}, {v, -1}, {nullptr, a}};
        k[a] = mixed_det(3, ck);
        Col cl[3] = {{nullptr, a}, {u, -1}, {v, -1}};
        l[a] = mixed_det(3, cl);
        for (int b = 0; b < 3; ++b) {
          Col cg[3] = {{nullptr, a}, {v, -1}, {nullptr, b}};
          g[a * 3 + b] = mixed_det(3, cg);
        }
      }
      double acc0 = 0.0, acc1 = 0.0, accn = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int a2 = 0; a2 < 3; ++a2) {
          acc0 += k[a] * k[a2] * s[a * 3 + a2];
          acc1 += l[a] * l[a2] * c[a * 3 + a2];
        }
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int a2 = 0; a2 < 3; ++a2)
            for (int b2 = 0; b2 < 3; ++b2)
              accn += g[a * 3 + b] * g[a2 * 3 + b2] * c[a * 3 + a2] * s[b * 3 + b2];
      out.numerators[0] += nd.h * acc0 / nfact;
      out.numerators[1] += nd.h * acc1 / nfact;
      out.ordered_norm += nd.h * accn / nfact;
    } else {  // no == 4
      double rm[16], tm[16], pm[16], wm[64];
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          if (a == b) {
            rm[a * 4 + b] = tm[a * 4 + b] = pm[a * 4 + b] = 0.0;
          } else {
            Col cr[4] = {{u, -1}, {v, -1}, {nullptr, a}, {nullptr, b}};
            rm[a * 4 + b] = mixed_det(4, cr);
            Col ct[4] = {{nullptr, a}, {u, -1}, {v, -1}, {nullptr, b}};
            tm[a * 4 + b] = mixed_det(4, ct);
            Col cp[4] = {{nullptr, a}, {nullptr, b}, {u, -1}, {v, -1}};
            pm[a * 4 + b] = mixed_det(4, cp);
          }
        }
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int cc = 0; cc < 4; ++cc) {
            int idx = (a * 4 + b) * 4 + cc;
            if (a == b || a == cc || b == cc) {
              wm[idx] = 0.0;
            } else {
              Col cw[4] = {{nullptr, a}, {v, -1}, {nullptr, b}, {nullptr, cc}};
              wm[idx] = mixed_det(4, cw);
            }
          }

      double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          if (a == b) continue;
          for (int a2 = 0; a2 < 4; ++a2)
            for (int b2 = 0; b2 < 4; ++b2) {
              if (a2 == b2) continue;
              double saa = s[a * 4 + a2], sbb = s[b * 4 + b2];
              double caa = c[a * 4 + a2], cbb = c[b * 4 + b2];
              acc0 += rm[a * 4 + b] * rm[a2 * 4 + b2] * saa * sbb;
              acc1 += tm[a * 4 + b] * tm[a2 * 4 + b2] * caa * sbb;
              acc2 += pm[a * 4 + b] * pm[a2 * 4 + b2] * caa * cbb;
            }
        }
      double accn = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int cc = 0; cc < 4; ++cc) {
            double wabc = wm[(a * 4 + b) * 4 + cc];
            if (wabc == 0.0) continue;
            for (int a2 = 0; a2 < 4; ++a2)
              for (int b2 = 0; b2 < 4; ++b2)
                for (int c2 = 0; c2 < 4; ++c2) {
                  double w2 = wm[(a2 * 4 + b2) * 4 + c2];
                  if (w2 == 0.0) continue;
                  accn += wabc * w2 * c[a * 4 + a2] * s[b * 4 + b2] * s[cc * 4 + c2];
                }
          }
      out.numerators[0] += nd.h * acc0 / (nfact * 2.0);
      out.numerators[1] += nd.h * acc1 / nfact;
      out.numerators[2] += nd.h * acc2 / (nfact * 2.0);
      out.ordered_norm += nd.h * accn / (nfact * 2.0);
    }
  }
  return out;
}

struct McEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

// Stratified the bond coordinate; left/right blocks are sorted uniform
// proposals on the two half-boxes, weighted by the exact slab volume element.
McEstimate mc_bond_numerator(const SlaterWavefunction& w, int bond,
                             const McOptions& opt) {
  const int no = w.n_particles();
  const int n_left = bond;               // coordinates below the pair
  const int n_right = no - 2 - bond;     // above the pair
  const double lo = w.lo(), hi = w.hi();
  const int strata = std::max(1, opt.strata);
  const std::size_t per = std::max<std::size_t>(64, opt.samples / strata);
  const double lfact = factorial(n_left), rfact = factorial(n_right);

  std::vector<double> means(strata, 0.0), vars(strata, 0.0);
  parallel_for(strata, [&](std::size_t si) {
    CounterRng rng(opt.seed, 0x1000u * (bond + 1) + si);
    const double sa = lo + (hi - lo) * si / strata;
    const double sb = lo + (hi - lo) * (si + 1) / strata;
    std::vector<double> left(n_left), right(n_right);
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t k = 0; k < per; ++k) {
      double y = rng.uniform(sa, sb);
      for (int i = 0; i < n_left; ++i) left[i] = rng.uniform(lo, y);
      for (int i = 0; i < n_right; ++i) right[i] = rng.uniform(y, hi);
      std::sort(left.begin(), left.end());
      std::sort(right.begin(), right.end());
      double dcontact = w.contact_value(left, y, right);
      double weight = (sb - sa) * std::pow(y - lo, n_left) / lfact *
                      std::pow(hi - y, n_right) / rfact;
      double g = weight * dcontact * dcontact;
      sum += g;
      sum2 += g * g;
    }
    double m = sum / per;
    means[si] = m;
    vars[si] = (sum2 / per - m * m) / (per - 1);
  });

  McEstimate est;
  double var = 0.0;
  for (int si = 0; si < strata; ++si) {
    est.value += means[si];
    var += std::max(0.0, vars[si]);
  }
  est.stderr_ = std::sqrt(var);
  return est;
}

McEstimate mc_ordered_norm(const SlaterWavefunction& w, const McOptions& opt) {
  const int no = w.n_particles();
  const double lo = w.lo(), hi = w.hi();
  const int chunks = std::max(1, opt.strata);
  const std::size_t per = std::max<std::size_t>(64, opt.samples / chunks);
  const double volume = std::pow(hi - lo, no) / factorial(no);

  std::vector<double> means(chunks, 0.0), vars(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t si) {
    CounterRng rng(opt.seed, 0x9000u + si);
    std::vector<double> xs(no);
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t k = 0; k < per; ++k) {
      for (int i = 0; i < no; ++i) xs[i] = rng.uniform(lo, hi);
      std::sort(xs.begin(), xs.end());
      double psi = w.value(xs);
      double g = volume * psi * psi;
      sum += g;
      sum2 += g * g;
    }
    double m = sum / per;
    means[si] = m;
    vars[si] = (sum2 / per - m * m) / (per - 1);
  });

  McEstimate est;
  double var = 0.0;
  for (int si = 0; si < chunks; ++si) {
    est.value += means[si] / chunks;
    var += std::max(0.0, vars[si]) / (chunks * chunks);
  }
  est.stderr_ = std::sqrt(var);
  return est;
}

}  // namespace

double GeometricFactors::gate_to_port_ratio() const {
  if (alphas.size() < 2) return 1.0;
  return std::abs(alphas[alphas.size() / 2] / alphas[0]);
}

GeometricFactors geometric_factors(const SingleParticleSpectrum& spectrum,
                                   int n_particles, IntegrationMethod method,
                                   const McOptions& mc) {
  if (n_particles < 2 || n_particles > 4)
    throw std::invalid_argument("geometric_factors: n_particles must be 2, 3 or 4");
  SlaterWavefunction w(spectrum, n_particles);

  GeometricFactors out;
  out.n_particles = n_particles;
  out.method = method;

  if (method == IntegrationMethod::quadrature) {
    auto q = contact_quadrature(w);
    out.alphas.resize(q.numerators.size());
    for (std::size_t j = 0; j < q.numerators.size(); ++j)
      out.alphas[j] = q.numerators[j] / q.ordered_norm;
    out.alpha_stderr.assign(out.alphas.size(), 0.0);
    out.ordered_norm_times_nfact = q.ordered_norm * factorial(n_particles);
    return out;
  }

  out.seed = mc.seed;
  out.samples = mc.samples;
  auto den = mc_ordered_norm(w, mc);
  out.ordered_norm_times_nfact = den.value * factorial(n_particles);
  for (int bond = 0; bond < n_particles - 1; ++bond) {
    auto num = mc_bond_numerator(w, bond, mc);
    double alpha = num.value / den.value;
    double rel = std::sqrt(std::pow(num.stderr_ / num.value, 2) +
                           std::pow(den.stderr_ / den.value, 2));
    out.alphas.push_back(alpha);
    out.alpha_stderr.push_back(std::abs(alpha) * rel);
    if (rel > 0.02)
      throw numerical_error(
          "geometric_factors: Monte Carlo relative error above 2% on bond " +
          std::to_string(bond + 1) + "; increase samples");
  }
  return out;
}

std::vector<double> conditional_field_averages(const SlaterWavefunction& slater,
                                               const std::function<double(double)>& b) {
  const Nodal nd = build_nodal(slater);
  const int no = nd.no;
  const int nn = no * no;

  // Elementary symmetric functions of the prefix overlap matrix A(y) give the
  // left-count distribution: det(I + (z-1)A) = sum_k P(count = k) z^k.
  auto elementary = [&](const double* a, double* e) {
    e[0] = 1.0;
    for (int k = 1; k <= no; ++k) e[k] = 0.0;
    // sums of principal minors, sizes 1..no
    for (int i = 0; i < no; ++i) e[1] += a[i * no + i];
    if (no >= 2) {
      for (int i = 0; i < no; ++i)
        for (int j = i + 1; j < no; ++j)
          e[2] += a[i * no + i] * a[j * no + j] - a[i * no + j] * a[j * no + i];
    }
    if (no >= 3) {
      for (int i = 0; i < no; ++i)
        for (int j = i + 1; j < no; ++j)
          for (int k = j + 1; k < no; ++k) {
            double m[9] = {a[i * no + i], a[i * no + j], a[i * no + k],
                           a[j * no + i], a[j * no + j], a[j * no + k],
                           a[k * no + i], a[k * no + j], a[k * no + k]};
            e[3] += m[0] * (m[4] * m[8] - m[5] * m[7]) -
                    m[1] * (m[3] * m[8] - m[5] * m[6]) +
                    m[2] * (m[3] * m[7] - m[4] * m[6]);
          }
    }
    if (no >= 4) {
      double m[16];
      for (int i = 0; i < 16; ++i) m[i] = a[i];
      e[4] = det_small(m, 4);
    }
  };

  auto binom = [](int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
  };

  std::vector<double> h(no, 0.0);
  std::vector<double> f_prev(no, 0.0);
  std::vector<double> f_last(no, 0.0);
  double e[5], q[5];
  for (std::size_t t = 0; t < nd.n; ++t) {
    elementary(&nd.pre[t * nn], e);
    for (int k = 0; k <= no; ++k) {
      q[k] = 0.0;
      for (int m = k; m <= no; ++m)
        q[k] += e[m] * binom(m, k) * ((m - k) % 2 == 0 ? 1.0 : -1.0);
    }
    double bval = b(nd.x[t]);
    for (int j = 1; j <= no; ++j) {
      double fj = 0.0;
      for (int k = j; k <= no; ++k) fj += q[k];
      h[j - 1] += bval * (fj - f_prev[j - 1]);
      f_prev[j - 1] = fj;
      f_last[j - 1] = fj;
    }
  }
  // Close the Stieltjes sum: any residual mass sits at the upper wall.
  for (int j = 0; j < no; ++j) h[j] += b(nd.x.back()) * (1.0 - f_last[j]);
  return h;
}

double delta_from_kappa(double kappa) {
  if (kappa <= 0.0)
    throw std::invalid_argument("delta_from_kappa: kappa must be positive");
  return 1.0 - 2.0 / kappa;
}

bool weak_coupling_regime(double g) { return g < 5.0; }

XxzChain effective_chain(const GeometricFactors& factors, double g, double kappa,
                         std::vector<double> fields) {
  if (g <= 0.0) throw std::invalid_argument("effective_chain: g must be positive");
  double delta = delta_from_kappa(kappa);
  const int n = factors.n_particles;
  std::vector<double> j(factors.alphas.size());
  for (std::size_t i = 0; i < j.size(); ++i) j[i] = -factors.alphas[i] / g;
  if (fields.empty()) fields.assign(n, 0.0);
  if (fields.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("effective_chain: fields must have one entry per site");
  return XxzChain(n, std::move(j), std::move(fields), delta);
}

TrapMapResult map_trap_to_chain(const TrapSpec& trap, const TrapMapOptions& opt) {
  TrapMapResult res;
  res.spectrum = solve_schrodinger_1d(trap, opt.n_particles, opt.check_convergence);
  res.factors = geometric_factors(res.spectrum, opt.n_particles, opt.method, opt.mc);
  res.ratio = res.factors.gate_to_port_ratio();
  if (opt.check_convergence) {
    TrapSpec fine = trap;
    fine.grid_points *= 2;
    auto sp2 = solve_schrodinger_1d(fine, opt.n_particles, false);
    auto f2 = geometric_factors(sp2, opt.n_particles, IntegrationMethod::quadrature);
    res.ratio_refined = f2.gate_to_port_ratio();
    res.grid_change = std::abs(res.ratio - res.ratio_refined) /
                      std::max(1e-300, std::abs(res.ratio_refined));
  }
  return res;
}

std::vector<SweepPoint> coupling_ratio_sweep(const TrapSpec& base, TrapParameter p,
                                             const std::vector<double>& values,
                                             int n_particles) {
  std::vector<SweepPoint> points(values.size());
  parallel_for(values.size(), [&](std::size_t i) {
    SweepPoint& pt = points[i];
    pt.value = values[i];
    TrapSpec trap = base;
    (p == TrapParameter::v0 ? trap.v0 : trap.u) = values[i];
    try {
      if (!std::isfinite(values[i]))
        throw std::invalid_argument("coupling_ratio_sweep: non-finite parameter value");
      TrapMapOptions opt;
      opt.n_particles = n_particles;
      opt.check_convergence = false;
      pt.ratio = map_trap_to_chain(trap, opt).ratio;
      pt.ok = true;
    } catch (const std::exception& e) {
      pt.ratio = std::numeric_limits<double>::quiet_NaN();
      pt.ok = false;
      pt.message = e.what();
    }
  });
  return points;
}

}  // namespace qst
