// Command-line driver: every analysis of the toolkit as a subcommand with
// flat key=value configs, presets, and CSV outputs.
//
// Exit codes: 0 ok, 2 usage, 3 numerical failure, 4 validation failure.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qst/atommap.hpp"
#include "qst/config.hpp"
#include "qst/csv.hpp"
#include "qst/dynamics.hpp"
#include "qst/experiments.hpp"
#include "qst/version.hpp"

namespace {

using namespace qst;
namespace fs = std::filesystem;

constexpr int kExitUsage = 2;
constexpr int kExitNumerics = 3;
constexpr int kExitValidation = 4;

#ifndef QST_DEFAULT_PRESET_DIR
#define QST_DEFAULT_PRESET_DIR "presets"
#endif

struct CommonOpts {
  std::string preset;
  std::string config_path;
  std::string presets_dir;
  std::string out = ".";
  std::vector<std::string> overrides;  // key=value from the command line
};

void add_common(CLI::App* cmd, CommonOpts& common) {
  cmd->add_option("--preset", common.preset,
                  "named preset (fig1c, fig2, fig3) or a path to a .cfg file");
  cmd->add_option("--config", common.config_path, "key=value configuration file");
  cmd->add_option("--presets-dir", common.presets_dir, "directory holding presets");
  cmd->add_option("--out", common.out, "output directory (all files go here)");
  cmd->add_option("--set", common.overrides,
                  "override a config key, e.g. --set j2=20 (repeatable)");
}

std::string resolve_preset(const std::string& name, const std::string& dir_flag) {
  if (name.find('/') != std::string::npos || name.ends_with(".cfg")) return name;
  std::vector<std::string> dirs;
  if (!dir_flag.empty()) dirs.push_back(dir_flag);
  if (const char* env = std::getenv("QST_PRESETS")) dirs.push_back(env);
  dirs.push_back("presets");
  dirs.push_back(QST_DEFAULT_PRESET_DIR);
  for (const auto& d : dirs) {
    fs::path p = fs::path(d) / (name + ".cfg");
    if (fs::exists(p)) return p.string();
  }
  throw std::invalid_argument("preset '" + name + "' not found (looked in " +
                              std::to_string(dirs.size()) + " directories)");
}

Config assemble_config(const CommonOpts& common) {
  Config cfg;
  if (!common.preset.empty()) {
    Config preset = Config::load(resolve_preset(common.preset, common.presets_dir));
    cfg = preset;
  }
  if (!common.config_path.empty()) {
    Config file = Config::load(common.config_path);
    // later assignments win, so the explicit config overrides the preset
    cfg = Config::parse(cfg.echo() + file.echo());
  }
  for (const auto& kv : common.overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

fs::path out_file(const CommonOpts& common, const std::string& name) {
  fs::path dir(common.out);
  fs::create_directories(dir);
  return dir / name;
}

double parse_time(const std::string& token, double j1) {
  if (token == "pi_over_j1") return M_PI / std::abs(j1);
  if (token == "2pi_over_j1") return 2.0 * M_PI / std::abs(j1);
  std::size_t pos = 0;
  double t = std::stod(token, &pos);
  if (pos != token.size())
    throw std::invalid_argument("bad time token '" + token + "'");
  return t;
}

TrapSpec trap_from_config(const Config& cfg) {
  TrapSpec trap;
  trap.v0 = cfg.get_double("v0", trap.v0);
  trap.u = cfg.get_double("u", trap.u);
  trap.a = cfg.get_double("a", trap.a);
  trap.b = cfg.get_double("b", trap.b);
  trap.x0 = cfg.get_double("x0", trap.x0);
  trap.half_width = cfg.get_double("half_width", trap.half_width);
  trap.grid_points = cfg.get_int("grid", trap.grid_points);
  trap.validate();
  return trap;
}

OperatingPoint operating_point_from_config(const Config& cfg) {
  OperatingPoint op;
  op.trap = trap_from_config(cfg);
  op.n_particles = cfg.get_int("n_particles", 4);
  op.g = cfg.get_double("g", 10.0);
  op.kappa = cfg.get_double("kappa", 1.0);
  if (weak_coupling_regime(op.g))
    std::cerr << "warning: g = " << op.g
              << " is outside the strong-coupling regime (g >= 5 recommended)\n";
  return op;
}

// Chain from explicit parameters, or from the trap mapping when the config
// carries trap keys instead of couplings.
struct ChainSetup {
  XxzChain chain;
  double h = 0.0;
  bool from_trap = false;
  std::string note;
};

ChainSetup chain_from_config(const Config& cfg) {
  ChainSetup setup;
  if (!cfg.has("j1") && cfg.has("v0")) {
    OperatingPoint op = operating_point_from_config(cfg);
    IdealSetup ideal = prepare_ideal(op);
    setup.chain = ideal.chain;
    setup.h = ideal.h0;
    setup.from_trap = true;
    setup.note = "chain mapped from trap: J1=" + format_double(ideal.chain.couplings[0]) +
                 " J2=" + format_double(ideal.chain.couplings[1]) +
                 " delta=" + format_double(ideal.delta) +
                 " h=h_plus=" + format_double(ideal.h0);
    return setup;
  }

  int n = cfg.get_int("n", 4);
  double j1 = cfg.get_double("j1", 1.0);
  double j2 = cfg.get_double("j2", n == 3 ? j1 : 17.484);
  double delta = cfg.get_double("delta", -1.0);
  std::string branch = cfg.get_string("branch", "minus");

  std::string h_token = cfg.get_string("h", "auto");
  double h = 0.0;
  if (h_token == "auto") {
    if (n == 3) {
      h = resonance_fields_n3(j1, delta);
    } else {
      auto rf = resonance_fields(j2, delta);
      h = (branch == "plus") ? rf.h_plus : rf.h_minus;
    }
  } else {
    h = std::stod(h_token);
  }
  setup.h = h;

  if (n == 3) {
    setup.chain = XxzChain::symmetric3(j1, delta, h);
  } else if (n == 4) {
    setup.chain = XxzChain::symmetric4(j1, j2, delta, h);
  } else if (n == 5) {
    std::string hp_token = cfg.get_string("hprime", "auto");
    double hp = 0.0;
    if (hp_token == "auto") {
      if (branch == "zero")
        hp = resonance_fields_n5_g0(j2, delta);
      else
        hp = resonance_fields_n5(j2, delta, h).h_prime;
    } else {
      hp = std::stod(hp_token);
    }
    setup.chain = XxzChain::symmetric5(j1, j2, delta, h, hp);
  } else {
    throw std::invalid_argument("spectrum/transfer chains support n in {3, 4, 5}");
  }
  return setup;
}

std::string standard_header(const Config& cfg, const std::string& units) {
  std::string echo = cfg.echo();
  std::string out = std::string(kVersionTag) + "\n";
  out += "units: " + units + "\n";
  if (!echo.empty()) out += "config:\n" + echo;
  return out;
}

// --- subcommand handlers ----------------------------------------------------

int cmd_spectrum(const CommonOpts& common) {
  Config cfg = assemble_config(common);
  ChainSetup setup = chain_from_config(cfg);
  int nup = cfg.get_int("nup", 1);

  auto basis = enumerate_sector_basis(setup.chain.n_sites, nup);
  auto sector = diagonalize_sector(setup.chain, basis);
  const auto& ev = sector.spectral.eigenvalues;

  std::cout << "h = " << format_double(setup.h) << "\n";
  if (!setup.note.empty()) std::cout << setup.note << "\n";
  std::cout << "eigenvalues:";
  for (double v : ev) std::cout << " " << format_double(v);
  std::cout << "\ngaps:";
  for (std::size_t i = 0; i + 1 < ev.size(); ++i)
    std::cout << " " << format_double(ev[i + 1] - ev[i]);
  std::cout << "\n";
  if (ev.size() >= 3) {
    double best = 1e300;
    std::size_t arg = 0;
    for (std::size_t i = 0; i + 2 < ev.size(); ++i) {
      double spread = std::abs((ev[i + 2] - ev[i + 1]) - (ev[i + 1] - ev[i]));
      if (spread < best) {
        best = spread;
        arg = i;
      }
    }
    std::cout << "most equidistant triplet: levels " << arg << "," << arg + 1 << ","
              << arg + 2 << " (gap spread " << format_double(best) << ")\n";
  }

  CsvWriter csv(out_file(common, "spectrum.csv").string());
  csv.comment(standard_header(cfg, "energies in the chain's energy unit"));
  csv.comment("h = " + format_double(setup.h));
  std::vector<std::string> cols = {"k", "eigenvalue"};
  for (std::size_t i = 0; i < basis.dimension(); ++i)
    cols.push_back("v" + std::to_string(i));
  csv.columns(cols);
  for (std::size_t k = 0; k < ev.size(); ++k) {
    std::vector<double> row = {static_cast<double>(k), ev[k]};
    for (std::size_t i = 0; i < basis.dimension(); ++i)
      row.push_back(sector.spectral.eigenvectors(i, k));
    csv.row(row);
  }
  csv.write();
  std::cout << "wrote " << csv.path() << "\n";
  return 0;
}

int cmd_transfer(const CommonOpts& common) {
  Config cfg = assemble_config(common);
  ChainSetup setup = chain_from_config(cfg);

  TransferReport rep = transfer_report(setup.chain);
  double t = cfg.has("t") ? parse_time(*cfg.get("t"), setup.chain.couplings[0])
                          : rep.t_out;
  double f = transfer_fidelity(setup.chain, t);

  std::cout << "t_out = " << format_double(rep.t_out)
            << "  (resonant triplet " << rep.resonant_triplet[0] << ","
            << rep.resonant_triplet[1] << "," << rep.resonant_triplet[2] << ")\n";
  std::cout << "F(t = " << format_double(t) << ") = " << format_double(f) << "\n";
  if (!setup.note.empty()) std::cout << setup.note << "\n";

  CsvWriter csv(out_file(common, "transfer.csv").string());
  csv.comment(standard_header(cfg, "times in 1/J1, fidelity dimensionless"));
  csv.columns({"t", "fidelity", "t_out", "fidelity_at_t_out"});
  csv.row({t, f, rep.t_out, rep.fidelity});
  csv.write();
  std::cout << "wrote " << csv.path() << "\n";
  return 0;
}

int cmd_blockade(const CommonOpts& common, bool vs_kappa) {
  Config cfg = assemble_config(common);

  if (vs_kappa) {
    OperatingPoint op = operating_point_from_config(cfg);
    auto spectrum = solve_schrodinger_1d(op.trap, op.n_particles, false);
    auto factors =
        geometric_factors(spectrum, op.n_particles, IntegrationMethod::quadrature);
    std::vector<double> kappas = cfg.get_list("kappas", [] {
      std::vector<double> k;
      for (int i = 0; i <= 20; ++i) k.push_back(std::pow(2.0, i / 5.0));
      return k;
    }());
    auto points = blockade_vs_kappa(kappas, factors, op.g);

    CsvWriter csv(out_file(common, "blockade_vs_kappa.csv").string());
    csv.comment(standard_header(cfg, "kappa, delta dimensionless; survival at t_out"));
    csv.columns({"kappa", "delta", "fidelity"});
    std::size_t argmin = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      csv.row({points[i].kappa, points[i].delta, points[i].fidelity});
      if (points[i].fidelity < points[argmin].fidelity) argmin = i;
    }
    csv.write();
    std::cout << "minimum F = " << format_double(points[argmin].fidelity)
              << " at kappa = " << format_double(points[argmin].kappa) << "\n";
    std::cout << "wrote " << csv.path() << "\n";
    return 0;
  }

  ChainSetup setup = chain_from_config(cfg);
  GateEigens eigens = gate_block_eigens(setup.chain);
  std::string label = cfg.get_string("control", "auto");
  const GateEigenstate& control = (label == "auto")
                                      ? control_gate_state(eigens, setup.chain)
                                      : eigens.by_label(label);
  TransferReport rep = transfer_report(setup.chain);
  double t = cfg.has("t") ? parse_time(*cfg.get("t"), setup.chain.couplings[0])
                          : rep.t_out;
  auto res = blockade_fidelity(setup.chain, control, t);
  if (res.resonant_warning)
    std::cerr << "warning: control state " << control.label
              << " is resonant with the ports; no blockade expected\n";
  std::cout << "control = " << control.label << "\n";
  std::cout << "Fbar(t = " << format_double(t) << ") = " << format_double(res.fidelity)
            << "\n";

  CsvWriter csv(out_file(common, "blockade.csv").string());
  csv.comment(standard_header(cfg, "times in 1/J1, fidelity dimensionless"));
  csv.comment("control = " + control.label +
              ", gate detuning = " + format_double(res.gate_detuning));
  csv.columns({"t", "fidelity"});
  csv.row({t, res.fidelity});
  csv.write();
  std::cout << "wrote " << csv.path() << "\n";
  return 0;
}

int cmd_noise(const CommonOpts& common) {
  Config cfg = assemble_config(common);
  OperatingPoint op = operating_point_from_config(cfg);

  NoiseSpec spec;
  std::string param = cfg.get_string("param", "h");
  if (param == "v0")
    spec.parameter = NoiseSpec::Parameter::v0;
  else if (param == "u")
    spec.parameter = NoiseSpec::Parameter::u;
  else if (param == "h")
    spec.parameter = NoiseSpec::Parameter::h;
  else
    throw std::invalid_argument("noise: param must be one of v0, u, h");
  spec.n_realizations = cfg.get_int("n", 100);
  spec.seed = cfg.get_u64("seed", 0);
  auto sigmas = cfg.get_list("sigma", {0.0, 0.002, 0.005, 0.01});

  auto records = noise_sweep(op, spec, sigmas);

  CsvWriter csv(out_file(common, "noise.csv").string());
  csv.comment(standard_header(cfg, "sigma relative; F at t_out = pi/|J1| (ideal)"));
  csv.comment("seed = " + std::to_string(spec.seed) + ", parameter = " + param);
  csv.columns({"sigma", "mean", "stderr", "n_ok", "n_failed", "n_rejected_draws"});
  for (const auto& rec : records) {
    csv.row({rec.sigma, rec.mean, rec.stderr_, static_cast<double>(rec.n_ok),
             static_cast<double>(rec.n_failed),
             static_cast<double>(rec.n_rejected_draws)});
    std::cout << "sigma = " << format_double(rec.sigma)
              << "  mean F = " << format_double(rec.mean)
              << "  stderr = " << format_double(rec.stderr_) << "  n = " << rec.n_ok
              << "\n";
  }
  csv.write();
  std::cout << "wrote " << csv.path() << "\n";
  return 0;
}

int cmd_map(const CommonOpts& common, const std::string& trap_path) {
  CommonOpts merged = common;
  if (!trap_path.empty() && merged.config_path.empty()) merged.config_path = trap_path;
  Config cfg = assemble_config(merged);

  TrapMapOptions opt;
  opt.n_particles = cfg.get_int("n_particles", 4);
  std::string method = cfg.get_string("method", "quadrature");
  if (method == "monte_carlo") {
    opt.method = IntegrationMethod::monte_carlo;
    opt.mc.seed = cfg.get_u64("seed", 0);
    opt.mc.samples = static_cast<std::size_t>(cfg.get_double("samples", 2e6));
    opt.mc.strata = cfg.get_int("strata", 64);
  } else if (method != "quadrature") {
    throw std::invalid_argument("map: method must be quadrature or monte_carlo");
  }

  TrapSpec trap = trap_from_config(cfg);
  auto res = map_trap_to_chain(trap, opt);

  double error_estimate =
      opt.method == IntegrationMethod::quadrature
          ? res.grid_change * res.ratio
          : res.ratio * std::sqrt(std::pow(res.factors.alpha_stderr[0] /
                                               res.factors.alphas[0], 2) +
                                  std::pow(res.factors.alpha_stderr[1] /
                                               res.factors.alphas[1], 2));
  std::cout << "J2/J1 = " << format_double(res.ratio) << " +- "
            << format_double(error_estimate)
            << (opt.method == IntegrationMethod::quadrature
                    ? " (grid-doubling estimate)\n"
                    : " (Monte Carlo stderr)\n");
  std::cout << "ordered-sector norm x N! = "
            << format_double(res.factors.ordered_norm_times_nfact) << "\n";

  CsvWriter csv(out_file(common, "map.csv").string());
  csv.comment(standard_header(cfg, "alpha in eps/L units (ratios are the observable)"));
  csv.comment("ratio = " + format_double(res.ratio) +
              ", refined = " + format_double(res.ratio_refined) +
              ", grid_change = " + format_double(res.grid_change));
  csv.columns({"bond", "alpha", "alpha_stderr"});
  for (std::size_t j = 0; j < res.factors.alphas.size(); ++j)
    csv.row({static_cast<double>(j + 1), res.factors.alphas[j],
             res.factors.alpha_stderr.empty() ? 0.0 : res.factors.alpha_stderr[j]});
  csv.write();

  // Orbital dump for plotting.
  CsvWriter orbitals(out_file(common, "orbitals.csv").string());
  orbitals.comment(standard_header(cfg, "x in L, orbitals in 1/sqrt(L)"));
  std::vector<std::string> cols = {"x", "potential"};
  for (int a = 0; a < res.spectrum.n_states(); ++a)
    cols.push_back("phi" + std::to_string(a + 1));
  orbitals.columns(cols);
  for (std::size_t i = 0; i < res.spectrum.x.size(); ++i) {
    std::vector<double> row = {res.spectrum.x[i], trap.potential(res.spectrum.x[i])};
    for (int a = 0; a < res.spectrum.n_states(); ++a)
      row.push_back(res.spectrum.orbitals[a][i]);
    orbitals.row(row);
  }
  orbitals.write();
  std::cout << "wrote " << csv.path() << " and " << orbitals.path() << "\n";
  return 0;
}

int cmd_sweep(const CommonOpts& common) {
  Config cfg = assemble_config(common);
  TrapSpec trap = trap_from_config(cfg);

  std::string param = cfg.get_string("param", "u");
  TrapParameter p;
  if (param == "v0")
    p = TrapParameter::v0;
  else if (param == "u")
    p = TrapParameter::u;
  else
    throw std::invalid_argument("sweep: param must be v0 or u");

  std::vector<double> values;
  if (cfg.has("values")) {
    values = cfg.get_list("values", {});
  } else {
    double from = cfg.get_double("from", 150.0);
    double to = cfg.get_double("to", 550.0);
    int steps = cfg.get_int("steps", 9);
    if (steps < 2) throw std::invalid_argument("sweep: need at least 2 steps");
    for (int i = 0; i < steps; ++i)
      values.push_back(from + (to - from) * i / (steps - 1));
  }

  auto points = coupling_ratio_sweep(trap, p, values, cfg.get_int("n_particles", 4));

  CsvWriter csv(out_file(common, "sweep.csv").string());
  csv.comment(standard_header(cfg, "parameter in eps; ratio dimensionless"));
  csv.columns({param == "v0" ? "v0" : "u", "ratio", "ok"});
  for (const auto& pt : points) {
    csv.row({pt.value, pt.ratio, pt.ok ? 1.0 : 0.0});
    std::cout << param << " = " << format_double(pt.value) << "  J2/J1 = "
              << (pt.ok ? format_double(pt.ratio) : "failed: " + pt.message) << "\n";
  }
  csv.write();
  std::cout << "wrote " << csv.path() << "\n";
  return 0;
}

int cmd_trace(const CommonOpts& common) {
  Config cfg = assemble_config(common);
  ChainSetup setup = chain_from_config(cfg);

  std::string gate = cfg.get_string("gate", "open");
  if (gate != "open" && gate != "closed")
    throw std::invalid_argument("trace: gate must be open or closed");
  double j1 = setup.chain.couplings[0];
  double t_max = cfg.has("tmax") ? parse_time(*cfg.get("tmax"), j1)
                                 : 2.0 * M_PI / std::abs(j1);
  int samples = cfg.get_int("samples", 400);

  auto tr = run_dynamics_trace(setup.chain,
                               gate == "open" ? GateSetting::open : GateSetting::closed,
                               t_max, samples);

  CsvWriter csv(out_file(common, "trace.csv").string());
  csv.comment(standard_header(cfg, "t in 1/J1 units of the chain; populations"));
  if (!tr.control_label.empty()) csv.comment("control = " + tr.control_label);
  csv.columns({"t", "p_in", "p_out", "p_gate"});
  for (const auto& row : tr.rows) csv.row({row.t, row.p_in, row.p_out, row.p_gate});
  csv.write();
  std::cout << "wrote " << csv.path() << " (" << tr.rows.size() << " samples)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-diagonalization toolkit for conditional state transfer in "
               "XXZ spin chains and the cold-atom triple-well mapping"};
  app.require_subcommand(1);

  CommonOpts spectrum_opts, transfer_opts, blockade_opts, noise_opts, map_opts,
      sweep_opts, trace_opts;
  std::string trap_path;
  bool vs_kappa = false;

  add_common(app.add_subcommand("spectrum", "sector eigensystem of a chain"),
             spectrum_opts);
  add_common(app.add_subcommand("transfer", "open-gate transfer fidelity"),
             transfer_opts);
  auto* blockade = app.add_subcommand("blockade", "closed-gate survival");
  add_common(blockade, blockade_opts);
  blockade->add_flag("--vs-kappa", vs_kappa, "sweep the interaction asymmetry");
  add_common(app.add_subcommand("noise", "noise-robustness Monte Carlo"), noise_opts);
  auto* map = app.add_subcommand("map", "trap to chain mapping");
  add_common(map, map_opts);
  map->add_option("--trap", trap_path, "trap configuration file");
  add_common(app.add_subcommand("sweep", "coupling ratio over a trap parameter"),
             sweep_opts);
  add_common(app.add_subcommand("trace", "port populations versus time"), trace_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return (e.get_exit_code() == 0) ? 0 : kExitUsage;
  }

  try {
    if (app.got_subcommand("spectrum")) return cmd_spectrum(spectrum_opts);
    if (app.got_subcommand("transfer")) return cmd_transfer(transfer_opts);
    if (app.got_subcommand("blockade")) return cmd_blockade(blockade_opts, vs_kappa);
    if (app.got_subcommand("noise")) return cmd_noise(noise_opts);
    if (app.got_subcommand("map")) return cmd_map(map_opts, trap_path);
    if (app.got_subcommand("sweep")) return cmd_sweep(sweep_opts);
    if (app.got_subcommand("trace")) return cmd_trace(trace_opts);
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerics;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerics;
  }
  return kExitUsage;
}
