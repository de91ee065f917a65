#include "doctest.h"

#include <cmath>

#include "qst/experiments.hpp"

using namespace qst;

namespace {

OperatingPoint reference_point() {
  OperatingPoint op;
  op.trap.grid_points = 1000;  // keeps the suite quick; acceptance runs finer
  return op;
}

}  // namespace

TEST_CASE("ideal setup reproduces the mapped operating point") {
  auto ideal = prepare_ideal(reference_point());
  CHECK(ideal.delta == -1.0);
  CHECK(ideal.chain.couplings[1] / ideal.chain.couplings[0] ==
        doctest::Approx(17.484).epsilon(1e-3));
  CHECK(ideal.chain.couplings[0] < 0.0);  // J = -alpha/g
  CHECK(ideal.h0 == doctest::Approx(ideal.chain.couplings[1]).epsilon(1e-12));
  CHECK(ideal.t_out == doctest::Approx(M_PI / std::abs(ideal.chain.couplings[0])));
  CHECK(ideal.noiseless_fidelity >= 0.99);
}

TEST_CASE("dynamics traces") {
  auto ideal = prepare_ideal(reference_point());
  const double t_out = ideal.t_out;

  SUBCASE("open gate transfers the excitation at t_out") {
    auto tr = run_dynamics_trace(ideal.chain, GateSetting::open, 2.0 * t_out, 400);
    CHECK(tr.control_label.empty());
    double p_out_at_tout = 0.0, best = 1e9;
    for (const auto& row : tr.rows) {
      double d = std::abs(row.t - t_out);
      if (d < best) {
        best = d;
        p_out_at_tout = row.p_out;
      }
      CHECK(row.p_in + row.p_out + row.p_gate == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(p_out_at_tout >= 0.99);
    CHECK(tr.rows.front().p_in == doctest::Approx(1.0));
  }

  SUBCASE("closed gate holds the input population") {
    auto tr = run_dynamics_trace(ideal.chain, GateSetting::closed, 2.0 * t_out, 400);
    CHECK(tr.control_label == "G-");  // h sits at h_plus
    double min_p_in = 1.0;
    for (const auto& row : tr.rows) min_p_in = std::min(min_p_in, row.p_in);
    CHECK(min_p_in >= 0.98);
    // two excitations in play
    CHECK(tr.rows.front().p_in + tr.rows.front().p_gate ==
          doctest::Approx(2.0).epsilon(1e-10));
  }

  SUBCASE("t_max = 0 gives a single sample of the initial populations") {
    auto tr = run_dynamics_trace(ideal.chain, GateSetting::open, 0.0, 400);
    REQUIRE(tr.rows.size() == 1);
    CHECK(tr.rows[0].t == 0.0);
    CHECK(tr.rows[0].p_in == 1.0);
    CHECK(tr.rows[0].p_out == 0.0);
  }
}

TEST_CASE("noise sweep properties") {
  OperatingPoint op = reference_point();
  NoiseSpec spec;
  spec.seed = 42;
  spec.n_realizations = 40;

  SUBCASE("zero sigma reproduces the noiseless fidelity exactly") {
    auto ideal = prepare_ideal(op);
    for (auto param : {NoiseSpec::Parameter::h, NoiseSpec::Parameter::v0}) {
      spec.parameter = param;
      auto recs = noise_sweep(op, spec, {0.0});
      REQUIRE(recs.size() == 1);
      CHECK(recs[0].mean == ideal.noiseless_fidelity);  // bit-exact
      CHECK(recs[0].stderr_ == 0.0);
      CHECK(recs[0].n_ok == 40);
      CHECK(recs[0].n_failed == 0);
    }
  }

  SUBCASE("identical seed and config give bit-identical records") {
    spec.parameter = NoiseSpec::Parameter::h;
    auto a = noise_sweep(op, spec, {0.005});
    auto b = noise_sweep(op, spec, {0.005});
    REQUIRE(a.size() == b.size());
    CHECK(a[0].mean == b[0].mean);
    CHECK(a[0].stderr_ == b[0].stderr_);
    REQUIRE(a[0].fidelities.size() == b[0].fidelities.size());
    for (std::size_t i = 0; i < a[0].fidelities.size(); ++i)
      CHECK(a[0].fidelities[i] == b[0].fidelities[i]);
  }

  SUBCASE("field noise degrades transfer monotonically; depth noise much less") {
    spec.parameter = NoiseSpec::Parameter::h;
    spec.n_realizations = 60;
    auto h_recs = noise_sweep(op, spec, {0.0, 0.002, 0.005, 0.01});
    for (std::size_t i = 1; i < h_recs.size(); ++i) {
      double slack = 2.0 * (h_recs[i].stderr_ + h_recs[i - 1].stderr_);
      CHECK(h_recs[i].mean <= h_recs[i - 1].mean + slack);
    }
    CHECK(h_recs.back().mean < h_recs.front().mean - 4.0 * h_recs.back().stderr_);

    spec.parameter = NoiseSpec::Parameter::v0;
    auto v_recs = noise_sweep(op, spec, {0.01});
    CHECK(v_recs[0].mean > h_recs.back().mean);
  }

  SUBCASE("stderr scales like 1/sqrt(n) between 25 and 100 realizations") {
    spec.parameter = NoiseSpec::Parameter::h;
    spec.n_realizations = 25;
    auto small = noise_sweep(op, spec, {0.01});
    spec.n_realizations = 100;
    auto large = noise_sweep(op, spec, {0.01});
    double ratio = small[0].stderr_ / large[0].stderr_;
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.2));
  }

  SUBCASE("negative depth draws are rejected and counted") {
    spec.parameter = NoiseSpec::Parameter::u;
    spec.n_realizations = 50;
    auto recs = noise_sweep(op, spec, {0.8});
    CHECK(recs[0].n_rejected_draws > 0);
    CHECK(recs[0].n_ok == 50);
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS(noise_sweep(op, spec, {-0.1}), std::invalid_argument);
    NoiseSpec bad = spec;
    bad.n_realizations = 0;
    CHECK_THROWS_AS(noise_sweep(op, bad, {0.0}), std::invalid_argument);
  }
}

TEST_CASE("blockade versus kappa") {
  auto ideal = prepare_ideal(reference_point());
  std::vector<double> kappas;
  for (int k = 0; k <= 20; ++k) kappas.push_back(std::pow(2.0, k / 5.0));
  auto points = blockade_vs_kappa(kappas, ideal.factors, 10.0);
  REQUIRE(points.size() == 21);

  std::size_t argmin = 0;
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].fidelity < points[argmin].fidelity) argmin = i;

  CHECK(points[argmin].kappa == doctest::Approx(2.0));
  CHECK(points[argmin].delta == doctest::Approx(0.0));
  CHECK(points[argmin].fidelity < 0.5);
  CHECK(points[0].kappa == doctest::Approx(1.0));
  CHECK(points[0].fidelity >= 0.99);
  for (const auto& p : points) CHECK(p.control_label == "G-");

  // Mirror comparison Fbar(delta) vs Fbar(-delta): reported, not asserted.
  for (double delta : {0.25, 0.5, 0.75}) {
    auto pair = blockade_vs_kappa(
        {2.0 / (1.0 - delta), 2.0 / (1.0 + delta)}, ideal.factors, 10.0);
    MESSAGE("blockade asymmetry at |delta| = " << delta << ": F(+) = "
            << pair[0].fidelity << ", F(-) = " << pair[1].fidelity
            << ", difference = " << pair[0].fidelity - pair[1].fidelity);
  }
}
