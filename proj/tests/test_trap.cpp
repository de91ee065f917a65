#include "doctest.h"

#include <cmath>

#include "qst/trap.hpp"

using qst::solve_potential_1d;
using qst::solve_schrodinger_1d;
using qst::TrapSpec;

TEST_CASE("particle in a box reproduces n^2 pi^2 / 2") {
  auto sp = solve_potential_1d([](double) { return 0.0; }, 0.0, 1.0, 2000, 4);
  for (int n = 1; n <= 4; ++n) {
    double exact = n * n * M_PI * M_PI / 2.0;
    CHECK(sp.energies[n - 1] == doctest::Approx(exact).epsilon(1e-3));
  }
  CHECK(sp.energies[0] == doctest::Approx(4.9348).epsilon(1e-3));
}

TEST_CASE("harmonic oscillator levels are (n + 1/2) within 0.1%") {
  auto sp = solve_potential_1d([](double x) { return 0.5 * x * x; }, -12.0, 12.0,
                               3000, 4);
  for (int n = 0; n < 4; ++n)
    CHECK(sp.energies[n] == doctest::Approx(n + 0.5).epsilon(1e-3));
}

TEST_CASE("reference triple-well structure") {
  TrapSpec trap;
  auto sp = solve_schrodinger_1d(trap, 4);

  // Energies strictly increasing; the lowest two nearly degenerate, with a
  // splitting far below the gap to the third state.
  for (int k = 1; k < 4; ++k) CHECK(sp.energies[k] > sp.energies[k - 1]);
  double splitting = sp.energies[1] - sp.energies[0];
  double gap = sp.energies[2] - sp.energies[1];
  CHECK(splitting < 1e-3 * gap);

  // States 3-4 concentrate in the central well, states 1-2 in the side wells.
  auto central_fraction = [&](int k) {
    double c = 0.0, tot = 0.0;
    for (std::size_t i = 0; i < sp.x.size(); ++i) {
      double w = sp.orbitals[k][i] * sp.orbitals[k][i];
      tot += w;
      if (std::abs(sp.x[i]) < 0.25) c += w;
    }
    return c / tot;
  };
  CHECK(central_fraction(0) < 0.05);
  CHECK(central_fraction(1) < 0.05);
  CHECK(central_fraction(2) > 0.7);
  CHECK(central_fraction(3) > 0.7);
}

TEST_CASE("orbitals are orthonormal under trapezoidal quadrature") {
  TrapSpec trap;
  auto sp = solve_schrodinger_1d(trap, 6);
  for (int k = 0; k < 6; ++k) {
    for (int l = 0; l <= k; ++l) {
      double dot = 0.0;
      for (std::size_t i = 0; i < sp.x.size(); ++i)
        dot += sp.orbitals[k][i] * sp.orbitals[l][i];
      dot *= sp.step;
      CHECK(std::abs(dot - (k == l ? 1.0 : 0.0)) <= 1e-8);
    }
  }
}

TEST_CASE("non-convergence under refinement is reported") {
  TrapSpec trap;
  trap.v0 = 5000.0;        // very deep, very narrow side wells
  trap.a = 2000.0;
  trap.grid_points = 200;  // far too coarse to resolve them
  CHECK_THROWS_AS(solve_schrodinger_1d(trap, 4), qst::numerical_error);
}

TEST_CASE("trap validation") {
  TrapSpec bad;
  bad.a = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  TrapSpec coarse;
  coarse.grid_points = 100;
  CHECK_THROWS_AS(coarse.validate(), std::invalid_argument);
  TrapSpec narrow;
  narrow.half_width = 0.3;  // below x0
  CHECK_THROWS_AS(narrow.validate(), std::invalid_argument);
  TrapSpec ok;
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.resolved_half_width() == 0.5);
  CHECK_THROWS_AS(solve_schrodinger_1d(ok, 13), std::invalid_argument);
}
