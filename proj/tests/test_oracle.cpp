#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "adiagap/analytic.hpp"
#include "adiagap/errors.hpp"
#include "adiagap/oracle.hpp"
#include "helpers.hpp"

using namespace adiagap;

TEST_CASE("build_full endpoints") {
  const SatInstance inst = gen_random(6, 27, 2);
  const HamiltonianParams p = HamiltonianParams::for_instance(inst);

  // t = 0: projector spectrum {0, b x (N-1)}
  const std::vector<double> e0 = full_spectrum(build_full(inst, p, 0.0));
  CHECK(std::abs(e0[0]) < 1e-12);
  for (std::size_t i = 1; i < e0.size(); ++i)
    CHECK(e0[i] == doctest::Approx(p.b).epsilon(1e-12));

  // t = 1: diagonal, eigenvalue j*a with multiplicity d_j
  const DegeneracySpectrum spec = degeneracy_spectrum(inst);
  const std::vector<double> e1 = full_spectrum(build_full(inst, p, 1.0));
  std::vector<double> expected;
  for (std::size_t j = 0; j < spec.d.size(); ++j)
    expected.insert(expected.end(), spec.d[j], j * p.a);
  REQUIRE(e1.size() == expected.size());
  for (std::size_t i = 0; i < e1.size(); ++i)
    CHECK(e1[i] == doctest::Approx(expected[i]).epsilon(1e-12));

  CHECK_THROWS_AS(build_full(gen_random(14, 60, 3), p, 0.5), ComputeError);
}

TEST_CASE("trace matches the interpolation identity") {
  const SatInstance inst = gen_random(7, 30, 4);
  const HamiltonianParams p = HamiltonianParams::for_instance(inst);
  for (double t : {0.0, 0.3, 0.77, 1.0}) {
    const FullHamiltonian h = build_full(inst, p, t);
    const double expected =
        (1 - t) * p.N * p.n / 2.0 + t * p.a * p.m * p.N / 8.0;
    CHECK(h.trace() == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("eigenvalue sum equals the trace") {
  const SatInstance inst = gen_random(8, 36, 5);
  const HamiltonianParams p = HamiltonianParams::for_instance(inst);
  const FullHamiltonian h = build_full(inst, p, 0.5);
  const std::vector<double> e = full_spectrum(h);
  double sum = 0;
  for (double v : e) sum += v;
  CHECK(sum == doctest::Approx(h.trace()).epsilon(1e-10));
}

TEST_CASE("tridiagonal path agrees with cyclic Jacobi") {
  const SatInstance inst = gen_random(6, 25, 6);
  const HamiltonianParams p = HamiltonianParams::for_instance(inst);
  const FullHamiltonian h = build_full(inst, p, 0.37);
  const std::vector<double> ql = full_spectrum(h);
  const std::vector<double> jac = jacobi_eigenvalues(h.a, h.dim);
  REQUIRE(ql.size() == jac.size());
  for (std::size_t i = 0; i < ql.size(); ++i)
    CHECK(ql[i] == doctest::Approx(jac[i]).epsilon(1e-11));
}

TEST_CASE("eigenvalue count conservation") {
  const SatInstance inst = gen_random(9, 40, 7);
  const DegeneracySpectrum spec = degeneracy_spectrum(inst);
  std::uint64_t count = 0;
  int levels = 0;
  for (std::uint64_t dj : spec.d) {
    if (dj == 0) continue;
    ++levels;
    count += dj - 1;
  }
  CHECK(levels + count == (1ull << inst.n));
}

TEST_CASE("decomposition verifies on binomial r=2") {
  const SatInstance inst = testutil::binomial(2);
  const HamiltonianParams p = HamiltonianParams::for_instance(inst);
  for (double t : {0.25, 0.5, 0.75}) {
    const DecompositionReport rep = verify_decomposition(inst, p, t, 1e-9);
    CHECK(rep.pass);
    CHECK(rep.worst_abs_err <= 1e-9);
    CHECK(rep.trace_rel_err <= 1e-10);
    CHECK(rep.frobenius_rel_err <= 1e-10);
    CHECK(rep.summary().find("PASS") != std::string::npos);
  }
}

TEST_CASE("corrupted degeneracies fail with a multiplicity mismatch") {
  const SatInstance inst = testutil::binomial(2);
  const HamiltonianParams p = HamiltonianParams::for_instance(inst);
  DegeneracySpectrum corrupted = degeneracy_spectrum(inst);
  corrupted.d[1] += 1;
  corrupted.d[2] -= 1;
  const DecompositionReport rep =
      verify_decomposition(inst, p, corrupted, 0.5, 1e-9);
  CHECK(!rep.pass);
  bool mismatch_at_1 = false;
  for (const LevelCheck& lc : rep.antisymmetric)
    if (lc.level == 1 && lc.found != lc.expected) mismatch_at_1 = true;
  CHECK(mismatch_at_1);
}

TEST_CASE("lowest full eigenvalues reproduce the minimized gap") {
  const SatInstance inst = gen_single_solution(10, 4.5, 23, 100000);
  const DegeneracySpectrum spec = degeneracy_spectrum(inst);
  const HamiltonianParams p = HamiltonianParams::for_instance(inst);
  const GapResult g = minimize_gap(spec, p, 1e-10).best;
  const std::vector<double> full = full_spectrum(build_full(inst, p, g.t_min));
  CHECK(std::abs(full[0] - g.E0) < 1e-9);
  CHECK(std::abs(full[1] - g.E1) < 1e-9);
}

TEST_CASE("oracle cap is enforced and configurable") {
  const SatInstance big = gen_random(14, 63, 8);
  const HamiltonianParams pb = HamiltonianParams::for_instance(big);
  CHECK_THROWS_AS(verify_decomposition(big, pb, 0.5, 1e-9), ComputeError);

  const SatInstance small = gen_random(6, 27, 9);
  const HamiltonianParams ps = HamiltonianParams::for_instance(small);
  OracleOptions tight;
  tight.n_cap = 5;
  CHECK_THROWS_AS(build_full(small, ps, 0.5, tight), ComputeError);
  tight.n_cap = 6;
  CHECK_NOTHROW(build_full(small, ps, 0.5, tight));
}
