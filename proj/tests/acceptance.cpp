// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Heavier dense-oracle jobs run in a small worker pool.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "adiagap/analytic.hpp"
#include "adiagap/errors.hpp"
#include "adiagap/oracle.hpp"
#include "adiagap/reduced.hpp"
#include "adiagap/sat.hpp"
#include "adiagap/spectrum.hpp"

using namespace adiagap;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << name;
  if (!detail.empty()) std::cout << " — " << detail;
  std::cout << std::endl;
  if (!pass) ++g_failures;
}

template <class F>
void run_jobs(const std::vector<F>& jobs) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      jobs[i]();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < std::min<std::size_t>(hw, jobs.size()); ++i)
    pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

// --- criterion 1: decomposition theorem -----------------------------------
void criterion_decomposition() {
  const std::vector<int> sizes = {6, 8, 10, 12};
  const std::vector<double> ts = {0.1, 0.25, 0.5, 0.75, 0.9};
  std::mutex mu;
  double worst = 0;
  bool pass = true;
  std::vector<std::function<void()>> jobs;
  for (int n : sizes) {
    for (int i = 0; i < 10; ++i) {
      jobs.push_back([&, n, i] {
        const SatInstance inst =
            gen_random(n, static_cast<int>(std::llround(4.5 * n)), 100 + i);
        const HamiltonianParams p = HamiltonianParams::for_instance(inst);
        for (double t : ts) {
          const DecompositionReport rep = verify_decomposition(inst, p, t, 1e-9);
          std::lock_guard<std::mutex> lk(mu);
          worst = std::max(worst, rep.worst_abs_err);
          pass = pass && rep.pass;
        }
      });
    }
  }
  run_jobs(jobs);
  report("decomposition theorem (n in {6,8,10,12}, 5 t each, tol 1e-9)", pass,
         "worst |err| = " + fmt(worst));
}

// --- criterion 2: characteristic-polynomial identity -----------------------
void criterion_charpoly() {
  double worst = 0;
  bool pass = true;
  int pairs = 0;
  for (int i = 0; i < 10; ++i) {
    const int n = 8 + (i % 5) * 2;  // 8..16
    const SatInstance inst =
        gen_random(n, static_cast<int>(std::llround(4.25 * n)), 200 + i);
    const DegeneracySpectrum spec = degeneracy_spectrum(inst);
    const HamiltonianParams p = HamiltonianParams::for_instance(inst);
    const int D = spec.max_violations();
    for (double t : {0.2 + 0.05 * i, 0.85 - 0.04 * i}) {
      ++pairs;
      const double rho = (1 - t) * p.b;
      const double at = p.a * t;
      double log_binom = 0;
      for (int j = 0; j <= D; ++j) {
        const double lambda = rho + j * at;
        const double value = charpoly_normalized(spec, p, lambda, t);
        const double expected = -rho * std::exp(-log_binom) *
                                (j % 2 ? -1.0 : 1.0) * (spec.d[j] / p.N);
        log_binom +=
            std::log(double(D - j)) - std::log(double(j + 1));
        if (spec.d[j] == 0) {
          pass = pass && value == 0.0;
          continue;
        }
        const double rel = std::abs(value - expected) / std::abs(expected);
        worst = std::max(worst, rel);
        pass = pass && rel <= 1e-10;
      }
    }
  }
  report("characteristic-polynomial identity (all j, " + std::to_string(pairs) +
             " instance/t pairs, rel 1e-10)",
         pass, "worst rel = " + fmt(worst));
}

// --- criterion 3: exact integer identities ---------------------------------
void criterion_integer_identities() {
  bool pass = true;
  std::string detail;
  std::vector<SatInstance> cases;
  for (int n = 4; n <= 24; n += 4)
    cases.push_back(gen_random(n, static_cast<int>(std::llround(4.5 * n)), n));
  for (int r = 1; r <= 8; ++r)
    cases.push_back(gen_binomial(r, Assignment{0, 3 * r}, 0));
  cases.push_back(gen_single_solution(12, 4.5, 5, 100000));
  for (const SatInstance& inst : cases) {
    const DegeneracySpectrum spec = degeneracy_spectrum(inst);
    const std::uint64_t N = 1ull << inst.n;
    const bool ok = spec.total() == N &&
                    spec.weighted_total() ==
                        static_cast<std::uint64_t>(inst.m()) * (N >> 3);
    if (!ok) detail = "violated at n = " + std::to_string(inst.n);
    pass = pass && ok;
  }
  report("exact integer identities (sum d_j = 2^n, sum j d_j = m 2^n/8, "
         "n <= 24)",
         pass, detail.empty() ? std::to_string(cases.size()) + " instances"
                              : detail);
}

// --- criterion 4: n=20 numeric vs closed form ------------------------------
void criterion_n20_agreement() {
  double worst = 0;
  bool pass = true;
  for (int i = 0; i < 5; ++i) {
    const SatInstance inst = gen_single_solution(20, 4.5, 300 + i, 1000000);
    const DegeneracySpectrum spec = degeneracy_spectrum(inst);
    const HamiltonianParams p = HamiltonianParams::for_instance(inst);
    const MomentSet mom = moments(spec, p);
    const double dn = minimize_gap(spec, p, 1e-10).best.delta;
    const double dc = gap_closed_form(mom, p, spec.d[0]).gap.delta;
    const double diff = std::abs(dn - dc);
    worst = std::max(worst, diff);
    pass = pass && diff < 5e-4;
  }
  report("n=20 single-solution: |delta_numeric - delta_closed| < 5e-4 "
         "(5 instances)",
         pass, "worst |diff| = " + fmt(worst));
}

// --- criterion 5: Fig. 2 reproduction --------------------------------------
void criterion_fig2() {
  bool pass = true;
  std::string rows;
  for (int r = 2; r <= 7; ++r) {
    const int n = 3 * r;
    const SatInstance inst = gen_binomial(r, Assignment{0, n}, 0);
    const DegeneracySpectrum spec = degeneracy_spectrum(inst);
    const HamiltonianParams p = HamiltonianParams::for_instance(inst);
    const MomentSet mom = moments(spec, p);
    const double f_theory = gap_closed_form(mom, p, 1).f;
    const double delta_num = minimize_gap(spec, p, 1e-11).best.delta;
    const double f_num = delta_num * 2.0 * std::sqrt(p.N) / p.n;
    const double diff = std::abs(f_theory - f_num);
    const double bound = 4.0 * std::pow(2.0, -n);
    pass = pass && diff <= bound;
    rows += " r" + std::to_string(r) + ":" + fmt(diff / bound);
  }
  report("Fig. 2 desk scale: |f_theory - f_numeric| <= 4*2^-n, r = 2..7", pass,
         "diff/bound:" + rows);
}

// --- criterion 6: binomial closed forms -------------------------------------
void criterion_binomial_closed_forms() {
  bool moments_ok = true;
  double worst = 0;
  for (int r = 1; r <= 8; ++r) {
    const SatInstance inst = gen_binomial(r, Assignment{0, 3 * r}, 0);
    const DegeneracySpectrum spec = degeneracy_spectrum(inst);
    const HamiltonianParams p = HamiltonianParams::for_instance(inst);
    const MomentSet mom = moments(spec, p);
    const auto [gm1, gm2] = binomial_moments(r);
    const double r1 = std::abs(gm1 - mom.gm1) / mom.gm1;
    const double r2 = std::abs(gm2 - mom.gm2) / mom.gm2;
    worst = std::max({worst, r1, r2});
    moments_ok = moments_ok && r1 <= 1e-13 && r2 <= 1e-13;
  }
  // f approaches 1 - 1/(8 gamma) with error shrinking faster than 1/gamma
  bool trend_ok = true;
  double prev = std::numeric_limits<double>::infinity();
  for (int r = 3; r <= 8; ++r) {
    const double gamma = 7.0 * r / 8.0;
    const auto [gm1, gm2] = binomial_moments(r);
    const double f = 2.0 / (1.0 + gamma * gm1) * std::sqrt(gm1 * gm1 / gm2);
    const double scaled = std::abs(f - (1.0 - 1.0 / (8 * gamma))) * gamma;
    trend_ok = trend_ok && scaled < prev;
    prev = scaled;
  }
  report("binomial closed forms: series vs direct summation (1e-13, r <= 8) "
         "and f -> 1 - 1/(8 gamma) trend",
         moments_ok && trend_ok, "worst rel = " + fmt(worst));
}

// --- criterion 7: paper's n=30 moment values --------------------------------
void criterion_n30_ensemble() {
  if (std::getenv("ADIAGAP_SKIP_RELEASE")) {
    std::cout << "[SKIP] n=30 ensemble means (release gate; "
                 "ADIAGAP_SKIP_RELEASE set)\n";
    return;
  }
  const int count = 12;
  std::vector<double> gg1(count), gg2(count), fs(count);
  std::vector<std::function<void()>> jobs;
  for (int i = 0; i < count; ++i) {
    jobs.push_back([&, i] {
      const SatInstance inst = gen_single_solution(30, 4.5, 700 + i, 2000000);
      SpectrumOptions sopts;
      sopts.threads = 1;  // jobs already run in parallel
      const DegeneracySpectrum spec = degeneracy_spectrum(inst, sopts);
      const HamiltonianParams p = HamiltonianParams::for_instance(inst);
      const MomentSet mom = moments(spec, p);
      gg1[i] = mom.gamma * mom.gm1;
      gg2[i] = mom.gamma * mom.gamma * mom.gm2;
      fs[i] = gap_closed_form(mom, p, spec.d[0]).f;
    });
  }
  run_jobs(jobs);
  double m1 = 0, m2 = 0, mf = 0;
  for (int i = 0; i < count; ++i) {
    m1 += gg1[i];
    m2 += gg2[i];
    mf += fs[i];
  }
  m1 /= count;
  m2 /= count;
  mf /= count;
  const bool pass = std::abs(m1 - 1.05) <= 0.05 && std::abs(m2 - 1.17) <= 0.08 &&
                    std::abs(mf - 0.95) <= 0.03;
  report("n=30 ensemble means: gamma*gm1 = 1.05(5), gamma^2*gm2 = 1.17(8), "
         "f = 0.95(3), 12 instances",
         pass,
         "means " + fmt(m1) + ", " + fmt(m2) + ", " + fmt(mf));
}

// --- criterion 8: interlacing suite -----------------------------------------
void criterion_interlacing() {
  bool pass = true;
  double tightest = std::numeric_limits<double>::infinity();
  std::vector<SatInstance> cases;
  for (int i = 0; i < 14; ++i)
    cases.push_back(gen_random(8 + (i % 7), 35 + 2 * i, 400 + i));
  for (int r = 2; r <= 5; ++r)
    cases.push_back(gen_binomial(r, Assignment{0, 3 * r}, 0));
  cases.push_back(gen_single_solution(14, 4.5, 9, 1000000));
  cases.push_back(gen_single_solution(16, 4.5, 10, 1000000));
  for (const SatInstance& inst : cases) {
    const DegeneracySpectrum spec = degeneracy_spectrum(inst);
    const HamiltonianParams p = HamiltonianParams::for_instance(inst);
    for (int i = 0; i < 100; ++i) {
      const double t = (i + 0.5) / 100;
      const ReducedHamiltonian h = build_reduced(spec, p, t);
      const std::vector<double> e = secular_eigenvalues(h, h.dim());
      pass = pass && e[0] < h.eps[0] - 1e-12;
      tightest = std::min(tightest, h.eps[0] - e[0]);
      for (int j = 1; j < h.dim(); ++j) {
        pass = pass && e[j] > h.eps[j - 1] + 1e-12 && e[j] < h.eps[j] - 1e-12;
        tightest =
            std::min({tightest, e[j] - h.eps[j - 1], h.eps[j] - e[j]});
      }
    }
  }
  report("interlacing, strict with 1e-12 margin (" +
             std::to_string(cases.size()) + " instances, 100-point grids)",
         pass, "tightest margin = " + fmt(tightest));
}

// --- criterion 9: two-level projection asymptote ----------------------------
void criterion_two_level() {
  bool pass = true;
  std::string rows;
  for (int r : {6, 7, 8}) {  // n = 18, 21, 24
    const int n = 3 * r;
    const SatInstance inst = gen_binomial(r, Assignment{0, n}, 0);
    const DegeneracySpectrum spec = degeneracy_spectrum(inst);
    const HamiltonianParams p = HamiltonianParams::for_instance(inst);
    const GapResult g = minimize_two_level_gap(spec, p, 1e-10);
    const double target = n / (2.0 * std::sqrt(p.N));
    const double rel = std::abs(g.delta - target) / target;
    pass = pass && rel < 0.10;
    rows += " n" + std::to_string(n) + ":" + fmt(rel);
  }
  report("two-level projection within 10% of n/(2 sqrt(N)), n in {18,21,24}",
         pass, "rel dev:" + rows);
}

// --- criterion 10: performance and determinism ------------------------------
void criterion_performance() {
  const SatInstance inst = gen_random(24, 108, 4242);
  SpectrumOptions opts8;
  opts8.threads = 8;
  const auto start = std::chrono::steady_clock::now();
  const DegeneracySpectrum s8 = degeneracy_spectrum(inst, opts8);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  SpectrumOptions opts1;
  opts1.threads = 1;
  const DegeneracySpectrum s1 = degeneracy_spectrum(inst, opts1);
  const bool pass = secs <= 10.0 && s1.d == s8.d;
  report("performance: n=24 m=108 spectrum <= 10 s on 8 threads, "
         "bit-identical across thread counts",
         pass, fmt(secs) + " s");
}

}  // namespace

int main() {
  criterion_decomposition();
  criterion_charpoly();
  criterion_integer_identities();
  criterion_n20_agreement();
  criterion_fig2();
  criterion_binomial_closed_forms();
  criterion_n30_ensemble();
  criterion_interlacing();
  criterion_two_level();
  criterion_performance();
  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
