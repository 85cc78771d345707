#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "adiagap/analytic.hpp"
#include "adiagap/errors.hpp"
#include "adiagap/format.hpp"
#include "adiagap/oracle.hpp"
#include "adiagap/reduced.hpp"
#include "adiagap/rng.hpp"
#include "adiagap/sat.hpp"
#include "adiagap/spectrum.hpp"

namespace {

using namespace adiagap;
using nlohmann::json;

int default_threads() {
  if (const char* env = std::getenv("ADIAGAP_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;  // library resolves 0 to hardware concurrency
}

Kernel parse_kernel(const std::string& name) {
  if (name == "auto") return Kernel::Auto;
  if (name == "scalar") return Kernel::Scalar;
  if (name == "word64") return Kernel::Word64;
  if (name == "avx2") return Kernel::Avx2;
  throw CLI::ValidationError("--kernel", "unknown kernel '" + name + "'");
}

SatInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path);
  return parse_dimacs(in);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ParseError("cannot write to " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

void save_instance(const SatInstance& inst, const std::string& path) {
  write_file_atomic(path, emit_dimacs(inst));
  write_file_atomic(path + ".meta", emit_metadata(inst.meta));
}

// Flat record as printed by `gap`: the shared analytic fields plus the
// per-method result.
json base_record(const SatInstance& inst, const DegeneracySpectrum& spec,
                 const MomentSet& mom) {
  json r;
  r["n"] = inst.n;
  r["m"] = inst.m();
  r["alpha"] = inst.alpha();
  r["d0"] = spec.d[0];
  r["gamma"] = mom.gamma;
  r["gm1"] = mom.gm1;
  r["gm2"] = mom.gm2;
  return r;
}

void print_gap_record(json r, const GapResult& g, double f) {
  r["tmin"] = g.t_min;
  r["delta"] = g.delta;
  r["f"] = f;
  r["e0"] = g.E0;
  r["e1"] = g.E1;
  r["method"] = gap_method_name(g.method);
  std::cout << r.dump() << '\n';
}

double rescale_f(const GapResult& g, const HamiltonianParams& p,
                 std::uint64_t d0) {
  return g.delta * 2.0 * std::sqrt(p.N) /
         (p.n * std::sqrt(static_cast<double>(d0)));
}

struct ScanRow {
  int n = 0;
  std::uint64_t seed = 0;
  std::uint64_t d0 = 0;
  MomentSet mom;
  double tmin = 0;
  double delta_numeric = std::numeric_limits<double>::quiet_NaN();
  double delta_closed = 0;
  double f_numeric = std::numeric_limits<double>::quiet_NaN();
  double f_closed = 0;
  bool ok = false;
};

int cmd_gap(const std::string& in_path, const std::string& method,
            double t_tol, int threads, int n_cap) {
  const SatInstance inst = load_instance(in_path);
  const SpectrumOptions sopts{threads, n_cap, Kernel::Auto};
  const DegeneracySpectrum spec = degeneracy_spectrum(inst, sopts);
  const HamiltonianParams params = HamiltonianParams::for_instance(inst);
  if (spec.d[0] == 0)
    throw ComputeError("unsatisfiable instance (d0 = 0), gap formula "
                       "inapplicable");
  const MomentSet mom = moments(spec, params);
  const json base = base_record(inst, spec, mom);
  const std::uint64_t d0 = spec.d[0];

  const bool all = method == "all";
  if (all || method == "numeric") {
    const MinimizeResult res = minimize_gap(spec, params, t_tol);
    if (!res.unimodal) {
      std::cerr << "warning: gap(t) pre-scan found " << res.local_minima.size()
                << " local minima; reporting every one\n";
      for (const GapResult& g : res.local_minima)
        print_gap_record(base, g, rescale_f(g, params, d0));
    } else {
      print_gap_record(base, res.best, rescale_f(res.best, params, d0));
    }
  }
  if (all || method == "parabolic") {
    const ParabolicGap pg = parabolic_gap(mom, params, d0);
    print_gap_record(base, pg.gap, pg.f);
  }
  if (all || method == "closed-form") {
    const ClosedFormGap cf = gap_closed_form(mom, params, d0);
    json r = base;
    r["delta_exact_b"] = cf.delta_exact_b;
    print_gap_record(r, cf.gap, cf.f);
  }
  return 0;
}

struct ScanConfig {
  std::string ensemble;
  int r_min = 2, r_max = 7;
  int n_min = 0, n_max = 0, n_step = 1;
  int per_n = 1;
  double alpha = 4.5;
  std::uint64_t seed = 1;
  std::uint64_t max_tries = 1'000'000;
  std::string out_path;
  int threads = 0;
  int n_cap = 34;
  double t_tol = 1e-10;
};

ScanRow scan_row(const ScanConfig& cfg, int n, std::uint64_t row_seed) {
  ScanRow row;
  row.n = n;
  row.seed = row_seed;
  SatInstance inst;
  if (cfg.ensemble == "binomial") {
    const int r = n / 3;
    Rng rng(row_seed);
    const Assignment planted{rng.next() & ((n == 64 ? 0 : (1ull << n)) - 1), n};
    inst = gen_binomial(r, planted, row_seed);
  } else if (cfg.ensemble == "single-solution") {
    inst = gen_single_solution(n, cfg.alpha, row_seed, cfg.max_tries);
  } else {
    const int m = static_cast<int>(std::llround(cfg.alpha * n));
    inst = gen_random(n, m, row_seed);
  }
  const SpectrumOptions sopts{1, cfg.n_cap, Kernel::Auto};  // rows parallelize
  const DegeneracySpectrum spec = degeneracy_spectrum(inst, sopts);
  const HamiltonianParams params = HamiltonianParams::for_instance(inst);
  const MomentSet mom = moments(spec, params);
  row.d0 = spec.d[0];
  row.mom = mom;
  if (row.d0 == 0) throw ComputeError("unsatisfiable instance in scan");
  const ClosedFormGap cf = gap_closed_form(mom, params, row.d0);
  row.tmin = cf.gap.t_min;
  row.delta_closed = cf.gap.delta;
  row.f_closed = cf.f;
  const ReducedHamiltonian h = build_reduced(spec, params, 0.5);
  if (h.dim() <= 10 * n) {  // numeric minimization affordable
    const MinimizeResult res = minimize_gap(spec, params, cfg.t_tol);
    row.delta_numeric = res.best.delta;
    row.f_numeric = rescale_f(res.best, params, row.d0);
  }
  row.ok = true;
  return row;
}

int cmd_scan(const ScanConfig& cfg) {
  std::vector<std::pair<int, std::uint64_t>> jobs;  // (n, row_seed)
  if (cfg.ensemble == "binomial") {
    for (int r = cfg.r_min; r <= cfg.r_max; ++r)
      for (int i = 0; i < cfg.per_n; ++i)
        jobs.emplace_back(3 * r, mix_seed(cfg.seed, (std::uint64_t(r) << 20) | i));
  } else {
    // an empty range is allowed and produces a header-only CSV
    if (cfg.n_min <= cfg.n_max && cfg.n_min < 3)
      throw CLI::ValidationError("--n-min", "need n >= 3");
    for (int n = cfg.n_min; n <= cfg.n_max; n += cfg.n_step)
      for (int i = 0; i < cfg.per_n; ++i)
        jobs.emplace_back(n, mix_seed(cfg.seed, (std::uint64_t(n) << 20) | i));
  }

  std::vector<ScanRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  const int threads = std::max(
      1, std::min<int>(cfg.threads > 0 ? cfg.threads
                                       : std::thread::hardware_concurrency(),
                       static_cast<int>(jobs.size())));
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        rows[i] = scan_row(cfg, jobs[i].first, jobs[i].second);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lk(log_mutex);
        std::cerr << "scan: n=" << jobs[i].first << " seed=" << jobs[i].second
                  << " failed: " << e.what() << '\n';
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::erase_if(rows, [](const ScanRow& r) { return !r.ok; });
  std::sort(rows.begin(), rows.end(), [](const ScanRow& x, const ScanRow& y) {
    return x.n != y.n ? x.n < y.n : x.seed < y.seed;
  });

  std::ostringstream csv;
  csv << "n,seed,d0,gamma,gm1,gm2,tmin,delta_numeric,delta_closed,"
         "f_numeric,f_closed,abs_diff\n";
  for (const ScanRow& r : rows) {
    csv << r.n << ',' << r.seed << ',' << r.d0 << ',' << fmt_g17(r.mom.gamma)
        << ',' << fmt_g17(r.mom.gm1) << ',' << fmt_g17(r.mom.gm2) << ','
        << fmt_g17(r.tmin) << ',' << fmt_g17(r.delta_numeric) << ','
        << fmt_g17(r.delta_closed) << ',' << fmt_g17(r.f_numeric) << ','
        << fmt_g17(r.f_closed) << ','
        << fmt_g17(std::abs(r.delta_numeric - r.delta_closed)) << '\n';
  }
  if (cfg.out_path.empty())
    std::cout << csv.str();
  else
    write_file_atomic(cfg.out_path, csv.str());
  return 0;
}

int cmd_verify(const std::string& in_path, std::vector<double> ts, double tol,
               int n_cap) {
  if (tol < 1e-12)
    throw CLI::ValidationError(
        "--tol", "minimum tolerance is 1e-12 (requested value would compare "
                 "eigenvalues below round-off)");
  const SatInstance inst = load_instance(in_path);
  const HamiltonianParams params = HamiltonianParams::for_instance(inst);
  if (ts.empty()) ts = {0.25, 0.5, 0.75};
  bool all_pass = true;
  for (double t : ts) {
    const DecompositionReport rep =
        verify_decomposition(inst, params, t, tol, OracleOptions{n_cap});
    std::cout << rep.summary();
    json r;
    r["t"] = t;
    r["tol"] = tol;
    r["pass"] = rep.pass;
    r["worst_abs_err"] = rep.worst_abs_err;
    r["trace_rel_err"] = rep.trace_rel_err;
    r["frobenius_rel_err"] = rep.frobenius_rel_err;
    std::cout << r.dump() << '\n';
    all_pass = all_pass && rep.pass;
  }
  if (!all_pass) throw ComputeError("decomposition verification failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimal spectral gap of the adiabatic 3-SAT algorithm"};
  app.require_subcommand(1);

  // ---- generate ----
  auto* gen = app.add_subcommand("generate", "generate a 3-SAT instance");
  gen->require_subcommand(1);
  std::string out_path = "instance.cnf";
  int gn = 10, gm = 45, gr = 4;
  double galpha = 4.5;
  std::uint64_t gseed = 1, gmax_tries = 1'000'000;

  auto* gen_random_cmd = gen->add_subcommand("random", "uniform random clauses");
  gen_random_cmd->add_option("--n", gn, "variable count")->required();
  gen_random_cmd->add_option("--m", gm, "clause count")->required();
  gen_random_cmd->add_option("--seed", gseed, "PRNG seed");
  gen_random_cmd->add_option("--out", out_path, "output DIMACS path");

  auto* gen_ss_cmd = gen->add_subcommand(
      "single-solution", "random instances conditioned on d0 = 1");
  gen_ss_cmd->add_option("--n", gn, "variable count")->required();
  gen_ss_cmd->add_option("--alpha", galpha, "clause density m/n");
  gen_ss_cmd->add_option("--seed", gseed, "PRNG seed");
  gen_ss_cmd->add_option("--max-tries", gmax_tries, "rejection cap");
  gen_ss_cmd->add_option("--out", out_path, "output DIMACS path");

  auto* gen_bin_cmd =
      gen->add_subcommand("binomial", "planted ensemble with d_i = 7^i C(r,i)");
  gen_bin_cmd->add_option("--r", gr, "number of variable triples")->required();
  gen_bin_cmd->add_option("--seed", gseed, "seed (draws the planted assignment)");
  gen_bin_cmd->add_option("--out", out_path, "output DIMACS path");

  // ---- spectrum ----
  auto* spec_cmd =
      app.add_subcommand("spectrum", "exact degeneracy spectrum as CSV");
  std::string in_path, spec_out, kernel_name = "auto";
  int threads = default_threads(), n_cap = 34;
  spec_cmd->add_option("--in", in_path, "DIMACS instance")->required();
  spec_cmd->add_option("--out", spec_out, "CSV path (default stdout)");
  spec_cmd->add_option("--threads", threads, "worker threads (0 = auto)");
  spec_cmd->add_option("--n-cap", n_cap, "enumeration cap");
  spec_cmd->add_option("--kernel", kernel_name, "auto|scalar|word64|avx2");

  // ---- gap ----
  auto* gap_cmd = app.add_subcommand("gap", "minimal gap by one or all methods");
  std::string method = "all";
  double t_tol = 1e-10;
  gap_cmd->add_option("--in", in_path, "DIMACS instance")->required();
  gap_cmd->add_option("--method", method, "numeric|parabolic|closed-form|all")
      ->check(CLI::IsMember({"numeric", "parabolic", "closed-form", "all"}));
  gap_cmd->add_option("--t-tol", t_tol, "minimizer tolerance in t");
  gap_cmd->add_option("--threads", threads, "worker threads (0 = auto)");
  gap_cmd->add_option("--n-cap", n_cap, "enumeration cap");

  // ---- flow ----
  auto* flow_cmd =
      app.add_subcommand("flow", "level diagram E_j(t) over a t-grid as CSV");
  double t_lo = 0.01, t_hi = 0.99;
  int points = 99, k_levels = 4;
  flow_cmd->add_option("--in", in_path, "DIMACS instance")->required();
  flow_cmd->add_option("--t-min", t_lo, "grid start");
  flow_cmd->add_option("--t-max", t_hi, "grid end");
  flow_cmd->add_option("--points", points, "grid points");
  flow_cmd->add_option("--k", k_levels, "levels to emit");
  flow_cmd->add_option("--out", spec_out, "CSV path (default stdout)");
  flow_cmd->add_option("--threads", threads, "worker threads (0 = auto)");
  flow_cmd->add_option("--n-cap", n_cap, "enumeration cap");

  // ---- scan ----
  auto* scan_cmd = app.add_subcommand(
      "scan", "gap vs n over an ensemble, numeric and closed-form, as CSV");
  ScanConfig cfg;
  scan_cmd->add_option("--ensemble", cfg.ensemble,
                       "binomial|single-solution|random")
      ->required()
      ->check(CLI::IsMember({"binomial", "single-solution", "random"}));
  scan_cmd->add_option("--r-min", cfg.r_min, "binomial: smallest r");
  scan_cmd->add_option("--r-max", cfg.r_max, "binomial: largest r");
  scan_cmd->add_option("--n-min", cfg.n_min, "smallest n");
  scan_cmd->add_option("--n-max", cfg.n_max, "largest n");
  scan_cmd->add_option("--n-step", cfg.n_step, "n stride");
  scan_cmd->add_option("--per-n", cfg.per_n, "instances per size");
  scan_cmd->add_option("--alpha", cfg.alpha, "clause density");
  scan_cmd->add_option("--seed", cfg.seed, "base seed");
  scan_cmd->add_option("--max-tries", cfg.max_tries, "rejection cap");
  scan_cmd->add_option("--out", cfg.out_path, "CSV path (default stdout)");
  scan_cmd->add_option("--threads", cfg.threads, "parallel rows (0 = auto)");
  scan_cmd->add_option("--n-cap", cfg.n_cap, "enumeration cap");
  cfg.threads = default_threads();

  // ---- verify ----
  auto* verify_cmd = app.add_subcommand(
      "verify", "check the full spectrum against the reduced decomposition");
  std::vector<double> t_list;
  double tol = 1e-9;
  int oracle_cap = 13;
  verify_cmd->add_option("--in", in_path, "DIMACS instance")->required();
  verify_cmd->add_option("--t", t_list, "interpolation times (repeatable)");
  verify_cmd->add_option("--tol", tol, "absolute eigenvalue tolerance");
  verify_cmd->add_option("--n-cap", oracle_cap, "dense oracle cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen_random_cmd->parsed()) {
      save_instance(gen_random(gn, gm, gseed), out_path);
    } else if (gen_ss_cmd->parsed()) {
      save_instance(gen_single_solution(gn, galpha, gseed, gmax_tries),
                    out_path);
    } else if (gen_bin_cmd->parsed()) {
      const int n = 3 * gr;
      if (n > 63) throw ParseError("generate binomial: r <= 21 supported");
      Rng rng(gseed);
      const Assignment planted{rng.next() & ((1ull << n) - 1), n};
      save_instance(gen_binomial(gr, planted, gseed), out_path);
    } else if (spec_cmd->parsed()) {
      const SatInstance inst = load_instance(in_path);
      const SpectrumOptions sopts{threads, n_cap, parse_kernel(kernel_name)};
      const DegeneracySpectrum spec = degeneracy_spectrum(inst, sopts);
      if (spec_out.empty()) {
        write_spectrum_csv(std::cout, spec);
      } else {
        std::ostringstream buf;
        write_spectrum_csv(buf, spec);
        write_file_atomic(spec_out, buf.str());
      }
    } else if (gap_cmd->parsed()) {
      return cmd_gap(in_path, method, t_tol, threads, n_cap);
    } else if (flow_cmd->parsed()) {
      const SatInstance inst = load_instance(in_path);
      const SpectrumOptions sopts{threads, n_cap, Kernel::Auto};
      const DegeneracySpectrum spec = degeneracy_spectrum(inst, sopts);
      const HamiltonianParams params = HamiltonianParams::for_instance(inst);
      std::ostringstream buf;
      write_flow_csv(buf, spec, params, t_lo, t_hi, points, k_levels);
      if (spec_out.empty())
        std::cout << buf.str();
      else
        write_file_atomic(spec_out, buf.str());
    } else if (scan_cmd->parsed()) {
      return cmd_scan(cfg);
    } else if (verify_cmd->parsed()) {
      return cmd_verify(in_path, t_list, tol, oracle_cap);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ComputeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
