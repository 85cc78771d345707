#include "adiagap/spectrum.hpp"

#include <atomic>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "adiagap/errors.hpp"
#include "adiagap/kernels.hpp"

namespace adiagap {

std::uint64_t DegeneracySpectrum::total() const {
  std::uint64_t s = 0;
  for (std::uint64_t x : d) s += x;
  return s;
}

std::uint64_t DegeneracySpectrum::weighted_total() const {
  std::uint64_t s = 0;
  for (std::size_t j = 0; j < d.size(); ++j) s += j * d[j];
  return s;
}

int violation_count(const SatInstance& inst, const Assignment& a) {
  if (a.n != inst.n)
    throw std::invalid_argument("violation_count: assignment length " +
                                std::to_string(a.n) + " != n = " +
                                std::to_string(inst.n));
  int violated = 0;
  for (const Clause& cl : inst.clauses) {
    bool all_false = true;
    for (const Literal& l : cl.lit) {
      if (a.value(l.var) != l.neg) {
        all_false = false;
        break;
      }
    }
    if (all_false) ++violated;
  }
  return violated;
}

bool kernel_available(Kernel k) {
  switch (k) {
    case Kernel::Avx2:
      return kernels::cpu_has_avx2();
    default:
      return true;
  }
}

Kernel resolve_kernel(Kernel requested, int n) {
  if (requested == Kernel::Auto)
    requested = kernels::cpu_has_avx2() && n >= 8 ? Kernel::Avx2 : Kernel::Word64;
  if (requested == Kernel::Avx2 && !kernel_available(Kernel::Avx2))
    throw ComputeError("AVX2 kernel requested but not available on this CPU");
  return requested;
}

namespace {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void check_cap(const SatInstance& inst, const SpectrumOptions& opts) {
  validate(inst);
  if (inst.n > opts.n_cap)
    throw ComputeError("degeneracy_spectrum: n = " + std::to_string(inst.n) +
                       " exceeds enumeration cap " + std::to_string(opts.n_cap));
}

using AccumulateFn = void (*)(const kernels::CompiledInstance&, std::uint64_t,
                              std::uint64_t, std::span<std::uint64_t>);

AccumulateFn accumulate_fn(Kernel k) {
  switch (k) {
    case Kernel::Scalar:
      return kernels::accumulate_scalar;
#if defined(ADIAGAP_AVX2_BUILT)
    case Kernel::Avx2:
      return kernels::accumulate_avx2;
#endif
    default:
      return kernels::accumulate_word64;
  }
}

// Contiguous deterministic partition of [0, blocks) into `threads` ranges.
std::pair<std::uint64_t, std::uint64_t> chunk(std::uint64_t blocks, int threads,
                                              int i) {
  const std::uint64_t lo = blocks * static_cast<std::uint64_t>(i) / threads;
  const std::uint64_t hi =
      blocks * static_cast<std::uint64_t>(i + 1) / threads;
  return {lo, hi};
}

}  // namespace

DegeneracySpectrum degeneracy_spectrum(const SatInstance& inst,
                                       const SpectrumOptions& opts) {
  check_cap(inst, opts);
  const kernels::CompiledInstance ci = kernels::compile(inst);
  const Kernel kernel = resolve_kernel(opts.kernel, inst.n);
  const AccumulateFn fn = accumulate_fn(kernel);
  const int threads =
      static_cast<int>(std::min<std::uint64_t>(resolve_threads(opts.threads),
                                               ci.block_count));

  // Per-worker private histograms merged by integer addition; the merge is
  // associative and commutative, so the result cannot depend on scheduling.
  std::vector<std::vector<std::uint64_t>> hists(
      threads, std::vector<std::uint64_t>(inst.m() + 1, 0));
  if (threads == 1) {
    fn(ci, 0, ci.block_count, hists[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) {
      const auto [lo, hi] = chunk(ci.block_count, threads, i);
      pool.emplace_back([&, i, lo = lo, hi = hi] { fn(ci, lo, hi, hists[i]); });
    }
    for (std::thread& th : pool) th.join();
  }
  std::vector<std::uint64_t> d(inst.m() + 1, 0);
  for (const auto& h : hists)
    for (std::size_t j = 0; j < d.size(); ++j) d[j] += h[j];
  while (d.size() > 1 && d.back() == 0) d.pop_back();

  DegeneracySpectrum spec{inst.n, inst.m(), std::move(d)};
  // exact identities; a violation here is a kernel bug, not bad input
  const std::uint64_t N = 1ull << inst.n;
  if (spec.total() != N || spec.weighted_total() != inst.m() * (N >> 3))
    throw std::logic_error("degeneracy_spectrum: integer identity violated");
  return spec;
}

std::uint64_t solution_count_capped(const SatInstance& inst, std::uint64_t cap,
                                    const SpectrumOptions& opts) {
  check_cap(inst, opts);
  const kernels::CompiledInstance ci = kernels::compile(inst);
  const int threads =
      static_cast<int>(std::min<std::uint64_t>(resolve_threads(opts.threads),
                                               ci.block_count));

  // Found counts only ever grow, so "exceeds cap" is a monotone property:
  // every schedule either completes the scan (count <= cap, exact) or
  // observes the excess (returns cap+1). Either way the result is unique.
  std::atomic<std::uint64_t> found{0};
  std::atomic<bool> over{false};
  constexpr std::uint64_t kStride = 4096;  // blocks between shared updates

  auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t local = 0;
    for (std::uint64_t at = lo; at < hi; at += kStride) {
      if (over.load(std::memory_order_relaxed)) return;
      const std::uint64_t end = std::min(hi, at + kStride);
      local += kernels::count_solutions_word64(ci, at, end);
      if (local > 0) {
        const std::uint64_t seen =
            found.fetch_add(local, std::memory_order_relaxed) + local;
        local = 0;
        if (seen > cap) {
          over.store(true, std::memory_order_relaxed);
          return;
        }
      }
    }
  };

  if (threads == 1) {
    worker(0, ci.block_count);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) {
      const auto [lo, hi] = chunk(ci.block_count, threads, i);
      pool.emplace_back(worker, lo, hi);
    }
    for (std::thread& th : pool) th.join();
  }
  const std::uint64_t total = found.load();
  return total > cap ? cap + 1 : total;
}

std::uint64_t solution_count(const SatInstance& inst,
                             const SpectrumOptions& opts) {
  return solution_count_capped(inst, ~0ull - 1, opts);
}

void write_spectrum_csv(std::ostream& out, const DegeneracySpectrum& spec) {
  out << "j,d_j\n";
  for (std::size_t j = 0; j < spec.d.size(); ++j)
    out << j << ',' << spec.d[j] << '\n';
}

}  // namespace adiagap
