#ifndef ADIAGAP_SPECTRUM_HPP
#define ADIAGAP_SPECTRUM_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "adiagap/sat.hpp"

namespace adiagap {

// Exact integer histogram d_j = number of assignments violating exactly j
// clauses, j = 0..D with d_D > 0 (trailing zeros trimmed, interior zeros
// kept). Satisfies sum d_j = 2^n and sum j*d_j = m*2^n/8 exactly.
struct DegeneracySpectrum {
  int n = 0;
  int m = 0;
  std::vector<std::uint64_t> d;

  int max_violations() const { return static_cast<int>(d.size()) - 1; }
  std::uint64_t total() const;         // sum d_j
  std::uint64_t weighted_total() const;  // sum j*d_j
};

enum class Kernel { Auto, Scalar, Word64, Avx2 };

struct SpectrumOptions {
  int threads = 0;      // 0 = hardware concurrency
  int n_cap = 34;       // enumeration refuses above this
  Kernel kernel = Kernel::Auto;
};

// Number of clauses whose forbidden pattern matches the assignment; each
// duplicate clause counts separately. Throws std::invalid_argument on a
// length mismatch.
int violation_count(const SatInstance& inst, const Assignment& a);

// Exhaustive enumeration of all 2^n assignments. Deterministic and
// bit-identical for every thread count and kernel choice. Throws
// ComputeError when n exceeds opts.n_cap.
DegeneracySpectrum degeneracy_spectrum(const SatInstance& inst,
                                       const SpectrumOptions& opts = {});

// d_0 without building the histogram.
std::uint64_t solution_count(const SatInstance& inst,
                             const SpectrumOptions& opts = {});

// Early-exit variant: returns the exact count when it is <= cap and cap+1 as
// soon as the count provably exceeds cap. The return value is deterministic.
std::uint64_t solution_count_capped(const SatInstance& inst, std::uint64_t cap,
                                    const SpectrumOptions& opts = {});

bool kernel_available(Kernel k);
Kernel resolve_kernel(Kernel requested, int n);

// CSV rows "j,d_j", exact integers.
void write_spectrum_csv(std::ostream& out, const DegeneracySpectrum& spec);

}  // namespace adiagap

#endif  // ADIAGAP_SPECTRUM_HPP
