#ifndef ADIAGAP_KERNELS_HPP
#define ADIAGAP_KERNELS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "adiagap/sat.hpp"

namespace adiagap::kernels {

// Enumeration works in blocks of 64 assignments: bit k of a block word is
// assignment index block*64 + k. Variables 0..5 have fixed 64-bit truth
// patterns inside a block; variable v >= 6 is constant across a block and
// equals bit (v-6) of the block index.
//
// Per clause the three literal-false conditions split into a 64-bit lane mask
// (variables < 6) and a block-index condition (variables >= 6): the clause is
// violated on lanes low_mask of every block b with (b & hi_select) == hi_want,
// and nowhere else.
struct ClauseMask {
  std::uint64_t low_mask = 0;
  std::uint64_t hi_select = 0;
  std::uint64_t hi_want = 0;
};

struct PackedClause {
  std::array<std::uint8_t, 3> var;
  std::uint8_t neg_bits;  // bit i set when literal i is negated
};

struct CompiledInstance {
  int n = 0;
  int m = 0;
  std::uint64_t block_count = 0;   // 2^max(n-6, 0)
  std::uint64_t lane_mask = ~0ull; // valid lanes of a block (partial when n < 6)
  int lanes = 64;
  std::vector<ClauseMask> masks;
  std::vector<PackedClause> packed;  // scalar-kernel form
};

CompiledInstance compile(const SatInstance& inst);

// Fixed within-block truth pattern of variable v < 6.
std::uint64_t low_var_pattern(int v);

// All kernels add the violation-count histogram of assignments in blocks
// [first, last) into hist (length m+1). They are interchangeable; the scalar
// kernel is the one-assignment-at-a-time reference the vector kernels are
// equivalence-tested against.
void accumulate_scalar(const CompiledInstance& ci, std::uint64_t first,
                       std::uint64_t last, std::span<std::uint64_t> hist);
void accumulate_word64(const CompiledInstance& ci, std::uint64_t first,
                       std::uint64_t last, std::span<std::uint64_t> hist);
#if defined(ADIAGAP_AVX2_BUILT)
void accumulate_avx2(const CompiledInstance& ci, std::uint64_t first,
                     std::uint64_t last, std::span<std::uint64_t> hist);
#endif

// Number of satisfying assignments in blocks [first, last); used by the
// early-exit solution counter, which does not need the full histogram.
std::uint64_t count_solutions_word64(const CompiledInstance& ci,
                                     std::uint64_t first, std::uint64_t last);

bool cpu_has_avx2();

}  // namespace adiagap::kernels

#endif  // ADIAGAP_KERNELS_HPP
