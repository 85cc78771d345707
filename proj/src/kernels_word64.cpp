#include <bit>

#include "adiagap/kernels.hpp"

namespace adiagap::kernels {

namespace {

// Bit-sliced counters: plane p holds bit p of the per-lane violation count.
// Adding a clause's violated-lane mask is a ripple-carry increment, amortized
// O(1) word ops per clause.
constexpr int kMaxPlanes = 24;  // counts up to 2^24-1 violated clauses

struct SlicedCounter {
  std::uint64_t plane[kMaxPlanes];
  int planes;

  void reset(int p) {
    planes = p;
    for (int i = 0; i < p; ++i) plane[i] = 0;
  }
  void add(std::uint64_t mask) {
    std::uint64_t carry = mask;
    for (int p = 0; carry != 0 && p < planes; ++p) {
      const std::uint64_t t = plane[p] & carry;
      plane[p] ^= carry;
      carry = t;
    }
  }
  unsigned lane_count(int lane) const {
    unsigned c = 0;
    for (int p = 0; p < planes; ++p)
      c |= static_cast<unsigned>((plane[p] >> lane) & 1u) << p;
    return c;
  }
};

int planes_for(int m) {
  return std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(m))));
}

}  // namespace

void accumulate_word64(const CompiledInstance& ci, std::uint64_t first,
                       std::uint64_t last, std::span<std::uint64_t> hist) {
  SlicedCounter ctr;
  const int planes = planes_for(ci.m);
  for (std::uint64_t block = first; block < last; ++block) {
    ctr.reset(planes);
    for (const ClauseMask& cm : ci.masks) {
      if ((block & cm.hi_select) == cm.hi_want) ctr.add(cm.low_mask);
    }
    for (int lane = 0; lane < ci.lanes; ++lane) ++hist[ctr.lane_count(lane)];
  }
}

std::uint64_t count_solutions_word64(const CompiledInstance& ci,
                                     std::uint64_t first, std::uint64_t last) {
  std::uint64_t count = 0;
  for (std::uint64_t block = first; block < last; ++block) {
    std::uint64_t violated = 0;
    for (const ClauseMask& cm : ci.masks) {
      if ((block & cm.hi_select) == cm.hi_want) {
        violated |= cm.low_mask;
        if (violated == ci.lane_mask) break;  // block fully excluded
      }
    }
    count += std::popcount(ci.lane_mask & ~violated);
  }
  return count;
}

}  // namespace adiagap::kernels
