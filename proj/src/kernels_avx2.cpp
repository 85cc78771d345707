#include <immintrin.h>

#include <bit>
#include <vector>

#include "adiagap/kernels.hpp"

namespace adiagap::kernels {

namespace {

constexpr int kMaxPlanes = 24;

// 256-bit lanes cover four consecutive 64-assignment blocks, so variables 6
// and 7 become fixed per-word selectors and only variables >= 8 depend on the
// superblock index.
struct Avx2Clause {
  __m256i pattern;
  std::uint64_t super_select;
  std::uint64_t super_want;
};

struct SlicedCounter256 {
  __m256i plane[kMaxPlanes];
  int planes;

  void reset(int p) {
    planes = p;
    const __m256i zero = _mm256_setzero_si256();
    for (int i = 0; i < p; ++i) plane[i] = zero;
  }
  inline void add(__m256i mask) {
    __m256i carry = mask;
    for (int p = 0; p < planes; ++p) {
      if (_mm256_testz_si256(carry, carry)) break;
      const __m256i t = _mm256_and_si256(plane[p], carry);
      plane[p] = _mm256_xor_si256(plane[p], carry);
      carry = t;
    }
  }
};

std::vector<Avx2Clause> build_avx2_clauses(const CompiledInstance& ci) {
  std::vector<Avx2Clause> out;
  out.reserve(ci.masks.size());
  for (const ClauseMask& cm : ci.masks) {
    const std::uint64_t lane_select = cm.hi_select & 3u;
    const std::uint64_t lane_want = cm.hi_want & 3u;
    std::uint64_t w[4];
    for (std::uint64_t l = 0; l < 4; ++l)
      w[l] = ((l & lane_select) == lane_want) ? cm.low_mask : 0;
    Avx2Clause ac;
    ac.pattern = _mm256_set_epi64x(static_cast<long long>(w[3]),
                                   static_cast<long long>(w[2]),
                                   static_cast<long long>(w[1]),
                                   static_cast<long long>(w[0]));
    ac.super_select = cm.hi_select >> 2;
    ac.super_want = cm.hi_want >> 2;
    out.push_back(ac);
  }
  return out;
}

}  // namespace

void accumulate_avx2(const CompiledInstance& ci, std::uint64_t first,
                     std::uint64_t last, std::span<std::uint64_t> hist) {
  if (ci.n < 8) {  // no full superblock: vars 6/7 are not lane selectors
    accumulate_word64(ci, first, last, hist);
    return;
  }
  // ragged edges of the block range go through the word64 path
  const std::uint64_t aligned_first = (first + 3) & ~3ull;
  const std::uint64_t aligned_last = last & ~3ull;
  if (aligned_first >= aligned_last) {
    accumulate_word64(ci, first, last, hist);
    return;
  }
  if (first < aligned_first) accumulate_word64(ci, first, aligned_first, hist);
  if (aligned_last < last) accumulate_word64(ci, aligned_last, last, hist);

  const std::vector<Avx2Clause> clauses = build_avx2_clauses(ci);
  const int planes =
      std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(ci.m))));
  SlicedCounter256 ctr;
  alignas(32) std::uint64_t buf[kMaxPlanes][4];

  for (std::uint64_t sb = aligned_first >> 2; sb < (aligned_last >> 2); ++sb) {
    ctr.reset(planes);
    for (const Avx2Clause& ac : clauses) {
      if ((sb & ac.super_select) == ac.super_want) ctr.add(ac.pattern);
    }
    for (int p = 0; p < planes; ++p)
      _mm256_store_si256(reinterpret_cast<__m256i*>(buf[p]), ctr.plane[p]);
    for (int w = 0; w < 4; ++w) {
      for (int k = 0; k < 64; ++k) {
        unsigned c = 0;
        for (int p = 0; p < planes; ++p)
          c |= static_cast<unsigned>((buf[p][w] >> k) & 1u) << p;
        ++hist[c];
      }
    }
  }
}

}  // namespace adiagap::kernels
