#include "adiagap/kernels.hpp"

namespace adiagap::kernels {

// Reference kernel: walks assignments one at a time and tests every literal.
// Slow on purpose; the vector kernels are checked against it bit for bit.
void accumulate_scalar(const CompiledInstance& ci, std::uint64_t first,
                       std::uint64_t last, std::span<std::uint64_t> hist) {
  for (std::uint64_t block = first; block < last; ++block) {
    for (int lane = 0; lane < ci.lanes; ++lane) {
      const std::uint64_t bits = (block << 6) | static_cast<unsigned>(lane);
      unsigned violated = 0;
      for (const PackedClause& pc : ci.packed) {
        bool all_false = true;
        for (int i = 0; i < 3; ++i) {
          const bool value = (bits >> pc.var[i]) & 1u;
          const bool neg = (pc.neg_bits >> i) & 1u;
          // literal true iff value != neg
          if (value != neg) {
            all_false = false;
            break;
          }
        }
        if (all_false) ++violated;
      }
      ++hist[violated];
    }
  }
}

}  // namespace adiagap::kernels
