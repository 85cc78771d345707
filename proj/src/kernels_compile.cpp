#include <stdexcept>

#include "adiagap/kernels.hpp"

namespace adiagap::kernels {

std::uint64_t low_var_pattern(int v) {
  // bit k of the pattern = value of variable v in assignment (block*64 + k)
  static constexpr std::uint64_t pat[6] = {
      0xaaaaaaaaaaaaaaaaull, 0xccccccccccccccccull, 0xf0f0f0f0f0f0f0f0ull,
      0xff00ff00ff00ff00ull, 0xffff0000ffff0000ull, 0xffffffff00000000ull};
  return pat[v];
}

CompiledInstance compile(const SatInstance& inst) {
  CompiledInstance ci;
  ci.n = inst.n;
  ci.m = inst.m();
  if (inst.n >= 6) {
    ci.block_count = 1ull << (inst.n - 6);
    ci.lane_mask = ~0ull;
    ci.lanes = 64;
  } else {
    ci.block_count = 1;
    ci.lanes = 1 << inst.n;
    ci.lane_mask = (1ull << ci.lanes) - 1;
  }
  ci.masks.reserve(inst.clauses.size());
  ci.packed.reserve(inst.clauses.size());
  for (const Clause& cl : inst.clauses) {
    ClauseMask cm;
    cm.low_mask = ci.lane_mask;
    PackedClause pc{};
    pc.neg_bits = 0;
    for (int i = 0; i < 3; ++i) {
      const Literal& l = cl.lit[i];
      pc.var[i] = static_cast<std::uint8_t>(l.var);
      if (l.neg) pc.neg_bits |= static_cast<std::uint8_t>(1u << i);
      // the clause is violated where every literal is false: a positive
      // literal is false where the variable is 0, a negative one where it is 1
      if (l.var < 6) {
        const std::uint64_t value = low_var_pattern(l.var);
        cm.low_mask &= l.neg ? value : ~value;
      } else {
        cm.hi_select |= 1ull << (l.var - 6);
        if (l.neg) cm.hi_want |= 1ull << (l.var - 6);
      }
    }
    ci.masks.push_back(cm);
    ci.packed.push_back(pc);
  }
  return ci;
}

}  // namespace adiagap::kernels
