#ifndef ADIAGAP_TESTS_HELPERS_HPP
#define ADIAGAP_TESTS_HELPERS_HPP

#include <cstdint>

#include "adiagap/sat.hpp"
#include "adiagap/spectrum.hpp"

namespace testutil {

// All 8 clauses over one triple: unsatisfiable, every assignment violates
// exactly one clause.
inline adiagap::SatInstance unsat_all_eight() {
  adiagap::SatInstance inst;
  inst.n = 3;
  for (unsigned pat = 0; pat < 8; ++pat)
    inst.clauses.push_back(adiagap::clause_from_forbidden(
        0, 1, 2, (pat & 1) != 0, (pat & 2) != 0, (pat & 4) != 0));
  return inst;
}

// Binomial-style triple constraint embedded in a larger variable set: the 7
// clauses over variables {0,1,2} that leave planted bits 000 as the only
// allowed pattern, with n - 3 free variables.
inline adiagap::SatInstance one_triple_free_rest(int n) {
  adiagap::SatInstance inst;
  inst.n = n;
  for (unsigned pat = 1; pat < 8; ++pat)
    inst.clauses.push_back(adiagap::clause_from_forbidden(
        0, 1, 2, (pat & 1) != 0, (pat & 2) != 0, (pat & 4) != 0));
  return inst;
}

inline adiagap::Assignment zeros(int n) { return adiagap::Assignment{0, n}; }

inline adiagap::SatInstance binomial(int r, std::uint64_t planted_bits = 0,
                                     std::uint64_t seed = 0) {
  return adiagap::gen_binomial(r, adiagap::Assignment{planted_bits, 3 * r},
                               seed);
}

inline std::uint64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::uint64_t pow7(int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= 7;
  return r;
}

}  // namespace testutil

#endif  // ADIAGAP_TESTS_HELPERS_HPP
