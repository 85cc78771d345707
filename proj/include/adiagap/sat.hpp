#ifndef ADIAGAP_SAT_HPP
#define ADIAGAP_SAT_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace adiagap {

struct Literal {
  int var = 0;       // variable index in [0, n)
  bool neg = false;  // true for a negated occurrence

  friend bool operator==(const Literal&, const Literal&) = default;
};

// Exactly three literals over pairwise distinct variables.
struct Clause {
  std::array<Literal, 3> lit;

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct InstanceMeta {
  std::string ensemble;  // "random", "single-solution", "binomial", or "" for parsed files
  std::uint64_t seed = 0;
  std::uint64_t rejections = 0;

  friend bool operator==(const InstanceMeta&, const InstanceMeta&) = default;
};

struct SatInstance {
  int n = 0;  // variable count
  std::vector<Clause> clauses;
  InstanceMeta meta;

  int m() const { return static_cast<int>(clauses.size()); }
  double alpha() const { return static_cast<double>(m()) / n; }

  friend bool operator==(const SatInstance& a, const SatInstance& b) {
    return a.n == b.n && a.clauses == b.clauses;
  }
};

// Truth assignment, bit v = value of variable v. Supports n <= 64, far above
// the exhaustive-enumeration cap.
struct Assignment {
  std::uint64_t bits = 0;
  int n = 0;

  bool value(int var) const { return (bits >> var) & 1u; }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Throws ParseError if any clause has a repeated variable, an index outside
// [0, n), or if n < 3 or m < 1.
void validate(const SatInstance& inst);

// DIMACS CNF. Every clause must have exactly three literals; 'c' comment
// lines are skipped. Clause and literal order are preserved.
SatInstance parse_dimacs(std::istream& in);
SatInstance parse_dimacs(const std::string& text);
std::string emit_dimacs(const SatInstance& inst);

// Sidecar metadata, line-oriented key=value block.
std::string emit_metadata(const InstanceMeta& meta);
InstanceMeta parse_metadata(std::istream& in);

// m clauses drawn independently and uniformly: 3 distinct variables without
// replacement, each literal negated with probability 1/2. Per clause the
// generator consumes three bounded draws for the variables and one raw word
// whose low three bits are the negation flags.
SatInstance gen_random(int n, int m, std::uint64_t seed);

// Rejection sampling from gen_random's distribution until the instance has
// exactly one satisfying assignment (d0 = 1). All draws come from one stream
// seeded once with `seed`; the number of rejected instances is recorded in
// the metadata. Throws ComputeError after max_tries rejections.
SatInstance gen_single_solution(int n, double alpha, std::uint64_t seed,
                                std::uint64_t max_tries);

// Binomial 3-SAT: n = 3r variables split into triples; per triple the 7
// clauses whose forbidden pattern differs from `planted` restricted to the
// triple. The planted assignment is the unique solution, m = 7r. The
// construction is deterministic; `seed` is only recorded in the metadata.
SatInstance gen_binomial(int r, const Assignment& planted, std::uint64_t seed);

// Clause over three distinct variables that is violated exactly when the
// variables take the given forbidden values (a literal is positive when the
// forbidden pattern sets its variable false).
Clause clause_from_forbidden(int v0, int v1, int v2, bool f0, bool f1, bool f2);

}  // namespace adiagap

#endif  // ADIAGAP_SAT_HPP
