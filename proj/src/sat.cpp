#include "adiagap/sat.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <string>

#include "adiagap/errors.hpp"
#include "adiagap/rng.hpp"
#include "adiagap/spectrum.hpp"

namespace adiagap {

void validate(const SatInstance& inst) {
  if (inst.n < 3) throw ParseError("instance needs n >= 3 variables");
  if (inst.clauses.empty()) throw ParseError("instance needs m >= 1 clauses");
  for (std::size_t c = 0; c < inst.clauses.size(); ++c) {
    const Clause& cl = inst.clauses[c];
    for (int i = 0; i < 3; ++i) {
      const int v = cl.lit[i].var;
      if (v < 0 || v >= inst.n)
        throw ParseError("clause " + std::to_string(c + 1) +
                         ": variable index out of range");
      for (int k = i + 1; k < 3; ++k)
        if (v == cl.lit[k].var)
          throw ParseError("clause " + std::to_string(c + 1) +
                           ": repeated variable");
    }
  }
}

SatInstance parse_dimacs(std::istream& in) {
  SatInstance inst;
  std::string line;
  bool header_seen = false;
  int declared_m = 0;
  std::vector<int> lits;

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == 'c') continue;
    if (line[0] == 'p') {
      if (header_seen) throw ParseError("duplicate DIMACS header");
      std::istringstream hs(line);
      std::string p, fmt;
      if (!(hs >> p >> fmt >> inst.n >> declared_m) || fmt != "cnf")
        throw ParseError("malformed DIMACS header: " + line);
      if (inst.n < 1 || declared_m < 1)
        throw ParseError("malformed DIMACS header: nonpositive n or m");
      header_seen = true;
      continue;
    }
    if (!header_seen) throw ParseError("clause data before DIMACS header");
    std::istringstream ls(line);
    int v;
    while (ls >> v) {
      if (v == 0) {
        if (lits.size() != 3)
          throw ParseError("clause of length " + std::to_string(lits.size()) +
                           " (exactly 3 literals required)");
        Clause cl;
        for (int i = 0; i < 3; ++i)
          cl.lit[i] = Literal{std::abs(lits[i]) - 1, lits[i] < 0};
        inst.clauses.push_back(cl);
        lits.clear();
      } else {
        lits.push_back(v);
      }
    }
    if (!ls.eof()) throw ParseError("non-integer token in clause data");
  }
  if (!header_seen) throw ParseError("missing DIMACS header");
  if (!lits.empty()) throw ParseError("unterminated clause at end of input");
  if (inst.m() != declared_m)
    throw ParseError("header declares " + std::to_string(declared_m) +
                     " clauses, found " + std::to_string(inst.m()));
  validate(inst);
  return inst;
}

SatInstance parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

std::string emit_dimacs(const SatInstance& inst) {
  validate(inst);
  std::ostringstream out;
  out << "p cnf " << inst.n << ' ' << inst.m() << '\n';
  for (const Clause& cl : inst.clauses) {
    for (int i = 0; i < 3; ++i) {
      const Literal& l = cl.lit[i];
      out << (l.neg ? -(l.var + 1) : (l.var + 1)) << ' ';
    }
    out << "0\n";
  }
  return out.str();
}

std::string emit_metadata(const InstanceMeta& meta) {
  std::ostringstream out;
  out << "ensemble=" << meta.ensemble << '\n'
      << "seed=" << meta.seed << '\n'
      << "rejections=" << meta.rejections << '\n';
  return out.str();
}

InstanceMeta parse_metadata(std::istream& in) {
  InstanceMeta meta;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("metadata line without '=': " + line);
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    if (key == "ensemble")
      meta.ensemble = val;
    else if (key == "seed")
      meta.seed = std::stoull(val);
    else if (key == "rejections")
      meta.rejections = std::stoull(val);
    // unknown keys ignored
  }
  return meta;
}

Clause clause_from_forbidden(int v0, int v1, int v2, bool f0, bool f1,
                             bool f2) {
  return Clause{{Literal{v0, f0}, Literal{v1, f1}, Literal{v2, f2}}};
}

namespace {

Clause draw_clause(int n, Rng& rng) {
  const int v0 = static_cast<int>(rng.below(n));
  int v1 = static_cast<int>(rng.below(n - 1));
  if (v1 >= v0) ++v1;
  const int lo = std::min(v0, v1), hi = std::max(v0, v1);
  int v2 = static_cast<int>(rng.below(n - 2));
  if (v2 >= lo) ++v2;
  if (v2 >= hi) ++v2;
  const std::uint64_t negs = rng.next();
  return Clause{{Literal{v0, (negs & 1) != 0}, Literal{v1, (negs & 2) != 0},
                 Literal{v2, (negs & 4) != 0}}};
}

SatInstance draw_instance(int n, int m, Rng& rng) {
  SatInstance inst;
  inst.n = n;
  inst.clauses.reserve(m);
  for (int c = 0; c < m; ++c) inst.clauses.push_back(draw_clause(n, rng));
  return inst;
}

}  // namespace

SatInstance gen_random(int n, int m, std::uint64_t seed) {
  if (n < 3) throw ParseError("gen_random: n >= 3 required");
  if (m < 1) throw ParseError("gen_random: m >= 1 required");
  Rng rng(seed);
  SatInstance inst = draw_instance(n, m, rng);
  inst.meta = InstanceMeta{"random", seed, 0};
  return inst;
}

SatInstance gen_single_solution(int n, double alpha, std::uint64_t seed,
                                std::uint64_t max_tries) {
  const int m = static_cast<int>(std::llround(alpha * n));
  if (m < 1) throw ParseError("gen_single_solution: round(alpha*n) >= 1 required");
  Rng rng(seed);
  for (std::uint64_t tries = 0; tries < max_tries; ++tries) {
    SatInstance inst = draw_instance(n, m, rng);
    if (solution_count_capped(inst, 1) == 1) {
      inst.meta = InstanceMeta{"single-solution", seed, tries};
      return inst;
    }
  }
  throw ComputeError("gen_single_solution: no d0=1 instance in " +
                     std::to_string(max_tries) +
                     " tries (alpha too far from threshold or n too small)");
}

SatInstance gen_binomial(int r, const Assignment& planted,
                         std::uint64_t seed) {
  if (r < 1) throw ParseError("gen_binomial: r >= 1 required");
  if (planted.n != 3 * r)
    throw ParseError("gen_binomial: planted assignment must have length 3r");
  SatInstance inst;
  inst.n = 3 * r;
  inst.clauses.reserve(7 * r);
  for (int k = 0; k < r; ++k) {
    const int v0 = 3 * k, v1 = 3 * k + 1, v2 = 3 * k + 2;
    const unsigned p = (planted.value(v0) ? 1u : 0u) |
                       (planted.value(v1) ? 2u : 0u) |
                       (planted.value(v2) ? 4u : 0u);
    for (unsigned pat = 0; pat < 8; ++pat) {
      if (pat == p) continue;
      inst.clauses.push_back(clause_from_forbidden(
          v0, v1, v2, (pat & 1) != 0, (pat & 2) != 0, (pat & 4) != 0));
    }
  }
  inst.meta = InstanceMeta{"binomial", seed, 0};
  return inst;
}

}  // namespace adiagap
