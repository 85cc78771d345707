#ifndef ADIAGAP_ORACLE_HPP
#define ADIAGAP_ORACLE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "adiagap/reduced.hpp"
#include "adiagap/spectrum.hpp"

namespace adiagap {

// Dense H(t) = (1-t) H(0) + t H(1) in the computational basis. Deliberately
// simple and slow: brute-force ground truth for the symmetric-subspace
// reduction.
struct FullHamiltonian {
  int n = 0;
  std::size_t dim = 0;          // N = 2^n
  std::vector<double> a;        // row-major dim x dim, symmetric

  double& at(std::size_t i, std::size_t k) { return a[i * dim + k]; }
  double at(std::size_t i, std::size_t k) const { return a[i * dim + k]; }
  double trace() const;
  double frobenius_sq() const;
};

struct OracleOptions {
  int n_cap = 13;  // dense 8192^2 ceiling by default
};

// Entry (i,k) = (1-t) b (delta_ik - 1/N) + t a violations(i) delta_ik.
FullHamiltonian build_full(const SatInstance& inst,
                           const HamiltonianParams& params, double t,
                           const OracleOptions& opts = {});

// All eigenvalues sorted ascending; Householder tridiagonalization followed
// by implicit-shift QL. Throws ComputeError on non-convergence.
std::vector<double> full_spectrum(const FullHamiltonian& h);

// Cyclic Jacobi rotations; second in-repo route used to cross-check the
// tridiagonal path at small dimensions.
std::vector<double> jacobi_eigenvalues(std::vector<double> mat,
                                       std::size_t dim);

struct LevelCheck {
  int level = 0;         // j
  double eps = 0;        // (1-t) b + j a t
  std::uint64_t expected = 0;  // d_j - 1
  std::uint64_t found = 0;
  double worst_err = 0;
};

struct DecompositionReport {
  bool pass = false;
  double t = 0;
  double tol = 0;
  double worst_abs_err = 0;        // sorted multiset comparison
  std::size_t worst_index = 0;
  double secular_worst_err = 0;    // symmetric-sector residuals
  double trace_rel_err = 0;
  double frobenius_rel_err = 0;
  std::vector<LevelCheck> antisymmetric;

  std::string summary() const;  // human-readable block
};

// Checks that the full dense spectrum equals {secular eigenvalues} union
// {eps_j with multiplicity d_j - 1}, plus trace/Frobenius conservation.
DecompositionReport verify_decomposition(const SatInstance& inst,
                                         const HamiltonianParams& params,
                                         double t, double tol,
                                         const OracleOptions& opts = {});

// Same check against a caller-supplied spectrum (lets tests feed corrupted
// degeneracies as a negative control).
DecompositionReport verify_decomposition(const SatInstance& inst,
                                         const HamiltonianParams& params,
                                         const DegeneracySpectrum& spec,
                                         double t, double tol,
                                         const OracleOptions& opts = {});

}  // namespace adiagap

#endif  // ADIAGAP_ORACLE_HPP
