#ifndef ADIAGAP_ANALYTIC_HPP
#define ADIAGAP_ANALYTIC_HPP

#include <utility>

#include "adiagap/reduced.hpp"
#include "adiagap/spectrum.hpp"

namespace adiagap {

// Moments of the normalized degeneracy distribution w_j = d_j/N. gamma equals
// m/8 exactly (trace identity); hD and gD run over the level indices present
// in the spectrum only, which coincides with 1..D whenever no d_j vanishes.
struct MomentSet {
  double gamma = 0;   // sum j w_j
  double gamma2 = 0;  // sum j^2 w_j
  double sigma = 0;   // sqrt(gamma2 - gamma^2)
  double gm1 = 0;     // sum_{j>=1} w_j / j
  double gm2 = 0;     // sum_{j>=1} w_j / j^2
  double hD = 0;      // sum_{j in J, j>=1} 1/j
  double gD = 0;      // sum_{j in J, j>=1} 1/j^2
};

MomentSet moments(const DegeneracySpectrum& spec,
                  const HamiltonianParams& params);

// t_min ~= gamma*gm1 / (1 + gamma*gm1); error O(d0/N).
double tmin_closed_form(const MomentSet& mom);

struct ClosedFormGap {
  GapResult gap;         // canonical value, prefactor n/2 as in the paper
  double f = 0;          // 2/(1+gamma*gm1) * sqrt(gm1^2/gm2)
  double delta_exact_b = 0;  // same f with the exact prefactor b instead of n/2
};

// Delta = (n sqrt(d0) / (2 sqrt(N))) * f. Throws ComputeError when d0 = 0.
ClosedFormGap gap_closed_form(const MomentSet& mom,
                              const HamiltonianParams& params,
                              std::uint64_t d0);

// Characteristic polynomial and its first two lambda-derivatives along the
// line lambda = eps_0 = (1-t) b, each in its own (at)^k D! normalization, all
// d0/N terms retained.
struct DerivativeLine {
  double p = 0;    // p(eps_0,t) / ((at)^D D!)
  double dp = 0;   // p' / ((at)^{D-1} D!)
  double d2p = 0;  // p'' / ((at)^{D-2} D!)
};

DerivativeLine derivative_line_values(const MomentSet& mom,
                                      const HamiltonianParams& params,
                                      std::uint64_t d0, double t);

struct ParabolicGap {
  GapResult gap;
  double f = 0;             // delta rescaled by 2 sqrt(N) / (n sqrt(d0))
  double discriminant = 0;  // dp^2 - 2 p d2p at t_min
};

// Solves dp = 0 for t_min exactly (d0/N terms included), fits the parabola
// q(y) = p + dp*y + d2p*y^2/2 in y = lambda - eps_0 and returns the root
// separation. Throws ComputeError when the discriminant is negative (the
// crossing is not isolated). with_d0_terms = false drops the d0/N corrections,
// reproducing the closed-form algebra exactly with the exact b and b/a.
ParabolicGap parabolic_gap(const MomentSet& mom,
                           const HamiltonianParams& params, std::uint64_t d0,
                           bool with_d0_terms = true);

// Terminating hypergeometric series for the binomial ensemble,
// gm1 = sum_{i=1..r} 7^i C(r,i)/i / 8^r and likewise with 1/i^2: the series
// is summed with exact term recurrences and compensated accumulation, and the
// final 8^-r scaling is an exact exponent shift.
std::pair<double, double> binomial_moments(int r);

// Leading-order inverse moments 1/gamma and 1/gamma^2 of a narrow
// distribution.
std::pair<double, double> asymptotic_moments(double gamma);

}  // namespace adiagap

#endif  // ADIAGAP_ANALYTIC_HPP
