#ifndef ADIAGAP_REDUCED_HPP
#define ADIAGAP_REDUCED_HPP

#include <iosfwd>
#include <vector>

#include "adiagap/spectrum.hpp"

namespace adiagap {

struct HamiltonianParams {
  int n = 0;
  int m = 0;
  double N = 0;  // 2^n
  double a = 0;  // 4/alpha = 4n/m, final-level spacing
  double b = 0;  // (n/2) * N/(N-1), chosen so tr H(0) = N*n/2

  static HamiltonianParams make(int n, int m);
  static HamiltonianParams for_instance(const SatInstance& inst);
};

// H restricted to the totally symmetric subspace at interpolation time t:
// diag(eps) - rho * x x^T with x_j = sqrt(weight_j). Levels with d_j = 0 are
// absent (their symmetric state does not exist), so dim() = |J|.
struct ReducedHamiltonian {
  double t = 0;
  double rho = 0;  // (1-t) b
  double spacing = 0;  // a*t, gap between consecutive eps within one level step
  std::vector<int> level;      // j values with d_j > 0, ascending
  std::vector<double> eps;     // (1-t) b + j a t
  std::vector<double> weight;  // d_j / N

  int dim() const { return static_cast<int>(eps.size()); }
};

ReducedHamiltonian build_reduced(const DegeneracySpectrum& spec,
                                 const HamiltonianParams& params, double t);

// Lowest k eigenvalues of the reduced matrix, each root of the secular
// function 1 - rho*sum w_j/(eps_j - lambda) bracketed by its interlacing
// interval (E_0 in (eps_0 - rho, eps_0), E_j in (eps_{j-1}, eps_j)) and
// refined by safeguarded Newton iteration in pole-offset coordinates.
std::vector<double> secular_eigenvalues(const ReducedHamiltonian& h, int k);

double gap_at(const DegeneracySpectrum& spec, const HamiltonianParams& params,
              double t);

enum class GapMethod { NumericMin, ParabolicFit, ClosedForm };
const char* gap_method_name(GapMethod m);

struct GapResult {
  double t_min = 0;
  double delta = 0;
  double E0 = 0;
  double E1 = 0;
  GapMethod method = GapMethod::NumericMin;
};

struct MinimizeResult {
  GapResult best;
  std::vector<GapResult> local_minima;  // all bracketed minima of the pre-scan
  bool unimodal = true;
};

// Coarse 64-point pre-scan for unimodality, then golden-section refinement of
// each bracketed minimum down to |t - t_min| <= t_tol. With more than one
// local minimum all of them are reported (unimodal = false) and best is the
// smallest.
MinimizeResult minimize_gap(const DegeneracySpectrum& spec,
                            const HamiltonianParams& params,
                            double t_tol = 1e-10);

// Characteristic polynomial of the reduced problem over the full level range
// 0..D, normalized by (at)^D D! and evaluated in sign/log-magnitude form.
// At lambda = eps_j the value is -(1-t) b (D-j)! j! (-1)^j d_j / (N D!).
double charpoly_normalized(const DegeneracySpectrum& spec,
                           const HamiltonianParams& params, double lambda,
                           double t);

// Gap of H_s(t) projected onto span{uniform state, symmetric solution state},
// orthonormalized. Requires d_0 >= 1.
double two_level_gap(const DegeneracySpectrum& spec,
                     const HamiltonianParams& params, double t);

GapResult minimize_two_level_gap(const DegeneracySpectrum& spec,
                                 const HamiltonianParams& params,
                                 double t_tol = 1e-10);

// CSV rows "t,E_0,...,E_{k-1}" over a uniform t-grid.
void write_flow_csv(std::ostream& out, const DegeneracySpectrum& spec,
                    const HamiltonianParams& params, double t_lo, double t_hi,
                    int points, int k);

}  // namespace adiagap

#endif  // ADIAGAP_REDUCED_HPP
