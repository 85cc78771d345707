#ifndef ADIAGAP_GOLDEN_HPP
#define ADIAGAP_GOLDEN_HPP

#include <cmath>
#include <utility>

namespace adiagap {

struct GoldenResult {
  double x = 0;
  double fx = 0;
  int evaluations = 0;
};

// Golden-section minimization on [lo, hi]; f must be unimodal there.
// Terminates when the bracket width drops below xtol.
template <class F>
GoldenResult golden_minimize(F&& f, double lo, double hi, double xtol,
                             int max_iter = 400) {
  constexpr double inv_phi = 0.6180339887498949;  // (sqrt(5)-1)/2
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  int evals = 2;
  for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
    ++evals;
  }
  return f1 < f2 ? GoldenResult{x1, f1, evals} : GoldenResult{x2, f2, evals};
}

}  // namespace adiagap

#endif  // ADIAGAP_GOLDEN_HPP
