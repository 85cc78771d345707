#include "adiagap/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "adiagap/errors.hpp"
#include "adiagap/format.hpp"
#include "adiagap/golden.hpp"

namespace adiagap {

HamiltonianParams HamiltonianParams::make(int n, int m) {
  HamiltonianParams p;
  p.n = n;
  p.m = m;
  p.N = std::ldexp(1.0, n);
  p.a = 4.0 * n / m;  // 4/alpha
  p.b = (n / 2.0) * p.N / (p.N - 1.0);
  return p;
}

HamiltonianParams HamiltonianParams::for_instance(const SatInstance& inst) {
  return make(inst.n, inst.m());
}

const char* gap_method_name(GapMethod m) {
  switch (m) {
    case GapMethod::NumericMin:
      return "numeric-min";
    case GapMethod::ParabolicFit:
      return "parabolic-fit";
    case GapMethod::ClosedForm:
      return "closed-form";
  }
  return "?";
}

ReducedHamiltonian build_reduced(const DegeneracySpectrum& spec,
                                 const HamiltonianParams& params, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("build_reduced: t outside [0,1]");
  ReducedHamiltonian h;
  h.t = t;
  h.rho = (1.0 - t) * params.b;
  h.spacing = params.a * t;
  for (std::size_t j = 0; j < spec.d.size(); ++j) {
    if (spec.d[j] == 0) continue;  // no symmetric state at this level
    h.level.push_back(static_cast<int>(j));
    h.eps.push_back(h.rho + static_cast<double>(j) * h.spacing);
    h.weight.push_back(static_cast<double>(spec.d[j]) / params.N);
  }
  return h;
}

namespace {

// Secular function in pole-offset coordinates: around origin index K the
// eigenvalue is eps_K + tau and
//   g(tau) = 1 - rho * sum_i w_i / (delta_i - tau),
// delta_i = (level_i - level_K) * spacing. Offsets keep full relative
// precision for roots crawling up against a pole, which is exactly where the
// avoided crossing lives.
struct Secular {
  const ReducedHamiltonian& h;

  double delta(int i, int K) const {
    return static_cast<double>(h.level[i] - h.level[K]) * h.spacing;
  }

  // value and derivative, split into the sums over poles below and above the
  // evaluation point so each partial sum has one sign
  void eval(int K, double tau, double& g, double& dg) const {
    double below = 0, above = 0, deriv = 0;
    for (int i = 0; i < h.dim(); ++i) {
      const double den = delta(i, K) - tau;
      const double term = h.weight[i] / den;
      (den < 0 ? below : above) += term;
      deriv += term / den;
    }
    g = 1.0 - h.rho * (below + above);
    dg = -h.rho * deriv;
  }

  // Root in the open bracket (lo, hi) around origin K; g(lo+) > 0 > g(hi-).
  // Safeguarded Newton: bisection whenever the step leaves the bracket.
  double solve(int K, double lo, double hi) const {
    double tau = 0.5 * (lo + hi);
    for (int it = 0; it < 160; ++it) {
      double g, dg;
      eval(K, tau, g, dg);
      if (g > 0)
        lo = tau;
      else
        hi = tau;
      double next = tau - g / dg;  // dg < 0 always
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const double step = std::abs(next - tau);
      tau = next;
      if (step <= 4.0 * std::numeric_limits<double>::epsilon() *
                      (std::abs(tau) + std::numeric_limits<double>::min()))
        break;
      if (hi - lo <=
          2.0 * std::numeric_limits<double>::epsilon() * std::abs(tau))
        break;
    }
    return tau;
  }
};

struct Root {
  int origin;  // pole index K
  double tau;  // eigenvalue - eps_K
};

// Eigenvalue below eps_0: tau in (-rho, 0), origin 0.
Root lowest_root(const ReducedHamiltonian& h) {
  const Secular s{h};
  double g, dg;
  s.eval(0, -h.rho, g, dg);
  if (g <= 0) return {0, -h.rho};  // dim-1 instance: root exactly at eps_0-rho
  return {0, s.solve(0, -h.rho, 0.0)};
}

// Eigenvalue in (eps_{r-1}, eps_r), r >= 1; origin picked by the midpoint
// sign so tau stays on the short side.
Root interior_root(const ReducedHamiltonian& h, int r) {
  const Secular s{h};
  const double width = s.delta(r, r - 1);
  double g, dg;
  s.eval(r - 1, 0.5 * width, g, dg);
  if (g <= 0) return {r - 1, s.solve(r - 1, 0.0, 0.5 * width)};
  return {r, s.solve(r, -0.5 * width, 0.0)};
}

double absolute(const ReducedHamiltonian& h, const Root& root) {
  return h.eps[root.origin] + root.tau;
}

void check_dim(const ReducedHamiltonian& h, int k) {
  if (k < 1 || k > h.dim())
    throw std::invalid_argument("secular_eigenvalues: k outside [1, |J|]");
}

}  // namespace

std::vector<double> secular_eigenvalues(const ReducedHamiltonian& h, int k) {
  check_dim(h, k);
  std::vector<double> out;
  out.reserve(k);
  if (h.t == 0.0) {
    // H_s(0) = b(I - x x^T): eigenvalue 0 on x, b on its complement
    out.push_back(0.0);
    for (int i = 1; i < k; ++i) out.push_back(h.rho);
    return out;
  }
  if (h.rho == 0.0) {  // t = 1, rank-one term vanishes
    for (int i = 0; i < k; ++i) out.push_back(h.eps[i]);
    return out;
  }
  out.push_back(absolute(h, lowest_root(h)));
  for (int r = 1; r < k; ++r) out.push_back(absolute(h, interior_root(h, r)));
  return out;
}

namespace {

struct LowestTwo {
  double E0, E1, gap;
};

// Gap from offset arithmetic: both roots are referenced to pole offsets and
// the pole separation is an exact product, so the difference keeps relative
// accuracy even when it is ~2^-n/2 below the eigenvalue scale.
LowestTwo lowest_two(const ReducedHamiltonian& h) {
  if (h.dim() < 2)
    throw ComputeError("gap undefined: symmetric subspace has dimension < 2");
  if (h.t == 0.0) return {0.0, h.rho, h.rho};
  if (h.rho == 0.0) return {h.eps[0], h.eps[1], h.eps[1] - h.eps[0]};
  const Root r0 = lowest_root(h);
  const Root r1 = interior_root(h, 1);
  const double pole_sep =
      static_cast<double>(h.level[r1.origin] - h.level[r0.origin]) * h.spacing;
  const double gap = pole_sep + r1.tau - r0.tau;
  return {absolute(h, r0), absolute(h, r1), gap};
}

}  // namespace

double gap_at(const DegeneracySpectrum& spec, const HamiltonianParams& params,
              double t) {
  if (!(t > 0.0 && t < 1.0))
    throw std::invalid_argument("gap_at: t outside (0,1)");
  return lowest_two(build_reduced(spec, params, t)).gap;
}

namespace {

GapResult gap_result_at(const DegeneracySpectrum& spec,
                        const HamiltonianParams& params, double t,
                        GapMethod method) {
  const LowestTwo lt = lowest_two(build_reduced(spec, params, t));
  return GapResult{t, lt.gap, lt.E0, lt.E1, method};
}

constexpr int kPreScanPoints = 64;

// Indices of local minima of a coarse scan, plateaus collapsed to their first
// point.
std::vector<int> local_minima_indices(const std::vector<double>& g) {
  std::vector<int> out;
  const int n = static_cast<int>(g.size());
  for (int i = 0; i < n; ++i) {
    if (i > 0 && g[i] == g[i - 1]) continue;
    const bool left_ok = (i == 0) || g[i] < g[i - 1];
    int r = i;
    while (r + 1 < n && g[r + 1] == g[i]) ++r;
    const bool right_ok = (r == n - 1) || g[i] < g[r + 1];
    if (left_ok && right_ok) out.push_back(i);
  }
  return out;
}

}  // namespace

MinimizeResult minimize_gap(const DegeneracySpectrum& spec,
                            const HamiltonianParams& params, double t_tol) {
  constexpr double t_edge = 1e-9;
  std::vector<double> ts(kPreScanPoints), gs(kPreScanPoints);
  for (int i = 0; i < kPreScanPoints; ++i) {
    ts[i] = (i + 0.5) / kPreScanPoints;
    gs[i] = gap_at(spec, params, ts[i]);
  }
  const std::vector<int> minima = local_minima_indices(gs);

  MinimizeResult res;
  res.unimodal = minima.size() == 1;
  for (int idx : minima) {
    const double lo = idx == 0 ? t_edge : ts[idx - 1];
    const double hi =
        idx == kPreScanPoints - 1 ? 1.0 - t_edge : ts[idx + 1];
    const GoldenResult gr = golden_minimize(
        [&](double t) { return gap_at(spec, params, t); }, lo, hi, t_tol);
    res.local_minima.push_back(
        gap_result_at(spec, params, gr.x, GapMethod::NumericMin));
  }
  res.best = *std::min_element(
      res.local_minima.begin(), res.local_minima.end(),
      [](const GapResult& x, const GapResult& y) { return x.delta < y.delta; });
  return res;
}

double charpoly_normalized(const DegeneracySpectrum& spec,
                           const HamiltonianParams& params, double lambda,
                           double t) {
  if (!(t > 0.0 && t <= 1.0))
    throw std::invalid_argument("charpoly_normalized: t outside (0,1]");
  const int D = spec.max_violations();
  const double rho = (1.0 - t) * params.b;
  const double at = params.a * t;
  // log of the normalization (at)^D D!
  double log_norm = D * std::log(at) + std::lgamma(D + 1.0);

  // factors eps_j - lambda over the full 0..D range, d_j = 0 included
  std::vector<double> factor(D + 1);
  int zero_at = -1, zeros = 0;
  for (int j = 0; j <= D; ++j) {
    factor[j] = (rho + j * at) - lambda;
    if (factor[j] == 0.0) {
      zero_at = j;
      ++zeros;
    }
  }
  if (zeros >= 2) return 0.0;

  const auto weight = [&](int j) {
    return static_cast<double>(spec.d[j]) / params.N;
  };

  if (zeros == 1) {
    // only the zero_at term of the sum survives
    const double w = weight(zero_at);
    if (w == 0.0) return 0.0;
    double lg = std::log(rho * w);
    int sign = -1;
    for (int j = 0; j <= D; ++j) {
      if (j == zero_at) continue;
      lg += std::log(std::abs(factor[j]));
      if (factor[j] < 0) sign = -sign;
    }
    return sign * std::exp(lg - log_norm);
  }

  double log_prod = 0.0;
  int sign_prod = 1;
  for (int j = 0; j <= D; ++j) {
    log_prod += std::log(std::abs(factor[j]));
    if (factor[j] < 0) sign_prod = -sign_prod;
  }

  // signed exponent-shifted accumulation of sum_j w_j prod_{k!=j}(eps_k-l)
  double max_lt = -std::numeric_limits<double>::infinity();
  std::vector<double> lt(D + 1, -std::numeric_limits<double>::infinity());
  for (int j = 0; j <= D; ++j) {
    const double w = weight(j);
    if (w == 0.0) continue;
    lt[j] = log_prod - std::log(std::abs(factor[j])) + std::log(w);
    max_lt = std::max(max_lt, lt[j]);
  }
  double s = 0.0;
  if (std::isfinite(max_lt)) {
    for (int j = 0; j <= D; ++j) {
      if (!std::isfinite(lt[j])) continue;
      const int sign_j = factor[j] < 0 ? -sign_prod : sign_prod;
      s += sign_j * std::exp(lt[j] - max_lt);
    }
  }
  const double prod_part = sign_prod * std::exp(log_prod - log_norm);
  const double sum_part =
      std::isfinite(max_lt) ? s * std::exp(max_lt - log_norm) : 0.0;
  return prod_part - rho * sum_part;
}

namespace {

struct TwoLevel {
  double m11, m12, m22;
  double gap() const { return std::hypot(m11 - m22, 2.0 * m12); }
  double mean() const { return 0.5 * (m11 + m22); }
};

TwoLevel two_level_matrix(const DegeneracySpectrum& spec,
                          const HamiltonianParams& params, double t) {
  const ReducedHamiltonian h = build_reduced(spec, params, t);
  if (h.dim() < 2 || h.level[0] != 0)
    throw ComputeError("two_level_gap: requires d_0 >= 1 and |J| >= 2");
  const int dim = h.dim();
  std::vector<double> x(dim);
  for (int i = 0; i < dim; ++i) x[i] = std::sqrt(h.weight[i]);

  // H v = diag(eps) v - rho x (x.v)
  const auto apply = [&](const std::vector<double>& v, std::vector<double>& out) {
    double xv = 0;
    for (int i = 0; i < dim; ++i) xv += x[i] * v[i];
    for (int i = 0; i < dim; ++i) out[i] = h.eps[i] * v[i] - h.rho * x[i] * xv;
  };
  const auto dot = [&](const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0;
    for (int i = 0; i < dim; ++i) s += u[i] * v[i];
    return s;
  };

  // basis: psi = x (uniform state restricted to the symmetric subspace),
  // and the solution state e_0 orthonormalized against it
  std::vector<double> v2(dim, 0.0);
  const double x0 = x[0];
  const double s = std::sqrt(1.0 - x0 * x0);
  for (int i = 0; i < dim; ++i) v2[i] = -x0 * x[i] / s;
  v2[0] += 1.0 / s;

  std::vector<double> hpsi(dim), hv2(dim);
  apply(x, hpsi);
  apply(v2, hv2);
  return TwoLevel{dot(x, hpsi), dot(v2, hpsi), dot(v2, hv2)};
}

}  // namespace

double two_level_gap(const DegeneracySpectrum& spec,
                     const HamiltonianParams& params, double t) {
  return two_level_matrix(spec, params, t).gap();
}

GapResult minimize_two_level_gap(const DegeneracySpectrum& spec,
                                 const HamiltonianParams& params,
                                 double t_tol) {
  constexpr double t_edge = 1e-9;
  const auto f = [&](double t) { return two_level_gap(spec, params, t); };
  // coarse bracket, then golden refinement
  int best = 0;
  std::vector<double> ts(kPreScanPoints), gs(kPreScanPoints);
  for (int i = 0; i < kPreScanPoints; ++i) {
    ts[i] = (i + 0.5) / kPreScanPoints;
    gs[i] = f(ts[i]);
    if (gs[i] < gs[best]) best = i;
  }
  const double lo = best == 0 ? t_edge : ts[best - 1];
  const double hi = best == kPreScanPoints - 1 ? 1.0 - t_edge : ts[best + 1];
  const GoldenResult gr = golden_minimize(f, lo, hi, t_tol);
  const TwoLevel tl = two_level_matrix(spec, params, gr.x);
  return GapResult{gr.x, tl.gap(), tl.mean() - 0.5 * tl.gap(),
                   tl.mean() + 0.5 * tl.gap(), GapMethod::NumericMin};
}

void write_flow_csv(std::ostream& out, const DegeneracySpectrum& spec,
                    const HamiltonianParams& params, double t_lo, double t_hi,
                    int points, int k) {
  out << "t";
  for (int i = 0; i < k; ++i) out << ",E_" << i;
  out << '\n';
  for (int p = 0; p < points; ++p) {
    const double t =
        points == 1 ? t_lo : t_lo + (t_hi - t_lo) * p / (points - 1);
    const ReducedHamiltonian h = build_reduced(spec, params, t);
    const std::vector<double> eigs =
        secular_eigenvalues(h, std::min(k, h.dim()));
    out << fmt_g17(t);
    for (double e : eigs) out << ',' << fmt_g17(e);
    out << '\n';
  }
}

}  // namespace adiagap
