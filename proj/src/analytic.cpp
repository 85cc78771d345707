#include "adiagap/analytic.hpp"

#include <cmath>

#include "adiagap/errors.hpp"

namespace adiagap {

namespace {

// Kahan-compensated accumulator; the moment sums mix magnitudes across an
// exponentially wide weight range.
struct Kahan {
  double sum = 0, c = 0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

MomentSet moments(const DegeneracySpectrum& spec,
                  const HamiltonianParams& params) {
  MomentSet mom;
  Kahan g, g2, m1, m2, h, gd;
  for (std::size_t j = 0; j < spec.d.size(); ++j) {
    if (spec.d[j] == 0) continue;
    const double w = static_cast<double>(spec.d[j]) / params.N;
    const double dj = static_cast<double>(j);
    g.add(dj * w);
    g2.add(dj * dj * w);
    if (j >= 1) {
      m1.add(w / dj);
      m2.add(w / (dj * dj));
      h.add(1.0 / dj);
      gd.add(1.0 / (dj * dj));
    }
  }
  mom.gamma = g.sum;
  mom.gamma2 = g2.sum;
  mom.sigma = std::sqrt(std::max(0.0, g2.sum - g.sum * g.sum));
  mom.gm1 = m1.sum;
  mom.gm2 = m2.sum;
  mom.hD = h.sum;
  mom.gD = gd.sum;
  return mom;
}

double tmin_closed_form(const MomentSet& mom) {
  const double gg = mom.gamma * mom.gm1;
  return gg / (1.0 + gg);
}

ClosedFormGap gap_closed_form(const MomentSet& mom,
                              const HamiltonianParams& params,
                              std::uint64_t d0) {
  if (d0 == 0)
    throw ComputeError("gap_closed_form: unsatisfiable instance (d0 = 0), "
                       "gap formula inapplicable");
  const double gg = mom.gamma * mom.gm1;
  const double f = 2.0 / (1.0 + gg) * std::sqrt(mom.gm1 * mom.gm1 / mom.gm2);
  const double prefactor =
      params.n * std::sqrt(static_cast<double>(d0)) / (2.0 * std::sqrt(params.N));
  const double delta = prefactor * f;
  const double t = tmin_closed_form(mom);
  ClosedFormGap out;
  // the line eps_0 = (1-t) b passes through the middle of the avoided crossing
  const double center = (1.0 - t) * params.b;
  out.gap = GapResult{t, delta, center - 0.5 * delta, center + 0.5 * delta,
                      GapMethod::ClosedForm};
  out.f = f;
  out.delta_exact_b =
      params.b * std::sqrt(static_cast<double>(d0) / params.N) * f;
  return out;
}

DerivativeLine derivative_line_values(const MomentSet& mom,
                                      const HamiltonianParams& params,
                                      std::uint64_t d0, double t) {
  const double rho = (1.0 - t) * params.b;
  const double at = params.a * t;
  const double w0 = static_cast<double>(d0) / params.N;
  DerivativeLine v;
  v.p = -rho * w0;
  v.dp = -at + rho * (mom.gm1 + w0 * mom.hD);
  v.d2p = 2.0 * at * mom.hD -
          rho * (2.0 * mom.gm1 * mom.hD - 2.0 * mom.gm2 +
                 w0 * (mom.hD * mom.hD - mom.gD));
  return v;
}

ParabolicGap parabolic_gap(const MomentSet& mom,
                           const HamiltonianParams& params, std::uint64_t d0,
                           bool with_d0_terms) {
  if (d0 == 0)
    throw ComputeError("parabolic_gap: unsatisfiable instance (d0 = 0), "
                       "gap formula inapplicable");
  const double w0 = static_cast<double>(d0) / params.N;
  const double w0_corr = with_d0_terms ? w0 : 0.0;

  // dp = 0 on the line lambda = eps_0: at = (1-t) b (gm1 + w0 hD)
  const double G = (params.b / params.a) * (mom.gm1 + w0_corr * mom.hD);
  const double t = G / (1.0 + G);
  const double rho = (1.0 - t) * params.b;
  const double u = params.a * t;

  const double p = -rho * w0;
  const double dp = -u + rho * (mom.gm1 + w0_corr * mom.hD);  // 0 up to roundoff
  const double d2p = 2.0 * u * mom.hD -
                     rho * (2.0 * mom.gm1 * mom.hD - 2.0 * mom.gm2 +
                            w0_corr * (mom.hD * mom.hD - mom.gD));
  const double disc = dp * dp - 2.0 * p * d2p;
  if (disc < 0)
    throw ComputeError("parabolic_gap: negative discriminant, "
                       "crossing is not an isolated two-level problem");
  // roots of p + dp*y + d2p*y^2/2 in y = lambda - eps_0; separation in
  // normalized units times u restores the (at)^k D! scalings
  const double delta = 2.0 * u * std::sqrt(disc) / std::abs(d2p);
  const double center = rho + u * (-dp / d2p);
  ParabolicGap out;
  out.gap = GapResult{t, delta, center - 0.5 * delta, center + 0.5 * delta,
                      GapMethod::ParabolicFit};
  out.f = delta * 2.0 * std::sqrt(params.N) /
          (params.n * std::sqrt(static_cast<double>(d0)));
  out.discriminant = disc;
  return out;
}

std::pair<double, double> binomial_moments(int r) {
  if (r < 1)
    throw std::invalid_argument("binomial_moments: r >= 1 required");
  // gm1 = 8^-r sum_{i=1..r} 7^i C(r,i)/i, gm2 likewise with 1/i^2; the
  // series terminates, terms follow the exact recurrence
  // c_i = c_{i-1} * 7 (r-i+1)/i with c_0 = 1.
  Kahan s1, s2;
  double c = 1.0;
  for (int i = 1; i <= r; ++i) {
    c *= 7.0 * (r - i + 1) / i;
    s1.add(c / i);
    s2.add(c / (static_cast<double>(i) * i));
  }
  // dividing by 8^r = 2^{3r} is an exact exponent shift
  return {std::ldexp(s1.sum, -3 * r), std::ldexp(s2.sum, -3 * r)};
}

std::pair<double, double> asymptotic_moments(double gamma) {
  if (!(gamma > 0))
    throw std::invalid_argument("asymptotic_moments: gamma > 0 required");
  return {1.0 / gamma, 1.0 / (gamma * gamma)};
}

}  // namespace adiagap
