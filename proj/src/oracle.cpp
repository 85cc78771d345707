#include "adiagap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "adiagap/errors.hpp"

namespace adiagap {

double FullHamiltonian::trace() const {
  double s = 0;
  for (std::size_t i = 0; i < dim; ++i) s += at(i, i);
  return s;
}

double FullHamiltonian::frobenius_sq() const {
  double s = 0;
  for (double x : a) s += x * x;
  return s;
}

FullHamiltonian build_full(const SatInstance& inst,
                           const HamiltonianParams& params, double t,
                           const OracleOptions& opts) {
  if (inst.n > opts.n_cap)
    throw ComputeError("build_full: n = " + std::to_string(inst.n) +
                       " exceeds dense oracle cap " +
                       std::to_string(opts.n_cap));
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("build_full: t outside [0,1]");
  FullHamiltonian h;
  h.n = inst.n;
  h.dim = std::size_t{1} << inst.n;
  const double off = -(1.0 - t) * params.b / params.N;
  const double diag0 = (1.0 - t) * params.b * (1.0 - 1.0 / params.N);
  h.a.assign(h.dim * h.dim, off);
  for (std::size_t i = 0; i < h.dim; ++i) {
    const int v = violation_count(inst, Assignment{i, inst.n});
    h.at(i, i) = diag0 + t * params.a * v;
  }
  return h;
}

namespace {

// Householder reduction to tridiagonal form, eigenvalues only. Touches the
// lower triangle only, by contiguous row prefixes: the symmetric matvec uses
// one reduction pass and one axpy pass per row so everything vectorizes and
// the rank-2 update streams half the matrix. The update is the bandwidth
// bound at dim ~ 4096.
void householder_tridiag(std::vector<double>& a, std::size_t n,
                         std::vector<double>& d, std::vector<double>& sub) {
  d.assign(n, 0.0);
  sub.assign(n > 0 ? n - 1 : 0, 0.0);
  std::vector<double> u(n), p(n);
  for (std::size_t i = n; i-- > 1;) {
    const std::size_t l = i;  // reduce row i against columns 0..l-1
    double scale = 0;
    for (std::size_t k = 0; k < l; ++k) scale += std::abs(a[i * n + k]);
    if (scale == 0.0 || l == 1) {
      sub[i - 1] = a[i * n + (i - 1)];
      continue;
    }
    double h = 0;
    for (std::size_t k = 0; k < l; ++k) {
      u[k] = a[i * n + k] / scale;
      h += u[k] * u[k];
    }
    double f = u[l - 1];
    const double g = f >= 0 ? -std::sqrt(h) : std::sqrt(h);
    sub[i - 1] = scale * g;
    h -= f * g;
    u[l - 1] = f - g;
    // p = A u over the leading l x l block, lower triangle only
    const double* __restrict uv = u.data();
    double* __restrict pv = p.data();
    for (std::size_t k = 0; k < l; ++k) pv[k] = 0.0;
    for (std::size_t j = 0; j < l; ++j) {
      const double* __restrict row = &a[j * n];
      const double uj = uv[j];
      // off-diagonal contributions of row j, both orientations
      double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
      std::size_t k = 0;
      for (; k + 4 <= j; k += 4) {
        s0 += row[k] * uv[k];
        s1 += row[k + 1] * uv[k + 1];
        s2 += row[k + 2] * uv[k + 2];
        s3 += row[k + 3] * uv[k + 3];
      }
      for (; k < j; ++k) s0 += row[k] * uv[k];
      for (std::size_t kk = 0; kk < j; ++kk) pv[kk] += row[kk] * uj;
      pv[j] += ((s0 + s1) + (s2 + s3)) + row[j] * uj;
    }
    double K = 0;
    for (std::size_t j = 0; j < l; ++j) {
      p[j] /= h;
      K += u[j] * p[j];
    }
    K /= 2.0 * h;
    for (std::size_t j = 0; j < l; ++j) p[j] -= K * u[j];
    // A <- A - u q^T - q u^T, lower triangle only
    for (std::size_t j = 0; j < l; ++j) {
      const double uj = u[j], qj = p[j];
      double* __restrict row = &a[j * n];
      for (std::size_t k = 0; k <= j; ++k) row[k] -= uj * pv[k] + qj * uv[k];
    }
  }
  for (std::size_t j = 0; j < n; ++j) d[j] = a[j * n + j];
}

// Implicit-shift QL on (d, sub); sub[i] couples d[i] and d[i+1].
void tql_implicit(std::vector<double>& d, std::vector<double>& sub) {
  const std::size_t n = d.size();
  if (n <= 1) return;
  sub.resize(n, 0.0);  // scratch slot: the deflation scan may point at n-1
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(sub[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (++iter > 64)
          throw ComputeError("full_spectrum: QL iteration cap exceeded");
        double g = (d[l + 1] - d[l]) / (2.0 * sub[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + sub[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, pshift = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * sub[i];
          const double bb = c * sub[i];
          r = std::hypot(f, g);
          sub[i + 1] = r;
          if (r == 0.0) {  // negligible rotation: deflate and restart
            d[i + 1] -= pshift;
            sub[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - pshift;
          r = (d[i] - g) * s + 2.0 * c * bb;
          pshift = s * r;
          d[i + 1] = g + pshift;
          g = c * r - bb;
        }
        if (underflow) continue;
        d[l] -= pshift;
        sub[l] = g;
        sub[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

std::vector<double> full_spectrum(const FullHamiltonian& h) {
  std::vector<double> work = h.a;
  std::vector<double> d, sub;
  householder_tridiag(work, h.dim, d, sub);
  work.clear();
  work.shrink_to_fit();
  tql_implicit(d, sub);
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> jacobi_eigenvalues(std::vector<double> mat,
                                       std::size_t dim) {
  auto& a = mat;
  const auto idx = [dim](std::size_t i, std::size_t k) { return i * dim + k; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i + 1 < dim; ++i)
      for (std::size_t k = i + 1; k < dim; ++k) off += std::abs(a[idx(i, k)]);
    if (off == 0.0) break;
    const double thresh = sweep < 3 ? 0.2 * off / (dim * dim) : 0.0;
    for (std::size_t p = 0; p + 1 < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        const double apq = a[idx(p, q)];
        const double small = 100.0 * std::abs(apq);
        if (sweep > 4 &&
            std::abs(a[idx(p, p)]) + small == std::abs(a[idx(p, p)]) &&
            std::abs(a[idx(q, q)]) + small == std::abs(a[idx(q, q)])) {
          a[idx(p, q)] = a[idx(q, p)] = 0.0;
          continue;
        }
        if (std::abs(apq) <= thresh) continue;
        const double theta = (a[idx(q, q)] - a[idx(p, p)]) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        if (theta < 0) t = -t;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < dim; ++k) {
          const double akp = a[idx(k, p)], akq = a[idx(k, q)];
          a[idx(k, p)] = c * akp - s * akq;
          a[idx(k, q)] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < dim; ++k) {
          const double apk = a[idx(p, k)], aqk = a[idx(q, k)];
          a[idx(p, k)] = c * apk - s * aqk;
          a[idx(q, k)] = s * apk + c * aqk;
        }
      }
    }
    if (sweep == 99)
      throw ComputeError("jacobi_eigenvalues: sweep cap exceeded");
  }
  std::vector<double> eig(dim);
  for (std::size_t i = 0; i < dim; ++i) eig[i] = a[idx(i, i)];
  std::sort(eig.begin(), eig.end());
  return eig;
}

DecompositionReport verify_decomposition(const SatInstance& inst,
                                         const HamiltonianParams& params,
                                         const DegeneracySpectrum& spec,
                                         double t, double tol,
                                         const OracleOptions& opts) {
  DecompositionReport rep;
  rep.t = t;
  rep.tol = tol;

  const ReducedHamiltonian h = build_reduced(spec, params, t);
  const std::vector<double> secular = secular_eigenvalues(h, h.dim());

  // predicted multiset: symmetric sector plus eps_j repeated d_j - 1 times
  std::vector<double> predicted = secular;
  for (int i = 0; i < h.dim(); ++i) {
    const std::uint64_t dj = spec.d[h.level[i]];
    for (std::uint64_t c = 1; c < dj; ++c) predicted.push_back(h.eps[i]);
  }
  std::sort(predicted.begin(), predicted.end());

  const FullHamiltonian full = build_full(inst, params, t, opts);
  const std::vector<double> eigs = full_spectrum(full);

  rep.worst_abs_err = 0;
  if (predicted.size() != eigs.size())
    throw std::logic_error("verify_decomposition: eigenvalue count mismatch");
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    const double err = std::abs(eigs[i] - predicted[i]);
    if (err > rep.worst_abs_err) {
      rep.worst_abs_err = err;
      rep.worst_index = i;
    }
  }

  // secular residuals: nearest full eigenvalue to each symmetric-sector level
  rep.secular_worst_err = 0;
  for (double ev : secular) {
    const auto it = std::lower_bound(eigs.begin(), eigs.end(), ev);
    double best = std::numeric_limits<double>::infinity();
    if (it != eigs.end()) best = std::min(best, std::abs(*it - ev));
    if (it != eigs.begin()) best = std::min(best, std::abs(*(it - 1) - ev));
    rep.secular_worst_err = std::max(rep.secular_worst_err, best);
  }

  // multiplicity census at each eps_j
  for (int i = 0; i < h.dim(); ++i) {
    LevelCheck lc;
    lc.level = h.level[i];
    lc.eps = h.eps[i];
    lc.expected = spec.d[h.level[i]] - 1;
    lc.found = 0;
    lc.worst_err = 0;
    // count matches excluding the one slot the secular root may occupy
    std::uint64_t hits = 0;
    for (double ev : eigs)
      if (std::abs(ev - lc.eps) <= tol) ++hits;
    double nearest_secular = std::numeric_limits<double>::infinity();
    for (double sv : secular)
      nearest_secular = std::min(nearest_secular, std::abs(sv - lc.eps));
    if (nearest_secular <= tol && hits > 0) --hits;
    lc.found = hits;
    rep.antisymmetric.push_back(lc);
  }

  const double tr_full = full.trace();
  double tr_pred = 0, frob_pred = 0;
  for (double ev : predicted) {
    tr_pred += ev;
    frob_pred += ev * ev;
  }
  rep.trace_rel_err = std::abs(tr_full - tr_pred) / std::abs(tr_full);
  rep.frobenius_rel_err =
      std::abs(full.frobenius_sq() - frob_pred) / full.frobenius_sq();

  bool multiplicities_ok = true;
  for (const LevelCheck& lc : rep.antisymmetric)
    if (lc.found != lc.expected) multiplicities_ok = false;
  rep.pass = rep.worst_abs_err <= tol && multiplicities_ok &&
             rep.trace_rel_err <= 1e-10 && rep.frobenius_rel_err <= 1e-10;
  return rep;
}

DecompositionReport verify_decomposition(const SatInstance& inst,
                                         const HamiltonianParams& params,
                                         double t, double tol,
                                         const OracleOptions& opts) {
  if (inst.n > opts.n_cap)
    throw ComputeError("verify_decomposition: n = " + std::to_string(inst.n) +
                       " exceeds dense oracle cap " +
                       std::to_string(opts.n_cap));
  const DegeneracySpectrum spec = degeneracy_spectrum(inst);
  return verify_decomposition(inst, params, spec, t, tol, opts);
}

std::string DecompositionReport::summary() const {
  std::ostringstream out;
  out << "decomposition check at t = " << t << ", tol = " << tol << '\n'
      << "  sorted multiset worst |err| = " << worst_abs_err << " (index "
      << worst_index << ")\n"
      << "  secular-sector worst |err|  = " << secular_worst_err << '\n'
      << "  trace rel err = " << trace_rel_err
      << ", frobenius rel err = " << frobenius_rel_err << '\n';
  for (const LevelCheck& lc : antisymmetric)
    out << "  level " << lc.level << " (eps = " << lc.eps << "): expected "
        << lc.expected << " antisymmetric, found " << lc.found << '\n';
  out << (pass ? "  PASS" : "  FAIL") << '\n';
  return out.str();
}

}  // namespace adiagap
