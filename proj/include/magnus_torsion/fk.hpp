#pragma once

#include "automorphism.hpp"
#include "magnus.hpp"
#include "matrix.hpp"
#include "pik.hpp"

#include <cmath>
#include <future>
#include <string>
#include <vector>

namespace magnus_torsion {

struct FKOptions {
  int P_max = 2000;
  /// Stop once tr(M^p) < term_tol, i.e. the p-th term drops below term_tol/p.
  double term_tol = 1e-9;
  double prune_tol = 1e-12;
  /// Add a power-law tail fitted to the last trace values.
  bool extrapolate_tail = true;
  /// Stop when the total support of M^h exceeds this many terms.
  std::size_t max_support = 4'000'000;
  /// 0 means use refined_norm_bound(B, refine_steps).
  double K = 0;
  int refine_steps = 3;
  /// Allowed increase of the trace sequence before the run is rejected.
  double slack = 1e-9;
  int threads = 1;
};

struct FKReport {
  double log_det = 0;
  double raw_log_det = 0;
  double tail_estimate = 0;
  double K = 0;
  int P = 0;
  /// tr(M^P)/P, the last series term.
  double last_term = 0;
  double pruned_mass = 0;
  /// tr(M^p) for p = 1..P.
  std::vector<double> betti_tail;
  bool converged = false;
  bool support_limited = false;
  /// -2 log_det, filled by log_tauk_series.
  double log_tau = 0;
  int k = 0;
  std::string note;
};

template <class R>
Matrix<R> adjoint(const Matrix<R>& b) {
  Matrix<R> r(b.cols(), b.rows(), ring_zero_like(b(0, 0)));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(j, i) = adjoint(b(i, j));
  return r;
}

template <class R>
double trace(const Matrix<R>& b) {
  double s = 0;
  for (std::size_t i = 0; i < std::min(b.rows(), b.cols()); ++i) s += trace(b(i, i));
  return s;
}

/// tr(XY) = Σ_{i,j} tr(X_ij Y_ji).
template <class R>
double trace_product(const Matrix<R>& x, const Matrix<R>& y) {
  double s = 0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) s += trace_product(x(i, j), y(j, i));
  return s;
}

template <class R>
Matrix<R> multiply(const Matrix<R>& a, const Matrix<R>& b, double prune_tol, double& pruned, int threads = 1) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
  Matrix<R> r(a.rows(), b.cols(), ring_zero_like(a(0, 0)));
  auto row = [&](std::size_t i) {
    double lost = 0;
    for (std::size_t j = 0; j < b.cols(); ++j) {
      R acc = ring_zero_like(a(0, 0));
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        double none = 0;
        acc += multiply(a(i, k), b(k, j), 0.0, none);
      }
      if (prune_tol > 0) lost += acc.prune(prune_tol);
      r(i, j) = std::move(acc);
    }
    return lost;
  };
  if (threads > 1 && a.rows() > 1) {
    std::vector<std::future<double>> fs;
    for (std::size_t i = 0; i < a.rows(); ++i) fs.push_back(std::async(std::launch::async, row, i));
    for (auto& f : fs) pruned += f.get();
  } else {
    for (std::size_t i = 0; i < a.rows(); ++i) pruned += row(i);
  }
  return r;
}

template <class R>
Matrix<R> multiply(const Matrix<R>& a, const Matrix<R>& b) {
  double none = 0;
  return multiply(a, b, 0.0, none);
}

/// K = sqrt(max row l1 · max column l1) ≥ operator norm (Schur test).
template <class R>
double norm_bound(const Matrix<R>& b) {
  std::vector<double> rows(b.rows(), 0.0), cols(b.cols(), 0.0);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      const double x = l1_norm(b(i, j));
      rows[i] += x;
      cols[j] += x;
    }
  const double mr = rows.empty() ? 0 : *std::max_element(rows.begin(), rows.end());
  const double mc = cols.empty() ? 0 : *std::max_element(cols.begin(), cols.end());
  if (mr == 0 || mc == 0) throw std::invalid_argument("norm_bound: zero matrix");
  return std::sqrt(mr * mc);
}

/// Tighter operator-norm bound: ‖B‖ = ‖(BB*)^m‖^{1/2m} and the Schur test
/// bounds each ‖(BB*)^m‖, so every m gives a valid K. Tries m = 1, 2, 4, ...
/// (`steps` squarings) and keeps the smallest, never exceeding norm_bound(B).
template <class R>
double refined_norm_bound(const Matrix<R>& b, int steps = 3) {
  double k = norm_bound(b);
  Matrix<R> p = multiply(b, adjoint(b));
  double m = 1;
  for (int s = 0;; ++s) {
    k = std::min(k, std::pow(norm_bound(p), 1.0 / (2 * m)));
    if (s == steps) return k;
    p = multiply(p, p);
    m *= 2;
  }
}

/// Power-law tail Σ_{p>P} tr(M^p)/p from a two-term Prony fit to the
/// traces at P/8, P/4, P/2, P (a doubling ladder, so each component decays
/// like p^{-α}). Falls back to a single-term fit when the two-term model
/// is degenerate.
inline double fk_tail_estimate(const std::vector<double>& a, std::string* note = nullptr) {
  const int P = static_cast<int>(a.size());
  if (P < 16) return 0.0;
  const int p0 = P / 8;
  const double A0 = a[static_cast<std::size_t>(p0 - 1)], A1 = a[static_cast<std::size_t>(2 * p0 - 1)],
               A2 = a[static_cast<std::size_t>(4 * p0 - 1)], A3 = a[static_cast<std::size_t>(8 * p0 - 1)];
  const double Pe = 8.0 * p0;
  auto component = [&](double c, double r) {
    if (!(r > 0 && r < 1) || c <= 0) return 0.0;
    const double alpha = -std::log2(r);
    return c * std::pow((Pe + 0.5) / Pe, -alpha) / alpha;
  };
  if (A3 <= 0) return 0.0;
  const double det = A0 * A2 - A1 * A1;
  if (std::abs(det) > 1e-14 * std::max(A0 * A2, A1 * A1)) {
    const double S = (A0 * A3 - A1 * A2) / det;
    const double Pd = (A1 * A3 - A2 * A2) / det;
    const double disc = S * S - 4 * Pd;
    if (disc > 0) {
      const double r = 0.5 * (S + std::sqrt(disc)), s = 0.5 * (S - std::sqrt(disc));
      if (r > 0 && r < 1 && s > 0 && s < 1 && r - s > 1e-9) {
        const double u = (A1 - s * A0) / (r - s), v = A0 - u;
        const double cu = u * r * r * r, cv = v * s * s * s;
        if (cu >= 0 && cv >= 0) {
          if (note) *note = "two-term power-law tail";
          return component(cu, r) + component(cv, s);
        }
      }
    }
  }
  if (note) *note = "single-term power-law tail";
  return component(A3, A3 / A2);
}

/// log det_FK(B) = n log K − ½ Σ_p tr((I − K⁻²BB*)^p)/p.
///
/// Powers C_h = M^h are built up to h = P/2 and tr(M^p) is read off as
/// tr(C_a C_b) with a + b = p, which halves the number of ring products.
template <class R>
FKReport fk_log_det(const Matrix<R>& b, const FKOptions& opts = {}) {
  if (!b.is_square() || b.rows() == 0) throw std::invalid_argument("fk_log_det: matrix must be square");
  const std::size_t n = b.rows();
  FKReport rep;
  rep.K = opts.K > 0 ? opts.K : refined_norm_bound(b, opts.refine_steps);
  const R zero = ring_zero_like(b(0, 0)), one = ring_one_like(b(0, 0));
  Matrix<R> m = multiply(b, adjoint(b));
  const double s = -1.0 / (rep.K * rep.K);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      R e = s * m(i, j);
      if (i == j) e += one;
      m(i, j) = std::move(e);
    }

  Matrix<R> lo(n, n, zero);  // C_h
  for (std::size_t i = 0; i < n; ++i) lo(i, i) = one;
  Matrix<R> hi = m;  // C_{h+1}
  double sum = 0;
  double prev = static_cast<double>(n);
  for (int p = 1; p <= opts.P_max; ++p) {
    double a;
    if (p % 2 == 0) {
      lo = hi;
      hi = multiply(m, lo, opts.prune_tol, rep.pruned_mass, opts.threads);
      a = trace_product(lo, lo);
    } else {
      a = trace_product(lo, hi);
    }
    if (a > prev + opts.slack * std::max(1.0, prev))
      throw NumericalError("fk_log_det: trace sequence increased at p = " + std::to_string(p) + " (" +
                           std::to_string(prev) + " -> " + std::to_string(a) +
                           "); K too small or truncation too coarse");
    // M is a positive contraction when K bounds the operator norm.
    if (a < -opts.slack * std::max(1.0, std::abs(prev)))
      throw NumericalError("fk_log_det: negative trace at p = " + std::to_string(p) + "; K too small");
    a = std::max(a, 0.0);
    rep.betti_tail.push_back(a);
    sum += a / p;
    rep.P = p;
    rep.last_term = a / p;
    prev = a;
    if (a < opts.term_tol) {
      rep.converged = true;
      break;
    }
    std::size_t support = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) support += support_size(hi(i, j));
    if (support > opts.max_support) {
      rep.support_limited = true;
      rep.note = "stopped at p = " + std::to_string(p) + ": support " + std::to_string(support) +
                 " exceeds max_support";
      break;
    }
  }
  const double logk = static_cast<double>(n) * std::log(rep.K);
  rep.raw_log_det = logk - 0.5 * sum;
  if (opts.extrapolate_tail && !rep.converged) {
    std::string how;
    rep.tail_estimate = fk_tail_estimate(rep.betti_tail, &how);
    if (rep.note.empty()) rep.note = how;
  }
  rep.log_det = rep.raw_log_det - 0.5 * rep.tail_estimate;
  return rep;
}

/// First P values of tr((I − K⁻²BB*)^p); their limit is the L²-Betti number.
template <class R>
std::vector<double> l2_betti_tail(const Matrix<R>& b, int P, FKOptions opts = {}) {
  opts.P_max = P;
  opts.term_tol = -1;
  opts.extrapolate_tail = false;
  return fk_log_det(b, opts).betti_tail;
}

/// log τ_k(M_φ) = −2 log det over π(k), k ∈ {1,2}, via the trace series.
inline FKReport log_tauk_series(const FreeAutomorphism& phi, int k, const FKOptions& opts = {}) {
  if (k != 1 && k != 2) throw UnsupportedError("log_tauk_series: only k = 1, 2 are supported");
  const AlexanderMatrix a = alexander_matrix(phi, k);
  FKReport rep = k == 1 ? fk_log_det(to_series(a), opts) : fk_log_det(to_double(a), opts);
  rep.k = k;
  rep.log_tau = -2.0 * rep.log_det;
  return rep;
}

}  // namespace magnus_torsion
