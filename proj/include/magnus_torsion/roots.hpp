#pragma once

#include "common.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace magnus_torsion {

/// Dense integer polynomial, coefficients in ascending degree.
using IntPoly = std::vector<Integer>;

namespace poly {

inline void normalize(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

/// Exact division; returns false (leaving q unspecified) when d ∤ p.
inline bool divide_exact(const IntPoly& p, const IntPoly& d, IntPoly& q) {
  if (d.empty()) return false;
  if (p.size() < d.size()) return p.empty() ? (q.clear(), true) : false;
  IntPoly r = p;
  q.assign(p.size() - d.size() + 1, Integer(0));
  const Integer& ld = d.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    const Integer& top = r[k + d.size() - 1];
    if (top == 0) continue;
    if (top % ld != 0) return false;
    const Integer f = top / ld;
    q[k] = f;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] != 0) r[k + i] -= f * d[i];
  }
  for (const auto& c : r)
    if (c != 0) return false;
  return true;
}

/// Removes every factor (u - root), root = ±1; returns the multiplicity.
inline int strip_unit_root(IntPoly& p, int root) {
  int count = 0;
  for (;;) {
    if (p.size() < 2) return count;
    // synthetic division by (u - root)
    IntPoly q(p.size() - 1);
    Integer carry = 0;
    for (std::size_t k = p.size(); k-- > 1;) {
      carry = p[k] + carry * root;
      q[k - 1] = carry;
    }
    if (p[0] + carry * root != 0) return count;
    p = std::move(q);
    ++count;
  }
}

namespace detail {
inline constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 x = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(x & kPrime) + static_cast<std::uint64_t>(x >> 61);
  if (r >= kPrime) r -= kPrime;
  return r;
}
inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r >= kPrime ? r - kPrime : r;
}
inline std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}
inline std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }
inline std::uint64_t reduce(const Integer& c) {
  Integer m = c % Integer(kPrime);
  if (m < 0) m += kPrime;
  return m.convert_to<std::uint64_t>();
}

using ModPoly = std::vector<std::uint64_t>;
inline void trim(ModPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
inline ModPoly rem(ModPoly a, const ModPoly& b) {
  const std::uint64_t inv = invmod(b.back());
  while (a.size() >= b.size()) {
    const std::uint64_t f = mulmod(a.back(), inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = submod(a[shift + i], mulmod(f, b[i]));
    a.pop_back();
    trim(a);
  }
  return a;
}
}  // namespace detail

/// Candidate for gcd(p, p') from a Euclid run modulo 2^61-1, lifted to Z
/// (symmetric residues, scaled by lc(p), made primitive). Callers verify
/// divisibility exactly; a wrong lift is simply rejected there.
inline IntPoly gcd_with_derivative_candidate(const IntPoly& p) {
  using namespace detail;
  if (p.size() < 3) return {Integer(1)};
  ModPoly a(p.size()), b(p.size() - 1);
  for (std::size_t i = 0; i < p.size(); ++i) a[i] = reduce(p[i]);
  for (std::size_t i = 1; i < p.size(); ++i) b[i - 1] = mulmod(reduce(p[i]), i % kPrime);
  trim(a);
  trim(b);
  if (b.empty()) return {Integer(1)};
  while (!b.empty()) {
    ModPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.size() <= 1) return {Integer(1)};
  const std::uint64_t scale = mulmod(reduce(p.back()), invmod(a.back()));
  IntPoly g(a.size());
  const Integer half = Integer(kPrime) / 2;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Integer c = mulmod(a[i], scale);
    if (c > half) c -= kPrime;
    g[i] = c;
  }
  Integer content = 0;
  for (const auto& c : g) content = gcd(content, abs(c));
  if (content > 1)
    for (auto& c : g) c /= content;
  return g;
}

}  // namespace poly

struct RootReport {
  std::vector<std::complex<double>> roots;
  /// |last Newton correction| per root (0 when polishing did not run).
  std::vector<double> corrections;
  int zero_roots = 0;
  int unit_roots_plus = 0;   // exact multiplicity of u = 1
  int unit_roots_minus = 0;  // exact multiplicity of u = -1
  int squarefree_splits = 0;
  /// Leading coefficient of the input.
  Integer leading = 0;
};

namespace detail {

/// Parlett–Reinsch balancing; diagonal similarity keeps Hessenberg form.
inline void balance(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  const double radix = 2.0, sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0, c = 0;
      for (Eigen::Index j = 0; j < n; ++j)
        if (j != i) {
          c += std::abs(a(j, i));
          r += std::abs(a(i, j));
        }
      if (c == 0 || r == 0) continue;
      double g = r / radix, f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

using cld = std::complex<long double>;

/// Newton step on p, switching to the reversed polynomial outside the unit
/// disc so Horner stays well scaled.
inline std::complex<double> newton_polish(const std::vector<long double>& c, std::complex<double> z0,
                                          double& correction) {
  const std::size_t d = c.size() - 1;
  cld z(z0.real(), z0.imag());
  const bool outside = std::abs(z) > 1.0L;
  cld w = outside ? cld(1.0L) / z : z;
  cld val = 0, der = 0;
  for (std::size_t k = 0; k <= d; ++k) {
    const long double coef = outside ? c[k] : c[d - k];
    der = der * w + val;
    val = val * w + coef;
  }
  correction = 0;
  if (std::abs(der) == 0.0L) return z0;
  const cld step = val / der;
  cld w1 = w - step;
  if (!std::isfinite(static_cast<double>(w1.real())) || !std::isfinite(static_cast<double>(w1.imag()))) return z0;
  cld z1 = outside ? cld(1.0L) / w1 : w1;
  // accept only if the step is small compared with the root
  if (std::abs(z1 - z) > 1e-3L * std::max<long double>(1.0L, std::abs(z))) return z0;
  correction = static_cast<double>(std::abs(z1 - z));
  return {static_cast<double>(z1.real()), static_cast<double>(z1.imag())};
}

inline void eigen_roots(const IntPoly& p, RootReport& out) {
  const int d = poly::degree(p);
  if (d < 1) return;
  std::vector<long double> lc(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) lc[i] = p[i].convert_to<long double>();
  if (d == 1) {
    out.roots.emplace_back(static_cast<double>(-lc[0] / lc[1]), 0.0);
    out.corrections.push_back(0.0);
    return;
  }
  if (d == 2) {
    const cld a = lc[2], b = lc[1], c = lc[0];
    const cld disc = std::sqrt(b * b - 4.0L * a * c);
    const cld q = -0.5L * (b + (std::real(std::conj(b) * disc) >= 0 ? disc : -disc));
    const cld r1 = q / a, r2 = (std::abs(q) == 0.0L) ? cld(0) : c / q;
    for (const cld& r : {r1, r2}) {
      out.roots.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
      out.corrections.push_back(0.0);
    }
    return;
  }
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) comp(i + 1, i) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = static_cast<double>(-lc[static_cast<std::size_t>(i)] / lc.back());
  balance(comp);
  Eigen::RealSchur<Eigen::MatrixXd> schur(d);
  schur.setMaxIterations(80 * d);
  schur.computeFromHessenberg(comp, Eigen::MatrixXd::Identity(d, d), false);
  if (schur.info() != Eigen::Success) throw NumericalError("companion eigenvalues did not converge");
  const Eigen::MatrixXd& t = schur.matrixT();
  for (int i = 0; i < d;) {
    if (i == d - 1 || t(i + 1, i) == 0.0) {
      out.roots.emplace_back(t(i, i), 0.0);
      ++i;
    } else {
      const double pp = 0.5 * (t(i, i) - t(i + 1, i + 1));
      const double disc = pp * pp + t(i + 1, i) * t(i, i + 1);
      if (disc >= 0) {
        const double z = std::sqrt(disc);
        out.roots.emplace_back(t(i + 1, i + 1) + pp + z, 0.0);
        out.roots.emplace_back(t(i + 1, i + 1) + pp - z, 0.0);
      } else {
        const double z = std::sqrt(-disc);
        out.roots.emplace_back(t(i + 1, i + 1) + pp, z);
        out.roots.emplace_back(t(i + 1, i + 1) + pp, -z);
      }
      i += 2;
    }
  }
  for (std::size_t k = out.roots.size() - static_cast<std::size_t>(d); k < out.roots.size(); ++k) {
    double corr = 0;
    out.roots[k] = newton_polish(lc, out.roots[k], corr);
    out.corrections.push_back(corr);
  }
}

/// Splits p = g·(p/g) with g a verified common factor of p and p', so each
/// eigenvalue problem sees simple roots only.
inline void split_roots(IntPoly p, RootReport& out, int depth) {
  if (poly::degree(p) < 1) return;
  if (depth < 64 && poly::degree(p) >= 3) {
    IntPoly g = poly::gcd_with_derivative_candidate(p);
    IntPoly q;
    if (g.size() >= 2 && poly::divide_exact(p, g, q)) {
      ++out.squarefree_splits;
      split_roots(std::move(q), out, depth + 1);
      split_roots(std::move(g), out, depth + 1);
      return;
    }
  }
  eigen_roots(p, out);
}

}  // namespace detail

/// All roots of a nonzero integer polynomial (ascending coefficients).
/// Zero roots and the roots ±1 are counted exactly and not listed in
/// `roots`; the rest come from balanced companion matrices of squarefree
/// pieces, each polished by one Newton step.
inline RootReport integer_polynomial_roots(IntPoly p) {
  poly::normalize(p);
  if (p.empty()) throw std::invalid_argument("integer_polynomial_roots: zero polynomial");
  RootReport out;
  out.leading = p.back();
  std::size_t z = 0;
  while (z < p.size() && p[z] == 0) ++z;
  out.zero_roots = static_cast<int>(z);
  p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(z));
  out.unit_roots_plus = poly::strip_unit_root(p, 1);
  out.unit_roots_minus = poly::strip_unit_root(p, -1);
  detail::split_roots(std::move(p), out, 0);
  return out;
}

}  // namespace magnus_torsion
