#pragma once

#include "laurent.hpp"
#include "roots.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace magnus_torsion {

enum class MahlerMethod { roots, lawton, quadrature };

inline const char* to_string(MahlerMethod m) {
  switch (m) {
    case MahlerMethod::roots: return "roots";
    case MahlerMethod::lawton: return "lawton";
    case MahlerMethod::quadrature: return "quadrature";
  }
  return "?";
}

/// One row of a Lawton or quadrature convergence table.
struct MahlerStage {
  long parameter = 0;  // r for Lawton, N for quadrature
  double value = 0;
  int degree = 0;      // univariate degree (Lawton) or skipped points (quadrature)
  double seconds = 0;
};

struct MahlerResult {
  double value = 0;
  MahlerMethod method = MahlerMethod::roots;
  /// Heuristic, not a certified bound.
  double error_estimate = 0;
  std::vector<std::complex<double>> roots;
  std::vector<MahlerStage> stages;
  bool converged = true;
  std::string note;
};

namespace detail {

inline double root_measure(const RootReport& rr, double& err) {
  double m = std::log(std::abs(to_double(rr.leading)));
  err = 0;
  for (std::size_t i = 0; i < rr.roots.size(); ++i) {
    const double a = std::abs(rr.roots[i]);
    if (a > 1) m += std::log(a);
    if (a > 1 - 1e-3) err += rr.corrections[i] / std::max(a, 1.0);
  }
  err += 1e-15 * static_cast<double>(rr.roots.size());
  return m;
}

}  // namespace detail

/// m(p) = log|lead| + Σ log max(1,|α|) over the roots of a polynomial in
/// at most one variable (monomial factors contribute nothing).
inline MahlerResult mahler_univariate(const LaurentPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("mahler_univariate: zero polynomial");
  const auto dense = p.dense_univariate();
  const RootReport rr = integer_polynomial_roots(dense.coeffs);
  MahlerResult r;
  r.method = MahlerMethod::roots;
  r.value = detail::root_measure(rr, r.error_estimate);
  r.roots = rr.roots;
  for (int k = 0; k < rr.unit_roots_plus; ++k) r.roots.emplace_back(1.0, 0.0);
  for (int k = 0; k < rr.unit_roots_minus; ++k) r.roots.emplace_back(-1.0, 0.0);
  return r;
}

namespace detail {

/// Index of the variable that receives u^r; `t` when present, else the last.
inline int lawton_lead_variable(const LaurentPolynomial& p) {
  const int k = p.variable_index("t");
  return k >= 0 ? k : static_cast<int>(p.variables().size()) - 1;
}

inline LaurentPolynomial lawton_specialize(const LaurentPolynomial& p, long r) {
  const int lead = lawton_lead_variable(p);
  std::vector<LaurentPolynomial::Exponents> images;
  for (int i = 0; i < static_cast<int>(p.variables().size()); ++i)
    images.push_back({i == lead ? static_cast<int>(r) : 1});
  return p.substitute_monomials({"u"}, images);
}

}  // namespace detail

inline const std::vector<long>& default_lawton_schedule() {
  static const std::vector<long> s{40, 80, 160, 320, 640};
  return s;
}

/// Lawton limit: all variables except the lead one go to u, the lead one
/// (t) to u^r, for each r of the schedule. Returns the last stage with
/// error_estimate = |last - previous|; converged when that is below 1e-3.
inline MahlerResult mahler_lawton(const LaurentPolynomial& p,
                                  const std::vector<long>& schedule = default_lawton_schedule()) {
  if (p.is_zero()) throw std::invalid_argument("mahler_lawton: zero polynomial");
  if (schedule.empty()) throw std::invalid_argument("mahler_lawton: empty schedule");
  if (!std::is_sorted(schedule.begin(), schedule.end()) || schedule.front() < 1)
    throw std::invalid_argument("mahler_lawton: schedule must be positive and nondecreasing");
  const LaurentPolynomial q = p.trimmed();
  MahlerResult res;
  res.method = MahlerMethod::lawton;
  if (q.variables().size() <= 1) {
    MahlerResult u = mahler_univariate(q);
    res.value = u.value;
    res.error_estimate = u.error_estimate;
    res.stages.push_back({0, u.value, static_cast<int>(u.roots.size()), 0.0});
    res.note = "univariate input, no limit needed";
    return res;
  }
  for (long r : schedule) {
    const auto t0 = std::chrono::steady_clock::now();
    const LaurentPolynomial s = detail::lawton_specialize(q, r);
    MahlerStage st;
    st.parameter = r;
    if (s.is_zero()) {
      st.value = -INFINITY;
    } else {
      const auto d = s.dense_univariate();
      st.degree = static_cast<int>(d.coeffs.size()) - 1;
      st.value = mahler_univariate(s).value;
    }
    st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.stages.push_back(st);
  }
  res.value = res.stages.back().value;
  if (res.stages.size() >= 2) {
    res.error_estimate = std::abs(res.stages.back().value - res.stages[res.stages.size() - 2].value);
    res.converged = res.error_estimate < 1e-3;
  } else {
    res.error_estimate = NAN;
    res.converged = false;
    res.note = "single stage: no difference available";
  }
  return res;
}

enum class QuadratureRule {
  /// Uniform grid in every variable but the last; the last one is
  /// integrated exactly by Jensen's formula at each grid point.
  jensen_last,
  /// Uniform grid in every variable.
  plain,
};

namespace detail {

/// Σ log max(1,|α|) + log|lead| for complex coefficients (ascending).
inline double complex_jensen(std::vector<std::complex<double>> c) {
  double scale = 0;
  for (const auto& x : c) scale = std::max(scale, std::abs(x));
  const double eps = 1e-13 * scale;
  while (!c.empty() && std::abs(c.back()) <= eps) c.pop_back();
  std::size_t lo = 0;
  while (lo < c.size() && std::abs(c[lo]) <= eps) ++lo;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lo));
  if (c.empty()) return -INFINITY;
  const std::size_t d = c.size() - 1;
  double m = std::log(std::abs(c.back()));
  if (d == 0) return m;
  std::vector<std::complex<double>> roots;
  if (d == 1) {
    roots.push_back(-c[0] / c[1]);
  } else {
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i + 1 < d; ++i) comp(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
    for (std::size_t i = 0; i < d; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -c[i] / c.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) throw NumericalError("complex companion eigenvalues did not converge");
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) roots.push_back(es.eigenvalues()(i));
  }
  for (auto z : roots) {
    // one Newton step
    std::complex<double> v = 0, dv = 0;
    for (std::size_t k = c.size(); k-- > 0;) {
      dv = dv * z + v;
      v = v * z + c[k];
    }
    if (std::abs(dv) > 0) {
      const std::complex<double> z1 = z - v / dv;
      if (std::abs(z1 - z) < 1e-3 * std::max(1.0, std::abs(z))) z = z1;
    }
    const double a = std::abs(z);
    if (a > 1) m += std::log(a);
  }
  return m;
}

}  // namespace detail

/// Torus average of log|p| on a uniform grid of N points per dimension
/// (up to three variables, N a power of two >= 64). Points where |p| (or,
/// for jensen_last, the whole inner polynomial) is below 1e-14 count as
/// zero. error_estimate compares with the N/2 subgrid.
inline MahlerResult mahler_quadrature(const LaurentPolynomial& p, long n_points,
                                      QuadratureRule rule = QuadratureRule::jensen_last) {
  if (p.is_zero()) throw std::invalid_argument("mahler_quadrature: zero polynomial");
  const LaurentPolynomial q = p.trimmed();
  const std::size_t dim = q.variables().size();
  if (dim > 3) throw UnsupportedError("mahler_quadrature: more than three variables");
  if (n_points < 64 || (n_points & (n_points - 1)) != 0)
    throw std::invalid_argument("mahler_quadrature: N must be a power of two >= 64");
  const std::size_t grid_dim = rule == QuadratureRule::jensen_last && dim > 0 ? dim - 1 : dim;
  const double total_points = std::pow(static_cast<double>(n_points), static_cast<double>(grid_dim));
  if (total_points > double(1L << 30)) throw UnsupportedError("mahler_quadrature: grid too large");

  MahlerResult res;
  res.method = MahlerMethod::quadrature;
  const auto t0 = std::chrono::steady_clock::now();
  if (rule == QuadratureRule::jensen_last && dim <= 1) {
    const MahlerResult u = mahler_univariate(q);
    res.value = u.value;
    res.error_estimate = u.error_estimate;
    res.stages.push_back({n_points, u.value, 0, 0.0});
    res.note = "univariate input: exact inner integral, no grid needed";
    return res;
  }

  const long n = n_points;
  std::vector<std::complex<double>> omega(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k)
    omega[static_cast<std::size_t>(k)] = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / n);
  struct T {
    long e[3];
    long inner;
    double c;
  };
  const std::size_t inner_var = dim - 1;
  std::vector<T> terms;
  long inner_lo = 0, inner_hi = 0;
  bool first = true;
  for (const auto& [e, c] : q.terms()) {
    T t{{0, 0, 0}, 0, to_double(c)};
    for (std::size_t i = 0; i < grid_dim; ++i) t.e[i] = ((e[i] % n) + n) % n;
    if (grid_dim < dim) {
      t.inner = e[inner_var];
      inner_lo = first ? t.inner : std::min(inner_lo, t.inner);
      inner_hi = first ? t.inner : std::max(inner_hi, t.inner);
      first = false;
    }
    terms.push_back(t);
  }
  const long n1 = grid_dim >= 1 ? n : 1, n2 = grid_dim >= 2 ? n : 1, n3 = grid_dim >= 3 ? n : 1;
  double sum = 0, sum_half = 0;
  long skipped = 0;
  std::vector<std::complex<double>> coeffs(static_cast<std::size_t>(inner_hi - inner_lo + 1));
  for (long a = 0; a < n1; ++a)
    for (long b = 0; b < n2; ++b)
      for (long c = 0; c < n3; ++c) {
        double contrib;
        if (grid_dim == dim) {
          std::complex<double> v = 0;
          for (const T& t : terms)
            v += t.c * omega[static_cast<std::size_t>((a * t.e[0] + b * t.e[1] + c * t.e[2]) % n)];
          const double m = std::abs(v);
          contrib = m < 1e-14 ? 0.0 : std::log(m);
          if (m < 1e-14) ++skipped;
        } else {
          std::fill(coeffs.begin(), coeffs.end(), std::complex<double>(0));
          for (const T& t : terms)
            coeffs[static_cast<std::size_t>(t.inner - inner_lo)] +=
                t.c * omega[static_cast<std::size_t>((a * t.e[0] + b * t.e[1]) % n)];
          const double m = detail::complex_jensen(coeffs);
          contrib = std::isfinite(m) ? m : 0.0;
          if (!std::isfinite(m)) ++skipped;
        }
        sum += contrib;
        if (a % 2 == 0 && b % 2 == 0 && c % 2 == 0) sum_half += contrib;
      }
  res.value = sum / total_points;
  const double half = sum_half / (total_points / std::pow(2.0, static_cast<double>(grid_dim)));
  res.error_estimate = std::abs(res.value - half);
  res.stages.push_back({n / 2, half, 0, 0.0});
  res.stages.push_back({n, res.value, static_cast<int>(skipped),
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()});
  if (skipped) res.note = std::to_string(skipped) + " grid points hit zeros and were omitted";
  return res;
}

/// Cyclotomic polynomial Φ_n as the product of (u^d - 1)^{μ(n/d)}.
inline IntPoly cyclotomic_polynomial(long n) {
  auto mobius = [](long m) {
    int s = 1;
    for (long p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) return 0;
        s = -s;
      }
    return m > 1 ? -s : s;
  };
  IntPoly num{Integer(1)}, den{Integer(1)};
  auto times_binomial = [](IntPoly& a, long d) {  // a *= (u^d - 1)
    IntPoly r(a.size() + static_cast<std::size_t>(d), Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      r[i + static_cast<std::size_t>(d)] += a[i];
      r[i] -= a[i];
    }
    a = std::move(r);
  };
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) {
      const int mu = mobius(n / d);
      if (mu == 1) times_binomial(num, d);
      if (mu == -1) times_binomial(den, d);
    }
  IntPoly q;
  if (!poly::divide_exact(num, den, q)) throw std::logic_error("cyclotomic_polynomial: internal error");
  return q;
}

inline long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  if (n > 1) r -= r / n;
  return r;
}

/// Degree limit for the exact cyclotomic confirmation in is_kronecker.
inline constexpr int kKroneckerExactDegree = 64;

/// Kronecker test: |lead| = |trail| = 1 and every root within tol of the
/// unit circle. Up to degree 64 a positive answer is confirmed exactly by
/// stripping cyclotomic factors Φ_n (φ(n) <= degree) until 1 remains.
inline bool is_kronecker(const LaurentPolynomial& p, double tol = 1e-6) {
  if (p.is_zero()) return false;
  auto dense = p.dense_univariate().coeffs;
  poly::normalize(dense);
  std::size_t z = 0;
  while (dense[z] == 0) ++z;
  dense.erase(dense.begin(), dense.begin() + static_cast<std::ptrdiff_t>(z));
  if (abs(dense.back()) != 1 || abs(dense.front()) != 1) return false;
  const RootReport rr = integer_polynomial_roots(dense);
  for (const auto& r : rr.roots)
    if (std::abs(std::abs(r) - 1.0) > tol) return false;
  const int deg = poly::degree(dense);
  if (deg > kKroneckerExactDegree) return true;
  IntPoly rest = dense;
  const long bound = 2L * deg * deg + 2;
  for (long n = 1; n <= bound && poly::degree(rest) > 0; ++n) {
    if (euler_phi(n) > poly::degree(rest)) continue;
    const IntPoly c = cyclotomic_polynomial(n);
    IntPoly q;
    while (poly::degree(rest) >= poly::degree(c) && poly::divide_exact(rest, c, q)) rest = q;
  }
  return poly::degree(rest) == 0;
}

struct CyclotomicCheck {
  bool result = false;
  MahlerResult lawton;
  MahlerResult quadrature;
  std::string warning;
};

/// Numerical semi-decision for "monomial times cyclotomics evaluated at
/// monomials": both the Lawton value and the quadrature value must be
/// below tol. More than two variables are quadrature-checked on the
/// diagonal specialization (all variables but t set equal).
inline CyclotomicCheck generalized_cyclotomic_check(const LaurentPolynomial& p, double tol = 0.05,
                                                    const std::vector<long>& schedule = {40, 80, 160},
                                                    long grid = 2048) {
  CyclotomicCheck out;
  LaurentPolynomial q = p.trimmed();
  if (q.is_zero()) throw std::invalid_argument("is_generalized_cyclotomic: zero polynomial");
  if (const Integer c = q.content(); c != 1) {
    out.warning = "content " + c.str() + " divided out";
    q = q.primitive_part();
  }
  out.lawton = mahler_lawton(q, schedule);
  LaurentPolynomial diag = q;
  if (q.variables().size() > 2) {
    const int lead = detail::lawton_lead_variable(q);
    std::vector<LaurentPolynomial::Exponents> images;
    for (int i = 0; i < static_cast<int>(q.variables().size()); ++i)
      images.push_back(i == lead ? LaurentPolynomial::Exponents{0, 1} : LaurentPolynomial::Exponents{1, 0});
    diag = q.substitute_monomials({"y", "t"}, images);
  }
  out.quadrature = q.variables().empty() ? out.lawton : mahler_quadrature(diag, grid);
  out.result = out.lawton.value < tol && out.quadrature.value < tol;
  return out;
}

inline bool is_generalized_cyclotomic(const LaurentPolynomial& p, double tol = 0.05) {
  return generalized_cyclotomic_check(p, tol).result;
}

}  // namespace magnus_torsion
