#pragma once

#include "automorphism.hpp"
#include "magnus.hpp"
#include "mahler.hpp"

#include <numbers>
#include <string>
#include <vector>

namespace magnus_torsion {

/// −3π·log τ, the volume scale.
inline double neg3pi(double log_tau) { return -3.0 * std::numbers::pi * log_tau + 0.0; }

struct InvariantResult {
  std::string invariant;  // tau1, tau2, tauk1, tauk2
  std::string method;
  double value = 0;  // natural log of the torsion
  double error_estimate = 0;
  MahlerResult mahler;
  /// Quadrature cross-check (log τ₂ only); NaN when not run.
  double cross_check = NAN;
  std::string polynomial;
  std::string note;

  double neg3pi_value() const { return neg3pi(value); }
};

/// log τ₁(M_φ) = −2 m(Δ_{r₁(φ)}).
inline InvariantResult log_tau1(const FreeAutomorphism& phi) {
  InvariantResult r;
  r.invariant = "tau1";
  r.method = "roots";
  const LaurentPolynomial cp = char_poly_r1(phi);
  r.polynomial = cp.to_string();
  r.mahler = mahler_univariate(cp);
  r.value = -2.0 * r.mahler.value + 0.0;  // no negative zero
  r.error_estimate = 2.0 * r.mahler.error_estimate;
  return r;
}

struct Tau2Options {
  std::vector<long> schedule = default_lawton_schedule();
  /// Grid for the quadrature cross-check; 0 disables it.
  long quadrature_grid = 1024;
};

/// log τ₂(M_φ) = −2 m(Δ_{r₂(φ)}) through the Lawton limit. Genus 1 is
/// always 0. For genus >= 2 the Alexander matrix A₂ must be commutative
/// (Torelli, or every occurring homology class fixed by φ).
inline InvariantResult log_tau2(const FreeAutomorphism& phi, const Tau2Options& opts = {}) {
  InvariantResult r;
  r.invariant = "tau2";
  if (phi.genus() == 1) {
    r.method = "genus1";
    r.note = "log tau2 vanishes on the genus-1 mapping class group";
    return r;
  }
  const LaurentPolynomial delta = delta_r2(phi);
  r.polynomial = delta.to_string();
  r.method = "lawton";
  r.mahler = mahler_lawton(delta, opts.schedule);
  r.value = -2.0 * r.mahler.value + 0.0;  // no negative zero
  r.error_estimate = 2.0 * (std::isnan(r.mahler.error_estimate) ? 0.0 : r.mahler.error_estimate);
  const LaurentPolynomial q = delta.trimmed();
  if (opts.quadrature_grid > 0 && q.variables().size() >= 2) {
    const int lead = detail::lawton_lead_variable(q);
    std::vector<LaurentPolynomial::Exponents> images;
    for (int i = 0; i < static_cast<int>(q.variables().size()); ++i)
      images.push_back(i == lead ? LaurentPolynomial::Exponents{0, 1} : LaurentPolynomial::Exponents{1, 0});
    const LaurentPolynomial diag = q.substitute_monomials({"y", "t"}, images);
    r.cross_check = -2.0 * mahler_quadrature(diag, opts.quadrature_grid).value;
  }
  return r;
}

}  // namespace magnus_torsion
