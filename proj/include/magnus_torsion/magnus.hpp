#pragma once

#include "automorphism.hpp"
#include "group_ring.hpp"
#include "laurent.hpp"
#include "matrix.hpp"
#include "pik.hpp"

#include <memory>
#include <string>
#include <vector>

namespace magnus_torsion {

using MagnusMatrix = Matrix<IntGroupRing>;
using AbelianMatrix = Matrix<LaurentPolynomial>;
using AlexanderMatrix = Matrix<PiKRing<Integer>>;

inline std::vector<std::string> homology_variables(int genus) {
  std::vector<std::string> v;
  for (int i = 1; i <= 2 * genus; ++i) v.push_back("y" + std::to_string(i));
  return v;
}

/// r(φ)_{ij} = overline(∂φ*(x_j)/∂x_i), indices 1-based in the math and
/// 0-based in the matrix.
inline MagnusMatrix magnus_matrix(const FreeAutomorphism& phi) {
  const int r = phi.rank();
  MagnusMatrix m(static_cast<std::size_t>(r), static_cast<std::size_t>(r), IntGroupRing(r));
  for (int j = 1; j <= r; ++j)
    for (int i = 1; i <= r; ++i)
      m(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) =
          fox_derivative(phi.image(j), i).involution();
  return m;
}

/// r₁(φ): column j holds the exponent sums of φ*(x_j), so
/// homology_action(φ∘ψ) = homology_action(φ)·homology_action(ψ).
inline IntegerMatrix homology_action(const FreeAutomorphism& phi) {
  const auto r = static_cast<std::size_t>(phi.rank());
  IntegerMatrix h(r, r, Integer(0));
  for (std::size_t j = 0; j < r; ++j) {
    const auto ab = phi.images()[j].abelianize();
    for (std::size_t i = 0; i < r; ++i) h(i, j) = ab[i];
  }
  return h;
}

inline bool is_torelli(const FreeAutomorphism& phi) {
  return homology_action(phi) == identity_matrix(static_cast<std::size_t>(phi.rank()));
}

/// Image in Z[H₁] = Z[y₁^{±1},…,y_{2g}^{±1}].
inline LaurentPolynomial abelianize(const IntGroupRing& a) {
  const int genus = a.rank() / 2;
  LaurentPolynomial p(homology_variables(genus));
  for (const auto& [w, c] : a.terms()) {
    const auto ab = w.abelianize();
    p.add_term(LaurentPolynomial::Exponents(ab.begin(), ab.end()), c);
  }
  return p;
}

inline AbelianMatrix r2_matrix(const FreeAutomorphism& phi) {
  return magnus_matrix(phi).map([](const IntGroupRing& x) { return abelianize(x); });
}

/// Δ_{r₁(φ)}(t) = det(tI − r₁(φ)).
inline LaurentPolynomial char_poly_r1(const FreeAutomorphism& phi) {
  const IntegerMatrix h = homology_action(phi);
  const std::size_t n = h.rows();
  AbelianMatrix m(n, n, LaurentPolynomial({"t"}));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      LaurentPolynomial e = LaurentPolynomial::constant(-h(i, j), {"t"});
      if (i == j) e += LaurentPolynomial::variable("t");
      m(i, j) = e;
    }
  return determinant(m);
}

/// Fox matrix of the mapping-torus relators r_i = t x_i t⁻¹ φ*(x_i)⁻¹,
/// projected to π(k): A_{ij} = t δ_{ij} − p_k(∂φ*(x_i)/∂x_j).
/// k = 1 sends every word to 1; k = 2 sends a word to its homology class.
inline AlexanderMatrix alexander_matrix(const FreeAutomorphism& phi, int k) {
  if (k != 1 && k != 2)
    throw UnsupportedError("alexander_matrix: only k = 1, 2 are supported (k >= 3 needs free nilpotent "
                           "normal forms, which are out of scope)");
  const int r = phi.rank();
  auto ctx = k == 1 ? std::make_shared<const PiKContext>()
                    : std::make_shared<const PiKContext>(homology_action(phi));
  const auto n = static_cast<std::size_t>(r);
  AlexanderMatrix a(n, n, PiKRing<Integer>(ctx));
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= r; ++j) {
      PiKRing<Integer> e(ctx);
      if (i == j) e += PiKRing<Integer>::monomial(ctx, PiKContext::element({}, 1));
      const IntGroupRing d = fox_derivative(phi.image(i), j);
      for (const auto& [w, c] : d.terms()) {
        PiKElement g;
        if (k == 2) {
          const auto ab = w.abelianize();
          std::copy(ab.begin(), ab.end(), g.v.begin());
        }
        e -= PiKRing<Integer>::monomial(ctx, g, c);
      }
      a(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = e;
    }
  return a;
}

/// True when every homology class occurring in A₂ is fixed by r₁(φ), so
/// A₂ has entries in a commutative subring of Zπ(2). Torelli maps qualify.
inline bool has_commutative_alexander(const FreeAutomorphism& phi) {
  const AlexanderMatrix a = alexander_matrix(phi, 2);
  const IntegerMatrix h = homology_action(phi);
  const std::size_t n = h.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [g, c] : a(i, j).terms())
        for (std::size_t row = 0; row < n; ++row) {
          Integer s = 0;
          for (std::size_t col = 0; col < n; ++col) s += h(row, col) * g.v[col];
          if (s != g.v[row]) return false;
        }
  return true;
}

/// Δ_{r₂(φ)} = det A₂ = det(tI − overline(r₂(φ))) in y₁..y_{2g}, t.
inline LaurentPolynomial delta_r2(const FreeAutomorphism& phi) {
  if (!has_commutative_alexander(phi))
    throw UnsupportedError("delta_r2: A2 is not commutative for '" + phi.label() +
                           "' (needs a Torelli map, or one fixing every occurring homology class); "
                           "use the FK series route (log_tauk_series with k = 2) instead");
  const AlexanderMatrix a = alexander_matrix(phi, 2);
  return determinant(a.map([](const PiKRing<Integer>& x) { return x.to_laurent(); }));
}

}  // namespace magnus_torsion
