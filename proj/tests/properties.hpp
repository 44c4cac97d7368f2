#pragma once

#include "property.hpp"

#include <functional>
#include <sstream>

namespace magnus_torsion::testing {

/// Result of a randomized suite: number of cases run and the first failure.
struct Outcome {
  int cases = 0;
  std::string failure;
  bool ok() const { return failure.empty() && cases >= kCases; }
};

inline IntGroupRing ring_of(const Word& w) { return IntGroupRing::from_word(w); }

inline Outcome fundamental_formula() {
  auto r = rng(1);
  Outcome o;
  for (; o.cases < kCases; ++o.cases) {
    const int rank = uniform(r, 0, 1) ? 2 : 4;
    const Word gamma = random_word(r, rank);
    IntGroupRing rhs(rank);
    for (int i = 1; i <= rank; ++i)
      rhs += fox_derivative(gamma, i) * (ring_of(Word::generator(rank, i)) - IntGroupRing::one(rank));
    if (rhs != ring_of(gamma) - IntGroupRing::one(rank)) return {o.cases, "gamma = " + gamma.to_string()};
  }
  return o;
}

inline Outcome fox_rules() {
  auto r = rng(2);
  Outcome o;
  for (; o.cases < kCases; ++o.cases) {
    const Word u = random_word(r, 4), v = random_word(r, 4);
    const int i = static_cast<int>(uniform(r, 1, 4));
    if (fox_derivative(u * v, i) != fox_derivative(u, i) + ring_of(u) * fox_derivative(v, i))
      return {o.cases, "product rule, u = " + u.to_string() + ", v = " + v.to_string()};
    if (fox_derivative(u.inverse(), i) != -(ring_of(u.inverse()) * fox_derivative(u, i)))
      return {o.cases, "inverse rule, u = " + u.to_string()};
  }
  return o;
}

inline Outcome involution_anti_automorphism() {
  auto r = rng(4);
  Outcome o;
  for (; o.cases < kCases; ++o.cases) {
    const auto a = random_ring(r, 4), b = random_ring(r, 4);
    if (a.involution().involution() != a) return {o.cases, "not involutive on " + a.to_string()};
    if ((a * b).involution() != b.involution() * a.involution())
      return {o.cases, "not anti-multiplicative on " + a.to_string() + " and " + b.to_string()};
  }
  return o;
}

inline const FreeAutomorphism& pick(std::mt19937_64& r, const std::vector<FreeAutomorphism>& pool) {
  return pool[static_cast<std::size_t>(uniform(r, 0, static_cast<long>(pool.size()) - 1))];
}

/// ∂(φψ)(x_j)/∂x_i = Σ_k φ(∂ψ(x_j)/∂x_k) · ∂φ(x_k)/∂x_i over random catalog pairs.
inline Outcome chain_rule(const Catalog& cat = Catalog::standard()) {
  auto r = rng(21);
  std::map<int, std::vector<FreeAutomorphism>> by_genus;
  for (const auto& f : cat.sweep()) by_genus[f.genus()].push_back(f);
  Outcome o;
  for (; o.cases < kCases; ++o.cases) {
    const auto& pool = by_genus[static_cast<int>(uniform(r, 1, 3))];
    const auto &phi = pick(r, pool), &psi = pick(r, pool);
    const int rank = phi.rank();
    const int i = static_cast<int>(uniform(r, 1, rank)), j = static_cast<int>(uniform(r, 1, rank));
    IntGroupRing rhs(rank);
    for (int k = 1; k <= rank; ++k) rhs += phi.apply_ring(fox_derivative(psi.image(j), k)) * fox_derivative(phi.image(k), i);
    if (fox_derivative(compose(phi, psi).image(j), i) != rhs) return {o.cases, phi.label() + " o " + psi.label()};
  }
  return o;
}

/// Random products of catalog elements have symplectic homology action.
inline Outcome symplectic_r1(const Catalog& cat = Catalog::standard()) {
  auto r = rng(22);
  const auto all = cat.sweep();
  Outcome o;
  for (; o.cases < kCases; ++o.cases) {
    const auto& a = pick(r, all);
    std::vector<FreeAutomorphism> f{a};
    for (const auto& b : all)
      if (b.genus() == a.genus() && uniform(r, 0, 9) == 0) f.push_back(uniform(r, 0, 1) ? b : b.inverse());
    const auto h = homology_action(product(a.genus(), f));
    if (!is_symplectic(h)) return {o.cases, to_string(h)};
  }
  return o;
}

inline Outcome jensen_additivity() {
  auto r = rng(31);
  Outcome o;
  for (; o.cases < kCases; ++o.cases) {
    const auto p = random_poly(r), q = random_poly(r);
    const double mp = mahler_univariate(p).value, mq = mahler_univariate(q).value;
    const double mpq = mahler_univariate(p * q).value;
    if (std::abs(mpq - mp - mq) > 1e-9 || mp < -1e-9)
      return {o.cases, "m(pq) = " + std::to_string(mpq) + " vs " + std::to_string(mp + mq) + " for " + p.to_string() +
                           " | " + q.to_string()};
  }
  return o;
}

/// 2x2 matrix over Z[t^{±1}] with diagonal 4 + small and small off-diagonal
/// entries, so its smallest singular value on the circle is at least 1.
inline Matrix<LaurentPolynomial> dominant_matrix(std::mt19937_64& r) {
  Matrix<LaurentPolynomial> m(2, 2, LaurentPolynomial({"t"}));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      LaurentPolynomial e({"t"});
      if (i == j) {
        e.add_term({0}, Integer(uniform(r, 0, 1) ? 4 : -4));
        e.add_term({static_cast<int>(uniform(r, 1, 3))}, Integer(uniform(r, -1, 1)));
      } else {
        e.add_term({static_cast<int>(uniform(r, -3, 3))}, Integer(uniform(r, -1, 1)));
        e.add_term({static_cast<int>(uniform(r, 4, 6))}, Integer(uniform(r, -1, 1)));
      }
      m(i, j) = e;
    }
  return m;
}

inline LaurentSeries series_of(const LaurentPolynomial& p) {
  if (p.is_zero()) return {};
  const auto d = p.dense_univariate();
  std::vector<double> c;
  for (const auto& x : d.coeffs) c.push_back(to_double(x));
  return LaurentSeries(d.low, c);
}

/// fk_log_det with K and with 2K agree within 2e-3, and both match the
/// Mahler measure of the determinant.
inline Outcome fk_k_independence() {
  auto r = rng(42);
  Outcome o;
  for (; o.cases < kCases; ++o.cases) {
    const auto m = dominant_matrix(r);
    const auto b = m.map([](const LaurentPolynomial& p) { return series_of(p); });
    const auto base = fk_log_det(b);
    FKOptions twice;
    twice.K = 2 * base.K;
    const double doubled = fk_log_det(b, twice).log_det;
    const double mahler = mahler_univariate(determinant(m)).value;
    if (std::abs(base.log_det - doubled) > 2e-3 || std::abs(base.log_det - mahler) > 2e-3) {
      std::ostringstream s;
      s << "case " << o.cases << ": K=" << base.K << " gives " << base.log_det << ", 2K gives " << doubled
        << ", Mahler " << mahler;
      return {o.cases, s.str()};
    }
  }
  return o;
}

/// tr((I − K⁻²BB*)^p) is nonnegative and nonincreasing for random 2x2
/// matrices over the group ring of Z² ⋊ Z.
inline Outcome monotone_betti_tail() {
  auto r = rng(43);
  const auto ctx = std::make_shared<const PiKContext>(integer_matrix({{1, 1}, {0, 1}}));
  Outcome o;
  for (; o.cases < kCases; ++o.cases) {
    Matrix<PiKRing<double>> b(2, 2, PiKRing<double>(ctx));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          b(i, j) += PiKRing<double>::monomial(
              ctx, PiKContext::element({uniform(r, -1, 1), uniform(r, -1, 1)}, uniform(r, -1, 1)),
              static_cast<double>(uniform(r, -2, 2)));
    bool zero = true;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) zero &= b(i, j).is_zero();
    if (zero) b(0, 0) = PiKRing<double>::monomial(ctx, PiKElement{});
    std::vector<double> tail;
    try {
      FKOptions f;
      f.refine_steps = 1;
      tail = l2_betti_tail(b, 16, f);
    } catch (const std::exception& e) {
      return {o.cases, e.what()};
    }
    for (std::size_t p = 0; p < tail.size(); ++p) {
      if (tail[p] < 0 || (p > 0 && tail[p] > tail[p - 1] + 1e-9))
        return {o.cases, "tail not monotone at p = " + std::to_string(p + 1)};
    }
  }
  return o;
}

struct Suite {
  const char* name;
  std::function<Outcome()> run;
};

inline std::vector<Suite> property_suites() {
  return {{"fundamental formula", [] { return fundamental_formula(); }},
          {"Fox product and inverse rules", [] { return fox_rules(); }},
          {"involution anti-automorphism", [] { return involution_anti_automorphism(); }},
          {"chain rule on catalog pairs", [] { return chain_rule(); }},
          {"symplectic homology action", [] { return symplectic_r1(); }},
          {"Jensen additivity", [] { return jensen_additivity(); }},
          {"K-independence of the FK determinant", [] { return fk_k_independence(); }},
          {"monotone L2-Betti tail", [] { return monotone_betti_tail(); }}};
}

}  // namespace magnus_torsion::testing
