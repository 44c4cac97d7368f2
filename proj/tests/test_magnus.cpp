#include "properties.hpp"

#include <gtest/gtest.h>

using namespace magnus_torsion;
namespace mt = magnus_torsion::testing;

namespace {

const Catalog& cat() { return Catalog::standard(); }
LaurentPolynomial P(const char* s) { return LaurentPolynomial::parse(s); }
IntGroupRing G(int rank, const char* w) { return IntGroupRing::from_word(Word::parse(rank, w)); }

LaurentPolynomial at_y_one(LaurentPolynomial p) {
  for (const auto& v : std::vector<std::string>(p.variables()))
    if (v != "t") p = p.specialize(v, 1);
  return p;
}

Matrix<LaurentPolynomial> laurent(const AlexanderMatrix& a) {
  return a.map([](const PiKRing<Integer>& x) { return x.to_laurent(); });
}

Matrix<LaurentPolynomial> times(const AbelianMatrix& a, const AbelianMatrix& b) {
  Matrix<LaurentPolynomial> r(a.rows(), b.cols(), LaurentPolynomial());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) r(i, j) = r(i, j) + a(i, k) * b(k, j);
  return r;
}

std::vector<FreeAutomorphism> torelli_samples() {
  std::vector<FreeAutomorphism> out;
  for (const auto& f : cat().sweep())
    if (is_torelli(f)) out.push_back(f);
  return out;
}

}  // namespace

TEST(Magnus, IdentityMatrix) {
  const auto m = magnus_matrix(FreeAutomorphism::identity(2));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      EXPECT_EQ(m(i, j), i == j ? IntGroupRing::one(4) : IntGroupRing::zero(4));
}

TEST(Magnus, TwistColumn) {
  const auto m = magnus_matrix(cat().make("disjoint_twists", {1, 1, 3}));
  EXPECT_EQ(m(0, 0), IntGroupRing::one(2));
  EXPECT_TRUE(m(1, 0).is_zero());
  EXPECT_EQ(m(0, 1), IntGroupRing::one(2) + G(2, "X1") + G(2, "X1 X1"));
  EXPECT_EQ(m(1, 1), G(2, "X1 X1 X1"));
}

TEST(Magnus, R2OfTwist) {
  const auto r = r2_matrix(cat().make("disjoint_twists", {1, 1, 3}));
  EXPECT_EQ(r(0, 0), P("1"));
  EXPECT_EQ(r(0, 1), P("1 + y1^-1 + y1^-2"));
  EXPECT_TRUE(r(1, 0).is_zero());
  EXPECT_EQ(r(1, 1), P("y1^-3"));
}

TEST(Magnus, BsccAbelianizesToIdentity) {
  const auto r = r2_matrix(cat().make("bscc", {1, 1}));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(at_y_one(r(i, j)), P(i == j ? "1" : "0"));
}

TEST(Magnus, CharPoly) {
  EXPECT_EQ(char_poly_r1(FreeAutomorphism::identity(1)), P("(t-1)^2"));
  for (long q = -8; q <= 8; ++q) {
    LaurentPolynomial expected = P("t^2+1") - Integer(q) * P("t");
    EXPECT_EQ(char_poly_r1(cat().make("genus1_slz", {q, 1, -1, 0})), expected) << q;
  }
  EXPECT_EQ(char_poly_r1(cat().make("paper_g2_pA", {})), P("t^4 - 9*t^3 + 21*t^2 - 9*t + 1"));
}

TEST(Magnus, AlexanderMatrices) {
  const auto a1 = laurent(alexander_matrix(cat().make("disjoint_twists", {1, 1, 4}), 1));
  EXPECT_EQ(a1(0, 0), P("t-1"));
  EXPECT_TRUE(a1(0, 1).is_zero());
  EXPECT_EQ(a1(1, 0), P("-4"));
  EXPECT_EQ(a1(1, 1), P("t-1"));

  const auto a2 = laurent(alexander_matrix(cat().make("disjoint_twists", {1, 1, 3}), 2));
  EXPECT_EQ(a2(0, 0), P("t-1"));
  EXPECT_TRUE(a2(0, 1).is_zero());
  EXPECT_EQ(a2(1, 0), P("-(1 + y1 + y1^2)"));
  EXPECT_EQ(a2(1, 1), P("t - y1^3"));

  const auto id = laurent(alexander_matrix(FreeAutomorphism::identity(2), 1));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(id(i, j), i == j ? P("t-1") : P("0"));

  EXPECT_THROW(alexander_matrix(FreeAutomorphism::identity(1), 3), UnsupportedError);
}

TEST(Magnus, AlexanderIsTransposedInvolutedMagnus) {
  for (const auto& f : cat().sweep()) {
    const auto a = laurent(alexander_matrix(f, 2));
    const auto r = r2_matrix(f);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        // overline acts on the abelian ring as y -> 1/y.
        std::vector<LaurentPolynomial::Exponents> inv;
        for (std::size_t k = 0; k < r(j, i).variables().size(); ++k) {
          LaurentPolynomial::Exponents e(r(j, i).variables().size(), 0);
          e[k] = -1;
          inv.push_back(e);
        }
        const auto bar = r(j, i).substitute_monomials(r(j, i).variables(), inv);
        ASSERT_EQ(a(i, j), (i == j ? P("t") : P("0")) - bar) << f.label() << " " << i << "," << j;
      }
  }
}

TEST(Magnus, DeltaR2) {
  for (auto [g, h] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}, {3, 2}})
    EXPECT_EQ(delta_r2(cat().make("bscc", {g, h})), P("t-1").pow(static_cast<unsigned>(2 * g)));
  EXPECT_EQ(delta_r2(cat().make("bp", {2, 1})), P("(t-1)^2*(t-y4)^2"));
  EXPECT_TRUE(equivalent_up_to_relabeling(delta_r2(cat().make("paper_g2_torelli", {})),
                                          P("(t-1)^4 + t*(t-1)^2*(y1-2+y1^-1)*(y2-2+y2^-1)")));
  EXPECT_THROW(delta_r2(cat().make("paper_g2_pA", {})), UnsupportedError);
}

TEST(Magnus, DeterminantsMatchCharPoly) {
  for (const auto& f : cat().sweep()) {
    const auto d = determinant(laurent(alexander_matrix(f, 1)));
    EXPECT_EQ(unit_normalized(d), unit_normalized(char_poly_r1(f))) << f.label();
    if (is_torelli(f)) {
      EXPECT_EQ(at_y_one(delta_r2(f)), P("t-1").pow(static_cast<unsigned>(2 * f.genus()))) << f.label();
    }
  }
}

TEST(Magnus, InjectiveOnSamples) {
  const auto all = cat().sweep();
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      if (all[a].genus() != all[b].genus() || all[a].images() == all[b].images()) continue;
      EXPECT_FALSE(magnus_matrix(all[a]) == magnus_matrix(all[b])) << all[a].label() << " " << all[b].label();
    }
}

TEST(Magnus, R2SpecializesToHomology) {
  for (const auto& f : cat().sweep()) {
    const auto r = r2_matrix(f);
    const auto h = homology_action(f);
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t j = 0; j < h.cols(); ++j)
        ASSERT_EQ(at_y_one(r(i, j)), LaurentPolynomial::constant(h(i, j))) << f.label();
  }
}

TEST(Property, ChainRule) {
  const auto o = mt::chain_rule();
  EXPECT_TRUE(o.ok()) << o.cases << " cases, " << o.failure;
}

TEST(Property, SymplecticHomology) {
  const auto o = mt::symplectic_r1();
  EXPECT_TRUE(o.ok()) << o.cases << " cases, " << o.failure;
}

TEST(Property, R2MultiplicativeOnTorelli) {
  auto r = mt::rng(23);
  const auto pool = torelli_samples();
  int checked = 0;
  while (checked < mt::kCases) {
    const auto& phi = pool[static_cast<std::size_t>(mt::uniform(r, 0, static_cast<long>(pool.size()) - 1))];
    const auto& psi = pool[static_cast<std::size_t>(mt::uniform(r, 0, static_cast<long>(pool.size()) - 1))];
    if (phi.genus() != psi.genus()) continue;
    ++checked;
    const auto lhs = r2_matrix(compose(phi, psi));
    const auto rhs = times(r2_matrix(phi), r2_matrix(psi));
    for (std::size_t i = 0; i < lhs.rows(); ++i)
      for (std::size_t j = 0; j < lhs.cols(); ++j) ASSERT_EQ(lhs(i, j), rhs(i, j)) << phi.label() << " " << psi.label();
  }
}
