#pragma once

#include "automorphism.hpp"
#include "matrix.hpp"

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace magnus_torsion {

namespace twists {

inline Word gen(int rank, int i) { return Word::generator(rank, i); }
inline Word inv(int rank, int i) { return Word::generator(rank, -i); }

inline std::vector<Word> identity_images(int genus) {
  std::vector<Word> v;
  for (int i = 1; i <= 2 * genus; ++i) v.push_back(gen(2 * genus, i));
  return v;
}

/// k-fold twist along the curve carrying x_{2i-1}: x_{2i} ↦ x_{2i-1}^k x_{2i}.
inline FreeAutomorphism along_a(int genus, int i, long k = 1) {
  const int rank = 2 * genus;
  auto make = [&](long e) {
    auto v = identity_images(genus);
    v[static_cast<std::size_t>(2 * i - 1)] = Word::power(rank, 2 * i - 1, e) * gen(rank, 2 * i);
    return v;
  };
  return FreeAutomorphism(genus, make(k), "Ta" + std::to_string(i) + "^" + std::to_string(k),
                          make(-k));
}

/// k-fold twist along the curve carrying x_{2i}: x_{2i-1} ↦ x_{2i}^{-k} x_{2i-1}.
inline FreeAutomorphism along_b(int genus, int i, long k = 1) {
  const int rank = 2 * genus;
  auto make = [&](long e) {
    auto v = identity_images(genus);
    v[static_cast<std::size_t>(2 * i - 2)] = Word::power(rank, 2 * i, -e) * gen(rank, 2 * i - 1);
    return v;
  };
  return FreeAutomorphism(genus, make(k), "Tb" + std::to_string(i) + "^" + std::to_string(k),
                          make(-k));
}

/// Twist along the curve linking handles i and i+1 (the middle link of
/// the Humphries chain).
inline FreeAutomorphism connector(int genus, int i) {
  if (i < 1 || i >= genus) throw std::out_of_range("connector: handle index out of range");
  const int rank = 2 * genus;
  const int a = 2 * i - 1, b = 2 * i, c = 2 * i + 1, d = 2 * i + 2;
  auto w = [&](std::initializer_list<Letter> ls) { return Word::reduce(rank, ls); };
  auto fwd = identity_images(genus);
  fwd[a - 1] = w({-c, d, c, -b, a});
  fwd[b - 1] = w({-c, d, c, b, -c, -d, c});
  fwd[c - 1] = w({c, b, -c, -d, c});
  auto bwd = identity_images(genus);
  bwd[a - 1] = w({b, -c, -d, c, a});
  bwd[b - 1] = w({b, -c, -d, c, b, -c, d, c, -b});
  bwd[c - 1] = w({d, c, -b});
  return FreeAutomorphism(genus, std::move(fwd), "C" + std::to_string(i), std::move(bwd));
}

/// j-th twist of the Humphries chain of length 2g+1:
/// Tb1, Ta1, C1, Ta2, C2, ..., C(g-1), Tag, Tbg.
inline FreeAutomorphism chain(int genus, int j) {
  if (j < 1 || j > 2 * genus + 1) throw std::out_of_range("chain: index out of range");
  if (j == 1) return along_b(genus, 1);
  if (j == 2 * genus + 1) return along_b(genus, genus);
  if (j % 2 == 0) return along_a(genus, j / 2);
  return connector(genus, (j - 1) / 2);
}

}  // namespace twists

/// Left-to-right product f1∘f2∘...∘fn (fn is applied first).
inline FreeAutomorphism product(int genus, const std::vector<FreeAutomorphism>& factors) {
  FreeAutomorphism r = FreeAutomorphism::identity(genus);
  for (const auto& f : factors) r = compose(r, f);
  return r;
}


class Catalog;

struct CatalogEntry {
  std::string name;
  std::string signature;
  std::string anchor;
  std::function<FreeAutomorphism(const Catalog&, const std::vector<long>&)> make;
  /// Parameter sets used when the whole catalog is swept.
  std::vector<std::vector<long>> samples;
};

/// Read-only table of the named mapping classes. The genus-2 Lickorish
/// generators can be replaced, which lets tests inject a faulty twist and
/// watch the regression suite catch it.
class Catalog {
 public:
  Catalog() { build(); }

  static const Catalog& standard() {
    static const Catalog c;
    return c;
  }

  const std::vector<CatalogEntry>& entries() const { return entries_; }

  const CatalogEntry& entry(std::string_view name) const {
    for (const auto& e : entries_)
      if (e.name == name) return e;
    throw std::invalid_argument("unknown catalog entry '" + std::string(name) + "'");
  }

  FreeAutomorphism make(std::string_view name, const std::vector<long>& params) const {
    FreeAutomorphism f = entry(name).make(*this, params);
    f.set_label(reference(name, params));
    return f;
  }

  /// Accepts `catalog:name(p1,p2,...)`, `name(...)` or a bare `name`.
  FreeAutomorphism resolve(std::string_view ref) const {
    std::string s(ref);
    if (s.rfind("catalog:", 0) == 0) s.erase(0, 8);
    std::string name = s;
    std::vector<long> params;
    if (auto open = s.find('('); open != std::string::npos) {
      if (s.back() != ')') throw std::invalid_argument("bad catalog reference '" + s + "'");
      name = s.substr(0, open);
      std::string inner = s.substr(open + 1, s.size() - open - 2);
      std::size_t pos = 0;
      while (pos < inner.size()) {
        std::size_t comma = inner.find(',', pos);
        if (comma == std::string::npos) comma = inner.size();
        std::string tok = inner.substr(pos, comma - pos);
        try {
          std::size_t used = 0;
          params.push_back(std::stol(tok, &used));
          while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
          if (used != tok.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          throw std::invalid_argument("bad catalog parameter '" + tok + "'");
        }
        pos = comma + 1;
      }
    }
    return make(name, params);
  }

  static std::string reference(std::string_view name, const std::vector<long>& params) {
    std::string s(name);
    if (!params.empty()) {
      s += "(";
      for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + std::to_string(params[i]);
      s += ")";
    }
    return s;
  }

  /// Every entry at every sample parameter set, in table order.
  std::vector<FreeAutomorphism> sweep() const {
    std::vector<FreeAutomorphism> out;
    for (const auto& e : entries_)
      for (const auto& p : e.samples) out.push_back(make(e.name, p));
    return out;
  }

  const FreeAutomorphism& lickorish(int i) const {
    if (i < 1 || i > 5) throw std::out_of_range("lickorish2: index must be in 1..5");
    return lickorish_[static_cast<std::size_t>(i - 1)];
  }

  void override_lickorish(int i, FreeAutomorphism f) {
    if (i < 1 || i > 5) throw std::out_of_range("lickorish2: index must be in 1..5");
    if (f.genus() != 2) throw std::invalid_argument("lickorish2 override must have genus 2");
    lickorish_[static_cast<std::size_t>(i - 1)] = std::move(f);
  }

 private:
  static void expect_count(const std::vector<long>& p, std::size_t n, std::string_view name) {
    if (p.size() != n)
      throw std::invalid_argument(std::string(name) + ": expected " + std::to_string(n) +
                                  " parameters, got " + std::to_string(p.size()));
  }
  static int genus_param(long g, std::string_view name) {
    if (g < 1 || g > 16) throw std::invalid_argument(std::string(name) + ": genus out of range");
    return static_cast<int>(g);
  }

  static FreeAutomorphism genus1_slz(long a, long b, long c, long d);
  static FreeAutomorphism bscc(int genus, int h);
  static FreeAutomorphism bp(int genus, int h);

  void build();

  std::vector<CatalogEntry> entries_;
  std::vector<FreeAutomorphism> lickorish_;
};

/// Lift of (a b / c d) ∈ SL(2,Z) to a product of the two genus-1 twists.
/// Euclid on the first column reduces the matrix to ±(1 b' / 0 1); -I is
/// realised by (Ta Tb Ta)^2.
inline FreeAutomorphism Catalog::genus1_slz(long a, long b, long c, long d) {
  if (a * d - b * c != 1) throw std::invalid_argument("genus1_slz: determinant must be 1");
  std::vector<FreeAutomorphism> left;  // inverses of the row operations applied
  auto row1_minus = [&](long k) {  // row1 -= k*row2
    a -= k * c;
    b -= k * d;
    left.push_back(twists::along_a(1, 1, k));
  };
  auto row2_minus = [&](long k) {  // row2 -= k*row1
    c -= k * a;
    d -= k * b;
    left.push_back(twists::along_b(1, 1, -k));
  };
  while (c != 0) {
    if (a == 0) {
      row1_minus(c > 0 ? -1 : 1);
      continue;
    }
    if (long q = c / a; q != 0) row2_minus(q);
    if (c == 0) break;
    row1_minus(a / c);
  }
  if (a == -1) {
    const auto s = product(1, {twists::along_a(1, 1), twists::along_b(1, 1), twists::along_a(1, 1)});
    left.push_back(compose(s, s));
    b = -b;
  }
  left.push_back(twists::along_a(1, 1, b));
  return product(1, left);
}

inline FreeAutomorphism Catalog::bscc(int genus, int h) {
  const int rank = 2 * genus;
  Word w(rank);
  for (int i = 1; i <= h; ++i)
    w *= commutator(Word::generator(rank, 2 * i - 1), Word::generator(rank, 2 * i));
  auto fwd = twists::identity_images(genus);
  auto bwd = fwd;
  for (int i = 1; i <= 2 * h; ++i) {
    const Word x = Word::generator(rank, i);
    fwd[static_cast<std::size_t>(i - 1)] = w.inverse() * x * w;
    bwd[static_cast<std::size_t>(i - 1)] = w * x * w.inverse();
  }
  return FreeAutomorphism(genus, std::move(fwd), {}, std::move(bwd));
}

/// Opposite twists along the two boundary curves of a neighbourhood of the
/// chain c_1..c_{2h+1}: the chain relation gives their product, and the
/// second curve is the one carrying x_{2h+2}.
inline FreeAutomorphism Catalog::bp(int genus, int h) {
  std::vector<FreeAutomorphism> links;
  for (int j = 1; j <= 2 * h + 1; ++j) links.push_back(twists::chain(genus, j));
  const FreeAutomorphism c = product(genus, links);
  return compose(power(c, 2 * h + 2), twists::along_b(genus, h + 1, -2));
}

inline void Catalog::build() {
  for (int j = 1; j <= 5; ++j) lickorish_.push_back(twists::chain(2, j));

  entries_.push_back(
      {"genus1_slz", "(a,b,c,d), ad-bc=1", "lift of an SL(2,Z) matrix to the genus-1 surface",
       [](const Catalog&, const std::vector<long>& p) {
         expect_count(p, 4, "genus1_slz");
         for (long v : p)
           if (std::labs(v) > 100000) throw std::invalid_argument("genus1_slz: entry too large");
         return genus1_slz(p[0], p[1], p[2], p[3]);
       },
       [] {
         std::vector<std::vector<long>> s;
         for (long q = -10; q <= 10; ++q) s.push_back({q, 1, -1, 0});
         s.push_back({1, 0, 0, 1});
         s.push_back({-1, 0, 0, -1});
         s.push_back({2, 1, 1, 1});
         s.push_back({1, 3, 0, 1});
         s.push_back({5, 2, 2, 1});
         return s;
       }()});

  entries_.push_back({"lickorish2", "(i), i in 1..5", "Lickorish-Humphries twist t_i, genus 2",
                      [](const Catalog& cat, const std::vector<long>& p) {
                        expect_count(p, 1, "lickorish2");
                        if (p[0] < 1 || p[0] > 5)
                          throw std::invalid_argument("lickorish2: index must be in 1..5");
                        return cat.lickorish(static_cast<int>(p[0]));
                      },
                      {{1}, {2}, {3}, {4}, {5}}});

  entries_.push_back({"bscc", "(g,h), 1<=h<=g", "twist along a bounding curve of genus h",
                      [](const Catalog&, const std::vector<long>& p) {
                        expect_count(p, 2, "bscc");
                        const int g = genus_param(p[0], "bscc");
                        if (p[1] < 1 || p[1] > g) throw std::invalid_argument("bscc: need 1 <= h <= g");
                        return bscc(g, static_cast<int>(p[1]));
                      },
                      {{1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2}, {3, 3}}});

  entries_.push_back({"bp", "(g,h), 1<=h<g", "opposite twists along a bounding pair",
                      [](const Catalog&, const std::vector<long>& p) {
                        expect_count(p, 2, "bp");
                        const int g = genus_param(p[0], "bp");
                        if (p[1] < 1 || p[1] >= g) throw std::invalid_argument("bp: need 1 <= h < g");
                        return bp(g, static_cast<int>(p[1]));
                      },
                      {{2, 1}, {3, 1}, {3, 2}}});

  entries_.push_back({"paper_g2_pA", "()", "t1 t3 t5^2 t2^-1 t4^-1, genus-2 pseudo-Anosov",
                      [](const Catalog& cat, const std::vector<long>& p) {
                        expect_count(p, 0, "paper_g2_pA");
                        return product(2, {cat.lickorish(1), cat.lickorish(3), cat.lickorish(5),
                                           cat.lickorish(5), cat.lickorish(2).inverse(),
                                           cat.lickorish(4).inverse()});
                      },
                      {{}}});

  entries_.push_back({"paper_g2_torelli", "()", "t3 phi1 t3^-1 phi1, genus-2 Torelli element",
                      [](const Catalog& cat, const std::vector<long>& p) {
                        expect_count(p, 0, "paper_g2_torelli");
                        const FreeAutomorphism phi1 = bscc(2, 1);
                        return product(2, {cat.lickorish(3), phi1, cat.lickorish(3).inverse(), phi1});
                      },
                      {{}}});

  entries_.push_back(
      {"disjoint_twists", "(g,l,q1..ql), l<=g", "product of twists along x1,x3,...,x_{2l-1}",
       [](const Catalog&, const std::vector<long>& p) {
         if (p.size() < 2) throw std::invalid_argument("disjoint_twists: expected (g,l,q1..ql)");
         const int g = genus_param(p[0], "disjoint_twists");
         if (p[1] < 1 || p[1] > g) throw std::invalid_argument("disjoint_twists: need 1 <= l <= g");
         const auto l = static_cast<std::size_t>(p[1]);
         expect_count(p, l + 2, "disjoint_twists");
         std::vector<FreeAutomorphism> f;
         for (std::size_t j = 1; j <= l; ++j) {
           if (std::labs(p[j + 1]) > 100000) throw std::invalid_argument("disjoint_twists: q too large");
           f.push_back(twists::along_a(g, static_cast<int>(j), p[j + 1]));
         }
         return product(g, f);
       },
       {{1, 1, 3}, {1, 1, -2}, {2, 1, 3}, {2, 2, 1, -1}, {2, 2, 4, 2}, {3, 2, 2, 5}, {3, 3, 1, 1, 1}}});
}

inline FreeAutomorphism catalog(std::string_view name, const std::vector<long>& params = {}) {
  return Catalog::standard().make(name, params);
}

}  // namespace magnus_torsion
