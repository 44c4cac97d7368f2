#pragma once

#include "magnus_torsion/magnus_torsion.hpp"

#include <cstdlib>
#include <random>
#include <string>

namespace magnus_torsion::testing {

inline constexpr int kCases = 200;

/// Seed for randomized suites; MAGNUS_TORSION_SEED overrides the default.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("MAGNUS_TORSION_SEED")) return std::stoull(s);
  return 20260101;
}

/// Generator mixed with a per-suite salt so suites do not share streams.
inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(seed() ^ (salt * 0x9E3779B97F4A7C15ull)); }

inline long uniform(std::mt19937_64& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

inline Word random_word(std::mt19937_64& g, int rank, int max_len = 12) {
  std::vector<Letter> l;
  const long n = uniform(g, 0, max_len);
  for (long i = 0; i < n; ++i) {
    const int x = static_cast<int>(uniform(g, 1, rank));
    l.push_back(uniform(g, 0, 1) ? x : -x);
  }
  return Word::reduce(rank, l);
}

inline IntGroupRing random_ring(std::mt19937_64& g, int rank, int terms = 4) {
  IntGroupRing a(rank);
  for (int i = 0; i < terms; ++i) a.add_term(random_word(g, rank, 6), Integer(uniform(g, -3, 3)));
  return a;
}

/// Random univariate polynomial in t with nonzero leading coefficient.
inline LaurentPolynomial random_poly(std::mt19937_64& g, int max_deg = 8, long coeff = 5) {
  LaurentPolynomial p({"t"});
  const int d = static_cast<int>(uniform(g, 1, max_deg));
  for (int i = 0; i <= d; ++i) p.add_term({i}, Integer(uniform(g, -coeff, coeff)));
  long lead = 0;
  while (lead == 0) lead = uniform(g, -coeff, coeff);
  p.add_term({d + 1}, Integer(lead));
  return p;
}

}  // namespace magnus_torsion::testing
