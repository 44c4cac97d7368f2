#pragma once

#include "magnus_torsion/magnus_torsion.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace magnus_torsion::cli {

struct CheckResult {
  std::string tag;
  std::string name;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct Check {
  std::string tag;
  std::string name;
  std::function<CheckResult(const Catalog&)> run;
};

inline std::string fmt(double x, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

/// Runs fn(i) for i in [0, n) on `jobs` worker threads.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs && static_cast<std::size_t>(w) < n; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) fn(i);
    });
  for (auto& t : pool) t.join();
}

namespace checks {

inline CheckResult near(std::string tag, std::string name, double expected, double computed, double tol) {
  return {std::move(tag), std::move(name), fmt(expected) + " +/- " + fmt(tol, 3), fmt(computed),
          std::abs(expected - computed) <= tol};
}

inline CheckResult poly_equal(std::string tag, std::string name, const std::string& expected,
                              const LaurentPolynomial& computed, bool up_to_relabeling = false) {
  const LaurentPolynomial e = LaurentPolynomial::parse(expected);
  const bool ok = up_to_relabeling ? equivalent_up_to_relabeling(e, computed) : e == computed;
  return {std::move(tag), std::move(name), expected + (up_to_relabeling ? " (up to relabeling)" : ""),
          computed.to_string(), ok};
}

inline CheckResult matrix_equal(std::string tag, std::string name, const IntegerMatrix& expected,
                                const IntegerMatrix& computed) {
  return {std::move(tag), std::move(name), to_string(expected), to_string(computed), expected == computed};
}

inline CheckResult flag(std::string tag, std::string name, bool expected, bool computed) {
  return {std::move(tag), std::move(name), expected ? "true" : "false", computed ? "true" : "false",
          expected == computed};
}

/// Δ = (t−1)^{2g−2h}(t−y)^{2h} for some single homology variable y.
inline bool bp_shape(const LaurentPolynomial& delta, int g, int h) {
  for (int i = 1; i <= 2 * g; ++i) {
    const LaurentPolynomial e =
        LaurentPolynomial::parse("(t-1)^" + std::to_string(2 * g - 2 * h) + "*(t-y" + std::to_string(i) + ")^" +
                                 std::to_string(2 * h));
    if (unit_normalized(e) == unit_normalized(delta)) return true;
  }
  return false;
}

}  // namespace checks

/// Every quoted number or formula, as a runnable check.
inline std::vector<Check> verification_suite() {
  using namespace checks;
  std::vector<Check> v;
  auto add = [&](std::string tag, std::string name, std::function<CheckResult(const Catalog&)> f) {
    v.push_back({std::move(tag), std::move(name), std::move(f)});
  };

  const std::vector<std::pair<int, double>> fig1{{3, 18.14},          {4, 24.82},          {5, 29.53},
                                                 {10, 43.21},         {20, 56.4209214237}, {50, 73.7323520569},
                                                 {100, 86.8035277106}};
  for (auto [q, y] : fig1) {
    const double tol = q >= 20 ? 1e-6 : 0.01;
    add("fig1", "-3pi log tau1, genus-1 monodromy (q 1 / -1 0), q=" + std::to_string(q),
        [q, y, tol](const Catalog& c) {
          const auto r = log_tau1(c.make("genus1_slz", {q, 1, -1, 0}));
          return near("fig1", "q=" + std::to_string(q), y, r.neg3pi_value(), tol);
        });
  }
  add("fig1", "log tau1 = 0 for |q| <= 2", [](const Catalog& c) {
    double worst = 0;
    for (long q = -2; q <= 2; ++q) worst = std::max(worst, std::abs(log_tau1(c.make("genus1_slz", {q, 1, -1, 0})).value));
    return near("fig1", "max |log tau1|, |q| <= 2", 0.0, worst, 1e-9);
  });

  add("tau1", "homology action of genus1_slz(3,1,-1,0)", [](const Catalog& c) {
    return matrix_equal("tau1", "r1(genus1_slz(3,1,-1,0))", integer_matrix({{3, 1}, {-1, 0}}),
                        homology_action(c.make("genus1_slz", {3, 1, -1, 0})));
  });
  add("tau1", "homology action of disjoint_twists(1,1,4)", [](const Catalog& c) {
    return matrix_equal("tau1", "r1(disjoint_twists(1,1,4))", integer_matrix({{1, 4}, {0, 1}}),
                        homology_action(c.make("disjoint_twists", {1, 1, 4})));
  });
  add("tau1", "genus-1 char poly t^2 - q t + 1", [](const Catalog& c) {
    return poly_equal("tau1", "char poly, q=7", "t^2-7*t+1", char_poly_r1(c.make("genus1_slz", {7, 1, -1, 0})));
  });
  add("tau1", "char poly of t1 t3 t5^2 t2^-1 t4^-1", [](const Catalog& c) {
    return poly_equal("tau1", "char_poly_r1(paper_g2_pA)", "t^4-9*t^3+21*t^2-9*t+1",
                      char_poly_r1(c.make("paper_g2_pA", {})));
  });
  add("tau1", "-3pi log tau1 of the genus-2 pseudo-Anosov", [](const Catalog& c) {
    return near("tau1", "paper_g2_pA", 52.954, log_tau1(c.make("paper_g2_pA", {})).neg3pi_value(), 0.01);
  });
  add("tau1", "log tau1 = 0 iff Kronecker, whole catalog", [](const Catalog& c) {
    int bad = 0, total = 0;
    for (const auto& f : c.sweep()) {
      ++total;
      const bool zero = std::abs(log_tau1(f).value) < 1e-9;
      if (zero != is_kronecker(char_poly_r1(f))) ++bad;
    }
    return CheckResult{"tau1", "Kronecker equivalence over " + std::to_string(total) + " entries", "0 discrepancies",
                       std::to_string(bad) + " discrepancies", bad == 0};
  });

  add("tau2", "BSCC delta = (t-1)^{2g}", [](const Catalog& c) {
    std::string got;
    bool ok = true;
    for (auto [g, h] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}, {3, 3}}) {
      const auto d = delta_r2(c.make("bscc", {g, h}));
      const bool e = d == LaurentPolynomial::parse("(t-1)^" + std::to_string(2 * g));
      ok &= e;
      if (!e) got += "bscc(" + std::to_string(g) + "," + std::to_string(h) + ")=" + d.to_string() + " ";
    }
    return CheckResult{"tau2", "BSCC delta, g in {2,3}", "(t-1)^{2g}", ok ? "(t-1)^{2g}" : got, ok};
  });
  add("tau2", "BSCC log tau2 = 0", [](const Catalog& c) {
    double worst = 0;
    for (auto [g, h] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}, {3, 2}, {3, 3}})
      worst = std::max(worst, std::abs(log_tau2(c.make("bscc", {g, h})).value));
    return near("tau2", "max |log tau2| over BSCC", 0.0, worst, 1e-6);
  });
  add("tau2", "BP delta = (t-1)^{2g-2h}(t-y)^{2h}", [](const Catalog& c) {
    std::string got;
    bool ok = true;
    for (auto [g, h] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}}) {
      const auto d = delta_r2(c.make("bp", {g, h}));
      const bool e = bp_shape(d, g, h);
      ok &= e;
      if (!e) got += d.to_string() + " ";
    }
    return CheckResult{"tau2", "BP delta", "(t-1)^{2g-2h}(t-y_*)^{2h}", ok ? "matches" : got, ok};
  });
  add("tau2", "BP log tau2 = 0", [](const Catalog& c) {
    double worst = 0;
    for (auto [g, h] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}})
      worst = std::max(worst, std::abs(log_tau2(c.make("bp", {g, h})).value));
    return near("tau2", "max |log tau2| over BP", 0.0, worst, 1e-6);
  });
  add("tau2", "Torelli example delta", [](const Catalog& c) {
    return poly_equal("tau2", "delta_r2(paper_g2_torelli)", "(t-1)^4 + t*(t-1)^2*(y1-2+y1^-1)*(y2-2+y2^-1)",
                      delta_r2(c.make("paper_g2_torelli", {})), true);
  });
  add("tau2", "Torelli example -3pi log tau2", [](const Catalog& c) {
    return near("tau2", "paper_g2_torelli", 19.28, log_tau2(c.make("paper_g2_torelli", {})).neg3pi_value(), 0.05);
  });
  add("tau2", "genus-1 log tau2 = 0", [](const Catalog& c) {
    double worst = 0;
    for (long q = -5; q <= 5; ++q) worst = std::max(worst, std::abs(log_tau2(c.make("genus1_slz", {q, 1, -1, 0})).value));
    return near("tau2", "max |log tau2|, genus 1", 0.0, worst, 1e-12);
  });
  add("tau2", "generalized cyclotomic: (t-1)^4", [](const Catalog&) {
    return flag("tau2", "is_generalized_cyclotomic((t-1)^4)", true,
                is_generalized_cyclotomic(LaurentPolynomial::parse("(t-1)^4")));
  });
  add("tau2", "generalized cyclotomic: (t-1)^2 (t-y3)^2", [](const Catalog&) {
    return flag("tau2", "is_generalized_cyclotomic((t-1)^2*(t-y3)^2)", true,
                is_generalized_cyclotomic(LaurentPolynomial::parse("(t-1)^2*(t-y3)^2")));
  });
  add("tau2", "generalized cyclotomic: Torelli delta", [](const Catalog& c) {
    return flag("tau2", "is_generalized_cyclotomic(delta of paper_g2_torelli)", false,
                is_generalized_cyclotomic(delta_r2(c.make("paper_g2_torelli", {}))));
  });

  add("magnus", "involution of x1", [](const Catalog&) {
    const auto x = IntGroupRing::from_word(Word::generator(2, 1));
    const auto e = IntGroupRing::from_word(Word::generator(2, -1));
    return CheckResult{"magnus", "overline(x1)", e.to_string(), x.involution().to_string(), x.involution() == e};
  });
  add("magnus", "A1 of the genus-1 q-twist", [](const Catalog& c) {
    const auto a = alexander_matrix(c.make("disjoint_twists", {1, 1, 5}), 1);
    const auto m = a.map([](const PiKRing<Integer>& x) { return x.to_laurent(); });
    bool ok = m(0, 0) == LaurentPolynomial::parse("t-1") && m(0, 1).is_zero() &&
              m(1, 0) == LaurentPolynomial::parse("-5") && m(1, 1) == LaurentPolynomial::parse("t-1");
    return CheckResult{"magnus", "A1(disjoint_twists(1,1,5))", "[[t-1, 0], [-5, t-1]]",
                       "[[" + m(0, 0).to_string() + ", " + m(0, 1).to_string() + "], [" + m(1, 0).to_string() +
                           ", " + m(1, 1).to_string() + "]]",
                       ok};
  });
  add("magnus", "BSCC is Torelli", [](const Catalog& c) {
    bool ok = true;
    for (auto [g, h] : std::vector<std::pair<int, int>>{{2, 1}, {3, 2}}) ok &= is_torelli(c.make("bscc", {g, h}));
    return flag("magnus", "is_torelli(bscc)", true, ok);
  });

  add("vanishing", "disjoint twists: det A2 = (t-1)(t-y^q) per handle", [](const Catalog& c) {
    return poly_equal("vanishing", "delta_r2(disjoint_twists(2,2,3,-2))", "(t-1)^2*(t-y1^3)*(t-y3^-2)",
                      delta_r2(c.make("disjoint_twists", {2, 2, 3, -2})));
  });
  add("vanishing", "disjoint twists: log tau1 = log tau2 = 0", [](const Catalog& c) {
    double worst = 0;
    for (const std::vector<long>& p : std::vector<std::vector<long>>{{2, 2, 3, -2}, {3, 2, 2, 5}, {3, 3, 1, 1, 1}}) {
      const auto f = c.make("disjoint_twists", p);
      worst = std::max({worst, std::abs(log_tau1(f).value), std::abs(log_tau2(f).value)});
    }
    return near("vanishing", "max |log tau1|, |log tau2|", 0.0, worst, 1e-6);
  });

  add("fk", "series route, k=1, genus-1 q=3", [](const Catalog& c) {
    const auto r = log_tauk_series(c.make("genus1_slz", {3, 1, -1, 0}), 1);
    return near("fk", "-3pi log tau_1 (series)", 18.14, neg3pi(r.log_tau), 0.2);
  });
  add("fk", "series route, k=2, genus-1 q-twists", [](const Catalog& c) {
    FKOptions o;
    o.P_max = 400;
    double worst = 0;
    for (long q : {1, 3}) worst = std::max(worst, std::abs(log_tauk_series(c.make("disjoint_twists", {1, 1, q}), 2, o).log_tau));
    return near("fk", "max |log tau_2| (series)", 0.0, worst, 0.05);
  });
  add("fk", "series route, k=1,2, disjoint twists", [](const Catalog& c) {
    FKOptions o;
    o.P_max = 400;
    const auto f = c.make("disjoint_twists", {2, 2, 1, -1});
    const double w = std::max(std::abs(log_tauk_series(f, 1).log_tau), std::abs(log_tauk_series(f, 2, o).log_tau));
    return near("fk", "max |log tau_k| (series)", 0.0, w, 0.05);
  });
  return v;
}

/// Runs the suite (optionally only one tag) and returns results in suite order.
inline std::vector<CheckResult> run_verification(const Catalog& cat, const std::string& only = {}, int jobs = 1) {
  std::vector<Check> suite;
  for (auto& c : verification_suite())
    if (only.empty() || c.tag == only) suite.push_back(std::move(c));
  std::vector<CheckResult> out(suite.size());
  parallel_for(suite.size(), jobs, [&](std::size_t i) {
    try {
      out[i] = suite[i].run(cat);
      out[i].tag = suite[i].tag;
      out[i].name = suite[i].name;
    } catch (const std::exception& e) {
      out[i] = {suite[i].tag, suite[i].name, "no error", std::string("error: ") + e.what(), false};
    }
  });
  return out;
}

inline std::vector<std::string> verification_tags() {
  return {"fig1", "tau1", "tau2", "magnus", "vanishing", "fk"};
}

}  // namespace magnus_torsion::cli
