// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "properties.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>

using namespace magnus_torsion;
namespace mt = magnus_torsion::testing;

namespace {

const Catalog& cat() { return Catalog::standard(); }
LaurentPolynomial P(const std::string& s) { return LaurentPolynomial::parse(s); }

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string num(double x) {
  char b[48];
  std::snprintf(b, sizeof b, "%.10g", x);
  return b;
}

Verdict fig1() {
  Verdict v;
  const std::vector<std::pair<long, double>> pts{{3, 18.14},          {4, 24.82},          {5, 29.53},
                                                 {10, 43.21},         {20, 56.4209214237}, {50, 73.7323520569},
                                                 {100, 86.8035277106}};
  for (auto [q, y] : pts) {
    const double tol = q >= 20 ? 1e-6 : 0.01;
    for (long s : {q, -q}) {
      const double got = log_tau1(cat().make("genus1_slz", {s, 1, -1, 0})).neg3pi_value();
      v.require(std::abs(got - y) <= tol, "q=" + std::to_string(s) + " gives " + num(got) + ", want " + num(y));
    }
  }
  return v;
}

Verdict pseudo_anosov() {
  Verdict v;
  const auto f = cat().make("paper_g2_pA", {});
  const auto cp = char_poly_r1(f);
  v.require(cp == P("t^4-9*t^3+21*t^2-9*t+1"), "char poly " + cp.to_string());
  const double got = log_tau1(f).neg3pi_value();
  v.require(std::abs(got - 52.954) <= 0.01, "-3pi log tau1 = " + num(got));
  if (v.pass) v.detail = cp.to_string() + ", -3pi log tau1 = " + num(got);
  return v;
}

Verdict torelli() {
  Verdict v;
  const auto f = cat().make("paper_g2_torelli", {});
  const auto d = delta_r2(f);
  v.require(equivalent_up_to_relabeling(d, P("(t-1)^4 + t*(t-1)^2*(y1-2+y1^-1)*(y2-2+y2^-1)")),
            "delta = " + d.to_string());
  const auto r = log_tau2(f);
  const double got = r.neg3pi_value();
  v.require(std::abs(got - 19.28) <= 0.05, "-3pi log tau2 = " + num(got));
  if (v.pass)
    v.detail = "-3pi log tau2 = " + num(got) + " (Lawton r=" + std::to_string(r.mahler.stages.back().parameter) +
               ", last difference " + num(3 * std::numbers::pi * r.error_estimate) + ", quadrature " +
               num(neg3pi(r.cross_check)) + ")";
  return v;
}

Verdict vanishing() {
  Verdict v;
  double worst = 0;
  auto zero = [&](double x, const std::string& what) {
    worst = std::max(worst, std::abs(x));
    v.require(std::abs(x) < 1e-6, what + " = " + num(x));
  };
  for (int g : {2, 3})
    for (int h = 1; h <= g; ++h) {
      const auto f = cat().make("bscc", {g, h});
      v.require(delta_r2(f) == P("(t-1)^" + std::to_string(2 * g)), f.label() + " delta");
      zero(log_tau2(f).value, f.label() + " log tau2");
    }
  for (const auto& p : cat().entry("bp").samples) {
    const auto f = cat().make("bp", p);
    const int g = static_cast<int>(p[0]), h = static_cast<int>(p[1]);
    const auto d = delta_r2(f);
    bool shape = false;
    for (int i = 1; i <= 2 * g; ++i)
      shape |= unit_normalized(d) == unit_normalized(P("(t-1)^" + std::to_string(2 * g - 2 * h) + "*(t-y" +
                                                         std::to_string(i) + ")^" + std::to_string(2 * h)));
    v.require(shape, f.label() + " delta = " + d.to_string());
    zero(log_tau2(f).value, f.label() + " log tau2");
  }
  for (long q = -5; q <= 5; ++q) zero(log_tau2(cat().make("genus1_slz", {q, 1, -1, 0})).value, "genus-1 log tau2");
  for (const auto& p : cat().entry("disjoint_twists").samples) {
    const auto f = cat().make("disjoint_twists", p);
    const int g = static_cast<int>(p[0]);
    zero(log_tau1(f).value, f.label() + " log tau1");
    zero(log_tau2(f).value, f.label() + " log tau2");
    const auto a1 = alexander_matrix(f, 1).map([](const PiKRing<Integer>& x) { return x.to_laurent(); });
    v.require(determinant(a1) == P("(t-1)^" + std::to_string(2 * g)), f.label() + " det A1");
    LaurentPolynomial expect = P("(t-1)^" + std::to_string(2 * g - static_cast<int>(p[1])));
    for (std::size_t j = 0; j < static_cast<std::size_t>(p[1]); ++j)
      expect = expect * P("t - y" + std::to_string(2 * j + 1) + "^" + std::to_string(p[j + 2]));
    v.require(delta_r2(f) == expect, f.label() + " det A2 = " + delta_r2(f).to_string());
  }
  if (v.pass) v.detail = "largest |log tau| " + num(worst);
  return v;
}

Verdict cross_route() {
  Verdict v;
  std::vector<FreeAutomorphism> maps;
  for (const auto& p : cat().entry("genus1_slz").samples)
    if (std::labs(p[0] + p[3]) <= 10) maps.push_back(cat().make("genus1_slz", p));
  maps.push_back(cat().make("paper_g2_pA", {}));
  double worst = 0;
  std::string where;
  for (const auto& f : maps) {
    const double mahler = log_tau1(f).value;
    const double series = log_tauk_series(f, 1).log_tau;
    if (std::abs(mahler - series) > worst) {
      worst = std::abs(mahler - series);
      where = f.label();
    }
  }
  v.require(worst < 1e-2, "largest gap " + num(worst) + " at " + where);
  const auto a1 = to_series(alexander_matrix(cat().make("genus1_slz", {3, 1, -1, 0}), 1));
  const double tail = l2_betti_tail(a1, 200).back();
  v.require(tail < 0.05, "betti tail at p=200 is " + num(tail));
  if (v.pass)
    v.detail = std::to_string(maps.size()) + " monodromies, largest gap " + num(worst) + " (" + where +
               "), tail(200) = " + num(tail);
  return v;
}

Verdict properties() {
  Verdict v;
  int total = 0;
  for (const auto& s : mt::property_suites()) {
    const auto o = s.run();
    total += o.cases;
    v.require(o.ok(), std::string(s.name) + ": " + (o.failure.empty() ? "too few cases" : o.failure));
  }
  if (v.pass) v.detail = "8 suites, " + std::to_string(total) + " cases, seed " + std::to_string(mt::seed());
  return v;
}

Verdict kronecker() {
  Verdict v;
  int n = 0, zeros = 0;
  for (const auto& f : cat().sweep()) {
    ++n;
    const bool vanishes = std::abs(log_tau1(f).value) < 1e-9;
    zeros += vanishes;
    v.require(vanishes == is_kronecker(char_poly_r1(f)), f.label());
  }
  if (v.pass) v.detail = std::to_string(n) + " catalog maps, " + std::to_string(zeros) + " vanishing, 0 discrepancies";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Verdict (*)()>> criteria{
      {"genus-1 family ordinates of -3pi log tau1", fig1},
      {"genus-2 pseudo-Anosov char poly and tau1", pseudo_anosov},
      {"Torelli example delta and tau2", torelli},
      {"vanishing suite", vanishing},
      {"Mahler vs FK series for tau1", cross_route},
      {"randomized property suites", properties},
      {"tau1 = 0 iff Kronecker", kronecker}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !v.pass;
    std::printf("criterion %zu: %s  %s [%.1fs]%s%s\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first, s,
                v.detail.empty() ? "" : "  ", v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
