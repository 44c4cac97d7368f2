#pragma once

#include "common.hpp"
#include "matrix.hpp"

#include <algorithm>
#include <cctype>
#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace magnus_torsion {

/// Canonical variable order: `t` last, names of the form <letters><digits>
/// by prefix then numeric suffix, anything else lexicographically.
inline bool variable_less(const std::string& a, const std::string& b) {
  if (a == b) return false;
  if (a == "t") return false;
  if (b == "t") return true;
  auto split = [](const std::string& s) {
    std::size_t k = s.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(s[k - 1]))) --k;
    long num = k < s.size() && s.size() - k < 10 ? std::stol(s.substr(k)) : -1;
    return std::pair{s.substr(0, k), num};
  };
  auto [pa, na] = split(a);
  auto [pb, nb] = split(b);
  if (pa != pb) return pa < pb;
  if (na != nb) return na < nb;
  return a < b;
}

/// Multivariate Laurent polynomial with exact integer coefficients.
/// Variables are kept in canonical order; terms map exponent vectors
/// (ordered lexicographically) to nonzero coefficients.
class LaurentPolynomial {
 public:
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, Integer>;

  LaurentPolynomial() = default;

  explicit LaurentPolynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {
    if (!std::is_sorted(vars_.begin(), vars_.end(), variable_less) ||
        std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end())
      throw std::invalid_argument("LaurentPolynomial: variables must be distinct and canonically ordered");
  }

  static LaurentPolynomial constant(const Integer& c, std::vector<std::string> vars = {}) {
    LaurentPolynomial p(std::move(vars));
    p.add_term(Exponents(p.vars_.size(), 0), c);
    return p;
  }

  static LaurentPolynomial variable(const std::string& name, int power = 1) {
    LaurentPolynomial p({name});
    p.add_term({power}, Integer(1));
    return p;
  }

  static LaurentPolynomial monomial(std::vector<std::string> vars, Exponents e, const Integer& c = 1) {
    LaurentPolynomial p(std::move(vars));
    if (e.size() != p.vars_.size()) throw std::invalid_argument("monomial: arity mismatch");
    p.add_term(std::move(e), c);
    return p;
  }

  const std::vector<std::string>& variables() const { return vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  int variable_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return static_cast<int>(i);
    return -1;
  }

  void add_term(Exponents e, const Integer& c) {
    if (e.size() != vars_.size()) throw std::invalid_argument("add_term: arity mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Same polynomial over a superset of variables (canonically ordered).
  LaurentPolynomial with_variables(const std::vector<std::string>& vars) const {
    LaurentPolynomial p(vars);
    std::vector<int> pos(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      pos[i] = p.variable_index(vars_[i]);
      if (pos[i] < 0) {
        bool used = false;
        for (const auto& [e, c] : terms_) used |= e[i] != 0;
        if (used) throw std::invalid_argument("with_variables: drops used variable " + vars_[i]);
      }
    }
    for (const auto& [e, c] : terms_) {
      Exponents f(vars.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (pos[i] >= 0) f[static_cast<std::size_t>(pos[i])] = e[i];
      p.terms_.emplace(std::move(f), c);
    }
    return p;
  }

  /// Drops variables that occur with exponent 0 in every term.
  LaurentPolynomial trimmed() const {
    std::vector<std::string> used;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      bool u = false;
      for (const auto& [e, c] : terms_) u |= e[i] != 0;
      if (u) used.push_back(vars_[i]);
    }
    return with_variables(used);
  }

  static std::vector<std::string> merge_variables(const std::vector<std::string>& a,
                                                  const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), variable_less);
    return out;
  }

  LaurentPolynomial& operator+=(const LaurentPolynomial& o) { return accumulate(o, 1); }
  LaurentPolynomial& operator-=(const LaurentPolynomial& o) { return accumulate(o, -1); }
  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator-(const LaurentPolynomial& a) {
    LaurentPolynomial r(a.vars_);
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
    return r;
  }

  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.vars_ != b.vars_) {
      const auto v = merge_variables(a.vars_, b.vars_);
      return a.with_variables(v) * b.with_variables(v);
    }
    LaurentPolynomial r(a.vars_);
    Exponents e(a.vars_.size());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  LaurentPolynomial& operator*=(const LaurentPolynomial& o) { return *this = *this * o; }

  friend LaurentPolynomial operator*(const Integer& s, const LaurentPolynomial& a) {
    LaurentPolynomial r(a.vars_);
    if (s == 0) return r;
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, s * c);
    return r;
  }

  LaurentPolynomial pow(unsigned n) const {
    LaurentPolynomial r = constant(1, vars_), b = *this;
    while (n) {
      if (n & 1u) r *= b;
      n >>= 1u;
      if (n) b *= b;
    }
    return r;
  }

  /// Semantic equality: variables that never occur are ignored.
  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    return (a - b).is_zero();
  }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 &&
            std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                        [](int x) { return x == 0; }));
  }
  bool is_monomial() const { return terms_.size() == 1; }

  Integer content() const {
    Integer g = 0;
    for (const auto& [e, c] : terms_) g = gcd(g, abs(c));
    return g;
  }

  LaurentPolynomial primitive_part() const {
    const Integer g = content();
    if (g == 0 || g == 1) return *this;
    LaurentPolynomial r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c / g);
    return r;
  }

  /// Componentwise minimum / maximum exponent over all terms.
  Exponents min_exponents() const { return extreme(true); }
  Exponents max_exponents() const { return extreme(false); }

  /// Multiplies by the monomial with exponent vector `shift`.
  LaurentPolynomial shifted(const Exponents& shift) const {
    if (shift.size() != vars_.size()) throw std::invalid_argument("shifted: arity mismatch");
    LaurentPolynomial r(vars_);
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      for (std::size_t i = 0; i < f.size(); ++i) f[i] += shift[i];
      r.terms_.emplace(std::move(f), c);
    }
    return r;
  }

  /// Substitutes each variable v_i by a monomial in `new_vars` with
  /// exponent vector images[i].
  LaurentPolynomial substitute_monomials(const std::vector<std::string>& new_vars,
                                         const std::vector<Exponents>& images) const {
    if (images.size() != vars_.size()) throw std::invalid_argument("substitute_monomials: arity mismatch");
    LaurentPolynomial r(new_vars);
    Exponents f(new_vars.size());
    for (const auto& [e, c] : terms_) {
      std::fill(f.begin(), f.end(), 0);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = 0; j < f.size(); ++j) f[j] += e[i] * images[i][j];
      r.add_term(f, c);
    }
    return r;
  }

  /// Sets variable `name` to the integer `value` (value must be ±1 when the
  /// variable occurs with negative exponents).
  LaurentPolynomial specialize(const std::string& name, const Integer& value) const {
    const int k = variable_index(name);
    if (k < 0) return *this;
    std::vector<std::string> rest;
    for (const auto& v : vars_)
      if (v != name) rest.push_back(v);
    LaurentPolynomial r(rest);
    for (const auto& [e, c] : terms_) {
      const int d = e[static_cast<std::size_t>(k)];
      if (d < 0 && abs(value) != 1) throw std::domain_error("specialize: negative power of a non-unit");
      Integer f = c;
      if (d >= 0) {
        for (int i = 0; i < d; ++i) f *= value;
      } else {
        for (int i = 0; i < -d; ++i) f *= value;  // value = ±1 is its own inverse
      }
      Exponents g;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (static_cast<int>(i) != k) g.push_back(e[i]);
      r.add_term(std::move(g), f);
    }
    return r;
  }

  /// Renames variables; the result is re-sorted canonically.
  LaurentPolynomial renamed(const std::map<std::string, std::string>& names) const {
    std::vector<std::string> nv = vars_;
    for (auto& v : nv)
      if (auto it = names.find(v); it != names.end()) v = it->second;
    std::vector<std::string> sorted = nv;
    std::sort(sorted.begin(), sorted.end(), variable_less);
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("renamed: variable collision");
    LaurentPolynomial r(sorted);
    std::vector<std::size_t> pos(nv.size());
    for (std::size_t i = 0; i < nv.size(); ++i)
      pos[i] = static_cast<std::size_t>(r.variable_index(nv[i]));
    for (const auto& [e, c] : terms_) {
      Exponents f(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) f[pos[i]] = e[i];
      r.terms_.emplace(std::move(f), c);
    }
    return r;
  }

  std::complex<double> evaluate(const std::vector<std::complex<double>>& z) const {
    if (z.size() != vars_.size()) throw std::invalid_argument("evaluate: arity mismatch");
    std::complex<double> s = 0;
    for (const auto& [e, c] : terms_) {
      std::complex<double> m = to_double(c);
      for (std::size_t i = 0; i < e.size(); ++i) m *= std::pow(z[i], e[i]);
      s += m;
    }
    return s;
  }

  /// Dense coefficient list of a polynomial in at most one variable:
  /// p = u^low * Σ coeffs[k] u^k.
  struct Dense {
    int low = 0;
    std::vector<Integer> coeffs;
  };
  Dense dense_univariate() const {
    const LaurentPolynomial p = trimmed();
    if (p.vars_.size() > 1) throw std::invalid_argument("dense_univariate: polynomial has several variables");
    Dense d;
    if (p.terms_.empty()) return d;
    if (p.vars_.empty()) {
      d.coeffs = {p.terms_.begin()->second};
      return d;
    }
    d.low = p.terms_.begin()->first[0];
    const int high = p.terms_.rbegin()->first[0];
    d.coeffs.assign(static_cast<std::size_t>(high - d.low + 1), Integer(0));
    for (const auto& [e, c] : p.terms_) d.coeffs[static_cast<std::size_t>(e[0] - d.low)] = c;
    return d;
  }

  /// Exact quotient a/b; throws when b does not divide a.
  LaurentPolynomial divide_exact(const LaurentPolynomial& b) const {
    if (b.is_zero()) throw std::domain_error("divide_exact: division by zero");
    if (vars_ != b.vars_) {
      const auto v = merge_variables(vars_, b.vars_);
      return with_variables(v).divide_exact(b.with_variables(v));
    }
    if (is_zero()) return *this;
    // Shift both into the polynomial ring, then run lex-leading-term division.
    const Exponents sa = min_exponents(), sb = b.min_exponents();
    Exponents na(sa.size()), nb(sb.size());
    for (std::size_t i = 0; i < sa.size(); ++i) {
      na[i] = -sa[i];
      nb[i] = -sb[i];
    }
    LaurentPolynomial r = shifted(na);
    const LaurentPolynomial d = b.shifted(nb);
    const auto& [ld_e, ld_c] = *d.terms_.rbegin();
    LaurentPolynomial q(vars_);
    while (!r.is_zero()) {
      const auto [lr_e, lr_c] = *r.terms_.rbegin();
      Exponents m(lr_e.size());
      for (std::size_t i = 0; i < m.size(); ++i) {
        m[i] = lr_e[i] - ld_e[i];
        if (m[i] < 0) throw std::domain_error("divide_exact: not divisible");
      }
      if (lr_c % ld_c != 0) throw std::domain_error("divide_exact: not divisible");
      const Integer f = lr_c / ld_c;
      for (const auto& [e, c] : d.terms_) {
        Exponents g = e;
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += m[i];
        r.add_term(std::move(g), -f * c);
      }
      q.add_term(std::move(m), f);
    }
    Exponents back(sa.size());
    for (std::size_t i = 0; i < back.size(); ++i) back[i] = sa[i] - sb[i];
    return q.shifted(back);
  }

  /// Canonical text: terms by descending exponent of the last variable,
  /// then descending in the others; e.g. `t^4 - 9*t^3 + 21*t^2 - 9*t + 1`.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const Terms::value_type*> order;
    for (const auto& kv : terms_) order.push_back(&kv);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
      return std::lexicographical_compare(b->first.rbegin(), b->first.rend(), a->first.rbegin(),
                                          a->first.rend());
    });
    std::string out;
    bool first = true;
    for (const auto* kv : order) {
      const auto& [e, c] = *kv;
      std::string mono;
      // last variable (t) first, then the others in order
      for (std::size_t k = 0; k < e.size(); ++k) {
        const std::size_t i = k == 0 ? e.size() - 1 : k - 1;
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[i];
        if (e[i] != 1) mono += "^" + std::to_string(e[i]);
      }
      const bool neg = c < 0;
      const Integer a = abs(c);
      out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
      first = false;
      if (mono.empty())
        out += a.str();
      else if (a == 1)
        out += mono;
      else
        out += a.str() + "*" + mono;
    }
    return out;
  }

  /// Parses sums/products/powers of integers and variables, e.g.
  /// `(t-1)^4 + t*(t-1)^2*(y1-2+y1^-1)`. Negative exponents are allowed on
  /// monomials only.
  static LaurentPolynomial parse(std::string_view text);

 private:
  LaurentPolynomial& accumulate(const LaurentPolynomial& o, int sign) {
    if (vars_ != o.vars_) {
      const auto v = merge_variables(vars_, o.vars_);
      if (v != vars_) *this = with_variables(v);
      if (v != o.vars_) return accumulate(o.with_variables(v), sign);
    }
    for (const auto& [e, c] : o.terms_) add_term(e, sign > 0 ? c : Integer(-c));
    return *this;
  }

  Exponents extreme(bool min) const {
    Exponents r(vars_.size(), 0);
    bool first = true;
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < e.size(); ++i)
        r[i] = first ? e[i] : (min ? std::min(r[i], e[i]) : std::max(r[i], e[i]));
      first = false;
    }
    return r;
  }

  std::vector<std::string> vars_;
  Terms terms_;
};

namespace detail {

class LaurentParser {
 public:
  explicit LaurentParser(std::string_view s) : s_(s) {}

  LaurentPolynomial run() {
    LaurentPolynomial p = sum();
    skip();
    if (i_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("LaurentPolynomial::parse: " + msg + " at offset " + std::to_string(i_) +
                                " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  LaurentPolynomial sum() {
    LaurentPolynomial p;
    bool neg = eat('-');
    if (!neg) eat('+');
    p = neg ? -product() : product();
    for (;;) {
      if (eat('+'))
        p += product();
      else if (eat('-'))
        p -= product();
      else
        return p;
    }
  }

  LaurentPolynomial product() {
    LaurentPolynomial p = power();
    while (eat('*')) p *= power();
    return p;
  }

  LaurentPolynomial power() {
    LaurentPolynomial b = atom();
    if (!eat('^')) return b;
    skip();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else if (eat('('))
      fail("parenthesised exponents are not supported");
    skip();
    std::size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("expected exponent");
    const int e = std::stoi(std::string(s_.substr(st, i_ - st)));
    if (!neg) return b.pow(static_cast<unsigned>(e));
    if (!b.is_monomial()) fail("negative power of a non-monomial");
    const auto& [ex, c] = *b.terms().begin();
    if (abs(c) != 1) fail("negative power of a non-unit");
    LaurentPolynomial::Exponents f = ex;
    for (int& x : f) x *= -e;
    Integer cc = (e % 2 && c < 0) ? Integer(-1) : Integer(1);
    return LaurentPolynomial::monomial(b.variables(), f, cc);
  }

  LaurentPolynomial atom() {
    skip();
    if (eat('(')) {
      LaurentPolynomial p = sum();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return LaurentPolynomial::constant(Integer(std::string(s_.substr(st, i_ - st))));
    }
    if (i_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
      std::size_t st = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      return LaurentPolynomial::variable(std::string(s_.substr(st, i_ - st)));
    }
    fail("expected number, variable or '('");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline LaurentPolynomial LaurentPolynomial::parse(std::string_view text) {
  return detail::LaurentParser(text).run();
}

/// Representative of p up to units ±y^v t^m: exponents shifted so each
/// minimum is 0, leading coefficient (largest exponent vector) positive.
inline LaurentPolynomial unit_normalized(const LaurentPolynomial& p) {
  if (p.is_zero()) return p.trimmed();
  auto lo = p.min_exponents();
  for (int& x : lo) x = -x;
  LaurentPolynomial q = p.shifted(lo).trimmed();
  return q.terms().rbegin()->second < 0 ? -q : q;
}

/// True when a and b agree up to a unit and a renaming of the variables
/// other than `fixed` (t by default).
inline bool equivalent_up_to_relabeling(const LaurentPolynomial& a, const LaurentPolynomial& b,
                                        const std::string& fixed = "t") {
  const LaurentPolynomial na = unit_normalized(a), nb = unit_normalized(b);
  std::vector<std::string> va, vb;
  for (const auto& v : na.variables())
    if (v != fixed) va.push_back(v);
  for (const auto& v : nb.variables())
    if (v != fixed) vb.push_back(v);
  if (va.size() != vb.size() || na.size() != nb.size()) return false;
  std::vector<std::size_t> perm(vb.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  do {
    std::map<std::string, std::string> names;
    for (std::size_t i = 0; i < va.size(); ++i) names[va[i]] = "__v" + std::to_string(perm[i]);
    std::map<std::string, std::string> names_b;
    for (std::size_t i = 0; i < vb.size(); ++i) names_b[vb[i]] = "__v" + std::to_string(i);
    if (na.renamed(names) == nb.renamed(names_b)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Determinant by fraction-free (Bareiss) elimination. Each row is first
/// multiplied by a monomial so that all entries are honest polynomials; the
/// shift is undone at the end.
inline LaurentPolynomial determinant(const Matrix<LaurentPolynomial>& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) vars = LaurentPolynomial::merge_variables(vars, m(i, j).variables());
  if (n == 0) return LaurentPolynomial::constant(1, vars);

  Matrix<LaurentPolynomial> a(n, n, LaurentPolynomial(vars));
  LaurentPolynomial::Exponents total(vars.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    LaurentPolynomial::Exponents lo(vars.size(), 0);
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = m(i, j).with_variables(vars);
      if (a(i, j).is_zero()) continue;
      const auto e = a(i, j).min_exponents();
      for (std::size_t k = 0; k < e.size(); ++k) lo[k] = any ? std::min(lo[k], e[k]) : e[k];
      any = true;
    }
    if (!any) return LaurentPolynomial(vars);
    for (auto& x : lo) x = -x;
    for (std::size_t j = 0; j < n; ++j) a(i, j) = a(i, j).shifted(lo);
    for (std::size_t k = 0; k < total.size(); ++k) total[k] -= lo[k];
  }

  int sign = 1;
  LaurentPolynomial prev = LaurentPolynomial::constant(1, vars);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a(p, k).is_zero()) ++p;
      if (p == n) return LaurentPolynomial(vars);
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)).divide_exact(prev);
      a(i, k) = LaurentPolynomial(vars);
    }
    prev = a(k, k);
  }
  LaurentPolynomial d = a(n - 1, n - 1).shifted(total);
  return sign > 0 ? d : -d;
}

}  // namespace magnus_torsion
