#pragma once

#include "common.hpp"
#include "laurent.hpp"
#include "matrix.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <type_traits>
#include <vector>

namespace magnus_torsion {

/// Largest rank of the abelian part supported by the π(2) ring (genus 4).
inline constexpr int kMaxPiRank = 8;

/// Element (v, n) of Z^r ⋊_Φ Z; r = 0 gives π(1) = Z.
struct PiKElement {
  std::int64_t n = 0;
  std::array<std::int64_t, kMaxPiRank> v{};

  friend auto operator<=>(const PiKElement&, const PiKElement&) = default;
  bool is_identity() const {
    return n == 0 && std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
  }
};

/// Group law of π(k): (v,n)(w,m) = (v + Φⁿw, n+m). Powers of Φ are cached
/// behind a mutex so one context can serve concurrent evaluations.
class PiKContext {
 public:
  using Square = std::array<std::int64_t, kMaxPiRank * kMaxPiRank>;

  /// π(1): the infinite cyclic group generated by t.
  PiKContext() = default;

  /// π(2) with homology action Φ (must be symplectic).
  explicit PiKContext(const IntegerMatrix& phi) : k_(2), rank_(static_cast<int>(phi.rows())) {
    if (!phi.is_square() || phi.rows() % 2 != 0)
      throw std::invalid_argument("PiKContext: Φ must be 2g x 2g");
    if (rank_ > kMaxPiRank)
      throw UnsupportedError("PiKContext: pi(2) ring supports genus <= " + std::to_string(kMaxPiRank / 2));
    if (!is_symplectic(phi)) throw std::invalid_argument("PiKContext: Φ is not symplectic");
    const IntegerMatrix j = symplectic_form(rank_ / 2);
    IntegerMatrix inv = j.transpose() * phi.transpose() * j;
    if (phi * inv != identity_matrix(phi.rows())) throw std::logic_error("PiKContext: bad inverse");
    phi_ = pack(phi);
    phi_inv_ = pack(inv);
    Square id{};
    for (int i = 0; i < rank_; ++i) id[static_cast<std::size_t>(i * kMaxPiRank + i)] = 1;
    pos_.assign(1, id);
    neg_.assign(1, id);
  }

  int k() const { return k_; }
  int rank() const { return rank_; }

  /// Φⁿ; references stay valid for the lifetime of the context.
  const Square& power(std::int64_t n) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto& cache = n >= 0 ? pos_ : neg_;
    const Square& step = n >= 0 ? phi_ : phi_inv_;
    const auto idx = static_cast<std::size_t>(n >= 0 ? n : -n);
    while (cache.size() <= idx) cache.push_back(mul(step, cache.back()));
    return cache[idx];
  }

  PiKElement multiply(const PiKElement& a, const PiKElement& b) const {
    PiKElement r;
    r.n = checked_add(a.n, b.n);
    if (rank_ == 0) return r;
    const Square& p = a.n == 0 ? power(0) : power(a.n);
    for (int i = 0; i < rank_; ++i) {
      std::int64_t s = a.v[static_cast<std::size_t>(i)];
      for (int j = 0; j < rank_; ++j)
        s = checked_add(s, checked_mul(p[static_cast<std::size_t>(i * kMaxPiRank + j)],
                                       b.v[static_cast<std::size_t>(j)]));
      r.v[static_cast<std::size_t>(i)] = s;
    }
    return r;
  }

  /// (v,n)⁻¹ = (−Φ^{−n}v, −n).
  PiKElement inverse(const PiKElement& a) const {
    PiKElement r;
    r.n = -a.n;
    if (rank_ == 0) return r;
    const Square& p = power(-a.n);
    for (int i = 0; i < rank_; ++i) {
      std::int64_t s = 0;
      for (int j = 0; j < rank_; ++j)
        s = checked_add(s, checked_mul(p[static_cast<std::size_t>(i * kMaxPiRank + j)],
                                       a.v[static_cast<std::size_t>(j)]));
      r.v[static_cast<std::size_t>(i)] = -s;
    }
    return r;
  }

  static PiKElement element(std::vector<std::int64_t> v, std::int64_t n) {
    if (v.size() > static_cast<std::size_t>(kMaxPiRank)) throw std::invalid_argument("element: rank too large");
    PiKElement e;
    e.n = n;
    std::copy(v.begin(), v.end(), e.v.begin());
    return e;
  }

 private:
  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw NumericalError("pi(k) exponent overflow");
    return r;
  }
  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw NumericalError("pi(k) exponent overflow");
    return r;
  }
  Square pack(const IntegerMatrix& m) const {
    Square s{};
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) {
        const Integer& x = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        s[static_cast<std::size_t>(i * kMaxPiRank + j)] = x.convert_to<std::int64_t>();
      }
    return s;
  }
  Square mul(const Square& a, const Square& b) const {
    Square r{};
    for (int i = 0; i < rank_; ++i)
      for (int k = 0; k < rank_; ++k) {
        const std::int64_t x = a[static_cast<std::size_t>(i * kMaxPiRank + k)];
        if (x == 0) continue;
        for (int j = 0; j < rank_; ++j) {
          auto& dst = r[static_cast<std::size_t>(i * kMaxPiRank + j)];
          dst = checked_add(dst, checked_mul(x, b[static_cast<std::size_t>(k * kMaxPiRank + j)]));
        }
      }
    return r;
  }

  int k_ = 1;
  int rank_ = 0;
  Square phi_{}, phi_inv_{};
  mutable std::mutex mu_;
  mutable std::deque<Square> pos_{Square{}}, neg_{Square{}};
};

/// Finite sum Σ λ_g g over π(k), terms sorted by group element.
template <class Coeff>
class PiKRing {
 public:
  using Term = std::pair<PiKElement, Coeff>;

  PiKRing() = default;
  explicit PiKRing(std::shared_ptr<const PiKContext> ctx) : ctx_(std::move(ctx)) {}

  static PiKRing monomial(std::shared_ptr<const PiKContext> ctx, const PiKElement& g, Coeff c = Coeff(1)) {
    PiKRing r(std::move(ctx));
    if (c != Coeff(0)) r.terms_.push_back({g, c});
    return r;
  }

  const std::shared_ptr<const PiKContext>& context() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Coeff coefficient(const PiKElement& g) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), g,
                               [](const Term& t, const PiKElement& x) { return t.first < x; });
    return it != terms_.end() && it->first == g ? it->second : Coeff(0);
  }

  PiKRing& operator+=(const PiKRing& o) {
    adopt(o);
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::merge(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(), std::back_inserter(out),
               [](const Term& a, const Term& b) { return a.first < b.first; });
    terms_ = combine(std::move(out));
    return *this;
  }
  PiKRing& operator-=(const PiKRing& o) { return *this += Coeff(-1) * o; }
  friend PiKRing operator+(PiKRing a, const PiKRing& b) { return a += b; }
  friend PiKRing operator-(PiKRing a, const PiKRing& b) { return a -= b; }

  friend PiKRing operator*(const Coeff& s, const PiKRing& a) {
    PiKRing r(a.ctx_);
    if (s == Coeff(0)) return r;
    r.terms_ = a.terms_;
    for (auto& t : r.terms_) t.second *= s;
    return r;
  }

  friend PiKRing operator*(const PiKRing& a, const PiKRing& b) {
    double dropped = 0;
    return multiply(a, b, 0.0, dropped);
  }

  /// Convolution under the twisted law; coefficients with |c| < prune_tol
  /// are dropped and their absolute sum added to `pruned`.
  friend PiKRing multiply(const PiKRing& a, const PiKRing& b, double prune_tol, double& pruned) {
    const auto ctx = a.ctx_ ? a.ctx_ : b.ctx_;
    if (a.ctx_ && b.ctx_ && a.ctx_ != b.ctx_) throw std::invalid_argument("PiKRing: context mismatch");
    PiKRing r(ctx);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [g, c] : a.terms_)
      for (const auto& [h, d] : b.terms_) out.push_back({ctx->multiply(g, h), c * d});
    std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    r.terms_ = combine(std::move(out));
    if constexpr (std::is_floating_point_v<Coeff>) {
      if (prune_tol > 0) pruned += r.prune(prune_tol);
    }
    return r;
  }

  /// Drops small coefficients and returns their absolute sum.
  double prune(double tol) {
    double mass = 0;
    if constexpr (std::is_floating_point_v<Coeff>) {
      std::erase_if(terms_, [&](const Term& t) {
        if (std::abs(t.second) >= tol) return false;
        mass += std::abs(t.second);
        return true;
      });
    }
    return mass;
  }

  /// Σ λ_g g ↦ Σ λ_g g⁻¹.
  PiKRing adjoint() const {
    PiKRing r(ctx_);
    r.terms_.reserve(terms_.size());
    for (const auto& [g, c] : terms_) r.terms_.push_back({ctx_->inverse(g), c});
    std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    return r;
  }

  friend bool operator==(const PiKRing& a, const PiKRing& b) { return a.terms_ == b.terms_; }

  /// Commutative readout (v,n) ↦ y^v t^n; exact only when the occurring
  /// elements commute, which callers must ensure.
  LaurentPolynomial to_laurent() const {
    std::vector<std::string> vars;
    const int r = ctx_ ? ctx_->rank() : 0;
    for (int i = 1; i <= r; ++i) vars.push_back("y" + std::to_string(i));
    vars.push_back("t");
    LaurentPolynomial p(vars);
    for (const auto& [g, c] : terms_) {
      LaurentPolynomial::Exponents e;
      for (int i = 0; i < r; ++i) e.push_back(static_cast<int>(g.v[static_cast<std::size_t>(i)]));
      e.push_back(static_cast<int>(g.n));
      if constexpr (std::is_floating_point_v<Coeff>) {
        const double rc = std::round(c);
        if (rc != c) throw std::domain_error("to_laurent: non-integer coefficient");
        p.add_term(std::move(e), Integer(static_cast<long long>(rc)));
      } else {
        p.add_term(std::move(e), Integer(c));
      }
    }
    return p.trimmed();
  }

  template <class To>
  PiKRing<To> convert() const {
    PiKRing<To> r(ctx_);
    for (const auto& [g, c] : terms_) {
      To x;
      if constexpr (std::is_same_v<Coeff, Integer> && std::is_floating_point_v<To>)
        x = to_double(c);
      else
        x = static_cast<To>(c);
      r.push_raw(g, x);
    }
    return r;
  }

  void push_raw(const PiKElement& g, const Coeff& c) {
    if (!terms_.empty() && !(terms_.back().first < g)) throw std::logic_error("push_raw: unsorted");
    if (c != Coeff(0)) terms_.push_back({g, c});
  }

 private:
  void adopt(const PiKRing& o) {
    if (!ctx_) ctx_ = o.ctx_;
    else if (o.ctx_ && o.ctx_ != ctx_) throw std::invalid_argument("PiKRing: context mismatch");
  }
  static std::vector<Term> combine(std::vector<Term> sorted) {
    std::vector<Term> out;
    out.reserve(sorted.size());
    for (auto& t : sorted) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second += t.second;
      else
        out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term& t) { return t.second == Coeff(0); });
    return out;
  }

  std::shared_ptr<const PiKContext> ctx_;
  std::vector<Term> terms_;
};

template <class Coeff>
PiKRing<Coeff> pik_multiply(const PiKRing<Coeff>& a, const PiKRing<Coeff>& b) {
  return a * b;
}

inline double trace(const PiKRing<double>& a) { return a.coefficient(PiKElement{}); }

/// tr(ab) = Σ_g a_g b_{g⁻¹} without forming the product.
inline double trace_product(const PiKRing<double>& a, const PiKRing<double>& b) {
  double s = 0;
  if (a.is_zero() || b.is_zero()) return 0;
  const auto& ctx = a.context();
  for (const auto& [g, c] : a.terms()) s += c * b.coefficient(ctx->inverse(g));
  return s;
}

inline double l1_norm(const PiKRing<double>& a) {
  double s = 0;
  for (const auto& [g, c] : a.terms()) s += std::abs(c);
  return s;
}
inline PiKRing<double> adjoint(const PiKRing<double>& a) { return a.adjoint(); }
inline std::size_t support_size(const PiKRing<double>& a) { return a.size(); }
inline PiKRing<double> ring_one_like(const PiKRing<double>& a) {
  return PiKRing<double>::monomial(a.context(), PiKElement{}, 1.0);
}
inline PiKRing<double> ring_zero_like(const PiKRing<double>& a) { return PiKRing<double>(a.context()); }

/// Dense element of the real group ring of π(1) = Z = <t>:
/// Σ_k c[k] t^{low+k}.
class LaurentSeries {
 public:
  LaurentSeries() = default;
  LaurentSeries(long low, std::vector<double> c) : low_(low), c_(std::move(c)) { trim(); }

  static LaurentSeries monomial(long n, double c = 1.0) { return LaurentSeries(n, {c}); }

  long low() const { return low_; }
  long high() const { return low_ + static_cast<long>(c_.size()) - 1; }
  const std::vector<double>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }

  double coefficient(long n) const {
    const long k = n - low_;
    return k >= 0 && k < static_cast<long>(c_.size()) ? c_[static_cast<std::size_t>(k)] : 0.0;
  }

  LaurentSeries& operator+=(const LaurentSeries& o) {
    if (o.c_.empty()) return *this;
    if (c_.empty()) return *this = o;
    const long lo = std::min(low_, o.low_), hi = std::max(high(), o.high());
    std::vector<double> r(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[static_cast<std::size_t>(low_ - lo) + i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[static_cast<std::size_t>(o.low_ - lo) + i] += o.c_[i];
    low_ = lo;
    c_ = std::move(r);
    trim();
    return *this;
  }
  LaurentSeries& operator-=(const LaurentSeries& o) { return *this += -1.0 * o; }
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
  friend LaurentSeries operator*(double s, LaurentSeries a) {
    for (double& x : a.c_) x *= s;
    a.trim();
    return a;
  }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    double dropped = 0;
    return multiply(a, b, 0.0, dropped);
  }

  friend LaurentSeries multiply(const LaurentSeries& a, const LaurentSeries& b, double prune_tol,
                                double& pruned) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<double> r(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      const double x = a.c_[i];
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += x * b.c_[j];
    }
    LaurentSeries out(a.low_ + b.low_, std::move(r));
    if (prune_tol > 0) pruned += out.prune(prune_tol);
    return out;
  }

  /// Trims coefficients below tol from both ends; returns the dropped mass.
  double prune(double tol) {
    double mass = 0;
    std::size_t b = 0, e = c_.size();
    while (b < e && std::abs(c_[b]) < tol) mass += std::abs(c_[b++]);
    while (e > b && std::abs(c_[e - 1]) < tol) mass += std::abs(c_[--e]);
    c_ = std::vector<double>(c_.begin() + static_cast<std::ptrdiff_t>(b), c_.begin() + static_cast<std::ptrdiff_t>(e));
    low_ += static_cast<long>(b);
    return mass;
  }

  LaurentSeries adjoint() const {
    return LaurentSeries(-high(), std::vector<double>(c_.rbegin(), c_.rend()));
  }

 private:
  void trim() {
    std::size_t b = 0, e = c_.size();
    while (b < e && c_[b] == 0) ++b;
    while (e > b && c_[e - 1] == 0) --e;
    if (b != 0 || e != c_.size()) {
      c_ = std::vector<double>(c_.begin() + static_cast<std::ptrdiff_t>(b), c_.begin() + static_cast<std::ptrdiff_t>(e));
      low_ += static_cast<long>(b);
    }
    if (c_.empty()) low_ = 0;
  }

  long low_ = 0;
  std::vector<double> c_;
};

inline double trace(const LaurentSeries& a) { return a.coefficient(0); }
inline double trace_product(const LaurentSeries& a, const LaurentSeries& b) {
  double s = 0;
  const long lo = std::max(a.low(), -b.high()), hi = std::min(a.high(), -b.low());
  for (long n = lo; n <= hi; ++n) s += a.coefficient(n) * b.coefficient(-n);
  return s;
}
inline double l1_norm(const LaurentSeries& a) {
  double s = 0;
  for (double x : a.coeffs()) s += std::abs(x);
  return s;
}
inline LaurentSeries adjoint(const LaurentSeries& a) { return a.adjoint(); }
inline std::size_t support_size(const LaurentSeries& a) { return a.size(); }
inline LaurentSeries ring_one_like(const LaurentSeries&) { return LaurentSeries::monomial(0); }
inline LaurentSeries ring_zero_like(const LaurentSeries&) { return {}; }

/// Converts an exact π(1) matrix to dense series.
inline Matrix<LaurentSeries> to_series(const Matrix<PiKRing<Integer>>& a) {
  return a.map([](const PiKRing<Integer>& x) {
    if (x.context() && x.context()->rank() != 0)
      throw std::invalid_argument("to_series: entries must live in pi(1)");
    LaurentSeries s;
    for (const auto& [g, c] : x.terms()) s += LaurentSeries::monomial(static_cast<long>(g.n), to_double(c));
    return s;
  });
}

inline Matrix<PiKRing<double>> to_double(const Matrix<PiKRing<Integer>>& a) {
  return a.map([](const PiKRing<Integer>& x) { return x.template convert<double>(); });
}

}  // namespace magnus_torsion
