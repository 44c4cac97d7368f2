#pragma once

#include "common.hpp"
#include "word.hpp"

#include <cmath>
#include <map>
#include <string>

namespace magnus_torsion {

/// Finite formal sum Σ λ_g g over the free group of a fixed rank.
/// Coeff is Integer in symbolic code and double where the numerics need it.
template <class Coeff>
class GroupRing {
 public:
  using Terms = std::map<Word, Coeff>;

  GroupRing() = default;
  explicit GroupRing(int rank) : rank_(rank) {}

  static GroupRing zero(int rank) { return GroupRing(rank); }
  static GroupRing one(int rank) { return from_word(Word(rank)); }
  static GroupRing from_word(const Word& w, Coeff c = Coeff(1)) {
    GroupRing r(w.rank());
    r.add_term(w, c);
    return r;
  }

  int rank() const { return rank_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Coeff coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  void add_term(const Word& w, const Coeff& c) {
    if (w.rank() != rank_) throw std::invalid_argument("GroupRing: rank mismatch");
    if (c == Coeff(0)) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Coeff(0)) terms_.erase(it);
    }
  }

  GroupRing& operator+=(const GroupRing& o) {
    check(o);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  GroupRing& operator-=(const GroupRing& o) {
    check(o);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend GroupRing operator+(GroupRing a, const GroupRing& b) { return a += b; }
  friend GroupRing operator-(GroupRing a, const GroupRing& b) { return a -= b; }
  friend GroupRing operator-(const GroupRing& a) { return GroupRing(a.rank_) - a; }

  friend GroupRing operator*(const GroupRing& a, const GroupRing& b) {
    a.check(b);
    GroupRing r(a.rank_);
    for (const auto& [u, c] : a.terms_)
      for (const auto& [v, d] : b.terms_) r.add_term(u * v, c * d);
    return r;
  }
  friend GroupRing operator*(const Coeff& s, const GroupRing& a) {
    GroupRing r(a.rank_);
    for (const auto& [w, c] : a.terms_) r.add_term(w, s * c);
    return r;
  }

  friend bool operator==(const GroupRing& a, const GroupRing& b) {
    return a.rank_ == b.rank_ && a.terms_ == b.terms_;
  }

  /// Σ λ_g g ↦ Σ λ_g g⁻¹ (coefficients are real, so no conjugation).
  GroupRing involution() const {
    GroupRing r(rank_);
    for (const auto& [w, c] : terms_) r.add_term(w.inverse(), c);
    return r;
  }

  /// Augmentation Σ λ_g.
  Coeff augmentation() const {
    Coeff s(0);
    for (const auto& [w, c] : terms_) s += c;
    return s;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      std::string cs = coeff_text(c);
      bool neg = !cs.empty() && cs[0] == '-';
      if (neg) cs.erase(0, 1);
      out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
      first = false;
      if (w.is_identity()) {
        out += cs;
      } else {
        if (cs != "1") out += cs + "*";
        out += "(" + w.to_string() + ")";
      }
    }
    return out;
  }

 private:
  static std::string coeff_text(const Coeff& c) {
    if constexpr (std::is_floating_point_v<Coeff>) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.10g", static_cast<double>(c));
      return buf;
    } else {
      return c.str();
    }
  }

  void check(const GroupRing& o) const {
    if (o.rank_ != rank_) throw std::invalid_argument("GroupRing: rank mismatch");
  }

  int rank_ = 1;
  Terms terms_;
};

using IntGroupRing = GroupRing<Integer>;

/// Fox derivative ∂γ/∂x_i of a single word.
///
/// Walks γ left to right keeping the prefix u: a letter x_i contributes u,
/// a letter x_i^{-1} contributes -u x_i^{-1}.
inline IntGroupRing fox_derivative(const Word& gamma, int i) {
  if (i < 1 || i > gamma.rank())
    throw std::out_of_range("fox_derivative: generator index " + std::to_string(i));
  IntGroupRing r(gamma.rank());
  Word prefix(gamma.rank());
  for (Letter l : gamma.letters()) {
    if (l == i) {
      r.add_term(prefix, Integer(1));
      prefix *= Word::generator(gamma.rank(), l);
    } else {
      prefix *= Word::generator(gamma.rank(), l);
      if (l == -i) r.add_term(prefix, Integer(-1));
    }
  }
  return r;
}

/// Linear extension of the Fox derivative to the group ring.
inline IntGroupRing fox_derivative(const IntGroupRing& a, int i) {
  IntGroupRing r(a.rank());
  for (const auto& [w, c] : a.terms()) r += c * fox_derivative(w, i);
  return r;
}

}  // namespace magnus_torsion
