#pragma once

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace magnus_torsion {

/// Signed generator index: +i stands for x_i, -i for x_i^{-1}.
using Letter = int;

/// Freely reduced word in the free group of rank `rank` on x_1..x_rank.
///
/// Every constructor reduces eagerly, so two words are equal in the group
/// iff their letter sequences are equal.
class Word {
 public:
  Word() = default;
  explicit Word(int rank) : rank_(rank) {
    if (rank < 1) throw std::invalid_argument("Word: rank must be positive");
  }

  /// Reduces an arbitrary letter sequence.
  static Word reduce(int rank, std::span<const Letter> letters) {
    Word w(rank);
    w.letters_.reserve(letters.size());
    for (Letter l : letters) w.push(l);
    return w;
  }
  static Word reduce(int rank, std::initializer_list<Letter> letters) {
    return reduce(rank, std::span<const Letter>(letters.begin(), letters.size()));
  }

  static Word generator(int rank, int index) { return reduce(rank, {index}); }

  /// x_i^power.
  static Word power(int rank, int index, long power) {
    Word w(rank);
    const Letter l = power >= 0 ? index : -index;
    for (long k = 0; k < std::labs(power); ++k) w.push(l);
    return w;
  }

  int rank() const { return rank_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  Word inverse() const {
    Word w(rank_);
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
    return w;
  }

  /// Prefix of the first `n` letters (already reduced).
  Word prefix(std::size_t n) const {
    Word w(rank_);
    w.letters_.assign(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n));
    return w;
  }

  Word& operator*=(const Word& other) {
    check_rank(other);
    for (Letter l : other.letters_) push(l);
    return *this;
  }
  friend Word operator*(Word a, const Word& b) {
    a *= b;
    return a;
  }

  friend bool operator==(const Word& a, const Word& b) {
    return a.rank_ == b.rank_ && a.letters_ == b.letters_;
  }

  /// Shortlex: length first, then letters ordered x1 < X1 < x2 < X2 < ...
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
    if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.letters_.size(); ++i) {
      if (auto c = letter_key(a.letters_[i]) <=> letter_key(b.letters_[i]); c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  /// Text form: `x1 X2` (uppercase = inverse); identity is the empty string.
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) out += ' ';
      out += letters_[i] > 0 ? 'x' : 'X';
      out += std::to_string(std::abs(letters_[i]));
    }
    return out;
  }

  /// Parses the whitespace-separated token syntax produced by to_string.
  static Word parse(int rank, std::string_view text) {
    std::vector<Letter> letters;
    std::istringstream in{std::string(text)};
    std::string tok;
    while (in >> tok) {
      if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 'X'))
        throw std::invalid_argument("Word::parse: bad token '" + tok + "'");
      int idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoi(tok.substr(1), &used);
        if (used != tok.size() - 1) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw std::invalid_argument("Word::parse: bad token '" + tok + "'");
      }
      letters.push_back(tok[0] == 'x' ? idx : -idx);
    }
    return reduce(rank, letters);
  }

  /// Signed exponent sum of each generator (the image in H_1 = Z^rank).
  std::vector<long> abelianize() const {
    std::vector<long> v(static_cast<std::size_t>(rank_), 0);
    for (Letter l : letters_) v[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
    return v;
  }

 private:
  static int letter_key(Letter l) { return 2 * std::abs(l) + (l < 0 ? 1 : 0); }

  void push(Letter l) {
    if (l == 0 || std::abs(l) > rank_)
      throw std::out_of_range("Word: generator index " + std::to_string(l) +
                              " outside 1.." + std::to_string(rank_));
    if (!letters_.empty() && letters_.back() == -l)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }

  void check_rank(const Word& other) const {
    if (other.rank_ != rank_) throw std::invalid_argument("Word: rank mismatch");
  }

  int rank_ = 1;
  std::vector<Letter> letters_;
};

inline Word word_multiply(const Word& u, const Word& v) { return u * v; }
inline Word word_inverse(const Word& u) { return u.inverse(); }

/// [a,b] = a^{-1} b^{-1} a b.
inline Word commutator(const Word& a, const Word& b) { return a.inverse() * b.inverse() * a * b; }

}  // namespace magnus_torsion
