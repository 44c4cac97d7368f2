#pragma once

#include "group_ring.hpp"
#include "word.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace magnus_torsion {

/// ζ = ∏_{i=1}^{g} [x_{2i-1}, x_{2i}] with [a,b] = a⁻¹b⁻¹ab.
inline Word boundary_word(int genus) {
  if (genus < 1) throw std::invalid_argument("boundary_word: genus must be positive");
  const int rank = 2 * genus;
  Word z(rank);
  for (int i = 1; i <= genus; ++i)
    z *= commutator(Word::generator(rank, 2 * i - 1), Word::generator(rank, 2 * i));
  return z;
}

struct AutomorphismOptions {
  bool check_boundary = true;
};

/// Automorphism of the free group of rank 2g given by the images of the
/// generators. When the inverse images are known they travel along, so
/// compositions of catalog twists stay exactly invertible.
class FreeAutomorphism {
 public:
  using Options = AutomorphismOptions;

  FreeAutomorphism() = default;

  FreeAutomorphism(int genus, std::vector<Word> images, std::string label = {},
                   std::optional<std::vector<Word>> inverse_images = std::nullopt,
                   Options opts = {})
      : genus_(genus),
        images_(std::move(images)),
        inverse_images_(std::move(inverse_images)),
        label_(std::move(label)) {
    if (genus < 1) throw std::invalid_argument("FreeAutomorphism: genus must be positive");
    validate_images(images_);
    if (inverse_images_) validate_images(*inverse_images_);
    if (opts.check_boundary && !is_boundary_preserving())
      throw std::invalid_argument("FreeAutomorphism '" + label_ +
                                  "': does not fix the boundary word " +
                                  boundary_word(genus_).to_string());
  }

  static FreeAutomorphism identity(int genus) {
    std::vector<Word> imgs;
    const int rank = 2 * genus;
    for (int i = 1; i <= rank; ++i) imgs.push_back(Word::generator(rank, i));
    auto inv = imgs;
    return FreeAutomorphism(genus, std::move(imgs), "identity", std::move(inv));
  }

  int genus() const { return genus_; }
  int rank() const { return 2 * genus_; }
  const std::vector<Word>& images() const { return images_; }
  const Word& image(int i) const { return images_.at(static_cast<std::size_t>(i - 1)); }
  const std::string& label() const { return label_; }
  void set_label(std::string s) { label_ = std::move(s); }
  bool has_inverse() const { return inverse_images_.has_value(); }

  Word apply(const Word& w) const {
    if (w.rank() != rank()) throw std::invalid_argument("apply: rank mismatch");
    Word out(rank());
    for (Letter l : w.letters()) {
      const Word& img = images_[static_cast<std::size_t>(std::abs(l) - 1)];
      out *= l > 0 ? img : img.inverse();
    }
    return out;
  }

  template <class Coeff>
  GroupRing<Coeff> apply_ring(const GroupRing<Coeff>& a) const {
    if (a.rank() != rank()) throw std::invalid_argument("apply_ring: rank mismatch");
    GroupRing<Coeff> r(rank());
    for (const auto& [w, c] : a.terms()) r.add_term(apply(w), c);
    return r;
  }

  bool is_boundary_preserving() const {
    const Word z = boundary_word(genus_);
    return apply(z) == z;
  }

  FreeAutomorphism inverse() const {
    if (!inverse_images_)
      throw std::logic_error("FreeAutomorphism '" + label_ + "': inverse images unknown");
    return FreeAutomorphism(genus_, *inverse_images_, label_.empty() ? "" : "(" + label_ + ")^-1",
                            images_, {.check_boundary = false});
  }

  friend bool operator==(const FreeAutomorphism& a, const FreeAutomorphism& b) {
    return a.genus_ == b.genus_ && a.images_ == b.images_;
  }

  std::string to_text() const {
    std::ostringstream out;
    if (!label_.empty()) out << "# " << label_ << "\n";
    out << "genus " << genus_ << "\n";
    for (int i = 1; i <= rank(); ++i) out << "x" << i << " -> " << image(i).to_string() << "\n";
    return out.str();
  }

 private:
  friend FreeAutomorphism compose(const FreeAutomorphism&, const FreeAutomorphism&);

  void validate_images(const std::vector<Word>& imgs) const {
    if (static_cast<int>(imgs.size()) != rank())
      throw std::invalid_argument("FreeAutomorphism: expected " + std::to_string(rank()) +
                                  " images");
    for (const Word& w : imgs)
      if (w.rank() != rank()) throw std::invalid_argument("FreeAutomorphism: image rank mismatch");
  }

  int genus_ = 1;
  std::vector<Word> images_;
  std::optional<std::vector<Word>> inverse_images_;
  std::string label_;
};

/// φ∘ψ: ψ is applied first, so (φ∘ψ)*(x_i) = φ*(ψ*(x_i)).
inline FreeAutomorphism compose(const FreeAutomorphism& phi, const FreeAutomorphism& psi) {
  if (phi.genus() != psi.genus()) throw std::invalid_argument("compose: genus mismatch");
  std::vector<Word> imgs;
  imgs.reserve(psi.images_.size());
  for (const Word& w : psi.images_) imgs.push_back(phi.apply(w));
  std::optional<std::vector<Word>> inv;
  if (phi.inverse_images_ && psi.inverse_images_) {
    const FreeAutomorphism pinv = psi.inverse();
    std::vector<Word> v;
    for (const Word& w : *phi.inverse_images_) v.push_back(pinv.apply(w));
    inv = std::move(v);
  }
  std::string label;
  if (!phi.label_.empty() || !psi.label_.empty()) label = phi.label_ + "*" + psi.label_;
  return FreeAutomorphism(phi.genus(), std::move(imgs), std::move(label), std::move(inv),
                          {.check_boundary = false});
}

inline FreeAutomorphism power(const FreeAutomorphism& phi, int n) {
  FreeAutomorphism base = n >= 0 ? phi : phi.inverse();
  FreeAutomorphism r = FreeAutomorphism::identity(phi.genus());
  for (int k = 0; k < std::abs(n); ++k) r = compose(r, base);
  return r;
}

/// Parses the line format
///   genus g
///   x<i> -> <word>      (one line per generator, any order)
/// with `#` comments and blank lines ignored.
inline FreeAutomorphism parse_automorphism(std::istream& in, std::string label = {},
                                           FreeAutomorphism::Options opts = {}) {
  int genus = 0;
  std::vector<std::optional<Word>> imgs;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("automorphism line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "genus") {
      if (genus != 0) fail("duplicate genus line");
      if (!(ls >> genus) || genus < 1) fail("bad genus");
      imgs.assign(static_cast<std::size_t>(2 * genus), std::nullopt);
      continue;
    }
    if (genus == 0) fail("expected 'genus g' first");
    std::string arrow;
    if (head.size() < 2 || head[0] != 'x' || !(ls >> arrow) || arrow != "->")
      fail("expected 'x<i> -> word'");
    int idx = 0;
    try {
      idx = std::stoi(head.substr(1));
    } catch (const std::exception&) {
      fail("bad generator '" + head + "'");
    }
    if (idx < 1 || idx > 2 * genus) fail("generator index out of range");
    std::string rest;
    std::getline(ls, rest);
    if (imgs[static_cast<std::size_t>(idx - 1)]) fail("duplicate image for " + head);
    imgs[static_cast<std::size_t>(idx - 1)] = Word::parse(2 * genus, rest);
  }
  if (genus == 0) throw std::invalid_argument("automorphism: missing 'genus' line");
  std::vector<Word> out;
  for (std::size_t i = 0; i < imgs.size(); ++i) {
    if (!imgs[i]) throw std::invalid_argument("automorphism: missing image of x" + std::to_string(i + 1));
    out.push_back(*imgs[i]);
  }
  return FreeAutomorphism(genus, std::move(out), std::move(label), std::nullopt, opts);
}

inline FreeAutomorphism load_automorphism(const std::string& path,
                                          FreeAutomorphism::Options opts = {}) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open automorphism file '" + path + "'");
  return parse_automorphism(in, path, opts);
}

}  // namespace magnus_torsion
