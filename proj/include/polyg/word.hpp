// Words in a finitely generated free group: free and cyclic reduction,
// primitive roots, independence, and automorphism application.
//
// Surface syntax: lowercase letters are generators, uppercase letters are
// their inverses ("aBa" = a b^-1 a).

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

// Generators are numbered 1..rank.
struct Alphabet {
  int rank = 0;

  explicit Alphabet(int r) : rank(r) {
    if (r < 1 || r > 26)
      fail("alphabet rank must be between 1 and 26, got " + std::to_string(r));
  }

  bool operator==(const Alphabet&) const = default;
};

// One letter a_i or a_i^-1.
struct Letter {
  int gen = 0;   // 1-based generator index
  int sign = 0;  // +1 or -1

  Letter() = default;
  Letter(int g, int s) : gen(g), sign(s) {}

  Letter inverse() const { return Letter(gen, -sign); }

  char to_char() const {
    return static_cast<char>((sign > 0 ? 'a' : 'A') + gen - 1);
  }

  static Letter from_char(char c) {
    if (c >= 'a' && c <= 'z') return Letter(c - 'a' + 1, +1);
    if (c >= 'A' && c <= 'Z') return Letter(c - 'A' + 1, -1);
    fail(std::string("invalid letter character '") + c + "'");
  }

  auto operator<=>(const Letter&) const = default;
};

// A freely reduced word. Reduction happens on construction, so every
// Word in the system is reduced; cyclic reducedness is a separate
// predicate checked at the API boundaries that require it.
class Word {
public:
  Word() = default;

  Word(Alphabet ab, std::vector<Letter> letters) : alphabet_(ab) {
    letters_.reserve(letters.size());
    for (const Letter& x : letters) {
      if (x.gen < 1 || x.gen > ab.rank)
        fail("letter generator index " + std::to_string(x.gen) +
             " outside rank " + std::to_string(ab.rank));
      if (!letters_.empty() && letters_.back() == x.inverse())
        letters_.pop_back();
      else
        letters_.push_back(x);
    }
  }

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Letter>& letters() const { return letters_; }
  int size() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  const Letter& at(int i) const { return letters_[static_cast<size_t>(i)]; }

  bool is_cyclically_reduced() const {
    if (letters_.size() < 2) return true;
    return letters_.front() != letters_.back().inverse();
  }

  std::string str() const {
    std::string s;
    s.reserve(letters_.size());
    for (const Letter& x : letters_) s.push_back(x.to_char());
    return s;
  }

  bool operator==(const Word& o) const {
    return alphabet_ == o.alphabet_ && letters_ == o.letters_;
  }

private:
  Alphabet alphabet_{1};
  std::vector<Letter> letters_;
};

inline Word parse_word(const std::string& text, Alphabet ab) {
  std::vector<Letter> ls;
  ls.reserve(text.size());
  for (char c : text) {
    Letter x = Letter::from_char(c);
    if (x.gen > ab.rank)
      fail(std::string("generator '") + static_cast<char>('a' + x.gen - 1) +
           "' outside rank " + std::to_string(ab.rank));
    ls.push_back(x);
  }
  return Word(ab, std::move(ls));
}

// Smallest alphabet covering every generator mentioned in the texts.
inline Alphabet infer_alphabet(const std::vector<std::string>& texts) {
  int rank = 1;
  for (const std::string& t : texts)
    for (char c : t) rank = std::max(rank, Letter::from_char(c).gen);
  return Alphabet(rank);
}

inline Word concat(const Word& u, const Word& v) {
  if (!(u.alphabet() == v.alphabet())) fail("alphabet mismatch in concat");
  std::vector<Letter> ls = u.letters();
  ls.insert(ls.end(), v.letters().begin(), v.letters().end());
  return Word(u.alphabet(), std::move(ls));
}

inline Word inverse(const Word& w) {
  std::vector<Letter> ls(w.letters().rbegin(), w.letters().rend());
  for (Letter& x : ls) x = x.inverse();
  return Word(w.alphabet(), std::move(ls));
}

inline Word power(const Word& w, int k) {
  if (k < 0) fail("negative power");
  std::vector<Letter> ls;
  ls.reserve(static_cast<size_t>(w.size()) * static_cast<size_t>(k));
  for (int i = 0; i < k; ++i)
    ls.insert(ls.end(), w.letters().begin(), w.letters().end());
  return Word(w.alphabet(), std::move(ls));
}

// Shortest word in the cyclic-conjugation class: strips cancelling
// first/last pairs. Idempotent.
inline Word cyclic_reduce(const Word& w) {
  std::vector<Letter> ls = w.letters();
  size_t lo = 0, hi = ls.size();
  while (hi - lo >= 2 && ls[lo] == ls[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return Word(w.alphabet(), std::vector<Letter>(ls.begin() + lo, ls.begin() + hi));
}

inline Word rotate(const Word& w, int k) {
  if (w.empty()) return w;
  int n = w.size();
  k = ((k % n) + n) % n;
  std::vector<Letter> ls;
  ls.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) ls.push_back(w.at((i + k) % n));
  return Word(w.alphabet(), std::move(ls));
}

// True iff v is a rotation of u. Both inputs must be cyclically reduced.
inline bool cyclic_equal(const Word& u, const Word& v) {
  if (!u.is_cyclically_reduced() || !v.is_cyclically_reduced())
    fail("cyclic_equal requires cyclically reduced inputs");
  if (!(u.alphabet() == v.alphabet()) || u.size() != v.size()) return false;
  int n = u.size();
  if (n == 0) return true;
  for (int k = 0; k < n; ++k) {
    bool match = true;
    for (int i = 0; i < n && match; ++i)
      if (u.at(i) != v.at((i + k) % n)) match = false;
    if (match) return true;
  }
  return false;
}

struct RootPower {
  Word root;
  int exponent = 1;
};

// Maximal-exponent cyclic-word root: w = root^exponent with exponent the
// number of rotations fixing w. Divisor-length scan, O(|w|^2).
inline RootPower primitive_root(const Word& w) {
  if (w.empty()) fail("primitive_root of empty word");
  if (!w.is_cyclically_reduced())
    fail("primitive_root requires a cyclically reduced word");
  int n = w.size();
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (int i = 0; i < n && periodic; ++i)
      if (w.at(i) != w.at((i + d) % n)) periodic = false;
    if (periodic) {
      std::vector<Letter> ls(w.letters().begin(), w.letters().begin() + d);
      return RootPower{Word(w.alphabet(), std::move(ls)), n / d};
    }
  }
  return RootPower{w, 1};  // unreachable: d = n always matches
}

// No two distinct members have conjugate nontrivial powers. Powers with
// either sign count, so roots are compared up to rotation and inversion.
inline bool are_independent(const std::vector<Word>& words) {
  std::vector<Word> roots;
  roots.reserve(words.size());
  for (const Word& w : words) {
    if (w.empty()) fail("empty word in independence check");
    if (!w.is_cyclically_reduced())
      fail("independence check requires cyclically reduced words");
    roots.push_back(primitive_root(w).root);
  }
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j)
      if (cyclic_equal(roots[i], roots[j]) ||
          cyclic_equal(roots[i], inverse(roots[j])))
        return false;
  return true;
}

// An endomorphism given by generator images. For Whitehead moves the
// images generate by construction; nothing here re-verifies that.
struct AutomorphismSpec {
  Alphabet alphabet;
  std::vector<Word> images;  // images[i] = image of a_{i+1}

  AutomorphismSpec(Alphabet ab, std::vector<Word> imgs)
      : alphabet(ab), images(std::move(imgs)) {
    if (static_cast<int>(images.size()) != ab.rank)
      fail("automorphism needs one image per generator");
  }

  static AutomorphismSpec identity(Alphabet ab) {
    std::vector<Word> imgs;
    for (int g = 1; g <= ab.rank; ++g)
      imgs.push_back(Word(ab, {Letter(g, +1)}));
    return AutomorphismSpec(ab, std::move(imgs));
  }
};

inline Word apply_automorphism(const AutomorphismSpec& phi, const Word& w) {
  if (!(phi.alphabet == w.alphabet()))
    fail("alphabet mismatch in apply_automorphism");
  std::vector<Letter> out;
  for (const Letter& x : w.letters()) {
    const Word& img = phi.images[static_cast<size_t>(x.gen - 1)];
    if (x.sign > 0)
      out.insert(out.end(), img.letters().begin(), img.letters().end());
    else {
      Word inv = inverse(img);
      out.insert(out.end(), inv.letters().begin(), inv.letters().end());
    }
  }
  return Word(w.alphabet(), std::move(out));
}

inline AutomorphismSpec compose(const AutomorphismSpec& outer,
                                const AutomorphismSpec& inner) {
  std::vector<Word> imgs;
  imgs.reserve(inner.images.size());
  for (const Word& w : inner.images) imgs.push_back(apply_automorphism(outer, w));
  return AutomorphismSpec(outer.alphabet, std::move(imgs));
}

}  // namespace polyg
