#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "magnus/rational.hpp"

namespace magnus {

// Monomial word over letters 1..15, length <= 15, packed into one uint64:
// nibble 0 holds the length, nibble 15-i holds letter i+1. With that layout
// raw integer comparison coincides with lexicographic word order.
struct Word {
  std::uint64_t bits = 0;

  Word() = default;
  Word(std::initializer_list<int> ls) { for (int l : ls) push_back(l); }

  int size() const { return static_cast<int>(bits & 0xF); }
  bool empty() const { return size() == 0; }
  int letter(int i) const { return static_cast<int>((bits >> (60 - 4 * i)) & 0xF); }

  void push_back(int l) {
    int n = size();
    if (n >= 15) throw std::length_error("Word: 15-letter capacity exceeded");
    bits = (bits & ~0xFULL) | (static_cast<std::uint64_t>(l) << (60 - 4 * n)) |
           static_cast<std::uint64_t>(n + 1);
  }

  friend Word operator+(const Word& a, const Word& b) {
    Word r = a;
    for (int i = 0; i < b.size(); ++i) r.push_back(b.letter(i));
    return r;
  }

  auto operator<=>(const Word&) const = default;

  std::string str() const;
};

using Multidegree = std::array<std::uint8_t, 16>;  // index by letter 1..15

Multidegree multidegree(const Word& w);
int total_degree(const Multidegree& m);
Multidegree mdeg_add(const Multidegree& a, const Multidegree& b);
bool mdeg_le(const Multidegree& a, const Multidegree& b);
std::vector<Word> words_of_multidegree(const Multidegree& m);

// Noncommutative polynomial with exact rational coefficients. The map keeps
// words sorted, which makes iteration order (and all serialization) canonical.
struct NcPoly {
  std::map<Word, Rat> terms;

  NcPoly() = default;
  explicit NcPoly(const Word& w, const Rat& c = 1) { if (c != 0) terms[w] = c; }

  bool is_zero() const { return terms.empty(); }
  void add(const Word& w, const Rat& c);
  Rat coeff(const Word& w) const;

  NcPoly& operator+=(const NcPoly& o);
  NcPoly& operator-=(const NcPoly& o);
  NcPoly& operator*=(const Rat& c);
  friend NcPoly operator+(NcPoly a, const NcPoly& b) { a += b; return a; }
  friend NcPoly operator-(NcPoly a, const NcPoly& b) { a -= b; return a; }
  friend NcPoly operator*(const NcPoly& a, const NcPoly& b);
  friend NcPoly operator*(const Rat& c, NcPoly p) { p *= c; return p; }
  bool operator==(const NcPoly& o) const { return terms == o.terms; }

  std::string str() const;
};

// Product with all terms beyond total degree kmax dropped before the
// concatenation happens, so no intermediate word can exceed the packed
// length cap.
NcPoly mul_truncated(const NcPoly& a, const NcPoly& b, int kmax);

NcPoly comm(const NcPoly& a, const NcPoly& b);

// Sum of |coefficients|: the l1 norm in the word basis.
Rat l1_norm(const NcPoly& p);

// Letter substitution w -> images[letter]; images must cover every letter used.
NcPoly substitute(const NcPoly& p, const std::vector<NcPoly>& images);

// Reversal-with-sign involution: word of length k maps to
// (-1)^(k+1) times the reversed word with letters i -> n+1-i.
NcPoly dagger(const NcPoly& p, int n);

// Formal trace: cyclic words keyed by their lexicographically least rotation.
std::map<Word, Rat> trace(const NcPoly& p);

}  // namespace magnus
