#include "magnus/words.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <stdexcept>

namespace magnus {

std::string Word::str() const {
  std::string s;
  for (int i = 0; i < size(); ++i) s += fmt::format("{}", letter(i));
  return s;
}

Multidegree multidegree(const Word& w) {
  Multidegree m{};
  for (int i = 0; i < w.size(); ++i) m[w.letter(i)]++;
  return m;
}

int total_degree(const Multidegree& m) {
  int t = 0;
  for (int l = 1; l < 16; ++l) t += m[l];
  return t;
}

Multidegree mdeg_add(const Multidegree& a, const Multidegree& b) {
  Multidegree r{};
  for (int l = 0; l < 16; ++l) r[l] = static_cast<std::uint8_t>(a[l] + b[l]);
  return r;
}

bool mdeg_le(const Multidegree& a, const Multidegree& b) {
  for (int l = 0; l < 16; ++l)
    if (a[l] > b[l]) return false;
  return true;
}

static void words_rec(Multidegree m, Word cur, std::vector<Word>& out) {
  bool done = true;
  for (int l = 1; l < 16; ++l) {
    if (m[l] == 0) continue;
    done = false;
    Multidegree m2 = m;
    m2[l]--;
    Word w2 = cur;
    w2.push_back(l);
    words_rec(m2, w2, out);
  }
  if (done) out.push_back(cur);
}

std::vector<Word> words_of_multidegree(const Multidegree& m) {
  std::vector<Word> out;
  words_rec(m, Word{}, out);
  std::sort(out.begin(), out.end());
  return out;
}

void NcPoly::add(const Word& w, const Rat& c) {
  if (c == 0) return;
  auto it = terms.find(w);
  if (it == terms.end()) {
    terms.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

Rat NcPoly::coeff(const Word& w) const {
  auto it = terms.find(w);
  return it == terms.end() ? Rat(0) : it->second;
}

NcPoly& NcPoly::operator+=(const NcPoly& o) {
  for (auto& [w, c] : o.terms) add(w, c);
  return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& o) {
  for (auto& [w, c] : o.terms) add(w, -c);
  return *this;
}

NcPoly& NcPoly::operator*=(const Rat& c) {
  if (c == 0) { terms.clear(); return *this; }
  for (auto& [w, v] : terms) v *= c;
  return *this;
}

NcPoly operator*(const NcPoly& a, const NcPoly& b) {
  NcPoly r;
  for (auto& [wa, ca] : a.terms)
    for (auto& [wb, cb] : b.terms) r.add(wa + wb, ca * cb);
  return r;
}

NcPoly mul_truncated(const NcPoly& a, const NcPoly& b, int kmax) {
  NcPoly r;
  for (auto& [wa, ca] : a.terms) {
    if (wa.size() > kmax) continue;
    for (auto& [wb, cb] : b.terms) {
      if (wa.size() + wb.size() > kmax) continue;
      r.add(wa + wb, ca * cb);
    }
  }
  return r;
}

std::string NcPoly::str() const {
  if (terms.empty()) return "0";
  std::string s;
  for (auto& [w, c] : terms) {
    if (!s.empty()) s += " + ";
    s += fmt::format("{}*[{}]", rat_str(c), w.str());
  }
  return s;
}

NcPoly comm(const NcPoly& a, const NcPoly& b) { return a * b - b * a; }

Rat l1_norm(const NcPoly& p) {
  Rat s = 0;
  for (auto& [w, c] : p.terms) s += rat_abs(c);
  return s;
}

NcPoly substitute(const NcPoly& p, const std::vector<NcPoly>& images) {
  NcPoly r;
  for (auto& [w, c] : p.terms) {
    NcPoly prod(Word{}, c);
    for (int i = 0; i < w.size(); ++i) {
      int l = w.letter(i);
      if (l >= static_cast<int>(images.size()))
        throw std::out_of_range("substitute: letter without image");
      prod = prod * images[l];
    }
    r += prod;
  }
  return r;
}

NcPoly dagger(const NcPoly& p, int n) {
  NcPoly r;
  for (auto& [w, c] : p.terms) {
    Word rev;
    for (int i = w.size() - 1; i >= 0; --i) rev.push_back(n + 1 - w.letter(i));
    r.add(rev, (w.size() % 2 == 0) ? Rat(-c) : c);
  }
  return r;
}

static Word least_rotation(const Word& w) {
  Word best = w;
  for (int s = 1; s < w.size(); ++s) {
    Word rot;
    for (int i = 0; i < w.size(); ++i) rot.push_back(w.letter((i + s) % w.size()));
    best = std::min(best, rot);
  }
  return best;
}

std::map<Word, Rat> trace(const NcPoly& p) {
  std::map<Word, Rat> r;
  for (auto& [w, c] : p.terms) {
    Word k = least_rotation(w);
    auto it = r.find(k);
    if (it == r.end()) {
      r.emplace(k, c);
    } else {
      it->second += c;
      if (it->second == 0) r.erase(it);
    }
  }
  return r;
}

}  // namespace magnus
