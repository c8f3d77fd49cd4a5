#include "magnus/bch.hpp"

#include "magnus/rational.hpp"

#include <mutex>

namespace magnus {

namespace {

NcPoly unit() {
  NcPoly one;
  one.add(Word{}, 1);
  return one;
}

}  // namespace

NcPoly exp_truncated(const NcPoly& p, int kmax) {
  NcPoly acc = unit();
  NcPoly pw = unit();
  for (int j = 1; j <= kmax; ++j) {
    pw = mul_truncated(pw, p, kmax);
    if (pw.terms.empty()) break;
    NcPoly t = pw;
    t *= Rat(1) / factorial(j);
    acc += t;
  }
  return acc;
}

NcPoly log1p_truncated(const NcPoly& w, int kmax) {
  NcPoly acc;
  NcPoly pw = unit();
  for (int j = 1; j <= kmax; ++j) {
    pw = mul_truncated(pw, w, kmax);
    if (pw.terms.empty()) break;
    NcPoly t = pw;
    t *= Rat(j % 2 ? 1 : -1) / j;
    acc += t;
  }
  return acc;
}

std::vector<NcPoly> bch_terms(int kmax) {
  static std::mutex mu;
  static std::vector<NcPoly> cache;  // cache[k] = degree-k piece
  std::lock_guard<std::mutex> lock(mu);
  if (static_cast<int>(cache.size()) <= kmax) {
    NcPoly x(Word{1}), y(Word{2});
    NcPoly prod = mul_truncated(exp_truncated(x, kmax), exp_truncated(y, kmax), kmax);
    NcPoly w = prod;
    w.add(Word{}, -1);
    NcPoly l = log1p_truncated(w, kmax);
    cache.assign(kmax + 1, NcPoly{});
    for (auto& [word, c] : l.terms) cache[word.size()].add(word, c);
  }
  return std::vector<NcPoly>(cache.begin(), cache.begin() + kmax + 1);
}

NcPoly bch_component(int a, int b) {
  auto terms = bch_terms(a + b);
  NcPoly out;
  for (auto& [word, c] : terms[a + b].terms) {
    auto m = multidegree(word);
    if (m[1] == a && m[2] == b) out.add(word, c);
  }
  return out;
}

}  // namespace magnus
