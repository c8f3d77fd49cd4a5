#include "magnus/magnus_terms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace magnus {

std::vector<Rat> beta_coeffs(int upto) {
  std::vector<Rat> beta(upto + 1);
  for (int j = 0; j <= upto; ++j) {
    Rat s = (j == 0) ? Rat(1) : Rat(0);
    for (int i = 0; i < j; ++i) s -= beta[i] / factorial(j + 1 - i);
    beta[j] = s;  // the /1! term of the convolution is beta_j itself
  }
  return beta;
}

NcPoly mu_mp(int k) {
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 1);
  NcPoly r;
  Rat kfact = factorial(k);
  do {
    int des = 0;
    for (int i = 0; i + 1 < k; ++i)
      if (perm[i] > perm[i + 1]) des++;
    int asc = k - 1 - des;
    Word w;
    for (int l : perm) w.push_back(l);
    Rat c = factorial(asc) * factorial(des) / kfact;
    r.add(w, des % 2 ? -c : c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return r;
}

// mu_l with the identity variables relabeled through `labels` (ascending).
static NcPoly mu_on(const std::vector<int>& labels) {
  static std::vector<NcPoly> cache;  // cache[l] = mu_mp(l)
  int l = static_cast<int>(labels.size());
  while (static_cast<int>(cache.size()) <= l) cache.push_back(mu_mp(static_cast<int>(cache.size())));
  NcPoly r;
  for (auto& [w, c] : cache[l].terms) {
    Word img;
    for (int i = 0; i < w.size(); ++i) img.push_back(labels[w.letter(i) - 1]);
    r.add(img, c);
  }
  return r;
}

// Ordered set partitions of `elems`; calls f(blocks) for each.
template <typename F>
static void ordered_partitions(std::vector<int> elems, std::vector<std::vector<int>>& blocks,
                               const F& f) {
  if (elems.empty()) {
    f(blocks);
    return;
  }
  int n = static_cast<int>(elems.size());
  // first block = any nonempty subset, kept ascending
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> block, rest;
    for (int i = 0; i < n; ++i)
      ((mask >> i) & 1 ? block : rest).push_back(elems[i]);
    blocks.push_back(block);
    ordered_partitions(rest, blocks, f);
    blocks.pop_back();
  }
}

static NcPoly mu_by_partitions(const std::vector<int>& domain, int target, bool alternate) {
  auto beta = beta_coeffs(static_cast<int>(domain.size()) + 1);
  NcPoly acc;
  std::vector<std::vector<int>> blocks;
  ordered_partitions(domain, blocks, [&](const std::vector<std::vector<int>>& bs) {
    int s = static_cast<int>(bs.size());
    Rat c = beta[s];
    if (alternate && s % 2) c = -c;
    if (c == 0) return;
    NcPoly term(Word{target}, c);
    for (int j = s - 1; j >= 0; --j) term = comm(mu_on(bs[j]), term);
    acc += term;
  });
  if (domain.empty()) acc = NcPoly(Word{target});  // bare first term
  return acc;
}

NcPoly mu_recursive_left(int k) {
  if (k == 1) return NcPoly(Word{1});
  std::vector<int> domain(k - 1);
  std::iota(domain.begin(), domain.end(), 2);
  return mu_by_partitions(domain, 1, false);
}

NcPoly mu_recursive_right(int k) {
  if (k == 1) return NcPoly(Word{1});
  std::vector<int> domain(k - 1);
  std::iota(domain.begin(), domain.end(), 1);
  return mu_by_partitions(domain, k, true);
}

NcPoly mu_lie(int k) {
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 1);
  NcPoly r;
  Rat norm = factorial(k) * k;
  do {
    int des = 0;
    for (int i = 0; i + 1 < k; ++i)
      if (perm[i] > perm[i + 1]) des++;
    int asc = k - 1 - des;
    NcPoly nest(Word{perm[k - 1]});
    for (int i = k - 2; i >= 0; --i) nest = comm(NcPoly(Word{perm[i]}), nest);
    Rat c = factorial(asc) * factorial(des) / norm;
    nest *= des % 2 ? -c : c;
    r += nest;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return r;
}

NcPoly mu_nested(int k, int h1, int h2) {
  if (h1 < 1 || h2 < 1 || h1 + h2 > k) throw std::invalid_argument("mu_nested: bad split");
  std::vector<int> inner(k - h1 - h2);
  std::iota(inner.begin(), inner.end(), h1 + 1);
  NcPoly acc;
  std::vector<std::vector<int>> blocks;
  ordered_partitions(inner, blocks, [&](const std::vector<std::vector<int>>& bs) {
    int s = static_cast<int>(bs.size());
    // outer arguments: X_1..X_h1, the block terms, X_{k-h2+1}..X_k
    std::vector<NcPoly> args;
    for (int i = 1; i <= h1; ++i) args.emplace_back(Word{i});
    for (auto& b : bs) args.push_back(mu_on(b));
    for (int i = k - h2 + 1; i <= k; ++i) args.emplace_back(Word{i});
    // substitute into mu_{h1+s+h2}
    std::vector<int> labels(args.size());
    std::iota(labels.begin(), labels.end(), 1);
    NcPoly outer = mu_on(labels);
    std::vector<NcPoly> images(args.size() + 1);
    for (size_t i = 0; i < args.size(); ++i) images[i + 1] = args[i];
    acc += substitute(outer, images);
  });
  return acc;
}

NcPoly mu_weighted(int a, int b, const Rat& s) {
  int k = a + b;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 1);
  NcPoly r;
  Rat sm1 = s - 1;
  do {
    // sequence (a + 1/2, perm...): compare via doubled values 2a+1 vs 2*perm
    int prev = 2 * a + 1, asc = 0, des = 0;
    for (int i = 0; i < k; ++i) {
      int cur = 2 * perm[i];
      (cur > prev ? asc : des)++;
      prev = cur;
    }
    Rat c = 1;
    for (int i = 0; i < asc; ++i) c *= s;
    for (int i = 0; i < des; ++i) c *= sm1;
    Word w;
    for (int l : perm) w.push_back(l);
    r.add(w, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return r;
}

NcPoly mu_weighted3(int a, int b, int c, const Rat& s) {
  int k = a + b + c;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 1);
  NcPoly r;
  Rat sm1 = s - 1;
  do {
    // sequence (a + 1/2, perm..., a + b + 1/2), doubled-value comparisons
    int prev = 2 * a + 1, asc = 0, des = 0;
    for (int i = 0; i < k; ++i) {
      int cur = 2 * perm[i];
      (cur > prev ? asc : des)++;
      prev = cur;
    }
    (2 * (a + b) + 1 > prev ? asc : des)++;
    Rat co = 1;
    for (int i = 0; i < asc; ++i) co *= s;
    for (int i = 0; i < des; ++i) co *= sm1;
    Word w;
    for (int l : perm) w.push_back(l);
    r.add(w, co);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return r;
}

}  // namespace magnus

