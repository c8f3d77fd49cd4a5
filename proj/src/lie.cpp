#include "magnus/lie.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace magnus {

BTreePtr bt_leaf(int letter) {
  auto t = std::make_shared<BTree>();
  t->leaf = letter;
  return t;
}

BTreePtr bt_node(const BTreePtr& a, const BTreePtr& b) {
  auto t = std::make_shared<BTree>();
  t->left = a;
  t->right = b;
  return t;
}

std::string bt_str(const BTreePtr& t) {
  if (t->leaf) return std::to_string(t->leaf);
  return "[" + bt_str(t->left) + "," + bt_str(t->right) + "]";
}

Multidegree bt_multidegree(const BTreePtr& t) {
  if (t->leaf) {
    Multidegree m{};
    m[t->leaf] = 1;
    return m;
  }
  return mdeg_add(bt_multidegree(t->left), bt_multidegree(t->right));
}

NcPoly bt_expand(const BTreePtr& t) {
  if (t->leaf) return NcPoly(Word{t->leaf});
  return comm(bt_expand(t->left), bt_expand(t->right));
}

// Splits m into ordered pairs (a, b) with a+b = m, a != 0 != b; canonical
// enumeration keeps a <= b in the subtree serialization order instead, so we
// enumerate all pairs here and filter by string below.
static std::vector<std::pair<Multidegree, Multidegree>> splits(const Multidegree& m) {
  std::vector<int> letters;
  for (int l = 1; l < 16; ++l)
    if (m[l]) letters.push_back(l);
  std::vector<std::pair<Multidegree, Multidegree>> out;
  Multidegree a{};
  // Odometer over sub-multidegrees of m.
  while (true) {
    int i = 0;
    for (; i < static_cast<int>(letters.size()); ++i) {
      int l = letters[i];
      if (a[l] < m[l]) { a[l]++; break; }
      a[l] = 0;
    }
    if (i == static_cast<int>(letters.size())) break;
    bool zero = true, full = true;
    for (int l : letters) {
      if (a[l] != 0) zero = false;
      if (a[l] != m[l]) full = false;
    }
    if (zero || full) continue;
    Multidegree b{};
    for (int l : letters) b[l] = static_cast<std::uint8_t>(m[l] - a[l]);
    out.emplace_back(a, b);
  }
  return out;
}

std::vector<BTreePtr> bracket_trees(const Multidegree& m) {
  static std::map<Multidegree, std::vector<BTreePtr>> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;

  std::vector<BTreePtr> out;
  if (total_degree(m) == 1) {
    for (int l = 1; l < 16; ++l)
      if (m[l]) out.push_back(bt_leaf(l));
  } else {
    for (auto& [ma, mb] : splits(m)) {
      for (auto& a : bracket_trees(ma)) {
        std::string sa = bt_str(a);
        for (auto& b : bracket_trees(mb)) {
          // Unordered pair: keep one orientation, drop [A,A].
          if (sa < bt_str(b)) out.push_back(bt_node(a, b));
        }
      }
    }
  }
  cache[m] = out;
  return out;
}

// Expansion normalized to a primitive integer vector with positive leading
// coefficient; returns (key poly, scale) with expansion = scale * key.
static std::pair<NcPoly, Rat> primitive_form(const NcPoly& p) {
  Int g = 0;
  for (auto& [w, c] : p.terms) {
    if (denominator(c) != 1) throw std::logic_error("bracket expansion not integral");
    g = gcd(g, Int(abs(numerator(c))));
  }
  Rat scale(g);
  if (p.terms.begin()->second < 0) scale = -scale;
  NcPoly key = p;
  key *= 1 / scale;
  return {key, scale};
}

std::vector<BracketColumn> bracket_sign_classes(const Multidegree& m) {
  std::map<std::string, std::pair<BTreePtr, Rat>> classes;  // key -> (rep, |scale|)
  for (auto& t : bracket_trees(m)) {
    NcPoly e = bt_expand(t);
    if (e.is_zero()) continue;
    auto [key, scale] = primitive_form(e);
    std::string ks = key.str();
    Rat mag = rat_abs(scale);
    auto it = classes.find(ks);
    if (it == classes.end() || mag > it->second.second ||
        (mag == it->second.second && bt_str(t) < bt_str(it->second.first))) {
      classes[ks] = {t, mag};
    }
  }
  std::vector<BracketColumn> out;
  for (auto& [ks, rep] : classes) out.push_back({rep.first, bt_expand(rep.first)});
  std::sort(out.begin(), out.end(), [](const BracketColumn& a, const BracketColumn& b) {
    return bt_str(a.tree) < bt_str(b.tree);
  });
  return out;
}

static void product_rec(const Multidegree& rest,
                        std::vector<BTreePtr>& factors, NcPoly acc,
                        std::vector<ProductColumn>& out) {
  if (total_degree(rest) == 0) {
    if (!factors.empty()) out.push_back({factors, acc});
    return;
  }
  // next factor: any bracket class of any nonzero sub-multidegree
  std::vector<int> letters;
  for (int l = 1; l < 16; ++l)
    if (rest[l]) letters.push_back(l);
  Multidegree a{};
  while (true) {
    int i = 0;
    for (; i < static_cast<int>(letters.size()); ++i) {
      int l = letters[i];
      if (a[l] < rest[l]) { a[l]++; break; }
      a[l] = 0;
    }
    if (i == static_cast<int>(letters.size())) break;
    if (total_degree(a) == 0) continue;
    Multidegree b{};
    for (int l : letters) b[l] = static_cast<std::uint8_t>(rest[l] - a[l]);
    for (auto& cls : bracket_sign_classes(a)) {
      factors.push_back(cls.tree);
      product_rec(b, factors, factors.size() == 1 ? cls.expansion : acc * cls.expansion, out);
      factors.pop_back();
    }
  }
}

std::vector<ProductColumn> product_columns(const Multidegree& m) {
  std::vector<ProductColumn> out;
  std::vector<BTreePtr> factors;
  product_rec(m, factors, NcPoly{}, out);
  std::sort(out.begin(), out.end(), [](const ProductColumn& a, const ProductColumn& b) {
    return product_str(a.factors) < product_str(b.factors);
  });
  return out;
}

std::string product_str(const std::vector<BTreePtr>& factors) {
  std::string s;
  for (auto& f : factors) {
    if (!s.empty()) s += "*";
    s += bt_str(f);
  }
  return s;
}

NcPoly dynkin(const NcPoly& p) {
  NcPoly r;
  for (auto& [w, c] : p.terms) {
    NcPoly nest(Word{w.letter(w.size() - 1)});
    for (int i = w.size() - 2; i >= 0; --i) nest = comm(NcPoly(Word{w.letter(i)}), nest);
    nest *= c;
    r += nest;
  }
  return r;
}

NcPoly degree_scale(const NcPoly& p) {
  NcPoly r;
  for (auto& [w, c] : p.terms) r.add(w, c * w.size());
  return r;
}

NcPoly lie_project(const NcPoly& p) {
  NcPoly r;
  for (auto& [w, c] : p.terms) {
    NcPoly nest(Word{w.letter(w.size() - 1)});
    for (int i = w.size() - 2; i >= 0; --i) nest = comm(NcPoly(Word{w.letter(i)}), nest);
    nest *= c / w.size();
    r += nest;
  }
  return r;
}

bool is_lie_element(const NcPoly& p) { return lie_project(p) == p; }

Word word_rotate(const Word& w, int n) {
  int s = -1;
  for (int i = 0; i < w.size(); ++i)
    if (w.letter(i) == n) s = i;
  if (s < 0) throw std::invalid_argument("word_rotate: top letter missing");
  Word r;
  for (int i = s + 1; i < w.size(); ++i) r.push_back(w.letter(i) + 1);
  r.push_back(1);
  for (int i = 0; i < s; ++i) r.push_back(w.letter(i) + 1);
  return r;
}

NcPoly poly_rotate(const NcPoly& p, int n) {
  NcPoly r;
  for (auto& [w, c] : p.terms) r.add(word_rotate(w, n), c);
  return r;
}

NcPoly poly_reflect(const NcPoly& p, int n) {
  Rat sign = (n % 2 == 0) ? -1 : 1;
  NcPoly r;
  for (auto& [w, c] : p.terms) {
    Word m;
    for (int i = 0; i < w.size(); ++i) m.push_back(n + 1 - w.letter(i));
    r.add(m, sign * c);
  }
  return r;
}

long lie_dim_bidegree(int n1, int n2) {
  int n = n1 + n2;
  int g = std::gcd(n1, n2);
  auto moebius = [](int d) {
    int m = 1;
    for (int p = 2; p * p <= d; ++p) {
      if (d % p == 0) {
        d /= p;
        if (d % p == 0) return 0;
        m = -m;
      }
    }
    if (d > 1) m = -m;
    return m;
  };
  Rat sum = 0;
  for (int d = 1; d <= g; ++d)
    if (g % d == 0) sum += Rat(moebius(d)) * binomial(n / d, n1 / d);
  sum /= n;
  if (denominator(sum) != 1) throw std::logic_error("lie_dim_bidegree: not integral");
  return static_cast<long>(numerator(sum).convert_to<long long>());
}

}  // namespace magnus
