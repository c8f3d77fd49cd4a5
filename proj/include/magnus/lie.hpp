#pragma once

#include <memory>
#include <string>
#include <vector>

#include "magnus/words.hpp"

namespace magnus {

// Bracket monomial as an unordered binary tree; children are kept in canonical
// (serialization) order, so each {A,B} pair is enumerated once.
struct BTree {
  int leaf = 0;  // letter when > 0, internal node when 0
  std::shared_ptr<const BTree> left, right;
};
using BTreePtr = std::shared_ptr<const BTree>;

BTreePtr bt_leaf(int letter);
BTreePtr bt_node(const BTreePtr& a, const BTreePtr& b);
std::string bt_str(const BTreePtr& t);       // e.g. [[1,2],3]
Multidegree bt_multidegree(const BTreePtr& t);
NcPoly bt_expand(const BTreePtr& t);

// All canonical bracket trees of the given multidegree ([A,A] pruned).
std::vector<BTreePtr> bracket_trees(const Multidegree& m);

// One column per expansion ray: trees whose expansions are proportional are
// merged, keeping the largest-content representative (its unit cost buys the
// most of the common primitive part), ties broken by serialization.
struct BracketColumn {
  BTreePtr tree;
  NcPoly expansion;
};
std::vector<BracketColumn> bracket_sign_classes(const Multidegree& m);

// Ordered products of bracket monomials (single letters allowed as factors).
// These are the unit-cost columns of the extended norm.
struct ProductColumn {
  std::vector<BTreePtr> factors;
  NcPoly expansion;
};
std::vector<ProductColumn> product_columns(const Multidegree& m);
std::string product_str(const std::vector<BTreePtr>& factors);

// Right-nested bracketing w = l1..lk -> [l1,[l2,[...,lk]]], extended linearly.
// For a Lie element of degree k this returns k times the element.
NcPoly dynkin(const NcPoly& p);
NcPoly degree_scale(const NcPoly& p);
NcPoly lie_project(const NcPoly& p);
bool is_lie_element(const NcPoly& p);

// Cyclic index shift on multilinear words (letter n maps out, 1 re-enters).
Word word_rotate(const Word& w, int n);
NcPoly poly_rotate(const NcPoly& p, int n);

// In-place letter complement i -> n+1-i scaled by (-1)^(n+1); with
// poly_rotate this generates a dihedral action fixing the multilinear
// expansion terms.
NcPoly poly_reflect(const NcPoly& p, int n);

// Dimension of the bidegree (n1,n2) component of the free Lie algebra on two
// generators (necklace count via Moebius function).
long lie_dim_bidegree(int n1, int n2);

}  // namespace magnus
