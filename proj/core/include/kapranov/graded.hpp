#pragma once

#include "kapranov/scalar.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kap {

struct BasisEntry {
  std::string name;
  int degree = 0;
};

class GradedBasis {
 public:
  GradedBasis() = default;
  explicit GradedBasis(std::vector<BasisEntry> entries);

  size_t size() const { return entries_.size(); }
  const BasisEntry& operator[](size_t i) const { return entries_[i]; }
  const std::string& name(size_t i) const { return entries_[i].name; }
  int degree(size_t i) const { return entries_[i].degree; }
  int index_of(const std::string& name) const;
  const std::vector<BasisEntry>& entries() const { return entries_; }

 private:
  std::vector<BasisEntry> entries_;
};

// Sparse vector over a GradedBasis; zero coefficients are never stored.
struct Element {
  std::map<int, Scalar> coeffs;

  void add(int index, const Scalar& c);
  bool is_zero() const { return coeffs.empty(); }
  Element& operator+=(const Element& o);
  Element scaled(const Scalar& c) const;
  bool operator==(const Element& o) const { return coeffs == o.coeffs; }
};

// Degree if every stored index has the same degree; nullopt for 0 or mixed.
std::optional<int> element_degree(const GradedBasis& basis, const Element& v);

// sigma is 0-based: sigma[i] is the image of i. The sign is the one picked up
// when the symbols v_0..v_{n-1} are rearranged into v_sigma(0)..v_sigma(n-1).
int koszul_sign(const std::vector<int>& sigma, const std::vector<int>& degs);

// (p,q)-shuffles, ordered lexicographically by the image of the first block.
std::vector<std::vector<int>> shuffles(int p, int q);

// Ordered partitions (I^1,...,I^q) of {0..n-1} into q nonempty ascending
// blocks whose maxima increase.
std::vector<std::vector<std::vector<int>>> ordered_partitions(int n, int q);

// Koszul sign of the permutation listing the blocks one after another.
int partition_sign(const std::vector<std::vector<int>>& blocks, const std::vector<int>& degs);

struct MultilinearMap {
  int arity = 1;
  int degree = 0;
  std::map<std::vector<int>, Element> table;
};

// Multilinear extension of the table; no Koszul signs are inserted.
Element eval_multilinear(const MultilinearMap& m, const std::vector<Element>& args);

long binomial(int n, int k);

}  // namespace kap
