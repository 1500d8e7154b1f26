#pragma once

#include "kapranov/builders.hpp"
#include "kapranov/kapranov.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

struct ModTerm {
  int index;
  unsigned mono;
  const char* coeff;
};
using ModTerms = std::vector<ModTerm>;

struct AlgTerm {
  unsigned mono;
  const char* coeff;
};
using AlgTerms = std::vector<AlgTerm>;

struct TableEntry {
  std::vector<int> args;
  ModTerms value;
};

struct KoszulCase {
  std::vector<int> sigma;
  std::vector<int> degs;
  int sign;
};

#include "oracle_values.inc"

namespace testing {

using namespace kap;

inline ModuleElement module_element(const ModTerms& t) {
  ModuleElement v;
  for (const auto& x : t) v.add(x.index, x.mono, parse_scalar(x.coeff));
  return v;
}

inline AlgebraElement algebra_element(const AlgTerms& t) {
  AlgebraElement a;
  for (const auto& x : t) a.add(x.mono, parse_scalar(x.coeff));
  return a;
}

inline bool table_matches(const AMultilinear& f, const std::vector<TableEntry>& expected) {
  AMultilinear g = f;
  g.table.clear();
  for (const auto& e : expected) g.table[e.args] = module_element(e.value);
  return tables_equal(f, g);
}

inline ModuleElement key_element(const ModKey& k, const Scalar& c = Scalar(1)) {
  ModuleElement e;
  e.add(k.first, k.second, c);
  return e;
}

// Hand-rolled generators; every property test fixes its seed.
struct Gen {
  std::mt19937 rng;
  explicit Gen(unsigned seed) : rng(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  Scalar small_rational() {
    Scalar s(uniform(-4, 4), uniform(1, 3));
    s.canonicalize();
    return s;
  }

  AlgebraElement algebra(const CdgaPresentation& A, int terms = 3) {
    AlgebraElement a;
    const auto monos = all_monomials(A);
    for (int i = 0; i < terms; ++i) a.add(monos[uniform(0, static_cast<int>(monos.size()) - 1)], small_rational());
    return a;
  }

  // Homogeneous algebra element of the given degree (zero if there is none).
  AlgebraElement algebra_of_degree(const CdgaPresentation& A, int degree, int terms = 2) {
    AlgebraElement a;
    const auto monos = monomials_of_degree(A, degree);
    if (monos.empty()) return a;
    for (int i = 0; i < terms; ++i) a.add(monos[uniform(0, static_cast<int>(monos.size()) - 1)], small_rational());
    return a;
  }

  ModuleElement module(const DgModule& M, int terms = 3) {
    ModuleElement v;
    const auto keys = k_basis(M);
    for (int i = 0; i < terms; ++i) {
      const auto& k = keys[uniform(0, static_cast<int>(keys.size()) - 1)];
      v.add(k.first, k.second, small_rational());
    }
    return v;
  }

  // Homogeneous element of the given degree (zero if there is none).
  ModuleElement module_of_degree(const DgModule& M, int degree, int terms = 2) {
    ModuleElement v;
    const auto keys = k_basis_of_degree(M, degree);
    if (keys.empty()) return v;
    for (int i = 0; i < terms; ++i) {
      const auto& k = keys[uniform(0, static_cast<int>(keys.size()) - 1)];
      v.add(k.first, k.second, small_rational());
    }
    return v;
  }

  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), rng);
    return p;
  }

  std::vector<int> degrees(int n) {
    std::vector<int> d(n);
    for (auto& x : d) x = uniform(-2, 3);
    return d;
  }

  // Constant connection choices for a Lie pair with nb quotient directions.
  std::vector<std::vector<Coords>> choice(size_t nb) {
    std::vector<std::vector<Coords>> c(nb, std::vector<Coords>(nb, Coords(nb)));
    for (auto& a : c)
      for (auto& b : a)
        for (auto& x : b) x = small_rational();
    return c;
  }
};

inline std::vector<int> key_degrees(const DgModule& M, const std::vector<ModKey>& keys) {
  std::vector<int> d;
  for (const auto& k : keys) d.push_back(key_degree(M, k));
  return d;
}

}  // namespace testing
