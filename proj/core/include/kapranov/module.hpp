#pragma once

#include "kapranov/cdga.hpp"

#include <optional>
#include <utility>

namespace kap {

// (basis index, monomial): the element mono * e_index, coefficient on the left.
using ModKey = std::pair<int, Mono>;

struct ModuleElement {
  std::map<ModKey, Scalar> terms;

  static ModuleElement basis(int i, Scalar c = Scalar(1));
  static ModuleElement term(int i, const AlgebraElement& a);

  void add(int i, Mono m, const Scalar& c);
  bool is_zero() const { return terms.empty(); }
  ModuleElement& operator+=(const ModuleElement& o);
  ModuleElement& operator-=(const ModuleElement& o);
  ModuleElement operator-() const { return scaled(Scalar(-1)); }
  ModuleElement scaled(const Scalar& c) const;
  AlgebraElement coefficient(int i) const;
  bool operator==(const ModuleElement& o) const { return terms == o.terms; }
};

ModuleElement operator+(ModuleElement a, const ModuleElement& b);
ModuleElement operator-(ModuleElement a, const ModuleElement& b);

struct DgModule {
  CdgaPtr algebra;
  GradedBasis basis;
  std::vector<ModuleElement> boundary;  // d(e_i) = sum_j a_ij e_j

  size_t rank() const { return basis.size(); }
  int degree(int i) const { return basis.degree(i); }
  AlgebraElement diff_entry(int i, int j) const { return boundary[i].coefficient(j); }
};

using ModulePtr = std::shared_ptr<const DgModule>;

DgModule make_module(CdgaPtr A, std::vector<BasisEntry> basis, std::vector<ModuleElement> boundary);

// Degree of a homogeneous element; nullopt for zero or mixed elements.
std::optional<int> module_degree(const DgModule& M, const ModuleElement& v);
inline int key_degree(const DgModule& M, const ModKey& k) { return mono_degree(k.second) + M.degree(k.first); }

ModuleElement left_multiply(const AlgebraElement& a, const ModuleElement& v);
ModuleElement right_multiply(const DgModule& M, const ModuleElement& v, const AlgebraElement& a);

ModuleElement apply_module_differential(const DgModule& M, const ModuleElement& v);

// Degree consistency of the differential and d^2 = 0 on the basis.
Report validate_dg_module(const DgModule& M);

// Dual basis with toggled names ("x" <-> "x*") and negated degrees.
DgModule dual_module(const DgModule& M);

// Evaluation <beta, omega> of an element of the dual of M on an element of M.
AlgebraElement pairing(const DgModule& M, const ModuleElement& beta, const ModuleElement& omega);

// Basis (m_i, n_j) stored at index i * rank(N) + j.
DgModule tensor_module(const DgModule& M, const DgModule& N);
ModuleElement tensor_elements(const DgModule& M, const DgModule& N, const ModuleElement& x,
                              const ModuleElement& y);

// Basis H_ij : m_i -> n_j at index i * rank(N) + j, degree |n_j| - |m_i|.
DgModule hom_module(const DgModule& M, const DgModule& N);
inline DgModule end_module(const DgModule& M) { return hom_module(M, M); }
ModuleElement apply_hom(const DgModule& M, const DgModule& N, const ModuleElement& H, const ModuleElement& v);

// iota_b w for b in the dual of Omega and w in Omega (x) E.
ModuleElement contract(const DgModule& omega, const DgModule& E, const ModuleElement& b, const ModuleElement& w);

struct ModuleMorphism {
  ModulePtr source;
  ModulePtr target;
  int degree = 0;
  std::vector<ModuleElement> images;  // image of each source basis element
};

ModuleMorphism identity_morphism(const ModulePtr& M);
ModuleElement apply_morphism(const ModuleMorphism& f, const ModuleElement& v);
ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f);  // g after f
bool is_dg_morphism(const ModuleMorphism& f);
Report validate_morphism(const ModuleMorphism& f);
// The element of Hom(source, target) representing f.
ModuleElement morphism_to_hom(const ModuleMorphism& f);
// Adjoint map between duals: (f^v beta)(m) = +-beta(f m), degree-0 only.
ModuleMorphism dual_morphism(const ModuleMorphism& f, const ModulePtr& dual_of_target, const ModulePtr& dual_of_source);

// All monomial-times-basis keys, ordered by basis index then monomial.
std::vector<ModKey> k_basis(const DgModule& M);
std::vector<ModKey> k_basis_of_degree(const DgModule& M, int degree);

std::string to_string(const DgModule& M, const ModuleElement& v);
std::string key_to_string(const DgModule& M, const ModKey& k);

}  // namespace kap
