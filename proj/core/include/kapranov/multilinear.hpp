#pragma once

#include "kapranov/module.hpp"

#include <functional>
#include <memory>

namespace kap {

// Element of M_1 (x)_A ... (x)_A M_k: coefficient * mono * (e_i1 (x) ... (x) e_ik).
struct TensorElement {
  std::map<std::pair<std::vector<int>, Mono>, Scalar> terms;

  void add(const std::vector<int>& idx, Mono m, const Scalar& c);
  bool is_zero() const { return terms.empty(); }
  TensorElement& operator+=(const TensorElement& o);
};

std::vector<int> slot_degrees(const std::vector<const DgModule*>& slots, const std::vector<int>& idx);

// (m_1 e_1) (x) ... (x) (m_k e_k) collected with the coefficient moved left.
TensorElement make_tensor(const std::vector<const DgModule*>& slots, const std::vector<ModuleElement>& args);

// An A-multilinear map of the given degree fixed by its values on basis tuples:
// f(m_1 e_1, ..., m_k e_k) = prod_i (-1)^{|m_i|(degree + |e_1|+...+|e_{i-1}|)} m_1...m_k f(e_1, ..., e_k).
struct AMultilinear {
  int arity = 1;
  int degree = 0;
  std::vector<ModulePtr> inputs;
  ModulePtr output;
  std::map<std::vector<int>, ModuleElement> table;

  std::vector<const DgModule*> slots() const;
  const ModuleElement& at(const std::vector<int>& idx) const;
};

ModuleElement apply_table(const AMultilinear& f, const TensorElement& t);
ModuleElement apply_table(const AMultilinear& f, const std::vector<ModuleElement>& args);

// All index tuples with entry i below ranks[i], in lexicographic order.
std::vector<std::vector<int>> basis_tuples(const std::vector<size_t>& ranks);

// All tuples of k-basis keys, in lexicographic order.
std::vector<std::vector<ModKey>> key_tuples(const std::vector<const DgModule*>& slots);

// A multilinear operation on elements with algebra coefficients. When table
// is set the operation is A-multilinear and apply evaluates the table.
struct MultiOp {
  int arity = 1;
  int degree = 0;
  std::function<ModuleElement(const std::vector<ModuleElement>&)> apply;
  std::shared_ptr<const AMultilinear> table;
};

MultiOp op_from_table(AMultilinear f);
MultiOp op_differential(const ModulePtr& M);
MultiOp op_zero(int arity, int degree);
MultiOp op_morphism(const ModuleMorphism& f);

bool tables_equal(const AMultilinear& a, const AMultilinear& b);
bool table_is_zero(const AMultilinear& a);

}  // namespace kap
