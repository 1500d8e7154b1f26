#include "kapranov/multilinear.hpp"

#include <stdexcept>

namespace kap {

void TensorElement::add(const std::vector<int>& idx, Mono m, const Scalar& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace({idx, m}, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms.erase(it);
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
  for (const auto& [k, c] : o.terms) add(k.first, k.second, c);
  return *this;
}

std::vector<int> slot_degrees(const std::vector<const DgModule*>& slots, const std::vector<int>& idx) {
  std::vector<int> d(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) d[i] = slots[i]->degree(idx[i]);
  return d;
}

TensorElement make_tensor(const std::vector<const DgModule*>& slots, const std::vector<ModuleElement>& args) {
  if (slots.size() != args.size()) throw std::invalid_argument("make_tensor: slot count mismatch");
  TensorElement out;
  const size_t k = args.size();
  std::vector<int> idx(k);
  std::function<void(size_t, Mono, Scalar, long)> rec = [&](size_t slot, Mono m, Scalar c, long pre) {
    if (slot == k) {
      out.add(idx, m, c);
      return;
    }
    for (const auto& [key, v] : args[slot].terms) {
      int s = mono_product_sign(m, key.second);
      if (s == 0) continue;
      s *= parity_sign(static_cast<long>(mono_degree(key.second)) * pre);
      idx[slot] = key.first;
      rec(slot + 1, m | key.second, s > 0 ? Scalar(c * v) : Scalar(-(c * v)), pre + slots[slot]->degree(key.first));
    }
  };
  rec(0, 0, Scalar(1), 0);
  return out;
}

std::vector<const DgModule*> AMultilinear::slots() const {
  std::vector<const DgModule*> s;
  for (const auto& m : inputs) s.push_back(m.get());
  return s;
}

const ModuleElement& AMultilinear::at(const std::vector<int>& idx) const {
  static const ModuleElement zero;
  auto it = table.find(idx);
  return it == table.end() ? zero : it->second;
}

ModuleElement apply_table(const AMultilinear& f, const TensorElement& t) {
  ModuleElement out;
  for (const auto& [k, c] : t.terms) {
    const ModuleElement& v = f.at(k.first);
    if (v.is_zero()) continue;
    Scalar coeff = c * parity_sign(static_cast<long>(f.degree) * mono_degree(k.second));
    out += left_multiply(AlgebraElement::monomial(k.second, coeff), v);
  }
  return out;
}

ModuleElement apply_table(const AMultilinear& f, const std::vector<ModuleElement>& args) {
  if (static_cast<int>(args.size()) != f.arity) throw std::invalid_argument("apply_table: arity mismatch");
  return apply_table(f, make_tensor(f.slots(), args));
}

std::vector<std::vector<int>> basis_tuples(const std::vector<size_t>& ranks) {
  std::vector<std::vector<int>> out;
  for (size_t r : ranks)
    if (r == 0) return out;
  std::vector<int> cur(ranks.size(), 0);
  while (true) {
    out.push_back(cur);
    int pos = static_cast<int>(ranks.size()) - 1;
    while (pos >= 0 && ++cur[pos] == static_cast<int>(ranks[pos])) cur[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

std::vector<std::vector<ModKey>> key_tuples(const std::vector<const DgModule*>& slots) {
  std::vector<std::vector<ModKey>> keys;
  std::vector<size_t> ranks;
  for (const auto* s : slots) {
    keys.push_back(k_basis(*s));
    ranks.push_back(keys.back().size());
  }
  std::vector<std::vector<ModKey>> out;
  for (const auto& t : basis_tuples(ranks)) {
    std::vector<ModKey> row;
    for (size_t i = 0; i < t.size(); ++i) row.push_back(keys[i][t[i]]);
    out.push_back(std::move(row));
  }
  return out;
}

MultiOp op_from_table(AMultilinear f) {
  auto t = std::make_shared<const AMultilinear>(std::move(f));
  return MultiOp{t->arity, t->degree, [t](const std::vector<ModuleElement>& args) { return apply_table(*t, args); }, t};
}

MultiOp op_differential(const ModulePtr& M) {
  return MultiOp{1, 1, [M](const std::vector<ModuleElement>& args) { return apply_module_differential(*M, args.at(0)); },
                 nullptr};
}

MultiOp op_zero(int arity, int degree) {
  return MultiOp{arity, degree, [](const std::vector<ModuleElement>&) { return ModuleElement{}; }, nullptr};
}

MultiOp op_morphism(const ModuleMorphism& f) {
  AMultilinear t{1, f.degree, {f.source}, f.target, {}};
  for (size_t i = 0; i < f.images.size(); ++i)
    if (!f.images[i].is_zero()) t.table[{static_cast<int>(i)}] = f.images[i];
  return op_from_table(std::move(t));
}

bool tables_equal(const AMultilinear& a, const AMultilinear& b) {
  if (a.arity != b.arity) return false;
  for (const auto& [k, v] : a.table)
    if (!(v == b.at(k))) return false;
  for (const auto& [k, v] : b.table)
    if (!(v == a.at(k))) return false;
  return true;
}

bool table_is_zero(const AMultilinear& a) {
  for (const auto& [k, v] : a.table)
    if (!v.is_zero()) return false;
  return true;
}

}  // namespace kap
