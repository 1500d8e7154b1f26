#include "kapranov/kapranov.hpp"

#include <stdexcept>

namespace kap {

namespace {

ModuleElement key_element(const ModKey& k) {
  ModuleElement v;
  v.add(k.first, k.second, 1);
  return v;
}

std::vector<ModuleElement> key_elements(const std::vector<ModKey>& t) {
  std::vector<ModuleElement> out;
  out.reserve(t.size());
  for (const auto& k : t) out.push_back(key_element(k));
  return out;
}

std::vector<ModuleElement> basis_elements(const std::vector<int>& t) {
  std::vector<ModuleElement> out;
  out.reserve(t.size());
  for (int i : t) out.push_back(ModuleElement::basis(i));
  return out;
}

TensorElement basis_tensor(const std::vector<int>& idx) {
  TensorElement t;
  t.add(idx, 0, 1);
  return t;
}

std::string tuple_string(const std::vector<const DgModule*>& slots, const std::vector<ModKey>& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += key_to_string(*slots[i], t[i]);
  }
  return s + ")";
}

ModuleElement signed_element(int s, ModuleElement v) { return s > 0 ? v : -v; }

// Splits every argument into k-basis keys and calls fn on each key tuple.
void expand_keys(const std::vector<ModuleElement>& args,
                 const std::function<void(const std::vector<ModKey>&, const Scalar&)>& fn) {
  std::vector<ModKey> cur(args.size());
  std::function<void(size_t, const Scalar&)> rec = [&](size_t i, const Scalar& c) {
    if (i == args.size()) {
      fn(cur, c);
      return;
    }
    for (const auto& [k, v] : args[i].terms) {
      cur[i] = k;
      rec(i + 1, c * v);
    }
  };
  rec(0, Scalar(1));
}

Report run_cases(std::string name, size_t n, const std::function<std::optional<Witness>(size_t)>& check) {
  std::vector<std::optional<Witness>> found(n);
  parallel_for(n, [&](size_t i) { found[i] = check(i); });
  Report r(std::move(name));
  r.cases = n;
  for (auto& w : found)
    if (w) r.fail(std::move(w->location), std::move(w->value));
  return r;
}

// Fills an A-multilinear table by evaluating fn on every basis tuple.
AMultilinear fill_table(int arity, int degree, std::vector<ModulePtr> inputs, ModulePtr output,
                        const std::function<ModuleElement(const std::vector<int>&)>& fn) {
  AMultilinear f{arity, degree, std::move(inputs), std::move(output), {}};
  std::vector<size_t> ranks;
  for (const auto& m : f.inputs) ranks.push_back(m->rank());
  const auto tuples = basis_tuples(ranks);
  std::vector<ModuleElement> vals(tuples.size());
  parallel_for(tuples.size(), [&](size_t n) { vals[n] = fn(tuples[n]); });
  for (size_t n = 0; n < tuples.size(); ++n)
    if (!vals[n].is_zero()) f.table[tuples[n]] = std::move(vals[n]);
  return f;
}

// partitions[q] lists the ordered partitions of {0..n-1} into q blocks.
std::vector<std::vector<std::vector<std::vector<int>>>> partition_table(int n) {
  std::vector<std::vector<std::vector<std::vector<int>>>> p(n + 1);
  for (int q = 1; q <= n; ++q) p[q] = ordered_partitions(n, q);
  return p;
}

using OuterFn = std::function<ModuleElement(int, const std::vector<ModuleElement>&)>;
using InnerFn = std::function<ModuleElement(const std::vector<ModuleElement>&)>;

// sum over q in [qmin, qmax] and ordered partitions I^1..I^q of
// eps(I) outer_q(inner(v_{I^1}), ..., inner(v_{I^q})).
ModuleElement partition_sum(const std::vector<ModuleElement>& v, const std::vector<int>& degs,
                            const std::vector<std::vector<std::vector<std::vector<int>>>>& parts, int qmin, int qmax,
                            const OuterFn& outer, const InnerFn& inner) {
  ModuleElement out;
  for (int q = qmin; q <= qmax; ++q)
    for (const auto& blocks : parts[q]) {
      std::vector<ModuleElement> xs;
      bool zero = false;
      for (const auto& block : blocks) {
        std::vector<ModuleElement> args;
        for (int i : block) args.push_back(v[i]);
        xs.push_back(inner(args));
        if (xs.back().is_zero()) {
          zero = true;
          break;
        }
      }
      if (zero) continue;
      out += signed_element(partition_sign(blocks, degs), outer(q, xs));
    }
  return out;
}

const DgModule& dual_check(const Connection& nabla) {
  const DgModule& omega = nabla.omega();
  const DgModule& B = *nabla.module;
  if (omega.rank() != B.rank() || omega.algebra != B.algebra)
    throw std::invalid_argument("connection must live on the dual of its derivation target");
  for (size_t i = 0; i < B.rank(); ++i)
    if (B.degree(i) != -omega.degree(i))
      throw std::invalid_argument("connection must live on the dual of its derivation target");
  return B;
}

std::vector<int> key_degrees(const DgModule& M, const std::vector<ModKey>& t) {
  std::vector<int> d;
  for (const auto& k : t) d.push_back(key_degree(M, k));
  return d;
}

std::vector<int> key_degrees(const std::vector<const DgModule*>& slots, const std::vector<ModKey>& t) {
  std::vector<int> d;
  for (size_t i = 0; i < t.size(); ++i) d.push_back(key_degree(*slots[i], t[i]));
  return d;
}

}  // namespace

TensorElement covariant_tensor_derivative(const std::vector<const Connection*>& slots, const ModuleElement& b,
                                          const TensorElement& t) {
  TensorElement out;
  if (slots.empty()) return out;
  const Connection& c0 = *slots[0];
  const DgModule& omega = c0.omega();
  for (const auto& [bk, bc] : b.terms) {
    ModuleElement bt;
    bt.add(bk.first, bk.second, bc);
    const long eff = mono_degree(bk.second) - omega.degree(bk.first) + c0.degree();
    for (const auto& [tk, tc] : t.terms) {
      const auto& [idx, m] = tk;
      if (idx.size() != slots.size()) throw std::invalid_argument("covariant_tensor_derivative: slot count mismatch");
      if (m != 0) {
        ModuleElement pm = extend_derivation(c0.twist, AlgebraElement::monomial(m, tc));
        for (const auto& [a, ac] : pairing(omega, bt, pm).terms) out.add(idx, a, ac);
      }
      const int msign = parity_sign(eff * mono_degree(m));
      long pre = 0;
      for (size_t i = 0; i < idx.size(); ++i) {
        ModuleElement nb = covariant_derivative(*slots[i], bt, ModuleElement::basis(idx[i]));
        for (const auto& [nk, nc] : nb.terms) {
          int s = mono_product_sign(m, nk.second);
          if (s == 0) continue;
          s *= msign * parity_sign(eff * pre) * parity_sign(mono_degree(nk.second) * pre);
          std::vector<int> j = idx;
          j[i] = nk.first;
          out.add(j, m | nk.second, s > 0 ? Scalar(tc * nc) : Scalar(-(tc * nc)));
        }
        pre += slots[i]->module->degree(idx[i]);
      }
    }
  }
  return out;
}

MultiOp BracketFamily::bracket(int k) const {
  if (k >= 1 && k <= max_arity()) return brackets[k - 1];
  return op_zero(k, 1);
}

BracketFamily trivial_family(const ModulePtr& B, int N) {
  BracketFamily fam{B, {op_differential(B)}};
  for (int k = 2; k <= N; ++k) fam.brackets.push_back(op_zero(k, 1));
  return fam;
}

BracketFamily kapranov_brackets(const Connection& nabla, int N) {
  if (N < 1) throw std::invalid_argument("kapranov_brackets: N must be at least 1");
  if (nabla.degree() != 0) throw std::invalid_argument("kapranov_brackets: connection must be a delta-connection");
  dual_check(nabla);
  const ModulePtr& B = nabla.module;
  BracketFamily fam{B, {op_differential(B)}};
  if (N == 1) return fam;
  fam.brackets.push_back(op_from_table(atiyah_cocycle(nabla, B).bilinear));
  for (int k = 2; k < N; ++k) {
    const AMultilinear& prev = *fam.brackets.back().table;
    const std::vector<const Connection*> slots(k, &nabla);
    AMultilinear next = fill_table(k + 1, 1, std::vector<ModulePtr>(k + 1, B), B, [&](const std::vector<int>& t) {
      ModuleElement b0 = ModuleElement::basis(t[0]);
      std::vector<int> rest(t.begin() + 1, t.end());
      ModuleElement v = covariant_derivative(nabla, b0, prev.at(rest)).scaled(parity_sign(B->degree(t[0])));
      v -= apply_table(prev, covariant_tensor_derivative(slots, b0, basis_tensor(rest)));
      return v;
    });
    fam.brackets.push_back(op_from_table(std::move(next)));
  }
  return fam;
}

namespace {

ModuleElement direct_on_keys(const Connection& c, const std::vector<ModuleElement>& args);

ModuleElement direct(const Connection& c, const std::vector<ModuleElement>& args) {
  ModuleElement out;
  expand_keys(args, [&](const std::vector<ModKey>& t, const Scalar& coeff) {
    out += direct_on_keys(c, key_elements(t)).scaled(coeff);
  });
  return out;
}

ModuleElement direct_on_keys(const Connection& c, const std::vector<ModuleElement>& args) {
  const DgModule& B = *c.module;
  const size_t k = args.size();
  if (k == 1) return apply_module_differential(B, args[0]);
  const ModuleElement& b0 = args[0];
  const long d0 = key_degree(B, b0.terms.begin()->first);
  if (k == 2) {
    ModuleElement at = extend_connection(c, apply_module_differential(B, args[1]));
    at -= apply_module_differential(*c.omega_module, extend_connection(c, args[1]));
    return contract(c.omega(), B, b0, at).scaled(parity_sign(d0));
  }
  std::vector<ModuleElement> rest(args.begin() + 1, args.end());
  ModuleElement out = covariant_derivative(c, b0, direct(c, rest)).scaled(parity_sign(d0));
  long pre = 0;
  for (size_t i = 0; i < rest.size(); ++i) {
    std::vector<ModuleElement> r = rest;
    r[i] = covariant_derivative(c, b0, rest[i]);
    out -= direct(c, r).scaled(parity_sign(d0 * pre));
    pre += key_degree(B, rest[i].terms.begin()->first);
  }
  return out;
}

}  // namespace

ModuleElement kapranov_bracket_direct(const Connection& nabla, const std::vector<ModuleElement>& args) {
  if (args.empty()) throw std::invalid_argument("kapranov_bracket_direct: no arguments");
  dual_check(nabla);
  return direct(nabla, args);
}

Report check_a_multilinear(const KLinearFn& f, const std::vector<const DgModule*>& slots, int degree,
                           const DgModule& output) {
  if (slots.empty()) throw std::invalid_argument("check_a_multilinear: no slots");
  const CdgaPresentation& A = *slots[0]->algebra;
  const size_t k = slots.size();
  const size_t gens = A.rank();
  std::vector<size_t> ranks;
  for (const auto* s : slots) ranks.push_back(s->rank());
  const auto tuples = basis_tuples(ranks);
  return run_cases("a_multilinear", tuples.size() * k * gens, [&](size_t n) -> std::optional<Witness> {
    const auto& t = tuples[n / (k * gens)];
    const size_t slot = (n / gens) % k;
    const int g = static_cast<int>(n % gens);
    const Mono a = Mono(1) << g;
    std::vector<ModuleElement> args = basis_elements(t);
    ModuleElement base = f(args);
    args[slot] = ModuleElement{};
    args[slot].add(t[slot], a, 1);
    ModuleElement lhs = f(args);
    long pre = degree;
    for (size_t j = 0; j < slot; ++j) pre += slots[j]->degree(t[j]);
    ModuleElement rhs = left_multiply(AlgebraElement::monomial(a, parity_sign(mono_degree(a) * pre)), base);
    if (lhs == rhs) return std::nullopt;
    std::vector<ModKey> keys;
    for (int i : t) keys.push_back({i, 0});
    return Witness{"slot " + std::to_string(slot + 1) + " a=" + A.generators.name(g) + " " + tuple_string(slots, keys),
                   to_string(output, lhs - rhs)};
  });
}

Report check_leibniz_infinity(const BracketFamily& fam, int n_max) {
  Report total("leibniz_infinity");
  const DgModule& B = *fam.carrier;
  struct Term {
    int i, j, k;
    std::vector<int> sigma;
  };
  std::vector<MultiOp> ops(n_max + 1);
  for (int a = 1; a <= n_max; ++a) ops[a] = fam.bracket(a);
  for (int n = 1; n <= n_max; ++n) {
    std::vector<Term> terms;
    for (int j = 1; j <= n; ++j)
      for (int k = j; k <= n; ++k)
        for (auto& sigma : shuffles(k - j, j - 1)) terms.push_back({n + 1 - j, j, k, std::move(sigma)});
    const std::vector<const DgModule*> slots(n, &B);
    const auto tuples = key_tuples(slots);
    total.absorb(run_cases("", tuples.size(), [&](size_t c) -> std::optional<Witness> {
      const auto& t = tuples[c];
      const std::vector<int> degs = key_degrees(B, t);
      const std::vector<ModuleElement> v = key_elements(t);
      ModuleElement res;
      for (const Term& tm : terms) {
        const int p = tm.k - tm.j;
        std::vector<ModuleElement> inner;
        for (int q = p; q < tm.k - 1; ++q) inner.push_back(v[tm.sigma[q]]);
        inner.push_back(v[tm.k - 1]);
        ModuleElement x = ops[tm.j].apply(inner);
        if (x.is_zero()) continue;
        int s = koszul_sign(tm.sigma, std::vector<int>(degs.begin(), degs.begin() + (tm.k - 1)));
        long dag = 0;
        for (int q = 0; q < p; ++q) dag += degs[tm.sigma[q]];
        s *= parity_sign(dag);
        std::vector<ModuleElement> outer;
        for (int q = 0; q < p; ++q) outer.push_back(v[tm.sigma[q]]);
        outer.push_back(std::move(x));
        for (int q = tm.k; q < n; ++q) outer.push_back(v[q]);
        res += signed_element(s, ops[tm.i].apply(outer));
      }
      if (res.is_zero()) return std::nullopt;
      return Witness{"n=" + std::to_string(n) + " " + tuple_string(slots, t), to_string(B, res)};
    }));
  }
  return total;
}

MultiOp MorphismFamily::map(int k) const {
  if (k >= 1 && k <= static_cast<int>(maps.size())) return maps[k - 1];
  return op_zero(k, 0);
}

MorphismFamily identity_family(const BracketFamily& fam) {
  MorphismFamily m{fam, fam, {op_morphism(identity_morphism(fam.carrier))}, true};
  for (int k = 2; k <= fam.max_arity(); ++k) m.maps.push_back(op_zero(k, 0));
  return m;
}

MorphismFamily kapranov_morphism(const ModuleMorphism& phi, const Connection& nabla, const Connection& nabla2, int N) {
  return kapranov_morphism(phi, nabla, nabla2, kapranov_brackets(nabla, N), kapranov_brackets(nabla2, N));
}

MorphismFamily kapranov_morphism(const ModuleMorphism& phi, const Connection& nabla, const Connection& nabla2,
                                 const BracketFamily& source, const BracketFamily& target) {
  if (phi.degree != 0) throw std::invalid_argument("kapranov_morphism: phi must have degree 0");
  if (phi.source != nabla2.twist.target || phi.target != nabla.twist.target)
    throw std::invalid_argument("kapranov_morphism: phi must map the second derivation target to the first");
  if (source.carrier != nabla.module || target.carrier != nabla2.module)
    throw std::invalid_argument("kapranov_morphism: bracket families do not match the connections");
  Report r = check_derivation_morphism(phi, nabla2.twist, nabla.twist);
  if (!r.passed()) throw std::invalid_argument("kapranov_morphism: phi is not a derivation morphism");
  const ModulePtr& B = nabla.module;
  const ModulePtr& B2 = nabla2.module;
  const int N = std::min(source.max_arity(), target.max_arity());
  const ModuleMorphism f1 = dual_morphism(phi, B, B2);
  MorphismFamily m{source, target, {op_morphism(f1)}, true};
  for (int k = 1; k < N; ++k) {
    const AMultilinear& prev = *m.maps.back().table;
    const std::vector<const Connection*> slots(k, &nabla);
    AMultilinear next = fill_table(k + 1, 0, std::vector<ModulePtr>(k + 1, B), B2, [&](const std::vector<int>& t) {
      ModuleElement b0 = ModuleElement::basis(t[0]);
      std::vector<int> rest(t.begin() + 1, t.end());
      ModuleElement v = covariant_derivative(nabla2, f1.images[t[0]], prev.at(rest));
      v -= apply_table(prev, covariant_tensor_derivative(slots, b0, basis_tensor(rest)));
      return v;
    });
    m.maps.push_back(op_from_table(std::move(next)));
  }
  return m;
}

Report check_linfty_morphism(const MorphismFamily& m, int n_max) {
  Report total("linfty_morphism");
  const DgModule& S = *m.source.carrier;
  const DgModule& T = *m.target.carrier;
  struct Term {
    int k, p;
    std::vector<int> sigma;
  };
  std::vector<MultiOp> lam(n_max + 1), lam2(n_max + 1), f(n_max + 1);
  for (int a = 1; a <= n_max; ++a) {
    lam[a] = m.source.bracket(a);
    lam2[a] = m.target.bracket(a);
    f[a] = m.map(a);
  }
  for (int n = 1; n <= n_max; ++n) {
    std::vector<Term> terms;
    for (int k = 0; k < n; ++k)
      for (int p = 0; k + p <= n - 1; ++p)
        for (auto& sigma : shuffles(k, p)) terms.push_back({k, p, std::move(sigma)});
    const auto parts = partition_table(n);
    const std::vector<const DgModule*> slots(n, &S);
    const auto tuples = key_tuples(slots);
    total.absorb(run_cases("", tuples.size(), [&](size_t c) -> std::optional<Witness> {
      const auto& t = tuples[c];
      const std::vector<int> degs = key_degrees(S, t);
      const std::vector<ModuleElement> v = key_elements(t);
      ModuleElement res;
      for (const Term& tm : terms) {
        std::vector<ModuleElement> inner;
        for (int q = tm.k; q < tm.k + tm.p; ++q) inner.push_back(v[tm.sigma[q]]);
        inner.push_back(v[tm.k + tm.p]);
        ModuleElement x = lam[tm.p + 1].apply(inner);
        if (x.is_zero()) continue;
        int s = koszul_sign(tm.sigma, std::vector<int>(degs.begin(), degs.begin() + (tm.k + tm.p)));
        long dag = 0;
        for (int q = 0; q < tm.k; ++q) dag += degs[tm.sigma[q]];
        s *= parity_sign(dag);
        std::vector<ModuleElement> outer;
        for (int q = 0; q < tm.k; ++q) outer.push_back(v[tm.sigma[q]]);
        outer.push_back(std::move(x));
        for (int q = tm.k + tm.p + 1; q < n; ++q) outer.push_back(v[q]);
        res += signed_element(s, f[n - tm.p].apply(outer));
      }
      res -= partition_sum(
          v, degs, parts, 1, n, [&](int q, const std::vector<ModuleElement>& xs) { return lam2[q].apply(xs); },
          [&](const std::vector<ModuleElement>& args) { return f[args.size()].apply(args); });
      if (res.is_zero()) return std::nullopt;
      return Witness{"n=" + std::to_string(n) + " " + tuple_string(slots, t), to_string(T, res)};
    }));
  }
  return total;
}

MorphismFamily compose_families(const MorphismFamily& g, const MorphismFamily& f) {
  if (f.target.carrier != g.source.carrier)
    throw std::invalid_argument("compose_families: target of the first family is not the source of the second");
  if (!f.a_multilinear || !g.a_multilinear)
    throw std::invalid_argument("compose_families: both families must be A-multilinear");
  const int N = std::min(static_cast<int>(f.maps.size()), static_cast<int>(g.maps.size()));
  const ModulePtr& S = f.source.carrier;
  MorphismFamily out{f.source, g.target, {}, true};
  for (int n = 1; n <= N; ++n) {
    const auto parts = partition_table(n);
    AMultilinear table =
        fill_table(n, 0, std::vector<ModulePtr>(n, S), g.target.carrier, [&](const std::vector<int>& t) {
          std::vector<int> degs;
          for (int i : t) degs.push_back(S->degree(i));
          return partition_sum(
              basis_elements(t), degs, parts, 1, n,
              [&](int q, const std::vector<ModuleElement>& xs) { return g.map(q).apply(xs); },
              [&](const std::vector<ModuleElement>& args) { return f.map(static_cast<int>(args.size())).apply(args); });
        });
    out.maps.push_back(op_from_table(std::move(table)));
  }
  return out;
}

MorphismFamily trivialization(const Connection& nabla, int N) {
  BracketFamily target = kapranov_brackets(nabla, N);
  MorphismFamily m{trivial_family(nabla.module, N), target, {op_morphism(identity_morphism(nabla.module))}, false};
  auto c = std::make_shared<const Connection>(nabla);
  for (int k = 2; k <= N; ++k) {
    std::function<ModuleElement(const std::vector<ModuleElement>&)> prev = m.maps.back().apply;
    m.maps.push_back(MultiOp{k, 0,
                             [c, prev](const std::vector<ModuleElement>& args) {
                               std::vector<ModuleElement> rest(args.begin() + 1, args.end());
                               return covariant_derivative(*c, args[0], prev(rest));
                             },
                             nullptr});
  }
  return m;
}

HomotopyIso homotopy_iso(const Derivation& delta, const Derivation& delta2, const Derivation& h,
                         const Connection& nabla, const Connection& hat, int N) {
  if (N < 1) throw std::invalid_argument("homotopy_iso: N must be at least 1");
  if (!same_values(homotopy_offset(delta, h), delta2))
    throw std::invalid_argument("homotopy_iso: delta + [d, h] differs from delta2");
  if (!same_values(nabla.twist, delta)) throw std::invalid_argument("homotopy_iso: nabla is not a delta-connection");
  if (hat.degree() != -1 || !same_values(hat.twist, h))
    throw std::invalid_argument("homotopy_iso: hat does not satisfy the h-Leibniz rule");
  if (hat.module != nabla.module) throw std::invalid_argument("homotopy_iso: connections live on different modules");
  const ModulePtr& B = nabla.module;
  std::vector<ModuleElement> values;
  for (size_t i = 0; i < B->rank(); ++i) {
    ModuleElement v = nabla.values[i];
    v += apply_module_differential(*nabla.omega_module, hat.values[i]);
    v += extend_connection(hat, B->boundary[i]);
    values.push_back(std::move(v));
  }
  Connection prime = make_connection(delta2, B, std::move(values));
  for (const auto& k : k_basis(*B)) {
    ModuleElement e = key_element(k);
    ModuleElement expect = extend_connection(nabla, e);
    expect += apply_module_differential(*nabla.omega_module, extend_connection(hat, e));
    expect += extend_connection(hat, apply_module_differential(*B, e));
    if (!(extend_connection(prime, e) == expect))
      throw std::logic_error("homotopy_iso: nabla + [d, hat] is not a connection at " + key_to_string(*B, k));
  }
  BracketFamily target = kapranov_brackets(nabla, N);
  BracketFamily source = kapranov_brackets(prime, N);
  if (N >= 2 && !tables_equal(*source.brackets[1].table, *target.brackets[1].table))
    throw std::logic_error("homotopy_iso: R_2 changed under nabla + [d, hat]");
  MorphismFamily m{source, target, {op_morphism(identity_morphism(B))}, true};
  for (int k = 1; k < N; ++k) {
    const auto parts = partition_table(k);
    const std::vector<const Connection*> slots(k, &prime);
    AMultilinear next = fill_table(k + 1, 0, std::vector<ModulePtr>(k + 1, B), B, [&](const std::vector<int>& t) {
      ModuleElement b0 = ModuleElement::basis(t[0]);
      const long d0 = B->degree(t[0]);
      std::vector<int> rest(t.begin() + 1, t.end());
      std::vector<int> degs;
      for (int i : rest) degs.push_back(B->degree(i));
      ModuleElement comm = partition_sum(
          basis_elements(rest), degs, parts, 2, k,
          [&](int q, const std::vector<ModuleElement>& xs) {
            const AMultilinear& R = *target.brackets[q - 1].table;
            ModuleElement v = covariant_derivative(hat, b0, apply_table(R, xs));
            const std::vector<const Connection*> hs(q, &hat);
            v -= apply_table(R, covariant_tensor_derivative(hs, b0, make_tensor(R.slots(), xs)))
                     .scaled(parity_sign(d0 - 1));
            return v;
          },
          [&](const std::vector<ModuleElement>& args) { return m.map(static_cast<int>(args.size())).apply(args); });
      ModuleElement v = comm.scaled(parity_sign(d0));
      const AMultilinear& gk = *m.maps[k - 1].table;
      v += covariant_derivative(prime, b0, gk.at(rest));
      v -= apply_table(gk, covariant_tensor_derivative(slots, b0, basis_tensor(rest)));
      return v;
    });
    m.maps.push_back(op_from_table(std::move(next)));
  }
  return HomotopyIso{std::move(prime), std::move(m)};
}

MultiOp ModuleActionFamily::action(int k) const {
  if (k >= 1 && k <= static_cast<int>(actions.size())) return actions[k - 1];
  return op_zero(k, 1);
}

ModuleActionFamily kapranov_module(const Connection& nabla, const Connection& nabla_e, int N, int check_arity) {
  return kapranov_module(kapranov_brackets(nabla, N), nabla, nabla_e, N, check_arity);
}

ModuleActionFamily kapranov_module(const BracketFamily& algebra, const Connection& nabla, const Connection& nabla_e,
                                   int N, int check_arity) {
  if (N < 1) throw std::invalid_argument("kapranov_module: N must be at least 1");
  if (!same_values(nabla.twist, nabla_e.twist) || nabla.twist.target != nabla_e.twist.target)
    throw std::invalid_argument("kapranov_module: connections use different derivations");
  if (algebra.carrier != nabla.module) throw std::invalid_argument("kapranov_module: bracket family does not match");
  const ModulePtr& B = nabla.module;
  const ModulePtr& E = nabla_e.module;
  ModuleActionFamily m{algebra, E, {op_differential(E)}};
  if (N >= 2) m.actions.push_back(op_from_table(atiyah_cocycle(nabla_e, B).bilinear));
  for (int k = 2; k < N; ++k) {
    const AMultilinear& prev = *m.actions.back().table;
    std::vector<const Connection*> slots(k - 1, &nabla);
    slots.push_back(&nabla_e);
    std::vector<ModulePtr> inputs(k, B);
    inputs.push_back(E);
    AMultilinear next = fill_table(k + 1, 1, inputs, E, [&](const std::vector<int>& t) {
      ModuleElement b0 = ModuleElement::basis(t[0]);
      std::vector<int> rest(t.begin() + 1, t.end());
      ModuleElement v = covariant_derivative(nabla_e, b0, prev.at(rest)).scaled(parity_sign(B->degree(t[0])));
      v -= apply_table(prev, covariant_tensor_derivative(slots, b0, basis_tensor(rest)));
      return v;
    });
    m.actions.push_back(op_from_table(std::move(next)));
  }
  if (check_arity > 0) {
    Report r = check_module_identities(m, check_arity);
    if (!r.passed())
      throw std::logic_error("kapranov_module: module identity fails at " + r.witnesses.front().location + ": " +
                             r.witnesses.front().value);
  }
  return m;
}

Report check_module_identities(const ModuleActionFamily& m, int n_max) {
  Report total("module_identities");
  const DgModule& B = *m.algebra.carrier;
  const DgModule& E = *m.carrier;
  struct Term {
    bool inner_bracket;  // lambda_j inside mu_i, otherwise mu_j inside mu_i
    int i, j, k;
    std::vector<int> sigma;
  };
  std::vector<MultiOp> lam(n_max + 1), mu(n_max + 1);
  for (int a = 1; a <= n_max; ++a) {
    lam[a] = m.algebra.bracket(a);
    mu[a] = m.action(a);
  }
  for (int n = 1; n <= n_max; ++n) {
    std::vector<Term> terms;
    for (int j = 1; j <= n - 1; ++j)
      for (int k = j; k <= n - 1; ++k)
        for (auto& sigma : shuffles(k - j, j - 1)) terms.push_back({true, n + 1 - j, j, k, std::move(sigma)});
    for (int j = 1; j <= n; ++j)
      for (auto& sigma : shuffles(n - j, j - 1)) terms.push_back({false, n - j + 1, j, n, std::move(sigma)});
    std::vector<const DgModule*> slots(n - 1, &B);
    slots.push_back(&E);
    const auto tuples = key_tuples(slots);
    total.absorb(run_cases("", tuples.size(), [&](size_t c) -> std::optional<Witness> {
      const auto& t = tuples[c];
      const std::vector<int> degs = key_degrees(slots, t);
      const std::vector<ModuleElement> v = key_elements(t);
      ModuleElement res;
      for (const Term& tm : terms) {
        const int p = tm.inner_bracket ? tm.k - tm.j : n - tm.j;
        const int last = tm.inner_bracket ? tm.k - 1 : n - 1;  // the argument closing the inner operation
        std::vector<ModuleElement> inner;
        for (int q = p; q < last; ++q) inner.push_back(v[tm.sigma[q]]);
        inner.push_back(v[last]);
        ModuleElement x = tm.inner_bracket ? lam[tm.j].apply(inner) : mu[tm.j].apply(inner);
        if (x.is_zero()) continue;
        int s = koszul_sign(tm.sigma, std::vector<int>(degs.begin(), degs.begin() + last));
        long dag = 0;
        for (int q = 0; q < p; ++q) dag += degs[tm.sigma[q]];
        s *= parity_sign(dag);
        std::vector<ModuleElement> outer;
        for (int q = 0; q < p; ++q) outer.push_back(v[tm.sigma[q]]);
        outer.push_back(std::move(x));
        for (int q = last + 1; q < n; ++q) outer.push_back(v[q]);
        res += signed_element(s, mu[tm.i].apply(outer));
      }
      if (res.is_zero()) return std::nullopt;
      return Witness{"n=" + std::to_string(n) + " " + tuple_string(slots, t), to_string(E, res)};
    }));
  }
  return total;
}

CohomologyClasses cohomology_classes(const ModulePtr& M, int shift) {
  CohomologyClasses H{M, shift, {}, {}};
  std::vector<BasisEntry> entries;
  const auto keys = k_basis(*M);
  if (keys.empty()) return H;
  int lo = key_degree(*M, keys.front()), hi = lo;
  for (const auto& k : keys) {
    lo = std::min(lo, key_degree(*M, k));
    hi = std::max(hi, key_degree(*M, k));
  }
  for (int d = lo; d <= hi; ++d)
    for (auto& rep : cohomology_basis(*M, d)) {
      entries.push_back({"[" + to_string(*M, rep) + "]", d + shift});
      H.reps.push_back(std::move(rep));
    }
  H.basis = GradedBasis(std::move(entries));
  return H;
}

std::optional<Element> class_coordinates(const CohomologyClasses& H, const ModuleElement& z) {
  const DgModule& M = *H.module;
  if (!is_closed(M, z)) return std::nullopt;
  std::map<int, ModuleElement> parts;
  for (const auto& [k, c] : z.terms) parts[key_degree(M, k)].add(k.first, k.second, c);
  Element out;
  for (const auto& [d, zd] : parts) {
    Slice s = degree_slice(M, d);
    std::vector<Vector> cols;
    std::vector<size_t> which;
    for (size_t r = 0; r < H.reps.size(); ++r)
      if (H.basis.degree(r) - H.shift == d) {
        cols.push_back(to_vector(s, H.reps[r]));
        which.push_back(r);
      }
    Matrix dprev = differential_matrix(M, d - 1);
    for (size_t j = 0; j < dprev.cols; ++j) cols.push_back(dprev.column(j));
    auto x = solve(Matrix::from_columns(cols, s.keys.size()), to_vector(s, zd));
    if (!x) throw std::logic_error("class_coordinates: representatives do not span the cohomology");
    for (size_t r = 0; r < which.size(); ++r) out.add(static_cast<int>(which[r]), (*x)[r]);
  }
  return out;
}

namespace {

// b |> e = (-1)^{|b|} At(b, e) on representatives, recorded as class coordinates.
MultilinearMap class_table(const CohomologyClasses& HB, const CohomologyClasses& HE, const AMultilinear& at,
                           Report& r) {
  MultilinearMap table{2, 0, {}};
  for (size_t i = 0; i < HB.reps.size(); ++i)
    for (size_t j = 0; j < HE.reps.size(); ++j) {
      ++r.cases;
      const int sign = parity_sign(HB.basis.degree(i) - HB.shift);
      ModuleElement v = apply_table(at, {HB.reps[i], HE.reps[j]}).scaled(sign);
      auto coords = class_coordinates(HE, v);
      const std::string where = "(" + HB.basis.name(i) + "," + HE.basis.name(j) + ")";
      if (!coords) {
        r.fail(where + " closed", to_string(*HE.module, v));
        continue;
      }
      if (!coords->is_zero()) table.table[{static_cast<int>(i), static_cast<int>(j)}] = *coords;
    }
  return table;
}

Element unit(int i) {
  Element e;
  e.add(i, 1);
  return e;
}

}  // namespace

CohomologyBracket cohomology_leibniz_bracket(const Connection& nabla) {
  dual_check(nabla);
  CohomologyBracket out;
  out.classes = cohomology_classes(nabla.module, 1);
  out.report = Report("cohomology_bracket");
  const AtiyahCocycle at = atiyah_cocycle(nabla, nabla.module);
  out.bracket = class_table(out.classes, out.classes, at.bilinear, out.report);
  const GradedBasis& H = out.classes.basis;
  const int n = static_cast<int>(H.size());
  auto br = [&](const Element& x, const Element& y) { return eval_multilinear(out.bracket, {x, y}); };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        ++out.report.cases;
        Element lhs = br(unit(x), br(unit(y), unit(z)));
        Element rhs = br(br(unit(x), unit(y)), unit(z));
        rhs += br(unit(y), br(unit(x), unit(z))).scaled(parity_sign(static_cast<long>(H.degree(x)) * H.degree(y)));
        if (!(lhs == rhs)) {
          Element diff = lhs;
          diff += rhs.scaled(-1);
          std::string value;
          for (const auto& [i, c] : diff.coeffs) value += (value.empty() ? "" : " + ") + to_string(c) + H.name(i);
          out.report.fail("leibniz (" + H.name(x) + "," + H.name(y) + "," + H.name(z) + ")", value);
        }
      }
  return out;
}

Report check_skew_symmetry(const CohomologyBracket& b) {
  Report r("skew_symmetry");
  const GradedBasis& H = b.classes.basis;
  for (size_t x = 0; x < H.size(); ++x)
    for (size_t y = 0; y < H.size(); ++y) {
      ++r.cases;
      Element s = eval_multilinear(b.bracket, {unit(x), unit(y)});
      s += eval_multilinear(b.bracket, {unit(y), unit(x)})
               .scaled(parity_sign(static_cast<long>(H.degree(x)) * H.degree(y)));
      if (s.is_zero()) continue;
      std::string value;
      for (const auto& [i, c] : s.coeffs) value += (value.empty() ? "" : " + ") + to_string(c) + H.name(i);
      r.fail("(" + H.name(x) + "," + H.name(y) + ")", value);
    }
  return r;
}

CohomologyAction cohomology_action(const Connection& nabla, const Connection& nabla_e) {
  dual_check(nabla);
  if (nabla.twist.target != nabla_e.twist.target)
    throw std::invalid_argument("cohomology_action: connections use different derivation targets");
  CohomologyAction out;
  out.algebra = cohomology_classes(nabla.module, 1);
  out.module = cohomology_classes(nabla_e.module, 0);
  out.report = Report("cohomology_action");
  const AtiyahCocycle at = atiyah_cocycle(nabla_e, nabla.module);
  out.action = class_table(out.algebra, out.module, at.bilinear, out.report);
  return out;
}

Report check_action_naturality(const Connection& nabla, const Connection& nabla_e, const Connection& nabla_f,
                               const ModuleMorphism& lambda) {
  if (lambda.degree != 0 || lambda.source != nabla_e.module || lambda.target != nabla_f.module)
    throw std::invalid_argument("check_action_naturality: lambda must be a degree 0 map between the two modules");
  if (!is_dg_morphism(lambda)) throw std::invalid_argument("check_action_naturality: lambda is not a dg morphism");
  Report r("action_naturality");
  const CohomologyClasses HB = cohomology_classes(nabla.module, 1);
  const CohomologyClasses HE = cohomology_classes(nabla_e.module, 0);
  const AtiyahCocycle ate = atiyah_cocycle(nabla_e, nabla.module);
  const AtiyahCocycle atf = atiyah_cocycle(nabla_f, nabla.module);
  const DgModule& F = *nabla_f.module;
  for (size_t i = 0; i < HB.reps.size(); ++i)
    for (size_t j = 0; j < HE.reps.size(); ++j) {
      ++r.cases;
      const int sign = parity_sign(HB.basis.degree(i) - HB.shift);
      ModuleElement lhs = apply_table(atf.bilinear, {HB.reps[i], apply_morphism(lambda, HE.reps[j])}).scaled(sign);
      ModuleElement rhs = apply_morphism(lambda, apply_table(ate.bilinear, {HB.reps[i], HE.reps[j]}).scaled(sign));
      if (!is_closed(F, lhs) || !is_closed(F, rhs) || !classes_equal(F, lhs, rhs))
        r.fail("(" + HB.basis.name(i) + "," + HE.basis.name(j) + ")", to_string(F, lhs - rhs));
    }
  return r;
}

}  // namespace kap
