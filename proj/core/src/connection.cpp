#include "kapranov/connection.hpp"

#include <stdexcept>

namespace kap {

Connection make_connection(const Derivation& twist, const ModulePtr& E, std::vector<ModuleElement> values) {
  if (twist.algebra != E->algebra) throw std::invalid_argument("make_connection: algebra mismatch");
  if (values.empty()) values.resize(E->rank());
  if (values.size() != E->rank()) throw std::invalid_argument("make_connection: one value per basis element is required");
  auto omega_e = std::make_shared<const DgModule>(tensor_module(*twist.target, *E));
  return Connection{twist, E, std::move(omega_e), std::move(values)};
}

ModuleElement extend_connection(const Connection& c, const ModuleElement& v) {
  const DgModule& omega = c.omega();
  const DgModule& E = *c.module;
  ModuleElement out;
  for (const auto& [k, coeff] : v.terms) {
    ModuleElement ek = ModuleElement::basis(k.first);
    if (k.second != 0) {
      ModuleElement da = extend_derivation(c.twist, AlgebraElement::monomial(k.second, coeff));
      out += tensor_elements(omega, E, da, ek);
    }
    Scalar s = coeff * parity_sign(static_cast<long>(c.degree()) * mono_degree(k.second));
    out += left_multiply(AlgebraElement::monomial(k.second, s), c.values[k.first]);
  }
  return out;
}

ModuleElement covariant_derivative(const Connection& c, const ModuleElement& b, const ModuleElement& v) {
  return contract(c.omega(), *c.module, b, extend_connection(c, v));
}

ModuleElement hom_from_values(const DgModule& E, const DgModule& target, const std::vector<ModuleElement>& values) {
  ModuleElement h;
  const int tr = static_cast<int>(target.rank());
  for (size_t k = 0; k < E.rank(); ++k)
    for (const auto& [key, c] : values[k].terms) h.add(static_cast<int>(k) * tr + key.first, key.second, c);
  return h;
}

ModuleElement to_omega_end(const DgModule& omega, const DgModule& E, const ModuleElement& h) {
  const int er = static_cast<int>(E.rank());
  const int wr = static_cast<int>(omega.rank()) * er;
  ModuleElement out;
  for (const auto& [key, c] : h.terms) {
    const int k = key.first / wr;
    const int p = (key.first % wr) / er;
    const int q = key.first % er;
    out.add(p * er * er + k * er + q, key.second, c);
  }
  return out;
}

namespace {

std::vector<ModuleElement> atiyah_values(const Connection& c) {
  std::vector<ModuleElement> vals;
  for (size_t k = 0; k < c.module->rank(); ++k) {
    ModuleElement v = extend_connection(c, c.module->boundary[k]);
    v -= apply_module_differential(*c.omega_module, c.values[k]);
    vals.push_back(std::move(v));
  }
  return vals;
}

void require_dual(const DgModule& omega, const DgModule& B) {
  if (omega.rank() != B.rank() || omega.algebra != B.algebra)
    throw std::invalid_argument("covector module does not match the dual of the derivation target");
  for (size_t i = 0; i < omega.rank(); ++i)
    if (omega.degree(i) != -B.degree(i)) throw std::invalid_argument("covector module degrees do not match the dual");
}

}  // namespace

AtiyahCocycle atiyah_cocycle(const Connection& c, const ModulePtr& B) {
  const DgModule& omega = c.omega();
  const DgModule& E = *c.module;
  require_dual(omega, *B);
  if (c.degree() != 0) throw std::invalid_argument("atiyah_cocycle: connection must be a delta-connection");
  AtiyahCocycle at;
  at.hom_module = std::make_shared<const DgModule>(hom_module(E, *c.omega_module));
  at.omega_end = std::make_shared<const DgModule>(tensor_module(omega, end_module(E)));
  std::vector<ModuleElement> vals = atiyah_values(c);
  at.operator_form = hom_from_values(E, *c.omega_module, vals);
  at.element = to_omega_end(omega, E, at.operator_form);
  if (!is_closed(*at.hom_module, at.operator_form) || !is_closed(*at.omega_end, at.element))
    throw std::logic_error("atiyah_cocycle: cocycle is not closed");
  at.bilinear = AMultilinear{2, 1, {B, c.module}, c.module, {}};
  for (size_t b = 0; b < B->rank(); ++b)
    for (size_t e = 0; e < E.rank(); ++e) {
      ModuleElement v = contract(omega, E, ModuleElement::basis(static_cast<int>(b)), vals[e]);
      v = v.scaled(parity_sign(B->degree(b)));
      if (!v.is_zero()) at.bilinear.table[{static_cast<int>(b), static_cast<int>(e)}] = std::move(v);
    }
  return at;
}

Report check_atiyah_formula(const Connection& c, const ModulePtr& B, const AtiyahCocycle& at) {
  Report r("atiyah_formula");
  const DgModule& E = *c.module;
  for (const auto& t : key_tuples({B.get(), c.module.get()})) {
    ++r.cases;
    ModuleElement b;
    b.add(t[0].first, t[0].second, 1);
    ModuleElement e;
    e.add(t[1].first, t[1].second, 1);
    const int bdeg = key_degree(*B, t[0]);
    ModuleElement table = apply_table(at.bilinear, {b, e});
    ModuleElement atop = extend_connection(c, apply_module_differential(E, e));
    atop -= apply_module_differential(*c.omega_module, extend_connection(c, e));
    ModuleElement direct = contract(c.omega(), E, b, atop).scaled(parity_sign(bdeg));
    ModuleElement formula = covariant_derivative(c, apply_module_differential(*B, b), e);
    formula -= apply_module_differential(E, covariant_derivative(c, b, e));
    formula += covariant_derivative(c, b, apply_module_differential(E, e)).scaled(parity_sign(bdeg));
    const std::string where = "(" + key_to_string(*B, t[0]) + "," + key_to_string(E, t[1]) + ")";
    if (!(table == direct)) r.fail(where + " table", to_string(E, table - direct));
    if (!(formula == direct)) r.fail(where + " formula", to_string(E, formula - direct));
  }
  return r;
}

AtiyahClass atiyah_class(const Derivation& delta, const ModulePtr& E, const ModulePtr& B) {
  Connection c = make_connection(delta, E);
  AtiyahCocycle at = atiyah_cocycle(c, B);
  bool vanishes = is_coboundary(*at.hom_module, at.operator_form).has_value();
  return AtiyahClass{std::move(c), std::move(at), vanishes};
}

ModuleElement connection_difference(const Connection& c1, const Connection& c2) {
  std::vector<ModuleElement> diff;
  for (size_t k = 0; k < c1.values.size(); ++k) diff.push_back(c2.values[k] - c1.values[k]);
  return hom_from_values(*c1.module, *c1.omega_module, diff);
}

Report check_connection_change(const Connection& c1, const Connection& c2, const ModulePtr& B) {
  Report r("connection_change");
  const DgModule& E = *c1.module;
  for (const auto& k : k_basis(E)) {
    ++r.cases;
    ModuleElement v;
    v.add(k.first, k.second, 1);
    ModuleElement lhs = extend_connection(c2, v) - extend_connection(c1, v);
    ModuleElement rhs = left_multiply(AlgebraElement::monomial(k.second), c2.values[k.first] - c1.values[k.first]);
    if (!(lhs == rhs)) r.fail("A-linearity at " + key_to_string(E, k), to_string(*c1.omega_module, lhs - rhs));
  }
  AtiyahCocycle a1 = atiyah_cocycle(c1, B);
  AtiyahCocycle a2 = atiyah_cocycle(c2, B);
  ModuleElement theta = connection_difference(c1, c2);
  ModuleElement expected = -apply_module_differential(*a1.hom_module, theta);
  ++r.cases;
  ModuleElement got = a2.operator_form - a1.operator_form;
  if (!(got == expected)) r.fail("cocycle difference", to_string(*a1.hom_module, got - expected));
  return r;
}

std::optional<Connection> flat_connection_exists(const Derivation& delta, const ModulePtr& E, const ModulePtr& B) {
  Connection c = make_connection(delta, E);
  AtiyahCocycle at = atiyah_cocycle(c, B);
  auto theta = is_coboundary(*at.hom_module, at.operator_form);
  if (!theta) return std::nullopt;
  std::vector<ModuleElement> values;
  for (size_t k = 0; k < E->rank(); ++k)
    values.push_back(c.values[k] + apply_hom(*E, *c.omega_module, *theta, ModuleElement::basis(static_cast<int>(k))));
  Connection flat = make_connection(delta, E, std::move(values));
  if (!atiyah_cocycle(flat, B).operator_form.is_zero())
    throw std::logic_error("flat_connection_exists: corrected connection is not flat");
  return flat;
}

namespace {

// (phi (x) lambda)(a omega (x) e) = (-1)^{r(|a|+|omega|)} a phi(omega) (x) lambda(e).
ModuleElement apply_tensor_map(const DgModule& omega, const DgModule& E, const ModuleMorphism* phi,
                               const ModuleMorphism& lambda, const DgModule& omega2, const ModuleElement& w) {
  const int er = static_cast<int>(E.rank());
  ModuleElement out;
  for (const auto& [k, c] : w.terms) {
    const int p = k.first / er;
    const int q = k.first % er;
    ModuleElement wp = ModuleElement::basis(p);
    ModuleElement img = phi ? apply_morphism(*phi, wp) : wp;
    ModuleElement t = tensor_elements(omega2, *lambda.target, img, lambda.images[q]);
    long e = static_cast<long>(lambda.degree) * (mono_degree(k.second) + omega.degree(p));
    out += left_multiply(AlgebraElement::monomial(k.second, c * parity_sign(e)), t);
  }
  return out;
}

}  // namespace

NaturalityResult check_naturality(const ModuleMorphism& lambda, const Connection& nabla_e, const Connection& nabla_f,
                                  const ModuleMorphism* phi) {
  NaturalityResult res;
  res.report = Report("naturality");
  const DgModule& E = *nabla_e.module;
  const DgModule& omega = nabla_e.omega();
  const DgModule& omega2 = nabla_f.omega();
  const int r = lambda.degree;
  if (!is_dg_morphism(lambda)) res.report.fail("lambda", "not a dg morphism");
  if (phi && !is_dg_morphism(*phi)) res.report.fail("phi", "not a dg morphism");
  auto hom = hom_module(E, *nabla_f.omega_module);
  std::vector<ModuleElement> dvals;
  std::vector<ModuleElement> tvals;
  std::vector<ModuleElement> at_e = atiyah_values(nabla_e);
  for (size_t k = 0; k < E.rank(); ++k) {
    ModuleElement lam = lambda.images[k];
    ModuleElement at_f = extend_connection(nabla_f, apply_module_differential(*nabla_f.module, lam));
    at_f -= apply_module_differential(*nabla_f.omega_module, extend_connection(nabla_f, lam));
    ModuleElement d = apply_tensor_map(omega, E, phi, lambda, omega2, at_e[k]);
    d -= at_f.scaled(parity_sign(r));
    dvals.push_back(std::move(d));
    ModuleElement t = apply_tensor_map(omega, E, phi, lambda, omega2, nabla_e.values[k]);
    t -= extend_connection(nabla_f, lam);
    tvals.push_back(std::move(t));
  }
  res.defect = hom_from_values(E, *nabla_f.omega_module, dvals);
  res.primitive = hom_from_values(E, *nabla_f.omega_module, tvals).scaled(-parity_sign(r));
  ++res.report.cases;
  ModuleElement dprim = apply_module_differential(hom, res.primitive);
  if (!(dprim == res.defect)) res.report.fail("explicit primitive", to_string(hom, dprim - res.defect));
  ++res.report.cases;
  if (!is_closed(hom, res.defect) || !is_coboundary(hom, res.defect))
    res.report.fail("defect", "not a coboundary: " + to_string(hom, res.defect));
  return res;
}

}  // namespace kap
