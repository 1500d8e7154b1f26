#include "kapranov/derivation.hpp"

#include "kapranov/cohomology.hpp"

#include <stdexcept>

namespace kap {

Derivation zero_derivation(CdgaPtr A, ModulePtr target, int degree) {
  const size_t n = A->rank();
  return Derivation{std::move(A), std::move(target), degree, std::vector<ModuleElement>(n)};
}

namespace {

ModuleElement extend_mono(const Derivation& d, Mono m) {
  if (m == 0) return {};
  const int first = __builtin_ctz(m);
  const Mono rest = m & (m - 1);
  ModuleElement out = right_multiply(*d.target, d.values[first], AlgebraElement::monomial(rest));
  if (rest != 0) {
    ModuleElement tail = left_multiply(AlgebraElement::generator(first), extend_mono(d, rest));
    out += tail.scaled(parity_sign(d.degree));
  }
  return out;
}

}  // namespace

ModuleElement extend_derivation(const Derivation& d, const AlgebraElement& a) {
  ModuleElement out;
  for (const auto& [m, c] : a.terms) out += extend_mono(d, m).scaled(c);
  return out;
}

Report validate_dg_derivation(const Derivation& d) {
  Report r("derivation_compatibility");
  const CdgaPresentation& A = *d.algebra;
  for (size_t i = 0; i < A.rank(); ++i) {
    ++r.cases;
    const std::string name = A.generators.name(i);
    for (const auto& [k, c] : d.values[i].terms)
      if (key_degree(*d.target, k) != 1 + d.degree) {
        r.fail("degree(" + name + ")", to_string(*d.target, d.values[i]));
        break;
      }
    if (d.degree != 0) continue;
    ModuleElement lhs = extend_derivation(d, A.diff[i]);
    ModuleElement rhs = apply_module_differential(*d.target, d.values[i]);
    if (!(lhs == rhs)) r.fail(name, to_string(*d.target, lhs - rhs));
  }
  return r;
}

KaehlerData kaehler_differentials(const CdgaPtr& A) {
  std::vector<BasisEntry> entries;
  for (const auto& g : A->generators.entries()) entries.push_back({"d" + g.name, 1});
  auto bare = std::make_shared<DgModule>(make_module(A, entries, {}));
  Derivation d{A, bare, 0, {}};
  for (size_t i = 0; i < A->rank(); ++i) d.values.push_back(ModuleElement::basis(static_cast<int>(i)));
  std::vector<ModuleElement> boundary;
  for (size_t i = 0; i < A->rank(); ++i) boundary.push_back(extend_derivation(d, A->diff[i]));
  auto module = std::make_shared<const DgModule>(make_module(A, entries, std::move(boundary)));
  d.target = module;
  return {module, std::move(d)};
}

DerivationMorphism universal_factorization(const Derivation& delta, const KaehlerData& kaehler) {
  if (delta.algebra != kaehler.d.algebra) throw std::invalid_argument("universal_factorization: algebra mismatch");
  DerivationMorphism out{ModuleMorphism{kaehler.module, delta.target, 0, delta.values}, false};
  out.dg = is_dg_morphism(out.phi);
  if (!out.dg) throw std::logic_error("universal_factorization: induced map is not a dg morphism");
  return out;
}

Derivation push_forward(const ModuleMorphism& phi, const Derivation& delta) {
  Derivation out{delta.algebra, phi.target, delta.degree + phi.degree, {}};
  for (const auto& v : delta.values) out.values.push_back(apply_morphism(phi, v));
  return out;
}

Report check_derivation_morphism(const ModuleMorphism& phi, const Derivation& delta, const Derivation& delta2) {
  Report r = validate_morphism(phi);
  r.check = "derivation_morphism";
  if (phi.degree != 0) r.fail("degree", std::to_string(phi.degree));
  Derivation pushed = push_forward(phi, delta);
  for (size_t i = 0; i < delta.values.size(); ++i) {
    ++r.cases;
    if (!(pushed.values[i] == delta2.values[i]))
      r.fail(delta.algebra->generators.name(i), to_string(*delta2.target, pushed.values[i] - delta2.values[i]));
  }
  return r;
}

Derivation homotopy_offset(const Derivation& delta, const Derivation& h) {
  if (h.degree != delta.degree - 1) throw std::invalid_argument("homotopy_offset: homotopy must have degree one less");
  if (h.target != delta.target) throw std::invalid_argument("homotopy_offset: target mismatch");
  Derivation out = delta;
  for (size_t i = 0; i < delta.values.size(); ++i) {
    out.values[i] += apply_module_differential(*delta.target, h.values[i]);
    out.values[i] += extend_derivation(h, delta.algebra->diff[i]);
  }
  return out;
}

std::optional<Derivation> find_homotopy(const Derivation& delta, const Derivation& delta2) {
  if (delta.target != delta2.target) throw std::invalid_argument("find_homotopy: derivations have different targets");
  const DgModule& omega = *delta.target;
  const size_t n = delta.algebra->rank();
  Slice unknown = degree_slice(omega, delta.degree);
  Slice image = degree_slice(omega, delta.degree + 1);
  const size_t m = image.keys.size();
  Matrix sys(n * m, n * unknown.keys.size());
  Vector rhs(n * m);
  for (size_t l = 0; l < n; ++l) {
    Vector diff = to_vector(image, delta2.values[l] - delta.values[l]);
    for (size_t r = 0; r < m; ++r) rhs[l * m + r] = diff[r];
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t u = 0; u < unknown.keys.size(); ++u) {
      Derivation h = zero_derivation(delta.algebra, delta.target, delta.degree - 1);
      h.values[i].add(unknown.keys[u].first, unknown.keys[u].second, 1);
      Derivation shifted = homotopy_offset(zero_derivation(delta.algebra, delta.target, delta.degree), h);
      const size_t col = i * unknown.keys.size() + u;
      for (size_t l = 0; l < n; ++l) {
        Vector v = to_vector(image, shifted.values[l]);
        for (size_t r = 0; r < m; ++r) sys(l * m + r, col) = v[r];
      }
    }
  auto x = solve(sys, rhs);
  if (!x) return std::nullopt;
  Derivation h = zero_derivation(delta.algebra, delta.target, delta.degree - 1);
  for (size_t i = 0; i < n; ++i)
    for (size_t u = 0; u < unknown.keys.size(); ++u) {
      const Scalar& c = (*x)[i * unknown.keys.size() + u];
      h.values[i].add(unknown.keys[u].first, unknown.keys[u].second, c);
    }
  return h;
}

bool same_values(const Derivation& a, const Derivation& b) { return a.values == b.values; }

}  // namespace kap
