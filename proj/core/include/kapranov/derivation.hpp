#pragma once

#include "kapranov/module.hpp"

#include <optional>

namespace kap {

// A derivation A -> target of the given degree, fixed by its generator values:
// phi(xi * rest) = phi(xi) * rest + (-1)^degree xi * phi(rest).
// Degree 0 gives dg derivations, degree -1 gives homotopies.
struct Derivation {
  CdgaPtr algebra;
  ModulePtr target;
  int degree = 0;
  std::vector<ModuleElement> values;
};

Derivation zero_derivation(CdgaPtr A, ModulePtr target, int degree = 0);

ModuleElement extend_derivation(const Derivation& d, const AlgebraElement& a);

// Degrees of the values and d(dA xi) = del(d xi) on generators.
Report validate_dg_derivation(const Derivation& d);

struct KaehlerData {
  ModulePtr module;
  Derivation d;
};

KaehlerData kaehler_differentials(const CdgaPtr& A);

struct DerivationMorphism {
  ModuleMorphism phi;
  bool dg = false;
};

// The A-linear map Omega^1 -> Omega with dxi -> delta(xi). Throws
// std::logic_error if it fails to be a dg morphism.
DerivationMorphism universal_factorization(const Derivation& delta, const KaehlerData& kaehler);

// phi o delta as a derivation into phi's target.
Derivation push_forward(const ModuleMorphism& phi, const Derivation& delta);

// phi dg, degree 0, and phi o delta = delta2 on generators.
Report check_derivation_morphism(const ModuleMorphism& phi, const Derivation& delta, const Derivation& delta2);

// delta + [d, h].
Derivation homotopy_offset(const Derivation& delta, const Derivation& h);

// Some h with homotopy_offset(delta, h) = delta2; free unknowns are set to zero.
std::optional<Derivation> find_homotopy(const Derivation& delta, const Derivation& delta2);

bool same_values(const Derivation& a, const Derivation& b);

}  // namespace kap
