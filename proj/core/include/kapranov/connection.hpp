#pragma once

#include "kapranov/cohomology.hpp"
#include "kapranov/derivation.hpp"
#include "kapranov/multilinear.hpp"

namespace kap {

// A connection along the derivation `twist` (degree 0 for delta-connections,
// -1 for h-connections): nabla(a e) = twist(a) (x) e + (-1)^{degree |a|} a nabla(e).
struct Connection {
  Derivation twist;
  ModulePtr module;
  ModulePtr omega_module;  // Omega (x) E
  std::vector<ModuleElement> values;

  int degree() const { return twist.degree; }
  const DgModule& omega() const { return *twist.target; }
};

// Values default to zero, i.e. the connection induced from the universal one
// through the free basis.
Connection make_connection(const Derivation& twist, const ModulePtr& E, std::vector<ModuleElement> values = {});

ModuleElement extend_connection(const Connection& c, const ModuleElement& v);

// nabla_b v = iota_b nabla(v) for b in the dual of Omega.
ModuleElement covariant_derivative(const Connection& c, const ModuleElement& b, const ModuleElement& v);

// Element of Hom(E, target) with the given images of the basis of E.
ModuleElement hom_from_values(const DgModule& E, const DgModule& target, const std::vector<ModuleElement>& values);

struct AtiyahCocycle {
  ModulePtr hom_module;      // Hom(E, Omega (x) E)
  ModulePtr omega_end;       // Omega (x) End(E)
  ModuleElement operator_form;  // nabla d - d nabla in Hom(E, Omega (x) E)
  ModuleElement element;        // same cocycle in Omega (x) End(E)
  AMultilinear bilinear;        // B (x) E -> E
};

// Throws std::logic_error if the cocycle fails to be closed.
AtiyahCocycle atiyah_cocycle(const Connection& c, const ModulePtr& B);

// The Omega (x) End(E) element corresponding to a Hom(E, Omega (x) E) element.
ModuleElement to_omega_end(const DgModule& omega, const DgModule& E, const ModuleElement& h);

// The bilinear form against nabla_{db} e - [d, nabla_b] e on all k-basis pairs.
Report check_atiyah_formula(const Connection& c, const ModulePtr& B, const AtiyahCocycle& at);

struct AtiyahClass {
  Connection connection;
  AtiyahCocycle cocycle;
  bool vanishes = false;
};

AtiyahClass atiyah_class(const Derivation& delta, const ModulePtr& E, const ModulePtr& B);

// nabla2 - nabla1 as an element of Hom(E, Omega (x) E).
ModuleElement connection_difference(const Connection& c1, const Connection& c2);

// Checks A-linearity of nabla2 - nabla1 and At2 - At1 = -d(nabla2 - nabla1).
Report check_connection_change(const Connection& c1, const Connection& c2, const ModulePtr& B);

std::optional<Connection> flat_connection_exists(const Derivation& delta, const ModulePtr& E, const ModulePtr& B);

struct NaturalityResult {
  Report report;
  ModuleElement defect;     // (phi (x) lambda) At_E - (-1)^{|lambda|} At_F lambda
  ModuleElement primitive;  // explicit primitive built from the connections
};

// phi: Omega -> Omega2 with delta2 = phi o delta; identity when omitted.
NaturalityResult check_naturality(const ModuleMorphism& lambda, const Connection& nabla_e, const Connection& nabla_f,
                                  const ModuleMorphism* phi);

}  // namespace kap
