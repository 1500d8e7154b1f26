#pragma once

#include "kapranov/connection.hpp"
#include "kapranov/parallel.hpp"

namespace kap {

using KLinearFn = std::function<ModuleElement(const std::vector<ModuleElement>&)>;

// Derivation of degree |b| + degree(connection) on tensors, slot i handled by
// slots[i]. All connections must share the same twist.
TensorElement covariant_tensor_derivative(const std::vector<const Connection*>& slots, const ModuleElement& b,
                                          const TensorElement& t);

struct BracketFamily {
  ModulePtr carrier;
  std::vector<MultiOp> brackets;  // brackets[k - 1] is lambda_k

  int max_arity() const { return static_cast<int>(brackets.size()); }
  // Zero beyond the stored range.
  MultiOp bracket(int k) const;
};

// (B, {d, 0, 0, ...}).
BracketFamily trivial_family(const ModulePtr& B, int N);

// R_1 = d, R_2 = Atiyah bilinear form, R_{k+1} = (-1)^{|b_0|}[nabla_{b_0}, R_k].
// nabla lives on B, which must be the dual of the twist target.
BracketFamily kapranov_brackets(const Connection& nabla, int N);

// Same recursion evaluated on arguments without tables; k-linear.
ModuleElement kapranov_bracket_direct(const Connection& nabla, const std::vector<ModuleElement>& args);

// f(b_1, ..., a b_i, ...) against (-1)^{|a|(degree + |b_1| + ... + |b_{i-1}|)} a f(b_1, ...) for
// every basis tuple, slot and algebra generator a.
Report check_a_multilinear(const KLinearFn& f, const std::vector<const DgModule*>& slots, int degree,
                           const DgModule& output);

Report check_leibniz_infinity(const BracketFamily& fam, int n_max);

struct MorphismFamily {
  BracketFamily source;
  BracketFamily target;
  std::vector<MultiOp> maps;  // maps[k - 1] is f_k
  bool a_multilinear = true;

  MultiOp map(int k) const;
};

MorphismFamily identity_family(const BracketFamily& fam);

// phi : Omega2 -> Omega with delta = phi o delta2, nabla on B = Omega^v along delta,
// nabla2 on B2 = Omega2^v along delta2. The result goes from Kap(delta) to Kap(delta2).
MorphismFamily kapranov_morphism(const ModuleMorphism& phi, const Connection& nabla, const Connection& nabla2, int N);
MorphismFamily kapranov_morphism(const ModuleMorphism& phi, const Connection& nabla, const Connection& nabla2,
                                 const BracketFamily& source, const BracketFamily& target);

Report check_linfty_morphism(const MorphismFamily& m, int n_max);

// g after f, arity by arity through the partition formula.
MorphismFamily compose_families(const MorphismFamily& g, const MorphismFamily& f);

// phi_1 = id, phi_{k+1}(b_0, ...) = nabla_{b_0} phi_k(...): a k-linear morphism
// from the trivial family to Kap(delta).
MorphismFamily trivialization(const Connection& nabla, int N);

struct HomotopyIso {
  Connection nabla_prime;  // nabla + [d, hat]
  MorphismFamily family;   // from Kap for nabla_prime to Kap for nabla
};

// delta2 = delta + [d, h]; hat is an h-connection on the same module as nabla.
HomotopyIso homotopy_iso(const Derivation& delta, const Derivation& delta2, const Derivation& h,
                         const Connection& nabla, const Connection& hat, int N);

struct ModuleActionFamily {
  BracketFamily algebra;
  ModulePtr carrier;
  std::vector<MultiOp> actions;  // actions[k - 1] is mu_k

  MultiOp action(int k) const;
};

// Throws std::logic_error carrying the first failing tuple when the module
// identities fail up to check_arity.
ModuleActionFamily kapranov_module(const Connection& nabla, const Connection& nabla_e, int N, int check_arity);
ModuleActionFamily kapranov_module(const BracketFamily& algebra, const Connection& nabla, const Connection& nabla_e,
                                   int N, int check_arity);

Report check_module_identities(const ModuleActionFamily& m, int n_max);

// Cohomology classes of a module, with degrees shifted by `shift`.
struct CohomologyClasses {
  ModulePtr module;
  int shift = 0;
  std::vector<ModuleElement> reps;
  GradedBasis basis;  // "[rep]" names, module degree + shift
};

CohomologyClasses cohomology_classes(const ModulePtr& M, int shift);

// Coordinates of the class of a closed element; nullopt if z is not closed.
std::optional<Element> class_coordinates(const CohomologyClasses& H, const ModuleElement& z);

struct CohomologyBracket {
  CohomologyClasses classes;  // H(B[-1])
  MultilinearMap bracket;
  Report report;  // closedness of outputs and the class-level Leibniz rule
};

CohomologyBracket cohomology_leibniz_bracket(const Connection& nabla);

// [x, y] + (-1)^{|x||y|}[y, x] for every pair of classes; the failures are the non-skew pairs.
Report check_skew_symmetry(const CohomologyBracket& b);

struct CohomologyAction {
  CohomologyClasses algebra;  // H(B[-1])
  CohomologyClasses module;   // H(E)
  MultilinearMap action;
  Report report;
};

CohomologyAction cohomology_action(const Connection& nabla, const Connection& nabla_e);

// [b] |> [lambda e] = lambda([b] |> [e]) for a degree 0 dg morphism lambda : E -> F.
Report check_action_naturality(const Connection& nabla, const Connection& nabla_e, const Connection& nabla_f,
                               const ModuleMorphism& lambda);

}  // namespace kap
