#pragma once

#include "kapranov/connection.hpp"

namespace kap {

using Coords = std::vector<Scalar>;

// Module over a Chevalley-Eilenberg algebra with d(v_k) = sum_a x_a* (x_a . v_k);
// action[a][k] holds the coordinates of x_a . v_k.
DgModule ce_module(const CdgaPtr& ce, const std::vector<std::vector<Coords>>& action, std::vector<BasisEntry> basis);

// Contragredient action: (x . phi)(v) = -phi(x . v).
std::vector<std::vector<Coords>> dual_action(const std::vector<std::vector<Coords>>& action);

std::vector<std::vector<Coords>> adjoint_action(const LieAlgebraData& g);

// Representation property [x,y].v = x.(y.v) - y.(x.v).
Report validate_representation(const LieAlgebraData& g, const std::vector<std::vector<Coords>>& action,
                               const std::vector<std::string>& names);

// A splitting j: L/A -> L, one row of L-coordinates per quotient basis element.
using Splitting = std::vector<Coords>;

struct LiePairData {
  LieAlgebraData ambient;
  std::vector<int> sub_indices;
  Splitting splitting;
};

struct LiePairSetup {
  LieAlgebraData ambient;
  LieAlgebraData sub;
  std::vector<int> sub_indices;
  std::vector<int> quotient_indices;
  CdgaPtr algebra;
  ModulePtr omega;  // CE(A, B*)
  ModulePtr B;      // dual of omega, CE(A, B) with the Bott action
  std::vector<std::vector<Coords>> bott;
  Derivation delta;
};

Report validate_lie_pair(const LiePairData& p);
Report validate_splitting(const LiePairSetup& s, const Splitting& j);

LiePairSetup lie_pair_setup(const LiePairData& p);

// delta_j(a*) = -sum a*(pr_A [a_alpha, j b_beta]) a_alpha* b_beta*, obtained from
// d_L through the wedge-to-tensor map xi^eta -> xi(x)eta - eta(x)xi.
Derivation lie_pair_derivation(const LiePairSetup& s, const Splitting& j);

// The degree -1 derivation with a* -> a* o (j1 - j2).
Derivation splitting_dual_difference(const LiePairSetup& s, const Splitting& j1, const Splitting& j2);

// h with homotopy_offset(delta_j, h) = delta_j2, verified before return.
Derivation splitting_homotopy(const LiePairSetup& s, const Splitting& j, const Splitting& j2);

// delta-connection on B induced by the L-connection with nabla_a = Bott and
// nabla_{j b_beta} b_i = choice[beta][i] (constant vectors). Since delta acts on
// A-forms as minus the Lie derivative along j b, the stored values are -choice.
Connection lie_pair_connection(const LiePairSetup& s, const Derivation& delta, const std::vector<std::vector<Coords>>& choice);

// Classical Lie-pair Atiyah cocycle sum_a a* alpha(a, b) e on B (x) B -> B, from
// the L-connection nabla_a = Bott, nabla_{j b} = choice.
AMultilinear lie_pair_cocycle(const LiePairSetup& s, const Splitting& j, const std::vector<std::vector<Coords>>& choice);

struct LinearMapObject {
  LieAlgebraData g;
  std::vector<std::string> module_basis;
  std::vector<std::vector<Coords>> action;  // action[x][e]
  std::vector<Coords> psi;                  // psi[e] in g-coordinates
};

Report validate_linear_map_object(const LinearMapObject& o);

struct LinearMapSetup {
  CdgaPtr algebra;
  ModulePtr omega;  // C(g, E*[-1]), E* in degree 1
  ModulePtr B;      // C(g, E[1]), E in degree -1
  Derivation delta;
  Connection connection;  // trivial connection on B
};

LinearMapSetup linear_map_object(const LinearMapObject& o);

// C(g, g*) in degree 0, with its trivial delta-connection.
Connection coadjoint_module(const LinearMapObject& o, const LinearMapSetup& s);

struct KaehlerSetup {
  CdgaPtr algebra;
  ModulePtr omega;
  ModulePtr B;
  Derivation delta;
};

KaehlerSetup kaehler_setup(const CdgaPtr& A);

namespace builtin {
LiePairData sl2_borel();
Splitting sl2_borel_second_splitting();
LiePairData xy_pair();
Splitting xy_pair_second_splitting();
LiePairData trivial_pair();
LinearMapObject nonabelian_linear_maps();
LieAlgebraData sl2();
LieAlgebraData two_dim_nonabelian();
}  // namespace builtin

}  // namespace kap
