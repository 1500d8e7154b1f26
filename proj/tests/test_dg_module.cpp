#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"

using namespace kap;
using testing::Gen;
using testing::module_element;

namespace {

struct Sample {
  std::string name;
  ModulePtr M;
};

std::vector<Sample> samples() {
  auto sl = lie_pair_setup(builtin::sl2_borel());
  auto lm = linear_map_object(builtin::nonabelian_linear_maps());
  auto xy = lie_pair_setup(builtin::xy_pair());
  auto ks = kaehler_setup(sl.algebra);
  return {{"sl2 omega", sl.omega}, {"sl2 B", sl.B},  {"lm omega", lm.omega}, {"lm B", lm.B},
          {"xy omega", xy.omega},  {"xy B", xy.B},   {"kaehler", ks.omega},  {"tangent", ks.B},
          {"coadjoint", coadjoint_module(builtin::nonabelian_linear_maps(), lm).module}};
}

}  // namespace

TEST_CASE("sl2/Borel module differentials match the oracle") {
  auto s = lie_pair_setup(builtin::sl2_borel());
  REQUIRE(s.B->rank() == 1);
  CHECK(s.B->boundary[0] == module_element(oracle::sl2_borel_b_boundary[0]));
  CHECK(s.omega->boundary[0] == module_element(oracle::sl2_borel_omega_boundary[0]));
  CHECK(to_string(*s.B, s.B->boundary[0]) == "-2*h*.f");
  CHECK(to_string(*s.omega, s.omega->boundary[0]) == "2*h*.f*");
  CHECK(s.B->basis.name(0) == "f");
  CHECK(s.omega->basis.name(0) == "f*");
}

TEST_CASE("shipped modules square to zero") {
  for (const auto& s : samples()) {
    CAPTURE(s.name);
    CHECK(validate_dg_module(*s.M).passed());
    CHECK(validate_dg_module(dual_module(*s.M)).passed());
  }
}

TEST_CASE("module differential is a derivation over the algebra") {
  Gen g(31);
  for (const auto& s : samples()) {
    CAPTURE(s.name);
    const DgModule& M = *s.M;
    for (int t = 0; t < 40; ++t) {
      const int p = g.uniform(0, static_cast<int>(M.algebra->rank()));
      auto a = g.algebra_of_degree(*M.algebra, p);
      auto m = g.module(M);
      CHECK(apply_module_differential(M, left_multiply(a, m)) ==
            left_multiply(apply_differential(*M.algebra, a), m) +
                left_multiply(a, apply_module_differential(M, m)).scaled(parity_sign(p)));
      CHECK(apply_module_differential(M, apply_module_differential(M, m)).is_zero());
    }
  }
}

TEST_CASE("right action is the graded-commutative mirror of the left action") {
  Gen g(32);
  for (const auto& s : samples()) {
    const DgModule& M = *s.M;
    for (const auto& k : k_basis(M)) {
      const int p = g.uniform(0, static_cast<int>(M.algebra->rank()));
      auto a = g.algebra_of_degree(*M.algebra, p);
      auto m = testing::key_element(k);
      CHECK(right_multiply(M, m, a) == left_multiply(a, m).scaled(parity_sign(long(p) * key_degree(M, k))));
    }
  }
}

TEST_CASE("pairing is a chain map") {
  Gen g(33);
  for (const auto& s : samples()) {
    CAPTURE(s.name);
    const DgModule& M = *s.M;
    const DgModule D = dual_module(M);
    for (const auto& kb : k_basis(D))
      for (int t = 0; t < 3; ++t) {
        auto beta = testing::key_element(kb, g.small_rational());
        auto w = g.module(M);
        const int db = key_degree(D, kb);
        CHECK(apply_differential(*M.algebra, pairing(M, beta, w)) ==
              pairing(M, apply_module_differential(D, beta), w) +
                  pairing(M, beta, apply_module_differential(M, w)).scaled(parity_sign(db)));
      }
  }
}

TEST_CASE("dual of the dual is the original module") {
  for (const auto& s : samples()) {
    DgModule DD = dual_module(dual_module(*s.M));
    CHECK(DD.basis.entries().size() == s.M->rank());
    for (size_t i = 0; i < s.M->rank(); ++i) {
      CHECK(DD.basis.name(i) == s.M->basis.name(i));
      CHECK(DD.degree(i) == s.M->degree(i));
      CHECK(DD.boundary[i] == s.M->boundary[i]);
    }
  }
}

TEST_CASE("tensor differential obeys the Leibniz rule") {
  Gen g(34);
  auto sl = lie_pair_setup(builtin::sl2_borel());
  auto lm = linear_map_object(builtin::nonabelian_linear_maps());
  for (auto [M, N] : {std::pair{lm.omega, lm.B}, std::pair{sl.omega, sl.B}, std::pair{lm.B, lm.B}}) {
    DgModule T = tensor_module(*M, *N);
    CHECK(validate_dg_module(T).passed());
    for (const auto& kx : k_basis(*M))
      for (int t = 0; t < 3; ++t) {
        auto x = testing::key_element(kx);
        auto y = g.module(*N);
        CHECK(apply_module_differential(T, tensor_elements(*M, *N, x, y)) ==
              tensor_elements(*M, *N, apply_module_differential(*M, x), y) +
                  tensor_elements(*M, *N, x, apply_module_differential(*N, y)).scaled(parity_sign(key_degree(*M, kx))));
      }
  }
}

TEST_CASE("hom differential is the graded commutator with the differentials") {
  Gen g(35);
  auto lm = linear_map_object(builtin::nonabelian_linear_maps());
  auto sl = lie_pair_setup(builtin::sl2_borel());
  for (auto [M, N] : {std::pair{lm.B, lm.omega}, std::pair{sl.B, sl.B}, std::pair{lm.B, lm.B}}) {
    DgModule H = hom_module(*M, *N);
    CHECK(validate_dg_module(H).passed());
    for (const auto& kh : k_basis(H))
      for (int t = 0; t < 3; ++t) {
        auto h = testing::key_element(kh);
        auto v = g.module(*M);
        const int dh = key_degree(H, kh);
        CHECK(apply_hom(*M, *N, apply_module_differential(H, h), v) ==
              apply_module_differential(*N, apply_hom(*M, *N, h, v)) -
                  apply_hom(*M, *N, h, apply_module_differential(*M, v)).scaled(parity_sign(dh)));
      }
  }
}

TEST_CASE("morphisms") {
  auto lm = linear_map_object(builtin::nonabelian_linear_maps());
  auto id = identity_morphism(lm.B);
  CHECK(is_dg_morphism(id));
  CHECK(validate_morphism(id).passed());
  Gen g(36);
  for (int t = 0; t < 20; ++t) {
    auto v = g.module(*lm.B);
    CHECK(apply_morphism(id, v) == v);
    CHECK(apply_morphism(compose(id, id), v) == v);
  }
  CHECK(apply_module_differential(hom_module(*lm.B, *lm.B), morphism_to_hom(id)).is_zero());

  // A scalar multiple of the identity is dg, a basis swap that ignores the differential is not.
  ModuleMorphism two{lm.B, lm.B, 0, {ModuleElement::basis(0, 2), ModuleElement::basis(1, 2)}};
  CHECK(is_dg_morphism(two));
  ModuleMorphism swap{lm.B, lm.B, 0, {ModuleElement::basis(1), ModuleElement::basis(0)}};
  CHECK_FALSE(is_dg_morphism(swap));
  CHECK_FALSE(validate_morphism(swap).passed());

  auto dual = dual_morphism(two, lm.omega, lm.omega);
  CHECK(is_dg_morphism(dual));
  for (size_t i = 0; i < lm.omega->rank(); ++i) CHECK(dual.images[i] == ModuleElement::basis(static_cast<int>(i), 2));
}

TEST_CASE("dual morphism is adjoint under the pairing") {
  auto sl = lie_pair_setup(builtin::sl2_borel());
  auto ks = kaehler_setup(sl.algebra);
  auto uf = universal_factorization(sl.delta, KaehlerData{ks.omega, ks.delta});
  REQUIRE(uf.dg);
  auto f1 = dual_morphism(uf.phi, sl.B, ks.B);
  CHECK(is_dg_morphism(f1));
  // <f1(b), w> = <b, phi(w)> on basis elements (degree 0 throughout).
  for (size_t b = 0; b < sl.B->rank(); ++b)
    for (size_t w = 0; w < ks.omega->rank(); ++w) {
      auto lhs = pairing(*ks.omega, f1.images[b], ModuleElement::basis(static_cast<int>(w)));
      auto rhs = pairing(*sl.omega, ModuleElement::basis(static_cast<int>(b)), uf.phi.images[w]);
      CHECK(lhs == rhs);
    }
}

TEST_CASE("broken boundary is located") {
  auto A = std::make_shared<const CdgaPresentation>(make_cdga({"x", "y"}, std::vector<AlgebraElement>(2)));
  std::vector<ModuleElement> boundary(3);
  boundary[0].add(1, 0b01, 1);
  boundary[1].add(2, 0b10, 1);
  DgModule M = make_module(A, {{"w1", 0}, {"w2", 0}, {"w3", 0}}, boundary);
  Report r = validate_dg_module(M);
  CHECK_FALSE(r.passed());
  CHECK(r.witnesses[0].location == "d(d(w1))");
  CHECK(r.witnesses[0].value == "-x^y.w3");

  std::vector<ModuleElement> wrong(1);
  wrong[0].add(0, 0b11, 1);
  CHECK_FALSE(validate_dg_module(make_module(A, {{"w", 0}}, wrong)).passed());
}

TEST_CASE("k-basis and printing") {
  auto lm = linear_map_object(builtin::nonabelian_linear_maps());
  CHECK(k_basis(*lm.B).size() == 8);
  CHECK(k_basis_of_degree(*lm.B, -1).size() == 2);
  CHECK(k_basis_of_degree(*lm.B, 1).size() == 2);
  CHECK(key_to_string(*lm.B, {1, 0b01}) == "x*.v");
  CHECK(to_string(*lm.B, ModuleElement{}) == "0");
  CHECK(module_degree(*lm.B, ModuleElement::basis(0)) == -1);
}
