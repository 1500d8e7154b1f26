#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "support.hpp"

using namespace kap;
using testing::Gen;
using testing::table_matches;

namespace {

Connection random_connection(Gen& g, const Derivation& delta, const ModulePtr& E) {
  Connection base = make_connection(delta, E);
  std::vector<ModuleElement> values(E->rank());
  for (size_t i = 0; i < E->rank(); ++i) values[i] = g.module_of_degree(*base.omega_module, E->degree(i) + delta.degree);
  return make_connection(delta, E, values);
}

struct Case {
  std::string name;
  Derivation delta;
  ModulePtr B;
};

std::vector<Case> cases() {
  auto sl = lie_pair_setup(builtin::sl2_borel());
  auto xy = lie_pair_setup(builtin::xy_pair());
  auto tr = lie_pair_setup(builtin::trivial_pair());
  auto lm = linear_map_object(builtin::nonabelian_linear_maps());
  auto ks = kaehler_setup(lm.algebra);
  return {{"sl2", sl.delta, sl.B},
          {"sl2 second splitting", lie_pair_derivation(sl, builtin::sl2_borel_second_splitting()), sl.B},
          {"xy", xy.delta, xy.B},
          {"xy second splitting", lie_pair_derivation(xy, builtin::xy_pair_second_splitting()), xy.B},
          {"trivial", tr.delta, tr.B},
          {"linear maps", lm.delta, lm.B},
          {"de Rham", ks.delta, ks.B}};
}

// Closed elements of every degree: cohomology representatives plus boundaries.
std::vector<ModuleElement> closed_elements(Gen& g, const DgModule& M) {
  std::vector<ModuleElement> out;
  for (int d = -2; d <= 3; ++d) {
    for (auto& c : cohomology_basis(M, d)) out.push_back(c);
    for (int t = 0; t < 2; ++t) {
      auto z = apply_module_differential(M, g.module_of_degree(M, d - 1));
      for (auto& c : cohomology_basis(M, d)) z += c.scaled(g.small_rational());
      if (!z.is_zero()) out.push_back(z);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("Atiyah cocycles match the classical Lie-pair oracle") {
  auto sl = lie_pair_setup(builtin::sl2_borel());
  CHECK(table_matches(atiyah_cocycle(lie_pair_connection(sl, sl.delta, {}), sl.B).bilinear, oracle::sl2_borel_atiyah_zero));
  CHECK(table_matches(atiyah_cocycle(lie_pair_connection(sl, sl.delta, {{{parse_scalar("1/2")}}}), sl.B).bilinear,
                      oracle::sl2_borel_atiyah_half));
  auto d2 = lie_pair_derivation(sl, builtin::sl2_borel_second_splitting());
  CHECK(table_matches(atiyah_cocycle(lie_pair_connection(sl, d2, {}), sl.B).bilinear, oracle::sl2_borel2_atiyah_zero));
  auto xy = lie_pair_setup(builtin::xy_pair());
  CHECK(table_matches(atiyah_cocycle(lie_pair_connection(xy, xy.delta, {}), xy.B).bilinear, oracle::xy_atiyah_zero));
  auto xd2 = lie_pair_derivation(xy, builtin::xy_pair_second_splitting());
  CHECK(table_matches(atiyah_cocycle(lie_pair_connection(xy, xd2, {}), xy.B).bilinear, oracle::xy2_atiyah_zero));
  CHECK(to_string(*sl.B, atiyah_cocycle(lie_pair_connection(sl, sl.delta, {}), sl.B).bilinear.at({0, 0})) == "2*e*.f");
}

TEST_CASE("dg cocycle equals the classical Lie-pair cocycle for every connection choice") {
  Gen g(61);
  for (auto p : {builtin::sl2_borel(), builtin::xy_pair(), builtin::trivial_pair()}) {
    auto s = lie_pair_setup(p);
    for (int t = 0; t < 15; ++t) {
      auto choice = g.choice(s.quotient_indices.size());
      CHECK(tables_equal(atiyah_cocycle(lie_pair_connection(s, s.delta, choice), s.B).bilinear,
                         lie_pair_cocycle(s, p.splitting, choice)));
    }
  }
}

TEST_CASE("covariant derivative obeys the twisted Leibniz rule") {
  Gen g(62);
  for (const auto& c : cases()) {
    CAPTURE(c.name);
    Connection nabla = random_connection(g, c.delta, c.B);
    const DgModule& omega = *c.delta.target;
    for (const auto& kb : k_basis(*c.B)) {
      const auto b = testing::key_element(kb);
      const int db = key_degree(*c.B, kb);
      for (int t = 0; t < 3; ++t) {
        const int p = g.uniform(0, static_cast<int>(c.delta.algebra->rank()));
        auto a = g.algebra_of_degree(*c.delta.algebra, p);
        auto v = g.module(*c.B);
        auto lhs = covariant_derivative(nabla, b, left_multiply(a, v));
        auto rhs = left_multiply(pairing(omega, b, extend_derivation(c.delta, a)), v) +
                   left_multiply(a, covariant_derivative(nabla, b, v)).scaled(parity_sign(long(db) * p));
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("cocycles are closed and satisfy the Atiyah formula") {
  Gen g(63);
  for (const auto& c : cases()) {
    CAPTURE(c.name);
    for (int t = 0; t < 4; ++t) {
      Connection nabla = t == 0 ? make_connection(c.delta, c.B) : random_connection(g, c.delta, c.B);
      AtiyahCocycle at = atiyah_cocycle(nabla, c.B);
      CHECK(apply_module_differential(*at.omega_end, at.element).is_zero());
      CHECK(check_atiyah_formula(nabla, c.B, at).passed());
      CHECK(to_omega_end(*c.delta.target, *c.B, at.operator_form) == at.element);
    }
  }
}

TEST_CASE("changing the connection changes the cocycle by an exact term") {
  Gen g(64);
  for (const auto& c : cases()) {
    CAPTURE(c.name);
    for (int t = 0; t < 4; ++t) {
      Connection n1 = random_connection(g, c.delta, c.B), n2 = random_connection(g, c.delta, c.B);
      CHECK(check_connection_change(n1, n2, c.B).passed());
      AtiyahCocycle a1 = atiyah_cocycle(n1, c.B), a2 = atiyah_cocycle(n2, c.B);
      CHECK(classes_equal(*a1.omega_end, a1.element, a2.element));
    }
  }
}

TEST_CASE("a flat connection exists exactly when the class vanishes") {
  int vanishing = 0, nonvanishing = 0;
  for (const auto& c : cases()) {
    CAPTURE(c.name);
    AtiyahClass cls = atiyah_class(c.delta, c.B, c.B);
    auto flat = flat_connection_exists(c.delta, c.B, c.B);
    CHECK(flat.has_value() == cls.vanishes);
    (cls.vanishes ? vanishing : nonvanishing)++;
    if (flat) CHECK(atiyah_cocycle(*flat, c.B).element.is_zero());
  }
  CHECK(vanishing > 0);
  CHECK(nonvanishing > 0);
  auto sl = lie_pair_setup(builtin::sl2_borel());
  CHECK_FALSE(atiyah_class(sl.delta, sl.B, sl.B).vanishes);
  auto tr = lie_pair_setup(builtin::trivial_pair());
  CHECK(atiyah_class(tr.delta, tr.B, tr.B).vanishes);
}

TEST_CASE("R2 of two closed elements is exact") {
  // With b and e closed the Atiyah formula reduces to -d(nabla_b e).
  Gen g(65);
  for (const auto& c : cases()) {
    CAPTURE(c.name);
    Connection nabla = random_connection(g, c.delta, c.B);
    AtiyahCocycle at = atiyah_cocycle(nabla, c.B);
    auto closed = closed_elements(g, *c.B);
    for (const auto& b : closed)
      for (const auto& e : closed) {
        auto r = apply_table(at.bilinear, {b, e});
        auto db = module_degree(*c.B, b);
        REQUIRE(db.has_value());
        CHECK(r.scaled(parity_sign(*db)) == -apply_module_differential(*c.B, covariant_derivative(nabla, b, e)));
        if (!r.is_zero()) CHECK(is_coboundary(*c.B, r).has_value());
      }
  }
}

TEST_CASE("naturality of the cocycle under dg morphisms") {
  Gen g(66);
  auto lm = linear_map_object(builtin::nonabelian_linear_maps());
  Connection n1 = random_connection(g, lm.delta, lm.B), n2 = random_connection(g, lm.delta, lm.B);
  ModuleMorphism two{lm.B, lm.B, 0, {ModuleElement::basis(0, 2), ModuleElement::basis(1, 2)}};
  auto res = check_naturality(two, n1, n2, nullptr);
  CHECK(res.report.passed());
}

TEST_CASE("connection difference is A-linear") {
  Gen g(67);
  auto sl = lie_pair_setup(builtin::sl2_borel());
  Connection n1 = random_connection(g, sl.delta, sl.B), n2 = random_connection(g, sl.delta, sl.B);
  auto diff = connection_difference(n1, n2);
  for (int t = 0; t < 10; ++t) {
    auto a = g.algebra(*sl.algebra);
    auto v = g.module(*sl.B);
    auto lhs = extend_connection(n2, left_multiply(a, v)) - extend_connection(n1, left_multiply(a, v));
    auto rhs = left_multiply(a, extend_connection(n2, v) - extend_connection(n1, v));
    CHECK(lhs == rhs);
  }
  CHECK_FALSE(diff.is_zero());
}
