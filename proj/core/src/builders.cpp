#include "kapranov/builders.hpp"

#include <stdexcept>

namespace kap {

namespace {

Coords axpy(Coords y, const Scalar& a, const Coords& x) {
  for (size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
  return y;
}

Coords unit(size_t n, size_t i) {
  Coords v(n);
  v[i] = 1;
  return v;
}

std::string coords_to_string(const std::vector<std::string>& names, const Coords& v) {
  ModuleElement e;
  std::vector<BasisEntry> entries;
  for (const auto& n : names) entries.push_back({n, 0});
  for (size_t i = 0; i < v.size(); ++i) e.add(static_cast<int>(i), 0, v[i]);
  auto A = std::make_shared<const CdgaPresentation>(make_cdga({}, {}));
  return to_string(make_module(A, entries, {}), e);
}

}  // namespace

DgModule ce_module(const CdgaPtr& ce, const std::vector<std::vector<Coords>>& action, std::vector<BasisEntry> basis) {
  if (action.size() != ce->rank()) throw std::invalid_argument("ce_module: one action matrix per generator is required");
  std::vector<ModuleElement> boundary(basis.size());
  for (size_t a = 0; a < action.size(); ++a) {
    if (action[a].size() != basis.size()) throw std::invalid_argument("ce_module: action matrix has wrong size");
    for (size_t k = 0; k < basis.size(); ++k)
      for (size_t l = 0; l < basis.size(); ++l) boundary[k].add(static_cast<int>(l), Mono(1) << a, action[a][k].at(l));
  }
  return make_module(ce, std::move(basis), std::move(boundary));
}

std::vector<std::vector<Coords>> dual_action(const std::vector<std::vector<Coords>>& action) {
  std::vector<std::vector<Coords>> out(action.size());
  for (size_t a = 0; a < action.size(); ++a) {
    const size_t n = action[a].size();
    out[a].assign(n, Coords(n));
    for (size_t k = 0; k < n; ++k)
      for (size_t l = 0; l < n; ++l) out[a][k][l] = -action[a][l][k];
  }
  return out;
}

std::vector<std::vector<Coords>> adjoint_action(const LieAlgebraData& g) {
  const size_t n = g.dim();
  std::vector<std::vector<Coords>> out(n);
  for (size_t a = 0; a < n; ++a)
    for (size_t k = 0; k < n; ++k) out[a].push_back(g.bracket(unit(n, a), unit(n, k)));
  return out;
}

Report validate_representation(const LieAlgebraData& g, const std::vector<std::vector<Coords>>& action,
                               const std::vector<std::string>& names) {
  Report r("representation");
  const size_t n = g.dim();
  const size_t m = names.size();
  if (action.size() != n) {
    r.fail("action", "expected one matrix per Lie algebra basis element");
    return r;
  }
  auto act = [&](size_t a, const Coords& v) {
    Coords out(m);
    for (size_t k = 0; k < m; ++k)
      if (v[k] != 0) out = axpy(out, v[k], action[a][k]);
    return out;
  };
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      for (size_t k = 0; k < m; ++k) {
        ++r.cases;
        Coords lhs(m);
        Coords br = g.bracket(unit(n, a), unit(n, b));
        for (size_t c = 0; c < n; ++c)
          if (br[c] != 0) lhs = axpy(lhs, br[c], action[c][k]);
        Coords rhs = act(a, action[b][k]);
        rhs = axpy(rhs, Scalar(-1), act(b, action[a][k]));
        if (lhs != rhs)
          r.fail("(" + g.basis[a] + "," + g.basis[b] + "," + names[k] + ")",
                 coords_to_string(names, axpy(lhs, Scalar(-1), rhs)));
      }
  return r;
}

Report validate_lie_pair(const LiePairData& p) {
  Report r = validate_lie_algebra(p.ambient);
  const size_t n = p.ambient.dim();
  std::vector<bool> in_a(n, false);
  for (int i : p.sub_indices) {
    if (i < 0 || static_cast<size_t>(i) >= n) {
      r.fail("subalgebra", "index out of range");
      return r;
    }
    in_a[i] = true;
  }
  for (int i : p.sub_indices)
    for (int j : p.sub_indices) {
      ++r.cases;
      Coords br = p.ambient.bracket(unit(n, i), unit(n, j));
      for (size_t k = 0; k < n; ++k)
        if (br[k] != 0 && !in_a[k]) {
          r.fail("[" + p.ambient.basis[i] + "," + p.ambient.basis[j] + "]", "leaves the subalgebra");
          break;
        }
    }
  return r;
}

Report validate_splitting(const LiePairSetup& s, const Splitting& j) {
  Report r("splitting");
  const size_t nb = s.quotient_indices.size();
  if (j.size() != nb) {
    r.fail("splitting", "expected one row per quotient basis element");
    return r;
  }
  for (size_t b = 0; b < nb; ++b) {
    ++r.cases;
    if (j[b].size() != s.ambient.dim()) {
      r.fail(s.ambient.basis[s.quotient_indices[b]], "row has wrong length");
      continue;
    }
    for (size_t c = 0; c < nb; ++c)
      if (j[b][s.quotient_indices[c]] != (b == c ? 1 : 0))
        r.fail(s.ambient.basis[s.quotient_indices[b]], "pr_B o j is not the identity");
  }
  return r;
}

LiePairSetup lie_pair_setup(const LiePairData& p) {
  Report r = validate_lie_pair(p);
  if (!r.passed()) throw std::invalid_argument("invalid Lie pair: " + r.witnesses.front().location + " " + r.witnesses.front().value);
  LiePairSetup s;
  s.ambient = p.ambient;
  s.sub_indices = p.sub_indices;
  const size_t n = p.ambient.dim();
  std::vector<bool> in_a(n, false);
  for (int i : p.sub_indices) in_a[i] = true;
  for (size_t i = 0; i < n; ++i)
    if (!in_a[i]) s.quotient_indices.push_back(static_cast<int>(i));
  const size_t na = s.sub_indices.size();
  const size_t nb = s.quotient_indices.size();
  std::vector<std::string> names;
  for (int i : s.sub_indices) names.push_back(p.ambient.basis[i]);
  s.sub = LieAlgebraData(names);
  for (size_t a = 0; a < na; ++a)
    for (size_t b = 0; b < na; ++b) {
      Coords br = p.ambient.bracket(unit(n, s.sub_indices[a]), unit(n, s.sub_indices[b]));
      Coords v(na);
      for (size_t c = 0; c < na; ++c) v[c] = br[s.sub_indices[c]];
      s.sub.set_bracket(a, b, v);
    }
  s.algebra = std::make_shared<const CdgaPresentation>(ce_algebra(s.sub));
  Report sr = validate_splitting(s, p.splitting);
  if (!sr.passed()) throw std::invalid_argument("invalid splitting at " + sr.witnesses.front().location);
  s.bott.assign(na, std::vector<Coords>(nb, Coords(nb)));
  for (size_t a = 0; a < na; ++a)
    for (size_t l = 0; l < nb; ++l) {
      Coords br = p.ambient.bracket(unit(n, s.sub_indices[a]), p.splitting[l]);
      for (size_t k = 0; k < nb; ++k) s.bott[a][l][k] = br[s.quotient_indices[k]];
    }
  std::vector<BasisEntry> omega_basis;
  for (int q : s.quotient_indices) omega_basis.push_back({p.ambient.basis[q] + "*", 0});
  s.omega = std::make_shared<const DgModule>(ce_module(s.algebra, dual_action(s.bott), omega_basis));
  s.B = std::make_shared<const DgModule>(dual_module(*s.omega));
  s.delta = lie_pair_derivation(s, p.splitting);
  return s;
}

namespace {

// pr_A(x) in A-coordinates for x in L, using pr_A = id - j o pr_B.
Coords project_a(const LiePairSetup& s, const Splitting& j, const Coords& x) {
  Coords y = x;
  for (size_t b = 0; b < s.quotient_indices.size(); ++b) {
    const Scalar c = x[s.quotient_indices[b]];
    if (c != 0) y = axpy(y, -c, j[b]);
  }
  Coords out(s.sub_indices.size());
  for (size_t a = 0; a < s.sub_indices.size(); ++a) out[a] = y[s.sub_indices[a]];
  return out;
}

}  // namespace

Derivation lie_pair_derivation(const LiePairSetup& s, const Splitting& j) {
  Report sr = validate_splitting(s, j);
  if (!sr.passed()) throw std::invalid_argument("invalid splitting at " + sr.witnesses.front().location);
  const size_t n = s.ambient.dim();
  const size_t na = s.sub_indices.size();
  const size_t nb = s.quotient_indices.size();
  // xi_c = a_c* o pr_A as a functional on L.
  std::vector<Coords> xi(na, Coords(n));
  for (size_t x = 0; x < n; ++x) {
    Coords pa = project_a(s, j, unit(n, x));
    for (size_t c = 0; c < na; ++c) xi[c][x] = pa[c];
  }
  Derivation d = zero_derivation(s.algebra, s.omega, 0);
  for (size_t c = 0; c < na; ++c) {
    // (d_L xi)(u, v) = -xi([u, v]); the wedge-to-tensor image evaluated at (i a_alpha, j b_beta).
    for (size_t a = 0; a < na; ++a)
      for (size_t b = 0; b < nb; ++b) {
        Coords br = s.ambient.bracket(unit(n, s.sub_indices[a]), j[b]);
        Scalar v = 0;
        for (size_t x = 0; x < n; ++x) v -= xi[c][x] * br[x];
        d.values[c].add(static_cast<int>(b), Mono(1) << a, v);
      }
  }
  return d;
}

Derivation splitting_dual_difference(const LiePairSetup& s, const Splitting& j1, const Splitting& j2) {
  const size_t na = s.sub_indices.size();
  const size_t nb = s.quotient_indices.size();
  Derivation h = zero_derivation(s.algebra, s.omega, -1);
  for (size_t c = 0; c < na; ++c)
    for (size_t b = 0; b < nb; ++b) h.values[c].add(static_cast<int>(b), 0, j1[b][s.sub_indices[c]] - j2[b][s.sub_indices[c]]);
  return h;
}

Derivation splitting_homotopy(const LiePairSetup& s, const Splitting& j, const Splitting& j2) {
  Derivation h = splitting_dual_difference(s, j, j2);
  if (!same_values(homotopy_offset(lie_pair_derivation(s, j), h), lie_pair_derivation(s, j2)))
    throw std::logic_error("splitting_homotopy: offset does not reproduce the second derivation");
  return h;
}

Connection lie_pair_connection(const LiePairSetup& s, const Derivation& delta,
                               const std::vector<std::vector<Coords>>& choice) {
  const size_t nb = s.quotient_indices.size();
  std::vector<ModuleElement> values(nb);
  if (!choice.empty()) {
    if (choice.size() != nb) throw std::invalid_argument("lie_pair_connection: one row of choices per quotient element");
    for (size_t i = 0; i < nb; ++i)
      for (size_t beta = 0; beta < nb; ++beta)
        for (size_t k = 0; k < nb; ++k)
          values[i].add(static_cast<int>(beta * nb + k), 0, -choice[beta].at(i).at(k));
  }
  return make_connection(delta, s.B, std::move(values));
}

AMultilinear lie_pair_cocycle(const LiePairSetup& s, const Splitting& j, const std::vector<std::vector<Coords>>& choice) {
  const size_t n = s.ambient.dim();
  const size_t na = s.sub_indices.size();
  const size_t nb = s.quotient_indices.size();
  auto choice_at = [&](size_t beta, size_t i) -> Coords {
    return choice.empty() ? Coords(nb) : choice[beta][i];
  };
  // nabla_x v for x in L (coordinates) and v in B (coordinates).
  auto nabla = [&](const Coords& x, const Coords& v) {
    Coords out(nb);
    Coords pa = project_a(s, j, x);
    for (size_t i = 0; i < nb; ++i) {
      if (v[i] == 0) continue;
      for (size_t a = 0; a < na; ++a)
        if (pa[a] != 0) out = axpy(out, pa[a] * v[i], s.bott[a][i]);
      for (size_t beta = 0; beta < nb; ++beta) {
        const Scalar c = x[s.quotient_indices[beta]];
        if (c != 0) out = axpy(out, c * v[i], choice_at(beta, i));
      }
    }
    return out;
  };
  AMultilinear t{2, 1, {s.B, s.B}, s.B, {}};
  for (size_t beta = 0; beta < nb; ++beta)
    for (size_t i = 0; i < nb; ++i) {
      ModuleElement val;
      for (size_t a = 0; a < na; ++a) {
        Coords xa = unit(n, s.sub_indices[a]);
        const Coords& xb = j[beta];
        Coords e = unit(nb, i);
        Coords v = nabla(xa, nabla(xb, e));
        v = axpy(v, Scalar(-1), nabla(xb, nabla(xa, e)));
        v = axpy(v, Scalar(-1), nabla(s.ambient.bracket(xa, xb), e));
        for (size_t k = 0; k < nb; ++k) val.add(static_cast<int>(k), Mono(1) << a, v[k]);
      }
      if (!val.is_zero()) t.table[{static_cast<int>(beta), static_cast<int>(i)}] = std::move(val);
    }
  return t;
}

Report validate_linear_map_object(const LinearMapObject& o) {
  Report r = validate_representation(o.g, o.action, o.module_basis);
  Report eq("equivariance");
  const size_t n = o.g.dim();
  const size_t m = o.module_basis.size();
  if (o.psi.size() != m) {
    eq.fail("psi", "expected one row per module basis element");
    r.absorb(eq);
    return r;
  }
  for (size_t x = 0; x < n; ++x)
    for (size_t e = 0; e < m; ++e) {
      ++eq.cases;
      Coords lhs(n);
      for (size_t k = 0; k < m; ++k)
        if (o.action[x][e][k] != 0) lhs = axpy(lhs, o.action[x][e][k], o.psi[k]);
      Coords rhs = o.g.bracket(unit(n, x), o.psi[e]);
      if (lhs != rhs)
        eq.fail("(" + o.g.basis[x] + "," + o.module_basis[e] + ")", coords_to_string(o.g.basis, axpy(lhs, Scalar(-1), rhs)));
    }
  r.absorb(eq);
  r.check = "linear_map_object";
  return r;
}

LinearMapSetup linear_map_object(const LinearMapObject& o) {
  Report r = validate_linear_map_object(o);
  if (!r.passed()) throw std::invalid_argument("invalid linear map object at " + r.witnesses.front().location);
  LinearMapSetup s;
  s.algebra = std::make_shared<const CdgaPresentation>(ce_algebra(o.g));
  std::vector<BasisEntry> basis;
  for (const auto& e : o.module_basis) basis.push_back({e + "*", 1});
  s.omega = std::make_shared<const DgModule>(ce_module(s.algebra, dual_action(o.action), basis));
  s.B = std::make_shared<const DgModule>(dual_module(*s.omega));
  s.delta = zero_derivation(s.algebra, s.omega, 0);
  for (size_t a = 0; a < o.g.dim(); ++a)
    for (size_t e = 0; e < o.module_basis.size(); ++e) s.delta.values[a].add(static_cast<int>(e), 0, o.psi[e][a]);
  s.connection = make_connection(s.delta, s.B);
  return s;
}

Connection coadjoint_module(const LinearMapObject& o, const LinearMapSetup& s) {
  std::vector<BasisEntry> basis;
  for (const auto& x : o.g.basis) basis.push_back({x + "~", 0});
  auto E = std::make_shared<const DgModule>(ce_module(s.algebra, dual_action(adjoint_action(o.g)), basis));
  return make_connection(s.delta, E);
}

KaehlerSetup kaehler_setup(const CdgaPtr& A) {
  KaehlerData k = kaehler_differentials(A);
  auto B = std::make_shared<const DgModule>(dual_module(*k.module));
  return KaehlerSetup{A, k.module, B, k.d};
}

namespace builtin {

LieAlgebraData sl2() {
  LieAlgebraData g({"h", "e", "f"});
  g.set_bracket(0, 1, {0, 2, 0});
  g.set_bracket(0, 2, {0, 0, -2});
  g.set_bracket(1, 2, {1, 0, 0});
  return g;
}

LieAlgebraData two_dim_nonabelian() {
  LieAlgebraData g({"x", "y"});
  g.set_bracket(0, 1, {0, 1});
  return g;
}

LiePairData sl2_borel() { return LiePairData{sl2(), {0, 1}, {{0, 0, 1}}}; }

Splitting sl2_borel_second_splitting() { return {{0, 1, 1}}; }

LiePairData xy_pair() { return LiePairData{two_dim_nonabelian(), {0}, {{0, 1}}}; }

Splitting xy_pair_second_splitting() { return {{1, 1}}; }

LiePairData trivial_pair() { return LiePairData{LieAlgebraData({"x", "y"}), {0}, {{0, 1}}}; }

LinearMapObject nonabelian_linear_maps() {
  LinearMapObject o;
  o.g = two_dim_nonabelian();
  o.module_basis = {"u", "v"};
  o.action = adjoint_action(o.g);
  o.psi = {{1, 0}, {0, 1}};
  return o;
}

}  // namespace builtin

}  // namespace kap
