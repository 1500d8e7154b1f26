#include "commands.hpp"

#include "kapranov/kapranov.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace kapcli {

using namespace kap;

namespace {

std::string pass_fail(bool ok) { return ok ? "pass" : "fail"; }

// Collects checks in order; informational checks are reported but do not
// change the overall status.
struct Checks {
  Json list = Json::array();
  bool passed = true;

  void add(const Report& r, bool informational = false) {
    Json j = report_json(r);
    if (informational) j["informational"] = true;
    list.push_back(std::move(j));
    if (!informational && !r.passed()) passed = false;
  }

  void add_flag(const std::string& name, bool ok, const std::string& location, const std::string& value) {
    Report r(name);
    r.cases = 1;
    if (!ok) r.fail(location, value);
    add(r);
  }
};

std::string names_string(const std::vector<std::string>& names) {
  std::string s = "(";
  for (size_t i = 0; i < names.size(); ++i) s += (i ? ", " : "") + names[i];
  return s + ")";
}

Json table_json(const AMultilinear& f) {
  Json out = Json::array();
  for (const auto& [idx, v] : f.table) {
    if (v.is_zero()) continue;
    std::vector<std::string> args;
    for (size_t i = 0; i < idx.size(); ++i) args.push_back(f.inputs[i]->basis.name(idx[i]));
    out.push_back({{"args", args}, {"value", to_string(*f.output, v)}});
  }
  return out;
}

Json derivation_json(const Derivation& d) {
  Json out = Json::object();
  for (size_t i = 0; i < d.values.size(); ++i)
    out[d.algebra->generators.name(i)] = to_string(*d.target, d.values[i]);
  return out;
}

Json module_json(const DgModule& M) {
  Json out = Json::array();
  for (size_t i = 0; i < M.rank(); ++i)
    out.push_back({{"name", M.basis.name(i)}, {"degree", M.degree(i)}, {"d", to_string(M, M.boundary[i])}});
  return out;
}

Json connection_json(const Connection& c) {
  Json out = Json::object();
  for (size_t i = 0; i < c.module->rank(); ++i) out[c.module->basis.name(i)] = to_string(*c.omega_module, c.values[i]);
  return out;
}

int arity_bound(const Instance& in, const CommandOptions& opt, int cap) {
  return std::min(opt.max_arity.value_or(in.max_arity), cap);
}

// f_k = 0 for 2 <= k <= n, used for the identity telescopes and g_2.
Report higher_maps_zero(const std::string& name, const MorphismFamily& m, int from, int to) {
  Report r(name);
  for (int k = from; k <= to; ++k) {
    ++r.cases;
    const MultiOp f = m.map(k);
    if (f.table && !table_is_zero(*f.table)) r.fail("k=" + std::to_string(k), "nonzero component");
  }
  return r;
}

ModuleMorphism scalar_morphism(const ModulePtr& M, const Scalar& c) {
  ModuleMorphism f{M, M, 0, {}};
  for (size_t i = 0; i < M->rank(); ++i) f.images.push_back(ModuleElement::basis(static_cast<int>(i), c));
  return f;
}

Derivation scaled(const Derivation& d, const Scalar& c) {
  Derivation out = d;
  for (auto& v : out.values) v = v.scaled(c);
  return out;
}

bool derivation_is_zero(const Derivation& d) {
  return std::all_of(d.values.begin(), d.values.end(), [](const ModuleElement& v) { return v.is_zero(); });
}

// R_2(b, e) = -psi(b) . e on the linear-maps carrier.
Report linear_maps_closed_form(const LinearMapObject& o, const BracketFamily& fam) {
  Report r("linear_maps_closed_form");
  const size_t m = o.module_basis.size();
  const AMultilinear& R2 = *fam.bracket(2).table;
  for (size_t b = 0; b < m; ++b)
    for (size_t e = 0; e < m; ++e) {
      ++r.cases;
      ModuleElement expected;
      for (size_t x = 0; x < o.g.dim(); ++x)
        for (size_t l = 0; l < m; ++l) expected.add(static_cast<int>(l), 0, -o.psi[b][x] * o.action[x][e][l]);
      const ModuleElement got = R2.at({static_cast<int>(b), static_cast<int>(e)});
      if (!(got == expected))
        r.fail("R2" + names_string({fam.carrier->basis.name(b), fam.carrier->basis.name(e)}),
               to_string(*fam.carrier, got) + " != " + to_string(*fam.carrier, expected));
    }
  return r;
}

Report structural_report(const Instance& in, Checks& checks) {
  Report all("structural");
  for (const auto& r : in.structural) {
    checks.add(r);
    all.absorb(r);
  }
  return all;
}

void cmd_validate(const Instance& in, const CommandOptions&, Checks&, Json& results) {
  results["generators"] = Json::array();
  if (!in.algebra) return;
  for (size_t i = 0; i < in.algebra->rank(); ++i)
    results["generators"].push_back(
        {{"name", in.algebra->generators.name(i)}, {"d", to_string(*in.algebra, in.algebra->diff[i])}});
  results["omega"] = module_json(*in.omega);
  results["B"] = module_json(*in.B);
  if (in.delta) results["delta"] = derivation_json(*in.delta);
  if (in.delta2) results["delta2"] = derivation_json(*in.delta2);
  if (in.homotopy) results["homotopy"] = derivation_json(*in.homotopy);
}

void cmd_atiyah(const Instance& in, const CommandOptions&, Checks& checks, Json& results) {
  Json cocycles = Json::array();
  for (size_t c = 0; c < in.connections.size(); ++c) {
    const Connection& nabla = in.connections[c];
    Json entry{{"connection", c}, {"values", connection_json(nabla)}};
    Report closed("cocycle_closed");
    closed.cases = 1;
    try {
      AtiyahCocycle at = atiyah_cocycle(nabla, in.B);
      entry["cocycle"] = to_string(*at.omega_end, at.element);
      entry["bilinear"] = table_json(at.bilinear);
      checks.add(closed);
      Report f = check_atiyah_formula(nabla, in.B, at);
      f.check = "atiyah_formula";
      checks.add(f);
    } catch (const std::logic_error& e) {
      closed.fail("connection " + std::to_string(c), e.what());
      checks.add(closed);
    }
    if (c > 0) {
      Report ch = check_connection_change(in.connections[0], nabla, in.B);
      ch.check = "connection_change";
      for (auto& w : ch.witnesses) w.location = "connection " + std::to_string(c) + ": " + w.location;
      checks.add(ch);
    }
    cocycles.push_back(std::move(entry));
  }
  results["cocycles"] = std::move(cocycles);
  AtiyahClass cls = atiyah_class(*in.delta, in.B, in.B);
  std::optional<Connection> flat = flat_connection_exists(*in.delta, in.B, in.B);
  results["class_vanishes"] = cls.vanishes;
  results["flat_connection"] = flat ? connection_json(*flat) : Json(nullptr);
  checks.add_flag("flat_iff_vanishing", flat.has_value() == cls.vanishes, "class",
                  std::string("vanishes=") + (cls.vanishes ? "true" : "false") +
                      " flat=" + (flat ? "true" : "false"));
  if (flat) {
    AtiyahCocycle at = atiyah_cocycle(*flat, in.B);
    checks.add_flag("flat_connection_cocycle_zero", at.element.is_zero(), "flat connection",
                    to_string(*at.omega_end, at.element));
  }
}

void cmd_brackets(const Instance& in, const CommandOptions& opt, Checks& checks, Json& results) {
  const int N = arity_bound(in, opt, 8);
  const Connection& nabla = in.connections[0];
  BracketFamily fam = kapranov_brackets(nabla, N);
  Json tables = Json::array();
  for (int k = 2; k <= N; ++k)
    tables.push_back({{"arity", k}, {"degree", fam.bracket(k).degree}, {"table", table_json(*fam.bracket(k).table)}});
  results["differential"] = module_json(*in.B);
  results["brackets"] = std::move(tables);
  const int direct_max = std::min(N, 4);
  for (int k = 2; k <= direct_max; ++k) {
    std::vector<const DgModule*> slots(k, in.B.get());
    Report r("direct_matches_table");
    for (const auto& t : key_tuples(slots)) {
      ++r.cases;
      std::vector<ModuleElement> args;
      for (const auto& key : t) {
        ModuleElement e;
        e.add(key.first, key.second, 1);
        args.push_back(std::move(e));
      }
      const ModuleElement a = kapranov_bracket_direct(nabla, args);
      const ModuleElement b = fam.bracket(k).apply(args);
      if (!(a == b)) {
        std::vector<std::string> names;
        for (const auto& key : t) names.push_back(key_to_string(*in.B, key));
        r.fail("k=" + std::to_string(k) + " " + names_string(names), to_string(*in.B, a) + " != " + to_string(*in.B, b));
      }
    }
    checks.add(r);
  }
}

void cmd_check_leibniz(const Instance& in, const CommandOptions& opt, Checks& checks, Json& results) {
  const int N = opt.max_arity.value_or(in.max_arity);
  const int build = in.lm_object ? std::max(N, 6) : N;
  BracketFamily fam = kapranov_brackets(in.connections[0], build);
  results["R2"] = table_json(*fam.bracket(2).table);
  checks.add(check_leibniz_infinity(fam, N));
  if (in.lm_object) {
    checks.add(linear_maps_closed_form(*in.lm_object, fam));
    Report z("linear_maps_higher_zero");
    for (int k = 3; k <= build; ++k) {
      ++z.cases;
      if (!table_is_zero(*fam.bracket(k).table)) z.fail("R" + std::to_string(k), "nonzero");
    }
    checks.add(z);
  }
}

void cmd_morphism(const Instance& in, const CommandOptions& opt, Checks& checks, Json& results) {
  const int n = arity_bound(in, opt, 4);
  const Connection& nabla = in.connections[0];
  BracketFamily fam = kapranov_brackets(nabla, n);

  KaehlerSetup ks = kaehler_setup(in.algebra);
  DerivationMorphism uf = universal_factorization(*in.delta, KaehlerData{ks.omega, ks.delta});
  Connection nabla_dr = make_connection(ks.delta, ks.B);
  MorphismFamily fu = kapranov_morphism(uf.phi, nabla, nabla_dr, n);
  Report ru = check_linfty_morphism(fu, n);
  ru.check = "universal_morphism";
  checks.add(ru);
  Json f2 = Json::array();
  if (n >= 2) f2 = table_json(*fu.map(2).table);
  results["universal_f2"] = std::move(f2);

  MorphismFamily id = kapranov_morphism(identity_morphism(in.omega), nabla, nabla, fam, fam);
  checks.add(higher_maps_zero("identity_higher_zero", id, 2, n));
  Report rid = check_linfty_morphism(id, n);
  rid.check = "identity_morphism";
  checks.add(rid);

  for (size_t c = 1; c < in.connections.size(); ++c) {
    MorphismFamily ch = kapranov_morphism(identity_morphism(in.omega), nabla, in.connections[c], n);
    Report r = check_linfty_morphism(ch, n);
    r.check = "connection_change_morphism";
    for (auto& w : r.witnesses) w.location = "connection " + std::to_string(c) + ": " + w.location;
    checks.add(r);
  }

  MorphismFamily triv = trivialization(nabla, n);
  Report rt = check_linfty_morphism(triv, n);
  rt.check = "trivialization_morphism";
  checks.add(rt);
  if (n >= 2) {
    Report lin = check_a_multilinear(triv.map(2).apply, {in.B.get(), in.B.get()}, 0, *in.B);
    const bool delta_zero = derivation_is_zero(*in.delta);
    results["phi2_a_linear"] = lin.passed();
    checks.add_flag("phi2_a_linearity", lin.passed() == delta_zero, "phi2",
                    std::string("a_linear=") + (lin.passed() ? "true" : "false") +
                        " delta_zero=" + (delta_zero ? "true" : "false"));
  }

  // Kap(phi_u) after Kap(2 id) against Kap(2 phi_u).
  const int nc = std::min(n, 3);
  const Scalar two(2);
  Connection nabla_scaled = make_connection(scaled(*in.delta, two), in.B);
  MorphismFamily f_two = kapranov_morphism(scalar_morphism(in.omega, two), nabla_scaled, nabla, nc);
  MorphismFamily f_u = kapranov_morphism(uf.phi, nabla, nabla_dr, nc);
  MorphismFamily direct = kapranov_morphism(compose(scalar_morphism(in.omega, two), uf.phi), nabla_scaled, nabla_dr, nc);
  MorphismFamily composite = compose_families(f_u, f_two);
  Report rc("composition");
  for (int k = 1; k <= nc; ++k) {
    ++rc.cases;
    if (!tables_equal(*composite.map(k).table, *direct.map(k).table)) rc.fail("k=" + std::to_string(k), "components differ");
  }
  checks.add(rc);
}

void cmd_homotopy(const Instance& in, const CommandOptions& opt, Checks& checks, Json& results) {
  if (!in.delta2) throw DocumentError("homotopy: the document provides no second derivation");
  const int n = arity_bound(in, opt, 4);
  std::optional<Derivation> found = find_homotopy(*in.delta, *in.delta2);
  checks.add_flag("homotopy_exists", found.has_value(), "delta2", "delta2 - delta is not exact");
  if (!found) return;
  const Derivation h = in.homotopy ? *in.homotopy : *found;
  results["homotopy"] = derivation_json(h);
  checks.add_flag("homotopy_offset", same_values(homotopy_offset(*in.delta, h), *in.delta2), "delta + [d, h]",
                  "differs from delta2");
  const Connection& nabla = in.connections[0];
  Connection hat = make_connection(h, in.B);
  HomotopyIso iso = homotopy_iso(*in.delta, *in.delta2, h, nabla, hat, n);
  Report r = check_linfty_morphism(iso.family, n);
  r.check = "homotopy_morphism";
  checks.add(r);
  if (n >= 2) checks.add(higher_maps_zero("g2_zero", iso.family, 2, 2));
  AtiyahCocycle a1 = atiyah_cocycle(nabla, in.B);
  AtiyahCocycle a2 = atiyah_cocycle(iso.nabla_prime, in.B);
  checks.add_flag("atiyah_classes_equal", classes_equal(*a1.omega_end, a1.element, a2.element), "At(delta) - At(delta2)",
                  to_string(*a1.omega_end, a2.element - a1.element));
}

void cmd_cohomology(const Instance& in, const CommandOptions& opt, Checks& checks, Json& results) {
  CohomologyBracket cb = cohomology_leibniz_bracket(in.connections[0]);
  const auto& H = cb.classes;
  Json classes = Json::array();
  std::map<int, int> dims;
  for (size_t i = 0; i < H.basis.size(); ++i) {
    const int d = H.basis.degree(i);
    if (opt.degree && *opt.degree != d) continue;
    ++dims[d];
    classes.push_back({{"class", H.basis.name(i)}, {"degree", d}});
  }
  Json jd = Json::object();
  for (const auto& [d, k] : dims) jd[std::to_string(d)] = k;
  results["dimensions"] = std::move(jd);
  results["classes"] = std::move(classes);
  Json bracket = Json::array();
  for (const auto& [idx, v] : cb.bracket.table) {
    if (v.is_zero()) continue;
    std::string value;
    for (const auto& [i, c] : v.coeffs) value += (value.empty() ? "" : " + ") + to_string(c) + "*" + H.basis.name(i);
    bracket.push_back({{"args", {H.basis.name(idx[0]), H.basis.name(idx[1])}}, {"value", value}});
  }
  results["bracket"] = std::move(bracket);
  Report r = cb.report;
  r.check = "cohomology_leibniz";
  checks.add(r);
  checks.add(check_skew_symmetry(cb), true);
}

using Handler = std::function<void(const Instance&, const CommandOptions&, Checks&, Json&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"validate", cmd_validate},   {"atiyah", cmd_atiyah},     {"brackets", cmd_brackets},
      {"check-leibniz", cmd_check_leibniz}, {"morphism", cmd_morphism}, {"homotopy", cmd_homotopy},
      {"cohomology", cmd_cohomology}};
  return h;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"validate", "atiyah",   "brackets",  "check-leibniz",
                                              "morphism", "homotopy", "cohomology"};
  return names;
}

Json report_json(const Report& r) {
  Json w = Json::array();
  for (const auto& x : r.witnesses) w.push_back({{"location", x.location}, {"value", x.value}});
  return Json{{"name", r.check}, {"status", pass_fail(r.passed())}, {"cases", r.cases}, {"failed", r.failed},
              {"witnesses", std::move(w)}};
}

CommandResult run_command(const std::string& command, const Instance& in, const CommandOptions& opt) {
  auto it = handlers().find(command);
  if (it == handlers().end()) throw DocumentError("unknown command '" + command + "'");
  Checks checks;
  Json results = Json::object();
  structural_report(in, checks);
  if (in.valid()) it->second(in, opt, checks, results);
  CommandResult out;
  out.passed = checks.passed;
  out.doc = Json{{"command", command},
                 {"instance", in.name},
                 {"kind", in.kind},
                 {"status", pass_fail(checks.passed)},
                 {"checks", std::move(checks.list)},
                 {"results", std::move(results)}};
  return out;
}

}  // namespace kapcli
