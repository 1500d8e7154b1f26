#include "document.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace kapcli {

using namespace kap;

namespace {

Scalar scalar_of(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (!j.is_string()) throw DocumentError(where + ": expected a rational written as \"p/q\"");
  try {
    return parse_scalar(j.get<std::string>());
  } catch (const std::exception&) {
    throw DocumentError(where + ": cannot parse rational '" + j.get<std::string>() + "'");
  }
}

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw DocumentError(where + ": missing '" + key + "'");
  return j.at(key);
}

std::vector<std::string> names_of(const Json& j, const std::string& where) {
  if (!j.is_array()) throw DocumentError(where + ": expected a list of names");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& e : j) {
    if (!e.is_string()) throw DocumentError(where + ": names must be strings");
    if (!seen.insert(e.get<std::string>()).second) throw DocumentError(where + ": duplicate name '" + e.get<std::string>() + "'");
    out.push_back(e.get<std::string>());
  }
  return out;
}

int index_in(const std::vector<std::string>& names, const std::string& name, const std::string& where) {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  throw DocumentError(where + ": unknown name '" + name + "'");
}

// {"name": "p/q", ...} over the given basis.
Coords coords_of(const Json& j, const std::vector<std::string>& names, const std::string& where) {
  if (!j.is_object()) throw DocumentError(where + ": expected an object of coordinates");
  Coords c(names.size());
  for (const auto& [k, v] : j.items()) c[index_in(names, k, where)] = scalar_of(v, where + "." + k);
  return c;
}

LieAlgebraData lie_of(const Json& j, const std::string& where) {
  LieAlgebraData g(names_of(field(j, "basis", where), where + ".basis"));
  if (!j.contains("brackets")) return g;
  for (const auto& b : j.at("brackets")) {
    const std::string w = where + ".brackets";
    if (!b.is_array() || b.size() != 3 || !b[0].is_string() || !b[1].is_string())
      throw DocumentError(w + ": each entry is [x, y, {coordinates}]");
    const int x = index_in(g.basis, b[0].get<std::string>(), w);
    const int y = index_in(g.basis, b[1].get<std::string>(), w);
    if (x == y) throw DocumentError(w + ": [" + g.basis[x] + "," + g.basis[x] + "] must be zero");
    g.set_bracket(x, y, coords_of(b[2], g.basis, w + "[" + g.basis[x] + "," + g.basis[y] + "]"));
  }
  return g;
}

AlgebraElement mono_of(const CdgaPresentation& A, const Json& gens, const std::string& where) {
  if (!gens.is_array()) throw DocumentError(where + ": a monomial is a list of generator names");
  AlgebraElement a = AlgebraElement::one();
  for (const auto& g : gens) {
    if (!g.is_string()) throw DocumentError(where + ": generator names must be strings");
    const int i = A.generators.index_of(g.get<std::string>());
    if (i < 0) throw DocumentError(where + ": unknown generator '" + g.get<std::string>() + "'");
    a = multiply(a, AlgebraElement::generator(i));
  }
  return a;
}

// [[coeff, [generators]], ...]
AlgebraElement algebra_element_of(const CdgaPresentation& A, const Json& j, const std::string& where) {
  if (!j.is_array()) throw DocumentError(where + ": expected a list of [coeff, [generators]] terms");
  AlgebraElement out;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2) throw DocumentError(where + ": each term is [coeff, [generators]]");
    out += mono_of(A, t[1], where).scaled(scalar_of(t[0], where));
  }
  return out;
}

// [[coeff, [generators], basis], ...]
ModuleElement module_element_of(const DgModule& M, const Json& j, const std::string& where) {
  if (!j.is_array()) throw DocumentError(where + ": expected a list of [coeff, [generators], basis] terms");
  ModuleElement out;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[2].is_string())
      throw DocumentError(where + ": each term is [coeff, [generators], basis]");
    const int i = M.basis.index_of(t[2].get<std::string>());
    if (i < 0) throw DocumentError(where + ": unknown basis element '" + t[2].get<std::string>() + "'");
    out += ModuleElement::term(i, mono_of(*M.algebra, t[1], where).scaled(scalar_of(t[0], where)));
  }
  return out;
}

// [[coeff, [generators], omega basis, B basis], ...] in Omega (x) B.
ModuleElement tensor_value_of(const DgModule& omega, const DgModule& B, const Json& j, const std::string& where) {
  if (!j.is_array()) throw DocumentError(where + ": expected a list of [coeff, [generators], omega, b] terms");
  ModuleElement out;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 4 || !t[2].is_string() || !t[3].is_string())
      throw DocumentError(where + ": each term is [coeff, [generators], omega, b]");
    const int w = omega.basis.index_of(t[2].get<std::string>());
    const int b = B.basis.index_of(t[3].get<std::string>());
    if (w < 0 || b < 0) throw DocumentError(where + ": unknown basis element in term");
    out += ModuleElement::term(w * static_cast<int>(B.rank()) + b,
                               mono_of(*omega.algebra, t[1], where).scaled(scalar_of(t[0], where)));
  }
  return out;
}

Derivation derivation_of(const CdgaPtr& A, const ModulePtr& omega, const Json& j, const std::string& where) {
  if (!j.is_object()) throw DocumentError(where + ": expected {generator: value}");
  Derivation d = zero_derivation(A, omega, 0);
  for (const auto& [k, v] : j.items()) {
    const int i = A->generators.index_of(k);
    if (i < 0) throw DocumentError(where + ": unknown generator '" + k + "'");
    d.values[i] = module_element_of(*omega, v, where + "." + k);
  }
  return d;
}

bool all_passed(const std::vector<Report>& rs) {
  for (const auto& r : rs)
    if (!r.passed()) return false;
  return true;
}

Report renamed(Report r, const std::string& name) {
  r.check = name;
  return r;
}

void add_module_checks(Instance& in) {
  in.structural.push_back(renamed(validate_cdga(*in.algebra), "cdga_d_squared"));
  in.structural.push_back(renamed(validate_dg_module(*in.omega), "omega_d_squared"));
  in.structural.push_back(renamed(validate_dg_module(*in.B), "dual_d_squared"));
}

void build_lie_algebra(Instance& in, const Json& sec) {
  LieAlgebraData g = lie_of(sec, "lie_algebra");
  in.structural.push_back(validate_lie_algebra(g));
  if (!all_passed(in.structural)) return;
  in.algebra = std::make_shared<const CdgaPresentation>(ce_algebra(g));
  KaehlerSetup k = kaehler_setup(in.algebra);
  in.omega = k.omega;
  in.B = k.B;
  add_module_checks(in);
  in.structural.push_back(renamed(validate_dg_derivation(k.delta), "derivation_compatibility"));
  in.delta = k.delta;
  in.connections.push_back(make_connection(k.delta, k.B));
}

void build_lie_pair(Instance& in, const Json& sec) {
  LieAlgebraData g = lie_of(field(sec, "lie_algebra", "lie_pair"), "lie_pair.lie_algebra");
  in.structural.push_back(validate_lie_algebra(g));
  if (!all_passed(in.structural)) return;
  std::vector<int> sub;
  for (const auto& n : names_of(field(sec, "subalgebra", "lie_pair"), "lie_pair.subalgebra"))
    sub.push_back(index_in(g.basis, n, "lie_pair.subalgebra"));
  std::vector<std::string> quotient;
  for (size_t i = 0; i < g.dim(); ++i)
    if (std::find(sub.begin(), sub.end(), static_cast<int>(i)) == sub.end()) quotient.push_back(g.basis[i]);
  const Json& js = field(sec, "splittings", "lie_pair");
  if (!js.is_array() || js.empty()) throw DocumentError("lie_pair.splittings: at least one splitting is required");
  std::vector<Splitting> splittings;
  for (size_t s = 0; s < js.size(); ++s) {
    const std::string w = "lie_pair.splittings[" + std::to_string(s) + "]";
    Splitting j;
    for (const auto& q : quotient) j.push_back(coords_of(field(js[s], q, w), g.basis, w + "." + q));
    splittings.push_back(std::move(j));
  }
  LiePairData p{g, sub, splittings[0]};
  in.structural.push_back(renamed(validate_lie_pair(p), "lie_pair"));
  if (!all_passed(in.structural)) return;
  LiePairSetup s;
  try {
    s = lie_pair_setup(p);
  } catch (const std::invalid_argument& e) {
    Report r("splitting");
    r.fail("splittings[0]", e.what());
    in.structural.push_back(r);
    return;
  }
  for (size_t i = 0; i < splittings.size(); ++i) {
    Report r = validate_splitting(s, splittings[i]);
    for (auto& w : r.witnesses) w.location = "splittings[" + std::to_string(i) + "]." + w.location;
    in.structural.push_back(r);
  }
  in.algebra = s.algebra;
  in.omega = s.omega;
  in.B = s.B;
  add_module_checks(in);
  in.structural.push_back(renamed(validate_dg_derivation(s.delta), "derivation_compatibility"));
  if (!all_passed(in.structural)) return;
  in.delta = s.delta;
  if (splittings.size() > 1) {
    in.delta2 = lie_pair_derivation(s, splittings[1]);
    in.structural.push_back(renamed(validate_dg_derivation(*in.delta2), "second_derivation_compatibility"));
    in.homotopy = splitting_homotopy(s, splittings[0], splittings[1]);
  }
  in.connections.push_back(lie_pair_connection(s, s.delta, {}));
  if (sec.contains("connections")) {
    const size_t nb = quotient.size();
    for (size_t c = 0; c < sec.at("connections").size(); ++c) {
      const Json& jc = sec.at("connections")[c];
      const std::string w = "lie_pair.connections[" + std::to_string(c) + "]";
      std::vector<std::vector<Coords>> choice(nb, std::vector<Coords>(nb, Coords(nb)));
      if (!jc.is_object()) throw DocumentError(w + ": expected {beta: {b: {coordinates}}}");
      for (const auto& [beta, rows] : jc.items()) {
        const int bi = index_in(quotient, beta, w);
        for (const auto& [b, v] : rows.items()) choice[bi][index_in(quotient, b, w)] = coords_of(v, quotient, w);
      }
      in.connections.push_back(lie_pair_connection(s, s.delta, choice));
    }
  }
}

void build_linear_map_object(Instance& in, const Json& sec) {
  LieAlgebraData g = lie_of(field(sec, "lie_algebra", "linear_map_object"), "linear_map_object.lie_algebra");
  in.structural.push_back(validate_lie_algebra(g));
  if (!all_passed(in.structural)) return;
  const Json& jm = field(sec, "module", "linear_map_object");
  std::vector<std::string> basis = names_of(field(jm, "basis", "linear_map_object.module"), "linear_map_object.module.basis");
  std::vector<std::vector<Coords>> action(g.dim(), std::vector<Coords>(basis.size(), Coords(basis.size())));
  if (jm.contains("action"))
    for (const auto& a : jm.at("action")) {
      const std::string w = "linear_map_object.module.action";
      if (!a.is_array() || a.size() != 3 || !a[0].is_string() || !a[1].is_string())
        throw DocumentError(w + ": each entry is [x, e, {coordinates}]");
      action[index_in(g.basis, a[0].get<std::string>(), w)][index_in(basis, a[1].get<std::string>(), w)] =
          coords_of(a[2], basis, w);
    }
  std::vector<Coords> psi(basis.size(), Coords(g.dim()));
  const Json& jp = field(sec, "psi", "linear_map_object");
  for (const auto& [e, v] : jp.items()) psi[index_in(basis, e, "linear_map_object.psi")] = coords_of(v, g.basis, "linear_map_object.psi." + e);
  LinearMapObject o{g, basis, action, psi};
  in.structural.push_back(renamed(validate_linear_map_object(o), "linear_map_object"));
  if (!all_passed(in.structural)) return;
  LinearMapSetup s = linear_map_object(o);
  in.algebra = s.algebra;
  in.omega = s.omega;
  in.B = s.B;
  add_module_checks(in);
  in.structural.push_back(renamed(validate_dg_derivation(s.delta), "derivation_compatibility"));
  if (!all_passed(in.structural)) return;
  in.delta = s.delta;
  in.connections.push_back(s.connection);
  in.coadjoint = coadjoint_module(o, s);
  in.structural.push_back(renamed(validate_dg_module(*in.coadjoint->module), "coadjoint_d_squared"));
  in.lm_object = o;
  in.lm_setup = s;
}

void build_raw(Instance& in, const Json& sec) {
  std::vector<std::string> gens = names_of(field(sec, "generators", "raw"), "raw.generators");
  if (gens.size() > 31) throw DocumentError("raw.generators: at most 31 generators are supported");
  // The differential refers to generators, so parse it against a provisional algebra.
  auto bare = std::make_shared<CdgaPresentation>(make_cdga(gens, std::vector<AlgebraElement>(gens.size())));
  std::vector<AlgebraElement> diff(gens.size());
  if (sec.contains("differential"))
    for (const auto& [k, v] : sec.at("differential").items())
      diff[index_in(gens, k, "raw.differential")] = algebra_element_of(*bare, v, "raw.differential." + k);
  in.algebra = std::make_shared<const CdgaPresentation>(make_cdga(gens, diff));
  const Json& jo = field(sec, "omega", "raw");
  std::vector<BasisEntry> entries;
  for (const auto& e : field(jo, "basis", "raw.omega")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_number_integer())
      throw DocumentError("raw.omega.basis: each entry is [name, degree]");
    entries.push_back({e[0].get<std::string>(), e[1].get<int>()});
  }
  std::vector<std::string> onames;
  for (const auto& e : entries) onames.push_back(e.name);
  {
    std::set<std::string> seen(onames.begin(), onames.end());
    if (seen.size() != onames.size()) throw DocumentError("raw.omega.basis: duplicate name");
  }
  DgModule shell = make_module(in.algebra, entries, std::vector<ModuleElement>(entries.size()));
  std::vector<ModuleElement> boundary(entries.size());
  if (jo.contains("differential"))
    for (const auto& [k, v] : jo.at("differential").items())
      boundary[index_in(onames, k, "raw.omega.differential")] = module_element_of(shell, v, "raw.omega.differential." + k);
  in.omega = std::make_shared<const DgModule>(make_module(in.algebra, entries, boundary));
  in.B = std::make_shared<const DgModule>(dual_module(*in.omega));
  add_module_checks(in);
  Derivation d = derivation_of(in.algebra, in.omega, field(sec, "derivation", "raw"), "raw.derivation");
  in.structural.push_back(renamed(validate_dg_derivation(d), "derivation_compatibility"));
  std::optional<Derivation> d2;
  if (sec.contains("derivation2")) {
    d2 = derivation_of(in.algebra, in.omega, sec.at("derivation2"), "raw.derivation2");
    in.structural.push_back(renamed(validate_dg_derivation(*d2), "second_derivation_compatibility"));
  }
  if (!all_passed(in.structural)) return;
  in.delta = d;
  in.delta2 = d2;
  in.connections.push_back(make_connection(d, in.B));
  if (sec.contains("connections"))
    for (size_t c = 0; c < sec.at("connections").size(); ++c) {
      const Json& jc = sec.at("connections")[c];
      const std::string w = "raw.connections[" + std::to_string(c) + "]";
      std::vector<ModuleElement> values(in.B->rank());
      if (!jc.is_object()) throw DocumentError(w + ": expected {b: value}");
      for (const auto& [b, v] : jc.items()) {
        const int bi = in.B->basis.index_of(b);
        if (bi < 0) throw DocumentError(w + ": unknown basis element '" + b + "'");
        values[bi] = tensor_value_of(*in.omega, *in.B, v, w + "." + b);
      }
      in.connections.push_back(make_connection(d, in.B, values));
    }
}

}  // namespace

bool Instance::valid() const {
  return delta.has_value() && all_passed(structural);
}

Instance build_instance(const Json& doc) {
  if (!doc.is_object()) throw DocumentError("document: expected a JSON object");
  if (!doc.contains("field") || doc.at("field") != "rational")
    throw DocumentError("document: 'field' must be \"rational\"");
  Instance in;
  in.name = doc.value("name", std::string("unnamed"));
  if (doc.contains("options") && doc.at("options").contains("max_arity")) {
    const Json& m = doc.at("options").at("max_arity");
    if (!m.is_number_integer() || m.get<int>() < 1) throw DocumentError("options.max_arity: expected a positive integer");
    in.max_arity = m.get<int>();
  }
  const char* kinds[] = {"lie_algebra", "lie_pair", "linear_map_object", "raw"};
  int found = 0;
  for (const char* k : kinds)
    if (doc.contains(k)) {
      ++found;
      in.kind = k;
    }
  if (found != 1)
    throw DocumentError("document: exactly one of lie_algebra, lie_pair, linear_map_object, raw is required");
  const Json& sec = doc.at(in.kind);
  if (in.kind == "lie_algebra") build_lie_algebra(in, sec);
  if (in.kind == "lie_pair") build_lie_pair(in, sec);
  if (in.kind == "linear_map_object") build_linear_map_object(in, sec);
  if (in.kind == "raw") build_raw(in, sec);
  return in;
}

Instance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DocumentError("cannot open '" + path + "'");
  return build_instance(Json::parse(f));
}

}  // namespace kapcli
