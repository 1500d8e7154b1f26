#include "kapranov/module.hpp"

#include <sstream>
#include <stdexcept>

namespace kap {

namespace {

Scalar signed_product(int sign, const Scalar& a, const Scalar& b) { return sign > 0 ? Scalar(a * b) : Scalar(-(a * b)); }

std::string toggle_dual(const std::string& name) {
  if (!name.empty() && name.back() == '*') return name.substr(0, name.size() - 1);
  return name + "*";
}

void require_same_algebra(const DgModule& M, const DgModule& N, const char* what) {
  if (M.algebra != N.algebra) throw std::invalid_argument(std::string(what) + ": modules over different algebras");
}

}  // namespace

ModuleElement ModuleElement::basis(int i, Scalar c) {
  ModuleElement v;
  v.add(i, 0, c);
  return v;
}

ModuleElement ModuleElement::term(int i, const AlgebraElement& a) {
  ModuleElement v;
  for (const auto& [m, c] : a.terms) v.add(i, m, c);
  return v;
}

void ModuleElement::add(int i, Mono m, const Scalar& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace({i, m}, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms.erase(it);
}

ModuleElement& ModuleElement::operator+=(const ModuleElement& o) {
  for (const auto& [k, c] : o.terms) add(k.first, k.second, c);
  return *this;
}

ModuleElement& ModuleElement::operator-=(const ModuleElement& o) {
  for (const auto& [k, c] : o.terms) add(k.first, k.second, -c);
  return *this;
}

ModuleElement ModuleElement::scaled(const Scalar& c) const {
  ModuleElement out;
  if (c == 0) return out;
  for (const auto& [k, v] : terms) out.terms.emplace(k, v * c);
  return out;
}

AlgebraElement ModuleElement::coefficient(int i) const {
  AlgebraElement a;
  for (auto it = terms.lower_bound({i, 0}); it != terms.end() && it->first.first == i; ++it)
    a.add(it->first.second, it->second);
  return a;
}

ModuleElement operator+(ModuleElement a, const ModuleElement& b) { return a += b; }
ModuleElement operator-(ModuleElement a, const ModuleElement& b) { return a -= b; }

DgModule make_module(CdgaPtr A, std::vector<BasisEntry> basis, std::vector<ModuleElement> boundary) {
  DgModule M{std::move(A), GradedBasis(std::move(basis)), std::move(boundary)};
  if (M.boundary.empty()) M.boundary.resize(M.rank());
  if (M.boundary.size() != M.rank()) throw std::invalid_argument("one boundary value per basis element is required");
  for (const auto& b : M.boundary)
    for (const auto& [k, c] : b.terms) {
      if (k.first < 0 || static_cast<size_t>(k.first) >= M.rank())
        throw std::invalid_argument("module differential refers to an unknown basis element");
      if (k.second & ~M.algebra->full_mask())
        throw std::invalid_argument("module differential uses an unknown generator");
    }
  return M;
}

std::optional<int> module_degree(const DgModule& M, const ModuleElement& v) {
  std::optional<int> deg;
  for (const auto& [k, c] : v.terms) {
    int d = key_degree(M, k);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

ModuleElement left_multiply(const AlgebraElement& a, const ModuleElement& v) {
  ModuleElement out;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [k, cv] : v.terms) {
      int s = mono_product_sign(ma, k.second);
      if (s != 0) out.add(k.first, ma | k.second, signed_product(s, ca, cv));
    }
  return out;
}

ModuleElement right_multiply(const DgModule& M, const ModuleElement& v, const AlgebraElement& a) {
  ModuleElement out;
  for (const auto& [k, cv] : v.terms)
    for (const auto& [ma, ca] : a.terms) {
      int s = mono_product_sign(k.second, ma);
      if (s == 0) continue;
      s *= parity_sign(static_cast<long>(M.degree(k.first)) * mono_degree(ma));
      out.add(k.first, k.second | ma, signed_product(s, cv, ca));
    }
  return out;
}

ModuleElement apply_module_differential(const DgModule& M, const ModuleElement& v) {
  const CdgaPresentation& A = *M.algebra;
  ModuleElement out;
  for (const auto& [k, c] : v.terms) {
    AlgebraElement dm = apply_differential(A, AlgebraElement::monomial(k.second, c));
    for (const auto& [m, cm] : dm.terms) out.add(k.first, m, cm);
    AlgebraElement coeff = AlgebraElement::monomial(k.second, c * parity_sign(mono_degree(k.second)));
    out += left_multiply(coeff, M.boundary[k.first]);
  }
  return out;
}

Report validate_dg_module(const DgModule& M) {
  Report r("module_d_squared");
  for (size_t i = 0; i < M.rank(); ++i) {
    ++r.cases;
    for (const auto& [k, c] : M.boundary[i].terms)
      if (key_degree(M, k) != M.degree(i) + 1)
        r.fail("degree(" + M.basis.name(i) + "," + M.basis.name(k.first) + ")",
               "entry " + mono_to_string(*M.algebra, k.second) + " has degree " +
                   std::to_string(mono_degree(k.second)) + ", expected " +
                   std::to_string(M.degree(i) + 1 - M.degree(k.first)));
    ModuleElement dd = apply_module_differential(M, M.boundary[i]);
    if (!dd.is_zero()) r.fail("d(d(" + M.basis.name(i) + "))", to_string(M, dd));
  }
  return r;
}

AlgebraElement pairing(const DgModule& M, const ModuleElement& beta, const ModuleElement& omega) {
  AlgebraElement out;
  for (const auto& [kb, cb] : beta.terms)
    for (const auto& [kw, cw] : omega.terms) {
      if (kb.first != kw.first) continue;
      int s = mono_product_sign(kw.second, kb.second);
      if (s == 0) continue;
      long e = static_cast<long>(mono_degree(kb.second) - M.degree(kb.first)) * mono_degree(kw.second);
      s *= parity_sign(e);
      out.add(kw.second | kb.second, signed_product(s, cb, cw));
    }
  return out;
}

DgModule dual_module(const DgModule& M) {
  std::vector<BasisEntry> entries;
  for (const auto& e : M.basis.entries()) entries.push_back({toggle_dual(e.name), -e.degree});
  std::vector<ModuleElement> boundary(M.rank());
  for (size_t k = 0; k < M.rank(); ++k) {
    int s = -parity_sign(-M.degree(k));
    ModuleElement beta = ModuleElement::basis(static_cast<int>(k));
    for (size_t j = 0; j < M.rank(); ++j) {
      AlgebraElement v = pairing(M, beta, M.boundary[j]);
      for (const auto& [m, c] : v.terms) boundary[k].add(static_cast<int>(j), m, s * c);
    }
  }
  return make_module(M.algebra, std::move(entries), std::move(boundary));
}

ModuleElement tensor_elements(const DgModule& M, const DgModule& N, const ModuleElement& x,
                              const ModuleElement& y) {
  ModuleElement out;
  const int nr = static_cast<int>(N.rank());
  for (const auto& [kx, cx] : x.terms)
    for (const auto& [ky, cy] : y.terms) {
      int s = mono_product_sign(kx.second, ky.second);
      if (s == 0) continue;
      s *= parity_sign(static_cast<long>(M.degree(kx.first)) * mono_degree(ky.second));
      out.add(kx.first * nr + ky.first, kx.second | ky.second, signed_product(s, cx, cy));
    }
  return out;
}

DgModule tensor_module(const DgModule& M, const DgModule& N) {
  require_same_algebra(M, N, "tensor");
  std::vector<BasisEntry> entries;
  for (size_t i = 0; i < M.rank(); ++i)
    for (size_t j = 0; j < N.rank(); ++j)
      entries.push_back({M.basis.name(i) + "(x)" + N.basis.name(j), M.degree(i) + N.degree(j)});
  std::vector<ModuleElement> boundary;
  for (size_t i = 0; i < M.rank(); ++i)
    for (size_t j = 0; j < N.rank(); ++j) {
      ModuleElement mi = ModuleElement::basis(static_cast<int>(i));
      ModuleElement nj = ModuleElement::basis(static_cast<int>(j));
      ModuleElement b = tensor_elements(M, N, M.boundary[i], nj);
      b += tensor_elements(M, N, mi, N.boundary[j]).scaled(parity_sign(M.degree(i)));
      boundary.push_back(std::move(b));
    }
  return make_module(M.algebra, std::move(entries), std::move(boundary));
}

ModuleElement apply_hom(const DgModule& M, const DgModule& N, const ModuleElement& H, const ModuleElement& v) {
  ModuleElement out;
  const int nr = static_cast<int>(N.rank());
  for (const auto& [kh, ch] : H.terms) {
    const int i = kh.first / nr;
    const int j = kh.first % nr;
    const int hdeg = N.degree(j) - M.degree(i);
    for (const auto& [kv, cv] : v.terms) {
      if (kv.first != i) continue;
      int s = mono_product_sign(kh.second, kv.second);
      if (s == 0) continue;
      s *= parity_sign(static_cast<long>(hdeg) * mono_degree(kv.second));
      out.add(j, kh.second | kv.second, signed_product(s, ch, cv));
    }
  }
  return out;
}

DgModule hom_module(const DgModule& M, const DgModule& N) {
  require_same_algebra(M, N, "hom");
  const int mr = static_cast<int>(M.rank());
  const int nr = static_cast<int>(N.rank());
  std::vector<BasisEntry> entries;
  for (int i = 0; i < mr; ++i)
    for (int j = 0; j < nr; ++j) entries.push_back({M.basis.name(i) + "->" + N.basis.name(j), N.degree(j) - M.degree(i)});
  std::vector<ModuleElement> boundary;
  for (int i = 0; i < mr; ++i)
    for (int j = 0; j < nr; ++j) {
      const int hdeg = N.degree(j) - M.degree(i);
      ModuleElement H = ModuleElement::basis(i * nr + j);
      ModuleElement b;
      for (int p = 0; p < mr; ++p) {
        ModuleElement mp = ModuleElement::basis(p);
        ModuleElement val = apply_module_differential(N, apply_hom(M, N, H, mp));
        val -= apply_hom(M, N, H, M.boundary[p]).scaled(parity_sign(hdeg));
        for (const auto& [k, c] : val.terms) b.add(p * nr + k.first, k.second, c);
      }
      boundary.push_back(std::move(b));
    }
  return make_module(M.algebra, std::move(entries), std::move(boundary));
}

ModuleElement contract(const DgModule& omega, const DgModule& E, const ModuleElement& b, const ModuleElement& w) {
  require_same_algebra(omega, E, "contract");
  const int er = static_cast<int>(E.rank());
  const int limit = static_cast<int>(omega.rank()) * er;
  ModuleElement out;
  for (const auto& [kb, cb] : b.terms) {
    if (kb.first >= static_cast<int>(omega.rank())) throw std::invalid_argument("contract: covector outside the dual basis");
    const int bdeg = mono_degree(kb.second) - omega.degree(kb.first);
    for (const auto& [kw, cw] : w.terms) {
      if (kw.first >= limit) throw std::invalid_argument("contract: element outside the tensor basis");
      if (kw.first / er != kb.first) continue;
      int s = mono_product_sign(kw.second, kb.second);
      if (s == 0) continue;
      s *= parity_sign(static_cast<long>(bdeg) * mono_degree(kw.second));
      out.add(kw.first % er, kw.second | kb.second, signed_product(s, cb, cw));
    }
  }
  return out;
}

ModuleMorphism identity_morphism(const ModulePtr& M) {
  ModuleMorphism f{M, M, 0, {}};
  for (size_t i = 0; i < M->rank(); ++i) f.images.push_back(ModuleElement::basis(static_cast<int>(i)));
  return f;
}

ModuleElement apply_morphism(const ModuleMorphism& f, const ModuleElement& v) {
  ModuleElement out;
  for (const auto& [k, c] : v.terms) {
    Scalar coeff = c * parity_sign(static_cast<long>(f.degree) * mono_degree(k.second));
    out += left_multiply(AlgebraElement::monomial(k.second, coeff), f.images.at(k.first));
  }
  return out;
}

ModuleMorphism compose(const ModuleMorphism& g, const ModuleMorphism& f) {
  if (f.target->rank() != g.source->rank()) throw std::invalid_argument("compose: morphisms are not composable");
  ModuleMorphism h{f.source, g.target, f.degree + g.degree, {}};
  for (const auto& img : f.images) h.images.push_back(apply_morphism(g, img));
  return h;
}

Report validate_morphism(const ModuleMorphism& f) {
  Report r("dg_morphism");
  for (size_t i = 0; i < f.source->rank(); ++i) {
    ++r.cases;
    ModuleElement lhs = apply_module_differential(*f.target, f.images[i]);
    lhs -= apply_morphism(f, f.source->boundary[i]).scaled(parity_sign(f.degree));
    if (!lhs.is_zero()) r.fail(f.source->basis.name(i), to_string(*f.target, lhs));
    for (const auto& [k, c] : f.images[i].terms)
      if (key_degree(*f.target, k) != f.source->degree(i) + f.degree) {
        r.fail("degree(" + f.source->basis.name(i) + ")", to_string(*f.target, f.images[i]));
        break;
      }
  }
  return r;
}

bool is_dg_morphism(const ModuleMorphism& f) { return validate_morphism(f).passed(); }

ModuleElement morphism_to_hom(const ModuleMorphism& f) {
  ModuleElement out;
  const int nr = static_cast<int>(f.target->rank());
  for (size_t i = 0; i < f.images.size(); ++i)
    for (const auto& [k, c] : f.images[i].terms) out.add(static_cast<int>(i) * nr + k.first, k.second, c);
  return out;
}

ModuleMorphism dual_morphism(const ModuleMorphism& f, const ModulePtr& dual_of_target, const ModulePtr& dual_of_source) {
  if (f.degree != 0) throw std::invalid_argument("dual_morphism: only degree-0 maps are supported");
  ModuleMorphism out{dual_of_target, dual_of_source, 0, std::vector<ModuleElement>(f.target->rank())};
  for (size_t j = 0; j < f.images.size(); ++j)
    for (const auto& [k, c] : f.images[j].terms) {
      long e = static_cast<long>(-f.target->degree(k.first)) * mono_degree(k.second);
      out.images[k.first].add(static_cast<int>(j), k.second, c * parity_sign(e));
    }
  return out;
}

std::vector<ModKey> k_basis(const DgModule& M) {
  std::vector<ModKey> out;
  auto monos = all_monomials(*M.algebra);
  for (size_t i = 0; i < M.rank(); ++i)
    for (Mono m : monos) out.push_back({static_cast<int>(i), m});
  return out;
}

std::vector<ModKey> k_basis_of_degree(const DgModule& M, int degree) {
  std::vector<ModKey> out;
  for (const auto& k : k_basis(M))
    if (key_degree(M, k) == degree) out.push_back(k);
  return out;
}

std::string key_to_string(const DgModule& M, const ModKey& k) {
  if (k.second == 0) return M.basis.name(k.first);
  return mono_to_string(*M.algebra, k.second) + "." + M.basis.name(k.first);
}

std::string to_string(const DgModule& M, const ModuleElement& v) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : v.terms) {
    Scalar mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1) os << to_string(mag) << "*";
    os << key_to_string(M, k);
  }
  return os.str();
}

}  // namespace kap
