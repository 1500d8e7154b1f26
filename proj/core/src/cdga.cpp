#include "kapranov/cdga.hpp"

#include <sstream>
#include <stdexcept>

namespace kap {

int mono_product_sign(Mono a, Mono b) {
  if (a & b) return 0;
  int swaps = 0;
  for (Mono rest = b; rest; rest &= rest - 1) {
    int j = __builtin_ctz(rest);
    swaps += __builtin_popcount(j == 31 ? 0u : (a >> (j + 1)));
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

AlgebraElement AlgebraElement::one() { return monomial(0); }

AlgebraElement AlgebraElement::generator(int i) { return monomial(Mono(1) << i); }

AlgebraElement AlgebraElement::monomial(Mono m, Scalar c) {
  AlgebraElement a;
  a.add(m, c);
  return a;
}

void AlgebraElement::add(Mono m, const Scalar& c) {
  if (c == 0) return;
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms.erase(it);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (const auto& [m, c] : o.terms) add(m, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (const auto& [m, c] : o.terms) add(m, -c);
  return *this;
}

AlgebraElement AlgebraElement::operator-() const { return scaled(Scalar(-1)); }

AlgebraElement AlgebraElement::scaled(const Scalar& c) const {
  AlgebraElement out;
  if (c == 0) return out;
  for (const auto& [m, v] : terms) out.terms.emplace(m, v * c);
  return out;
}

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      int s = mono_product_sign(ma, mb);
      if (s != 0) out.add(ma | mb, s > 0 ? Scalar(ca * cb) : Scalar(-(ca * cb)));
    }
  return out;
}

int algebra_degree(const AlgebraElement& a) {
  int deg = -1;
  for (const auto& [m, c] : a.terms) {
    int d = mono_degree(m);
    if (deg >= 0 && d != deg) return -1;
    deg = d;
  }
  return deg;
}

CdgaPresentation make_cdga(const std::vector<std::string>& names, std::vector<AlgebraElement> diff) {
  if (names.size() > 31) throw std::invalid_argument("at most 31 generators are supported");
  if (diff.size() != names.size()) throw std::invalid_argument("one differential value per generator is required");
  std::vector<BasisEntry> entries;
  for (const auto& n : names) entries.push_back({n, 1});
  CdgaPresentation A{GradedBasis(std::move(entries)), std::move(diff)};
  for (size_t i = 0; i < A.diff.size(); ++i)
    for (const auto& [m, c] : A.diff[i].terms)
      if (m & ~A.full_mask())
        throw std::invalid_argument("differential of '" + names[i] + "' uses an unknown generator");
  return A;
}

namespace {

AlgebraElement diff_mono(const CdgaPresentation& A, Mono m) {
  if (m == 0) return {};
  int first = __builtin_ctz(m);
  Mono rest = m & (m - 1);
  AlgebraElement restel = AlgebraElement::monomial(rest);
  AlgebraElement out = multiply(A.diff[first], restel);
  out -= multiply(AlgebraElement::generator(first), diff_mono(A, rest));
  return out;
}

}  // namespace

AlgebraElement apply_differential(const CdgaPresentation& A, const AlgebraElement& a) {
  AlgebraElement out;
  for (const auto& [m, c] : a.terms) out += diff_mono(A, m).scaled(c);
  return out;
}

Report validate_cdga(const CdgaPresentation& A) {
  Report r("d_squared");
  for (size_t i = 0; i < A.rank(); ++i) {
    ++r.cases;
    if (algebra_degree(A.diff[i]) != 2 && !A.diff[i].is_zero())
      r.fail("d(" + A.generators.name(i) + ")", "not of degree 2: " + to_string(A, A.diff[i]));
    AlgebraElement dd = apply_differential(A, A.diff[i]);
    if (!dd.is_zero()) r.fail("d(d(" + A.generators.name(i) + "))", to_string(A, dd));
  }
  return r;
}

std::vector<Mono> monomials_of_degree(const CdgaPresentation& A, int degree) {
  std::vector<Mono> out;
  for (Mono m = 0; m <= A.full_mask(); ++m) {
    if (mono_degree(m) == degree) out.push_back(m);
    if (m == A.full_mask()) break;
  }
  return out;
}

std::vector<Mono> all_monomials(const CdgaPresentation& A) {
  std::vector<Mono> out;
  for (Mono m = 0;; ++m) {
    out.push_back(m);
    if (m == A.full_mask()) break;
  }
  return out;
}

std::string mono_to_string(const CdgaPresentation& A, Mono m) {
  if (m == 0) return "1";
  std::string s;
  for (Mono rest = m; rest; rest &= rest - 1) {
    if (!s.empty()) s += "^";
    s += A.generators.name(__builtin_ctz(rest));
  }
  return s;
}

std::string to_string(const CdgaPresentation& A, const AlgebraElement& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : a.terms) {
    Scalar mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (m == 0) {
      os << to_string(mag);
    } else {
      if (mag != 1) os << to_string(mag) << "*";
      os << mono_to_string(A, m);
    }
  }
  return os.str();
}

LieAlgebraData::LieAlgebraData(std::vector<std::string> names) : basis(std::move(names)) {
  constants.assign(basis.size() * basis.size() * basis.size(), Scalar(0));
}

void LieAlgebraData::set_bracket(size_t i, size_t j, const std::vector<Scalar>& v) {
  const size_t n = dim();
  if (i >= n || j >= n || v.size() != n) throw std::invalid_argument("set_bracket: index out of range");
  for (size_t k = 0; k < n; ++k) {
    constants[(i * n + j) * n + k] = v[k];
    constants[(j * n + i) * n + k] = -v[k];
  }
}

std::vector<Scalar> LieAlgebraData::bracket(const std::vector<Scalar>& u, const std::vector<Scalar>& v) const {
  const size_t n = dim();
  std::vector<Scalar> out(n);
  for (size_t i = 0; i < n; ++i) {
    if (u[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      if (v[j] == 0) continue;
      Scalar uv = u[i] * v[j];
      for (size_t k = 0; k < n; ++k)
        if (c(i, j, k) != 0) out[k] += uv * c(i, j, k);
    }
  }
  return out;
}

int LieAlgebraData::index_of(const std::string& name) const {
  for (size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == name) return static_cast<int>(i);
  return -1;
}

Report validate_lie_algebra(const LieAlgebraData& g) {
  Report r("jacobi");
  const size_t n = g.dim();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        if (g.c(i, j, k) != -g.c(j, i, k))
          r.fail("(" + g.basis[i] + "," + g.basis[j] + "," + g.basis[k] + ")", "structure constants not antisymmetric");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k)
        for (size_t l = 0; l < n; ++l) {
          ++r.cases;
          Scalar s = 0;
          for (size_t m = 0; m < n; ++m)
            s += g.c(i, j, m) * g.c(m, k, l) + g.c(j, k, m) * g.c(m, i, l) + g.c(k, i, m) * g.c(m, j, l);
          if (s != 0)
            r.fail("(" + g.basis[i] + "," + g.basis[j] + "," + g.basis[k] + "," + g.basis[l] + ")", to_string(s));
        }
  return r;
}

CdgaPresentation ce_presentation(const LieAlgebraData& g) {
  const size_t n = g.dim();
  std::vector<std::string> names;
  std::vector<AlgebraElement> diff(n);
  for (const auto& b : g.basis) names.push_back(b + "*");
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        diff[k].add((Mono(1) << i) | (Mono(1) << j), -g.c(i, j, k));
  return make_cdga(names, std::move(diff));
}

CdgaPresentation ce_algebra(const LieAlgebraData& g) {
  Report r = validate_lie_algebra(g);
  if (!r.passed())
    throw std::invalid_argument("Jacobi identity fails at " + r.witnesses.front().location);
  return ce_presentation(g);
}

}  // namespace kap
