#include "kapranov/cohomology.hpp"

#include <stdexcept>

namespace kap {

Slice degree_slice(const DgModule& M, int n) {
  Slice s;
  s.keys = k_basis_of_degree(M, n);
  for (size_t i = 0; i < s.keys.size(); ++i) s.index.emplace(s.keys[i], i);
  return s;
}

Vector to_vector(const Slice& s, const ModuleElement& v) {
  Vector x(s.keys.size());
  for (const auto& [k, c] : v.terms) {
    auto it = s.index.find(k);
    if (it == s.index.end()) throw std::invalid_argument("to_vector: element has a term outside the slice");
    x[it->second] = c;
  }
  return x;
}

ModuleElement from_vector(const Slice& s, const Vector& x) {
  ModuleElement v;
  for (size_t i = 0; i < x.size(); ++i) v.add(s.keys[i].first, s.keys[i].second, x[i]);
  return v;
}

Matrix differential_matrix(const DgModule& M, int n) {
  Slice src = degree_slice(M, n);
  Slice dst = degree_slice(M, n + 1);
  Matrix d(dst.keys.size(), src.keys.size());
  for (size_t j = 0; j < src.keys.size(); ++j) {
    ModuleElement e;
    e.add(src.keys[j].first, src.keys[j].second, 1);
    Vector col = to_vector(dst, apply_module_differential(M, e));
    for (size_t i = 0; i < col.size(); ++i) d(i, j) = col[i];
  }
  return d;
}

std::vector<ModuleElement> cohomology_basis(const DgModule& M, int n) {
  Slice s = degree_slice(M, n);
  Matrix dn = differential_matrix(M, n);
  Matrix dprev = differential_matrix(M, n - 1);
  std::vector<Vector> span;
  for (size_t j = 0; j < dprev.cols; ++j) span.push_back(dprev.column(j));
  size_t current = rank(Matrix::from_columns(span, s.keys.size()));
  std::vector<ModuleElement> reps;
  for (Vector& z : kernel_basis(dn)) {
    span.push_back(z);
    size_t r = rank(Matrix::from_columns(span, s.keys.size()));
    if (r > current) {
      current = r;
      reps.push_back(from_vector(s, z));
    } else {
      span.pop_back();
    }
  }
  return reps;
}

CohomologyDims cohomology_dims(const DgModule& M, int n) {
  Matrix dn = differential_matrix(M, n);
  return {dn.cols - rank(dn), rank(differential_matrix(M, n - 1))};
}

bool is_closed(const DgModule& M, const ModuleElement& z) { return apply_module_differential(M, z).is_zero(); }

std::optional<ModuleElement> is_coboundary(const DgModule& M, const ModuleElement& z) {
  if (z.is_zero()) return ModuleElement{};
  auto deg = module_degree(M, z);
  if (!deg) throw std::invalid_argument("is_coboundary: element is not homogeneous");
  if (!is_closed(M, z)) throw std::invalid_argument("is_coboundary: element is not closed");
  Slice dst = degree_slice(M, *deg);
  auto x = solve(differential_matrix(M, *deg - 1), to_vector(dst, z));
  if (!x) return std::nullopt;
  return from_vector(degree_slice(M, *deg - 1), *x);
}

bool classes_equal(const DgModule& M, const ModuleElement& z1, const ModuleElement& z2) {
  if (!is_closed(M, z1) || !is_closed(M, z2)) throw std::invalid_argument("classes_equal: element is not closed");
  auto d1 = module_degree(M, z1);
  auto d2 = module_degree(M, z2);
  if (d1 && d2 && *d1 != *d2) throw std::invalid_argument("classes_equal: degrees differ");
  return is_coboundary(M, z1 - z2).has_value();
}

}  // namespace kap
