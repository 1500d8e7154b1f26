#pragma once

#include "kapranov/graded.hpp"
#include "kapranov/report.hpp"
#include "kapranov/scalar.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace kap {

// Exterior monomial: bit i set means generator i is present, generators
// multiplied in increasing index order.
using Mono = std::uint32_t;

inline int mono_degree(Mono m) { return __builtin_popcount(m); }

// Sign of m1*m2 rewritten in sorted order; 0 if they share a generator.
int mono_product_sign(Mono a, Mono b);

struct AlgebraElement {
  std::map<Mono, Scalar> terms;

  AlgebraElement() = default;
  static AlgebraElement one();
  static AlgebraElement generator(int i);
  static AlgebraElement monomial(Mono m, Scalar c = Scalar(1));

  void add(Mono m, const Scalar& c);
  bool is_zero() const { return terms.empty(); }
  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement operator-() const;
  AlgebraElement scaled(const Scalar& c) const;
  bool operator==(const AlgebraElement& o) const { return terms == o.terms; }
};

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b);
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);

// Homogeneous degree, or -1 for zero / mixed elements.
int algebra_degree(const AlgebraElement& a);

struct CdgaPresentation {
  GradedBasis generators;
  std::vector<AlgebraElement> diff;  // d(generator i)

  size_t rank() const { return generators.size(); }
  Mono full_mask() const { return rank() == 32 ? ~Mono(0) : ((Mono(1) << rank()) - 1); }
};

using CdgaPtr = std::shared_ptr<const CdgaPresentation>;

CdgaPresentation make_cdga(const std::vector<std::string>& names, std::vector<AlgebraElement> diff);

AlgebraElement apply_differential(const CdgaPresentation& A, const AlgebraElement& a);

Report validate_cdga(const CdgaPresentation& A);

// All monomials of the given exterior degree, in increasing mask order.
std::vector<Mono> monomials_of_degree(const CdgaPresentation& A, int degree);
std::vector<Mono> all_monomials(const CdgaPresentation& A);

std::string mono_to_string(const CdgaPresentation& A, Mono m);
std::string to_string(const CdgaPresentation& A, const AlgebraElement& a);

struct LieAlgebraData {
  std::vector<std::string> basis;
  std::vector<Scalar> constants;  // c^k_{ij} at (i*n + j)*n + k

  LieAlgebraData() = default;
  explicit LieAlgebraData(std::vector<std::string> names);

  size_t dim() const { return basis.size(); }
  const Scalar& c(size_t i, size_t j, size_t k) const { return constants[(i * dim() + j) * dim() + k]; }
  // Sets [i,j] = sum_k v_k x_k and [j,i] = -[i,j].
  void set_bracket(size_t i, size_t j, const std::vector<Scalar>& v);
  std::vector<Scalar> bracket(const std::vector<Scalar>& u, const std::vector<Scalar>& v) const;
  int index_of(const std::string& name) const;
};

// Checks antisymmetry and the Jacobi identity; locates the violating (i,j,k,l).
Report validate_lie_algebra(const LieAlgebraData& g);

// Chevalley-Eilenberg algebra without the Jacobi check.
CdgaPresentation ce_presentation(const LieAlgebraData& g);

// Chevalley-Eilenberg algebra with generators named "<x>*" and
// (d xi)(u,v) = -xi([u,v]). Throws std::invalid_argument if Jacobi fails.
CdgaPresentation ce_algebra(const LieAlgebraData& g);

}  // namespace kap
