#pragma once

#include "kapranov/scalar.hpp"

#include <optional>
#include <vector>

namespace kap {

using Vector = std::vector<Scalar>;

// Dense row-major matrix; small sizes only.
struct Matrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<Scalar> data;

  Matrix() = default;
  Matrix(size_t r, size_t c) : rows(r), cols(c), data(r * c) {}
  Scalar& operator()(size_t i, size_t j) { return data[i * cols + j]; }
  const Scalar& operator()(size_t i, size_t j) const { return data[i * cols + j]; }
  Vector column(size_t j) const;
  static Matrix from_columns(const std::vector<Vector>& cols, size_t rows);
};

struct Echelon {
  Matrix reduced;
  std::vector<size_t> pivots;
};

// Reduced row-echelon form; pivots are taken as the first nonzero entry in
// each column, scanning columns left to right.
Echelon rref(Matrix m);

size_t rank(const Matrix& m);

// Kernel basis read off from the RREF: one vector per free column, with that
// free variable set to 1 and the other free variables 0.
std::vector<Vector> kernel_basis(const Matrix& m);

// Solution of m x = b with all free variables set to zero, if consistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

Vector mat_vec(const Matrix& m, const Vector& v);

bool is_zero(const Vector& v);

}  // namespace kap
