#include "kapranov/linalg.hpp"

#include <stdexcept>

namespace kap {

Vector Matrix::column(size_t j) const {
  Vector out(rows);
  for (size_t i = 0; i < rows; ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, size_t rows) {
  Matrix m(rows, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("from_columns: ragged columns");
    for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Echelon rref(Matrix m) {
  Echelon out;
  size_t row = 0;
  for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
    size_t piv = row;
    while (piv < m.rows && m(piv, col) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != row)
      for (size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(row, j));
    Scalar inv = 1 / m(row, col);
    for (size_t j = col; j < m.cols; ++j) m(row, j) *= inv;
    for (size_t i = 0; i < m.rows; ++i) {
      if (i == row || m(i, col) == 0) continue;
      Scalar f = m(i, col);
      for (size_t j = col; j < m.cols; ++j) m(i, j) -= f * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vector> kernel_basis(const Matrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (size_t p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> out;
  for (size_t f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols);
    v[f] = 1;
    for (size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows) throw std::invalid_argument("solve: right-hand side has wrong length");
  Matrix aug(m.rows, m.cols + 1);
  for (size_t i = 0; i < m.rows; ++i) {
    for (size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    aug(i, m.cols) = b[i];
  }
  Echelon e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == m.cols) return std::nullopt;
  Vector x(m.cols);
  for (size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols);
  return x;
}

Vector mat_vec(const Matrix& m, const Vector& v) {
  if (v.size() != m.cols) throw std::invalid_argument("mat_vec: size mismatch");
  Vector out(m.rows);
  for (size_t i = 0; i < m.rows; ++i)
    for (size_t j = 0; j < m.cols; ++j)
      if (v[j] != 0 && m(i, j) != 0) out[i] += m(i, j) * v[j];
  return out;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace kap
