#include "pncf/matrix.hpp"

#include <cmath>

namespace pncf {

std::string shape_string(const Matrix& m) {
  return std::to_string(m.rows) + "x" + std::to_string(m.cols);
}

void require_shape(const Matrix& m, std::size_t rows, std::size_t cols,
                   const char* what) {
  if (m.rows != rows || m.cols != cols) {
    throw ShapeError(std::string(what) + ": expected " + std::to_string(rows) +
                     "x" + std::to_string(cols) + ", got " + shape_string(m));
  }
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      t.at(j, i) = m.at(i, j);
    }
  }
  return t;
}

bool is_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

bool is_finite(const Matrix& m) { return is_finite(std::span<const double>(m.values)); }

}  // namespace pncf
