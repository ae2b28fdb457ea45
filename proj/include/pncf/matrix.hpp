#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pncf/errors.hpp"

namespace pncf {

/// Dense row-major matrix of doubles. All latent tables and MLP weights
/// live in this type.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

  bool empty() const { return values.empty(); }
  std::size_t size() const { return values.size(); }

  double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }

  double* row(std::size_t i) { return values.data() + i * cols; }
  const double* row(std::size_t i) const { return values.data() + i * cols; }

  std::span<double> row_span(std::size_t i) { return {row(i), cols}; }
  std::span<const double> row_span(std::size_t i) const { return {row(i), cols}; }

  bool operator==(const Matrix& other) const = default;
};

std::string shape_string(const Matrix& m);

/// Throws ShapeError naming both shapes unless m is `rows` x `cols`.
void require_shape(const Matrix& m, std::size_t rows, std::size_t cols,
                   const char* what);

Matrix transpose(const Matrix& m);

bool is_finite(const Matrix& m);
bool is_finite(std::span<const double> v);

}  // namespace pncf
