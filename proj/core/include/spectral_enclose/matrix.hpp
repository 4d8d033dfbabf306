#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace spectral {

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double frobenius_norm(const Matrix& m);
double max_abs_entry(const Matrix& m);

/// Largest |m(i,j) - m(j,i)|.
double asymmetry(const Matrix& m);

/// m <- (m + m^T) / 2.
void symmetrize(Matrix& m);

/// x^T M y.
double bilinear(const Matrix& m, std::span<const double> x, std::span<const double> y);

std::vector<double> multiply(const Matrix& m, std::span<const double> x);
Matrix multiply(const Matrix& a, const Matrix& b);

/// Largest |j - k| over nonzero entries.
std::size_t bandwidth(const Matrix& m);

}  // namespace spectral
