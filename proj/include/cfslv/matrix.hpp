#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cfslv {

// Dense row-major matrix of doubles. Sized for the small systems in this
// library (tens of rows); no expression templates, no aliasing tricks.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);
  static Matrix column(std::span<const double> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> data() const { return data_; }

  Matrix transposed() const;
  /// Rows indexed by `which`, in the given order.
  Matrix select_rows(std::span<const std::size_t> which) const;

  /// Largest absolute entry.
  double max_abs() const;
  /// Frobenius norm.
  double frobenius() const;
  bool all_finite() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

// LU factorization with partial pivoting of a square matrix.
class LuFactorization {
 public:
  explicit LuFactorization(Matrix a);

  bool singular() const { return singular_; }
  /// Solves A x = b. Throws InvalidArgument when the factorization is singular.
  std::vector<double> solve(std::span<const double> b) const;

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  bool singular_ = false;
};

}  // namespace cfslv
