#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "stochata/rational.hpp"

namespace stochata {

using RatVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RatMatrix identity(std::size_t n);
  static RatMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols);
  static RatMatrix from_columns(const std::vector<RatVector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row_view(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  RatVector row(std::size_t r) const;
  RatVector column(std::size_t c) const;
  Rational row_sum(std::size_t r) const;

  RatMatrix transpose() const;
  /// Keeps the listed rows and columns, in the given order.
  RatMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;

  RatMatrix& operator+=(const RatMatrix& o);
  friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
  RatMatrix& operator*=(const Rational& s);

  bool is_nonnegative() const;
  bool is_substochastic() const;
  bool is_stochastic() const;
  bool is_zero_one() const;
  bool is_binary_column() const { return cols_ == 1 && is_zero_one(); }

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Throws std::invalid_argument on dimension mismatch.
RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b);
inline RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) { return mat_mul(a, b); }

/// M·v for a column vector v.
RatVector mat_vec(const RatMatrix& m, std::span<const Rational> v);
/// v·M for a row vector v.
RatVector vec_mat(std::span<const Rational> v, const RatMatrix& m);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);
RatVector ones(std::size_t n);
RatVector unit_vector(std::size_t n, std::size_t i);
Rational sum(std::span<const Rational> v);

std::ostream& operator<<(std::ostream& os, const RatMatrix& m);
std::ostream& operator<<(std::ostream& os, const RatVector& v);

}  // namespace stochata
