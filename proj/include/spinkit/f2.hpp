#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "spinkit/int_matrix.hpp"

namespace spinkit {

/// Bit-packed vector over F2.
class F2Vector {
 public:
  F2Vector() = default;
  explicit F2Vector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}
  F2Vector(std::initializer_list<int> bits);

  static F2Vector from_ints(const std::vector<Int>& v);  // entrywise mod 2

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool value);
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  bool is_zero() const;
  std::size_t popcount() const;
  /// Inner product mod 2.
  bool dot(const F2Vector& other) const;
  F2Vector& operator+=(const F2Vector& other);  // xor
  friend F2Vector operator+(F2Vector a, const F2Vector& b) { return a += b; }
  friend bool operator==(const F2Vector&, const F2Vector&) = default;

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

  /// "1011"-style rendering, index 0 first.
  std::string to_string() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Matrix over F2, one packed F2Vector per row.
class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols);
  F2Matrix(std::initializer_list<std::initializer_list<int>> rows);

  static F2Matrix reduce(const IntMatrix& m);  // entrywise mod 2
  static F2Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v) { rows_[r].set(c, v); }
  const F2Vector& row(std::size_t r) const { return rows_[r]; }

  F2Matrix transpose() const;
  F2Vector operator*(const F2Vector& x) const;
  std::size_t rank() const;

  friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<F2Vector> rows_;
};

struct F2Solution {
  bool solvable = false;
  /// Particular solution with every free variable set to zero.
  F2Vector x;
  /// Basis of the null space; the solution set is x + span(kernel).
  std::vector<F2Vector> kernel;
  /// When unsolvable: y with y^T A = 0 and y.b = 1.
  std::optional<F2Vector> certificate;
};

/// Solves A x = b by Gauss-Jordan elimination. Pivots are the lowest-index
/// available row in each column, scanning columns left to right.
F2Solution f2_solve(const F2Matrix& a, const F2Vector& b);

}  // namespace spinkit
