#include "spinkit/f2.hpp"

#include <bit>
#include <utility>

#include "spinkit/simd/kernels.hpp"

namespace spinkit {

F2Vector::F2Vector(std::initializer_list<int> bits) : F2Vector(bits.size()) {
  std::size_t i = 0;
  for (int b : bits) set(i++, (b & 1) != 0);
}

F2Vector F2Vector::from_ints(const std::vector<Int>& v) {
  F2Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.set(i, mpz_odd_p(v[i].get_mpz_t()) != 0);
  return out;
}

void F2Vector::set(std::size_t i, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value)
    words_[i >> 6] |= mask;
  else
    words_[i >> 6] &= ~mask;
}

bool F2Vector::is_zero() const {
  for (auto w : words_)
    if (w != 0) return false;
  return true;
}

std::size_t F2Vector::popcount() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool F2Vector::dot(const F2Vector& other) const {
  if (other.size_ != size_) throw DimensionError("F2Vector::dot: size mismatch");
  return simd::active_kernels().and_parity(words_.data(), other.words_.data(), words_.size());
}

F2Vector& F2Vector::operator+=(const F2Vector& other) {
  if (other.size_ != size_) throw DimensionError("F2Vector::+=: size mismatch");
  simd::active_kernels().xor_words(words_.data(), other.words_.data(), words_.size());
  return *this;
}

std::string F2Vector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols)
    : cols_(cols), rows_(rows, F2Vector(cols)) {}

F2Matrix::F2Matrix(std::initializer_list<std::initializer_list<int>> rows) {
  cols_ = rows.size() == 0 ? 0 : rows.begin()->size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("F2Matrix: ragged rows");
    rows_.emplace_back(r);
  }
}

F2Matrix F2Matrix::reduce(const IntMatrix& m) {
  F2Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (mpz_odd_p(m(i, j).get_mpz_t())) out.set(i, j, true);
  return out;
}

F2Matrix F2Matrix::identity(std::size_t n) {
  F2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

F2Matrix F2Matrix::transpose() const {
  F2Matrix t(cols_, rows());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (get(i, j)) t.set(j, i, true);
  return t;
}

F2Vector F2Matrix::operator*(const F2Vector& x) const {
  if (x.size() != cols_) throw DimensionError("F2Matrix * F2Vector: size mismatch");
  F2Vector out(rows());
  for (std::size_t i = 0; i < rows(); ++i) out.set(i, rows_[i].dot(x));
  return out;
}

std::size_t F2Matrix::rank() const {
  std::vector<F2Vector> work = rows_;
  const auto& k = simd::active_kernels();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < work.size(); ++c) {
    std::size_t p = rank;
    while (p < work.size() && !work[p].get(c)) ++p;
    if (p == work.size()) continue;
    std::swap(work[rank], work[p]);
    for (std::size_t r = rank + 1; r < work.size(); ++r)
      if (work[r].get(c))
        k.xor_words(work[r].words().data(), work[rank].words().data(), work[r].words().size());
    ++rank;
  }
  return rank;
}

F2Solution f2_solve(const F2Matrix& a, const F2Vector& b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) throw DimensionError("f2_solve: right-hand side length differs from rows");

  // Each working row carries [A-row | b-bit | combination of original rows].
  const std::size_t width = n + 1 + m;
  std::vector<F2Vector> work(m, F2Vector(width));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (a.get(i, j)) work[i].set(j, true);
    work[i].set(n, b.get(i));
    work[i].set(n + 1 + i, true);
  }

  const auto& k = simd::active_kernels();
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < m; ++c) {
    std::size_t p = rank;
    while (p < m && !work[p].get(c)) ++p;
    if (p == m) continue;
    std::swap(work[rank], work[p]);
    for (std::size_t r = 0; r < m; ++r)
      if (r != rank && work[r].get(c))
        k.xor_words(work[r].words().data(), work[rank].words().data(), work[r].words().size());
    pivot_cols.push_back(c);
    ++rank;
  }

  F2Solution sol;
  for (std::size_t r = rank; r < m; ++r) {
    if (work[r].get(n)) {
      F2Vector y(m);
      for (std::size_t i = 0; i < m; ++i) y.set(i, work[r].get(n + 1 + i));
      sol.solvable = false;
      sol.certificate = std::move(y);
      sol.x = F2Vector(n);
      return sol;
    }
  }

  sol.solvable = true;
  sol.x = F2Vector(n);
  for (std::size_t r = 0; r < rank; ++r) sol.x.set(pivot_cols[r], work[r].get(n));

  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    F2Vector v(n);
    v.set(f, true);
    for (std::size_t r = 0; r < rank; ++r)
      if (work[r].get(f)) v.set(pivot_cols[r], true);
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

}  // namespace spinkit
