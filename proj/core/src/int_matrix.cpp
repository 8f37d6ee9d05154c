#include "sphc/int_matrix.hpp"

#include <cstdlib>
#include <sstream>
#include <utility>

#include "sphc/error.hpp"

namespace sphc {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntVec IntMatrix::column(int c) const {
  IntVec v(static_cast<size_t>(rows_));
  for (int r = 0; r < rows_; ++r) v[size_t(r)] = int((*this)(r, c));
  return v;
}

void IntMatrix::set_column(int c, std::span<const int> v) {
  for (int r = 0; r < rows_; ++r) (*this)(r, c) = v[size_t(r)];
}

IntVec IntMatrix::apply(std::span<const int> v) const {
  if (int(v.size()) != cols_) throw Error("IntMatrix::apply: dimension mismatch");
  IntVec out(size_t(rows_), 0);
  for (int r = 0; r < rows_; ++r) {
    int64_t s = 0;
    for (int c = 0; c < cols_; ++c) s += (*this)(r, c) * v[size_t(c)];
    out[size_t(r)] = int(s);
  }
  return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw Error("IntMatrix product: dimension mismatch");
  IntMatrix out(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k) {
      const int64_t a = (*this)(r, k);
      if (a == 0) continue;
      for (int c = 0; c < o.cols_; ++c) out(r, c) += a * o(k, c);
    }
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("IntMatrix difference: dimension mismatch");
  IntMatrix out(*this);
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("IntMatrix sum: dimension mismatch");
  IntMatrix out(*this);
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

namespace {

__extension__ typedef __int128 i128;

// Bareiss elimination in place; returns rank and the sign-adjusted last pivot
// (the determinant when the matrix is square and nonsingular).
std::pair<int, i128> bareiss(std::vector<std::vector<i128>>& a, int rows, int cols) {
  int rank = 0;
  i128 prev = 1;
  int sign = 1;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (a[size_t(r)][size_t(c)] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank) {
      std::swap(a[size_t(pivot)], a[size_t(rank)]);
      sign = -sign;
    }
    const i128 p = a[size_t(rank)][size_t(c)];
    for (int r = rank + 1; r < rows; ++r) {
      for (int k = c + 1; k < cols; ++k)
        a[size_t(r)][size_t(k)] = (p * a[size_t(r)][size_t(k)] - a[size_t(r)][size_t(c)] * a[size_t(rank)][size_t(k)]) / prev;
      a[size_t(r)][size_t(c)] = 0;
    }
    prev = p;
    ++rank;
  }
  return {rank, prev * sign};
}

std::vector<std::vector<i128>> widen(const IntMatrix& m) {
  std::vector<std::vector<i128>> a(size_t(m.rows()), std::vector<i128>(size_t(m.cols())));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) a[size_t(r)][size_t(c)] = m(r, c);
  return a;
}

} // namespace

int64_t IntMatrix::determinant() const {
  if (rows_ != cols_) throw Error("determinant of a non-square matrix");
  if (rows_ == 0) return 1;
  auto a = widen(*this);
  auto [rank, last] = bareiss(a, rows_, cols_);
  if (rank < rows_) return 0;
  return int64_t(last);
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (int r = 0; r < rows_; ++r) {
    if (r) os << "; ";
    for (int c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
  }
  os << ']';
  return os.str();
}

int rank_over_rationals(const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto a = widen(m);
  return bareiss(a, m.rows(), m.cols()).first;
}

} // namespace sphc
