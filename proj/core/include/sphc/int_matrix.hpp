#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sphc {

using IntVec = std::vector<int>;

/// Dense row-major integer matrix. Small sizes only (rank <= 8 root data).
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * size_t(cols), 0) {}

  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  int64_t& operator()(int r, int c) { return data_[size_t(r) * size_t(cols_) + size_t(c)]; }
  int64_t operator()(int r, int c) const { return data_[size_t(r) * size_t(cols_) + size_t(c)]; }

  IntVec column(int c) const;
  void set_column(int c, std::span<const int> v);

  IntVec apply(std::span<const int> v) const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix transposed() const;

  bool operator==(const IntMatrix&) const = default;

  int64_t determinant() const;
  std::string str() const;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int64_t> data_;
};

/// Rank over the rationals by fraction-free (Bareiss) elimination.
int rank_over_rationals(const IntMatrix& m);

} // namespace sphc
