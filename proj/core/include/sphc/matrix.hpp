#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sphc/field.hpp"

namespace sphc {

/// Square matrix over GF(2^k), size at most 32, stored as k bit-planes: bit c
/// of planes[b][r] is bit b of entry (r, c).
class Mat {
public:
  static constexpr int kMaxSize = 32;

  Mat() = default;
  Mat(FieldPtr field, int m);
  static Mat identity(FieldPtr field, int m);

  int size() const { return m_; }
  const FieldPtr& field() const { return field_; }
  int degree() const { return k_; }

  uint8_t get(int r, int c) const {
    uint8_t v = 0;
    for (int b = 0; b < k_; ++b) v |= uint8_t(((plane(b)[r] >> c) & 1u) << b);
    return v;
  }
  void set(int r, int c, uint8_t v);
  /// Bit b of row r packed over columns.
  uint32_t row_bits(int b, int r) const { return plane(b)[r]; }
  void set_row_bits(int b, int r, uint32_t bits) { plane(b)[r] = bits; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat transposed() const;
  /// Multiplies every entry by s.
  Mat scaled(uint8_t s) const;
  bool operator==(const Mat& o) const;
  bool is_zero() const;
  bool is_identity() const;

  int rank() const;
  uint8_t determinant() const;
  /// nullopt when singular.
  std::optional<Mat> inverse() const;
  /// Basis of {x : M x = 0}, as column vectors.
  std::vector<std::vector<uint8_t>> kernel_basis() const;
  std::vector<uint8_t> apply(const std::vector<uint8_t>& v) const;

  /// Row-major entries.
  std::vector<uint8_t> entries() const;
  static Mat from_entries(FieldPtr field, int m, const std::vector<uint8_t>& entries);
  std::string str() const;

private:
  const uint32_t* plane(int b) const { return &planes_[size_t(b) * kMaxSize]; }
  uint32_t* plane(int b) { return &planes_[size_t(b) * kMaxSize]; }

  FieldPtr field_;
  int m_ = 0;
  int k_ = 0;
  std::array<uint32_t, 8 * kMaxSize> planes_{};
};

/// Row-reduction helper on an unpacked copy; exposed for kernel/rank users.
std::vector<std::vector<uint8_t>> unpack(const Mat& a);

} // namespace sphc
