#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>

namespace sphc {

/// GF(2^k), 1 <= k <= 8, elements as k-bit integers (bit b = coefficient of x^b).
class FiniteField {
public:
  /// Uses the built-in (or configured) polynomial for degree k.
  static std::shared_ptr<const FiniteField> get(int k);
  /// Throws Error unless poly is an irreducible polynomial of degree k.
  static std::shared_ptr<const FiniteField> with_polynomial(int k, unsigned poly);

  int degree() const { return k_; }
  int order() const { return 1 << k_; }
  unsigned polynomial() const { return poly_; }
  uint8_t generator() const { return exp_[1]; }

  static uint8_t add(uint8_t a, uint8_t b) { return a ^ b; }
  uint8_t mul(uint8_t a, uint8_t b) const {
    if (!a || !b) return 0;
    return exp_[log_[a] + log_[b]];
  }
  /// Throws Error for a = 0.
  uint8_t inv(uint8_t a) const;
  uint8_t pow(uint8_t a, long e) const;
  uint8_t frobenius(uint8_t a) const { return mul(a, a); }
  /// g^i for the fixed primitive element g.
  uint8_t exp(int i) const { return exp_[size_t(((i % (order() - 1)) + (order() - 1)) % (order() - 1))]; }
  int log(uint8_t a) const;

private:
  FiniteField(int k, unsigned poly);
  int k_;
  unsigned poly_;
  std::array<uint8_t, 512> exp_{};
  std::array<int, 256> log_{};
};

using FieldPtr = std::shared_ptr<const FiniteField>;

/// Default polynomial table (degree -> bit pattern including the x^k term).
const std::map<int, unsigned>& default_field_polynomials();
/// Overrides the polynomial used by FiniteField::get(k); validated on use.
void set_field_polynomial(int k, unsigned poly);
/// True iff poly has degree k and is irreducible over GF(2).
bool is_irreducible_gf2(unsigned poly, int k);

} // namespace sphc
