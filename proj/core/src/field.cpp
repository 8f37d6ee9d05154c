#include "sphc/field.hpp"

#include <mutex>
#include <string>

#include "sphc/error.hpp"

namespace sphc {

namespace {

std::mutex g_field_mutex;

std::map<int, unsigned>& polynomial_table() {
  static std::map<int, unsigned> table = default_field_polynomials();
  return table;
}

std::map<int, FieldPtr>& field_cache() {
  static std::map<int, FieldPtr> cache;
  return cache;
}

unsigned gf2_mulmod(unsigned a, unsigned b, unsigned poly, int k) {
  unsigned r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a >> k & 1) a ^= poly;
  }
  return r;
}

} // namespace

const std::map<int, unsigned>& default_field_polynomials() {
  static const std::map<int, unsigned> table{{1, 0x3},  {2, 0x7},  {3, 0xB},  {4, 0x13},
                                             {5, 0x25}, {6, 0x43}, {7, 0x83}, {8, 0x11D}};
  return table;
}

bool is_irreducible_gf2(unsigned poly, int k) {
  if (k < 1 || poly >> k != 1) return false;
  if (k == 1) return true;
  // Trial division by every polynomial of degree 1..k/2.
  for (int d = 1; 2 * d <= k; ++d)
    for (unsigned div = 1u << d; div < (2u << d); ++div) {
      unsigned rem = poly;
      for (int s = k; s >= d; --s)
        if (rem >> s & 1) rem ^= div << (s - d);
      if (rem == 0) return false;
    }
  return true;
}

void set_field_polynomial(int k, unsigned poly) {
  if (!is_irreducible_gf2(poly, k))
    throw Error("polynomial " + std::to_string(poly) + " is not irreducible of degree " + std::to_string(k));
  std::lock_guard<std::mutex> lock(g_field_mutex);
  polynomial_table()[k] = poly;
  field_cache().erase(k);
}

FieldPtr FiniteField::get(int k) {
  if (k < 1 || k > 8) throw Error("field degree must be between 1 and 8");
  std::lock_guard<std::mutex> lock(g_field_mutex);
  auto& cache = field_cache();
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  FieldPtr f(new FiniteField(k, polynomial_table().at(k)));
  cache[k] = f;
  return f;
}

FieldPtr FiniteField::with_polynomial(int k, unsigned poly) {
  if (k < 1 || k > 8) throw Error("field degree must be between 1 and 8");
  if (!is_irreducible_gf2(poly, k)) throw Error("polynomial is not irreducible");
  return FieldPtr(new FiniteField(k, poly));
}

FiniteField::FiniteField(int k, unsigned poly) : k_(k), poly_(poly) {
  const int q = 1 << k;
  // Find a primitive element: one whose powers hit all q-1 nonzero values.
  for (unsigned g = (k == 1 ? 1u : 2u); g < unsigned(q); ++g) {
    unsigned x = 1;
    int period = 0;
    do {
      x = gf2_mulmod(x, g, poly, k);
      ++period;
    } while (x != 1);
    if (period != q - 1) continue;
    x = 1;
    for (int i = 0; i < q - 1; ++i) {
      exp_[size_t(i)] = uint8_t(x);
      exp_[size_t(i + q - 1)] = uint8_t(x);
      log_[x] = i;
      x = gf2_mulmod(x, g, poly, k);
    }
    return;
  }
  throw InternalError("no primitive element found");
}

uint8_t FiniteField::inv(uint8_t a) const {
  if (!a) throw Error("inverse of zero");
  return exp_[size_t((order() - 1 - log_[a]) % (order() - 1))];
}

uint8_t FiniteField::pow(uint8_t a, long e) const {
  if (!a) {
    if (e == 0) return 1;
    if (e < 0) throw Error("negative power of zero");
    return 0;
  }
  const long period = order() - 1;
  long r = (long(log_[a]) * (e % period)) % period;
  if (r < 0) r += period;
  return exp_[size_t(r)];
}

int FiniteField::log(uint8_t a) const {
  if (!a) throw Error("log of zero");
  return log_[a];
}

} // namespace sphc
