#include "sphc/matrix.hpp"

#include <sstream>
#include <utility>

#include "sphc/error.hpp"

namespace sphc {

Mat::Mat(FieldPtr field, int m) : field_(std::move(field)), m_(m) {
  if (!field_) throw Error("matrix needs a field");
  if (m < 0 || m > kMaxSize) throw Error("matrix size must be between 0 and 32");
  k_ = field_->degree();
}

Mat Mat::identity(FieldPtr field, int m) {
  Mat a(std::move(field), m);
  for (int i = 0; i < m; ++i) a.plane(0)[i] = 1u << i;
  return a;
}

void Mat::set(int r, int c, uint8_t v) {
  for (int b = 0; b < k_; ++b) {
    uint32_t& w = plane(b)[r];
    if (v >> b & 1) w |= 1u << c;
    else w &= ~(1u << c);
  }
}

namespace {

// C ^= A * B over GF(2), rows as bitsets.
inline void gf2_mul_acc(const uint32_t* a, const uint32_t* b, uint32_t* c, int m) {
  for (int r = 0; r < m; ++r) {
    uint32_t bits = a[r];
    uint32_t acc = 0;
    while (bits) {
      const int j = __builtin_ctz(bits);
      bits &= bits - 1;
      acc ^= b[j];
    }
    c[r] ^= acc;
  }
}

} // namespace

Mat Mat::operator*(const Mat& o) const {
  if (m_ != o.m_ || k_ != o.k_) throw Error("matrix product: shape or field mismatch");
  Mat out(field_, m_);
  if (k_ == 1) {
    gf2_mul_acc(plane(0), o.plane(0), out.plane(0), m_);
    return out;
  }
  std::array<std::array<uint32_t, kMaxSize>, 15> tmp{};
  for (int b1 = 0; b1 < k_; ++b1)
    for (int b2 = 0; b2 < k_; ++b2) gf2_mul_acc(plane(b1), o.plane(b2), tmp[size_t(b1 + b2)].data(), m_);
  const unsigned low = field_->polynomial() & ((1u << k_) - 1);
  for (int d = 2 * k_ - 2; d >= k_; --d)
    for (int j = 0; j < k_; ++j)
      if (low >> j & 1)
        for (int r = 0; r < m_; ++r) tmp[size_t(d - k_ + j)][size_t(r)] ^= tmp[size_t(d)][size_t(r)];
  for (int b = 0; b < k_; ++b)
    for (int r = 0; r < m_; ++r) out.plane(b)[r] = tmp[size_t(b)][size_t(r)];
  return out;
}

Mat Mat::operator+(const Mat& o) const {
  if (m_ != o.m_ || k_ != o.k_) throw Error("matrix sum: shape or field mismatch");
  Mat out(*this);
  for (int b = 0; b < k_; ++b)
    for (int r = 0; r < m_; ++r) out.plane(b)[r] ^= o.plane(b)[r];
  return out;
}

Mat Mat::transposed() const {
  Mat out(field_, m_);
  for (int b = 0; b < k_; ++b)
    for (int r = 0; r < m_; ++r) {
      uint32_t bits = plane(b)[r];
      while (bits) {
        const int c = __builtin_ctz(bits);
        bits &= bits - 1;
        out.plane(b)[c] |= 1u << r;
      }
    }
  return out;
}

Mat Mat::scaled(uint8_t s) const {
  Mat out(field_, m_);
  for (int r = 0; r < m_; ++r)
    for (int c = 0; c < m_; ++c)
      if (uint8_t v = get(r, c)) out.set(r, c, field_->mul(v, s));
  return out;
}

bool Mat::operator==(const Mat& o) const {
  if (m_ != o.m_ || k_ != o.k_) return false;
  if (field_ != o.field_ && field_->polynomial() != o.field_->polynomial()) return false;
  for (int b = 0; b < k_; ++b)
    for (int r = 0; r < m_; ++r)
      if (plane(b)[r] != o.plane(b)[r]) return false;
  return true;
}

bool Mat::is_zero() const {
  for (int b = 0; b < k_; ++b)
    for (int r = 0; r < m_; ++r)
      if (plane(b)[r]) return false;
  return true;
}

bool Mat::is_identity() const {
  for (int r = 0; r < m_; ++r) {
    if (plane(0)[r] != (1u << r)) return false;
    for (int b = 1; b < k_; ++b)
      if (plane(b)[r]) return false;
  }
  return true;
}

std::vector<std::vector<uint8_t>> unpack(const Mat& a) {
  std::vector<std::vector<uint8_t>> e(size_t(a.size()), std::vector<uint8_t>(size_t(a.size())));
  for (int r = 0; r < a.size(); ++r)
    for (int c = 0; c < a.size(); ++c) e[size_t(r)][size_t(c)] = a.get(r, c);
  return e;
}

namespace {

// Reduced row echelon form in place; returns pivot columns. Tracks the
// determinant factor (product of pivots; row swaps do not change the sign in
// characteristic 2).
std::vector<int> rref(std::vector<std::vector<uint8_t>>& e, const FiniteField& f, int cols, uint8_t* det = nullptr) {
  const int rows = int(e.size());
  std::vector<int> pivots;
  uint8_t d = 1;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (e[size_t(i)][size_t(c)]) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(e[size_t(p)], e[size_t(r)]);
    const uint8_t pv = e[size_t(r)][size_t(c)];
    d = f.mul(d, pv);
    const uint8_t pinv = f.inv(pv);
    for (auto& x : e[size_t(r)]) x = f.mul(x, pinv);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const uint8_t factor = e[size_t(i)][size_t(c)];
      if (!factor) continue;
      for (size_t j = 0; j < e[size_t(i)].size(); ++j) e[size_t(i)][j] ^= f.mul(factor, e[size_t(r)][j]);
    }
    pivots.push_back(c);
    ++r;
  }
  if (det) *det = int(pivots.size()) == cols && rows == cols ? d : 0;
  return pivots;
}

} // namespace

int Mat::rank() const {
  auto e = unpack(*this);
  return int(rref(e, *field_, m_).size());
}

uint8_t Mat::determinant() const {
  auto e = unpack(*this);
  uint8_t d = 0;
  rref(e, *field_, m_, &d);
  return d;
}

std::optional<Mat> Mat::inverse() const {
  auto e = unpack(*this);
  for (int r = 0; r < m_; ++r) {
    e[size_t(r)].resize(size_t(2 * m_), 0);
    e[size_t(r)][size_t(m_ + r)] = 1;
  }
  if (int(rref(e, *field_, m_).size()) < m_) return std::nullopt;
  Mat out(field_, m_);
  for (int r = 0; r < m_; ++r)
    for (int c = 0; c < m_; ++c) out.set(r, c, e[size_t(r)][size_t(m_ + c)]);
  return out;
}

std::vector<std::vector<uint8_t>> Mat::kernel_basis() const {
  auto e = unpack(*this);
  auto pivots = rref(e, *field_, m_);
  std::vector<bool> is_pivot(size_t(m_), false);
  for (int p : pivots) is_pivot[size_t(p)] = true;
  std::vector<std::vector<uint8_t>> basis;
  for (int free = 0; free < m_; ++free) {
    if (is_pivot[size_t(free)]) continue;
    std::vector<uint8_t> v(size_t(m_), 0);
    v[size_t(free)] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[size_t(pivots[i])] = e[i][size_t(free)]; // -x = x
    basis.push_back(v);
  }
  return basis;
}

std::vector<uint8_t> Mat::apply(const std::vector<uint8_t>& v) const {
  if (int(v.size()) != m_) throw Error("matrix-vector product: dimension mismatch");
  std::vector<uint8_t> out(size_t(m_), 0);
  for (int r = 0; r < m_; ++r) {
    uint8_t s = 0;
    for (int c = 0; c < m_; ++c) s ^= field_->mul(get(r, c), v[size_t(c)]);
    out[size_t(r)] = s;
  }
  return out;
}

std::vector<uint8_t> Mat::entries() const {
  std::vector<uint8_t> out;
  out.reserve(size_t(m_ * m_));
  for (int r = 0; r < m_; ++r)
    for (int c = 0; c < m_; ++c) out.push_back(get(r, c));
  return out;
}

Mat Mat::from_entries(FieldPtr field, int m, const std::vector<uint8_t>& entries) {
  Mat a(std::move(field), m);
  if (int(entries.size()) != m * m) throw Error("from_entries: wrong entry count");
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      const uint8_t v = entries[size_t(r * m + c)];
      if (v >= a.field()->order()) throw Error("from_entries: entry outside the field");
      a.set(r, c, v);
    }
  return a;
}

std::string Mat::str() const {
  std::ostringstream os;
  for (int r = 0; r < m_; ++r) {
    for (int c = 0; c < m_; ++c) os << (c ? " " : "") << int(get(r, c));
    os << '\n';
  }
  return os.str();
}

} // namespace sphc
