#include "sphc/group.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "sphc/error.hpp"

namespace sphc {

namespace {

IntVec e_vec(int dim, int i, int coeff = 1) {
  IntVec v(static_cast<size_t>(dim), 0);
  v[size_t(i)] = coeff;
  return v;
}

IntVec combo(int dim, int i, int si, int j, int sj) {
  IntVec v(static_cast<size_t>(dim), 0);
  v[size_t(i)] += si;
  v[size_t(j)] += sj;
  return v;
}

int dot(const IntVec& a, const IntVec& b) {
  int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVec negate(IntVec v) {
  for (int& x : v) x = -x;
  return v;
}

} // namespace

GroupSpec::GroupSpec(GroupKind kind, int n, FieldPtr field) : kind_(kind), n_(n), field_(std::move(field)) {
  if (!field_) throw Error("group needs a field");
  if (has_form(kind)) {
    if (n < 1) throw Error("rank must be positive");
    if ((kind == GroupKind::O || kind == GroupKind::SO) && n < 2) throw Error("orthogonal groups need n >= 2");
    m_ = 2 * n;
  } else {
    if (n < 2) throw Error("GL/SL need size at least 2");
    m_ = n;
  }
  if (m_ > Mat::kMaxSize) throw Error("matrix size above 32 is not supported");

  const int d = root_dim();
  if (!has_form(kind)) {
    for (int i = 0; i < m_; ++i)
      for (int j = i + 1; j < m_; ++j) positive_.push_back(combo(d, i, 1, j, -1));
    for (int i = 0; i + 1 < m_; ++i) simple_.push_back(combo(d, i, 1, i + 1, -1));
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        positive_.push_back(combo(d, i, 1, j, -1));
        positive_.push_back(combo(d, i, 1, j, 1));
      }
    for (int i = 0; i + 1 < n; ++i) simple_.push_back(combo(d, i, 1, i + 1, -1));
    if (kind == GroupKind::Sp) {
      for (int i = 0; i < n; ++i) positive_.push_back(e_vec(d, i, 2));
      simple_.push_back(e_vec(d, n - 1, 2));
    } else {
      simple_.push_back(combo(d, n - 2, 1, n - 1, 1));
    }
  }

  if (!has_form(kind)) rs_ = RootSystem::build(Series::A, m_ - 1);
  else if (kind == GroupKind::Sp && n >= 2) rs_ = RootSystem::build(Series::C, n);
  else if (kind != GroupKind::Sp && n >= 4) rs_ = RootSystem::build(Series::D, n);
}

std::string GroupSpec::name() const {
  return group_kind_name(kind_) + "(" + std::to_string(m_) + "," + std::to_string(field_->order()) + ")";
}

IntVec GroupSpec::weight(int c) const {
  if (c < 0 || c >= m_) throw Error("basis index out of range");
  if (!has_form(kind_)) return e_vec(m_, c);
  if (c < n_) return e_vec(n_, c);
  return e_vec(n_, m_ - 1 - c, -1);
}

bool GroupSpec::is_root(const IntVec& alpha) const {
  if (int(alpha.size()) != root_dim()) return false;
  const IntVec neg = negate(alpha);
  for (const auto& p : positive_)
    if (p == alpha || p == neg) return true;
  return false;
}

IntVec GroupSpec::parse_root(const std::string& text) const {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  IntVec v(static_cast<size_t>(root_dim()), 0);
  size_t pos = 0;
  auto number = [&]() {
    const size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw Error("malformed root '" + text + "'");
    return std::stoi(s.substr(start, pos - start));
  };
  if (s.empty()) throw Error("empty root");
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    int coeff = 1;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) coeff = number();
    if (pos >= s.size() || s[pos] != 'e') throw Error("malformed root '" + text + "'");
    ++pos;
    const int k = number();
    if (k < 1 || k > root_dim()) throw Error("coordinate index out of range in '" + text + "'");
    v[size_t(k - 1)] += sign * coeff;
  }
  if (!is_root(v)) throw Error("'" + text + "' is not a root of " + name());
  return v;
}

std::string GroupSpec::format_root(const IntVec& alpha) const {
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < alpha.size(); ++k) {
    const int c = alpha[k];
    if (!c) continue;
    if (c < 0) os << '-';
    else if (!first) os << '+';
    if (std::abs(c) != 1) os << std::abs(c);
    os << 'e' << (k + 1);
    first = false;
  }
  return first ? "0" : os.str();
}

Mat GroupSpec::x(const IntVec& alpha, uint8_t xi) const {
  if (!is_root(alpha)) throw Error("x: " + format_root(alpha) + " is not a root of " + name());
  Mat g = identity();
  if (!xi) return g;
  for (int r = 0; r < m_; ++r) {
    const IntVec wr = weight(r);
    for (int c = 0; c < m_; ++c) {
      if (r == c) continue;
      IntVec diff = wr;
      const IntVec wc = weight(c);
      for (size_t i = 0; i < diff.size(); ++i) diff[i] -= wc[i];
      if (diff == alpha) g.set(r, c, xi);
    }
  }
  return g;
}

Mat GroupSpec::h(const IntVec& alpha, uint8_t z) const {
  if (!is_root(alpha)) throw Error("h: " + format_root(alpha) + " is not a root of " + name());
  if (!z) throw Error("h: z must be nonzero");
  Mat g(field_, m_);
  const int aa = dot(alpha, alpha);
  for (int r = 0; r < m_; ++r) {
    const int e = 2 * dot(weight(r), alpha) / aa;
    g.set(r, r, field_->pow(z, e));
  }
  return g;
}

Mat GroupSpec::n_alpha(const IntVec& alpha) const {
  const Mat a = x(alpha, 1);
  return a * x(negate(alpha), 1) * a;
}

Mat GroupSpec::diag(const std::vector<uint8_t>& entries) const {
  if (int(entries.size()) != m_) throw Error("diag: wrong entry count");
  Mat g(field_, m_);
  for (int i = 0; i < m_; ++i) g.set(i, i, entries[size_t(i)]);
  return g;
}

Mat GroupSpec::flip() const {
  Mat j(field_, m_);
  for (int i = 0; i < m_; ++i) j.set(i, m_ - 1 - i, 1);
  return j;
}

uint8_t GroupSpec::quadratic_form(const std::vector<uint8_t>& v) const {
  uint8_t s = 0;
  for (int i = 0; i < n_; ++i) s ^= field_->mul(v[size_t(i)], v[size_t(m_ - 1 - i)]);
  return s;
}

uint8_t GroupSpec::bilinear_form(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) const {
  uint8_t s = 0;
  for (int i = 0; i < m_; ++i) s ^= field_->mul(a[size_t(i)], b[size_t(m_ - 1 - i)]);
  return s;
}

bool GroupSpec::contains(const Mat& g) const {
  if (g.size() != m_ || g.degree() != field_->degree()) return false;
  switch (kind_) {
  case GroupKind::GL: return g.determinant() != 0;
  case GroupKind::SL: return g.determinant() == 1;
  case GroupKind::Sp: {
    const Mat j = flip();
    return g.transposed() * j * g == j;
  }
  case GroupKind::O:
  case GroupKind::SO: {
    const Mat j = flip();
    if (!(g.transposed() * j * g == j)) return false;
    for (int c = 0; c < m_; ++c) {
      std::vector<uint8_t> col(static_cast<size_t>(m_));
      for (int r = 0; r < m_; ++r) col[size_t(r)] = g.get(r, c);
      if (quadratic_form(col) != 0) return false;
    }
    return kind_ == GroupKind::O || dickson_invariant(*this, g) == 0;
  }
  }
  return false;
}

Mat GroupSpec::inverse(const Mat& g) const {
  if (has_form(kind_)) {
    const Mat j = flip();
    return j * g.transposed() * j;
  }
  auto inv = g.inverse();
  if (!inv) throw Error("inverse of a singular matrix");
  return *inv;
}

IntVec GroupSpec::to_simple_coords(const IntVec& alpha) const {
  if (!rs_) throw Error(name() + " has no attached root datum");
  return rs_->from_ambient(alpha);
}

IntVec GroupSpec::from_simple_coords(const IntVec& coords) const {
  if (!rs_) throw Error(name() + " has no attached root datum");
  return rs_->to_ambient(coords);
}

std::vector<Mat> GroupSpec::simple_root_generators(bool negative_too) const {
  std::vector<Mat> gens;
  for (const auto& a : simple_)
    for (int b = 0; b < field_->degree(); ++b) {
      gens.push_back(x(a, uint8_t(1u << b)));
      if (negative_too) gens.push_back(x(negate(a), uint8_t(1u << b)));
    }
  return gens;
}

std::vector<Mat> GroupSpec::group_generators() const {
  auto gens = simple_root_generators(true);
  if (kind_ == GroupKind::GL && field_->order() > 2) {
    std::vector<uint8_t> d(static_cast<size_t>(m_), 1);
    d[0] = field_->generator();
    gens.push_back(diag(d));
  }
  if (kind_ == GroupKind::O) {
    Mat t = identity();
    t.set(n_ - 1, n_ - 1, 0);
    t.set(n_, n_, 0);
    t.set(n_ - 1, n_, 1);
    t.set(n_, n_ - 1, 1);
    gens.push_back(t);
  }
  return gens;
}

int dickson_invariant(const GroupSpec& spec, const Mat& g) {
  if (spec.kind() != GroupKind::O && spec.kind() != GroupKind::SO) throw Error("Dickson invariant needs an orthogonal group");
  return (g + spec.identity()).rank() % 2;
}

} // namespace sphc
