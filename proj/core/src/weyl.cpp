#include "sphc/weyl.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "sphc/error.hpp"

namespace sphc {

namespace {

void same_system(const RootSystemPtr& a, const RootSystemPtr& b) {
  if (a != b && (a->series() != b->series() || a->rank() != b->rank()))
    throw Error("Weyl group elements of different root systems");
}

} // namespace

WeylElement WeylElement::identity(const RootSystemPtr& rs) {
  WeylElement w(rs, IntMatrix::identity(rs->rank()));
  w.length_ = 0;
  return w;
}

WeylElement WeylElement::simple_reflection(const RootSystemPtr& rs, int i) {
  return reflection(rs, rs->simple_root(i));
}

WeylElement WeylElement::reflection(const RootSystemPtr& rs, const IntVec& beta) {
  if (!rs->is_root(beta)) throw Error("reflection: " + rs->format_root(beta) + " is not a root of " + rs->name());
  const int n = rs->rank();
  IntMatrix m(n, n);
  for (int j = 0; j < n; ++j) m.set_column(j, rs->reflect(beta, rs->simple_root(j)));
  return WeylElement(rs, std::move(m));
}

WeylElement WeylElement::product_of_reflections(const RootSystemPtr& rs, const std::vector<IntVec>& roots) {
  WeylElement w = identity(rs);
  for (const auto& beta : roots) w = w * reflection(rs, beta);
  return w;
}

WeylElement WeylElement::from_word(const RootSystemPtr& rs, const std::vector<int>& word) {
  WeylElement w = identity(rs);
  for (int i : word) w = w * simple_reflection(rs, i);
  return w;
}

WeylElement WeylElement::from_images(const RootSystemPtr& rs, const std::vector<IntVec>& images) {
  const int n = rs->rank();
  if (int(images.size()) != n) throw Error("from_images: wrong number of images");
  IntMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    if (int(images[size_t(j)].size()) != n) throw Error("from_images: wrong coordinate count");
    m.set_column(j, images[size_t(j)]);
  }
  for (const auto& beta : rs->positive_roots())
    if (!rs->is_root(m.apply(beta))) throw Error("from_images: map does not permute the roots");
  // A root-permuting map preserving the form is in Aut(Phi); require it to fix
  // the Weyl chamber up to W, i.e. reduce to the identity through descents.
  WeylElement w(rs, m);
  WeylElement cur = w;
  for (int steps = 0; steps <= rs->num_positive_roots(); ++steps) {
    int descent = -1;
    for (int i = 0; i < n; ++i)
      if (cur.has_right_descent(i)) {
        descent = i;
        break;
      }
    if (descent < 0) break;
    cur = cur * simple_reflection(rs, descent);
  }
  if (!cur.is_identity()) throw Error("from_images: map is not in the Weyl group");
  return w;
}

WeylElement WeylElement::longest(const RootSystemPtr& rs, const std::vector<int>& J) {
  for (int j : J)
    if (j < 0 || j >= rs->rank()) throw Error("longest: index out of range");
  WeylElement cur = identity(rs);
  bool grew = true;
  while (grew) {
    grew = false;
    for (int j : J)
      if (!cur.has_right_descent(j)) {
        cur = cur * simple_reflection(rs, j);
        grew = true;
      }
  }
  return cur;
}

WeylElement WeylElement::longest(const RootSystemPtr& rs) {
  std::vector<int> all(static_cast<size_t>(rs->rank()));
  for (int i = 0; i < rs->rank(); ++i) all[size_t(i)] = i;
  return longest(rs, all);
}

WeylElement WeylElement::operator*(const WeylElement& o) const {
  same_system(rs_, o.rs_);
  return WeylElement(rs_, m_ * o.m_);
}

WeylElement WeylElement::inverse() const {
  auto word = reduced_word();
  std::reverse(word.begin(), word.end());
  WeylElement inv = from_word(rs_, word);
  inv.length_ = int(word.size());
  return inv;
}

int WeylElement::length() const {
  if (!length_) {
    int count = 0;
    for (const auto& beta : rs_->positive_roots())
      if (RootSystem::is_negative(m_.apply(beta))) ++count;
    length_ = count;
  }
  return *length_;
}

bool WeylElement::is_identity() const { return m_ == IntMatrix::identity(rs_->rank()); }

bool WeylElement::is_involution() const { return (m_ * m_) == IntMatrix::identity(rs_->rank()); }

bool WeylElement::has_right_descent(int i) const { return RootSystem::is_negative(m_.column(i)); }

bool WeylElement::has_left_descent(int i) const {
  // w^{-1}(alpha_i) < 0 iff alpha_i is the image of a negative root under w,
  // i.e. some positive root beta has w(beta) = -alpha_i.
  IntVec target = rs_->simple_root(i);
  for (int& x : target) x = -x;
  for (const auto& beta : rs_->positive_roots())
    if (m_.apply(beta) == target) return true;
  return false;
}

std::vector<int> WeylElement::reduced_word() const {
  std::vector<int> rev;
  WeylElement cur = *this;
  for (;;) {
    int descent = -1;
    for (int i = 0; i < rs_->rank(); ++i)
      if (cur.has_right_descent(i)) {
        descent = i;
        break;
      }
    if (descent < 0) break;
    rev.push_back(descent);
    cur = cur * simple_reflection(rs_, descent);
    if (int(rev.size()) > rs_->num_positive_roots()) throw InternalError("reduced_word: no termination");
  }
  if (!cur.is_identity()) throw InternalError("reduced_word: element outside the Weyl group");
  std::reverse(rev.begin(), rev.end());
  return rev;
}

std::string WeylElement::word_string() const {
  auto word = reduced_word();
  if (word.empty()) return "1";
  std::ostringstream os;
  for (size_t k = 0; k < word.size(); ++k) os << (k ? " " : "") << 's' << (word[k] + 1);
  return os.str();
}

bool bruhat_leq(const WeylElement& w, const WeylElement& z) {
  same_system(w.root_system(), z.root_system());
  const auto& rs = w.root_system();
  WeylElement a = w, b = z;
  for (;;) {
    if (a.length() > b.length()) return false;
    if (b.is_identity()) return a.is_identity();
    int s = -1;
    for (int i = 0; i < rs->rank(); ++i)
      if (b.has_right_descent(i)) {
        s = i;
        break;
      }
    const WeylElement si = WeylElement::simple_reflection(rs, s);
    if (a.has_right_descent(s)) a = a * si;
    b = b * si;
  }
}

std::vector<IntVec> involution_orthogonal_decomposition(const WeylElement& w) {
  if (!w.is_involution()) throw Error("involution_orthogonal_decomposition: element is not an involution");
  const auto& rs = w.root_system();
  std::vector<IntVec> candidates = rs->positive_roots();
  std::stable_sort(candidates.begin(), candidates.end(), [&](const IntVec& a, const IntVec& b) {
    const bool la = rs->is_long(a), lb = rs->is_long(b);
    if (la != lb) return la;
    return rs->height(a) > rs->height(b);
  });
  std::vector<IntVec> chosen;
  WeylElement cur = w;
  while (!cur.is_identity()) {
    bool found = false;
    for (const auto& gamma : candidates) {
      IntVec img = cur.apply(gamma);
      IntVec neg(gamma);
      for (int& x : neg) x = -x;
      if (img != neg) continue;
      chosen.push_back(gamma);
      cur = cur * WeylElement::reflection(rs, gamma);
      found = true;
      break;
    }
    if (!found) throw InternalError("involution_orthogonal_decomposition: -1 eigenspace not spanned by roots");
  }
  return chosen;
}

DiagramAutomorphism::DiagramAutomorphism(RootSystemPtr rs, std::vector<int> perm)
    : rs_(std::move(rs)), perm_(std::move(perm)) {
  const int n = rs_->rank();
  m_ = IntMatrix(n, n);
  for (int j = 0; j < n; ++j) m_(perm_[size_t(j)], j) = 1;
  if (rs_->gram() != m_.transposed() * rs_->gram() * m_) throw Error("diagram permutation does not preserve the form");
  IntMatrix p = m_;
  order_ = 1;
  while (p != IntMatrix::identity(n)) {
    p = p * m_;
    ++order_;
  }
}

DiagramAutomorphism DiagramAutomorphism::identity(const RootSystemPtr& rs) {
  std::vector<int> perm(static_cast<size_t>(rs->rank()));
  for (int i = 0; i < rs->rank(); ++i) perm[size_t(i)] = i;
  return DiagramAutomorphism(rs, perm);
}

DiagramAutomorphism DiagramAutomorphism::standard(const RootSystemPtr& rs) {
  const int n = rs->rank();
  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[size_t(i)] = i;
  switch (rs->series()) {
  case Series::A:
    if (n < 2) throw Error("A1 has no nontrivial diagram automorphism");
    for (int i = 0; i < n; ++i) perm[size_t(i)] = n - 1 - i;
    break;
  case Series::D:
    std::swap(perm[size_t(n - 2)], perm[size_t(n - 1)]);
    break;
  case Series::E:
    if (n != 6) throw Error(rs->name() + " has no nontrivial diagram automorphism");
    std::swap(perm[0], perm[5]);
    std::swap(perm[2], perm[4]);
    break;
  default:
    throw Error(rs->name() + " has no nontrivial diagram automorphism");
  }
  return DiagramAutomorphism(rs, perm);
}

DiagramAutomorphism DiagramAutomorphism::triality(const RootSystemPtr& rs) {
  if (rs->series() != Series::D || rs->rank() != 4) throw Error("triality requires D4");
  return DiagramAutomorphism(rs, {2, 1, 3, 0});
}

IntMatrix DiagramAutomorphism::power(int i) const {
  i %= order_;
  if (i < 0) i += order_;
  IntMatrix p = IntMatrix::identity(rs_->rank());
  for (int k = 0; k < i; ++k) p = m_ * p;
  return p;
}

TwistedElement::TwistedElement(DiagramAutomorphism tau, int twist_power, WeylElement w)
    : tau_(std::move(tau)), power_(twist_power), w_(std::move(w)) {
  same_system(tau_.root_system(), w_.root_system());
}

TwistedElement::TwistedElement(WeylElement w)
    : tau_(DiagramAutomorphism::identity(w.root_system())), power_(0), w_(std::move(w)) {}

IntMatrix TwistedElement::matrix() const { return tau_.power(power_) * w_.matrix(); }

int rank_one_minus(const TwistedElement& t) {
  const int n = t.weyl().root_system()->rank();
  return rank_over_rationals(IntMatrix::identity(n) - t.matrix());
}

int rank_one_minus(const WeylElement& w) { return rank_one_minus(TwistedElement(w)); }

int criterion_value(const TwistedElement& t) { return t.weyl().length() + rank_one_minus(t); }

int criterion_value(const WeylElement& w) { return criterion_value(TwistedElement(w)); }

} // namespace sphc
