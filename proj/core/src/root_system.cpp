#include "sphc/root_system.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "sphc/error.hpp"

namespace sphc {

Series parse_series(const std::string& s) {
  if (s.size() == 1) {
    const char c = char(std::toupper(static_cast<unsigned char>(s[0])));
    if (std::string("ABCDEFG").find(c) != std::string::npos) return Series(c);
  }
  throw Error("unknown series '" + s + "'");
}

char series_char(Series s) { return char(s); }

int expected_positive_root_count(Series series, int n) {
  switch (series) {
  case Series::A: return n * (n + 1) / 2;
  case Series::B:
  case Series::C: return n * n;
  case Series::D: return n * (n - 1);
  case Series::E: return n == 6 ? 36 : n == 7 ? 63 : 120;
  case Series::F: return 24;
  case Series::G: return 6;
  }
  return 0;
}

namespace {

void check_type(Series s, int n) {
  bool ok = false;
  switch (s) {
  case Series::A: ok = n >= 1; break;
  case Series::B: ok = n >= 2; break;
  case Series::C: ok = n >= 2; break;
  case Series::D: ok = n >= 4; break;
  case Series::E: ok = n >= 6 && n <= 8; break;
  case Series::F: ok = n == 4; break;
  case Series::G: ok = n == 2; break;
  }
  if (!ok) throw Error(std::string("invalid simple type ") + series_char(s) + std::to_string(n));
}

IntVec unit(int dim, int i, int coeff = 1) {
  IntVec v(size_t(dim), 0);
  v[size_t(i)] = coeff;
  return v;
}

IntVec diff(int dim, int i, int j) {
  IntVec v(size_t(dim), 0);
  v[size_t(i)] = 1;
  v[size_t(j)] -= 1;
  return v;
}

int dot(const IntVec& a, const IntVec& b) {
  int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Bourbaki simple roots; indices below are 0-based e-coordinates.
std::vector<IntVec> bourbaki_simple_roots(Series s, int n, int& dim, int& scale) {
  std::vector<IntVec> r;
  scale = 1;
  switch (s) {
  case Series::A:
    dim = n + 1;
    for (int i = 0; i < n; ++i) r.push_back(diff(dim, i, i + 1));
    break;
  case Series::B:
  case Series::C:
  case Series::D:
    dim = n;
    for (int i = 0; i + 1 < n; ++i) r.push_back(diff(dim, i, i + 1));
    if (s == Series::B) r.push_back(unit(dim, n - 1));
    if (s == Series::C) r.push_back(unit(dim, n - 1, 2));
    if (s == Series::D) {
      IntVec last(size_t(dim), 0);
      last[size_t(n - 2)] = 1;
      last[size_t(n - 1)] = 1;
      r.push_back(last);
    }
    break;
  case Series::G:
    dim = 3;
    r.push_back(diff(3, 0, 1));
    r.push_back(IntVec{-2, 1, 1});
    break;
  case Series::F:
    dim = 4;
    scale = 2;
    r.push_back(IntVec{0, 2, -2, 0});
    r.push_back(IntVec{0, 0, 2, -2});
    r.push_back(IntVec{0, 0, 0, 2});
    r.push_back(IntVec{1, -1, -1, -1});
    break;
  case Series::E: {
    dim = 8;
    scale = 2;
    r.push_back(IntVec{1, -1, -1, -1, -1, -1, -1, 1});
    r.push_back(IntVec{2, 2, 0, 0, 0, 0, 0, 0});
    r.push_back(IntVec{-2, 2, 0, 0, 0, 0, 0, 0});
    for (int i = 4; i <= n; ++i) {
      IntVec v(8, 0);
      v[size_t(i - 2)] = 2;
      v[size_t(i - 3)] = -2;
      r.push_back(v);
    }
    break;
  }
  }
  return r;
}

} // namespace

std::shared_ptr<const RootSystem> RootSystem::build(Series series, int rank) {
  check_type(series, rank);
  std::shared_ptr<RootSystem> rs(new RootSystem());
  rs->series_ = series;
  rs->rank_ = rank;
  auto simple = bourbaki_simple_roots(series, rank, rs->ambient_dim_, rs->ambient_scale_);
  rs->finish_construction(simple);
  return rs;
}

void RootSystem::finish_construction(const std::vector<IntVec>& ambient_simple) {
  const int n = rank_;
  ambient_simple_ = ambient_simple;
  IntMatrix raw(n, n);
  int shortest = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) raw(i, j) = dot(ambient_simple[size_t(i)], ambient_simple[size_t(j)]);
  for (int i = 0; i < n; ++i)
    if (shortest == 0 || raw(i, i) < shortest) shortest = int(raw(i, i));

  gram_ = IntMatrix(n, n);
  cartan_ = IntMatrix(n, n);
  d_.assign(size_t(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if ((2 * raw(i, j)) % shortest != 0) throw InternalError("non-integral normalized Gram matrix");
      gram_(i, j) = 2 * raw(i, j) / shortest;
    }
  for (int i = 0; i < n; ++i) {
    d_[size_t(i)] = int(gram_(i, i) / 2);
    for (int j = 0; j < n; ++j) cartan_(i, j) = 2 * gram_(i, j) / gram_(i, i);
  }

  std::set<IntVec> seen;
  std::deque<IntVec> queue;
  for (int i = 0; i < n; ++i) {
    seen.insert(simple_root(i));
    queue.push_back(simple_root(i));
  }
  while (!queue.empty()) {
    IntVec beta = queue.front();
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      IntVec img = reflect(simple_root(i), beta);
      if (is_positive(img) && seen.insert(img).second) queue.push_back(img);
    }
  }
  positive_.assign(seen.begin(), seen.end());
  std::stable_sort(positive_.begin(), positive_.end(), [&](const IntVec& a, const IntVec& b) {
    const int ha = height(a), hb = height(b);
    return ha != hb ? ha < hb : a < b;
  });
  if (num_positive_roots() != expected_positive_root_count(series_, rank_))
    throw InternalError("positive root count mismatch for " + name());
  for (int i = 0; i < num_positive_roots(); ++i) positive_lookup_[positive_[size_t(i)]] = i;
}

std::string RootSystem::name() const { return std::string(1, series_char(series_)) + std::to_string(rank_); }

IntVec RootSystem::simple_root(int i) const {
  if (i < 0 || i >= rank_) throw Error("simple root index out of range");
  return unit(rank_, i);
}

int RootSystem::inner(const IntVec& x, const IntVec& y) const {
  int64_t s = 0;
  for (int i = 0; i < rank_; ++i) {
    if (x[size_t(i)] == 0) continue;
    for (int j = 0; j < rank_; ++j) s += int64_t(x[size_t(i)]) * gram_(i, j) * y[size_t(j)];
  }
  return int(s);
}

int RootSystem::height(const IntVec& root) const { return std::accumulate(root.begin(), root.end(), 0); }

bool RootSystem::is_positive(const IntVec& v) {
  bool nonzero = false;
  for (int x : v) {
    if (x < 0) return false;
    nonzero |= x != 0;
  }
  return nonzero;
}

bool RootSystem::is_negative(const IntVec& v) {
  bool nonzero = false;
  for (int x : v) {
    if (x > 0) return false;
    nonzero |= x != 0;
  }
  return nonzero;
}

std::optional<int> RootSystem::positive_index(const IntVec& v) const {
  if (int(v.size()) != rank_) return std::nullopt;
  auto it = positive_lookup_.find(v);
  if (it != positive_lookup_.end()) return it->second;
  IntVec neg(v);
  for (int& x : neg) x = -x;
  it = positive_lookup_.find(neg);
  if (it != positive_lookup_.end()) return it->second;
  return std::nullopt;
}

bool RootSystem::is_root(const IntVec& v) const { return positive_index(v).has_value(); }

bool RootSystem::is_long(const IntVec& root) const {
  int longest = 0;
  for (int i = 0; i < rank_; ++i) longest = std::max(longest, int(gram_(i, i)));
  return inner(root, root) == longest;
}

IntVec RootSystem::reflect(const IntVec& beta, const IntVec& x) const {
  const int bb = inner(beta, beta);
  const int xb = inner(x, beta);
  if (bb == 0 || (2 * xb) % bb != 0) throw Error("reflect: not a root");
  const int c = 2 * xb / bb;
  IntVec out(x);
  for (int i = 0; i < rank_; ++i) out[size_t(i)] -= c * beta[size_t(i)];
  return out;
}

IntVec RootSystem::highest_short_root() const {
  for (auto it = positive_.rbegin(); it != positive_.rend(); ++it)
    if (inner(*it, *it) == 2) return *it;
  throw InternalError("no short root");
}

IntVec RootSystem::to_ambient(const IntVec& c) const {
  IntVec out(size_t(ambient_dim_), 0);
  for (int i = 0; i < rank_; ++i)
    for (int k = 0; k < ambient_dim_; ++k) out[size_t(k)] += c[size_t(i)] * ambient_simple_[size_t(i)][size_t(k)];
  return out;
}

IntVec RootSystem::from_ambient(const IntVec& v) const {
  if (int(v.size()) != ambient_dim_) throw Error("from_ambient: dimension mismatch");
  // Cramer's rule on the ambient Gram system G c = b.
  IntMatrix g(rank_, rank_);
  IntVec b(static_cast<size_t>(rank_));
  for (int i = 0; i < rank_; ++i) {
    b[size_t(i)] = dot(ambient_simple_[size_t(i)], v);
    for (int j = 0; j < rank_; ++j) g(i, j) = dot(ambient_simple_[size_t(i)], ambient_simple_[size_t(j)]);
  }
  const int64_t det = g.determinant();
  IntVec c(static_cast<size_t>(rank_));
  for (int j = 0; j < rank_; ++j) {
    IntMatrix gj(g);
    for (int i = 0; i < rank_; ++i) gj(i, j) = b[size_t(i)];
    const int64_t num = gj.determinant();
    if (num % det != 0) throw Error("vector is not in the root lattice");
    c[size_t(j)] = int(num / det);
  }
  if (to_ambient(c) != v) throw Error("vector is not in the span of the roots");
  return c;
}

bool RootSystem::is_classical() const {
  return series_ == Series::A || series_ == Series::B || series_ == Series::C || series_ == Series::D;
}

std::string RootSystem::format_root(const IntVec& root) const {
  std::ostringstream os;
  if (!is_classical()) {
    os << '(';
    for (int i = 0; i < rank_; ++i) os << (i ? "," : "") << root[size_t(i)];
    os << ')';
    return os.str();
  }
  const IntVec amb = to_ambient(root);
  bool first = true;
  for (int k = 0; k < ambient_dim_; ++k) {
    const int c = amb[size_t(k)];
    if (c == 0) continue;
    if (c < 0) os << '-';
    else if (!first) os << '+';
    if (std::abs(c) != 1) os << std::abs(c);
    os << 'e' << (k + 1);
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

IntVec RootSystem::parse_root(const std::string& text) const {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error("empty root");
  IntVec result;
  auto number = [&](size_t& pos) {
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw Error("malformed root '" + text + "'");
    return std::stoi(s.substr(start, pos - start));
  };

  int outer_sign = 1;
  size_t pos = 0;
  if (s[0] == '-' && s.size() > 1 && (s[1] == '(' || s[1] == 'a')) {
    outer_sign = -1;
    pos = 1;
  }
  if (s[pos] == '(') {
    ++pos;
    while (pos < s.size() && s[pos] != ')') {
      int sign = 1;
      if (s[pos] == '-') {
        sign = -1;
        ++pos;
      }
      result.push_back(sign * number(pos));
      if (pos < s.size() && s[pos] == ',') ++pos;
    }
    if (pos >= s.size() || pos + 1 != s.size()) throw Error("malformed root '" + text + "'");
    if (int(result.size()) != rank_) throw Error("root '" + text + "' has the wrong number of coordinates");
  } else if (s[pos] == 'a') {
    ++pos;
    if (s.compare(pos, 4, "lpha") == 0) pos += 4;
    const int i = number(pos);
    if (pos != s.size() || i < 1 || i > rank_) throw Error("malformed simple root '" + text + "'");
    result = simple_root(i - 1);
  } else {
    if (!is_classical()) throw Error("e-coordinates are only accepted for classical types");
    IntVec amb(size_t(ambient_dim_), 0);
    while (pos < s.size()) {
      int sign = 1;
      if (s[pos] == '+' || s[pos] == '-') {
        sign = s[pos] == '-' ? -1 : 1;
        ++pos;
      }
      int coeff = 1;
      if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) coeff = number(pos);
      if (pos >= s.size() || s[pos] != 'e') throw Error("malformed root '" + text + "'");
      ++pos;
      const int k = number(pos);
      if (k < 1 || k > ambient_dim_) throw Error("coordinate index out of range in '" + text + "'");
      amb[size_t(k - 1)] += sign * coeff;
    }
    result = from_ambient(amb);
  }
  for (int& x : result) x *= outer_sign;
  if (!is_root(result)) throw Error("'" + text + "' is not a root of " + name());
  return result;
}

} // namespace sphc
