#include "sphc/representative.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>

#include "sphc/error.hpp"

namespace sphc {

Mat theta(const GroupSpec& spec, const Mat& g) {
  auto inv = g.inverse();
  if (!inv) throw Error("theta of a singular matrix");
  const Mat j = spec.flip();
  return j * inv->transposed() * j;
}

TwistedMat twisted_mul(const GroupSpec& spec, const TwistedMat& a, const TwistedMat& b) {
  // (tau^a g)(tau^b h) = tau^(a+b) theta^b(g) h
  return TwistedMat{a.twist != b.twist, (b.twist ? theta(spec, a.g) : a.g) * b.g};
}

TwistedMat twisted_inverse(const GroupSpec& spec, const TwistedMat& a) {
  auto inv = a.g.inverse();
  if (!inv) throw Error("inverse of a singular matrix");
  // (tau g)^{-1} = g^{-1} tau = tau theta(g^{-1})
  return TwistedMat{a.twist, a.twist ? theta(spec, *inv) : *inv};
}

Mat orthogonal_swap(const GroupSpec& spec) {
  if (spec.kind() != GroupKind::O && spec.kind() != GroupKind::SO) throw Error("the swap twist needs an orthogonal group");
  const int n = spec.n();
  Mat t = spec.identity();
  t.set(n - 1, n - 1, 0);
  t.set(n, n, 0);
  t.set(n - 1, n, 1);
  t.set(n, n - 1, 1);
  return t;
}

bool is_unipotent(const Mat& u) {
  const Mat nil = u + Mat::identity(u.field(), u.size());
  Mat p = nil;
  for (int i = 1; i < u.size(); ++i) p = p * nil;
  return p.is_zero();
}

Partition jordan_type(const Mat& u) {
  const int m = u.size();
  const Mat nil = u + Mat::identity(u.field(), m);
  std::vector<int> ranks{m};
  Mat p = Mat::identity(u.field(), m);
  while (ranks.back() > 0) {
    if (int(ranks.size()) > m) throw Error("jordan_type: matrix is not unipotent");
    p = p * nil;
    ranks.push_back(p.rank());
  }
  std::map<int, int> mult;
  for (size_t i = 1; i < ranks.size(); ++i) {
    const int next = i + 1 < ranks.size() ? ranks[i + 1] : 0;
    const int c = ranks[i - 1] - 2 * ranks[i] + next;
    if (c > 0) mult[int(i)] = c;
  }
  return Partition::from_multiplicities(mult);
}

namespace {

std::vector<uint8_t> vadd(std::vector<uint8_t> a, const std::vector<uint8_t>& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
  return a;
}

Mat power(const Mat& a, int e) {
  Mat p = Mat::identity(a.field(), a.size());
  for (int i = 0; i < e; ++i) p = p * a;
  return p;
}

// Rank of the span of the given vectors.
int span_rank(const FieldPtr& f, int m, const std::vector<std::vector<uint8_t>>& vecs) {
  if (vecs.empty()) return 0;
  Mat a(f, m);
  // Columns beyond m are not representable; callers pass at most m vectors at
  // a time through the helper below.
  for (size_t j = 0; j < vecs.size(); ++j)
    for (int r = 0; r < m; ++r) a.set(r, int(j), vecs[j][size_t(r)]);
  return a.rank();
}

// Basis of the span of vecs (greedy).
std::vector<std::vector<uint8_t>> span_basis(const FieldPtr& f, int m, const std::vector<std::vector<uint8_t>>& vecs) {
  std::vector<std::vector<uint8_t>> basis;
  for (const auto& v : vecs) {
    auto trial = basis;
    trial.push_back(v);
    if (span_rank(f, m, trial) > int(basis.size())) basis = std::move(trial);
    if (int(basis.size()) == m) break;
  }
  return basis;
}

// The u-stable subspace sum_i N^i(ker N^{2i}); for split classes it is a
// maximal totally singular subspace, whose family decides the SO class.
std::optional<SoTag> split_tag(const GroupSpec& spec, const Mat& nil) {
  const int m = spec.m();
  const int n = spec.n();
  std::vector<std::vector<uint8_t>> gens;
  Mat ni = Mat::identity(spec.field(), m);
  for (int i = 1; 2 * i <= m; ++i) {
    ni = ni * nil;
    const Mat n2i = ni * ni;
    for (const auto& k : n2i.kernel_basis()) gens.push_back(ni.apply(k));
  }
  auto w = span_basis(spec.field(), m, gens);
  if (int(w.size()) != n) return std::nullopt;
  for (size_t a = 0; a < w.size(); ++a) {
    if (spec.quadratic_form(w[a]) != 0) return std::nullopt;
    for (size_t b = a + 1; b < w.size(); ++b)
      if (spec.bilinear_form(w[a], w[b]) != 0) return std::nullopt;
  }
  // dim(W ∩ E) with E = span(v_1..v_n): W ∩ E is the kernel of the
  // projection onto the last n coordinates restricted to W.
  Mat proj(spec.field(), m);
  for (size_t j = 0; j < w.size(); ++j)
    for (int r = n; r < m; ++r) proj.set(r, int(j), w[j][size_t(r)]);
  const int meet = n - proj.rank();
  return (n - meet) % 2 == 0 ? SoTag::I : SoTag::II;
}

} // namespace

ClassLabel class_label(const GroupSpec& spec, const Mat& u) {
  ClassLabel label;
  label.kind = spec.kind() == GroupKind::GL ? GroupKind::GL : spec.kind();
  label.n = spec.n();
  label.lambda = jordan_type(u);
  if (!has_form(spec.kind())) return label;
  const Mat nil = u + spec.identity();
  for (int i : label.lambda.distinct_parts()) {
    if (i % 2 != 0) continue;
    const Mat prev = power(nil, i - 1);
    const auto ker = power(nil, i).kernel_basis();
    auto qf = [&](const std::vector<uint8_t>& x) { return spec.bilinear_form(prev.apply(x), x); };
    bool vanishes = true;
    for (size_t a = 0; a < ker.size() && vanishes; ++a) {
      if (qf(ker[a])) vanishes = false;
      for (size_t b = a + 1; b < ker.size() && vanishes; ++b)
        if (qf(vadd(ker[a], ker[b]))) vanishes = false;
    }
    label.eps[i] = vanishes ? Eps::Zero : Eps::One;
  }
  if (spec.kind() == GroupKind::SO) {
    bool splits = true;
    for (int i : label.lambda.distinct_parts())
      if (i % 2 != 0 || label.lambda.multiplicity(i) % 2 != 0 || label.eps_at(i) == Eps::One) splits = false;
    if (splits) {
      auto tag = split_tag(spec, nil);
      if (!tag) throw InternalError("no canonical maximal singular subspace for " + label.lambda.str());
      label.tag = *tag;
    }
  }
  if (auto check = validate_label(label); !check)
    throw InternalError("computed label " + label.str() + " is invalid: " + check.reason);
  return label;
}

std::vector<int> bruhat_permutation(const Mat& g) {
  const int m = g.size();
  const auto& f = *g.field();
  auto e = unpack(g);
  std::vector<int> sigma(static_cast<size_t>(m), -1);
  std::vector<bool> used(static_cast<size_t>(m), false);
  for (int c = 0; c < m; ++c) {
    int p = -1;
    for (int r = m - 1; r >= 0; --r)
      if (!used[size_t(r)] && e[size_t(r)][size_t(c)]) {
        p = r;
        break;
      }
    if (p < 0) throw Error("bruhat_permutation: matrix is singular");
    sigma[size_t(c)] = p;
    used[size_t(p)] = true;
    const uint8_t pinv = f.inv(e[size_t(p)][size_t(c)]);
    // Clear column c above the pivot with upward row operations.
    for (int r = 0; r < p; ++r) {
      const uint8_t factor = f.mul(e[size_t(r)][size_t(c)], pinv);
      if (!factor) continue;
      for (int j = c; j < m; ++j) e[size_t(r)][size_t(j)] ^= f.mul(factor, e[size_t(p)][size_t(j)]);
    }
    // Clear the pivot row to the right with rightward column operations.
    for (int j = c + 1; j < m; ++j) e[size_t(p)][size_t(j)] = 0;
  }
  return sigma;
}

namespace {

WeylElement weyl_from_permutation(const GroupSpec& spec, const std::vector<int>& sigma) {
  auto rs = spec.root_system();
  if (!rs) throw Error(spec.name() + " has no attached root datum");
  const int d = spec.root_dim();
  // Linear map on e-coordinates: e_i -> weight(sigma(i)).
  auto act = [&](const IntVec& v) {
    IntVec out(static_cast<size_t>(d), 0);
    for (int i = 0; i < d; ++i) {
      if (!v[size_t(i)]) continue;
      const IntVec wt = spec.weight(sigma[size_t(i)]);
      for (int k = 0; k < d; ++k) out[size_t(k)] += v[size_t(i)] * wt[size_t(k)];
    }
    return out;
  };
  if (has_form(spec.kind())) {
    const int m = spec.m();
    for (int c = 0; c < m; ++c)
      if (sigma[size_t(m - 1 - c)] != m - 1 - sigma[size_t(c)])
        throw InternalError("Bruhat permutation does not commute with the form flip");
  }
  std::vector<IntVec> images;
  for (int j = 0; j < rs->rank(); ++j) {
    const IntVec amb = act(spec.from_simple_coords(rs->simple_root(j)));
    images.push_back(spec.to_simple_coords(amb));
  }
  try {
    return WeylElement::from_images(rs, images);
  } catch (const Error& e) {
    throw InternalError(std::string("Bruhat permutation outside the Weyl group: ") + e.what());
  }
}

} // namespace

WeylElement bruhat_cell(const GroupSpec& spec, const Mat& g) { return weyl_from_permutation(spec, bruhat_permutation(g)); }

TwistedElement bruhat_cell(const GroupSpec& spec, const TwistedMat& t) {
  WeylElement w = bruhat_cell(spec, t.g);
  if (!t.twist) return TwistedElement(w);
  if (has_form(spec.kind())) throw Error("twisted wrapper is only used for GL/SL");
  return TwistedElement(DiagramAutomorphism::standard(spec.root_system()), 1, w);
}

TwistedElement bruhat_cell_outer(const GroupSpec& spec, const Mat& g) {
  const Mat s = orthogonal_swap(spec);
  WeylElement w = bruhat_cell(spec, s * g);
  return TwistedElement(DiagramAutomorphism::standard(spec.root_system()), 1, w);
}

Mat weyl_representative(const GroupSpec& spec, const WeylElement& w) {
  auto rs = spec.root_system();
  if (!rs) throw Error(spec.name() + " has no attached root datum");
  Mat g = spec.identity();
  for (int i : w.reduced_word()) g = g * spec.n_alpha(spec.from_simple_coords(rs->simple_root(i)));
  return g;
}

TwistedMat build_representative(const GroupSpec& spec, const std::string& recipe) {
  std::istringstream is(recipe);
  std::string tok;
  TwistedMat acc{false, spec.identity()};
  const bool orth = spec.kind() == GroupKind::O || spec.kind() == GroupKind::SO;
  auto scalar = [&](const std::string& s) {
    int v = 0;
    try {
      size_t used = 0;
      v = std::stoi(s, &used, 0);
      if (used != s.size()) throw Error("");
    } catch (...) {
      throw Error("bad field element '" + s + "' in recipe");
    }
    if (v < 0 || v >= spec.field()->order()) throw Error("field element " + s + " out of range");
    return uint8_t(v);
  };
  bool any = false;
  while (is >> tok) {
    if (tok == "*") continue;
    any = true;
    TwistedMat factor{false, spec.identity()};
    if (tok == "tau") {
      if (orth) factor.g = orthogonal_swap(spec);
      else if (spec.kind() == GroupKind::Sp) throw Error("Sp has no graph twist");
      else factor.twist = true;
    } else {
      std::vector<std::string> parts;
      std::string part;
      std::istringstream ps(tok);
      while (std::getline(ps, part, ':')) parts.push_back(part);
      if (parts.size() < 2) throw Error("unknown recipe symbol '" + tok + "'");
      const IntVec root = spec.parse_root(parts[1]);
      if (parts[0] == "x" && parts.size() <= 3) factor.g = spec.x(root, parts.size() == 3 ? scalar(parts[2]) : 1);
      else if (parts[0] == "n" && parts.size() == 2) factor.g = spec.n_alpha(root);
      else if (parts[0] == "h" && parts.size() == 3) factor.g = spec.h(root, scalar(parts[2]));
      else throw Error("unknown recipe symbol '" + tok + "'");
    }
    acc = twisted_mul(spec, acc, factor);
  }
  if (!any) throw Error("empty recipe");
  return acc;
}

bool verify_exchange_identity(const GroupSpec& spec, const std::vector<IntVec>& roots, const std::vector<uint8_t>& scalars) {
  if (roots.size() != scalars.size()) throw Error("verify_exchange_identity: one scalar per root");
  for (size_t i = 0; i < roots.size(); ++i) {
    if (!scalars[i]) throw Error("verify_exchange_identity: scalars must be nonzero");
    for (size_t j = i + 1; j < roots.size(); ++j) {
      int d = 0;
      for (size_t k = 0; k < roots[i].size(); ++k) d += roots[i][k] * roots[j][k];
      if (d != 0) throw Error("verify_exchange_identity: roots are not pairwise orthogonal");
    }
  }
  const auto& f = *spec.field();
  Mat g = spec.identity(), lower = spec.identity(), mono = spec.identity(), torus = spec.identity();
  for (size_t i = 0; i < roots.size(); ++i) {
    IntVec neg = roots[i];
    for (int& x : neg) x = -x;
    g = g * spec.x(roots[i], f.inv(scalars[i]));
    lower = lower * spec.x(neg, scalars[i]);
    mono = mono * spec.n_alpha(roots[i]);
    torus = torus * spec.h(roots[i], scalars[i]);
  }
  const Mat lhs = g * lower * spec.inverse(g);
  return lhs == mono * torus;
}

std::string serialize(const GroupSpec& spec, const TwistedMat& t) {
  std::ostringstream os;
  const Mat& g = t.g;
  os << group_kind_name(spec.kind()) << ':' << g.size() << ':' << g.degree() << ":0x" << std::hex
     << g.field()->polynomial() << std::dec;
  if (t.twist) os << ":tau";
  os << '\n';
  const int m = g.size();
  const int bits = m * m;
  const int digits = (bits + 3) / 4;
  for (int b = 0; b < g.degree(); ++b) {
    std::string line(size_t(digits), '0');
    for (int idx = 0; idx < bits; ++idx) {
      const int r = idx / m, c = idx % m;
      if (g.row_bits(b, r) >> c & 1) {
        char& ch = line[size_t(idx / 4)];
        int v = std::isdigit(static_cast<unsigned char>(ch)) ? ch - '0' : ch - 'a' + 10;
        v |= 8 >> (idx % 4);
        ch = "0123456789abcdef"[v];
      }
    }
    os << line << '\n';
  }
  return os.str();
}

ParsedElement deserialize(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header)) throw Error("empty element text");
  std::vector<std::string> fields;
  std::string part;
  std::istringstream hs(header);
  while (std::getline(hs, part, ':')) fields.push_back(part);
  if (fields.size() < 4 || fields.size() > 5) throw Error("malformed element header '" + header + "'");
  ParsedElement out{parse_group_kind(fields[0]), 0, nullptr, {}};
  int k = 0;
  unsigned poly = 0;
  try {
    out.m = std::stoi(fields[1]);
    k = std::stoi(fields[2]);
    poly = unsigned(std::stoul(fields[3], nullptr, 0));
  } catch (const std::exception&) {
    throw Error("malformed element header '" + header + "'");
  }
  if (fields.size() == 5 && fields[4] != "tau") throw Error("malformed element header '" + header + "'");
  out.element.twist = fields.size() == 5;
  auto standard = FiniteField::get(k);
  out.field = standard->polynomial() == poly ? standard : FiniteField::with_polynomial(k, poly);
  Mat g(out.field, out.m);
  const int bits = out.m * out.m;
  const int digits = (bits + 3) / 4;
  for (int b = 0; b < k; ++b) {
    std::string line;
    if (!std::getline(is, line)) throw Error("missing bit-plane line");
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (int(line.size()) != digits) throw Error("bit-plane line has the wrong length");
    for (int idx = 0; idx < bits; ++idx) {
      const char ch = char(std::tolower(static_cast<unsigned char>(line[size_t(idx / 4)])));
      int v;
      if (ch >= '0' && ch <= '9') v = ch - '0';
      else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
      else throw Error("bad hex digit in element text");
      if (v & (8 >> (idx % 4))) {
        const int r = idx / out.m, c = idx % out.m;
        g.set(r, c, uint8_t(g.get(r, c) | (1u << b)));
      }
    }
  }
  out.element.g = g;
  return out;
}

} // namespace sphc
