#include "sphc/labels.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "sphc/error.hpp"

namespace sphc {

GroupKind parse_group_kind(const std::string& s) {
  std::string u;
  for (char c : s) u += char(std::toupper(static_cast<unsigned char>(c)));
  if (u == "GL") return GroupKind::GL;
  if (u == "SL") return GroupKind::SL;
  if (u == "SP") return GroupKind::Sp;
  if (u == "O") return GroupKind::O;
  if (u == "SO") return GroupKind::SO;
  throw Error("unknown group kind '" + s + "'");
}

std::string group_kind_name(GroupKind k) {
  switch (k) {
  case GroupKind::GL: return "GL";
  case GroupKind::SL: return "SL";
  case GroupKind::Sp: return "Sp";
  case GroupKind::O: return "O";
  case GroupKind::SO: return "SO";
  }
  return "?";
}

bool has_form(GroupKind k) { return k == GroupKind::Sp || k == GroupKind::O || k == GroupKind::SO; }

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_)
    if (p <= 0) throw Error("partition parts must be positive");
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

Partition Partition::from_multiplicities(const std::map<int, int>& mult) {
  std::vector<int> parts;
  for (auto [part, c] : mult)
    for (int k = 0; k < c; ++k) parts.push_back(part);
  return Partition(parts);
}

int Partition::size() const {
  int s = 0;
  for (int p : parts_) s += p;
  return s;
}

int Partition::multiplicity(int i) const { return int(std::count(parts_.begin(), parts_.end(), i)); }

std::vector<int> Partition::distinct_parts() const {
  std::vector<int> out;
  for (int p : parts_)
    if (out.empty() || out.back() != p) out.push_back(p);
  return out;
}

Partition Partition::dual() const {
  std::vector<int> d;
  for (int i = 1; i <= largest(); ++i) {
    int c = 0;
    for (int p : parts_)
      if (p >= i) ++c;
    d.push_back(c);
  }
  return Partition(d);
}

std::string Partition::str() const {
  std::ostringstream os;
  bool first = true;
  for (int p : distinct_parts()) {
    if (!first) os << '+';
    first = false;
    os << p;
    if (int c = multiplicity(p); c != 1) os << '^' << c;
  }
  return first ? std::string("0") : os.str();
}

bool dominance_leq(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) throw Error("dominance order needs partitions of the same size");
  int sa = 0, sb = 0;
  const size_t len = std::max(a.parts().size(), b.parts().size());
  for (size_t i = 0; i < len; ++i) {
    sa += i < a.parts().size() ? a.parts()[i] : 0;
    sb += i < b.parts().size() ? b.parts()[i] : 0;
    if (sa > sb) return false;
  }
  return true;
}

Eps ClassLabel::eps_at(int i) const {
  if (i == 0) {
    if (kind == GroupKind::Sp) return Eps::One;
    if (kind == GroupKind::O || kind == GroupKind::SO) return Eps::Zero;
    return Eps::Omega;
  }
  auto it = eps.find(i);
  return it == eps.end() ? Eps::Omega : it->second;
}

std::string ClassLabel::str() const {
  std::ostringstream os;
  bool first = true;
  for (int p : lambda.distinct_parts()) {
    if (!first) os << '+';
    first = false;
    os << p;
    if (int c = lambda.multiplicity(p); c != 1) os << '^' << c;
    const Eps e = eps_at(p);
    if (has_form(kind) && e != Eps::Omega) os << '_' << (e == Eps::One ? 1 : 0);
  }
  if (first) os << '0';
  if (tag == SoTag::I) os << "[I]";
  if (tag == SoTag::II) os << "[II]";
  return os.str();
}

bool ClassLabel::operator<(const ClassLabel& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (n != o.n) return n < o.n;
  if (lambda != o.lambda) return lambda > o.lambda;
  if (eps != o.eps) return eps < o.eps;
  return tag < o.tag;
}

LabelCheck validate_label(const ClassLabel& label) {
  auto fail = [](std::string why) { return LabelCheck{false, std::move(why)}; };
  if (label.n <= 0) return fail("size must be positive");
  if (label.lambda.size() != label.matrix_size())
    return fail("partition " + label.lambda.str() + " does not have size " + std::to_string(label.matrix_size()));
  if (!has_form(label.kind)) {
    if (!label.eps.empty()) return fail("epsilon is only defined for Sp/O/SO");
    if (label.tag != SoTag::None) return fail("split tag is only defined for SO");
    return {};
  }
  for (auto [i, e] : label.eps) {
    if (i <= 0) return fail("epsilon keys must be positive part sizes");
    const int c = label.lambda.multiplicity(i);
    if ((i % 2 == 1 || c == 0) && e != Eps::Omega) return fail("b1: epsilon(" + std::to_string(i) + ") must be omega");
  }
  for (int i : label.lambda.distinct_parts()) {
    const int c = label.lambda.multiplicity(i);
    if (i % 2 == 1) {
      if (c % 2 != 0) return fail("a: c(" + std::to_string(i) + ") must be even");
      continue;
    }
    const Eps e = label.eps_at(i);
    if (c % 2 == 1 && e != Eps::One) return fail("b2: epsilon(" + std::to_string(i) + ") must be 1");
    if (e == Eps::Omega) return fail("b3: epsilon(" + std::to_string(i) + ") must be 0 or 1");
  }
  bool splits = false;
  if (label.kind == GroupKind::SO) {
    if (label.lambda.num_parts() % 2 != 0) return fail("SO requires an even number of Jordan blocks");
    splits = true;
    for (int i : label.lambda.distinct_parts())
      if (i % 2 != 0 || label.lambda.multiplicity(i) % 2 != 0 || label.eps_at(i) == Eps::One) splits = false;
  }
  if (splits && label.tag == SoTag::None) return fail("class splits in SO; tag I or II required");
  if (!splits && label.tag != SoTag::None) return fail("split tag given for a class that does not split");
  return {};
}

ClassLabel parse_label(GroupKind kind, int n, const std::string& text) {
  ClassLabel label;
  label.kind = kind;
  label.n = n;
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  auto bad = [&](const std::string& why) { return Error("malformed label '" + text + "': " + why); };
  if (s.size() >= 3 && s.back() == ']') {
    const size_t open = s.rfind('[');
    if (open == std::string::npos) throw bad("unbalanced tag");
    const std::string tag = s.substr(open + 1, s.size() - open - 2);
    if (tag == "I") label.tag = SoTag::I;
    else if (tag == "II") label.tag = SoTag::II;
    else throw bad("unknown tag");
    s = s.substr(0, open);
  }
  std::map<int, int> mult;
  std::map<int, bool> explicit_eps;
  size_t pos = 0;
  auto number = [&]() {
    const size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw bad("expected a number");
    return std::stoi(s.substr(start, pos - start));
  };
  while (pos < s.size()) {
    const int part = number();
    int c = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      c = number();
    }
    if (part <= 0 || c <= 0) throw bad("parts and multiplicities must be positive");
    if (mult.count(part)) throw bad("part " + std::to_string(part) + " repeated");
    mult[part] = c;
    if (pos < s.size() && s[pos] == '_') {
      ++pos;
      const int e = number();
      if (e != 0 && e != 1) throw bad("epsilon subscript must be 0 or 1");
      if (!has_form(kind)) throw bad("epsilon subscripts need a form");
      if (part % 2 != 0) throw bad("epsilon subscript on an odd part");
      label.eps[part] = e ? Eps::One : Eps::Zero;
      explicit_eps[part] = true;
    }
    if (pos < s.size()) {
      if (s[pos] != '+') throw bad("expected '+'");
      ++pos;
      if (pos == s.size()) throw bad("trailing '+'");
    }
  }
  label.lambda = Partition::from_multiplicities(mult);
  if (has_form(kind))
    for (auto [part, c] : mult)
      if (part % 2 == 0 && !explicit_eps.count(part)) {
        if (c % 2 == 1) label.eps[part] = Eps::One;
        else throw bad("epsilon of part " + std::to_string(part) + " is not determined");
      }
  if (auto check = validate_label(label); !check) throw Error("invalid label '" + text + "': " + check.reason);
  return label;
}

namespace {

bool eps_leq(Eps a, Eps b) {
  if (a == Eps::Omega || b == Eps::Omega) return a == b;
  return a <= b;
}

void for_each_partition(int total, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int maxpart) {
    if (remaining == 0) {
      fn(cur);
      return;
    }
    for (int p = std::min(remaining, maxpart); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(total, total);
}

ClassLabel involution_label(GroupKind kind, int n, int twos, Eps e, SoTag tag = SoTag::None) {
  ClassLabel l;
  l.kind = kind;
  l.n = n;
  std::map<int, int> mult{{2, twos}};
  if (2 * n - 2 * twos > 0) mult[1] = 2 * n - 2 * twos;
  l.lambda = Partition::from_multiplicities(mult);
  l.eps[2] = e;
  l.tag = tag;
  return l;
}

NamedClass named(std::string name, std::optional<ClassLabel> label, int dim, bool involutions = true) {
  NamedClass c;
  c.name = std::move(name);
  c.label = std::move(label);
  c.dim = dim;
  c.is_spherical = true;
  c.consists_of_involutions = involutions;
  return c;
}

} // namespace

bool label_leq(const ClassLabel& a, const ClassLabel& b) {
  if (a.kind != b.kind || a.n != b.n) throw Error("label_leq: labels of different groups");
  if (a.lambda != b.lambda) return dominance_leq(a.lambda, b.lambda);
  if (a.tag != b.tag) return false;
  for (int i : a.lambda.distinct_parts())
    if (!eps_leq(a.eps_at(i), b.eps_at(i))) return false;
  return true;
}

std::vector<ClassLabel> all_valid_labels(GroupKind kind, int n) {
  std::vector<ClassLabel> out;
  const int total = has_form(kind) ? 2 * n : n;
  for_each_partition(total, [&](const std::vector<int>& parts) {
    ClassLabel base;
    base.kind = kind;
    base.n = n;
    base.lambda = Partition(parts);
    std::vector<int> free_parts;
    if (has_form(kind))
      for (int i : base.lambda.distinct_parts())
        if (i % 2 == 0) {
          if (base.lambda.multiplicity(i) % 2 == 1) base.eps[i] = Eps::One;
          else free_parts.push_back(i);
        }
    for (unsigned mask = 0; mask < (1u << free_parts.size()); ++mask) {
      ClassLabel l = base;
      for (size_t k = 0; k < free_parts.size(); ++k) l.eps[free_parts[k]] = (mask >> k & 1) ? Eps::One : Eps::Zero;
      for (SoTag tag : {SoTag::None, SoTag::I, SoTag::II}) {
        l.tag = tag;
        if (validate_label(l)) out.push_back(l);
      }
    }
  });
  return out;
}

std::vector<NamedClass> involution_labels(GroupKind kind, int n) {
  std::vector<NamedClass> out;
  if (n < 1) throw Error("involution_labels: n must be positive");
  if (kind == GroupKind::Sp) {
    for (int k = 1; k <= n; ++k) {
      if (k % 2 == 0) {
        const int l = k / 2;
        out.push_back(named("Y_" + std::to_string(k), involution_label(kind, n, k, Eps::Zero), 4 * l * (n - l)));
      }
      out.push_back(named("X_" + std::to_string(k), involution_label(kind, n, k, Eps::One), k * (2 * n - k + 1)));
    }
    return out;
  }
  if (kind == GroupKind::SO || kind == GroupKind::O) {
    const int m = n / 2;
    for (int l = 1; l <= m; ++l) {
      const bool split = kind == GroupKind::SO && 2 * l == n;
      out.push_back(named("X_" + std::to_string(l),
                          involution_label(kind, n, 2 * l, Eps::Zero, split ? SoTag::I : SoTag::None),
                          2 * l * (2 * n - 2 * l - 1)));
      if (split)
        out.push_back(named("X'_" + std::to_string(l), involution_label(kind, n, 2 * l, Eps::Zero, SoTag::II), n * (n - 1)));
      out.push_back(named("Z_" + std::to_string(l), involution_label(kind, n, 2 * l, Eps::One), 4 * l * (n - l)));
    }
    return out;
  }
  throw Error("involution_labels: group kind must be Sp, O or SO");
}

bool is_bad_prime(Series series, int rank, int p) {
  switch (series) {
  case Series::A: return false;
  case Series::B:
  case Series::C:
  case Series::D: return p == 2;
  case Series::E: return p == 2 || p == 3 || (rank == 8 && p == 5);
  case Series::F:
  case Series::G: return p == 2 || p == 3;
  }
  return false;
}

std::vector<NamedClass> spherical_unipotent_classes(Series series, int rank, int p) {
  RootSystem::build(series, rank); // validates the type
  if (p < 2) throw Error("characteristic must be a prime");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw Error("characteristic must be a prime");
  if (series != Series::A && !is_bad_prime(series, rank, p))
    throw Error(std::to_string(p) + " is not a bad characteristic for " + std::string(1, series_char(series)) +
                std::to_string(rank));
  const bool inv = p == 2;
  std::vector<NamedClass> out;
  switch (series) {
  case Series::A: {
    const int size = rank + 1;
    for (int l = 1; 2 * l <= size; ++l) {
      ClassLabel lab;
      lab.kind = GroupKind::SL;
      lab.n = size;
      std::map<int, int> mult{{2, l}};
      if (size - 2 * l > 0) mult[1] = size - 2 * l;
      lab.lambda = Partition::from_multiplicities(mult);
      // order p elements; involutions only when p = 2
      out.push_back(named("X_" + std::to_string(l), lab, 2 * l * (size - l), inv));
    }
    return out;
  }
  case Series::B:
  case Series::C: return involution_labels(GroupKind::Sp, rank);
  case Series::D: return involution_labels(GroupKind::SO, rank);
  case Series::E:
    if (rank == 6) return {named("A1", {}, 22, inv), named("2A1", {}, 32, inv), named("3A1", {}, 40, inv)};
    if (rank == 7)
      return {named("A1", {}, 34, inv), named("2A1", {}, 52, inv), named("(3A1)''", {}, 54, inv),
              named("(3A1)'", {}, 64, inv), named("4A1", {}, 70, inv)};
    return {named("A1", {}, 58, inv), named("2A1", {}, 92, inv), named("3A1", {}, 112, inv), named("4A1", {}, 128, inv)};
  case Series::F:
    if (p == 2)
      return {named("A1", {}, 16), named("~A1", {}, 16), named("~A1^(2)", {}, 22), named("A1~A1", {}, 28)};
    return {named("A1", {}, 16, false), named("~A1", {}, 22, false), named("A1~A1", {}, 28, false)};
  case Series::G:
    if (p == 2) return {named("A1", {}, 6), named("~A1", {}, 8)};
    return {named("A1", {}, 6, false), named("~A1", {}, 6, false), named("~A1^(3)", {}, 8, false)};
  }
  return out;
}

std::vector<ClassLabel> order4_minimal_labels(int n) {
  if (n < 2) throw Error("order4_minimal_labels: n must be at least 2");
  std::vector<ClassLabel> order4;
  for (auto& l : all_valid_labels(GroupKind::Sp, n))
    if (l.lambda.largest() == 3 || l.lambda.largest() == 4) order4.push_back(l);
  std::vector<ClassLabel> out;
  for (const auto& a : order4) {
    bool minimal = true;
    for (const auto& b : order4)
      if (!(a == b) && label_leq(b, a)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(a);
  }
  return out;
}

std::vector<NamedClass> outer_involution_labels(int n) {
  if (n < 2) throw Error("outer_involution_labels: n must be at least 2");
  std::vector<NamedClass> out;
  for (int k = 1; k <= n; k += 2)
    out.push_back(named("O_" + std::to_string(k), involution_label(GroupKind::O, n, k, Eps::One), k * (2 * n - k)));
  return out;
}

} // namespace sphc
