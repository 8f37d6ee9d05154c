#include "sphc/census.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <set>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "sphc/error.hpp"

namespace sphc {

namespace {

__extension__ typedef unsigned __int128 u128;

using KeySet = std::unordered_set<MatKey, MatKeyHash>;

int log2_exact(int q) {
  int k = 0;
  while ((1 << k) < q) ++k;
  if ((1 << k) != q || k < 1 || k > 8) throw Error("field size must be 2^k with 1 <= k <= 8, got " + std::to_string(q));
  return k;
}

uint64_t checked_pow(int q, int e) {
  const int k = log2_exact(q);
  if (k * e >= 64) throw ResourceError("q^" + std::to_string(e) + " overflows 64 bits");
  return uint64_t(1) << (k * e);
}

template <class F>
void parallel_for(size_t count, int jobs, F&& body) {
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < count; i = next++) body(i);
  };
  const int threads = std::max(1, std::min<int>(jobs, int(count)));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

std::vector<Mat> unipotent_radical_elements(const GroupSpec& spec) {
  const auto& f = spec.field();
  std::vector<Mat> cur{spec.identity()};
  for (const auto& a : spec.positive_roots()) {
    std::vector<Mat> next;
    next.reserve(cur.size() * size_t(f->order()));
    for (const auto& u : cur)
      for (int t = 0; t < f->order(); ++t) next.push_back(t ? u * spec.x(a, uint8_t(t)) : u);
    cur = std::move(next);
  }
  return cur;
}

struct Conjugator {
  Mat g;
  Mat g_inv;
};

std::vector<Conjugator> conjugators(const GroupSpec& spec, const std::vector<Mat>& gens) {
  std::vector<Conjugator> out;
  for (const auto& g : gens) out.push_back({g, spec.inverse(g)});
  return out;
}

std::vector<Mat> borel_generators(const GroupSpec& spec) {
  const auto& f = spec.field();
  std::vector<Mat> gens;
  for (const auto& a : spec.positive_roots())
    for (int b = 0; b < f->degree(); ++b) gens.push_back(spec.x(a, uint8_t(1u << b)));
  if (f->order() > 2) {
    if (spec.kind() == GroupKind::GL) {
      for (int i = 0; i < spec.m(); ++i) {
        std::vector<uint8_t> d(static_cast<size_t>(spec.m()), 1);
        d[size_t(i)] = f->generator();
        gens.push_back(spec.diag(d));
      }
    } else {
      for (const auto& a : spec.simple_roots()) gens.push_back(spec.h(a, f->generator()));
    }
  }
  return gens;
}

// Orbit of `start` under conjugation by the given generators; `seen` is shared
// across calls so that orbits partition the visited set.
std::vector<MatKey> conjugation_orbit(const GroupSpec& spec, const MatKey& start, const std::vector<Conjugator>& gens,
                                      KeySet& seen, const KeySet* universe) {
  std::vector<MatKey> orbit{start};
  seen.insert(start);
  for (size_t i = 0; i < orbit.size(); ++i) {
    const Mat x = unpack_key(orbit[i], spec.field(), spec.m());
    for (const auto& c : gens) {
      const MatKey k = pack_key(c.g * x * c.g_inv);
      if (universe && !universe->count(k)) throw InternalError("orbit left a set assumed to be closed under conjugation");
      if (seen.insert(k).second) orbit.push_back(k);
    }
  }
  return orbit;
}

int log_ratio_round(double num, double den, double base_ratio) {
  return int(std::lround(std::log2(num / den) / std::log2(base_ratio)));
}

bool label_selected(const CensusOptions& o, const ClassLabel& l) {
  return o.only.empty() || std::find(o.only.begin(), o.only.end(), l) != o.only.end();
}

ClassRecord& record_for(std::vector<ClassRecord>& records, const ClassLabel& label) {
  for (auto& r : records)
    if (r.label == label) return r;
  records.push_back(ClassRecord{});
  records.back().label = label;
  return records.back();
}

void merge_cells(std::vector<std::pair<WeylElement, uint64_t>>& into, const std::vector<std::pair<WeylElement, uint64_t>>& from) {
  for (const auto& [w, c] : from) {
    auto it = std::find_if(into.begin(), into.end(), [&](const auto& e) { return e.first == w; });
    if (it == into.end()) into.emplace_back(w, c);
    else it->second += c;
  }
}

void sort_cells(std::vector<std::pair<WeylElement, uint64_t>>& cells) {
  std::stable_sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    if (a.first.length() != b.first.length()) return a.first.length() < b.first.length();
    return a.first.reduced_word() < b.first.reduced_word();
  });
}

void decide_verdict(ClassRecord& r, int dim_b) {
  if (r.dim_lower_bound > dim_b) {
    r.verdict = Verdict::NonSpherical;
    r.verdict_reason = "class dimension is at least " + std::to_string(r.dim_lower_bound) + " > dim B = " + std::to_string(dim_b);
  }
  std::vector<int> qs;
  for (const auto& [q, m] : r.max_b_orbit)
    if (r.size.count(q)) qs.push_back(q);
  std::optional<int> codim;
  bool agree = true;
  for (size_t i = 0; i + 1 < qs.size(); ++i) {
    const double s1 = double(r.max_b_orbit[qs[i]]) / double(r.size[qs[i]]);
    const double s2 = double(r.max_b_orbit[qs[i + 1]]) / double(r.size[qs[i + 1]]);
    const int c = std::max(0, log_ratio_round(s1, s2, double(qs[i + 1]) / qs[i]));
    if (codim && *codim != c) agree = false;
    codim = c;
  }
  if (codim && agree && r.dim_estimate) r.max_b_orbit_degree = *r.dim_estimate - *codim;
  if (r.verdict == Verdict::NonSpherical) return;
  if (!codim) {
    if (r.dim_estimate && *r.dim_estimate > dim_b) {
      r.verdict = Verdict::NonSpherical;
      r.verdict_reason = "estimated class dimension " + std::to_string(*r.dim_estimate) + " > dim B";
    } else {
      r.verdict_reason = "B-orbit data needed at two field sizes";
    }
    return;
  }
  if (!agree) {
    r.verdict_reason = "B-orbit codimension estimates disagree across field sizes";
    return;
  }
  r.verdict = *codim == 0 ? Verdict::Spherical : Verdict::NonSpherical;
  r.verdict_reason = "largest B-orbit has estimated codimension " + std::to_string(*codim);
}

} // namespace

size_t MatKeyHash::operator()(const MatKey& k) const noexcept {
  uint64_t h = k.lo * 0x9E3779B97F4A7C15ull ^ (k.hi + 0x632BE59BD9B4E019ull + (k.lo << 6) + (k.lo >> 2));
  h ^= h >> 31;
  h *= 0xBF58476D1CE4E5B9ull;
  return size_t(h ^ (h >> 29));
}

bool packable(int m, const FieldPtr& field) { return m * m * field->degree() <= 128; }

MatKey pack_key(const Mat& g) {
  const int m = g.size();
  if (m * m * g.degree() > 128) throw Error("matrix too large for a packed key");
  u128 acc = 0;
  int shift = 0;
  for (int b = 0; b < g.degree(); ++b)
    for (int r = 0; r < m; ++r) {
      acc |= u128(g.row_bits(b, r)) << shift;
      shift += m;
    }
  return MatKey{uint64_t(acc), uint64_t(acc >> 64)};
}

Mat unpack_key(const MatKey& key, const FieldPtr& field, int m) {
  Mat g(field, m);
  u128 acc = (u128(key.hi) << 64) | key.lo;
  const uint32_t mask = m == 32 ? ~0u : (1u << m) - 1;
  for (int b = 0; b < field->degree(); ++b)
    for (int r = 0; r < m; ++r) {
      g.set_row_bits(b, r, uint32_t(acc) & mask);
      acc >>= m;
    }
  return g;
}

std::string verdict_name(Verdict v) {
  switch (v) {
  case Verdict::Spherical: return "spherical";
  case Verdict::NonSpherical: return "non-spherical";
  case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

uint64_t estimated_bytes(uint64_t count) { return count * 64; }

int positive_root_count(GroupKind kind, int n) {
  switch (kind) {
  case GroupKind::GL:
  case GroupKind::SL: return n * (n - 1) / 2;
  case GroupKind::Sp: return n * n;
  case GroupKind::O:
  case GroupKind::SO: return n * (n - 1);
  }
  return 0;
}

int group_dimension(GroupKind kind, int n) {
  switch (kind) {
  case GroupKind::GL: return n * n;
  case GroupKind::SL: return n * n - 1;
  case GroupKind::Sp: return n * (2 * n + 1);
  case GroupKind::O:
  case GroupKind::SO: return n * (2 * n - 1);
  }
  return 0;
}

int borel_dimension(GroupKind kind, int n) {
  const int rank = kind == GroupKind::SL ? n - 1 : n;
  return positive_root_count(kind, n) + rank;
}

std::vector<RationalClass> enumerate_rational_classes(const GroupSpec& spec, uint64_t memory_limit) {
  if (spec.kind() == GroupKind::O) throw Error("unipotent census of O(2n) covers only SO(2n); use the outer-coset census");
  if (!packable(spec.m(), spec.field())) throw ResourceError(spec.name() + " matrices do not fit a 128-bit key");
  const int q = spec.field()->order();
  const uint64_t total = checked_pow(q, 2 * positive_root_count(spec.kind(), spec.n()));
  if (estimated_bytes(total) > memory_limit)
    throw ResourceError(spec.name() + ": " + std::to_string(total) + " unipotent elements exceed the memory limit");
  const auto gens = conjugators(spec, spec.group_generators());
  KeySet seen;
  seen.reserve(size_t(total));
  std::vector<RationalClass> out;
  for (const auto& u : unipotent_radical_elements(spec)) {
    const MatKey k = pack_key(u);
    if (seen.count(k)) continue;
    RationalClass c;
    c.seed = u;
    c.label = class_label(spec, u);
    c.members = conjugation_orbit(spec, k, gens, seen, nullptr);
    c.size = c.members.size();
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(), [](const RationalClass& a, const RationalClass& b) {
    if (!(a.label == b.label)) return a.label < b.label;
    return a.size < b.size;
  });
  return out;
}

std::vector<uint64_t> b_orbit_sizes(const GroupSpec& spec, const std::vector<MatKey>& members) {
  const auto gens = conjugators(spec, borel_generators(spec));
  KeySet universe(members.begin(), members.end());
  KeySet seen;
  seen.reserve(members.size());
  std::vector<uint64_t> sizes;
  for (const auto& k : members) {
    if (seen.count(k)) continue;
    sizes.push_back(conjugation_orbit(spec, k, gens, seen, &universe).size());
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

std::vector<std::pair<WeylElement, uint64_t>> cell_histogram(const GroupSpec& spec, const std::vector<MatKey>& members) {
  if (!spec.root_system()) throw Error(spec.name() + " has no attached root datum for Bruhat cells");
  std::map<std::vector<int>, std::pair<WeylElement, uint64_t>> hist;
  for (const auto& k : members) {
    const WeylElement w = bruhat_cell(spec, unpack_key(k, spec.field(), spec.m()));
    auto word = w.reduced_word();
    auto it = hist.find(word);
    if (it == hist.end()) hist.emplace(std::move(word), std::make_pair(w, uint64_t(1)));
    else ++it->second.second;
  }
  std::vector<std::pair<WeylElement, uint64_t>> out;
  for (auto& [word, e] : hist) out.push_back(e);
  sort_cells(out);
  return out;
}

int lie_centralizer_dim(const GroupSpec& spec, const Mat& u) {
  const auto& f = *spec.field();
  const int m = spec.m();
  const int vars = m * m;
  auto var = [m](int r, int c) { return size_t(r * m + c); };
  std::vector<std::vector<uint8_t>> eqs;
  // (uX - Xu)_{rc} = sum_k u_rk X_kc - X_rk u_kc
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      std::vector<uint8_t> e(static_cast<size_t>(vars), 0);
      for (int k = 0; k < m; ++k) {
        e[var(k, c)] ^= u.get(r, k);
        e[var(r, k)] ^= u.get(k, c);
      }
      eqs.push_back(std::move(e));
    }
  // (JX)_{rc} = X_{m-1-r, c}
  if (spec.kind() == GroupKind::Sp || spec.kind() == GroupKind::SO || spec.kind() == GroupKind::O) {
    for (int r = 0; r < m; ++r)
      for (int c = r + 1; c < m; ++c) {
        std::vector<uint8_t> e(static_cast<size_t>(vars), 0);
        e[var(m - 1 - r, c)] ^= 1;
        e[var(m - 1 - c, r)] ^= 1;
        eqs.push_back(std::move(e));
      }
    if (spec.kind() != GroupKind::Sp)
      for (int r = 0; r < m; ++r) {
        std::vector<uint8_t> e(static_cast<size_t>(vars), 0);
        e[var(m - 1 - r, r)] = 1;
        eqs.push_back(std::move(e));
      }
  }
  if (spec.kind() == GroupKind::SL) {
    std::vector<uint8_t> e(static_cast<size_t>(vars), 0);
    for (int i = 0; i < m; ++i) e[var(i, i)] = 1;
    eqs.push_back(std::move(e));
  }
  int rank = 0;
  for (int col = 0; col < vars && rank < int(eqs.size()); ++col) {
    size_t piv = size_t(rank);
    while (piv < eqs.size() && !eqs[piv][size_t(col)]) ++piv;
    if (piv == eqs.size()) continue;
    std::swap(eqs[piv], eqs[size_t(rank)]);
    auto& p = eqs[size_t(rank)];
    const uint8_t inv = f.inv(p[size_t(col)]);
    for (auto& x : p) x = f.mul(x, inv);
    for (size_t i = 0; i < eqs.size(); ++i) {
      if (i == size_t(rank) || !eqs[i][size_t(col)]) continue;
      const uint8_t s = eqs[i][size_t(col)];
      for (int j = 0; j < vars; ++j) eqs[i][size_t(j)] ^= f.mul(s, p[size_t(j)]);
    }
    ++rank;
  }
  return vars - rank;
}

bool CensusReport::complete(int q) const {
  auto t = total.find(q);
  auto e = expected_total.find(q);
  return t != total.end() && e != expected_total.end() && t->second == e->second;
}

const ClassRecord* CensusReport::find(const ClassLabel& label) const {
  for (const auto& r : classes)
    if (r.label == label) return &r;
  return nullptr;
}

std::optional<int> class_size_degree(const CensusReport& report, const ClassLabel& label) {
  const ClassRecord* r = report.find(label);
  if (!r) return std::nullopt;
  std::vector<int> qs;
  for (int q : report.qs)
    if (report.complete(q) && r->size.count(q)) qs.push_back(q);
  std::optional<int> d;
  for (size_t i = 0; i + 1 < qs.size(); ++i) {
    const int e = log_ratio_round(double(r->size.at(qs[i + 1])), double(r->size.at(qs[i])), double(qs[i + 1]) / qs[i]);
    if (d && *d != e) return std::nullopt;
    d = e;
  }
  return d;
}

CensusReport run_census(GroupKind kind, int n, const CensusOptions& options) {
  if (kind == GroupKind::O) throw Error("census: use SO for the identity component; the outer coset has its own census");
  CensusReport report;
  report.kind = kind;
  report.n = n;
  report.qs = options.qs;
  std::sort(report.qs.begin(), report.qs.end());
  report.qs.erase(std::unique(report.qs.begin(), report.qs.end()), report.qs.end());
  if (report.qs.empty()) throw Error("census needs at least one field size");
  {
    GroupSpec probe(kind, n, FiniteField::get(1));
    report.group = group_kind_name(kind) + "(" + std::to_string(probe.m()) + ")";
  }
  std::map<ClassLabel, Mat> seeds;
  for (int q : report.qs) {
    GroupSpec spec(kind, n, FiniteField::get(log2_exact(q)));
    report.expected_total[q] = checked_pow(q, 2 * positive_root_count(kind, n));
    std::vector<RationalClass> classes;
    try {
      classes = enumerate_rational_classes(spec, options.memory_limit);
    } catch (const ResourceError& e) {
      report.omissions.push_back("q=" + std::to_string(q) + ": " + e.what());
      continue;
    }
    uint64_t total = 0;
    for (const auto& c : classes) {
      total += c.size;
      auto& rec = record_for(report.classes, c.label);
      rec.size[q] += c.size;
      rec.rational_classes[q] += 1;
      rec.rational_sizes[q].push_back(c.size);
      if (!seeds.count(c.label)) seeds.emplace(c.label, c.seed);
    }
    report.total[q] = total;

    std::vector<size_t> work;
    for (size_t i = 0; i < classes.size(); ++i)
      if (label_selected(options, classes[i].label)) work.push_back(i);
    std::vector<std::vector<uint64_t>> orbit_sizes(classes.size());
    std::vector<std::vector<std::pair<WeylElement, uint64_t>>> cells(classes.size());
    std::vector<std::string> errors(classes.size());
    const bool want_cells = options.cells && spec.root_system();
    if (options.cells && !spec.root_system()) report.omissions.push_back("q=" + std::to_string(q) + ": no root datum for cells");
    parallel_for(work.size(), options.jobs, [&](size_t w) {
      const size_t i = work[w];
      if (options.b_orbits) orbit_sizes[i] = b_orbit_sizes(spec, classes[i].members);
      if (want_cells) cells[i] = cell_histogram(spec, classes[i].members);
    });
    // A geometric class that is a union of rational classes: B-orbits of the
    // union are the B-orbits of the pieces.
    for (size_t i : work) {
      auto& rec = record_for(report.classes, classes[i].label);
      if (options.b_orbits) {
        rec.max_b_orbit[q] = std::max(rec.max_b_orbit[q], orbit_sizes[i].front());
        rec.b_orbit_count[q] += orbit_sizes[i].size();
      }
      if (want_cells) {
        merge_cells(rec.cells[q], cells[i]);
        sort_cells(rec.cells[q]);
      }
    }
  }
  std::stable_sort(report.classes.begin(), report.classes.end(),
                   [](const ClassRecord& a, const ClassRecord& b) { return a.label < b.label; });
  const int dim_g = group_dimension(kind, n);
  const int dim_b = borel_dimension(kind, n);
  for (auto& r : report.classes) {
    GroupSpec spec(kind, n, seeds.at(r.label).field());
    r.dim_lower_bound = dim_g - lie_centralizer_dim(spec, seeds.at(r.label));
    int complete_qs = 0;
    for (int q : report.qs) complete_qs += report.complete(q) && r.size.count(q);
    r.dim_estimate = class_size_degree(report, r.label);
    r.dim_consistent = complete_qs < 2 || r.dim_estimate.has_value();
    if (label_selected(options, r.label)) decide_verdict(r, dim_b);
  }
  return report;
}

BOrbitProbe max_b_orbit_degree(GroupKind kind, int n, const ClassLabel& label, const CensusOptions& options) {
  CensusOptions o = options;
  o.b_orbits = true;
  o.only = {label};
  const auto report = run_census(kind, n, o);
  const ClassRecord* r = report.find(label);
  if (!r) return {std::nullopt, Verdict::Inconclusive, "class " + label.str() + " not found"};
  return {r->max_b_orbit_degree, r->verdict, r->verdict_reason};
}

bool are_conjugate(const GroupSpec& spec, const Mat& a, const Mat& b, uint64_t memory_limit) {
  const auto gens = conjugators(spec, spec.group_generators());
  const MatKey target = pack_key(b);
  KeySet seen;
  std::vector<MatKey> queue{pack_key(a)};
  seen.insert(queue.front());
  for (size_t i = 0; i < queue.size(); ++i) {
    if (queue[i] == target) return true;
    if (estimated_bytes(seen.size()) > memory_limit) throw ResourceError("conjugacy orbit exceeds the memory limit");
    const Mat x = unpack_key(queue[i], spec.field(), spec.m());
    for (const auto& c : gens) {
      const MatKey k = pack_key(c.g * x * c.g_inv);
      if (seen.insert(k).second) queue.push_back(k);
    }
  }
  return false;
}

OuterCensus outer_coset_census(int n, int q, uint64_t memory_limit) {
  GroupSpec o(GroupKind::O, n, FiniteField::get(log2_exact(q)));
  if (!packable(o.m(), o.field())) throw ResourceError(o.name() + " matrices do not fit a 128-bit key");
  // |O+(2n, q)| = 2 q^{n(n-1)} (q^n - 1) prod_{i<n} (q^{2i} - 1)
  double order = 2.0 * std::pow(double(q), n * (n - 1)) * (std::pow(double(q), n) - 1);
  for (int i = 1; i < n; ++i) order *= std::pow(double(q), 2 * i) - 1;
  if (double(estimated_bytes(1)) * order > double(memory_limit))
    throw ResourceError(o.name() + " has too many elements for the memory limit");

  OuterCensus out;
  out.n = n;
  out.q = q;
  const auto gens = o.group_generators();
  KeySet seen;
  std::vector<MatKey> elems{pack_key(o.identity())};
  seen.insert(elems.front());
  for (size_t i = 0; i < elems.size(); ++i) {
    const Mat x = unpack_key(elems[i], o.field(), o.m());
    for (const auto& g : gens) {
      const MatKey k = pack_key(x * g);
      if (seen.insert(k).second) elems.push_back(k);
    }
  }
  out.group_order = elems.size();

  std::map<ClassLabel, std::vector<MatKey>> buckets;
  for (const auto& k : elems) {
    const Mat x = unpack_key(k, o.field(), o.m());
    if (dickson_invariant(o, x) != 1 || !(x * x).is_identity()) continue;
    buckets[class_label(o, x)].push_back(k);
  }
  const auto so_gens = conjugators(o, o.simple_root_generators(true));
  for (auto& [label, members] : buckets) {
    OuterBucket b;
    b.label = label;
    b.type = label.lambda;
    b.count = members.size();
    KeySet bucket(members.begin(), members.end());
    KeySet visited;
    for (const auto& k : members) {
      if (visited.count(k)) continue;
      conjugation_orbit(o, k, so_gens, visited, &bucket);
      ++b.so_classes;
    }
    out.buckets.push_back(std::move(b));
  }
  std::set<Partition> expected, found;
  for (int k = 1; k <= n; k += 2) {
    out.odd_k_expected.push_back(k);
    std::vector<int> parts(static_cast<size_t>(k), 2);
    parts.resize(static_cast<size_t>(2 * n - k), 1);
    expected.insert(Partition(parts));
  }
  bool single = true;
  for (const auto& b : out.buckets) {
    found.insert(b.type);
    single = single && b.so_classes == 1;
  }
  out.types_match = single && found == expected && found.size() == out.buckets.size();
  return out;
}

MinimalityReport minimality_check(int n, const CensusOptions& options) {
  MinimalityReport rep;
  rep.computed = order4_minimal_labels(n);
  std::set<Partition> want, got;
  if (n >= 3) {
    std::vector<int> p{3, 3};
    p.resize(static_cast<size_t>(2 * n - 4), 1);
    want.insert(Partition(p));
  }
  std::vector<int> p{4};
  p.resize(static_cast<size_t>(2 * n - 3), 1);
  want.insert(Partition(p));
  for (const auto& l : rep.computed) got.insert(l.lambda);
  for (const auto& l : all_valid_labels(GroupKind::Sp, n))
    if (want.count(l.lambda)) rep.expected.push_back(l);
  rep.labels_match = want == got;
  rep.ok = rep.labels_match;
  if (n <= 3) {
    for (const auto& l : rep.computed) {
      const auto probe = max_b_orbit_degree(GroupKind::Sp, n, l, options);
      rep.verdicts[l.str()] = probe.verdict;
      rep.ok = rep.ok && probe.verdict == Verdict::NonSpherical;
    }
  }
  return rep;
}

} // namespace sphc
