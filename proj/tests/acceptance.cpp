// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <deque>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "sphc/census.hpp"
#include "sphc/error.hpp"
#include "sphc/sphericity.hpp"

using namespace sphc;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (ok) why << what;
    else why << "; " << what;
    ok = false;
  }
};

// Every census report produced here is checked for Steinberg completeness.
std::deque<CensusReport> g_censuses;

const CensusReport& census(GroupKind kind, int n, CensusOptions o) {
  g_censuses.push_back(run_census(kind, n, o));
  return g_censuses.back();
}

const SphericityReport* find_report(const VerifySummary& s, const std::string& table, Series series, int rank,
                                    const std::string& name) {
  for (const auto& r : s.reports)
    if (r.row.table_id == table && r.row.series == series && r.row.rank == rank && r.row.class_name == name) return &r;
  return nullptr;
}

int dot(const IntVec& a, const IntVec& b) {
  int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVec negated(IntVec v) {
  for (int& c : v) c = -c;
  return v;
}

std::vector<IntVec> all_roots(const GroupSpec& spec) {
  std::vector<IntVec> out = spec.positive_roots();
  for (const auto& a : spec.positive_roots()) out.push_back(negated(a));
  return out;
}

uint8_t random_nonzero(const FiniteField& f, std::mt19937& rng) {
  return uint8_t(std::uniform_int_distribution<int>(1, f.order() - 1)(rng));
}

Mat random_borel(const GroupSpec& spec, std::mt19937& rng) {
  const auto& f = *spec.field();
  Mat b = spec.identity();
  for (const auto& a : spec.simple_roots()) b = b * spec.h(a, random_nonzero(f, rng));
  for (const auto& a : spec.positive_roots())
    b = b * spec.x(a, uint8_t(std::uniform_int_distribution<int>(0, f.order() - 1)(rng)));
  return b;
}

WeylElement random_weyl(const RootSystemPtr& rs, std::mt19937& rng) {
  std::vector<int> word;
  const int len = std::uniform_int_distribution<int>(0, 2 * rs->num_positive_roots())(rng);
  for (int i = 0; i < len; ++i) word.push_back(std::uniform_int_distribution<int>(0, rs->rank() - 1)(rng));
  return WeylElement::from_word(rs, word);
}

// Closed forms for the classical families, independent of the Weyl group code.
std::map<std::string, int> classical_dims(int max_rank) {
  std::map<std::string, int> d;
  auto key = [](const std::string& t, char s, int n, const std::string& name) {
    return t + ":" + std::string(1, s) + std::to_string(n) + ":" + name;
  };
  for (int n = 1; n <= max_rank; ++n)
    for (int l = 1; 2 * l <= n + 1; ++l) d[key("1", 'A', n, "X_" + std::to_string(l))] = 2 * l * (n + 1 - l);
  for (int n = 2; n <= max_rank; ++n) {
    for (int l = 1; l <= n; ++l) d[key("2", 'C', n, "X_" + std::to_string(l))] = l * (2 * n - l + 1);
    for (int l = 1; 2 * l <= n; ++l) d[key("2", 'C', n, "Y_" + std::to_string(2 * l))] = 4 * l * (n - l);
  }
  for (int n = 4; n <= max_rank; ++n) {
    const std::string t = n % 2 ? "4" : "3";
    for (int l = 1; 2 * l <= n; ++l) {
      d[key(t, 'D', n, "Z_" + std::to_string(l))] = 4 * l * (n - l);
      d[key(t, 'D', n, "X_" + std::to_string(l))] = 2 * l * (2 * n - 2 * l - 1);
    }
    if (n % 2 == 0) d[key(t, 'D', n, "X'_" + std::to_string(n / 2))] = n * (n - 1);
  }
  return d;
}

void criterion_equalities(Outcome& o) {
  TableLimits limits;
  limits.max_classical_rank = 6;
  const auto s = verify_all(limits, 4);
  o.expect(s.ok(), std::to_string(s.failed) + " rows failed");
  const auto dims = classical_dims(6);
  int seen = 0;
  for (const auto& r : s.reports) {
    auto it = dims.find(r.row.id());
    if (it == dims.end()) continue;
    ++seen;
    o.expect(r.criterion_value == it->second, r.row.id() + " gives " + std::to_string(r.criterion_value));
  }
  o.expect(seen == int(dims.size()), "classical rows missing");
  struct Exc {
    const char* table;
    Series s;
    int rank;
    std::vector<std::pair<const char*, int>> dims;
  };
  const std::vector<Exc> exceptional{
      {"5", Series::E, 6, {{"A1", 22}, {"2A1", 32}, {"3A1", 40}}},
      {"5", Series::E, 7, {{"A1", 34}, {"2A1", 52}, {"(3A1)''", 54}, {"(3A1)'", 64}, {"4A1", 70}}},
      {"5", Series::E, 8, {{"A1", 58}, {"2A1", 92}, {"3A1", 112}, {"4A1", 128}}},
      {"7", Series::F, 4, {{"A1", 16}, {"~A1", 16}, {"~A1^(2)", 22}, {"A1~A1", 28}}},
      {"9", Series::G, 2, {{"A1", 6}, {"~A1", 6}, {"~A1^(3)", 8}}},
      {"G2inD4", Series::D, 4, {{"G2", 14}}}};
  for (const auto& e : exceptional)
    for (const auto& [name, dim] : e.dims) {
      const auto* r = find_report(s, e.table, e.s, e.rank, name);
      o.expect(r && r->checked && r->criterion_value == dim, std::string("exceptional row ") + name + " in table " + e.table);
    }
}

void representative_checks(Outcome& o) {
  const auto s = verify_all({}, 4);
  int count = 0;
  for (const auto& r : s.reports) {
    if (!r.row.model || r.row.model->outer) continue;
    ++count;
    o.expect(r.rep_involution_check == true, r.row.id() + " not an involution");
    o.expect(r.rep_label_match == true, r.row.id() + " label");
    o.expect(r.rep_cell_match == true, r.row.id() + " cell");
  }
  o.expect(count == int(classical_dims(6).size()), "classical rows without a model");
}

ClassLabel involution(GroupKind kind, int n, const std::string& name) {
  for (const auto& c : involution_labels(kind, n))
    if (c.name == name) return *c.label;
  throw Error("no class " + name);
}

void census_sp4(Outcome& o) {
  CensusOptions opt;
  opt.qs = {2};
  const auto& r = census(GroupKind::Sp, 2, opt);
  o.expect(r.classes.size() == 5, "class count " + std::to_string(r.classes.size()));
  o.expect(r.total.at(2) == 256 && r.expected_total.at(2) == 256, "total");
  std::multiset<uint64_t> sizes;
  for (const auto& c : r.classes) sizes.insert(c.size.at(2));
  o.expect(sizes == std::multiset<uint64_t>{1, 15, 15, 45, 180}, "sizes");
  for (const auto& name : {"X_1", "Y_2", "X_2"}) o.expect(r.find(involution(GroupKind::Sp, 2, name)) != nullptr, name);
  bool regular = false, trivial = false;
  for (const auto& c : r.classes) {
    if (c.label.lambda == Partition({4})) {
      regular = c.size.at(2) == 180 && c.rational_sizes.at(2) == std::vector<uint64_t>{90, 90};
    }
    if (c.label.lambda == Partition({1, 1, 1, 1})) trivial = c.size.at(2) == 1;
  }
  o.expect(regular, "regular class is not two rational classes of 90");
  o.expect(trivial, "identity class");
}

void dimension_estimates(Outcome& o) {
  CensusOptions opt;
  opt.qs = {2, 4};
  const auto& r = census(GroupKind::Sp, 2, opt);
  const int n = 2;
  // dim X_l = l(2n-l+1), dim Y_2l = 4l(n-l)
  for (const auto& [name, want] : {std::pair{"X_1", 1 * (2 * n - 1 + 1)}, std::pair{"Y_2", 4 * 1 * (n - 1)},
                                   std::pair{"X_2", 2 * (2 * n - 2 + 1)}}) {
    const auto d = class_size_degree(r, involution(GroupKind::Sp, n, name));
    o.expect(d == want, std::string(name) + " degree " + (d ? std::to_string(*d) : "none"));
  }
}

void sphericity_probes(Outcome& o) {
  CensusOptions opt;
  opt.qs = {2, 4};
  opt.b_orbits = true;
  opt.jobs = 4;
  opt.memory_limit = uint64_t(2) << 30;
  const auto& r = census(GroupKind::Sp, 2, opt);
  for (const auto& name : {"X_1", "Y_2", "X_2"}) {
    const auto* c = r.find(involution(GroupKind::Sp, 2, name));
    o.expect(c && c->verdict == Verdict::Spherical, std::string(name) + " not spherical");
  }
  for (const auto& c : r.classes)
    if (c.label.lambda == Partition({4})) o.expect(c.verdict == Verdict::NonSpherical, "regular class verdict");

  CensusOptions opt6;
  opt6.qs = {2};
  opt6.memory_limit = uint64_t(2) << 30;
  const auto& r6 = census(GroupKind::Sp, 3, opt6);
  int probed = 0;
  for (const auto& c : r6.classes) {
    if (c.label.lambda != Partition({3, 3}) && c.label.lambda != Partition({4, 1, 1})) continue;
    ++probed;
    o.expect(c.verdict == Verdict::NonSpherical, c.label.str() + " is " + verdict_name(c.verdict));
  }
  o.expect(probed >= 2, "Sp(6) classes 3^2 and 4+1^2 not found");
}

void cell_distribution(Outcome& o) {
  CensusOptions opt;
  opt.qs = {2, 4};
  opt.cells = true;
  const auto& r = census(GroupKind::Sp, 2, opt);
  const auto rows = builtin_tables();
  for (const auto& name : {"X_1", "Y_2", "X_2"}) {
    const TableRow* row = nullptr;
    for (const auto& t : rows)
      if (t.table_id == "2" && t.series == Series::C && t.rank == 2 && t.class_name == name) row = &t;
    const auto* c = r.find(involution(GroupKind::Sp, 2, name));
    if (!row || !c) {
      o.expect(false, std::string(name) + " missing");
      continue;
    }
    const WeylElement w = row_element(*row).weyl();
    o.expect(c->cells.at(2).front().first == w && c->cells.at(4).front().first == w, std::string(name) + " argmax cell");
    const double s2 = double(c->cells.at(2).front().second) / double(c->size.at(2));
    const double s4 = double(c->cells.at(4).front().second) / double(c->size.at(4));
    o.expect(s4 > s2, std::string(name) + " share does not grow");
  }
}

void property_suites(Outcome& o) {
  for (int k : {1, 2}) {
    auto f = FiniteField::get(k);
    for (auto spec : {GroupSpec(GroupKind::Sp, 2, f), GroupSpec(GroupKind::Sp, 3, f), GroupSpec(GroupKind::SO, 4, f)}) {
      for (const auto& a : all_roots(spec)) {
        o.expect((spec.n_alpha(a) * spec.n_alpha(a)).is_identity(), "n^2 != 1 in " + spec.name());
        for (int xi = 1; xi < f->order(); ++xi) {
          const uint8_t x = uint8_t(xi);
          o.expect(spec.x(a, x) * spec.x(negated(a), f->inv(x)) * spec.x(a, x) == spec.h(a, x) * spec.n_alpha(a),
                   "x x x = h n fails in " + spec.name());
        }
      }
    }
  }

  std::mt19937 rng(2024);
  int instances = 0;
  while (instances < 200) {
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    const int pick = std::uniform_int_distribution<int>(0, 3)(rng);
    const GroupKind kind = pick < 2 ? GroupKind::Sp : GroupKind::SO;
    const int n = pick % 2 ? 3 : (kind == GroupKind::SO ? 4 : 2);
    GroupSpec spec(kind, n, FiniteField::get(k));
    auto roots = all_roots(spec);
    std::shuffle(roots.begin(), roots.end(), rng);
    std::vector<IntVec> chosen;
    const int want = std::uniform_int_distribution<int>(1, n)(rng);
    for (const auto& a : roots) {
      if (int(chosen.size()) == want) break;
      bool orth = true;
      for (const auto& b : chosen) orth = orth && dot(a, b) == 0 && a != negated(b);
      if (orth) chosen.push_back(a);
    }
    std::vector<uint8_t> scalars;
    for (size_t i = 0; i < chosen.size(); ++i) scalars.push_back(random_nonzero(*spec.field(), rng));
    o.expect(verify_exchange_identity(spec, chosen, scalars), "exchange identity fails in " + spec.name());
    ++instances;
  }

  for (int k : {1, 2}) {
    auto f = FiniteField::get(k);
    for (auto spec : {GroupSpec(GroupKind::SL, 5, f), GroupSpec(GroupKind::Sp, 2, f), GroupSpec(GroupKind::Sp, 3, f),
                      GroupSpec(GroupKind::Sp, 4, f), GroupSpec(GroupKind::SO, 4, f)}) {
      const auto roots = all_roots(spec);
      for (const auto& a : roots)
        for (const auto& b : roots) {
          if (dot(a, b) != 0) continue;
          for (int s = 1; s < f->order(); ++s)
            for (int t = 1; t < f->order(); ++t) {
              const Mat xa = spec.x(a, uint8_t(s)), xb = spec.x(b, uint8_t(t));
              o.expect(xa * xb == xb * xa, "orthogonal root elements do not commute in " + spec.name());
            }
        }
    }
  }

  for (int k : {1, 2})
    for (auto [kind, n] : std::vector<std::pair<GroupKind, int>>{
             {GroupKind::SL, 4}, {GroupKind::Sp, 2}, {GroupKind::Sp, 3}, {GroupKind::SO, 4}}) {
      GroupSpec spec(kind, n, FiniteField::get(k));
      const auto rs = spec.root_system();
      for (int t = 0; t < 1000; ++t) {
        const WeylElement w = random_weyl(rs, rng);
        const Mat g = random_borel(spec, rng) * weyl_representative(spec, w) * random_borel(spec, rng);
        if (bruhat_cell(spec, g) != w) {
          o.expect(false, "Bruhat round trip fails in " + spec.name());
          break;
        }
      }
    }

  for (const auto& r : g_censuses)
    for (const auto& [q, total] : r.total) o.expect(r.complete(q), r.group + " q=" + std::to_string(q) + " incomplete");
  o.expect(!g_censuses.empty(), "no census runs recorded");
}

void outer_tables(Outcome& o) {
  TableLimits limits;
  const auto s = verify_all(limits, 4);
  auto value = [&](const std::string& table, Series series, int rank, const std::string& name) {
    const auto* r = find_report(s, table, series, rank, name);
    return r && r->passed() ? r->criterion_value : -1;
  };
  for (int m = 1; m <= 4; ++m) o.expect(value("10", Series::A, 2 * m, "tau") == 2 * m * m + 3 * m, "A_2m tau");
  for (int m = 2; m <= 4; ++m) {
    const int dim_b = (2 * m) * (2 * m + 1) / 2 - 1;
    o.expect(value("11", Series::A, 2 * m - 1, "tau") == 2 * m * m - m - 1, "A_2m-1 tau");
    o.expect(value("11", Series::A, 2 * m - 1, "tau x_b1(1)") == dim_b, "A_2m-1 tau x");
  }
  for (int n = 4; n <= 6; ++n) {
    for (int k = 1; k <= n; k += 2) {
      const int want = k == n ? n * n : k * (2 * n - k);
      o.expect(value("12", Series::D, n, "O_" + std::to_string(k)) == want, "D" + std::to_string(n) + " O_" + std::to_string(k));
    }
  }
  o.expect(value("13", Series::E, 6, "tau") == 26, "E6 tau");
  o.expect(value("13", Series::E, 6, "tau x_b1(1)") == 42, "E6 tau x");
  const auto oc = outer_coset_census(3, 2, uint64_t(1) << 30);
  std::set<Partition> types;
  for (const auto& b : oc.buckets) types.insert(b.type);
  o.expect(oc.types_match && types == std::set<Partition>{Partition({2, 1, 1, 1, 1}), Partition({2, 2, 2})},
           "O(6,2) outer involution types");
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"criterion equalities", criterion_equalities},
      {"representative checks", representative_checks},
      {"census Sp(4,2)", census_sp4},
      {"dimension estimates", dimension_estimates},
      {"sphericity probes", sphericity_probes},
      {"cell distribution", cell_distribution},
      {"property suites", property_suites},
      {"outer tables", outer_tables}};
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      check(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << index << " " << name << " (" << secs << " s)";
    if (!o.ok) std::cout << ": " << o.why.str();
    std::cout << std::endl;
    failed += !o.ok;
  }
  return failed ? 1 : 0;
}
