#include "sphc/sphericity.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "sphc/error.hpp"

namespace sphc {

namespace {

using Terms = std::vector<std::pair<int, int>>;

// Ambient vector from 1-based (index, coefficient) pairs.
IntVec ev(int dim, const Terms& terms) {
  IntVec v(static_cast<size_t>(dim), 0);
  for (auto [i, c] : terms) v[size_t(i - 1)] += c;
  return v;
}

std::string e_text(const IntVec& v) {
  std::string s;
  for (size_t k = 0; k < v.size(); ++k) {
    const int c = v[k];
    if (!c) continue;
    if (c < 0) s += '-';
    else if (!s.empty()) s += '+';
    if (c != 1 && c != -1) s += std::to_string(c < 0 ? -c : c);
    s += "e" + std::to_string(k + 1);
  }
  return s;
}

std::string product_recipe(const std::string& head, const std::string& factor, const std::vector<IntVec>& roots) {
  std::string s = head;
  for (const auto& r : roots) {
    if (!s.empty()) s += ' ';
    s += factor + ":" + e_text(r);
  }
  return s;
}

std::vector<IntVec> to_simple(const RootSystemPtr& rs, const std::vector<IntVec>& ambient) {
  std::vector<IntVec> out;
  for (const auto& a : ambient) out.push_back(rs->from_ambient(a));
  return out;
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

std::vector<int> odd_up_to(int hi) {
  std::vector<int> v;
  for (int i = 1; i <= hi; i += 2) v.push_back(i);
  return v;
}

ClassLabel named_label(const std::vector<NamedClass>& classes, const std::string& name) {
  for (const auto& c : classes)
    if (c.name == name && c.label) return *c.label;
  throw InternalError("no built-in class named " + name);
}

IntVec simple_index_root(int rank, int i) {
  IntVec v(static_cast<size_t>(rank), 0);
  v[size_t(i - 1)] = 1;
  return v;
}

TableRow base_row(std::string table, std::string name, Series s, int rank, int dim) {
  TableRow r;
  r.table_id = std::move(table);
  r.class_name = std::move(name);
  r.series = s;
  r.rank = rank;
  r.claimed_dim = dim;
  return r;
}

void add_type_a(std::vector<TableRow>& rows, int n) {
  auto rs = RootSystem::build(Series::A, n);
  for (int l = 1; 2 * l <= n + 1; ++l) {
    std::vector<IntVec> betas;
    for (int i = 1; i <= l; ++i) betas.push_back(ev(n + 1, {{i, 1}, {n + 2 - i, -1}}));
    TableRow r = base_row("1", "X_" + std::to_string(l), Series::A, n, 2 * l * (n + 1 - l));
    r.w_roots = to_simple(rs, betas);
    ClassLabel label;
    label.kind = GroupKind::SL;
    label.n = n + 1;
    std::vector<int> parts(static_cast<size_t>(l), 2);
    parts.resize(static_cast<size_t>(n + 1 - l), 1);
    label.lambda = Partition(parts);
    r.model = MatrixModel{GroupKind::SL, n + 1, product_recipe("", "n", betas), false, label, std::nullopt};
    rows.push_back(std::move(r));
  }
}

void add_type_c(std::vector<TableRow>& rows, int n) {
  auto rs = RootSystem::build(Series::C, n);
  const auto classes = involution_labels(GroupKind::Sp, n);
  for (int l = 1; l <= n; ++l) {
    std::vector<IntVec> betas;
    for (int i = 1; i <= l; ++i) betas.push_back(ev(n, {{i, 2}}));
    const std::string name = "X_" + std::to_string(l);
    TableRow r = base_row("2", name, Series::C, n, l * (2 * n - l + 1));
    r.J = range(l + 1, n);
    r.w_roots = to_simple(rs, betas);
    r.model = MatrixModel{GroupKind::Sp, n, product_recipe("", "n", betas), false, named_label(classes, name), std::nullopt};
    rows.push_back(std::move(r));
  }
  for (int l = 1; 2 * l <= n; ++l) {
    std::vector<IntVec> gammas;
    for (int i = 1; i <= l; ++i) gammas.push_back(ev(n, {{2 * i - 1, 1}, {2 * i, 1}}));
    const std::string name = "Y_" + std::to_string(2 * l);
    TableRow r = base_row("2", name, Series::C, n, 4 * l * (n - l));
    auto k = odd_up_to(2 * l - 1);
    for (int j = 2 * l + 1; j <= n; ++j) k.push_back(j);
    r.J = k;
    r.w_roots = to_simple(rs, gammas);
    r.model = MatrixModel{GroupKind::Sp, n, product_recipe("", "n", gammas), false, named_label(classes, name), std::nullopt};
    rows.push_back(std::move(r));
  }
}

void add_type_d(std::vector<TableRow>& rows, int n) {
  auto rs = RootSystem::build(Series::D, n);
  const auto classes = involution_labels(GroupKind::SO, n);
  const std::string table = n % 2 == 0 ? "3" : "4";
  const int m = n / 2;
  auto beta = [&](int i) { return ev(n, {{2 * i - 1, 1}, {2 * i, 1}}); };
  auto delta = [&](int i) { return ev(n, {{2 * i - 1, 1}, {2 * i, -1}}); };
  auto j_of = [&](int l) { return l < m ? range(2 * l + 1, n) : std::vector<int>{}; };
  auto push = [&](const std::string& name, int dim, std::vector<int> J, const std::vector<IntVec>& roots) {
    TableRow r = base_row(table, name, Series::D, n, dim);
    r.J = std::move(J);
    r.w_roots = to_simple(rs, roots);
    r.model = MatrixModel{GroupKind::SO, n, product_recipe("", "n", roots), false, named_label(classes, name), std::nullopt};
    rows.push_back(std::move(r));
  };
  for (int l = 1; l <= m; ++l) {
    std::vector<IntVec> roots;
    for (int i = 1; i <= l; ++i) {
      roots.push_back(beta(i));
      roots.push_back(delta(i));
    }
    push("Z_" + std::to_string(l), 4 * l * (n - l), j_of(l), roots);
  }
  for (int l = 1; l <= m; ++l) {
    std::vector<IntVec> roots;
    for (int i = 1; i <= l; ++i) roots.push_back(beta(i));
    auto k = j_of(l);
    for (int j : odd_up_to(2 * l - 1)) k.push_back(j);
    std::sort(k.begin(), k.end());
    push("X_" + std::to_string(l), 2 * l * (2 * n - 2 * l - 1), k, roots);
  }
  if (n % 2 == 0) {
    std::vector<IntVec> roots;
    for (int i = 1; i < m; ++i) roots.push_back(beta(i));
    roots.push_back(ev(n, {{n - 1, 1}, {n, -1}}));
    auto k = odd_up_to(n - 3);
    k.push_back(n);
    push("X'_" + std::to_string(m), n * (n - 1), k, roots);
  }
}

struct ExceptionalSpec {
  const char* name;
  std::vector<IntVec> roots;
  int dim;
  int component;
  std::optional<std::vector<int>> J;
};

void add_exceptional(std::vector<TableRow>& rows, const std::string& table, Series s, int rank, int characteristic,
                     const std::vector<ExceptionalSpec>& specs) {
  for (const auto& e : specs) {
    TableRow r = base_row(table, e.name, s, rank, e.dim);
    r.characteristic = characteristic;
    r.w_roots = e.roots;
    r.J = e.J;
    r.component_group_order = e.component;
    if (e.roots.empty()) {
      r.spherical = false;
      r.consists_of_involutions = false;
      r.note = "non-spherical; recorded for reference";
    } else {
      r.note = "representative not machine-checked";
    }
    rows.push_back(std::move(r));
  }
}

void add_table5(std::vector<TableRow>& rows) {
  const IntVec e6b1{1, 2, 2, 3, 2, 1}, e6b2{1, 0, 1, 1, 1, 1}, e6b3{0, 0, 1, 1, 1, 0}, e6b4{0, 0, 0, 1, 0, 0};
  add_exceptional(rows, "5", Series::E, 6, 2,
                  {{"A1", {e6b1}, 22, 1, {}},
                   {"2A1", {e6b1, e6b2}, 32, 1, {}},
                   {"3A1", {e6b1, e6b2, e6b3, e6b4}, 40, 1, {}},
                   {"A2", {}, 42, 2, {}}});
  const IntVec e7b1{2, 2, 3, 4, 3, 2, 1}, e7b2{0, 1, 1, 2, 2, 2, 1}, e7b3{0, 1, 1, 2, 1, 0, 0};
  const IntVec a7 = simple_index_root(7, 7), a5 = simple_index_root(7, 5), a3 = simple_index_root(7, 3),
               a2 = simple_index_root(7, 2);
  add_exceptional(rows, "5", Series::E, 7, 2,
                  {{"A1", {e7b1}, 34, 1, {}},
                   {"2A1", {e7b1, e7b2}, 52, 1, {}},
                   {"(3A1)''", {e7b1, e7b2, a7}, 54, 1, {}},
                   {"(3A1)'", {e7b1, e7b2, e7b3, a3}, 64, 1, {}},
                   {"A2", {}, 66, 2, {}},
                   {"4A1", {e7b1, e7b2, e7b3, a7, a5, a3, a2}, 70, 1, {}}});
  const IntVec e8b1{2, 3, 4, 6, 5, 4, 3, 2}, e8b2{2, 2, 3, 4, 3, 2, 1, 0}, e8b3{0, 1, 1, 2, 2, 2, 1, 0},
      e8b4{0, 1, 1, 2, 1, 0, 0, 0};
  const IntVec b7 = simple_index_root(8, 7), b5 = simple_index_root(8, 5), b3 = simple_index_root(8, 3),
               b2 = simple_index_root(8, 2);
  add_exceptional(rows, "5", Series::E, 8, 2,
                  {{"A1", {e8b1}, 58, 1, {}},
                   {"2A1", {e8b1, e8b2}, 92, 1, {}},
                   {"3A1", {e8b1, e8b2, e8b3, b7}, 112, 1, {}},
                   {"A2", {}, 114, 2, {}},
                   {"4A1", {e8b1, e8b2, e8b3, e8b4, b7, b5, b3, b2}, 128, 1, {}}});
}

void add_f4_g2(std::vector<TableRow>& rows) {
  const IntVec b1{2, 3, 4, 2}, b2{0, 1, 2, 2}, b3{0, 1, 2, 0}, b4{0, 1, 0, 0}, g1{1, 2, 3, 2};
  add_exceptional(rows, "6", Series::F, 4, 3,
                  {{"A1", {b1}, 16, 1, std::vector<int>{2, 3, 4}},
                   {"~A1", {b1, b2}, 22, 2, std::vector<int>{2, 3}},
                   {"A1~A1", {b1, b2, b3, b4}, 28, 1, std::vector<int>{}}});
  add_exceptional(rows, "7", Series::F, 4, 2,
                  {{"A1", {b1}, 16, 1, std::vector<int>{2, 3, 4}},
                   {"~A1", {g1}, 16, 1, std::vector<int>{1, 2, 3}},
                   {"~A1^(2)", {b1, b2}, 22, 1, std::vector<int>{2, 3}},
                   {"A1~A1", {b1, b2, b3, b4}, 28, 1, std::vector<int>{}}});
  const IntVec gb1{3, 2}, gb2{1, 0}, gg1{2, 1};
  add_exceptional(rows, "8", Series::G, 2, 2,
                  {{"A1", {gb1}, 6, 1, std::vector<int>{1}}, {"~A1", {gb1, gb2}, 8, 1, std::vector<int>{}}});
  add_exceptional(rows, "9", Series::G, 2, 3,
                  {{"A1", {gb1}, 6, 1, std::vector<int>{1}},
                   {"~A1", {gg1}, 6, 1, std::vector<int>{2}},
                   {"~A1^(3)", {gb1, gb2}, 8, 1, std::vector<int>{}}});
}

void add_outer_a_odd(std::vector<TableRow>& rows, int m) {
  const int size = 2 * m + 1;
  auto rs = RootSystem::build(Series::A, 2 * m);
  std::vector<IntVec> betas;
  for (int i = 1; i <= m; ++i) betas.push_back(ev(size, {{i, 1}, {size + 1 - i, -1}}));
  TableRow r = base_row("10", "tau", Series::A, 2 * m, 2 * m * m + 3 * m);
  r.J = std::vector<int>{};
  r.twist = TwistKind::Graph;
  r.twist_power = 1;
  r.w_roots = to_simple(rs, betas);
  r.model = MatrixModel{GroupKind::SL, size, product_recipe("tau", "n", betas), true, std::nullopt, OuterFormType::NonAlternating};
  rows.push_back(std::move(r));
}

void add_outer_a_even(std::vector<TableRow>& rows, int m) {
  const int size = 2 * m;
  auto rs = RootSystem::build(Series::A, 2 * m - 1);
  std::vector<IntVec> gammas;
  for (int i = 1; 2 * i <= m; ++i) {
    gammas.push_back(ev(size, {{2 * i - 1, 1}, {2 * m - 2 * i + 1, -1}}));
    gammas.push_back(ev(size, {{2 * i, 1}, {2 * m + 2 - 2 * i, -1}}));
  }
  std::vector<IntVec> neg;
  for (auto g : gammas) {
    for (int& c : g) c = -c;
    neg.push_back(g);
  }
  TableRow r = base_row("11", "tau", Series::A, 2 * m - 1, 2 * m * m - m - 1);
  r.J = odd_up_to(2 * m - 1);
  r.twist = TwistKind::Graph;
  r.twist_power = 1;
  r.w_roots = to_simple(rs, gammas);
  r.model = MatrixModel{GroupKind::SL, size, product_recipe("tau", "x", neg), true, std::nullopt, OuterFormType::Alternating};
  rows.push_back(std::move(r));

  std::vector<IntVec> betas;
  for (int i = 1; i <= m; ++i) betas.push_back(ev(size, {{i, 1}, {size + 1 - i, -1}}));
  TableRow s = base_row("11", "tau x_b1(1)", Series::A, 2 * m - 1, 2 * m * m + m - 1);
  s.J = std::vector<int>{};
  s.twist = TwistKind::Graph;
  s.twist_power = 1;
  s.w_roots = to_simple(rs, betas);
  s.model = MatrixModel{GroupKind::SL, size, product_recipe("tau", "n", betas), true, std::nullopt, OuterFormType::NonAlternating};
  rows.push_back(std::move(s));
}

void add_outer_d(std::vector<TableRow>& rows, int n) {
  auto rs = RootSystem::build(Series::D, n);
  const auto classes = outer_involution_labels(n);
  const int m = n / 2;
  std::vector<IntVec> roots;
  for (int i = 1; i <= m; ++i) {
    if (i == 1) {
      roots.push_back(ev(n, {{1, 1}, {n, -1}}));
      roots.push_back(ev(n, {{1, 1}, {n, 1}}));
    } else {
      roots.push_back(ev(n, {{2 * i - 2, 1}, {2 * i - 1, -1}}));
      roots.push_back(ev(n, {{2 * i - 2, 1}, {2 * i - 1, 1}}));
    }
    const int k = 2 * i - 1;
    const std::string name = "O_" + std::to_string(k);
    TableRow r = base_row("12", name, Series::D, n, k * (2 * n - k));
    r.twist = TwistKind::Graph;
    r.twist_power = 1;
    r.w_roots = to_simple(rs, roots);
    r.model = MatrixModel{GroupKind::O, n, product_recipe("tau", "n", roots), true, named_label(classes, name), std::nullopt};
    rows.push_back(std::move(r));
  }
  if (n % 2 == 1) {
    std::vector<IntVec> w0;
    for (int k = 1; k <= m; ++k) {
      w0.push_back(ev(n, {{2 * k - 1, 1}, {2 * k, -1}}));
      w0.push_back(ev(n, {{2 * k - 1, 1}, {2 * k, 1}}));
    }
    const std::string name = "O_" + std::to_string(n);
    TableRow r = base_row("12", name, Series::D, n, n * n);
    r.J = std::vector<int>{};
    r.twist = TwistKind::Graph;
    r.twist_power = 1;
    r.w_roots = to_simple(rs, w0);
    r.model = MatrixModel{GroupKind::O, n, product_recipe("tau", "n", w0), true, named_label(classes, name), std::nullopt};
    rows.push_back(std::move(r));
  }
}

void add_outer_e6_and_triality(std::vector<TableRow>& rows) {
  TableRow t = base_row("13", "tau", Series::E, 6, 26);
  t.J = std::vector<int>{2, 3, 4, 5};
  t.twist = TwistKind::Graph;
  t.twist_power = 1;
  t.w_roots = {IntVec{1, 1, 2, 2, 1, 1}, IntVec{1, 1, 1, 2, 2, 1}};
  t.note = "representative not machine-checked";
  rows.push_back(t);
  TableRow s = base_row("13", "tau x_b1(1)", Series::E, 6, 42);
  s.J = std::vector<int>{};
  s.twist = TwistKind::Graph;
  s.twist_power = 1;
  s.w_roots = {IntVec{1, 2, 2, 3, 2, 1}, IntVec{1, 0, 1, 1, 1, 1}, IntVec{0, 0, 1, 1, 1, 0}, IntVec{0, 0, 0, 1, 0, 0}};
  s.note = "representative not machine-checked";
  rows.push_back(s);
  TableRow g = base_row("G2inD4", "G2", Series::D, 4, 14);
  g.characteristic = 0;
  g.J = std::vector<int>{2};
  g.twist = TwistKind::Triality;
  g.twist_power = 1;
  g.w_roots = {IntVec{1, 1, 1, 0}, IntVec{1, 1, 0, 1}, IntVec{0, 1, 1, 1}};
  g.note = "fixed points of triality; representative not machine-checked";
  rows.push_back(g);
}

bool same_twisted(const TwistedElement& a, const TwistedElement& b) {
  return a.twist_power() == b.twist_power() && a.weyl() == b.weyl() && a.tau().matrix() == b.tau().matrix();
}

} // namespace

std::string twist_kind_name(TwistKind t) {
  switch (t) {
  case TwistKind::None: return "none";
  case TwistKind::Graph: return "graph";
  case TwistKind::Triality: return "triality";
  }
  return "?";
}

std::string TableRow::id() const {
  return table_id + ":" + std::string(1, series_char(series)) + std::to_string(rank) + ":" + class_name;
}

OuterFormType outer_form_type(const GroupSpec& spec, const TwistedMat& t) {
  if (!t.twist) throw Error("outer_form_type needs an element of the outer coset");
  const Mat form = spec.flip() * t.g;
  for (int i = 0; i < form.size(); ++i)
    if (form.get(i, i)) return OuterFormType::NonAlternating;
  return OuterFormType::Alternating;
}

bool SphericityReport::passed() const {
  if (!checked) return true;
  auto ok = [](const std::optional<bool>& b) { return !b || *b; };
  return dim_match && ok(j_match) && ok(rep_label_match) && ok(rep_cell_match) && ok(rep_involution_check);
}

std::vector<TableRow> builtin_tables(const TableLimits& limits) {
  std::vector<TableRow> rows;
  for (int n = 1; n <= limits.max_classical_rank; ++n) add_type_a(rows, n);
  for (int n = 2; n <= limits.max_classical_rank; ++n) add_type_c(rows, n);
  for (int n = 4; n <= limits.max_classical_rank; ++n) add_type_d(rows, n);
  add_table5(rows);
  add_f4_g2(rows);
  for (int m = 1; m <= limits.max_outer_a; ++m) add_outer_a_odd(rows, m);
  for (int m = 2; m <= limits.max_outer_a; ++m) add_outer_a_even(rows, m);
  for (int n = 4; n <= limits.max_outer_d; ++n) add_outer_d(rows, n);
  add_outer_e6_and_triality(rows);
  return rows;
}

TwistedElement row_element(const TableRow& row) {
  auto rs = RootSystem::build(row.series, row.rank);
  for (const auto& r : row.w_roots)
    if (!rs->is_root(r)) throw Error("row " + row.id() + ": " + rs->format_root(r) + " is not a root of " + rs->name());
  const WeylElement w = WeylElement::product_of_reflections(rs, row.w_roots);
  switch (row.twist) {
  case TwistKind::None: return TwistedElement(w);
  case TwistKind::Graph: return TwistedElement(DiagramAutomorphism::standard(rs), row.twist_power, w);
  case TwistKind::Triality: return TwistedElement(DiagramAutomorphism::triality(rs), row.twist_power, w);
  }
  throw InternalError("unknown twist kind");
}

SphericityReport verify_row(const TableRow& row) {
  SphericityReport rep;
  rep.row = row;
  if (!row.spherical) {
    rep.checked = false;
    rep.detail = row.note;
    return rep;
  }
  const TwistedElement te = row_element(row);
  const auto& rs = te.weyl().root_system();
  rep.computed_length = te.weyl().length();
  rep.computed_rank = rank_one_minus(te);
  rep.criterion_value = rep.computed_length + rep.computed_rank;
  rep.dim_match = rep.criterion_value == row.claimed_dim;

  if (row.J) {
    std::vector<int> j0;
    for (int j : *row.J) j0.push_back(j - 1);
    rep.j_match = WeylElement::longest(rs) * WeylElement::longest(rs, j0) == te.weyl();
  }

  if (row.model) {
    const auto& model = *row.model;
    GroupSpec spec(model.kind, model.n, FiniteField::get(1));
    const TwistedMat t = build_representative(spec, model.recipe);
    if (row.consists_of_involutions) {
      const TwistedMat sq = twisted_mul(spec, t, t);
      rep.rep_involution_check = !sq.twist && sq.g.is_identity();
    }
    if (model.label) rep.rep_label_match = !t.twist && class_label(spec, t.g) == *model.label;
    if (model.form) rep.rep_label_match = t.twist && outer_form_type(spec, t) == *model.form;
    if (!model.outer) {
      rep.rep_cell_match = !t.twist && bruhat_cell(spec, t.g) == te.weyl();
    } else if (model.kind == GroupKind::O) {
      rep.rep_cell_match = !t.twist && same_twisted(bruhat_cell_outer(spec, t.g), te);
    } else {
      rep.rep_cell_match = t.twist && same_twisted(bruhat_cell(spec, t), te);
    }
  }
  if (!rep.passed()) {
    std::string why;
    if (!rep.dim_match) why += " criterion " + std::to_string(rep.criterion_value) + " != " + std::to_string(row.claimed_dim) + ";";
    if (rep.j_match == false) why += " w != w0*w_J;";
    if (rep.rep_involution_check == false) why += " representative is not an involution;";
    if (rep.rep_label_match == false) why += " representative label mismatch;";
    if (rep.rep_cell_match == false) why += " representative cell mismatch;";
    rep.detail = why.substr(1);
  } else {
    rep.detail = row.note;
  }
  return rep;
}

VerifySummary verify_all(const TableLimits& limits, int jobs) {
  const auto rows = builtin_tables(limits);
  VerifySummary summary;
  summary.reports.resize(rows.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < rows.size(); i = next++) {
      try {
        summary.reports[i] = verify_row(rows[i]);
      } catch (const std::exception& e) {
        SphericityReport rep;
        rep.row = rows[i];
        rep.detail = std::string("error: ") + e.what();
        summary.reports[i] = rep;
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, int(rows.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& r : summary.reports) {
    if (!r.checked) ++summary.skipped;
    else if (r.passed()) ++summary.passed;
    else ++summary.failed;
  }
  return summary;
}

} // namespace sphc
