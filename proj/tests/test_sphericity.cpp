#include <map>

#include "doctest.h"
#include "sphc/error.hpp"
#include "sphc/sphericity.hpp"

using namespace sphc;

namespace {

const TableRow& find_row(const std::vector<TableRow>& rows, const std::string& table, Series s, int rank,
                         const std::string& name) {
  for (const auto& r : rows)
    if (r.table_id == table && r.series == s && r.rank == rank && r.class_name == name) return r;
  FAIL("missing row " << table << " " << name);
  throw 0;
}

// Positive roots of B_n/C_n/D_n-type sent negative by a signed permutation,
// counted directly on e-coordinates.
int signed_perm_length(const std::vector<int>& image, bool long_roots_2e) {
  const int n = int(image.size());
  auto value = [&](int i) { return image[size_t(i)]; };  // +-(k+1)
  auto sign_of_sum = [&](int i, int si, int j, int sj) {
    // si*e_i + sj*e_j mapped; return positivity of the image
    const int a = value(i) * si, b = value(j) * sj;
    const int ka = std::abs(a), kb = std::abs(b);
    return ka < kb ? a > 0 : b > 0;
  };
  int len = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!sign_of_sum(i, 1, j, -1)) ++len;
      if (!sign_of_sum(i, 1, j, 1)) ++len;
    }
  if (long_roots_2e)
    for (int i = 0; i < n; ++i)
      if (value(i) < 0) ++len;
  return len;
}

} // namespace

TEST_CASE("every built-in row passes at the default limits") {
  const auto summary = verify_all({}, 4);
  for (const auto& r : summary.reports)
    if (r.checked && !r.passed()) FAIL_CHECK(r.row.id() << ": " << r.detail);
  CHECK(summary.ok());
  CHECK(summary.passed > 100);
  CHECK(summary.skipped == 3);
  int modelled = 0;
  for (const auto& r : summary.reports) {
    if (!r.row.model) continue;
    ++modelled;
    CHECK(r.rep_label_match.has_value());
    CHECK(r.rep_cell_match.has_value());
    CHECK(r.rep_involution_check.has_value());
  }
  CHECK(modelled == 75);
}

TEST_CASE("classical dims match closed forms and an independent length count") {
  const auto rows = builtin_tables();
  for (int n = 2; n <= 6; ++n) {
    for (int l = 1; l <= n; ++l) {
      // s_{2e_1}...s_{2e_l} negates the first l coordinates
      std::vector<int> img;
      for (int i = 1; i <= n; ++i) img.push_back(i <= l ? -i : i);
      const int len = signed_perm_length(img, true);
      const auto rep = verify_row(find_row(rows, "2", Series::C, n, "X_" + std::to_string(l)));
      CHECK(rep.computed_length == len);
      CHECK(rep.computed_rank == l);
      CHECK(rep.criterion_value == l * (2 * n - l + 1));
    }
    for (int l = 1; 2 * l <= n; ++l) {
      // s_{e1+e2}: e1 -> -e2, e2 -> -e1
      std::vector<int> img;
      for (int i = 1; i <= n; ++i) img.push_back(i <= 2 * l ? (i % 2 ? -(i + 1) : -(i - 1)) : i);
      const auto rep = verify_row(find_row(rows, "2", Series::C, n, "Y_" + std::to_string(2 * l)));
      CHECK(rep.computed_length == signed_perm_length(img, true));
      CHECK(rep.computed_rank == l);
      CHECK(rep.criterion_value == 4 * l * (n - l));
    }
  }
  for (int n = 4; n <= 6; ++n) {
    const int m = n / 2;
    for (int l = 1; l <= m; ++l) {
      std::vector<int> img;
      for (int i = 1; i <= n; ++i) img.push_back(i <= 2 * l ? -i : i);
      const auto z = verify_row(find_row(rows, n % 2 ? "4" : "3", Series::D, n, "Z_" + std::to_string(l)));
      CHECK(z.computed_length == signed_perm_length(img, false));
      CHECK(z.criterion_value == 4 * l * (n - l));
      const auto x = verify_row(find_row(rows, n % 2 ? "4" : "3", Series::D, n, "X_" + std::to_string(l)));
      CHECK(x.criterion_value == 2 * l * (2 * n - 2 * l - 1));
    }
  }
  CHECK(verify_row(find_row(rows, "3", Series::D, 6, "X'_3")).criterion_value == 30);
  CHECK(verify_row(find_row(rows, "2", Series::C, 4, "X_2")).computed_length == 12);
}

TEST_CASE("family dims increase along each family") {
  const auto rows = builtin_tables();
  std::map<std::string, int> last;
  for (const auto& r : rows) {
    if (r.class_name.size() < 3 || r.class_name[1] != '_' || r.series == Series::E) continue;
    const std::string family = r.table_id + std::to_string(r.rank) + r.class_name[0];
    if (last.count(family)) CHECK(r.claimed_dim > last[family]);
    last[family] = r.claimed_dim;
  }
  CHECK(last.size() > 10);
}

TEST_CASE("exceptional criterion values") {
  const auto rows = builtin_tables();
  struct Want {
    const char* table;
    Series s;
    int rank;
    const char* name;
    int length;
    int rank_term;
  };
  for (const auto& w : {Want{"5", Series::E, 6, "3A1", 36, 4}, Want{"5", Series::E, 7, "4A1", 63, 7},
                        Want{"5", Series::E, 8, "4A1", 120, 8}, Want{"5", Series::E, 6, "A1", 21, 1},
                        Want{"13", Series::E, 6, "tau", 24, 2}, Want{"13", Series::E, 6, "tau x_b1(1)", 36, 6},
                        Want{"7", Series::F, 4, "A1~A1", 24, 4}, Want{"9", Series::G, 2, "~A1", 5, 1}}) {
    const auto rep = verify_row(find_row(rows, w.table, w.s, w.rank, w.name));
    CHECK(rep.computed_length == w.length);
    CHECK(rep.computed_rank == w.rank_term);
    CHECK(rep.dim_match);
  }
  const auto g2 = verify_row(find_row(rows, "G2inD4", Series::D, 4, "G2"));
  CHECK(g2.criterion_value == 14);
  CHECK(g2.j_match == true);
  const auto a2 = verify_row(find_row(rows, "5", Series::E, 7, "A2"));
  CHECK(!a2.checked);
  CHECK(a2.passed());
  CHECK(a2.row.component_group_order == 2);
}

TEST_CASE("outer rows reproduce the closed forms") {
  TableLimits limits;
  const auto rows = builtin_tables(limits);
  for (int m = 1; m <= 4; ++m) {
    const auto rep = verify_row(find_row(rows, "10", Series::A, 2 * m, "tau"));
    CHECK(rep.criterion_value == 2 * m * m + 3 * m);
    CHECK(rep.rep_cell_match == true);
  }
  for (int m = 2; m <= 4; ++m) {
    const auto a = verify_row(find_row(rows, "11", Series::A, 2 * m - 1, "tau"));
    const auto b = verify_row(find_row(rows, "11", Series::A, 2 * m - 1, "tau x_b1(1)"));
    CHECK(a.criterion_value == 2 * m * m - m - 1);
    CHECK(b.criterion_value == m * (2 * m - 1) + 2 * m - 1);
    CHECK(a.rep_label_match == true);
    CHECK(b.rep_label_match == true);
  }
  for (int n = 4; n <= 6; ++n)
    for (int k = 1; k <= n; k += 2) {
      const auto rep = verify_row(find_row(rows, "12", Series::D, n, "O_" + std::to_string(k)));
      CHECK(rep.criterion_value == k * (2 * n - k));
      CHECK(rep.rep_involution_check == true);
    }
}

TEST_CASE("wrong data is caught") {
  auto rows = builtin_tables();
  TableRow r = find_row(rows, "2", Series::C, 3, "X_2");
  r.claimed_dim += 1;
  CHECK(!verify_row(r).passed());
  r = find_row(rows, "2", Series::C, 3, "Y_2");
  r.model->recipe = "n:2e1 n:2e2";
  const auto rep = verify_row(r);
  CHECK(rep.rep_label_match == false);
  CHECK(rep.rep_cell_match == false);
  r = find_row(rows, "7", Series::F, 4, "~A1");
  r.J = std::vector<int>{2, 3, 4};
  CHECK(verify_row(r).j_match == false);
  r.w_roots = {IntVec{1, 1, 1, 5}};
  CHECK_THROWS_AS(verify_row(r), Error);
}

TEST_CASE("outer form type") {
  GroupSpec sl(GroupKind::SL, 4, FiniteField::get(1));
  CHECK(outer_form_type(sl, build_representative(sl, "tau")) == OuterFormType::Alternating);
  CHECK(outer_form_type(sl, build_representative(sl, "tau x:e1-e4")) == OuterFormType::NonAlternating);
  CHECK_THROWS_AS(outer_form_type(sl, build_representative(sl, "n:e1-e4")), Error);
}
