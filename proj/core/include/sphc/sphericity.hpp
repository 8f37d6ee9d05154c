#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sphc/labels.hpp"
#include "sphc/representative.hpp"
#include "sphc/weyl.hpp"

namespace sphc {

enum class TwistKind { None, Graph, Triality };

/// Outer-coset class of an A-series involution tau*g, read off from the
/// symmetric form J*g: alternating forms give the class of tau itself.
enum class OuterFormType { Alternating, NonAlternating };
OuterFormType outer_form_type(const GroupSpec& spec, const TwistedMat& t);

/// Matrix-level data for a row: the group in which the representative lives
/// and the expected class of the representative.
struct MatrixModel {
  GroupKind kind;
  int n;
  std::string recipe;
  bool outer = false;
  std::optional<ClassLabel> label;
  std::optional<OuterFormType> form;
};

struct TableRow {
  std::string table_id;
  std::string class_name;
  Series series;
  int rank;
  /// 0 when the row holds in every characteristic of interest.
  int characteristic = 2;
  /// 1-based simple indices with w = w0 * w_J, when the table lists one.
  std::optional<std::vector<int>> J;
  /// Roots in simple-root coordinates; w is the product of their reflections.
  std::vector<IntVec> w_roots;
  TwistKind twist = TwistKind::None;
  int twist_power = 0;
  std::optional<MatrixModel> model;
  int claimed_dim = 0;
  /// Rows recorded for reference only (non-spherical classes) carry no w.
  bool spherical = true;
  bool consists_of_involutions = true;
  std::optional<int> component_group_order;
  std::string note;

  std::string id() const;
};

struct SphericityReport {
  TableRow row;
  int computed_length = 0;
  int computed_rank = 0;
  int criterion_value = 0;
  bool dim_match = false;
  std::optional<bool> j_match;
  std::optional<bool> rep_label_match;
  std::optional<bool> rep_cell_match;
  std::optional<bool> rep_involution_check;
  /// False for reference rows, which are not checked.
  bool checked = true;
  std::string detail;

  bool passed() const;
};

struct TableLimits {
  int max_classical_rank = 6;
  int max_outer_a = 4;
  int max_outer_d = 6;
};

/// Every built-in row, with the classical families instantiated up to the
/// given limits. Matrix models are attached to A/C/D rows.
std::vector<TableRow> builtin_tables(const TableLimits& limits = {});

/// The twisted Weyl element tau^i w of a row.
TwistedElement row_element(const TableRow& row);

SphericityReport verify_row(const TableRow& row);

struct VerifySummary {
  std::vector<SphericityReport> reports;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  bool ok() const { return failed == 0; }
};

/// Runs verify_row over all built-in rows; rows are independent and are
/// verified on up to `jobs` threads, reports kept in table order.
VerifySummary verify_all(const TableLimits& limits = {}, int jobs = 1);

std::string twist_kind_name(TwistKind t);

} // namespace sphc
