#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sphc/root_system.hpp"

namespace sphc {

enum class GroupKind { GL, SL, Sp, O, SO };

GroupKind parse_group_kind(const std::string& s);
std::string group_kind_name(GroupKind k);
bool has_form(GroupKind k);

/// Weakly decreasing sequence of positive integers.
class Partition {
public:
  Partition() = default;
  /// Sorts the input; throws Error on nonpositive parts.
  explicit Partition(std::vector<int> parts);
  /// Builds sum_i part^mult from (part, mult) pairs.
  static Partition from_multiplicities(const std::map<int, int>& mult);

  const std::vector<int>& parts() const { return parts_; }
  int size() const;
  int largest() const { return parts_.empty() ? 0 : parts_.front(); }
  int num_parts() const { return int(parts_.size()); }
  /// c(i): number of parts equal to i.
  int multiplicity(int i) const;
  /// Distinct part sizes in decreasing order.
  std::vector<int> distinct_parts() const;
  Partition dual() const;
  /// "2^2+1^4"
  std::string str() const;

  bool operator==(const Partition&) const = default;
  auto operator<=>(const Partition&) const = default;

private:
  std::vector<int> parts_;
};

/// Dominance order; throws Error if the sums differ.
bool dominance_leq(const Partition& a, const Partition& b);

/// Values of the epsilon invariant, ordered omega < 0 < 1.
enum class Eps { Omega = 0, Zero = 1, One = 2 };

enum class SoTag { None, I, II };

/// (lambda, epsilon) label of a unipotent class in characteristic 2. For GL
/// and SL the epsilon map is empty. n is the matrix size for GL/SL and half of
/// it for Sp/O/SO.
struct ClassLabel {
  GroupKind kind = GroupKind::Sp;
  int n = 0;
  Partition lambda;
  /// Entries for nonzero even part sizes; everything else reads as omega
  /// except eps(0), which is fixed by the group kind.
  std::map<int, Eps> eps;
  SoTag tag = SoTag::None;

  Eps eps_at(int i) const;
  int matrix_size() const { return has_form(kind) ? 2 * n : n; }
  /// Canonical text, e.g. "2^2_0+1^4" or "2^4_0[II]".
  std::string str() const;

  bool operator==(const ClassLabel&) const = default;
  bool operator<(const ClassLabel& o) const;
};

struct LabelCheck {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

LabelCheck validate_label(const ClassLabel& label);

/// Parses the canonical text. Even parts may omit the subscript when b2
/// forces epsilon = 1; otherwise the subscript is required. Throws Error on
/// malformed or invalid input.
ClassLabel parse_label(GroupKind kind, int n, const std::string& text);

/// Dominance on lambda; for equal lambda, pointwise epsilon with 0 < 1 and
/// omega comparable only to itself; split tags must agree.
bool label_leq(const ClassLabel& a, const ClassLabel& b);

/// Every valid label of the given kind and size, in a deterministic order.
std::vector<ClassLabel> all_valid_labels(GroupKind kind, int n);

struct NamedClass {
  std::string name;
  std::optional<ClassLabel> label;
  int dim = 0;
  bool is_spherical = true;
  bool consists_of_involutions = true;
};

/// Unipotent involution classes of Sp(2n) (X_l, Y_2l) or SO(2n) (Z_l, X_l, X'_m).
std::vector<NamedClass> involution_labels(GroupKind kind, int n);

/// Spherical unipotent classes of a simple group of the given type in the
/// given characteristic. Classical types are only accepted in characteristic
/// 2, exceptional ones in their bad characteristics; type A in any prime.
std::vector<NamedClass> spherical_unipotent_classes(Series series, int rank, int characteristic);

/// Minimal labels under label_leq among Sp(2n) classes of order exactly 4.
std::vector<ClassLabel> order4_minimal_labels(int n);

/// Unipotent involution classes O_k (k odd) in the outer coset of O(2n).
std::vector<NamedClass> outer_involution_labels(int n);

bool is_bad_prime(Series series, int rank, int p);

} // namespace sphc
