#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sphc/representative.hpp"

namespace sphc {

/// Packed matrix (at most 128 bits of entries) used as a hash key.
struct MatKey {
  uint64_t lo = 0;
  uint64_t hi = 0;
  bool operator==(const MatKey&) const = default;
  auto operator<=>(const MatKey&) const = default;
};
struct MatKeyHash {
  size_t operator()(const MatKey& k) const noexcept;
};
MatKey pack_key(const Mat& g);
Mat unpack_key(const MatKey& key, const FieldPtr& field, int m);
/// Whether pack_key can represent matrices of this size over this field.
bool packable(int m, const FieldPtr& field);

enum class Verdict { Spherical, NonSpherical, Inconclusive };
std::string verdict_name(Verdict v);

struct CensusOptions {
  std::vector<int> qs{2, 4};
  uint64_t memory_limit = uint64_t(2) << 30;
  int jobs = 1;
  bool b_orbits = false;
  bool cells = false;
  /// Restrict B-orbit/cell/size work to classes with these labels (all when empty).
  std::vector<ClassLabel> only;
};

/// One conjugacy class of G(F_q) found by enumeration.
struct RationalClass {
  Mat seed;
  ClassLabel label;
  uint64_t size = 0;
  std::vector<MatKey> members;
};

/// Unipotent classes of G(F_q) by BFS over conjugation, seeded from every
/// element of U(F_q). Throws ResourceError when the q^{2N} unipotent elements
/// would not fit in the memory limit.
std::vector<RationalClass> enumerate_rational_classes(const GroupSpec& spec, uint64_t memory_limit);

/// Estimated bytes needed to hold `count` keys during enumeration.
uint64_t estimated_bytes(uint64_t count);

/// Sizes of the B(F_q)-orbits on a set of matrices closed under B-conjugation.
std::vector<uint64_t> b_orbit_sizes(const GroupSpec& spec, const std::vector<MatKey>& members);

/// Histogram of Bruhat cells over a set of group elements, sorted by count
/// (largest first, ties by length then word).
std::vector<std::pair<WeylElement, uint64_t>> cell_histogram(const GroupSpec& spec, const std::vector<MatKey>& members);

/// Dimension of {X in Lie(G) : u X = X u}. dim G minus this value is a lower
/// bound for the dimension of the class of u.
int lie_centralizer_dim(const GroupSpec& spec, const Mat& u);
int group_dimension(GroupKind kind, int n);
int borel_dimension(GroupKind kind, int n);
int positive_root_count(GroupKind kind, int n);

struct ClassRecord {
  ClassLabel label;
  std::map<int, uint64_t> size;
  std::map<int, int> rational_classes;
  std::map<int, std::vector<uint64_t>> rational_sizes;
  std::optional<int> dim_estimate;
  bool dim_consistent = true;
  int dim_lower_bound = 0;
  std::map<int, uint64_t> max_b_orbit;
  std::map<int, uint64_t> b_orbit_count;
  std::optional<int> max_b_orbit_degree;
  std::map<int, std::vector<std::pair<WeylElement, uint64_t>>> cells;
  Verdict verdict = Verdict::Inconclusive;
  std::string verdict_reason;
};

struct CensusReport {
  GroupKind kind;
  int n = 0;
  std::string group;
  std::vector<int> qs;
  std::vector<ClassRecord> classes;
  std::map<int, uint64_t> total;
  std::map<int, uint64_t> expected_total;
  std::vector<std::string> omissions;

  bool complete(int q) const;
  const ClassRecord* find(const ClassLabel& label) const;
};

/// Enumerates unipotent classes at each q, fuses rational classes by label,
/// estimates dimensions and, on request, B-orbit degrees, verdicts and cells.
CensusReport run_census(GroupKind kind, int n, const CensusOptions& options);

/// round(log2(|O(F_q2)| / |O(F_q1)|) / log2(q2/q1)) over consecutive probe
/// pairs; nullopt when sizes are missing or the pairs disagree.
std::optional<int> class_size_degree(const CensusReport& report, const ClassLabel& label);

/// B-orbit degree and verdict for one class (runs the census if needed).
struct BOrbitProbe {
  std::optional<int> degree;
  Verdict verdict;
  std::string reason;
};
BOrbitProbe max_b_orbit_degree(GroupKind kind, int n, const ClassLabel& label, const CensusOptions& options);

/// Conjugacy test by orbit membership.
bool are_conjugate(const GroupSpec& spec, const Mat& a, const Mat& b, uint64_t memory_limit);

struct OuterBucket {
  Partition type;
  ClassLabel label;
  uint64_t count = 0;
  int so_classes = 0;
};
struct OuterCensus {
  int n = 0;
  int q = 2;
  uint64_t group_order = 0;
  std::vector<OuterBucket> buckets;
  std::vector<int> odd_k_expected;
  bool types_match = false;
};
/// Involutions in O(2n, q) minus SO(2n, q), bucketed by Jordan type, with the
/// number of SO(2n, q)-classes in each bucket.
OuterCensus outer_coset_census(int n, int q, uint64_t memory_limit);

struct MinimalityReport {
  std::vector<ClassLabel> expected;
  std::vector<ClassLabel> computed;
  bool labels_match = false;
  std::map<std::string, Verdict> verdicts;
  bool ok = false;
};
/// Recomputes the minimal order-4 labels of Sp(2n) under label_leq and, for
/// n <= 3, probes their sphericity.
MinimalityReport minimality_check(int n, const CensusOptions& options);

} // namespace sphc
