#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sphc/int_matrix.hpp"

namespace sphc {

enum class Series : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

Series parse_series(const std::string& s);
char series_char(Series s);

/// Immutable root datum of one simple type.
///
/// Roots are stored in simple-root coordinates: a root beta = sum m_i alpha_i
/// is the integer vector (m_1, ..., m_n). The Bourbaki e_i description of the
/// simple roots is kept as "ambient" coordinates, multiplied by
/// ambient_scale() (2 for E and F, whose Bourbaki coordinates are
/// half-integral) so that everything stays integral.
class RootSystem {
public:
  /// Throws Error for an invalid (series, rank) pair.
  static std::shared_ptr<const RootSystem> build(Series series, int rank);

  Series series() const { return series_; }
  int rank() const { return rank_; }
  std::string name() const;

  const std::vector<IntVec>& positive_roots() const { return positive_; }
  int num_positive_roots() const { return int(positive_.size()); }
  IntVec simple_root(int i) const;

  const IntMatrix& cartan_matrix() const { return cartan_; }
  const std::vector<int>& symmetrizer() const { return d_; }
  /// Symmetric pairing (alpha_i, alpha_j) = d_i a_ij.
  const IntMatrix& gram() const { return gram_; }

  int inner(const IntVec& x, const IntVec& y) const;
  int height(const IntVec& root) const;

  bool is_root(const IntVec& v) const;
  static bool is_positive(const IntVec& v);
  static bool is_negative(const IntVec& v);
  /// Index into positive_roots() of +v or -v; nullopt if v is not a root.
  std::optional<int> positive_index(const IntVec& v) const;
  bool is_long(const IntVec& root) const;

  /// s_beta(x) = x - 2 (x,beta)/(beta,beta) beta. Requires beta to be a root.
  IntVec reflect(const IntVec& beta, const IntVec& x) const;

  IntVec highest_root() const { return positive_.back(); }
  /// Highest among the short roots; equals highest_root() when simply laced.
  IntVec highest_short_root() const;

  int ambient_dim() const { return ambient_dim_; }
  int ambient_scale() const { return ambient_scale_; }
  /// Ambient (scaled) coordinates of a vector given in simple-root coordinates.
  IntVec to_ambient(const IntVec& simple_coords) const;
  /// Inverse of to_ambient; throws Error if v is not in the root lattice.
  IntVec from_ambient(const IntVec& ambient) const;

  /// Renders a root as in the usual notation: e-coordinates for classical
  /// types ("e1-e3", "2e1"), coefficient tuples "(1,2,2,3,2,1)" otherwise.
  std::string format_root(const IntVec& root) const;
  /// Parses either notation; throws Error if the result is not a root.
  IntVec parse_root(const std::string& text) const;

  bool is_classical() const;

private:
  RootSystem() = default;
  void finish_construction(const std::vector<IntVec>& ambient_simple);

  Series series_ = Series::A;
  int rank_ = 0;
  int ambient_dim_ = 0;
  int ambient_scale_ = 1;
  std::vector<IntVec> ambient_simple_;
  IntMatrix cartan_;
  IntMatrix gram_;
  std::vector<int> d_;
  std::vector<IntVec> positive_;
  std::map<IntVec, int> positive_lookup_;
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

/// Expected |Phi^+| for a simple type, computed from the closed formulas.
int expected_positive_root_count(Series series, int rank);

} // namespace sphc
