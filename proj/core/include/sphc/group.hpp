#pragma once

#include <string>
#include <vector>

#include "sphc/labels.hpp"
#include "sphc/matrix.hpp"
#include "sphc/root_system.hpp"

namespace sphc {

/// A classical group over GF(2^k) in its natural representation.
///
/// Basis v_1..v_m. For Sp/O/SO, m = 2n, f(v_i, v_{m+1-i}) = 1 (antidiagonal
/// Gram matrix) and Q(x) = sum_{i<=n} x_i x_{m+1-i}. v_i has weight e_i for
/// i <= n and -e_{m+1-i} otherwise; for GL/SL v_i has weight e_i. Roots are
/// given in these e-coordinates (length n, or m for GL/SL), so the upper
/// triangular matrices form a Borel subgroup.
class GroupSpec {
public:
  /// n is the matrix size for GL/SL and half of it for Sp/O/SO.
  GroupSpec(GroupKind kind, int n, FieldPtr field);

  GroupKind kind() const { return kind_; }
  int n() const { return n_; }
  int m() const { return m_; }
  const FieldPtr& field() const { return field_; }
  std::string name() const;
  /// Number of e-coordinates used for roots.
  int root_dim() const { return has_form(kind_) ? n_ : m_; }

  IntVec weight(int basis_index) const;
  const std::vector<IntVec>& positive_roots() const { return positive_; }
  const std::vector<IntVec>& simple_roots() const { return simple_; }
  bool is_root(const IntVec& alpha) const;
  /// "2e1", "e1-e3", "-e2-e4"; throws Error unless the result is a root.
  IntVec parse_root(const std::string& text) const;
  std::string format_root(const IntVec& alpha) const;

  /// x_alpha(xi) = 1 + xi * sum of E_rc over weight(r) - weight(c) = alpha.
  Mat x(const IntVec& alpha, uint8_t xi) const;
  /// Diagonal with entry z^<weight(r), alpha^vee>; throws Error for z = 0.
  Mat h(const IntVec& alpha, uint8_t z) const;
  /// x_alpha(1) x_{-alpha}(1) x_alpha(1).
  Mat n_alpha(const IntVec& alpha) const;
  /// Diagonal torus element of GL with the given entries (GL only).
  Mat diag(const std::vector<uint8_t>& entries) const;

  Mat identity() const { return Mat::identity(field_, m_); }
  /// Antidiagonal Gram matrix (also the flip used for A-series twists).
  Mat flip() const;
  uint8_t quadratic_form(const std::vector<uint8_t>& v) const;
  uint8_t bilinear_form(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) const;

  /// Group membership, including the quadratic form for O/SO (checked on
  /// the basis; polarization covers the rest) and the Dickson invariant for SO.
  bool contains(const Mat& g) const;
  /// Inverse using the form when available (g^{-1} = J g^T J for Sp/O).
  Mat inverse(const Mat& g) const;

  /// Root datum matching the group when one exists (A_{m-1}, C_n, D_n with
  /// n >= 4); nullptr otherwise.
  RootSystemPtr root_system() const { return rs_; }
  /// e-coordinates -> simple-root coordinates of root_system().
  IntVec to_simple_coords(const IntVec& alpha) const;
  IntVec from_simple_coords(const IntVec& coords) const;

  /// Upper unitriangular elements of the group are products of root elements;
  /// this is the standard generating set {x_a(t) : a simple, t in a GF(2)-basis}.
  std::vector<Mat> simple_root_generators(bool negative_too) const;
  /// Generators of the full group: root elements x_{+-a}(t) for simple a and
  /// a GF(2)-basis t (plus a torus generator for GL).
  std::vector<Mat> group_generators() const;

private:
  GroupKind kind_;
  int n_;
  int m_;
  FieldPtr field_;
  std::vector<IntVec> positive_;
  std::vector<IntVec> simple_;
  RootSystemPtr rs_;
};

/// Dickson invariant rank(g + 1) mod 2 of an element of O(2n).
int dickson_invariant(const GroupSpec& spec, const Mat& g);

} // namespace sphc
