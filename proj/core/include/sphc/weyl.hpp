#pragma once

#include <optional>
#include <utility>
#include <string>
#include <vector>

#include "sphc/root_system.hpp"

namespace sphc {

/// Element of the Weyl group, stored as its integer matrix on simple-root
/// coordinates (column j is the image of alpha_j).
class WeylElement {
public:
  static WeylElement identity(const RootSystemPtr& rs);
  static WeylElement simple_reflection(const RootSystemPtr& rs, int i);
  /// Throws Error if beta is not a root.
  static WeylElement reflection(const RootSystemPtr& rs, const IntVec& beta);
  /// s_{b_1} s_{b_2} ... s_{b_k} (leftmost factor applied last).
  static WeylElement product_of_reflections(const RootSystemPtr& rs, const std::vector<IntVec>& roots);
  static WeylElement from_word(const RootSystemPtr& rs, const std::vector<int>& word);
  /// Builds the element mapping alpha_j to images[j]; throws Error unless the
  /// map permutes the roots.
  static WeylElement from_images(const RootSystemPtr& rs, const std::vector<IntVec>& images);
  /// Longest element of the parabolic subgroup W_J (0-based indices).
  static WeylElement longest(const RootSystemPtr& rs, const std::vector<int>& J);
  static WeylElement longest(const RootSystemPtr& rs);

  const RootSystemPtr& root_system() const { return rs_; }
  const IntMatrix& matrix() const { return m_; }

  IntVec apply(const IntVec& v) const { return m_.apply(v); }
  WeylElement operator*(const WeylElement& o) const;
  WeylElement inverse() const;
  bool operator==(const WeylElement& o) const { return m_ == o.m_; }

  int length() const;
  bool is_identity() const;
  bool is_involution() const;
  /// True when l(w s_i) < l(w), i.e. w(alpha_i) is negative.
  bool has_right_descent(int i) const;
  bool has_left_descent(int i) const;
  /// Reduced word with 0-based simple indices, rightmost letter last.
  std::vector<int> reduced_word() const;
  /// "s1 s3 s2" (1-based), or "1" for the identity.
  std::string word_string() const;

private:
  WeylElement(RootSystemPtr rs, IntMatrix m) : rs_(std::move(rs)), m_(std::move(m)) {}

  RootSystemPtr rs_;
  IntMatrix m_;
  mutable std::optional<int> length_;
};

/// Bruhat order, by the descent recursion: for a right descent s of z,
/// w <= z iff (ws < w ? ws <= zs : w <= zs).
bool bruhat_leq(const WeylElement& w, const WeylElement& z);

/// Pairwise orthogonal positive roots whose reflections multiply to the
/// involution w. Long roots are taken first (then by decreasing height), so
/// in type C the list splits as long roots followed by short ones.
std::vector<IntVec> involution_orthogonal_decomposition(const WeylElement& w);

/// Permutation of the Dynkin diagram, acting on the root lattice.
class DiagramAutomorphism {
public:
  static DiagramAutomorphism identity(const RootSystemPtr& rs);
  /// The order-2 graph automorphism of A_n (n >= 2), D_n or E6.
  static DiagramAutomorphism standard(const RootSystemPtr& rs);
  /// alpha1 -> alpha3 -> alpha4 -> alpha1 in D4.
  static DiagramAutomorphism triality(const RootSystemPtr& rs);

  const RootSystemPtr& root_system() const { return rs_; }
  /// 0-based: alpha_i maps to alpha_{permutation()[i]}.
  const std::vector<int>& permutation() const { return perm_; }
  int order() const { return order_; }
  const IntMatrix& matrix() const { return m_; }
  IntMatrix power(int i) const;
  IntVec apply(const IntVec& v) const { return m_.apply(v); }

private:
  DiagramAutomorphism(RootSystemPtr rs, std::vector<int> perm);

  RootSystemPtr rs_;
  std::vector<int> perm_;
  int order_ = 1;
  IntMatrix m_;
};

/// tau^i w.
class TwistedElement {
public:
  TwistedElement(DiagramAutomorphism tau, int twist_power, WeylElement w);
  explicit TwistedElement(WeylElement w);

  const DiagramAutomorphism& tau() const { return tau_; }
  int twist_power() const { return power_; }
  const WeylElement& weyl() const { return w_; }
  IntMatrix matrix() const;

private:
  DiagramAutomorphism tau_;
  int power_;
  WeylElement w_;
};

/// Rank over Q of 1 - tau^i w.
int rank_one_minus(const TwistedElement& t);
int rank_one_minus(const WeylElement& w);

/// length(w) + rank(1 - tau^i w).
int criterion_value(const TwistedElement& t);
int criterion_value(const WeylElement& w);

} // namespace sphc
