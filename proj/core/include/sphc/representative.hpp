#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sphc/group.hpp"
#include "sphc/weyl.hpp"

namespace sphc {

/// Element tau^a g of the extension of SL/GL by the graph automorphism
/// theta(g) = J g^{-T} J (J the antidiagonal flip). For orthogonal groups the
/// twist is an honest matrix and this wrapper is not used.
struct TwistedMat {
  bool twist = false;
  Mat g;

  bool operator==(const TwistedMat& o) const { return twist == o.twist && g == o.g; }
};

Mat theta(const GroupSpec& spec, const Mat& g);
TwistedMat twisted_mul(const GroupSpec& spec, const TwistedMat& a, const TwistedMat& b);
TwistedMat twisted_inverse(const GroupSpec& spec, const TwistedMat& a);

/// The O(2n) element swapping v_n and v_{n+1}.
Mat orthogonal_swap(const GroupSpec& spec);

/// Jordan type of a unipotent matrix; throws Error if (u-1)^m != 0.
Partition jordan_type(const Mat& u);
bool is_unipotent(const Mat& u);

/// Full (lambda, epsilon, tag) label of a unipotent element. For GL/SL only
/// lambda is filled. For O(2n) elements the kind of the returned label is O;
/// for SO it is SO with the split tag decided by the position of the image of
/// u - 1 relative to span(v_1..v_n).
ClassLabel class_label(const GroupSpec& spec, const Mat& u);

/// Bruhat cell of an invertible matrix as a permutation sigma of the basis
/// (g in B sigma B with sigma(c) = the row of the pivot in column c).
std::vector<int> bruhat_permutation(const Mat& g);

/// Bruhat cell as an element of the Weyl group of spec's root datum. Throws
/// InternalError if the permutation is not in the Weyl group of the spec.
WeylElement bruhat_cell(const GroupSpec& spec, const Mat& g);
/// Cell of tau^a g in the A-series extension: B tau g B = tau B g B.
TwistedElement bruhat_cell(const GroupSpec& spec, const TwistedMat& t);
/// Cell of an orthogonal-coset element g in O(2n) \ SO(2n): the element
/// tau w with w the Weyl element of swap * g.
TwistedElement bruhat_cell_outer(const GroupSpec& spec, const Mat& g);

/// Monomial representative of a permutation-type Weyl element (product of
/// n_alpha over a reduced word).
Mat weyl_representative(const GroupSpec& spec, const WeylElement& w);

/// Parses a whitespace-separated product of factors:
///   x:ROOT[:XI]  n:ROOT  h:ROOT:Z  tau
/// ROOT in e-notation, XI and Z field elements as integers (default 1).
/// tau is the graph twist (A series) or the orthogonal swap (O/SO).
TwistedMat build_representative(const GroupSpec& spec, const std::string& recipe);

/// Checks g x_{-b1}(t1)...x_{-bl}(tl) g^{-1} = n_{b1}...n_{bl} h_{b1}(t1)...h_{bl}(tl)
/// with g = x_{b1}(t1^{-1})...x_{bl}(tl^{-1}), for pairwise orthogonal roots.
/// Throws Error on non-orthogonal roots or a zero scalar.
bool verify_exchange_identity(const GroupSpec& spec, const std::vector<IntVec>& roots, const std::vector<uint8_t>& scalars);

/// "kind:m:k:poly[:tau]" then one hex line per bit-plane.
std::string serialize(const GroupSpec& spec, const TwistedMat& t);
struct ParsedElement {
  GroupKind kind;
  int m;
  FieldPtr field;
  TwistedMat element;
};
ParsedElement deserialize(const std::string& text);

} // namespace sphc
