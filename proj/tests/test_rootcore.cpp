#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "doctest.h"
#include "sphc/error.hpp"
#include "sphc/weyl.hpp"

using namespace sphc;

namespace {

// Independent model of W(B_n)=W(C_n) as signed permutations acting on
// e-coordinates: image of e_i is sign[i] * e_{perm[i]}.
struct SignedPerm {
  std::vector<int> perm;
  std::vector<int> sign;
};

std::vector<SignedPerm> all_signed_perms(int n) {
  std::vector<SignedPerm> out;
  std::vector<int> p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    for (int mask = 0; mask < (1 << n); ++mask) {
      SignedPerm sp{p, std::vector<int>(size_t(n), 1)};
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) sp.sign[size_t(i)] = -1;
      out.push_back(sp);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

IntVec act(const SignedPerm& sp, const IntVec& v) {
  IntVec out(v.size(), 0);
  for (size_t i = 0; i < v.size(); ++i) out[size_t(sp.perm[i])] += sp.sign[i] * v[i];
  return out;
}

// Positive roots of C_n in e-coordinates, listed by hand.
std::vector<IntVec> c_positive_roots_e(int n) {
  std::vector<IntVec> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      IntVec a(size_t(n), 0), b(size_t(n), 0);
      a[size_t(i)] = 1;
      a[size_t(j)] = -1;
      b[size_t(i)] = 1;
      b[size_t(j)] = 1;
      out.push_back(a);
      out.push_back(b);
    }
    IntVec c(size_t(n), 0);
    c[size_t(i)] = 2;
    out.push_back(c);
  }
  return out;
}

int oracle_c_length(const SignedPerm& sp, int n) {
  auto pos = c_positive_roots_e(n);
  std::set<IntVec> posset(pos.begin(), pos.end());
  int count = 0;
  for (const auto& r : pos)
    if (!posset.count(act(sp, r))) ++count;
  return count;
}

WeylElement from_signed_perm(const RootSystemPtr& rs, const SignedPerm& sp) {
  std::vector<IntVec> images;
  for (int j = 0; j < rs->rank(); ++j) images.push_back(rs->from_ambient(act(sp, rs->to_ambient(rs->simple_root(j)))));
  return WeylElement::from_images(rs, images);
}

} // namespace

TEST_CASE("positive root counts match closed formulas") {
  struct T {
    Series s;
    int n;
    int count;
  };
  for (T t : {T{Series::A, 1, 1}, T{Series::A, 5, 15}, T{Series::B, 3, 9}, T{Series::C, 4, 16}, T{Series::D, 4, 12},
              T{Series::D, 6, 30}, T{Series::G, 2, 6}, T{Series::F, 4, 24}, T{Series::E, 6, 36}, T{Series::E, 7, 63},
              T{Series::E, 8, 120}}) {
    auto rs = RootSystem::build(t.s, t.n);
    CHECK(rs->num_positive_roots() == t.count);
  }
}

TEST_CASE("invalid types are rejected") {
  CHECK_THROWS_AS(RootSystem::build(Series::D, 3), Error);
  CHECK_THROWS_AS(RootSystem::build(Series::C, 1), Error);
  CHECK_THROWS_AS(RootSystem::build(Series::E, 5), Error);
  CHECK_THROWS_AS(RootSystem::build(Series::G, 3), Error);
  CHECK_THROWS_AS(parse_series("H"), Error);
}

TEST_CASE("Cartan matrices") {
  auto g2 = RootSystem::build(Series::G, 2);
  // (alpha_i, alpha_j) = d_i a_ij, alpha1 short.
  CHECK(g2->cartan_matrix()(0, 1) == -3);
  CHECK(g2->cartan_matrix()(1, 0) == -1);
  CHECK(g2->symmetrizer() == std::vector<int>{1, 3});
  auto c3 = RootSystem::build(Series::C, 3);
  CHECK(c3->cartan_matrix()(1, 2) == -2);
  CHECK(c3->cartan_matrix()(2, 1) == -1);
  auto f4 = RootSystem::build(Series::F, 4);
  CHECK(f4->cartan_matrix()(1, 2) == -1);
  CHECK(f4->cartan_matrix()(2, 1) == -2);
  auto e6 = RootSystem::build(Series::E, 6);
  // alpha2 hangs off alpha4 in Bourbaki numbering.
  CHECK(e6->cartan_matrix()(1, 3) == -1);
  CHECK(e6->cartan_matrix()(1, 2) == 0);
  CHECK(e6->cartan_matrix()(0, 2) == -1);
}

TEST_CASE("named roots") {
  auto a1 = RootSystem::build(Series::A, 1);
  CHECK(a1->positive_roots() == std::vector<IntVec>{{1}});
  auto g2 = RootSystem::build(Series::G, 2);
  CHECK(g2->highest_short_root() == IntVec{2, 1});
  CHECK(g2->highest_root() == IntVec{3, 2});
  auto f4 = RootSystem::build(Series::F, 4);
  CHECK(f4->is_root(IntVec{2, 3, 4, 2}));
  CHECK(f4->highest_root() == IntVec{2, 3, 4, 2});
  CHECK(f4->highest_short_root() == IntVec{1, 2, 3, 2});
  CHECK(RootSystem::build(Series::E, 6)->highest_root() == IntVec{1, 2, 2, 3, 2, 1});
  CHECK(RootSystem::build(Series::E, 7)->highest_root() == IntVec{2, 2, 3, 4, 3, 2, 1});
  CHECK(RootSystem::build(Series::E, 8)->highest_root() == IntVec{2, 3, 4, 6, 5, 4, 3, 2});
}

TEST_CASE("root closure under reflections") {
  for (auto [s, n] : std::vector<std::pair<Series, int>>{{Series::B, 3}, {Series::G, 2}, {Series::F, 4}, {Series::E, 6}}) {
    auto rs = RootSystem::build(s, n);
    for (const auto& b : rs->positive_roots())
      for (const auto& g : rs->positive_roots()) CHECK(rs->is_root(rs->reflect(b, g)));
  }
}

TEST_CASE("root notation round trips") {
  auto c3 = RootSystem::build(Series::C, 3);
  CHECK(c3->parse_root("2e1") == IntVec{2, 2, 1});
  CHECK(c3->format_root(IntVec{2, 2, 1}) == "2e1");
  CHECK(c3->format_root(IntVec{0, 1, 1}) == "e2+e3");
  CHECK(c3->parse_root("-e1+e2") == IntVec{-1, 0, 0});
  CHECK(c3->parse_root("a2") == IntVec{0, 1, 0});
  auto e6 = RootSystem::build(Series::E, 6);
  CHECK(e6->parse_root("(1,2,2,3,2,1)") == IntVec{1, 2, 2, 3, 2, 1});
  CHECK(e6->format_root(IntVec{0, 0, 0, 1, 0, 0}) == "(0,0,0,1,0,0)");
  CHECK_THROWS_AS(e6->parse_root("(1,0,0,0,0,1)"), Error);
  CHECK_THROWS_AS(c3->parse_root("e1+e2+e3"), Error);
  for (const auto& r : c3->positive_roots()) CHECK(c3->parse_root(c3->format_root(r)) == r);
}

TEST_CASE("reflections") {
  auto a1 = RootSystem::build(Series::A, 1);
  auto s = WeylElement::simple_reflection(a1, 0);
  CHECK(s.apply(IntVec{1}) == IntVec{-1});
  auto c2 = RootSystem::build(Series::C, 2);
  CHECK(WeylElement::reflection(c2, c2->parse_root("2e1")).length() == 3);
  auto e6 = RootSystem::build(Series::E, 6);
  IntVec b1{1, 2, 2, 3, 2, 1};
  auto sb = WeylElement::reflection(e6, b1);
  CHECK(sb.length() == 2 * e6->height(b1) - 1);
  CHECK(sb.length() == 21);
  CHECK(sb.is_involution());
  CHECK(std::abs(sb.matrix().determinant()) == 1);
  CHECK_THROWS_AS(WeylElement::reflection(e6, IntVec{1, 0, 0, 0, 0, 1}), Error);
}

TEST_CASE("longest elements") {
  auto c2 = RootSystem::build(Series::C, 2);
  auto w0 = WeylElement::longest(c2);
  CHECK(w0.length() == 4);
  CHECK(w0.matrix() == IntMatrix::identity(2) - IntMatrix::identity(2) - IntMatrix::identity(2));
  CHECK(WeylElement::longest(c2, {}).is_identity());
  CHECK((w0 * w0).is_identity());
  for (auto [s, n] : std::vector<std::pair<Series, int>>{{Series::E, 6}, {Series::E, 7}, {Series::E, 8}, {Series::F, 4}}) {
    auto rs = RootSystem::build(s, n);
    CHECK(WeylElement::longest(rs).length() == rs->num_positive_roots());
  }
  auto f4 = RootSystem::build(Series::F, 4);
  auto wj = WeylElement::longest(f4, {1, 2, 3});
  CHECK(wj.length() == 9); // longest element of C3
}

TEST_CASE("ranks of 1 - w") {
  auto e6 = RootSystem::build(Series::E, 6);
  CHECK(rank_one_minus(WeylElement::identity(e6)) == 0);
  for (int n = 2; n <= 6; ++n) {
    auto cn = RootSystem::build(Series::C, n);
    CHECK(rank_one_minus(WeylElement::longest(cn)) == n);
  }
  TwistedElement tw(DiagramAutomorphism::standard(e6), 1, WeylElement::longest(e6));
  CHECK(rank_one_minus(tw) == 6);
  CHECK(criterion_value(tw) == 42);
  auto e8 = RootSystem::build(Series::E, 8);
  CHECK(criterion_value(WeylElement::longest(e8)) == 128);
}

TEST_CASE("twisted criterion in A_{2m}") {
  for (int m = 1; m <= 4; ++m) {
    auto rs = RootSystem::build(Series::A, 2 * m);
    TwistedElement t(DiagramAutomorphism::standard(rs), 1, WeylElement::longest(rs));
    CHECK(criterion_value(t) == 2 * m * m + 3 * m);
  }
}

TEST_CASE("triality") {
  auto d4 = RootSystem::build(Series::D, 4);
  auto phi = DiagramAutomorphism::triality(d4);
  CHECK(phi.order() == 3);
  CHECK(phi.power(3) == IntMatrix::identity(4));
  CHECK(phi.apply(IntVec{1, 0, 0, 0}) == IntVec{0, 0, 1, 0});
  auto w = WeylElement::longest(d4) * WeylElement::simple_reflection(d4, 1);
  CHECK(criterion_value(TwistedElement(phi, 1, w)) == 14);
  auto tau = DiagramAutomorphism::standard(d4);
  CHECK(tau.order() == 2);
  CHECK_THROWS_AS(DiagramAutomorphism::standard(RootSystem::build(Series::E, 7)), Error);
}

TEST_CASE("diagram automorphisms permute positive roots") {
  for (auto [s, n] : std::vector<std::pair<Series, int>>{{Series::A, 5}, {Series::D, 5}, {Series::E, 6}}) {
    auto rs = RootSystem::build(s, n);
    auto tau = DiagramAutomorphism::standard(rs);
    CHECK(tau.power(2) == IntMatrix::identity(n));
    CHECK(tau.matrix().transposed() * rs->gram() * tau.matrix() == rs->gram());
    std::set<IntVec> imgs;
    for (const auto& r : rs->positive_roots()) imgs.insert(tau.apply(r));
    CHECK(std::set<IntVec>(rs->positive_roots().begin(), rs->positive_roots().end()) == imgs);
  }
}

TEST_CASE("lengths agree with the signed permutation model of W(C3)") {
  auto c3 = RootSystem::build(Series::C, 3);
  int elements = 0;
  for (const auto& sp : all_signed_perms(3)) {
    auto w = from_signed_perm(c3, sp);
    CHECK(w.length() == oracle_c_length(sp, 3));
    CHECK(w.inverse().length() == w.length());
    CHECK(int(w.reduced_word().size()) == w.length());
    CHECK(WeylElement::from_word(c3, w.reduced_word()) == w);
    for (int i = 0; i < 3; ++i) {
      auto ws = w * WeylElement::simple_reflection(c3, i);
      CHECK(std::abs(ws.length() - w.length()) == 1);
      CHECK((ws.length() < w.length()) == w.has_right_descent(i));
      auto sw = WeylElement::simple_reflection(c3, i) * w;
      CHECK((sw.length() < w.length()) == w.has_left_descent(i));
    }
    ++elements;
  }
  CHECK(elements == 48);
}

TEST_CASE("from_images rejects non-Weyl maps") {
  auto d4 = RootSystem::build(Series::D, 4);
  auto phi = DiagramAutomorphism::triality(d4);
  std::vector<IntVec> imgs;
  for (int j = 0; j < 4; ++j) imgs.push_back(phi.matrix().column(j));
  CHECK_THROWS_AS(WeylElement::from_images(d4, imgs), Error);
}

namespace {

// Subword characterisation: w <= z iff some subword of a reduced word of z
// multiplies to w. Exponential; fine at rank 3.
bool bruhat_by_subwords(const WeylElement& w, const WeylElement& z) {
  auto word = z.reduced_word();
  const auto& rs = z.root_system();
  for (unsigned mask = 0; mask < (1u << word.size()); ++mask) {
    std::vector<int> sub;
    for (size_t k = 0; k < word.size(); ++k)
      if (mask >> k & 1) sub.push_back(word[k]);
    if (WeylElement::from_word(rs, sub) == w) return true;
  }
  return false;
}

} // namespace

TEST_CASE("Bruhat order agrees with subword criterion on W(C3)") {
  auto c3 = RootSystem::build(Series::C, 3);
  std::vector<WeylElement> all;
  for (const auto& sp : all_signed_perms(3)) all.push_back(from_signed_perm(c3, sp));
  auto w0 = WeylElement::longest(c3);
  for (size_t a = 0; a < all.size(); a += 3)
    for (size_t b = 0; b < all.size(); ++b) {
      const bool leq = bruhat_leq(all[a], all[b]);
      CHECK(leq == bruhat_by_subwords(all[a], all[b]));
      if (leq) CHECK(all[a].length() <= all[b].length());
    }
  for (const auto& w : all) {
    CHECK(bruhat_leq(WeylElement::identity(c3), w));
    CHECK(bruhat_leq(w, w0));
    if (bruhat_leq(w0, w)) CHECK(w == w0);
  }
}

TEST_CASE("Bruhat relation in G2") {
  auto g2 = RootSystem::build(Series::G, 2);
  auto sb = WeylElement::reflection(g2, IntVec{3, 2});
  CHECK(bruhat_leq(sb, WeylElement::longest(g2)));
  CHECK(!bruhat_leq(WeylElement::longest(g2), sb));
}

TEST_CASE("involution decompositions") {
  auto c2 = RootSystem::build(Series::C, 2);
  CHECK(involution_orthogonal_decomposition(WeylElement::identity(c2)).empty());
  auto dec = involution_orthogonal_decomposition(WeylElement::longest(c2));
  std::set<IntVec> got(dec.begin(), dec.end());
  CHECK(got == std::set<IntVec>{c2->parse_root("2e1"), c2->parse_root("2e2")});
  CHECK_THROWS_AS(involution_orthogonal_decomposition(WeylElement::from_word(c2, {0, 1})), Error);

  auto e7 = RootSystem::build(Series::E, 7);
  std::vector<IntVec> beta{{2, 2, 3, 4, 3, 2, 1}, {0, 1, 1, 2, 2, 2, 1}, {0, 1, 1, 2, 1, 0, 0}};
  auto w = WeylElement::product_of_reflections(e7, {beta[0], beta[1]});
  auto d = involution_orthogonal_decomposition(w);
  CHECK(std::set<IntVec>(d.begin(), d.end()) == std::set<IntVec>{beta[0], beta[1]});

  // Every involution of W(C3) decomposes; the count equals rk(1-w).
  auto c3 = RootSystem::build(Series::C, 3);
  for (const auto& sp : all_signed_perms(3)) {
    auto x = from_signed_perm(c3, sp);
    if (!x.is_involution()) continue;
    auto parts = involution_orthogonal_decomposition(x);
    CHECK(int(parts.size()) == rank_one_minus(x));
    CHECK(WeylElement::product_of_reflections(c3, parts) == x);
    for (size_t i = 0; i < parts.size(); ++i)
      for (size_t j = i + 1; j < parts.size(); ++j) CHECK(c3->inner(parts[i], parts[j]) == 0);
    bool seen_short = false;
    for (const auto& p : parts) {
      if (!c3->is_long(p)) seen_short = true;
      else CHECK(!seen_short);
    }
  }
}

TEST_CASE("Weyl elements of different systems do not compose") {
  auto a = RootSystem::build(Series::A, 3);
  auto b = RootSystem::build(Series::C, 3);
  CHECK_THROWS_AS(WeylElement::identity(a) * WeylElement::identity(b), Error);
}
