#include <set>

#include "doctest.h"
#include "polproj/chains.hpp"

using namespace polproj;
using namespace polproj::proj;
using gf::Fe;
using gf::Field;
using linalg::Subspace;
using linalg::Vec;
using polar::PolarSpace;
using polar::Side;
using polar::SpacePtr;

namespace {

SpacePtr make_space(forms::Kind kind, unsigned p, unsigned k, int r, int c) {
  auto F = Field::create(p, k);
  return PolarSpace::build(forms::FormSpec::make(kind, F, r, c), 5000);
}

int find_opposite(PolarSpace& P, const std::vector<Subspace>& list, const Subspace& U) {
  for (size_t i = 0; i < list.size(); ++i)
    if (P.is_opposite(U, list[i])) return static_cast<int>(i);
  return -1;
}

} // namespace

TEST_CASE("perspectivity inverse pairs and trivial chains") {
  SpacePtr P = make_space(forms::Kind::Symplectic, 2, 1, 3, 0);
  const Subspace& U = P->points()[0];
  int vi = find_opposite(*P, P->points(), U);
  REQUIRE(vi >= 0);
  const Subspace& V = P->points()[vi];

  Chain back_and_forth{Side::Upper, {U, V, U}};
  ChamberPerm cp = evaluate_chain(*P, back_and_forth);
  CHECK(is_identity(cp));
  CHECK(cp.parity == 0);

  Chain trivial{Side::Upper, {U}};
  CHECK(is_identity(evaluate_chain(*P, trivial)));

  CHECK_THROWS_AS(perspectivity(*P, U, U, Side::Upper), Error); // not opposite
}

TEST_CASE("reversed chain evaluates to the inverse; parity is additive") {
  SpacePtr P = make_space(forms::Kind::Symplectic, 3, 1, 2, 0); // W(3,3)
  const auto& pts = P->points();
  const Subspace& A = pts[0];
  int bi = find_opposite(*P, pts, A);
  REQUIRE(bi >= 0);
  int ci = -1;
  for (size_t i = 0; i < pts.size(); ++i)
    if (P->is_opposite(pts[i], A) && P->is_opposite(pts[i], pts[bi])) {
      ci = static_cast<int>(i);
      break;
    }
  REQUIRE(ci >= 0);
  Chain fwd{Side::Upper, {A, pts[bi], pts[ci], A}};
  Chain rev{Side::Upper, {A, pts[ci], pts[bi], A}};
  ChamberPerm f = evaluate_chain(*P, fwd);
  ChamberPerm r = evaluate_chain(*P, rev);
  CHECK(is_identity(compose(f, r)));
  CHECK(f.parity == 1);
  CHECK(compose(f, r).parity == 0);
  CHECK(compose(f, f).parity == 0);
}

TEST_CASE("lower perspectivities reverse types") {
  SpacePtr P = make_space(forms::Kind::Symplectic, 2, 1, 3, 0);
  const auto& maxes = P->singular_subspaces(2);
  const Subspace& M = maxes[0];
  int vi = find_opposite(*P, maxes, M);
  REQUIRE(vi >= 0);
  int wi = -1;
  for (size_t i = 0; i < maxes.size(); ++i)
    if (P->is_opposite(maxes[i], M) && P->is_opposite(maxes[i], maxes[vi])) {
      wi = static_cast<int>(i);
      break;
    }
  REQUIRE(wi >= 0);
  Chain c3{Side::Lower, {M, maxes[vi], maxes[wi], M}};
  ChamberPerm cp = evaluate_chain(*P, c3);
  CHECK(cp.parity == 1);
  CHECK(cp.type_reversing);
  // points (vdim 1) map to lines (vdim 2) of PG(2,2)
  const polar::Residue& R = *cp.R;
  for (int i = R.type_offset[0]; i < R.type_offset[1]; ++i)
    CHECK(R.type_of[cp.elem[i]] == 1);

  Chain c4{Side::Lower, {M, maxes[vi], M, maxes[wi], M}};
  CHECK_FALSE(evaluate_chain(*P, c4).type_reversing);
}

TEST_CASE("length-3 point loops fix the common-perp trace") {
  SpacePtr P = make_space(forms::Kind::Symplectic, 3, 1, 3, 0); // W(5,3)
  const auto& pts = P->points();
  const Subspace& p1 = pts[0];
  int i2 = find_opposite(*P, pts, p1);
  REQUIRE(i2 >= 0);
  int i3 = -1;
  for (size_t i = 0; i < pts.size(); ++i)
    if (P->is_opposite(pts[i], p1) && P->is_opposite(pts[i], pts[i2])) {
      i3 = static_cast<int>(i);
      break;
    }
  REQUIRE(i3 >= 0);
  Chain c{Side::Upper, {p1, pts[i2], pts[i3], p1}};
  ChamberPerm cp = evaluate_chain(*P, c);
  // every line p1. x with x collinear to all three points is fixed
  std::vector<int> common = P->common_perp_points({p1, pts[i2], pts[i3]});
  polar::ResiduePtr R = cp.R;
  int fixed_from_trace = 0;
  for (int x : common) {
    if (x == 0) continue;
    Subspace L = linalg::join(p1, pts[x]);
    int id = R->find_elem(L);
    REQUIRE(id >= 0);
    CHECK(cp.elem[id] == id);
    ++fixed_from_trace;
  }
  CHECK(fixed_from_trace > 0);
}

TEST_CASE("reflection triangle on W(5,3)") {
  SpacePtr P = make_space(forms::Kind::Symplectic, 3, 1, 3, 0);
  const int p1 = 0;
  int p2 = -1;
  for (int j = 1; j < P->point_count(); ++j)
    if (!P->collinear(p1, j)) { p2 = j; break; }
  REQUIRE(p2 >= 0);
  std::vector<int> gamma = P->common_perp_points({P->points()[p1], P->points()[p2]});
  // cut the common perp with the perp of one of its points
  int w = gamma[0];
  std::vector<int> H, off;
  for (int x : gamma)
    (P->collinear(w, x) ? H : off).push_back(x);
  REQUIRE(!H.empty());
  // find k, k' off H with the same trace
  int k = -1, kp = -1;
  for (size_t a = 0; a < off.size() && k < 0; ++a)
    for (size_t b = 0; b < off.size(); ++b) {
      if (a == b || P->collinear(off[a], off[b])) continue;
      bool same = true;
      for (int h : H)
        if (P->collinear(h, off[a]) != P->collinear(h, off[b])) { same = false; break; }
      if (same) {
        k = off[a];
        kp = off[b];
        break;
      }
    }
  REQUIRE(k >= 0);
  Chain c = reflection_triangle(*P, p1, p2, H, k, kp);
  ChamberPerm cp = evaluate_chain(*P, c);
  CHECK(!is_identity(cp));
  polar::ResiduePtr R = cp.R;
  for (int x : H) {
    int id = R->find_elem(linalg::join(P->points()[p1], P->points()[x]));
    REQUIRE(id >= 0);
    CHECK(cp.elem[id] == id);
  }
  int lk = R->find_elem(linalg::join(P->points()[p1], P->points()[k]));
  int lkp = R->find_elem(linalg::join(P->points()[p1], P->points()[kp]));
  CHECK(cp.elem[lk] == lkp);

  // stabilization case k = k'
  Chain cs = reflection_triangle(*P, p1, p2, H, k, k);
  ChamberPerm cps = evaluate_chain(*P, cs);
  CHECK(cps.elem[lk] == lk);
}

TEST_CASE("homology quadruple and factor extraction") {
  // identity instance
  SpacePtr P = make_space(forms::Kind::Quadratic, 3, 1, 2, 1); // Q(4,3)
  Chain c0 = homology_quadruple(*P, {0}, {0}, 0, 0);
  ChamberPerm cp0 = evaluate_chain(*P, c0);
  CHECK(is_identity(cp0));
  CHECK(extract_homology_factor(cp0) == 1);

  // exhaustive parabolic instances: geometric factor equals the formula
  const forms::FormSpec& S = P->form();
  for (unsigned v = 0; v < 3; ++v)
    for (unsigned w = 0; w < 3; ++w)
      for (unsigned t = 0; t < 3; ++t)
        for (unsigned u = 0; u < 3; ++u) {
          Fe D = S.homology_factor({static_cast<Fe>(v)}, {static_cast<Fe>(w)},
                                   static_cast<Fe>(t), static_cast<Fe>(u));
          if (D == 0) {
            CHECK_THROWS_AS(homology_quadruple(*P, {static_cast<Fe>(v)}, {static_cast<Fe>(w)},
                                               static_cast<Fe>(t), static_cast<Fe>(u)),
                            Error);
            continue;
          }
          Chain c = homology_quadruple(*P, {static_cast<Fe>(v)}, {static_cast<Fe>(w)},
                                       static_cast<Fe>(t), static_cast<Fe>(u));
          CHECK(extract_homology_factor(evaluate_chain(*P, c)) == D);
        }

  // symplectic spaces are rejected
  SpacePtr W = make_space(forms::Kind::Symplectic, 3, 1, 2, 0);
  CHECK_THROWS_AS(homology_quadruple(*W, {}, {}, 0, 0), Error);
}

TEST_CASE("quadruple factors, exhaustive for the remaining small forms") {
  // Hermitian over GF(4) and the elliptic quadric over GF(2)
  SpacePtr H34 = make_space(forms::Kind::Hermitian, 2, 2, 2, 0);
  const forms::FormSpec& SH = H34->form();
  for (unsigned t = 0; t < 4; ++t)
    for (unsigned u = 0; u < 4; ++u) {
      Fe D = SH.homology_factor({}, {}, static_cast<Fe>(t), static_cast<Fe>(u));
      if (D == 0) continue;
      Chain c = homology_quadruple(*H34, {}, {}, static_cast<Fe>(t), static_cast<Fe>(u));
      CHECK(extract_homology_factor(evaluate_chain(*H34, c)) == D);
      CHECK(D == 1); // norm set of the GF(4) corank-0 form
    }

  SpacePtr E = make_space(forms::Kind::Quadratic, 2, 1, 2, 2); // Q-(5,2)
  const forms::FormSpec& SE = E->form();
  for (unsigned vc = 0; vc < 4; ++vc)
    for (unsigned wc = 0; wc < 4; ++wc)
      for (unsigned t = 0; t < 2; ++t)
        for (unsigned u = 0; u < 2; ++u) {
          Vec v0 = {static_cast<Fe>(vc & 1), static_cast<Fe>(vc >> 1)};
          Vec w0 = {static_cast<Fe>(wc & 1), static_cast<Fe>(wc >> 1)};
          Fe D = SE.homology_factor(v0, w0, static_cast<Fe>(t), static_cast<Fe>(u));
          if (D == 0) continue;
          Chain c = homology_quadruple(*E, v0, w0, static_cast<Fe>(t), static_cast<Fe>(u));
          CHECK(extract_homology_factor(evaluate_chain(*E, c)) == D);
        }
}

TEST_CASE("Hermitian quadruples over GF(9)") {
  SpacePtr P = make_space(forms::Kind::Hermitian, 3, 2, 2, 0); // H(3,9)
  const forms::FormSpec& S = P->form();
  auto F = S.field();
  std::set<Fe> factors;
  for (unsigned t = 0; t < 9; ++t)
    for (unsigned u = 0; u < 9; ++u) {
      Fe D = S.homology_factor({}, {}, static_cast<Fe>(t), static_cast<Fe>(u));
      if (D == 0) continue;
      Chain c = homology_quadruple(*P, {}, {}, static_cast<Fe>(t), static_cast<Fe>(u));
      Fe got = extract_homology_factor(evaluate_chain(*P, c));
      CHECK(got == D);
      factors.insert(got);
    }
  CHECK(factors == std::set<Fe>{1, 2}); // GF(3)^x
  (void)F;
}

TEST_CASE("characteristic-2 conic elation") {
  auto F2 = Field::create(2, 1);
  auto F4 = Field::create(2, 2);

  // b = 0 degenerates to the identity
  Mat3 I = char2_conic_elation(*F2, 1, 1, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(I[i][j] == (i == j ? 1 : 0));

  // 1 + a b^2 = 0 over GF(2) with a = b = 1
  CHECK_THROWS_AS(char2_conic_elation(*F2, 1, 1, 1), Error);

  // GF(4), a = omega, b = 1: conic-preserving on all five conic points
  Fe a = 2;
  Mat3 M = char2_conic_elation(*F4, F4->inv(a), a, 1);
  auto conic = conic_points(*F4);
  CHECK(conic.size() == 5);
  std::set<Vec> conic_set;
  for (const auto& v : conic) conic_set.insert(linalg::projective_rep(*F4, v));
  for (const auto& v : conic)
    CHECK(conic_set.count(linalg::projective_rep(*F4, apply_mat3(*F4, M, v))));
  // pointwise-fixed axis X = kZ, k = a^{-1}
  for (const auto& v : line_xkz_points(*F4, F4->inv(a)))
    CHECK(linalg::projective_rep(*F4, apply_mat3(*F4, M, v)) ==
          linalg::projective_rep(*F4, v));

  // odd characteristic is rejected
  auto F3 = Field::create(3, 1);
  CHECK_THROWS_AS(char2_conic_elation(*F3, 1, 1, 1), Error);
}
