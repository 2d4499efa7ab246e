#ifndef POLPROJ_CHAINS_HPP
#define POLPROJ_CHAINS_HPP

#include <array>

#include "polproj/polar.hpp"

namespace polproj::proj {

using gf::Fe;
using linalg::Subspace;
using linalg::Vec;
using polar::PolarSpace;
using polar::Residue;
using polar::ResiduePtr;
using polar::Side;

// A self-projectivity realized on a residue: the action on residue elements
// and on chambers, with the perspectivity-count parity. Lower residues with
// odd parity are correlations (type-reversing).
struct ChamberPerm {
  ResiduePtr R;
  std::vector<int32_t> elem;
  std::vector<int32_t> chamber;
  int parity = 0;
  bool type_reversing = false;
};

ChamberPerm identity_perm(const ResiduePtr& R);
ChamberPerm compose(const ChamberPerm& a, const ChamberPerm& b); // apply a, then b
ChamberPerm inverse(const ChamberPerm& a);
bool is_identity(const ChamberPerm& a);

std::vector<int32_t> chamber_action(const Residue& R, const std::vector<int32_t>& elem,
                                    bool reversing);

// Element map of the perspectivity Res(U) -> Res(V) between opposite
// subspaces (upper side: S -> join(V, S meet perp V); lower: S -> perp(S) meet V).
struct CrossMap {
  ResiduePtr from, to;
  std::vector<int32_t> elem;
};

CrossMap perspectivity(PolarSpace& P, const Subspace& U, const Subspace& V, Side side);

// A closed chain of consecutive-opposite subspaces, first == last.
struct Chain {
  Side side = Side::Upper;
  std::vector<Subspace> hops;
};

ChamberPerm evaluate_chain(PolarSpace& P, const Chain& c);

// Triangle of points whose loop fixes the residue lines into the hyperplane
// section H of the common perp of p1 and p2, and moves p1k to p1k'.
// H, k, kp are indices into P.points(); H must be cut out by a linear
// hyperplane and satisfy k^perp cap H = k'^perp cap H.
Chain reflection_triangle(PolarSpace& P, int p1, int p2, const std::vector<int>& H,
                          int k, int kp);

// The standard four-maximal-subspace loop with parameters (v0, w0, t, u);
// its evaluation is a homology of the first maximal subspace with factor
// FormSpec::homology_factor(v0, w0, t, u).
Chain homology_quadruple(PolarSpace& P, const Vec& v0, const Vec& w0, Fe t, Fe u);

// Factor of a homology of a lower residue: the scalar D with x -> Dx on any
// line through the centre, in coordinates with the axis point at 0 and the
// centre at infinity. Identity maps to 1.
Fe extract_homology_factor(const ChamberPerm& cp);

using Mat3 = std::array<std::array<Fe, 3>, 3>;

// The elation of PG(2,q), q even, preserving the conic Y^2 = XZ and
// pointwise fixing the line X = kZ through the nucleus. The matrix family is
// parameterized by (a, b) with k*a = 1; b = 0 degenerates to the identity.
Mat3 char2_conic_elation(const gf::Field& F, Fe k, Fe a, Fe b);

std::vector<Vec> conic_points(const gf::Field& F);
std::vector<Vec> line_xkz_points(const gf::Field& F, Fe k);
Vec apply_mat3(const gf::Field& F, const Mat3& M, const Vec& v);

} // namespace polproj::proj

#endif
