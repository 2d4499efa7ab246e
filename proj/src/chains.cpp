#include "polproj/chains.hpp"

#include <algorithm>
#include <set>

namespace polproj::proj {

ChamberPerm identity_perm(const ResiduePtr& R) {
  ChamberPerm p;
  p.R = R;
  p.elem.resize(R->elem_count());
  for (int i = 0; i < R->elem_count(); ++i) p.elem[i] = i;
  p.chamber.resize(R->chamber_count());
  for (int i = 0; i < R->chamber_count(); ++i) p.chamber[i] = i;
  return p;
}

ChamberPerm compose(const ChamberPerm& a, const ChamberPerm& b) {
  if (a.R.get() != b.R.get()) raise(Errc::DimensionMismatch, "composing perms of different residues");
  ChamberPerm r;
  r.R = a.R;
  r.elem.resize(a.elem.size());
  for (size_t i = 0; i < a.elem.size(); ++i) r.elem[i] = b.elem[a.elem[i]];
  r.chamber.resize(a.chamber.size());
  for (size_t i = 0; i < a.chamber.size(); ++i) r.chamber[i] = b.chamber[a.chamber[i]];
  r.parity = (a.parity + b.parity) % 2;
  r.type_reversing = a.type_reversing != b.type_reversing;
  return r;
}

ChamberPerm inverse(const ChamberPerm& a) {
  ChamberPerm r;
  r.R = a.R;
  r.elem.resize(a.elem.size());
  for (size_t i = 0; i < a.elem.size(); ++i) r.elem[a.elem[i]] = static_cast<int32_t>(i);
  r.chamber.resize(a.chamber.size());
  for (size_t i = 0; i < a.chamber.size(); ++i) r.chamber[a.chamber[i]] = static_cast<int32_t>(i);
  r.parity = a.parity;
  r.type_reversing = a.type_reversing;
  return r;
}

bool is_identity(const ChamberPerm& a) {
  for (size_t i = 0; i < a.elem.size(); ++i)
    if (a.elem[i] != static_cast<int32_t>(i)) return false;
  return true;
}

std::vector<int32_t> chamber_action(const Residue& R, const std::vector<int32_t>& elem,
                                    bool reversing) {
  std::vector<int32_t> out(R.chamber_count());
  std::vector<int32_t> img(R.num_types);
  for (int ci = 0; ci < R.chamber_count(); ++ci) {
    const auto& ch = R.chambers[ci];
    for (int t = 0; t < R.num_types; ++t) {
      int32_t e = elem[ch[t]];
      img[reversing ? R.num_types - 1 - t : t] = e;
    }
    int target = R.find_chamber(img);
    if (target < 0) raise(Errc::Internal, "element map does not permute chambers");
    out[ci] = target;
  }
  return out;
}

CrossMap perspectivity(PolarSpace& P, const Subspace& U, const Subspace& V, Side side) {
  if (!P.is_opposite(U, V)) raise(Errc::NotOpposite, "perspectivity needs opposite subspaces");
  CrossMap m;
  m.from = P.residue(U, side);
  m.to = P.residue(V, side);
  m.elem.resize(m.from->elem_count());
  if (side == Side::Lower) {
    for (int i = 0; i < m.from->elem_count(); ++i) {
      Subspace img = P.project_lower(U, V, m.from->elems[i]);
      int id = m.to->find_elem(img);
      if (id < 0) raise(Errc::Internal, "lower projection left the residue");
      m.elem[i] = id;
    }
  } else {
    Subspace perpV = P.perp(V);
    for (int i = 0; i < m.from->elem_count(); ++i) {
      Subspace img = P.project_upper(U, V, m.from->elems[i], perpV);
      int id = m.to->find_elem(img);
      if (id < 0) raise(Errc::Internal, "upper projection left the residue");
      m.elem[i] = id;
    }
  }
  return m;
}

ChamberPerm evaluate_chain(PolarSpace& P, const Chain& c) {
  if (c.hops.empty() || c.hops.front() != c.hops.back())
    raise(Errc::BadDimension, "chain must be closed (first hop == last hop)");
  ResiduePtr base = P.residue(c.hops.front(), c.side);
  std::vector<int32_t> acc(base->elem_count());
  for (int i = 0; i < base->elem_count(); ++i) acc[i] = i;
  for (size_t h = 0; h + 1 < c.hops.size(); ++h) {
    CrossMap step = perspectivity(P, c.hops[h], c.hops[h + 1], c.side);
    for (auto& v : acc) v = step.elem[v];
  }
  ChamberPerm out;
  out.R = base;
  out.elem = std::move(acc);
  out.parity = static_cast<int>((c.hops.size() - 1) % 2);
  out.type_reversing = c.side == Side::Lower && out.parity == 1 && base->num_types >= 1;
  out.chamber = chamber_action(*base, out.elem, out.type_reversing);
  return out;
}

Chain reflection_triangle(PolarSpace& P, int p1, int p2, const std::vector<int>& H,
                          int k, int kp) {
  if (P.collinear(p1, p2)) raise(Errc::NotOpposite, "p1 and p2 must be opposite points");
  std::vector<int> gamma = P.common_perp_points({P.points()[p1], P.points()[p2]});
  std::set<int> gamma_set(gamma.begin(), gamma.end());
  std::set<int> hset(H.begin(), H.end());
  for (int h : H)
    if (!gamma_set.count(h)) raise(Errc::NoSuchP3, "H is not inside the common perp");
  if (hset.count(k) || hset.count(kp) || !gamma_set.count(k) || !gamma_set.count(kp))
    raise(Errc::NoSuchP3, "k, k' must lie in the common perp but off H");
  if (k != kp && P.collinear(k, kp)) raise(Errc::NoSuchP3, "k and k' must be non-collinear");
  // matching perp traces on H
  for (int h : H)
    if (P.collinear(h, k) != P.collinear(h, kp))
      raise(Errc::NoSuchP3, "k and k' cut different traces on H");

  const auto& pts = P.points();

  if (k == kp) {
    // Stabilization case: the generic line construction collapses into p1 k.
    // Any third point collinear with all of H whose loop keeps the line p1 k
    // serves; the loop then fixes every line into H and stabilizes p1 k.
    std::vector<Subspace> hsubs;
    for (int h : H) hsubs.push_back(pts[h]);
    Subspace L1 = linalg::join(pts[p1], pts[k]);
    for (int cand : P.common_perp_points(hsubs)) {
      if (cand == p1 || cand == p2 || P.collinear(cand, p1) || P.collinear(cand, p2))
        continue;
      Subspace img = P.project_upper(pts[p1], pts[p2], L1);
      img = P.project_upper(pts[p2], pts[cand], img);
      img = P.project_upper(pts[cand], pts[p1], img);
      if (img != L1) continue;
      bool fixes_H = true;
      for (int h : H) {
        Subspace LH = linalg::join(pts[p1], pts[h]);
        Subspace im = P.project_upper(pts[p1], pts[p2], LH);
        im = P.project_upper(pts[p2], pts[cand], im);
        im = P.project_upper(pts[cand], pts[p1], im);
        if (im != LH) { fixes_H = false; break; }
      }
      if (!fixes_H) continue;
      Chain c;
      c.side = Side::Upper;
      c.hops = {pts[p1], pts[p2], pts[cand], pts[p1]};
      return c;
    }
    raise(Errc::NoSuchP3, "no third point stabilizing the given line");
  }

  // Any point k'' on p1 k' and any point h of H off the trace can serve in
  // principle; not every pair yields a valid p3, so scan the finite
  // choices in canonical order and keep the first that does.
  Subspace line1 = linalg::join(pts[p1], pts[kp]);
  Subspace line2 = linalg::join(pts[p2], pts[k]);
  for (const Subspace& ys : polar::points_of_line(line1)) {
    int kpp = P.point_index(ys);
    if (kpp == p1 || kpp == kp) continue;

    // the point of p2 k collinear with k''; a whole collinear line is degenerate
    std::vector<int> xs;
    for (const Subspace& y : polar::points_of_line(line2)) {
      int yi = P.point_index(y);
      if (P.collinear(yi, kpp)) xs.push_back(yi);
    }
    if (xs.size() != 1 || xs[0] == kpp) continue;
    int x = xs[0];
    Subspace L = linalg::join(pts[kpp], pts[x]);

    for (int h : H) {
      if (P.collinear(h, k)) continue; // h must lie off the trace K
      std::vector<int> cands;
      for (const Subspace& y : polar::points_of_line(L)) {
        int yi = P.point_index(y);
        if (P.collinear(yi, h)) cands.push_back(yi);
      }
      if (cands.size() != 1) continue;
      int p3 = cands[0];
      if (p3 == p1 || p3 == p2 || P.collinear(p3, p1) || P.collinear(p3, p2)) continue;
      // p3 must cut out exactly H from the common perp
      bool exact = true;
      for (int g : gamma) {
        bool inH = hset.count(g) > 0;
        if (P.collinear(g, p3) != inH) { exact = false; break; }
      }
      if (!exact) continue;
      Chain c;
      c.side = Side::Upper;
      c.hops = {pts[p1], pts[p2], pts[p3], pts[p1]};
      return c;
    }
  }
  raise(Errc::NoSuchP3, "no admissible third point for this hyperplane data");
}

Chain homology_quadruple(PolarSpace& P, const Vec& v0, const Vec& w0, Fe t, Fe u) {
  const forms::FormSpec& S = P.form();
  if (S.kind() == forms::Kind::Symplectic)
    raise(Errc::WrongKind, "the four-subspace loop needs a quadratic or Hermitian form");
  if (S.rank() < 2) raise(Errc::BadDimension, "the four-subspace loop needs rank >= 2");
  if (static_cast<int>(v0.size()) != S.corank() || static_cast<int>(w0.size()) != S.corank())
    raise(Errc::DimensionMismatch, "anisotropic parameter length != corank");
  Fe D = S.homology_factor(v0, w0, t, u);
  if (D == 0) raise(Errc::DegenerateD, "degenerate parameters (factor zero)");

  const int n = S.dim();
  const int r = S.rank();
  auto unit = [&](int idx) {
    Vec v(n, 0);
    v[idx] = 1;
    return v;
  };
  std::vector<Vec> m1, m2, m3, m4;
  for (int i = 1; i <= r; ++i) m1.push_back(unit(S.idx_neg(i)));
  for (int i = 1; i <= r; ++i) m2.push_back(unit(S.idx_pos(i)));
  Vec gen3(n, 0), gen4(n, 0);
  gen3[S.idx_pos(1)] = S.loop_g1(v0, t);
  gen3[S.idx_neg(1)] = 1;
  for (int j = 0; j < S.corank(); ++j) gen3[S.idx_aniso(j)] = v0[j];
  gen4[S.idx_neg(1)] = S.sigma(S.loop_g2(w0, u));
  gen4[S.idx_pos(1)] = 1;
  for (int j = 0; j < S.corank(); ++j) gen4[S.idx_aniso(j)] = w0[j];
  m3.push_back(gen3);
  for (int i = 2; i <= r; ++i) m3.push_back(unit(S.idx_neg(i)));
  m4.push_back(gen4);
  for (int i = 2; i <= r; ++i) m4.push_back(unit(S.idx_pos(i)));

  auto FP = S.field();
  Subspace M1 = linalg::span_of(FP, n, m1);
  Subspace M2 = linalg::span_of(FP, n, m2);
  Subspace M3 = linalg::span_of(FP, n, m3);
  Subspace M4 = linalg::span_of(FP, n, m4);
  for (const Subspace* M : {&M1, &M2, &M3, &M4}) {
    if (M->k != r || !S.is_singular(*M))
      raise(Errc::Internal, "loop subspace is not maximal singular");
  }
  const Subspace* loop[5] = {&M1, &M2, &M3, &M4, &M1};
  for (int i = 0; i < 4; ++i)
    if (!P.is_opposite(*loop[i], *loop[i + 1]))
      raise(Errc::DegenerateD, "consecutive loop subspaces not opposite");
  Chain c;
  c.side = Side::Lower;
  c.hops = {M1, M2, M3, M4, M1};
  return c;
}

namespace {

// Coordinates of point x in the plane basis (h, c): x = alpha h + beta c.
std::pair<Fe, Fe> plane_coords(const gf::Field& F, const Subspace& h, const Subspace& c,
                               const Subspace& x) {
  const int n = h.n;
  for (int j1 = 0; j1 < n; ++j1)
    for (int j2 = j1 + 1; j2 < n; ++j2) {
      Fe a = h.rows[j1], b = c.rows[j1];
      Fe cc = h.rows[j2], d = c.rows[j2];
      Fe det = F.sub(F.mul(a, d), F.mul(b, cc));
      if (det == 0) continue;
      Fe idet = F.inv(det);
      Fe alpha = F.mul(idet, F.sub(F.mul(d, x.rows[j1]), F.mul(b, x.rows[j2])));
      Fe beta = F.mul(idet, F.sub(F.mul(a, x.rows[j2]), F.mul(cc, x.rows[j1])));
      // verify (guards against x outside the plane)
      for (int j = 0; j < n; ++j) {
        Fe lhs = F.add(F.mul(alpha, h.rows[j]), F.mul(beta, c.rows[j]));
        if (lhs != x.rows[j]) return {0, 0};
      }
      return {alpha, beta};
    }
  return {0, 0};
}

} // namespace

Fe extract_homology_factor(const ChamberPerm& cp) {
  const Residue& R = *cp.R;
  if (R.side != Side::Lower || R.num_types < 1)
    raise(Errc::NotAHomology, "factor extraction needs a lower residue");
  if (cp.parity % 2 != 0) raise(Errc::NotAHomology, "odd projectivity is not a homology");
  const gf::Field& F = R.space->field();
  const int np = R.type_size(0);

  std::vector<int> fixed, moved;
  for (int i = 0; i < np; ++i)
    (cp.elem[i] == i ? fixed : moved).push_back(i);
  if (moved.empty()) return 1;

  // A homology fixes H union {centre}: find the centre among the fixed
  // points, the rest spanning the axis hyperplane.
  const Subspace& U = R.U;
  for (int centre : fixed) {
    std::vector<linalg::Vec> rows;
    for (int pfix : fixed) {
      if (pfix == centre) continue;
      rows.emplace_back(R.elems[pfix].rows.begin(), R.elems[pfix].rows.end());
    }
    Subspace axis = linalg::rref(U.F, U.n, rows);
    if (axis.k != U.k - 1) continue;
    if (linalg::contains(axis, R.elems[centre].rows)) continue;
    // All points inside the axis must be fixed.
    bool ok = true;
    for (int i = 0; i < np && ok; ++i)
      if (linalg::contains(axis, R.elems[i].rows) && cp.elem[i] != i) ok = false;
    if (!ok) continue;

    // Read the factor off every moved point and check consistency.
    Fe D = 0;
    bool have = false;
    for (int x : moved) {
      // the line through centre and x meets the axis in a unique point h
      Subspace L = linalg::join(R.elems[centre], R.elems[x]);
      Subspace h = linalg::meet(L, axis);
      if (h.k != 1) { ok = false; break; }
      auto [a1, b1] = plane_coords(F, h, R.elems[centre], R.elems[x]);
      auto [a2, b2] = plane_coords(F, h, R.elems[centre], R.elems[cp.elem[x]]);
      if (a1 == 0 || a2 == 0 || b1 == 0 || b2 == 0) { ok = false; break; }
      Fe t1 = F.div(b1, a1);
      Fe t2 = F.div(b2, a2);
      Fe d = F.div(t2, t1);
      if (!have) { D = d; have = true; }
      else if (D != d) { ok = false; break; }
    }
    if (ok && have) return D;
  }
  raise(Errc::NotAHomology, "no centre/axis decomposition found");
}

Mat3 char2_conic_elation(const gf::Field& F, Fe k, Fe a, Fe b) {
  if (F.p() != 2) raise(Errc::WrongKind, "conic elation family needs characteristic 2");
  Mat3 M{};
  if (b == 0) {
    for (int i = 0; i < 3; ++i) M[i][i] = 1;
    return M;
  }
  Fe ab2 = F.mul(a, F.mul(b, b));
  Fe den = F.add(1, ab2);
  if (den == 0) raise(Errc::Singular, "1 + a b^2 = 0");
  if (a == 0 || F.mul(a, k) != 1)
    raise(Errc::BadDimension, "the family fixes X = kZ only for k = a^{-1}");
  Fe s = F.inv(den);
  M[0][0] = s;
  M[0][1] = 0;
  M[0][2] = F.mul(F.mul(b, b), s);
  M[1][0] = F.mul(F.mul(a, b), s);
  M[1][1] = 1;
  M[1][2] = F.mul(b, s);
  M[2][0] = F.mul(F.mul(a, a), F.mul(F.mul(b, b), s));
  M[2][1] = 0;
  M[2][2] = s;
  return M;
}

std::vector<Vec> conic_points(const gf::Field& F) {
  std::vector<Vec> out;
  for (unsigned y = 0; y < F.q(); ++y) {
    Fe yy = static_cast<Fe>(y);
    out.push_back({1, yy, F.mul(yy, yy)});
  }
  out.push_back({0, 0, 1});
  return out;
}

std::vector<Vec> line_xkz_points(const gf::Field& F, Fe k) {
  std::vector<Vec> out;
  for (unsigned y = 0; y < F.q(); ++y) out.push_back({k, static_cast<Fe>(y), 1});
  out.push_back({0, 1, 0});
  return out;
}

Vec apply_mat3(const gf::Field& F, const Mat3& M, const Vec& v) {
  Vec r(3, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i] = F.add(r[i], F.mul(M[i][j], v[j]));
  return r;
}

} // namespace polproj::proj
