#include "polproj/polar.hpp"

#include <algorithm>
#include <functional>

namespace polproj::polar {

int Residue::find_elem(const Subspace& S) const {
  auto it = elem_index.find(S.key());
  return it == elem_index.end() ? -1 : it->second;
}

std::string Residue::chamber_key(const std::vector<int32_t>& ids) {
  std::string s;
  s.reserve(ids.size() * 4);
  for (int32_t v : ids) {
    s.push_back(static_cast<char>(v & 0xff));
    s.push_back(static_cast<char>((v >> 8) & 0xff));
    s.push_back(static_cast<char>((v >> 16) & 0xff));
    s.push_back(static_cast<char>((v >> 24) & 0xff));
  }
  return s;
}

int Residue::find_chamber(const std::vector<int32_t>& ids) const {
  auto it = chamber_index.find(chamber_key(ids));
  return it == chamber_index.end() ? -1 : it->second;
}

std::shared_ptr<PolarSpace> PolarSpace::build(const FormSpec& S, size_t point_cap) {
  auto P = std::shared_ptr<PolarSpace>(new PolarSpace(S));
  P->enumerate_points(point_cap);
  P->fill_collinearity();
  P->validate();
  return P;
}

void PolarSpace::enumerate_points(size_t cap) {
  const gf::Field& F = field();
  const int n = dim();
  const unsigned q = F.q();
  size_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= q;
    if (total > (size_t(1) << 40))
      raise(Errc::TooLarge, "ambient vector space too big to scan");
  }
  // Scan vectors in encoding order; keep projective representatives
  // (first nonzero coordinate equal to 1) that lie on the polar space.
  for (size_t code = 1; code < total; ++code) {
    Vec v(n);
    size_t c = code;
    for (int i = 0; i < n; ++i) { v[i] = static_cast<Fe>(c % q); c /= q; }
    int lead = -1;
    for (int i = 0; i < n; ++i)
      if (v[i]) { lead = i; break; }
    if (v[lead] != 1) continue;
    if (!S_.is_point_vector(v)) continue;
    Subspace p;
    p.F = S_.field();
    p.n = n;
    p.k = 1;
    p.rows = v;
    point_idx_[p.key()] = static_cast<int>(points_.size());
    points_.push_back(std::move(p));
    if (points_.size() > cap)
      raise(Errc::TooLarge, "point count exceeds cap " + std::to_string(cap));
  }
  if (points_.empty()) raise(Errc::Internal, "polar space has no points");
}

void PolarSpace::fill_collinearity() {
  const int np = point_count();
  const int n = dim();
  words_ = static_cast<size_t>((np + 63) / 64);
  collin_.assign(static_cast<size_t>(np) * words_, 0);
  // Precompute sigma(v)^T * fmat per point; collinearity is then a dot product.
  std::vector<Vec> frows(np);
  for (int i = 0; i < np; ++i) {
    Vec r(n, 0);
    Vec unit(n, 0);
    const Vec& pv = points_[i].rows;
    for (int j = 0; j < n; ++j) {
      unit[j] = 1;
      r[j] = S_.eval_bilinear(pv, unit);
      unit[j] = 0;
    }
    frows[i] = std::move(r);
  }
  const gf::Field& F = field();
  for (int i = 0; i < np; ++i) {
    for (int j = 0; j < np; ++j) {
      Fe acc = 0;
      const Vec& r = frows[i];
      const Fe* w = points_[j].rows.data();
      for (int a = 0; a < n; ++a)
        if (r[a] && w[a]) acc = F.add(acc, F.mul(r[a], w[a]));
      if (acc == 0)
        collin_[static_cast<size_t>(i) * words_ + (j >> 6)] |= uint64_t(1) << (j & 63);
    }
  }
}

void PolarSpace::validate() {
  // x^perp is a proper set for the first few points (thick polar space).
  const int np = point_count();
  for (int i = 0; i < std::min(np, 3); ++i) {
    bool proper = false;
    for (int j = 0; j < np; ++j)
      if (!collinear(i, j)) { proper = true; break; }
    if (!proper) raise(Errc::Internal, "point collinear with everything; space degenerate");
  }
  // Hermitian: the pseudo-quadratic and Hermitian-variety point conditions
  // must agree (checked exhaustively over the ambient space).
  if (S_.kind() == Kind::Hermitian) {
    const gf::Field& F = field();
    const unsigned q = F.q();
    const int n = dim();
    auto ls = F.trace_like_set(true);
    size_t total = 1;
    for (int i = 0; i < n; ++i) total *= q;
    for (size_t code = 1; code < total; ++code) {
      Vec v(n);
      size_t c = code;
      for (int i = 0; i < n; ++i) { v[i] = static_cast<Fe>(c % q); c /= q; }
      bool herm = S_.eval_bilinear(v, v) == 0;
      bool pseudo = ls.count(S_.eval_g(v, v)) > 0;
      if (herm != pseudo)
        raise(Errc::Internal, "pseudo-quadratic and Hermitian point sets differ");
    }
  }
}

int PolarSpace::point_index(const Subspace& p) const {
  auto it = point_idx_.find(p.key());
  return it == point_idx_.end() ? -1 : it->second;
}

int PolarSpace::point_index_vec(const Vec& v) const {
  Vec rep = linalg::projective_rep(field(), v);
  Subspace p;
  p.F = S_.field();
  p.n = dim();
  p.k = 1;
  p.rows = rep;
  return point_index(p);
}

const std::vector<Subspace>& PolarSpace::singular_subspaces(int d) {
  if (d < 0 || d > rank())
    raise(Errc::BadDimension, "singular subspaces of dimension " + std::to_string(d));
  auto it = sing_cache_.find(d);
  if (it != sing_cache_.end()) return it->second;

  std::vector<Subspace> out;
  if (d == rank()) {
    // nothing singular above the maximal dimension
  } else if (d == 0) {
    out = points_;
  } else {
    const std::vector<Subspace>& prev = singular_subspaces(d - 1);
    const gf::Field& F = field();
    const int n = dim();
    std::unordered_map<std::string, bool> seen;
    for (const Subspace& S : prev) {
      // coefficient rows of "x is collinear with S"
      std::vector<Vec> coeff;
      for (int i = 0; i < S.k; ++i) {
        Vec r(n, 0);
        Vec unit(n, 0);
        Vec srow(S.row(i), S.row(i) + n);
        for (int j = 0; j < n; ++j) {
          unit[j] = 1;
          r[j] = S_.eval_bilinear(srow, unit);
          unit[j] = 0;
        }
        coeff.push_back(std::move(r));
      }
      for (const Subspace& x : points_) {
        Fe acc;
        bool ok = true;
        for (const Vec& r : coeff) {
          acc = 0;
          for (int j = 0; j < n; ++j)
            if (r[j] && x.rows[j]) acc = F.add(acc, F.mul(r[j], x.rows[j]));
          if (acc != 0) { ok = false; break; }
        }
        if (!ok) continue;
        if (linalg::contains(S, x.rows)) continue;
        Subspace ext = linalg::join(S, x);
        if (ext.k != S.k + 1) continue;
        if (seen.try_emplace(ext.key(), true).second) out.push_back(std::move(ext));
      }
    }
    std::sort(out.begin(), out.end());
  }
  return sing_cache_.emplace(d, std::move(out)).first->second;
}

bool PolarSpace::is_opposite(const Subspace& U, const Subspace& V) const {
  if (U.k != V.k) raise(Errc::DimensionMismatch, "opposition needs equal dimensions");
  return is_opposite_with_perp(U, S_.perp(V));
}

bool PolarSpace::is_opposite_with_perp(const Subspace& U, const Subspace& perpV) const {
  return linalg::meet(U, perpV).k == 0;
}

Subspace PolarSpace::project_lower(const Subspace& U, const Subspace& V,
                                   const Subspace& S) const {
  if (!linalg::contains_subspace(U, S))
    raise(Errc::NotContained, "projected subspace not inside the origin");
  return linalg::meet(S_.perp(S), V);
}

Subspace PolarSpace::project_upper(const Subspace& U, const Subspace& V, const Subspace& S,
                                   const Subspace& perpV) const {
  if (!linalg::contains_subspace(S, U))
    raise(Errc::NotContained, "projected subspace does not contain the origin");
  Subspace inter = linalg::meet(S, perpV);
  Subspace img = linalg::join(V, inter);
  if (img.k != S.k)
    raise(Errc::BadDimension, "upper projection changed dimension; origin and target not opposite");
  return img;
}

Subspace PolarSpace::project_upper(const Subspace& U, const Subspace& V,
                                   const Subspace& S) const {
  return project_upper(U, V, S, S_.perp(V));
}

ResiduePtr PolarSpace::residue(const Subspace& U, Side side) {
  auto key = std::make_pair(U.key(), static_cast<int>(side));
  auto it = residue_cache_.find(key);
  if (it != residue_cache_.end()) return it->second;
  ResiduePtr R = build_residue(U, side);
  residue_cache_.emplace(std::move(key), R);
  return R;
}

ResiduePtr PolarSpace::build_residue(const Subspace& U, Side side) {
  auto R = std::make_shared<Residue>();
  R->space = this;
  R->U = U;
  R->side = side;

  if (side == Side::Lower) {
    const int D = U.k; // vector dimension of U
    if (D < 1) raise(Errc::BadDimension, "lower residue of the zero subspace");
    R->num_types = D - 1; // proper nonzero subspaces, vector dims 1..D-1
    for (int j = 1; j <= D - 1; ++j) {
      R->type_offset.push_back(static_cast<int>(R->elems.size()));
      std::vector<Subspace> mapped = linalg::enumerate_subspaces_of(U, j);
      for (auto& m : mapped) {
        R->type_of.push_back(j - 1);
        R->elem_index[m.key()] = static_cast<int>(R->elems.size());
        R->elems.push_back(std::move(m));
      }
    }
    R->type_offset.push_back(static_cast<int>(R->elems.size()));
  } else {
    const int d = U.k - 1; // projective dimension (-1 for the zero subspace)
    const int m = rank() - d - 1;
    if (m < 0) raise(Errc::BadDimension, "upper residue below a maximal subspace");
    R->num_types = m;
    for (int t = 0; t < m; ++t) {
      R->type_offset.push_back(static_cast<int>(R->elems.size()));
      const std::vector<Subspace>& all = singular_subspaces(d + 1 + t);
      for (const Subspace& S : all) {
        if (!linalg::contains_subspace(S, U)) continue;
        R->type_of.push_back(t);
        R->elem_index[S.key()] = static_cast<int>(R->elems.size());
        R->elems.push_back(S);
      }
    }
    R->type_offset.push_back(static_cast<int>(R->elems.size()));
  }

  // Chambers: maximal flags, enumerated in lexicographic element-id order.
  if (R->num_types > 0) {
    std::vector<int32_t> cur(R->num_types);
    std::vector<std::vector<int32_t>> stack;
    std::function<void(int)> rec = [&](int t) {
      if (t == R->num_types) {
        R->chamber_index[Residue::chamber_key(cur)] = static_cast<int>(R->chambers.size());
        R->chambers.push_back(cur);
        return;
      }
      for (int id = R->type_offset[t]; id < R->type_offset[t + 1]; ++id) {
        if (t > 0 && !linalg::contains_subspace(R->elems[id], R->elems[cur[t - 1]])) continue;
        cur[t] = id;
        rec(t + 1);
      }
    };
    rec(0);
  }

  // Line incidence for the hyperplane test.
  if (R->num_types >= 2) {
    for (int lid = R->type_offset[1]; lid < R->type_offset[2]; ++lid) {
      std::vector<int32_t> pts;
      for (int pid = R->type_offset[0]; pid < R->type_offset[1]; ++pid)
        if (linalg::contains_subspace(R->elems[lid], R->elems[pid])) pts.push_back(pid);
      R->line_points.push_back(std::move(pts));
    }
    // Thickness spot check: each residue line carries at least 3 points.
    for (const auto& lp : R->line_points)
      if (lp.size() < 3) raise(Errc::Internal, "thin residue line");
  }
  return R;
}

std::vector<int> PolarSpace::common_perp_points(const std::vector<Subspace>& subs) const {
  std::vector<int> out;
  const gf::Field& F = field();
  const int n = dim();
  std::vector<Vec> coeff;
  for (const Subspace& S : subs)
    for (int i = 0; i < S.k; ++i) {
      Vec r(n, 0);
      Vec unit(n, 0);
      Vec srow(S.row(i), S.row(i) + n);
      for (int j = 0; j < n; ++j) {
        unit[j] = 1;
        r[j] = S_.eval_bilinear(srow, unit);
        unit[j] = 0;
      }
      coeff.push_back(std::move(r));
    }
  for (int pi = 0; pi < point_count(); ++pi) {
    bool ok = true;
    for (const Vec& r : coeff) {
      Fe acc = 0;
      for (int j = 0; j < n; ++j)
        if (r[j] && points_[pi].rows[j]) acc = F.add(acc, F.mul(r[j], points_[pi].rows[j]));
      if (acc != 0) { ok = false; break; }
    }
    if (ok) out.push_back(pi);
  }
  return out;
}

std::vector<int> PolarSpace::perp_points(int pi) const {
  std::vector<int> out;
  for (int j = 0; j < point_count(); ++j)
    if (collinear(pi, j)) out.push_back(j);
  return out;
}

bool geometric_hyperplane_check(const Residue& R, const std::set<int>& S) {
  if (!R.rank_at_least_2()) return true;
  for (const auto& lp : R.line_points) {
    int cnt = 0;
    for (int32_t p : lp) cnt += S.count(p) ? 1 : 0;
    if (cnt == 0) return false;                                  // must meet every line
    if (cnt >= 2 && cnt != static_cast<int>(lp.size())) return false; // subspace property
  }
  return true;
}

std::vector<Subspace> points_of_line(const Subspace& L) {
  if (L.k != 2) raise(Errc::BadDimension, "points_of_line needs a 2-dimensional subspace");
  const gf::Field& F = *L.F;
  std::vector<Subspace> out;
  std::vector<Vec> reps;
  // <row0>, and <row0*a + row1> for all a
  reps.emplace_back(L.row(0), L.row(0) + L.n);
  for (unsigned a = 0; a < F.q(); ++a) {
    Vec v(L.n);
    for (int j = 0; j < L.n; ++j)
      v[j] = F.add(F.mul(static_cast<Fe>(a), L.row(0)[j]), L.row(1)[j]);
    reps.push_back(std::move(v));
  }
  for (auto& v : reps) {
    Subspace p;
    p.F = L.F;
    p.n = L.n;
    p.k = 1;
    p.rows = linalg::projective_rep(F, v);
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace polproj::polar
