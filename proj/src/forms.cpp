#include "polproj/forms.hpp"

namespace polproj::forms {

namespace {

// Canonical irreducible monic quadratic x^2 + c1 x + c0 over GF(q): smallest
// (c1, c0) in encoding order with no root. Its norm form is the unique
// anisotropic binary quadratic form up to equivalence.
std::pair<Fe, Fe> irreducible_quadratic(const gf::Field& F) {
  for (unsigned c1 = 0; c1 < F.q(); ++c1)
    for (unsigned c0 = 0; c0 < F.q(); ++c0) {
      bool has_root = false;
      for (unsigned x = 0; x < F.q(); ++x) {
        Fe xx = static_cast<Fe>(x);
        Fe val = F.add(F.add(F.mul(xx, xx), F.mul(static_cast<Fe>(c1), xx)),
                       static_cast<Fe>(c0));
        if (val == 0) { has_root = true; break; }
      }
      if (!has_root) return {static_cast<Fe>(c1), static_cast<Fe>(c0)};
    }
  raise(Errc::Internal, "no irreducible quadratic over " + F.describe());
}

} // namespace

FormSpec FormSpec::make(Kind kind, const FieldPtr& F, int witt_rank, int corank) {
  if (witt_rank < 1) raise(Errc::BadDimension, "Witt rank must be >= 1");
  switch (kind) {
    case Kind::Symplectic:
      if (corank != 0) raise(Errc::SemanticError, "symplectic forms have no anisotropic part");
      break;
    case Kind::Quadratic:
      if (corank == 0)
        raise(Errc::SemanticError, "corank 0 quadric is top-thin (type D), out of scope");
      if (corank != 1 && corank != 2)
        raise(Errc::SemanticError, "quadratic corank must be 1 or 2");
      break;
    case Kind::Hermitian:
      if (!F->has_involution())
        raise(Errc::NoInvolution, "Hermitian form needs a field with involution");
      if (corank != 0 && corank != 1)
        raise(Errc::SemanticError, "Hermitian corank must be 0 or 1");
      break;
  }
  FormSpec S;
  S.kind_ = kind;
  S.F_ = F;
  S.rank_ = witt_rank;
  S.corank_ = corank;
  S.build_matrices();
  if (corank > 0) S.check_anisotropic();
  return S;
}

void FormSpec::build_matrices() {
  const int n = dim();
  const gf::Field& F = *F_;
  gmat_.assign(static_cast<size_t>(n) * n, 0);
  fmat_.assign(static_cast<size_t>(n) * n, 0);
  g0_.assign(static_cast<size_t>(corank_) * corank_, 0);

  if (kind_ == Kind::Symplectic) {
    for (int i = 1; i <= rank_; ++i) {
      fmat_[static_cast<size_t>(idx_neg(i)) * n + idx_pos(i)] = 1;
      fmat_[static_cast<size_t>(idx_pos(i)) * n + idx_neg(i)] = F.neg(1);
    }
    return;
  }

  // anisotropic block of g0
  if (kind_ == Kind::Quadratic) {
    if (corank_ == 1) {
      g0_[0] = 1; // q0(x) = x^2
    } else {
      auto [c1, c0] = irreducible_quadratic(F);
      // q0(x,y) = x^2 - c1*xy + c0*y^2, the norm form of GF(q^2)/GF(q)
      g0_[0] = 1;
      g0_[1] = F.neg(c1);
      g0_[2] = 0;
      g0_[3] = c0;
    }
  } else if (corank_ == 1) {
    g0_[0] = F.trace_one_element(); // lambda + lambda^sigma = 1
  }

  for (int i = 1; i <= rank_; ++i)
    gmat_[static_cast<size_t>(idx_neg(i)) * n + idx_pos(i)] = 1;
  for (int a = 0; a < corank_; ++a)
    for (int b = 0; b < corank_; ++b)
      gmat_[static_cast<size_t>(idx_aniso(a)) * n + idx_aniso(b)] =
          g0_[static_cast<size_t>(a) * corank_ + b];

  // f = g + sigma(g^T)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      fmat_[static_cast<size_t>(i) * n + j] =
          F.add(gmat_[static_cast<size_t>(i) * n + j],
                sigma(gmat_[static_cast<size_t>(j) * n + i]));
}

// Exhaustively confirm the anisotropic block has no nonzero zeros. For the
// Hermitian part the zero condition is g0(v,v) in the trace-like set.
void FormSpec::check_anisotropic() const {
  const gf::Field& F = *F_;
  const unsigned q = F.q();
  auto ls = F.trace_like_set(uses_involution());
  size_t total = 1;
  for (int i = 0; i < corank_; ++i) total *= q;
  for (size_t code = 1; code < total; ++code) {
    Vec v0(corank_);
    size_t c = code;
    for (int i = 0; i < corank_; ++i) { v0[i] = static_cast<Fe>(c % q); c /= q; }
    Fe val = g0(v0, v0);
    bool zero = uses_involution() ? ls.count(val) > 0 : val == 0;
    if (zero) raise(Errc::Internal, "anisotropic part has a nonzero zero");
  }
}

Fe FormSpec::eval_g(const Vec& v, const Vec& w) const {
  const int n = dim();
  if (static_cast<int>(v.size()) != n || static_cast<int>(w.size()) != n)
    raise(Errc::DimensionMismatch, "vector length != form dimension");
  const gf::Field& F = *F_;
  Fe acc = 0;
  for (int i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    Fe vi = sigma(v[i]);
    const Fe* row = gmat_.data() + static_cast<size_t>(i) * n;
    for (int j = 0; j < n; ++j)
      if (row[j] && w[j]) acc = F.add(acc, F.mul(vi, F.mul(row[j], w[j])));
  }
  return acc;
}

Fe FormSpec::eval_bilinear(const Vec& v, const Vec& w) const {
  const int n = dim();
  if (static_cast<int>(v.size()) != n || static_cast<int>(w.size()) != n)
    raise(Errc::DimensionMismatch, "vector length != form dimension");
  const gf::Field& F = *F_;
  Fe acc = 0;
  for (int i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    Fe vi = sigma(v[i]);
    const Fe* row = fmat_.data() + static_cast<size_t>(i) * n;
    for (int j = 0; j < n; ++j)
      if (row[j] && w[j]) acc = F.add(acc, F.mul(vi, F.mul(row[j], w[j])));
  }
  return acc;
}

Fe FormSpec::eval_quadratic(const Vec& v) const {
  if (kind_ != Kind::Quadratic) raise(Errc::WrongKind, "quadratic value of a non-quadratic form");
  return eval_g(v, v);
}

bool FormSpec::is_point_vector(const Vec& v) const {
  bool nonzero = false;
  for (Fe x : v)
    if (x) { nonzero = true; break; }
  if (!nonzero) return false;
  switch (kind_) {
    case Kind::Symplectic: return true;
    case Kind::Quadratic: return eval_g(v, v) == 0;
    case Kind::Hermitian: return eval_bilinear(v, v) == 0;
  }
  return false;
}

Subspace FormSpec::perp(const Subspace& U) const {
  const int n = dim();
  if (U.n != n) raise(Errc::DimensionMismatch, "perp of wrong-dimension subspace");
  const gf::Field& F = *F_;
  std::vector<Vec> rows;
  rows.reserve(U.k);
  for (int i = 0; i < U.k; ++i) {
    Vec r(n, 0);
    for (int a = 0; a < n; ++a) {
      Fe ua = U.row(i)[a];
      if (ua == 0) continue;
      Fe s = sigma(ua);
      const Fe* frow = fmat_.data() + static_cast<size_t>(a) * n;
      for (int j = 0; j < n; ++j)
        if (frow[j]) r[j] = F.add(r[j], F.mul(s, frow[j]));
    }
    rows.push_back(std::move(r));
  }
  return linalg::null_space(F_, n, rows);
}

Subspace FormSpec::radical() const { return perp(linalg::full_space(F_, dim())); }

bool FormSpec::is_singular(const Subspace& U) const {
  std::vector<Vec> basis;
  basis.reserve(U.k);
  for (int i = 0; i < U.k; ++i) basis.emplace_back(U.row(i), U.row(i) + U.n);
  for (int i = 0; i < U.k; ++i) {
    if (!is_point_vector(basis[i])) return false;
    for (int j = i + 1; j < U.k; ++j)
      if (eval_bilinear(basis[i], basis[j]) != 0) return false;
  }
  return true;
}

Fe FormSpec::g0(const Vec& v0, const Vec& w0) const {
  const gf::Field& F = *F_;
  Fe acc = 0;
  for (int a = 0; a < corank_; ++a)
    for (int b = 0; b < corank_; ++b) {
      Fe c = g0_[static_cast<size_t>(a) * corank_ + b];
      if (c && v0[a] && w0[b]) acc = F.add(acc, F.mul(sigma(v0[a]), F.mul(c, w0[b])));
    }
  return acc;
}

Fe FormSpec::f0(const Vec& v0, const Vec& w0) const {
  return F_->add(g0(v0, w0), sigma(g0(w0, v0)));
}

Fe FormSpec::loop_g1(const Vec& v0, Fe t) const {
  const gf::Field& F = *F_;
  return F.sub(F.sub(t, sigma(t)), g0(v0, v0));
}

Fe FormSpec::loop_g2(const Vec& w0, Fe u) const {
  const gf::Field& F = *F_;
  return F.sub(F.sub(u, sigma(u)), g0(w0, w0));
}

Fe FormSpec::homology_factor(const Vec& v0, const Vec& w0, Fe t, Fe u) const {
  const gf::Field& F = *F_;
  Fe d = F.mul(loop_g2(w0, u), loop_g1(v0, t));
  d = F.add(d, f0(w0, v0));
  return F.add(d, 1);
}

std::string FormSpec::render() const {
  unsigned qq = F_->q();
  if (uses_involution()) {
    qq = 1;
    for (unsigned i = 0; i < F_->k() / 2; ++i) qq *= F_->p();
  }
  std::string q = std::to_string(qq);
  std::string s;
  switch (kind_) {
    case Kind::Symplectic: s = "Sp(n=" + std::to_string(rank_) + ",q=" + q + ")"; break;
    case Kind::Quadratic:
      s = "O(n=" + std::to_string(rank_) + ",q=" + q + ",corank=" + std::to_string(corank_) + ")";
      break;
    case Kind::Hermitian:
      s = "U(n=" + std::to_string(rank_) + ",q=" + q + ",corank=" + std::to_string(corank_) + ")";
      break;
  }
  return s;
}

std::string FormSpec::classical_name() const {
  const unsigned q = F_->q();
  switch (kind_) {
    case Kind::Symplectic:
      return "W(" + std::to_string(2 * rank_ - 1) + "," + std::to_string(q) + ")";
    case Kind::Quadratic:
      if (corank_ == 1)
        return "Q(" + std::to_string(2 * rank_) + "," + std::to_string(q) + ")";
      return "Q-(" + std::to_string(2 * rank_ + 1) + "," + std::to_string(q) + ")";
    case Kind::Hermitian:
      return "H(" + std::to_string(2 * rank_ + corank_ - 1) + "," + std::to_string(q) + ")";
  }
  return "?";
}

} // namespace polproj::forms
