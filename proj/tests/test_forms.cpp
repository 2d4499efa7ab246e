#include <functional>
#include <set>

#include "doctest.h"
#include "polproj/forms.hpp"

using namespace polproj;
using namespace polproj::forms;
using gf::Fe;
using gf::Field;
using linalg::Subspace;
using linalg::Vec;

namespace {

Vec unit(int n, int i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

// every vector of the ambient space, for exhaustive checks
void for_all_vectors(const Field& F, int n, const std::function<void(const Vec&)>& fn) {
  size_t total = 1;
  for (int i = 0; i < n; ++i) total *= F.q();
  for (size_t code = 0; code < total; ++code) {
    Vec v(n);
    size_t c = code;
    for (int i = 0; i < n; ++i) { v[i] = static_cast<Fe>(c % F.q()); c /= F.q(); }
    fn(v);
  }
}

} // namespace

TEST_CASE("construction rules") {
  auto F2 = Field::create(2, 1);
  auto F4 = Field::create(2, 2);
  CHECK_THROWS_AS(FormSpec::make(Kind::Quadratic, F2, 3, 0), Error); // top-thin
  CHECK_THROWS_AS(FormSpec::make(Kind::Symplectic, F2, 3, 1), Error);
  CHECK_THROWS_AS(FormSpec::make(Kind::Hermitian, F2, 2, 0), Error); // no involution
  CHECK_NOTHROW(FormSpec::make(Kind::Hermitian, F4, 2, 0));
  CHECK_NOTHROW(FormSpec::make(Kind::Quadratic, F2, 3, 2));
}

TEST_CASE("symplectic standard form") {
  auto F2 = Field::create(2, 1);
  FormSpec S = FormSpec::make(Kind::Symplectic, F2, 3, 0);
  const int n = S.dim();
  CHECK(n == 6);
  // hyperbolic pair pairing is 1
  CHECK(S.eval_bilinear(unit(n, S.idx_neg(1)), unit(n, S.idx_pos(1))) == 1);
  // alternating: f(v,v) = 0 for every vector
  for_all_vectors(*F2, n, [&](const Vec& v) { CHECK(S.eval_bilinear(v, v) == 0); });
}

TEST_CASE("Hermitian standard form") {
  auto F4 = Field::create(2, 2);
  FormSpec S = FormSpec::make(Kind::Hermitian, F4, 2, 0);
  const int n = S.dim();
  Vec v(n, 0);
  v[S.idx_neg(1)] = 1;
  v[S.idx_pos(1)] = 1;
  CHECK(S.eval_bilinear(v, v) == 0); // 1 + 1 in characteristic 2
  // Hermitian symmetry f(v,w)^sigma = f(w,v), sampled exhaustively
  for_all_vectors(*F4, n, [&](const Vec& a) {
    Vec b(n);
    for (int i = 0; i < n; ++i) b[i] = static_cast<Fe>((a[i] + 1) % 4);
    CHECK(F4->conj(S.eval_bilinear(a, b)) == S.eval_bilinear(b, a));
  });
}

TEST_CASE("quadratic values") {
  auto F3 = Field::create(3, 1);
  FormSpec par = FormSpec::make(Kind::Quadratic, F3, 1, 1);
  CHECK(par.eval_quadratic(unit(3, par.idx_neg(1))) == 0); // basis point on the quadric
  CHECK(par.eval_quadratic(unit(3, par.idx_aniso(0))) == 1); // anisotropic coordinate

  auto F2 = Field::create(2, 1);
  FormSpec ell = FormSpec::make(Kind::Quadratic, F2, 1, 2);
  Vec v(4, 0);
  v[ell.idx_aniso(0)] = 1;
  v[ell.idx_aniso(1)] = 1;
  CHECK(ell.eval_quadratic(v) == 1); // x^2+xy+y^2 at (1,1)
  // kernel anisotropic, exhaustively
  for (unsigned a = 0; a < 2; ++a)
    for (unsigned b = 0; b < 2; ++b) {
      if (!a && !b) continue;
      Vec w(4, 0);
      w[ell.idx_aniso(0)] = static_cast<Fe>(a);
      w[ell.idx_aniso(1)] = static_cast<Fe>(b);
      CHECK(ell.eval_quadratic(w) != 0);
    }

  FormSpec sp = FormSpec::make(Kind::Symplectic, F3, 2, 0);
  CHECK_THROWS_AS(sp.eval_quadratic(unit(4, 0)), Error); // wrong kind

  // q(lambda v) = lambda^2 q(v) and polarization, exhaustive on Q(4,3)
  FormSpec q43 = FormSpec::make(Kind::Quadratic, F3, 2, 1);
  for_all_vectors(*F3, 5, [&](const Vec& v5) {
    for (unsigned l = 0; l < 3; ++l) {
      Vec lv(5);
      for (int i = 0; i < 5; ++i) lv[i] = F3->mul(static_cast<Fe>(l), v5[i]);
      CHECK(q43.eval_quadratic(lv) ==
            F3->mul(F3->mul(static_cast<Fe>(l), static_cast<Fe>(l)), q43.eval_quadratic(v5)));
    }
  });
  // f(v,w) = q(v+w) - q(v) - q(w), sampled exhaustively on a small ambient
  FormSpec q23 = FormSpec::make(Kind::Quadratic, F3, 1, 1);
  for_all_vectors(*F3, 3, [&](const Vec& v) {
    for_all_vectors(*F3, 3, [&](const Vec& w) {
      Vec s(3);
      for (int i = 0; i < 3; ++i) s[i] = F3->add(v[i], w[i]);
      Fe pol = F3->sub(F3->sub(q23.eval_quadratic(s), q23.eval_quadratic(v)),
                       q23.eval_quadratic(w));
      CHECK(pol == q23.eval_bilinear(v, w));
    });
  });
}

TEST_CASE("perp") {
  auto F3 = Field::create(3, 1);
  FormSpec S = FormSpec::make(Kind::Symplectic, F3, 2, 0);
  Subspace U = linalg::rref(F3, 4, {unit(4, S.idx_neg(1))});
  Subspace P = S.perp(U);
  CHECK(P.k == 3);
  CHECK(linalg::contains(P, unit(4, S.idx_neg(1))));
  CHECK(linalg::contains(P, unit(4, S.idx_neg(2))));
  CHECK(!linalg::contains(P, unit(4, S.idx_pos(1))));
  CHECK(S.radical().k == 0); // non-degenerate

  // characteristic-2 parabolic: the bilinear radical is the nucleus
  auto F2 = Field::create(2, 1);
  FormSpec B32 = FormSpec::make(Kind::Quadratic, F2, 3, 1);
  Subspace rad = B32.radical();
  CHECK(rad.k == 1);
  CHECK(linalg::contains(rad, unit(7, B32.idx_aniso(0))));
  CHECK(S.perp(linalg::zero_subspace(F3, 4)).k == 4); // perp of zero is everything
}

TEST_CASE("perp is inclusion-reversing and involutive where non-degenerate") {
  auto F3 = Field::create(3, 1);
  FormSpec S = FormSpec::make(Kind::Quadratic, F3, 2, 1);
  const int n = S.dim();
  Subspace A = linalg::rref(F3, n, {unit(n, S.idx_neg(1))});
  Subspace B = linalg::rref(F3, n, {unit(n, S.idx_neg(1)), unit(n, S.idx_neg(2))});
  CHECK(linalg::contains_subspace(S.perp(A), S.perp(B)));
  CHECK(S.perp(S.perp(A)) == A);
  CHECK(S.perp(S.perp(B)) == B);
}

TEST_CASE("is_singular") {
  auto F2 = Field::create(2, 1);
  FormSpec S = FormSpec::make(Kind::Symplectic, F2, 3, 0);
  const int n = 6;
  Subspace M1 = linalg::rref(F2, n, {unit(n, S.idx_neg(1)), unit(n, S.idx_neg(2))});
  CHECK(S.is_singular(M1));
  Subspace hyp = linalg::rref(F2, n, {unit(n, S.idx_neg(1)), unit(n, S.idx_pos(1))});
  CHECK(!S.is_singular(hyp));
  CHECK(S.is_singular(linalg::zero_subspace(F2, n)));
}

TEST_CASE("Witt rank is witnessed by exhaustive subspace search") {
  struct Case { Kind kind; unsigned p, k; int r, c; };
  for (auto cse : {Case{Kind::Symplectic, 2, 1, 2, 0}, Case{Kind::Quadratic, 3, 1, 2, 1},
                   Case{Kind::Quadratic, 2, 1, 2, 2}, Case{Kind::Hermitian, 2, 2, 2, 0}}) {
    auto F = Field::create(cse.p, cse.k);
    FormSpec S = FormSpec::make(cse.kind, F, cse.r, cse.c);
    const int n = S.dim();
    int max_dim = 0;
    for (int d = 1; d <= cse.r + 1 && d <= n; ++d) {
      bool any = false;
      for (const Subspace& U : linalg::enumerate_subspaces(F, n, d))
        if (S.is_singular(U)) { any = true; break; }
      if (any) max_dim = d;
    }
    CHECK(max_dim == cse.r);
  }
}

TEST_CASE("homology factor formula instances") {
  // parabolic: D = (v0*w0 + 1)^2
  auto F3 = Field::create(3, 1);
  FormSpec par = FormSpec::make(Kind::Quadratic, F3, 2, 1);
  for (unsigned v = 0; v < 3; ++v)
    for (unsigned w = 0; w < 3; ++w) {
      Fe expect = F3->mul(F3->add(F3->mul(static_cast<Fe>(v), static_cast<Fe>(w)), 1),
                          F3->add(F3->mul(static_cast<Fe>(v), static_cast<Fe>(w)), 1));
      CHECK(par.homology_factor({static_cast<Fe>(v)}, {static_cast<Fe>(w)}, 0, 0) == expect);
    }
  // Hermitian corank 0: D = (u - u^sigma)(t - t^sigma) + 1
  auto F9 = Field::create(3, 2);
  FormSpec herm = FormSpec::make(Kind::Hermitian, F9, 2, 0);
  CHECK(herm.homology_factor({}, {}, 0, 0) == 1);
  std::set<Fe> values;
  for (unsigned t = 0; t < 9; ++t)
    for (unsigned u = 0; u < 9; ++u) {
      Fe D = herm.homology_factor({}, {}, static_cast<Fe>(t), static_cast<Fe>(u));
      if (D) values.insert(D);
    }
  CHECK(values == std::set<Fe>{1, 2}); // the nonzero elements of GF(3)
}

TEST_CASE("names") {
  auto F2 = Field::create(2, 1);
  auto F4 = Field::create(2, 2);
  CHECK(FormSpec::make(Kind::Symplectic, F2, 3, 0).classical_name() == "W(5,2)");
  CHECK(FormSpec::make(Kind::Quadratic, F2, 3, 2).classical_name() == "Q-(7,2)");
  CHECK(FormSpec::make(Kind::Hermitian, F4, 3, 0).classical_name() == "H(5,4)");
  CHECK(FormSpec::make(Kind::Hermitian, F4, 3, 0).render() == "U(n=3,q=2,corank=0)");
}
