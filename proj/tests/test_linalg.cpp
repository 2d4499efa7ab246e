#include <random>
#include <set>

#include "doctest.h"
#include "polproj/linalg.hpp"

using namespace polproj;
using namespace polproj::linalg;
using gf::Fe;
using gf::Field;

namespace {

// brute-force span: all linear combinations of the rows
std::set<Vec> span_oracle(const Field& F, int n, const std::vector<Vec>& rows) {
  std::set<Vec> out{Vec(n, 0)};
  bool grew = true;
  while (grew) {
    grew = false;
    std::set<Vec> next = out;
    for (const Vec& v : out)
      for (const Vec& r : rows)
        for (unsigned c = 0; c < F.q(); ++c) {
          Vec w(n);
          for (int i = 0; i < n; ++i) w[i] = F.add(v[i], F.mul(static_cast<Fe>(c), r[i]));
          if (next.insert(w).second) grew = true;
        }
    out = next;
  }
  return out;
}

Vec rand_vec(std::mt19937_64& rng, const Field& F, int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = static_cast<Fe>(rng() % F.q());
  return v;
}

} // namespace

TEST_CASE("rref basics") {
  auto F2 = Field::create(2, 1);
  Subspace s = rref(F2, 2, {{0, 1}, {1, 0}});
  CHECK(s.k == 2);
  CHECK(Vec(s.row(0), s.row(0) + 2) == Vec{1, 0});
  CHECK(Vec(s.row(1), s.row(1) + 2) == Vec{0, 1});

  // rank 2 by exhaustive span enumeration (4 vectors)
  std::vector<Vec> rows = {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
  CHECK(span_oracle(*F2, 3, rows).size() == 4);
  CHECK(rref(F2, 3, rows).k == 2);

  CHECK(rref(F2, 3, {}).k == 0);
}

TEST_CASE("rref canonicity under row operations") {
  std::mt19937_64 rng(7);
  for (auto [p, k] : {std::pair<unsigned, unsigned>{2, 1}, {3, 1}, {2, 2}}) {
    auto F = Field::create(p, k);
    for (int trial = 0; trial < 50; ++trial) {
      int n = 2 + static_cast<int>(rng() % 4);
      std::vector<Vec> rows;
      int m = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < m; ++i) rows.push_back(rand_vec(rng, *F, n));
      Subspace a = rref(F, n, rows);
      std::shuffle(rows.begin(), rows.end(), rng);
      for (auto& r : rows) {
        Fe c = static_cast<Fe>(1 + rng() % (F->q() - 1));
        for (auto& x : r) x = F->mul(x, c);
      }
      Subspace b = rref(F, n, rows);
      CHECK(a == b);
    }
  }
}

TEST_CASE("meet and join") {
  auto F3 = Field::create(3, 1);
  Subspace x = rref(F3, 3, {{1, 0, 0}});
  Subspace y = rref(F3, 3, {{0, 1, 0}});
  CHECK(meet(x, y).k == 0);
  Subspace j = join(x, y);
  CHECK(j.k == 2);
  CHECK(contains(j, {1, 2, 0}));
  CHECK(!contains(j, {0, 0, 1}));

  // two distinct 2-spaces in GF(2)^3 meet in a 1-space: exhaustive scan
  auto F2 = Field::create(2, 1);
  Subspace a = rref(F2, 3, {{1, 0, 0}, {0, 1, 0}});
  Subspace b = rref(F2, 3, {{1, 0, 1}, {0, 1, 0}});
  Subspace m = meet(a, b);
  int common = 0;
  for (unsigned code = 1; code < 8; ++code) {
    Vec v = {static_cast<Fe>(code & 1), static_cast<Fe>((code >> 1) & 1),
             static_cast<Fe>((code >> 2) & 1)};
    if (contains(a, v) && contains(b, v)) {
      ++common;
      CHECK(contains(m, v));
    }
  }
  CHECK(common == 1); // one nonzero common vector
  CHECK(m.k == 1);
}

TEST_CASE("dimension identity and modular law") {
  std::mt19937_64 rng(11);
  auto F = Field::create(3, 1);
  const int n = 4;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Vec> ra, rb;
    for (int i = 0; i < 2; ++i) ra.push_back(rand_vec(rng, *F, n));
    for (int i = 0; i < 2; ++i) rb.push_back(rand_vec(rng, *F, n));
    Subspace A = rref(F, n, ra), B = rref(F, n, rb);
    CHECK(meet(A, B).k + join(A, B).k == A.k + B.k);

    // modular law with A inside C = join(A, random)
    Subspace C = join(A, rref(F, n, {rand_vec(rng, *F, n)}));
    Subspace l = meet(join(A, B), C);
    Subspace r = join(A, meet(B, C));
    CHECK(l == r);
  }
}

TEST_CASE("contains") {
  auto F2 = Field::create(2, 1);
  Subspace xy = rref(F2, 3, {{1, 0, 0}, {0, 1, 0}});
  CHECK(contains(xy, {1, 1, 0}));
  CHECK(!contains(xy, {0, 0, 1}));
  auto F3 = Field::create(3, 1);
  Subspace d = rref(F3, 3, {{1, 1, 1}});
  CHECK(contains(d, {2, 2, 2})); // scalar multiple
}

TEST_CASE("enumerate_subspaces counts match Gaussian binomials") {
  CHECK(gaussian_binomial(2, 3, 1) == 7);
  CHECK(gaussian_binomial(3, 3, 2) == 13);
  // all (n, d, q) with q^n <= 3^6
  for (auto [p, k] : {std::pair<unsigned, unsigned>{2, 1}, {3, 1}, {2, 2}}) {
    auto F = Field::create(p, k);
    int maxn = 1;
    while (true) {
      unsigned long long t = 1;
      for (int i = 0; i < maxn + 1; ++i) t *= F->q();
      if (t > 729ull) break;
      ++maxn;
    }
    for (int n = 1; n <= maxn; ++n)
      for (int d = 0; d <= n; ++d) {
        auto list = enumerate_subspaces(F, n, d);
        CHECK(list.size() == gaussian_binomial(F->q(), n, d));
        // canonical order, no duplicates
        for (size_t i = 1; i < list.size(); ++i) CHECK(list[i - 1] < list[i]);
      }
  }
  auto F4 = Field::create(2, 2);
  CHECK(enumerate_subspaces(F4, 0, 0).size() == 1); // the zero subspace
}

TEST_CASE("enumerating inside an ambient subspace") {
  auto F2 = Field::create(2, 1);
  Subspace amb = rref(F2, 4, {{1, 0, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}});
  auto lines = enumerate_subspaces_of(amb, 2);
  CHECK(lines.size() == gaussian_binomial(2, 3, 2));
  for (const auto& L : lines) {
    CHECK(L.k == 2);
    CHECK(contains_subspace(amb, L));
  }
  for (size_t i = 1; i < lines.size(); ++i) CHECK(lines[i - 1] < lines[i]);
}

TEST_CASE("null_space is the orthogonal complement of the rows") {
  std::mt19937_64 rng(13);
  auto F = Field::create(2, 2);
  const int n = 5;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Vec> rows;
    for (int i = 0; i < 2; ++i) rows.push_back(rand_vec(rng, *F, n));
    Subspace ker = null_space(F, n, rows);
    Subspace rs = rref(F, n, rows);
    CHECK(ker.k == n - rs.k);
    for (int i = 0; i < ker.k; ++i)
      for (const Vec& r : rows) {
        Fe acc = 0;
        for (int j = 0; j < n; ++j) acc = F->add(acc, F->mul(r[j], ker.row(i)[j]));
        CHECK(acc == 0);
      }
  }
}
