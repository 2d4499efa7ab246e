#include "polproj/linalg.hpp"

#include <algorithm>

namespace polproj::linalg {

namespace {

std::vector<int> rref_gf2_packed(int n, std::vector<Vec>& rows) {
  const size_t m = rows.size();
  std::vector<uint64_t> packed(m, 0);
  for (size_t i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (rows[i][j]) packed[i] |= uint64_t(1) << j;

  std::vector<int> pivots;
  size_t r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    size_t sel = m;
    for (size_t i = r; i < m; ++i)
      if (packed[i] >> c & 1) { sel = i; break; }
    if (sel == m) continue;
    std::swap(packed[r], packed[sel]);
    for (size_t i = 0; i < m; ++i)
      if (i != r && (packed[i] >> c & 1)) packed[i] ^= packed[r];
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  for (size_t i = 0; i < r; ++i) {
    rows[i].assign(n, 0);
    for (int j = 0; j < n; ++j) rows[i][j] = static_cast<Fe>(packed[i] >> j & 1);
  }
  return pivots;
}

} // namespace

std::vector<int> rref_inplace(const Field& F, int n, std::vector<Vec>& rows) {
  for (const auto& row : rows)
    if (static_cast<int>(row.size()) != n)
      raise(Errc::DimensionMismatch, "row length != ambient dimension");

  if (F.q() == 2 && n <= 64) return rref_gf2_packed(n, rows);

  std::vector<int> pivots;
  size_t r = 0;
  const size_t m = rows.size();
  for (int c = 0; c < n && r < m; ++c) {
    size_t sel = m;
    for (size_t i = r; i < m; ++i)
      if (rows[i][c]) { sel = i; break; }
    if (sel == m) continue;
    std::swap(rows[r], rows[sel]);
    Fe s = F.inv(rows[r][c]);
    for (int j = 0; j < n; ++j) rows[r][j] = F.mul(rows[r][j], s);
    for (size_t i = 0; i < m; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Fe f = rows[i][c];
      for (int j = 0; j < n; ++j)
        rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

Subspace rref(const FieldPtr& F, int n, const std::vector<Vec>& in_rows) {
  std::vector<Vec> rows = in_rows;
  rref_inplace(*F, n, rows);
  Subspace s;
  s.F = F;
  s.n = n;
  s.k = static_cast<int>(rows.size());
  s.rows.reserve(static_cast<size_t>(s.k) * n);
  for (const auto& row : rows) s.rows.insert(s.rows.end(), row.begin(), row.end());
  return s;
}

Subspace zero_subspace(const FieldPtr& F, int n) {
  Subspace s;
  s.F = F;
  s.n = n;
  s.k = 0;
  return s;
}

Subspace full_space(const FieldPtr& F, int n) {
  std::vector<Vec> rows(n, Vec(n, 0));
  for (int i = 0; i < n; ++i) rows[i][i] = 1;
  return rref(F, n, rows);
}

Subspace span_of(const FieldPtr& F, int n, const std::vector<Vec>& vecs) {
  return rref(F, n, vecs);
}

Subspace join(const Subspace& A, const Subspace& B) {
  if (A.n != B.n) raise(Errc::DimensionMismatch, "join of different ambients");
  std::vector<Vec> rows;
  rows.reserve(A.k + B.k);
  for (int i = 0; i < A.k; ++i) rows.emplace_back(A.row(i), A.row(i) + A.n);
  for (int i = 0; i < B.k; ++i) rows.emplace_back(B.row(i), B.row(i) + B.n);
  return rref(A.F, A.n, rows);
}

// Zassenhaus: reduce [A|A; B|0]; rows with zero left half carry the
// intersection in their right half.
Subspace meet(const Subspace& A, const Subspace& B) {
  if (A.n != B.n) raise(Errc::DimensionMismatch, "meet of different ambients");
  const int n = A.n;
  const Field& F = *A.F;
  std::vector<Vec> rows;
  rows.reserve(A.k + B.k);
  for (int i = 0; i < A.k; ++i) {
    Vec r(2 * n, 0);
    std::copy(A.row(i), A.row(i) + n, r.begin());
    std::copy(A.row(i), A.row(i) + n, r.begin() + n);
    rows.push_back(std::move(r));
  }
  for (int i = 0; i < B.k; ++i) {
    Vec r(2 * n, 0);
    std::copy(B.row(i), B.row(i) + n, r.begin());
    rows.push_back(std::move(r));
  }
  rref_inplace(F, 2 * n, rows);
  std::vector<Vec> inter;
  for (const auto& r : rows) {
    bool left_zero = true;
    for (int j = 0; j < n; ++j)
      if (r[j]) { left_zero = false; break; }
    if (left_zero) inter.emplace_back(r.begin() + n, r.end());
  }
  return rref(A.F, n, inter);
}

bool contains(const Subspace& A, const Vec& v) {
  if (static_cast<int>(v.size()) != A.n)
    raise(Errc::DimensionMismatch, "vector length != ambient dimension");
  const Field& F = *A.F;
  Vec w = v;
  for (int i = 0; i < A.k; ++i) {
    // pivot of row i
    int pc = -1;
    for (int j = 0; j < A.n; ++j)
      if (A.row(i)[j]) { pc = j; break; }
    if (pc < 0) continue;
    Fe f = w[pc];
    if (f == 0) continue;
    for (int j = 0; j < A.n; ++j) w[j] = F.sub(w[j], F.mul(f, A.row(i)[j]));
  }
  for (Fe x : w)
    if (x) return false;
  return true;
}

bool contains_subspace(const Subspace& A, const Subspace& B) {
  for (int i = 0; i < B.k; ++i)
    if (!contains(A, Vec(B.row(i), B.row(i) + B.n))) return false;
  return true;
}

Subspace null_space(const FieldPtr& F, int n, const std::vector<Vec>& coeff_rows) {
  std::vector<Vec> rows = coeff_rows;
  std::vector<int> pivots = rref_inplace(*F, n, rows);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    Vec v(n, 0);
    v[c] = 1;
    for (size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = F->neg(rows[i][c]);
    basis.push_back(std::move(v));
  }
  return rref(F, n, basis);
}

unsigned long long gaussian_binomial(unsigned long long q, int n, int d) {
  if (d < 0 || d > n) return 0;
  // prod_{i=0}^{d-1} (q^(n-i) - 1) / (q^(i+1) - 1), computed exactly
  unsigned long long num = 1, den = 1;
  auto qpow = [&](int e) {
    unsigned long long r = 1;
    while (e--) r *= q;
    return r;
  };
  for (int i = 0; i < d; ++i) {
    num *= qpow(n - i) - 1;
    den *= qpow(i + 1) - 1;
  }
  return num / den;
}

std::vector<Subspace> enumerate_subspaces(const FieldPtr& F, int n, int d) {
  std::vector<Subspace> out;
  if (d < 0 || d > n) return out;
  if (d == 0) {
    out.push_back(zero_subspace(F, n));
    return out;
  }
  const unsigned q = F->q();
  std::vector<int> piv(d);
  for (int i = 0; i < d; ++i) piv[i] = i;

  auto emit_all_fillings = [&](const std::vector<int>& pivots) {
    // Free cells: row i, columns > pivots[i] that are not pivot columns.
    std::vector<std::pair<int, int>> cells;
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    for (int i = 0; i < d; ++i)
      for (int c = pivots[i] + 1; c < n; ++c)
        if (!is_pivot[c]) cells.emplace_back(i, c);
    std::vector<Fe> mat(static_cast<size_t>(d) * n, 0);
    for (int i = 0; i < d; ++i) mat[static_cast<size_t>(i) * n + pivots[i]] = 1;
    size_t total = 1;
    for (size_t i = 0; i < cells.size(); ++i) total *= q;
    for (size_t code = 0; code < total; ++code) {
      size_t c = code;
      for (auto [ri, ci] : cells) {
        mat[static_cast<size_t>(ri) * n + ci] = static_cast<Fe>(c % q);
        c /= q;
      }
      Subspace s;
      s.F = F;
      s.n = n;
      s.k = d;
      s.rows = mat;
      out.push_back(std::move(s));
    }
  };

  // Iterate pivot-column combinations.
  while (true) {
    emit_all_fillings(piv);
    int i = d - 1;
    while (i >= 0 && piv[i] == n - d + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < d; ++j) piv[j] = piv[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subspace> enumerate_subspaces_of(const Subspace& ambient, int d) {
  const Field& F = *ambient.F;
  std::vector<Subspace> out;
  for (const Subspace& L : enumerate_subspaces(ambient.F, ambient.k, d)) {
    std::vector<Vec> rows;
    for (int i = 0; i < L.k; ++i) {
      Vec v(ambient.n, 0);
      for (int c = 0; c < ambient.k; ++c) {
        Fe coef = L.row(i)[c];
        if (!coef) continue;
        for (int a = 0; a < ambient.n; ++a)
          v[a] = F.add(v[a], F.mul(coef, ambient.row(c)[a]));
      }
      rows.push_back(std::move(v));
    }
    out.push_back(rref(ambient.F, ambient.n, rows));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Vec projective_rep(const Field& F, Vec v) {
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i]) {
      Fe s = F.inv(v[i]);
      for (auto& x : v) x = F.mul(x, s);
      break;
    }
  }
  return v;
}

} // namespace polproj::linalg
