#ifndef POLPROJ_LINALG_HPP
#define POLPROJ_LINALG_HPP

#include <string>
#include <vector>

#include "polproj/field.hpp"

namespace polproj::linalg {

using gf::Fe;
using gf::Field;
using gf::FieldPtr;

using Vec = std::vector<Fe>;

// Row space of a matrix in row-reduced echelon form. Two equal subspaces
// always carry bitwise-identical bases, so the encoding doubles as a
// dictionary key.
struct Subspace {
  FieldPtr F;
  int n = 0;          // ambient dimension
  int k = 0;          // rank
  std::vector<Fe> rows; // k*n, row-major RREF

  const Fe* row(int i) const { return rows.data() + static_cast<size_t>(i) * n; }
  Fe* row(int i) { return rows.data() + static_cast<size_t>(i) * n; }
  bool is_zero() const { return k == 0; }

  // Canonical byte encoding: k then the row entries.
  std::string key() const {
    std::string s;
    s.reserve(1 + rows.size());
    s.push_back(static_cast<char>(k));
    s.append(reinterpret_cast<const char*>(rows.data()), rows.size());
    return s;
  }
  bool operator==(const Subspace& o) const { return n == o.n && k == o.k && rows == o.rows; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }
  bool operator<(const Subspace& o) const {
    if (k != o.k) return k < o.k;
    return rows < o.rows;
  }
};

// In-place Gauss-Jordan elimination to RREF; returns pivot columns. Rows that
// vanish are removed. Packs rows into machine words over GF(2).
std::vector<int> rref_inplace(const Field& F, int n, std::vector<Vec>& rows);

Subspace rref(const FieldPtr& F, int n, const std::vector<Vec>& rows);

Subspace zero_subspace(const FieldPtr& F, int n);
Subspace full_space(const FieldPtr& F, int n);
Subspace span_of(const FieldPtr& F, int n, const std::vector<Vec>& vecs);

Subspace join(const Subspace& A, const Subspace& B);
Subspace meet(const Subspace& A, const Subspace& B);

bool contains(const Subspace& A, const Vec& v);
bool contains_subspace(const Subspace& A, const Subspace& B);

// Solution space of the homogeneous system rows * x^T = 0.
Subspace null_space(const FieldPtr& F, int n, const std::vector<Vec>& coeff_rows);

// All d-dimensional subspaces of F^n, canonically ordered (lexicographic on
// the RREF encoding). Iterates pivot patterns and free entries directly.
std::vector<Subspace> enumerate_subspaces(const FieldPtr& F, int n, int d);

// All d-dimensional subspaces of a given ambient subspace, canonically
// ordered in the ambient coordinates.
std::vector<Subspace> enumerate_subspaces_of(const Subspace& ambient, int d);

// Gaussian binomial [n choose d]_q as the count oracle for enumeration.
unsigned long long gaussian_binomial(unsigned long long q, int n, int d);

// Canonical projective representative: first nonzero coordinate scaled to 1.
Vec projective_rep(const Field& F, Vec v);

} // namespace polproj::linalg

#endif
