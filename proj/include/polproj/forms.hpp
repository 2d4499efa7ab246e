#ifndef POLPROJ_FORMS_HPP
#define POLPROJ_FORMS_HPP

#include <string>
#include <vector>

#include "polproj/linalg.hpp"

namespace polproj::forms {

using gf::Fe;
using gf::FieldPtr;
using linalg::Subspace;
using linalg::Vec;

enum class Kind { Symplectic, Quadratic, Hermitian };

// A polar space form in standard coordinates. Basis order is
//   e_{-r}, ..., e_{-1}, (anisotropic block of `corank` coordinates), e_1, ..., e_r
// and the defining forms are
//   g(v,w) = sum_i sigma(x_{-i}) y_i + g0(v0,w0)          (upper-half pairing)
//   f(v,w) = g(v,w) + sigma(g(w,v))                        (Quadratic/Hermitian)
//   f(v,w) = sum_i (x_{-i} y_i - x_i y_{-i})               (Symplectic)
//   q(v)   = g(v,v)                                        (Quadratic)
// Points are the 1-spaces with q(v) = 0 (Quadratic), f(v,v) = 0 (Hermitian),
// and all 1-spaces for Symplectic. Only these normal forms are constructible;
// arbitrary Gram matrices are rejected.
class FormSpec {
public:
  // corank: Symplectic must pass 0; Quadratic 1 or 2; Hermitian 0 or 1.
  // For Hermitian, F must carry the involution (even extension degree) and
  // `q` in names below refers to the fixed-subfield order.
  static FormSpec make(Kind kind, const FieldPtr& F, int witt_rank, int corank);

  Kind kind() const { return kind_; }
  const FieldPtr& field() const { return F_; }
  int rank() const { return rank_; }
  int corank() const { return corank_; }
  int dim() const { return 2 * rank_ + corank_; }
  bool uses_involution() const { return kind_ == Kind::Hermitian; }

  // Coordinate of e_{-i} / e_i (i = 1..rank) and of the j-th anisotropic slot.
  int idx_neg(int i) const { return rank_ - i; }
  int idx_pos(int i) const { return rank_ + corank_ + i - 1; }
  int idx_aniso(int j) const { return rank_ + j; }

  Fe sigma(Fe a) const { return F_->conj_or_id(a, uses_involution()); }

  Fe eval_g(const Vec& v, const Vec& w) const;
  Fe eval_bilinear(const Vec& v, const Vec& w) const;
  Fe eval_quadratic(const Vec& v) const; // Quadratic only
  bool is_point_vector(const Vec& v) const;

  Subspace perp(const Subspace& U) const;
  Subspace radical() const; // radical of the (sesqui)linear form

  bool is_singular(const Subspace& U) const;

  // Anisotropic-block value g0(v0,w0) for `corank`-length vectors.
  Fe g0(const Vec& v0, const Vec& w0) const;
  Fe f0(const Vec& v0, const Vec& w0) const;

  // Homology factor of the standard four-subspace loop:
  //   D = ((u - u^sigma) - g0(w0,w0)) * ((t - t^sigma) - g0(v0,v0)) + f0(w0,v0) + 1.
  Fe homology_factor(const Vec& v0, const Vec& w0, Fe t, Fe u) const;
  // The e_1 / e_{-1} coefficients of the third and fourth loop subspaces.
  Fe loop_g1(const Vec& v0, Fe t) const;
  Fe loop_g2(const Vec& w0, Fe u) const;

  // Canonical surface syntax, e.g. "Sp(n=3,q=2)" or "U(n=3,q=2,corank=0)".
  std::string render() const;
  // Classical name, e.g. "W(5,2)", "Q(6,3)", "Q-(7,2)", "H(5,4)".
  std::string classical_name() const;

private:
  FormSpec() = default;
  void build_matrices();
  void check_anisotropic() const;

  Kind kind_ = Kind::Symplectic;
  FieldPtr F_;
  int rank_ = 0;
  int corank_ = 0;
  std::vector<Fe> gmat_; // n x n matrix of g (Quadratic/Hermitian)
  std::vector<Fe> fmat_; // n x n matrix of f
  std::vector<Fe> g0_;   // corank x corank block of g0
};

} // namespace polproj::forms

#endif
