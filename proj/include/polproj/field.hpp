#ifndef POLPROJ_FIELD_HPP
#define POLPROJ_FIELD_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "polproj/errors.hpp"

namespace polproj::gf {

// Element of a small finite field, encoded as an integer < q. For GF(p^k)
// the encoding is the polynomial residue c0 + c1*p + ... + c_{k-1}*p^{k-1}.
using Fe = uint8_t;

// Largest field order constructible by default. Keeps the q x q tables in
// cache; nothing in the verification suite needs more than GF(81).
inline constexpr unsigned kDefaultOrderBound = 81;
inline constexpr unsigned kHardOrderBound = 256;

// GF(p^k) with full add/mul tables and exp/log tables over a fixed primitive
// modulus. Immutable after construction; safe to share across threads.
class Field {
public:
  static std::shared_ptr<const Field> create(unsigned p, unsigned k,
                                             unsigned order_bound = kDefaultOrderBound);

  unsigned p() const { return p_; }
  unsigned k() const { return k_; }
  unsigned q() const { return q_; }
  // Modulus coefficients c0..ck (monic), as integers mod p. Empty for k = 1.
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Fe add(Fe a, Fe b) const { return add_[a * q_ + b]; }
  Fe sub(Fe a, Fe b) const { return add_[a * q_ + neg_[b]]; }
  Fe mul(Fe a, Fe b) const { return mul_[a * q_ + b]; }
  Fe neg(Fe a) const { return neg_[a]; }
  Fe inv(Fe a) const {
    if (a == 0) raise(Errc::DivisionByZero, "inverse of zero");
    return inv_[a];
  }
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }

  Fe pow(Fe a, uint64_t e) const;

  // Frobenius power x -> x^(p^j).
  Fe frob(Fe a, unsigned j) const;

  bool has_involution() const { return k_ % 2 == 0; }

  // The involution x -> x^sqrt(q), defined when the extension degree is even.
  Fe conj(Fe a) const {
    if (!has_involution()) raise(Errc::NoInvolution, "field degree is odd");
    return conj_[a];
  }
  // Identity-involution variant used by symplectic/quadratic forms.
  Fe conj_or_id(Fe a, bool use_involution) const { return use_involution ? conj(a) : a; }

  // {t - t^sigma : t in field}; with the identity involution this is {0}.
  std::set<Fe> trace_like_set(bool use_involution) const;

  // Canonical element with x + x^sigma = 1 (requires the involution).
  Fe trace_one_element() const;

  bool is_square(Fe a) const;

  std::string describe() const; // e.g. "GF(9)"

private:
  Field() = default;
  void build_tables();

  unsigned p_ = 0, k_ = 0, q_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<Fe> add_, mul_, neg_, inv_, conj_;
  std::vector<int> log_;   // log_[x] for x != 0, base = canonical generator
  std::vector<Fe> exp_;
};

using FieldPtr = std::shared_ptr<const Field>;

} // namespace polproj::gf

#endif
