#include "polproj/field.hpp"

#include <array>
#include <map>
#include <mutex>

namespace polproj::gf {

namespace {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// One fixed primitive polynomial per (p,k), so element encodings are
// identical across runs and machines. Coefficients c0..c_{k-1} of the monic
// modulus x^k + c_{k-1}x^{k-1} + ... + c0.
struct ModulusEntry {
  unsigned p, k;
  std::array<unsigned, 8> c;
};

constexpr ModulusEntry kModuli[] = {
    {2, 2, {1, 1}},
    {2, 3, {1, 1, 0}},
    {2, 4, {1, 1, 0, 0}},
    {2, 5, {1, 0, 1, 0, 0}},
    {2, 6, {1, 1, 0, 1, 1, 0}},
    {2, 7, {1, 1, 0, 0, 0, 0, 0}},
    {2, 8, {1, 0, 1, 1, 1, 0, 0, 0}},
    {3, 2, {2, 2}},
    {3, 3, {1, 2, 0}},
    {3, 4, {2, 0, 0, 2}},
    {3, 5, {1, 2, 0, 0, 0}},
    {5, 2, {2, 4}},
    {5, 3, {3, 3, 0}},
    {7, 2, {3, 6}},
    {11, 2, {2, 7}},
    {13, 2, {2, 12}},
};

const ModulusEntry* find_modulus(unsigned p, unsigned k) {
  for (const auto& m : kModuli)
    if (m.p == p && m.k == k) return &m;
  return nullptr;
}

} // namespace

FieldPtr Field::create(unsigned p, unsigned k, unsigned order_bound) {
  if (!is_prime(p)) raise(Errc::NonPrime, "p = " + std::to_string(p));
  if (k == 0) raise(Errc::OrderTooLarge, "extension degree must be >= 1");
  if (order_bound > kHardOrderBound) order_bound = kHardOrderBound;
  uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > order_bound)
      raise(Errc::OrderTooLarge,
            "p^k = " + std::to_string(p) + "^" + std::to_string(k) +
                " exceeds bound " + std::to_string(order_bound));
  }

  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = p;
  f->k_ = k;
  f->q_ = static_cast<unsigned>(q);
  if (k > 1) {
    const ModulusEntry* m = find_modulus(p, k);
    if (!m)
      raise(Errc::OrderTooLarge, "no modulus table entry for GF(" +
                                     std::to_string(p) + "^" + std::to_string(k) + ")");
    f->modulus_.assign(m->c.begin(), m->c.begin() + k);
  }
  f->build_tables();
  return f;
}

void Field::build_tables() {
  const unsigned q = q_, p = p_, k = k_;
  add_.assign(q * q, 0);
  mul_.assign(q * q, 0);
  neg_.assign(q, 0);
  inv_.assign(q, 0);
  conj_.assign(q, 0);
  log_.assign(q, -1);
  exp_.assign(q, 0);

  auto digits = [&](unsigned v, unsigned* d) {
    for (unsigned i = 0; i < k; ++i) { d[i] = v % p; v /= p; }
  };
  auto undigits = [&](const unsigned* d) {
    unsigned v = 0;
    for (unsigned i = k; i-- > 0;) v = v * p + d[i];
    return v;
  };

  for (unsigned a = 0; a < q; ++a) {
    unsigned da[8], dn[8];
    digits(a, da);
    for (unsigned i = 0; i < k; ++i) dn[i] = (p - da[i]) % p;
    neg_[a] = static_cast<Fe>(undigits(dn));
    for (unsigned b = 0; b < q; ++b) {
      unsigned db[8], ds[8];
      digits(b, db);
      for (unsigned i = 0; i < k; ++i) ds[i] = (da[i] + db[i]) % p;
      add_[a * q + b] = static_cast<Fe>(undigits(ds));
    }
  }

  // Multiplication by the generator x, reducing with the modulus.
  auto mul_by_x = [&](unsigned v) {
    unsigned d[9] = {0};
    digits(v, d);
    unsigned top = d[k - 1];
    for (unsigned i = k; i-- > 1;) d[i] = d[i - 1];
    d[0] = 0;
    if (top)
      for (unsigned i = 0; i < k; ++i)
        d[i] = (d[i] + (p - modulus_[i]) % p * top) % p;
    return undigits(d);
  };

  if (k == 1) {
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b) mul_[a * q + b] = static_cast<Fe>(a * b % p);
    // exp/log over the smallest primitive root.
    unsigned g = 1;
    for (unsigned cand = 2; cand < q; ++cand) {
      unsigned x = 1, ord = 0;
      do { x = x * cand % p; ++ord; } while (x != 1);
      if (ord == q - 1) { g = cand; break; }
    }
    unsigned x = 1;
    for (unsigned e = 0; e + 1 < q; ++e) {
      exp_[e] = static_cast<Fe>(x);
      log_[x] = static_cast<int>(e);
      x = x * g % p;
    }
  } else {
    // Powers of x; table moduli are primitive so x generates the units.
    unsigned cur = 1;
    for (unsigned e = 0; e + 1 < q; ++e) {
      exp_[e] = static_cast<Fe>(cur);
      if (log_[cur] != -1)
        raise(Errc::Internal, "modulus is not primitive for " + describe());
      log_[cur] = static_cast<int>(e);
      cur = mul_by_x(cur);
    }
    if (cur != 1) raise(Errc::Internal, "unit group order mismatch in " + describe());
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b) {
        if (a == 0 || b == 0) { mul_[a * q + b] = 0; continue; }
        unsigned e = (log_[a] + log_[b]) % (q - 1);
        mul_[a * q + b] = exp_[e];
      }
  }

  for (unsigned a = 1; a < q; ++a) {
    unsigned e = (q - 1 - static_cast<unsigned>(log_[a])) % (q - 1);
    inv_[a] = exp_[e];
    if (mul(static_cast<Fe>(a), inv_[a]) != 1)
      raise(Errc::Internal, "inverse table corrupt in " + describe());
  }

  if (k % 2 == 0) {
    // x -> x^(p^(k/2))
    for (unsigned a = 0; a < q; ++a) {
      Fe r = static_cast<Fe>(a);
      for (unsigned j = 0; j < k / 2; ++j) r = pow(r, p);
      conj_[a] = r;
    }
  }
}

Fe Field::pow(Fe a, uint64_t e) const {
  Fe r = 1;
  Fe base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

Fe Field::frob(Fe a, unsigned j) const {
  Fe r = a;
  for (unsigned i = 0; i < j; ++i) r = pow(r, p_);
  return r;
}

std::set<Fe> Field::trace_like_set(bool use_involution) const {
  std::set<Fe> out;
  for (unsigned t = 0; t < q_; ++t) {
    Fe tt = static_cast<Fe>(t);
    out.insert(sub(tt, conj_or_id(tt, use_involution)));
  }
  return out;
}

Fe Field::trace_one_element() const {
  if (!has_involution()) raise(Errc::NoInvolution, "field degree is odd");
  for (unsigned a = 0; a < q_; ++a) {
    Fe x = static_cast<Fe>(a);
    if (add(x, conj(x)) == 1) return x;
  }
  raise(Errc::Internal, "no trace-one element in " + describe());
}

bool Field::is_square(Fe a) const {
  if (a == 0) return true;
  if (p_ == 2) return true;
  return log_[a] % 2 == 0;
}

std::string Field::describe() const { return "GF(" + std::to_string(q_) + ")"; }

} // namespace polproj::gf

namespace polproj {
const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonPrime: return "NonPrime";
    case Errc::OrderTooLarge: return "OrderTooLarge";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NoInvolution: return "NoInvolution";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::WrongKind: return "WrongKind";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NotOpposite: return "NotOpposite";
    case Errc::NotContained: return "NotContained";
    case Errc::BadDimension: return "BadDimension";
    case Errc::NoSuchP3: return "NoSuchP3";
    case Errc::DegenerateD: return "DegenerateD";
    case Errc::NotAHomology: return "NotAHomology";
    case Errc::Singular: return "Singular";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::NotSubgroup: return "NotSubgroup";
    case Errc::UnknownFamily: return "UnknownFamily";
    case Errc::DisconnectedOppositionGraph: return "DisconnectedOppositionGraph";
    case Errc::ConditionNotMet: return "ConditionNotMet";
    case Errc::NoConfigurationFound: return "NoConfigurationFound";
    case Errc::ParseError: return "ParseError";
    case Errc::SemanticError: return "SemanticError";
    case Errc::UnknownCheck: return "UnknownCheck";
    case Errc::IoError: return "IoError";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}
} // namespace polproj
