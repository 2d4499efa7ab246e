#include "polproj/permgroup.hpp"

#include <algorithm>
#include <unordered_set>

namespace polproj::permgrp {

Perm perm_identity(int degree) {
  Perm p(degree);
  for (int i = 0; i < degree; ++i) p[i] = i;
  return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

Perm perm_inverse(const Perm& a) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int32_t>(i);
  return r;
}

bool perm_is_identity(const Perm& a) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != static_cast<int32_t>(i)) return false;
  return true;
}

std::string perm_key(const Perm& a) {
  return std::string(reinterpret_cast<const char*>(a.data()), a.size() * sizeof(int32_t));
}

PermGroup::PermGroup(int degree, std::vector<Perm> generators, std::vector<int> forced_base)
    : degree_(degree) {
  for (int b : forced_base) {
    if (b < 0 || b >= degree) raise(Errc::DegreeMismatch, "forced base point out of range");
    Level L;
    L.beta = b;
    base_.push_back(b);
    levels_.push_back(std::move(L));
  }
  for (size_t i = 0; i < levels_.size(); ++i) recompute_orbit(i);
  for (Perm& g : generators) add_generator(g);
  finish();
}

std::vector<const Perm*> PermGroup::level_gens(size_t lvl) const {
  std::vector<const Perm*> out;
  for (size_t i = 0; i < strong_.size(); ++i)
    if (static_cast<size_t>(floor_[i]) >= lvl) out.push_back(&strong_[i]);
  return out;
}

void PermGroup::recompute_orbit(size_t lvl) {
  Level& L = levels_[lvl];
  L.orbit.clear();
  L.pos.assign(degree_, 0);
  L.reps.clear();
  L.orbit.push_back(L.beta);
  L.pos[L.beta] = 1;
  L.reps.push_back(perm_identity(degree_));
  auto gens = level_gens(lvl);
  for (size_t head = 0; head < L.orbit.size(); ++head) {
    int pt = L.orbit[head];
    for (const Perm* g : gens) {
      int img = (*g)[pt];
      if (L.pos[img]) continue;
      L.orbit.push_back(img);
      L.pos[img] = static_cast<int>(L.orbit.size());
      L.reps.push_back(perm_compose(L.reps[head], *g));
    }
  }
}

std::pair<Perm, size_t> PermGroup::strip(Perm g, size_t from) const {
  for (size_t i = from; i < levels_.size(); ++i) {
    const Level& L = levels_[i];
    int img = g[L.beta];
    if (img == L.beta) continue;
    if (!L.pos[img]) return {std::move(g), i};
    g = perm_compose(g, perm_inverse(L.reps[L.pos[img] - 1]));
  }
  return {std::move(g), levels_.size()};
}

// floor = length of the base prefix the permutation fixes; extends the base
// when it fixes all current base points.
void PermGroup::register_strong(const Perm& g) {
  int fl = 0;
  while (fl < static_cast<int>(base_.size()) && g[base_[fl]] == base_[fl]) ++fl;
  if (fl == static_cast<int>(base_.size())) {
    int pt = -1;
    for (int i = 0; i < degree_; ++i)
      if (g[i] != i) { pt = i; break; }
    if (pt < 0) return;
    Level L;
    L.beta = pt;
    base_.push_back(pt);
    levels_.push_back(std::move(L));
    recompute_orbit(levels_.size() - 1);
  }
  strong_.push_back(g);
  floor_.push_back(fl);
}

// Re-establish the Schreier-Sims invariant from level `from` downward:
// every Schreier generator of every level sifts to the identity.
void PermGroup::descend(size_t from) {
  if (levels_.empty()) return;
  int i = static_cast<int>(std::min(from, levels_.size() - 1));
  while (i >= 0) {
    recompute_orbit(static_cast<size_t>(i));
    Level& L = levels_[i];
    auto gens = level_gens(static_cast<size_t>(i));
    bool dirty = false;
    for (size_t oi = 0; oi < L.orbit.size() && !dirty; ++oi) {
      for (const Perm* g : gens) {
        int img = (*g)[L.orbit[oi]];
        Perm schreier = perm_compose(perm_compose(L.reps[oi], *g),
                                     perm_inverse(L.reps[L.pos[img] - 1]));
        if (perm_is_identity(schreier)) continue;
        auto stripped = strip(std::move(schreier), static_cast<size_t>(i) + 1);
        if (perm_is_identity(stripped.first)) continue;
        register_strong(stripped.first);
        // the new generator lives at a deeper level; fix there and re-descend
        i = static_cast<int>(floor_.back());
        dirty = true;
        break;
      }
    }
    if (!dirty) --i;
  }
}

bool PermGroup::add_generator(const Perm& g) {
  if (static_cast<int>(g.size()) != degree_)
    raise(Errc::DegreeMismatch, "generator degree mismatch");
  if (perm_is_identity(g)) return false;
  input_gens_.push_back(g);
  auto stripped = strip(g, 0);
  if (perm_is_identity(stripped.first)) return false;
  register_strong(stripped.first);
  descend(floor_.back());
  finish();
  return true;
}

void PermGroup::finish() {
  order_ = BigUint(1);
  for (const Level& L : levels_) order_.mul_u64(L.orbit.size());
}

bool PermGroup::contains(const Perm& g) const {
  if (static_cast<int>(g.size()) != degree_)
    raise(Errc::DegreeMismatch, "membership query degree mismatch");
  auto stripped = strip(g, 0);
  return perm_is_identity(stripped.first);
}

uint64_t PermGroup::index_of_subgroup(const std::vector<Perm>& sub_gens) const {
  for (const Perm& g : sub_gens)
    if (!contains(g)) raise(Errc::NotSubgroup, "generator not contained in group");
  PermGroup H(degree_, sub_gens);
  if (!order().fits_u64() || !H.order().fits_u64())
    raise(Errc::TooLarge, "index computation needs 64-bit orders");
  uint64_t a = order().as_u64(), b = H.order().as_u64();
  if (b == 0 || a % b != 0) raise(Errc::Internal, "subgroup order does not divide group order");
  return a / b;
}

std::vector<Perm> PermGroup::stabilizer_gens(int prefix) const {
  std::vector<Perm> out;
  for (size_t i = 0; i < strong_.size(); ++i)
    if (floor_[i] >= prefix) out.push_back(strong_[i]);
  return out;
}

std::vector<int> PermGroup::orbit_of(int point) const {
  std::vector<int> orbit{point};
  std::vector<char> seen(degree_, 0);
  seen[point] = 1;
  for (size_t head = 0; head < orbit.size(); ++head)
    for (const Perm& g : input_gens_) {
      int img = g[orbit[head]];
      if (!seen[img]) {
        seen[img] = 1;
        orbit.push_back(img);
      }
    }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

void PermGroup::for_each_element(const std::function<void(const Perm&)>& fn,
                                 uint64_t cap) const {
  if (!order().fits_u64() || order().as_u64() > cap)
    raise(Errc::TooLarge, "group too large to enumerate");
  std::function<void(size_t, const Perm&)> rec = [&](size_t lvl, const Perm& prefix) {
    if (lvl == levels_.size()) {
      fn(prefix);
      return;
    }
    for (size_t oi = 0; oi < levels_[lvl].orbit.size(); ++oi)
      rec(lvl + 1, perm_compose(levels_[lvl].reps[oi], prefix));
  };
  rec(0, perm_identity(degree_));
}

namespace {

BigUint qpow_big(uint64_t q, unsigned e) {
  BigUint r(1);
  for (unsigned i = 0; i < e; ++i) r.mul_u64(q);
  return r;
}

uint64_t qpow_u64(uint64_t q, unsigned e) {
  uint64_t r = 1;
  while (e--) r *= q;
  return r;
}

BigUint gl_order(unsigned r, uint64_t q) {
  // q^(r(r-1)/2) * prod_{i=1..r} (q^i - 1)
  BigUint o = qpow_big(q, r * (r - 1) / 2);
  for (unsigned i = 1; i <= r; ++i) o.mul_u64(qpow_u64(q, i) - 1);
  return o;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) { return b ? gcd_u64(b, a % b) : a; }

} // namespace

BigUint catalog_order(const std::string& family, const std::vector<long>& params) {
  auto need = [&](size_t n) {
    if (params.size() != n) raise(Errc::UnknownFamily, family + ": wrong parameter count");
  };
  if (family == "Sym") {
    need(1);
    return factorial_big(static_cast<unsigned>(params[0]));
  }
  if (family == "PGL") {
    need(2);
    unsigned r = params[0];
    uint64_t q = params[1];
    BigUint o = gl_order(r, q);
    o.div_u32(static_cast<uint32_t>(q - 1));
    return o;
  }
  if (family == "PSL") {
    need(2);
    unsigned r = params[0];
    uint64_t q = params[1];
    BigUint o = gl_order(r, q);
    o.div_u32(static_cast<uint32_t>(q - 1));
    o.div_u32(static_cast<uint32_t>(gcd_u64(r, q - 1)));
    return o;
  }
  if (family == "PSLsub") {
    // matrices with determinant in the subfield GF(q0)^x, projectivised
    need(3);
    unsigned r = params[0];
    uint64_t q = params[1], q0 = params[2];
    uint64_t m = q - 1, h = q0 - 1;
    uint64_t g = gcd_u64(r, m);
    uint64_t scalars = g * gcd_u64(h, m / g); // scalar matrices inside the subgroup
    BigUint o = gl_order(r, q);
    o = BigUint::mul(o, BigUint(h));
    o.div_u32(static_cast<uint32_t>(m));
    o.div_u32(static_cast<uint32_t>(scalars));
    return o;
  }
  if (family == "PSp") {
    need(2);
    unsigned n = params[0]; // PSp_{2n}(q)
    uint64_t q = params[1];
    BigUint o = qpow_big(q, n * n);
    for (unsigned i = 1; i <= n; ++i) o.mul_u64(qpow_u64(q, 2 * i) - 1);
    o.div_u32(static_cast<uint32_t>(gcd_u64(2, q - 1)));
    return o;
  }
  if (family == "SOodd" || family == "OmegaOdd") {
    need(2);
    unsigned n = params[0]; // dimension 2n+1
    uint64_t q = params[1];
    BigUint o = qpow_big(q, n * n);
    for (unsigned i = 1; i <= n; ++i) o.mul_u64(qpow_u64(q, 2 * i) - 1);
    if (family == "OmegaOdd" && q % 2 == 1) o.div_u32(2);
    return o;
  }
  if (family == "GOeven" || family == "SOeven" || family == "OmegaEven") {
    need(3);
    unsigned n = params[0]; // dimension 2n
    uint64_t q = params[1];
    long eps = params[2];
    BigUint o = qpow_big(q, n * (n - 1));
    o.mul_u64(eps > 0 ? qpow_u64(q, n) - 1 : qpow_u64(q, n) + 1);
    for (unsigned i = 1; i + 1 <= n; ++i) o.mul_u64(qpow_u64(q, 2 * i) - 1);
    if (family == "GOeven") o.mul_u64(2);
    if (family == "OmegaEven" && q % 2 == 1) o.div_u32(2);
    return o;
  }
  raise(Errc::UnknownFamily, family);
}

std::vector<std::string> catalog_matches(const BigUint& order) {
  std::vector<std::string> out;
  auto add = [&](const std::string& name, const BigUint& o) {
    if (o == order) out.push_back(name);
  };
  for (long n = 3; n <= 12; ++n)
    add("Sym(" + std::to_string(n) + ")", catalog_order("Sym", {n}));
  const long qs[] = {2, 3, 4, 5, 7, 8, 9, 16};
  for (long r = 2; r <= 4; ++r)
    for (long q : qs) {
      add("PGL(" + std::to_string(r) + "," + std::to_string(q) + ")",
          catalog_order("PGL", {r, q}));
      add("PSL(" + std::to_string(r) + "," + std::to_string(q) + ")",
          catalog_order("PSL", {r, q}));
    }
  for (long n = 2; n <= 3; ++n)
    for (long q : qs) {
      add("PSp(" + std::to_string(2 * n) + "," + std::to_string(q) + ")",
          catalog_order("PSp", {n, q}));
      if (q % 2 == 1) {
        add("SO(" + std::to_string(2 * n + 1) + "," + std::to_string(q) + ")",
            catalog_order("SOodd", {n, q}));
        add("Omega(" + std::to_string(2 * n + 1) + "," + std::to_string(q) + ")",
            catalog_order("OmegaOdd", {n, q}));
      }
      for (long eps : {1L, -1L}) {
        std::string sign = eps > 0 ? "+" : "-";
        add("GO" + sign + "(" + std::to_string(2 * n) + "," + std::to_string(q) + ")",
            catalog_order("GOeven", {n, q, eps}));
        add("SO" + sign + "(" + std::to_string(2 * n) + "," + std::to_string(q) + ")",
            catalog_order("SOeven", {n, q, eps}));
        add("Omega" + sign + "(" + std::to_string(2 * n) + "," + std::to_string(q) + ")",
            catalog_order("OmegaEven", {n, q, eps}));
      }
    }
  for (long r = 2; r <= 4; ++r)
    for (long q0 : {2L, 3L, 4L}) {
      long q = q0 * q0;
      add("PSL(" + std::to_string(r) + "," + std::to_string(q) + ";" + std::to_string(q0) + ")",
          catalog_order("PSLsub", {r, q, q0}));
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace polproj::permgrp
