#ifndef POLPROJ_PERMGROUP_HPP
#define POLPROJ_PERMGROUP_HPP

#include <functional>
#include <string>
#include <vector>

#include "polproj/bigint.hpp"
#include "polproj/errors.hpp"

namespace polproj::permgrp {

using Perm = std::vector<int32_t>;

Perm perm_identity(int degree);
Perm perm_compose(const Perm& a, const Perm& b); // apply a, then b
Perm perm_inverse(const Perm& a);
bool perm_is_identity(const Perm& a);
std::string perm_key(const Perm& a);

// Permutation group with a base and strong generating set, built by a
// deterministic Schreier-Sims sweep. Generators are deduplicated; the result
// depends only on the generator sequence (and the forced base prefix).
class PermGroup {
public:
  PermGroup(int degree, std::vector<Perm> generators, std::vector<int> forced_base = {});

  // Sift a new generator in; returns true if the group grew. Identity and
  // already-contained permutations are no-ops.
  bool add_generator(const Perm& g);

  int degree() const { return degree_; }
  const BigUint& order() const { return order_; }
  bool contains(const Perm& g) const;

  // Index of the subgroup generated by `sub_gens`, which must all lie in
  // this group. Orders must fit in 64 bits.
  uint64_t index_of_subgroup(const std::vector<Perm>& sub_gens) const;

  const std::vector<int>& base() const { return base_; }
  // Strong generators fixing the first `prefix` base points.
  std::vector<Perm> stabilizer_gens(int prefix) const;
  // Orbit of a point under the whole group.
  std::vector<int> orbit_of(int point) const;

  // Enumerate all elements; throws TooLarge if the order exceeds `cap`.
  void for_each_element(const std::function<void(const Perm&)>& fn,
                        uint64_t cap = 4000000) const;

  const std::vector<Perm>& input_generators() const { return input_gens_; }

private:
  struct Level {
    int beta = -1;
    std::vector<int> orbit; // discovery order, orbit[0] = beta
    std::vector<int> pos;   // point -> index+1 into orbit, 0 absent
    std::vector<Perm> reps; // orbit idx -> coset representative (beta -> point)
  };

  void descend(size_t from);
  void recompute_orbit(size_t lvl);
  std::vector<const Perm*> level_gens(size_t lvl) const;
  // Strip g through levels starting at `from`; returns remaining perm and
  // the level where it stopped.
  std::pair<Perm, size_t> strip(Perm g, size_t from) const;
  void register_strong(const Perm& g);
  void finish();

  int degree_ = 0;
  std::vector<Perm> input_gens_;
  std::vector<int> base_;
  std::vector<Perm> strong_;
  std::vector<int> floor_; // strong gen -> number of fixed base prefix points
  std::vector<Level> levels_;
  BigUint order_;
};

// Closed-form orders of the classical groups used for identification.
// Families: "Sym", "PGL", "PSL", "PSLsub", "PSp", "SOodd", "OmegaOdd",
// "GOeven", "SOeven", "OmegaEven".
BigUint catalog_order(const std::string& family, const std::vector<long>& params);

// Names of catalog entries over a small parameter grid whose order matches.
std::vector<std::string> catalog_matches(const BigUint& order);

} // namespace polproj::permgrp

#endif
