#ifndef POLPROJ_VERIFY_HPP
#define POLPROJ_VERIFY_HPP

#include <map>
#include <optional>
#include <set>

#include "polproj/chains.hpp"
#include "polproj/permgroup.hpp"

namespace polproj::verify {

using gf::Fe;
using linalg::Subspace;
using polar::PolarSpace;
using polar::ResiduePtr;
using polar::Side;
using polar::SpacePtr;
using permgrp::PermGroup;

enum class Mode { Exhaustive, Sampled };

struct GenOptions {
  uint64_t seed = 12345;
  Mode mode = Mode::Exhaustive;
  int batch = 32;
  int stability_window = 5;       // stop after this many stable batches
  size_t sample_target = 120;     // configurations for sampled checks
  size_t max_generators = 200000; // hard cap on loop generators per group
  size_t enumerate_cap = 4000000;
  bool allow_disconnected = false;
};

// Opposition graph on the singular subspaces of one dimension, with a BFS
// spanning tree rooted at the base subspace.
struct OppositionGraph {
  std::vector<Subspace> nodes;
  std::vector<Subspace> perps;
  int root = -1;
  std::vector<int> parent, depth, bfs_order;
  std::vector<char> in_component;
  bool connected = false;
  size_t component_size = 0;

  bool is_edge(PolarSpace& P, int i, int j) const;
  bool is_tree_edge(int i, int j) const { return parent[i] == j || parent[j] == i; }
};

OppositionGraph build_opposition_graph(PolarSpace& P, const Subspace& F);

// The projectivity group of a residue, generated from spanning-tree loops.
// The permutation group lives on chambers plus two parity tags, so the
// special (even) subgroup and the index can be read off exactly.
struct GroupResult {
  ResiduePtr residue;
  std::shared_ptr<PermGroup> gstar;
  std::vector<proj::ChamberPerm> gens;
  BigUint order_pi, order_pi_plus;
  uint64_t index12 = 1;
  bool parity_collapse = false; // some odd word evaluates to the identity
  bool connected = true;
  size_t nodes = 0, chords_total = 0, chords_used = 0;
  Mode mode_used = Mode::Exhaustive;
};

GroupResult projectivity_group(PolarSpace& P, const Subspace& F, Side side,
                               const GenOptions& opt);

// Group accounting for an explicit set of loop permutations on a residue.
GroupResult group_from_loops(const ResiduePtr& R,
                             const std::vector<proj::ChamberPerm>& loops);

// The even-parity subgroup as a permutation group on chambers, with its own
// base and strong generating set. Its index in the general group is 1 or 2.
PermGroup even_subgroup_on_chambers(const GroupResult& g);

permgrp::Perm tag_extended(const proj::ChamberPerm& cp);

// {D(v0,w0,t,u)} over all parameters, zero excluded.
std::set<Fe> norm_set(const forms::FormSpec& S);

// Fixed residue points of cp must contain a proper geometric hyperplane (or
// be everything); returns the certificate hyperplane ids if found.
std::optional<std::set<int>> find_fixed_hyperplane(const proj::ChamberPerm& cp);

struct Report {
  std::string check;
  std::string space;
  std::string residue;
  std::string mode = "exhaustive";
  uint64_t seed = 0;
  std::string outcome = "pass"; // pass | fail | discrepancy | skipped
  std::string order_pi, order_pi_plus;
  int64_t index12 = 0;
  std::vector<std::string> catalog;
  std::map<std::string, std::string> witness;
  int64_t ms = 0;
};

Report check_group(const SpacePtr& P, const Subspace& F, Side side, const GenOptions& opt);
Report check_triangles(const SpacePtr& P, const Subspace& F, Side side, const GenOptions& opt);
Report check_upanddown(const SpacePtr& P, const Subspace& F, Side side, const GenOptions& opt);
Report check_gamma(const SpacePtr& P, int s, const GenOptions& opt);
Report check_reflections(const SpacePtr& P, const GenOptions& opt);
Report check_oddeven(const SpacePtr& P, int d, const GenOptions& opt);
Report check_normset(const SpacePtr& P, const GenOptions& opt);
Report check_maxsubspace(const SpacePtr& P, const GenOptions& opt);
Report check_nonmaxlower(const SpacePtr& P, int d, const GenOptions& opt);
Report check_conic_elation(const gf::FieldPtr& F, const GenOptions& opt);
Report check_engine_oracle(const SpacePtr& P, const Subspace& F, Side side, int max_len,
                           const GenOptions& opt);
Report check_two_reflections(const SpacePtr& P, int m, const GenOptions& opt);

// s-space-graph adjacency on singular subspaces of equal dimension.
bool sgraph_adjacent(PolarSpace& P, const Subspace& A, const Subspace& B);

// Element action and type behavior (collineation vs correlation) of a bare
// chamber permutation on a lower residue.
std::pair<std::vector<int32_t>, bool> lower_elem_action(const polar::Residue& R,
                                                        const std::vector<int32_t>& chperm);

// Element action of a type-preserving chamber permutation (upper residues).
std::vector<int32_t> elem_action_of_chambers(const polar::Residue& R,
                                             const std::vector<int32_t>& chperm);

} // namespace polproj::verify

#endif
