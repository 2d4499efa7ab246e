#ifndef POLPROJ_POLAR_HPP
#define POLPROJ_POLAR_HPP

#include <map>
#include <memory>
#include <set>
#include <unordered_map>
#include <vector>

#include "polproj/forms.hpp"

namespace polproj::polar {

using forms::FormSpec;
using forms::Kind;
using gf::Fe;
using linalg::Subspace;
using linalg::Vec;

enum class Side { Upper, Lower };

class PolarSpace;

// Residue of a singular subspace, with its elements, maximal flags
// (chambers) and line incidence, all in a fixed canonical order. Chambers
// are the permutation domain shared by collineations and correlations.
struct Residue {
  const PolarSpace* space = nullptr;
  Subspace U;
  Side side = Side::Upper;
  int num_types = 0;

  std::vector<Subspace> elems;          // all elements, grouped by type
  std::vector<int> type_of;             // element id -> type
  std::vector<int> type_offset;         // first id of each type (+ sentinel)
  std::unordered_map<std::string, int> elem_index;

  std::vector<std::vector<int32_t>> chambers; // element ids by type position
  std::unordered_map<std::string, int> chamber_index;

  // Residue-line incidence (types 1 and 0), empty when num_types < 2.
  std::vector<std::vector<int32_t>> line_points;

  int elem_count() const { return static_cast<int>(elems.size()); }
  int chamber_count() const { return static_cast<int>(chambers.size()); }
  int type_size(int t) const { return type_offset[t + 1] - type_offset[t]; }
  int find_elem(const Subspace& S) const;
  int find_chamber(const std::vector<int32_t>& ids) const;
  static std::string chamber_key(const std::vector<int32_t>& ids);
  bool rank_at_least_2() const { return num_types >= 2; }
};

using ResiduePtr = std::shared_ptr<const Residue>;

// A finite thick polar space built from a standard form: points,
// collinearity, singular subspaces, residues, opposition and projections.
// Immutable after build(); residue/subspace caches are filled lazily.
class PolarSpace {
public:
  static std::shared_ptr<PolarSpace> build(const FormSpec& S, size_t point_cap = 5000);

  const FormSpec& form() const { return S_; }
  int rank() const { return S_.rank(); }
  int dim() const { return S_.dim(); }
  const gf::Field& field() const { return *S_.field(); }

  const std::vector<Subspace>& points() const { return points_; }
  int point_count() const { return static_cast<int>(points_.size()); }
  int point_index(const Subspace& p) const;
  int point_index_vec(const Vec& v) const;
  bool collinear(int i, int j) const {
    return (collin_[static_cast<size_t>(i) * words_ + (j >> 6)] >> (j & 63)) & 1;
  }

  // All singular subspaces of projective dimension d, canonically ordered.
  const std::vector<Subspace>& singular_subspaces(int d);

  bool is_opposite(const Subspace& U, const Subspace& V) const;
  bool is_opposite_with_perp(const Subspace& U, const Subspace& perpV) const;

  Subspace perp(const Subspace& U) const { return S_.perp(U); }

  // Lower projection: S inside U maps to perp(S) meet V.
  Subspace project_lower(const Subspace& U, const Subspace& V, const Subspace& S) const;
  // Upper projection: S containing U maps to join(V, S meet perp(V)).
  Subspace project_upper(const Subspace& U, const Subspace& V, const Subspace& S,
                         const Subspace& perpV) const;
  Subspace project_upper(const Subspace& U, const Subspace& V, const Subspace& S) const;

  ResiduePtr residue(const Subspace& U, Side side);

  // Points of the space collinear with every point of each given subspace.
  std::vector<int> common_perp_points(const std::vector<Subspace>& subs) const;

  // For a point index, the set of points collinear with it (including itself).
  std::vector<int> perp_points(int pi) const;

  std::string describe() const { return S_.classical_name(); }

private:
  explicit PolarSpace(const FormSpec& S) : S_(S) {}
  void enumerate_points(size_t cap);
  void fill_collinearity();
  void validate();
  ResiduePtr build_residue(const Subspace& U, Side side);

  FormSpec S_;
  std::vector<Subspace> points_;
  std::unordered_map<std::string, int> point_idx_;
  size_t words_ = 0;
  std::vector<uint64_t> collin_;
  std::map<int, std::vector<Subspace>> sing_cache_;
  std::map<std::pair<std::string, int>, ResiduePtr> residue_cache_;
};

using SpacePtr = std::shared_ptr<PolarSpace>;

// True iff S (a set of residue-point ids) is a subspace of the residue
// meeting every residue line. Rank-1 residues have no lines; any subset
// passes vacuously.
bool geometric_hyperplane_check(const Residue& R, const std::set<int>& S);

// The q+1 one-dimensional subspaces of a 2-dimensional subspace.
std::vector<Subspace> points_of_line(const Subspace& L);

} // namespace polproj::polar

#endif
