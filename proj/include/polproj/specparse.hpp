#ifndef POLPROJ_SPECPARSE_HPP
#define POLPROJ_SPECPARSE_HPP

#include <optional>
#include <string>

#include "polproj/polar.hpp"

namespace polproj::cli {

struct ResidueSel {
  enum class What { Point, Line, Subspace, Max };
  What what = What::Point;
  int d = 0; // projective dimension
  polar::Side side = polar::Side::Upper;
  bool side_given = false;
};

struct ParsedSpec {
  forms::FormSpec form;
  std::optional<ResidueSel> residue;
};

// Surface syntax:
//   space   := kind "(" kv ("," kv)* ")"
//   kind    := "Sp" | "O" | "U"
//   kv      := ("n=" int) | ("q=" int) | ("corank=" int)
//   residue := ("point" | "line" | "subspace(d=" int ")" | "max") [":upper" | ":lower"]
// For U the q value is the base-field order; the coordinate field is GF(q^2).
ParsedSpec parse_spec(const std::string& text, unsigned field_bound = gf::kDefaultOrderBound);

std::string render_spec(const forms::FormSpec& S);
std::string render_residue(const ResidueSel& sel);

// Resolve the selector against a space: the canonically-first singular
// subspace of the requested dimension, plus the effective side.
std::pair<linalg::Subspace, polar::Side> resolve_residue(polar::PolarSpace& P,
                                                         const ResidueSel& sel);

} // namespace polproj::cli

#endif
