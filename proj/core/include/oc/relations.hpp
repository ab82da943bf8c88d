#pragma once

#include <map>
#include <string>
#include <vector>

#include "oc/term.hpp"

namespace oc {

/// One summand of a relation equation: an integer coefficient and a pattern
/// term whose free inputs are typed slots and whose free outputs are the
/// shared interface.  A "bare" summand stands for a slot passed straight
/// through to an output (the right side of a unit law).
struct RelationPattern {
  int coeff = 1;
  Term term;
  bool bare = false;
  Label bare_in{}, bare_out{};
};

/// A homogeneous equation sum(coeff_k * pattern_k) = 0; all patterns share
/// one interface type and one slot set (matched label-to-label).
struct RelationEquation {
  std::vector<RelationPattern> patterns;
};

/// A named relation family.  `redundant` marks the family that is provably
/// a consequence of the others and is therefore excluded from the base
/// relation matrix (a dedicated check verifies the redundancy by rank).
struct RelationTemplate {
  std::string id;
  std::vector<RelationEquation> equations;
  bool redundant = false;
};

/// The generating relation families of the engine, in fixed order.
const std::vector<RelationTemplate>& relation_templates();

/// A sparse relation row over span indices; coefficients are small integers
/// (signs from the Koszul rule times the equation coefficients).
using SparseIntRow = std::map<int, long long>;

/// Every relation row obtainable by matching an equation pattern inside a
/// span term and rewriting it to the other summands, kept only when every
/// resulting term lies in `span` (all members must share a type and degree
/// and be sorted by canonical_encode).  Rows are normalized and
/// deduplicated.  include_redundant controls the flagged family.
std::vector<SparseIntRow> relation_rows(const std::vector<Term>& span,
                                        bool include_redundant);

}  // namespace oc
