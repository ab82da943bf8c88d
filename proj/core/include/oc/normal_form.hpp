#pragma once

#include <vector>

#include "oc/surface_type.hpp"
#include "oc/term.hpp"

namespace oc {

enum class NormalForm { Form1, Form2, Form3, NotNormal };

/// Shape classification of a degree-0 term.
///   Form1: tree built entirely from the open generators (mo, eo, co).
///   Form2: closed root output; green tree (mc, ec, cc) whose open content
///          hangs in all-open subtrees under o2c vertices; no c2o anywhere.
///   Form3: open root output; exactly one c2o, feeding an otherwise all-open
///          tree, with a Form2-shaped green core below the c2o.
/// Priority Form1 > Form2 > Form3; anything else is NotNormal.
NormalForm classify_form(const Term& t);

/// Spine of open generators realizing `word` as the beginning of a boundary
/// circle, with an unlabeled running output (the carrier) closing the circle.
/// Reading the result's circle from the first letter: word + carrier.  Inputs
/// become mo attachments, outputs co attachments; a maximal all-input run at
/// the end of the word seeds a plain mo comb, otherwise the seed is eo.
/// The carrier's position is returned for the caller to label or consume.
Term build_open_spine(const std::vector<Label>& word, int& carrier_vertex,
                      int& carrier_port);

/// Form1 tree for a single boundary circle: the spine over the circle
/// linearized to end at `root`, whose carrier then takes the root label.
/// Throws if root is not on the cycle or any label is repeated.
Term build_form1(const std::vector<Label>& cycle, Label root);

/// The canonical degree-0 representative of the component S:
///   - Form1 when S is a single nonempty boundary and nothing else;
///   - Form2 when S has a closed output (root = least closed output);
///   - Form3 otherwise (root = least open output).
/// Accepts non-contiguous label sets.  Throws when S has no output.
Term build_normal_form(const SurfaceType& S);

/// Canonical form of a degree-0 term: build_normal_form(type_of(t)).
/// Throws std::invalid_argument when degree(t) > 0.
Term normalize0(const Term& t);

/// Degree-0 equivalence: same path component, i.e. equal types.
bool equiv0(const Term& a, const Term& b);

/// Spanning candidates for the homology of S in the given degree: the
/// canonical skeleton dressed with at most one degree-1 vertex on each
/// dressing slot (closed input stems, o2c outputs, closed output stems),
/// where coinciding slots count once.  Terms above max_vertices are dropped.
std::vector<Term> enumerate_normal_candidates(const SurfaceType& S, int degree,
                                              int max_vertices);

}  // namespace oc
