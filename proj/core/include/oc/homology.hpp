#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <vector>

#include "oc/relations.hpp"
#include "oc/surface_type.hpp"
#include "oc/term.hpp"

namespace oc {

using Rational = boost::multiprecision::cpp_rational;

/// A formal rational combination of terms, keyed by canonical encoding.
/// All member terms share one type and one degree; coefficients nonzero.
struct ClassVector {
  std::map<std::string, Rational> coef;

  bool zero() const { return coef.empty(); }
};

ClassVector make_class(const Term& t, const Rational& c = 1);
ClassVector add_scaled(ClassVector a, const ClassVector& b, const Rational& c);

/// Sparse exact-rational relation matrix; rows are ClassVectors.
struct RationalMatrix {
  std::vector<ClassVector> rows;
};

/// All relation rows available inside the span (one shared type and degree).
RationalMatrix instantiate_relations(const std::vector<Term>& span);

/// Graded dimensions of a path component at a vertex cap, with metadata.
struct GradedDims {
  std::map<int, int> dims;  // only nonzero entries
  int cap = 0;
  bool stabilized = false;  // unchanged when recomputed at cap-1
};

/// Span/relations rank computation for one component at one cap.  Caches the
/// per-degree spans and the reduced relation matrices.
class ComponentBasis {
 public:
  ComponentBasis(SurfaceType s, int cap);

  const SurfaceType& type() const { return type_; }
  int cap() const { return cap_; }

  /// degree -> dimension (nonzero only).  Throws std::runtime_error
  /// ("insufficient cap") when the cap admits no term at all.
  std::map<int, int> dims() const;

  /// Basis classes: for each degree ascending, the non-pivot span terms in
  /// canonical order, as singleton classes.
  std::vector<ClassVector> basis() const;

  /// Coordinates of v in basis() order.  Terms outside the span raise
  /// std::invalid_argument; v must live on this component.
  std::vector<Rational> reduce(const ClassVector& v) const;

  /// True iff adding the redundant relation family changes no rank.
  bool redundant_family_checks_out() const;

 private:
  struct Slice {
    std::vector<Term> span;
    std::map<std::string, int> index;
    std::vector<std::map<int, Rational>> rref;  // reduced rows
    std::vector<int> pivot_of_row;
    std::map<int, int> row_of_pivot;
  };
  static Slice make_slice(const std::vector<Term>& span, bool with_redundant);
  SurfaceType type_;
  int cap_;
  std::map<int, Slice> slices_;  // degree -> slice (only nonempty spans)
};

GradedDims graded_dims(const SurfaceType& s, int cap);
std::vector<ClassVector> canonical_basis(const SurfaceType& s, int cap);
std::vector<Rational> reduce_class(const ClassVector& v,
                                   const ComponentBasis& basis);
bool check_r6_redundancy(const SurfaceType& s, int cap);

/// Boundary contraction: glues open inputs i and j of a class along their
/// shared boundary circle.  Zero when i and j are not open inputs on one
/// circle.  Degree-0 classes only (the acceptance surface of the engine).
ClassVector psi_contract_class(const ClassVector& v, int i, int j);

/// Class-level puncture permutation over slots 1..n+1 (n+1 = the output).
/// Degree-0 classes are transported semantically through their normal forms;
/// the identity permutation is supported in any degree.
ClassVector cyclic_act_class(const ClassVector& v,
                             const std::vector<int>& sigma);

/// Poincaré polynomial (coefficient vector, index = degree) of the
/// configuration model with f framed and l in {0,1} unframed points:
/// prod_{j=1}^{f+l-1} (1 + j t) * (1 + t)^f.
std::vector<long long> oracle_poincare(int framed, int unframed);

}  // namespace oc
