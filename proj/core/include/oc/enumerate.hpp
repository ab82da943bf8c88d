#pragma once

#include <vector>

#include "oc/surface_type.hpp"
#include "oc/term.hpp"

namespace oc {

/// Exhaustive list of terms t with type_of(t) = S, degree(t) = d and at most
/// max_vertices vertices, deduplicated structurally and sorted by
/// canonical_encode.  S may carry non-contiguous labels (as produced by
/// boundary self-sewing); the terms then use S's actual label set.
std::vector<Term> enumerate_terms(const SurfaceType& S, int degree,
                                  int max_vertices);

/// All terms of the given degree with at most max_vertices vertices across
/// every interface, labels assigned contiguously per polarity in every
/// possible way.  Sorted by canonical_encode.
std::vector<Term> enumerate_terms_by_size(int max_vertices, int degree);

}  // namespace oc
