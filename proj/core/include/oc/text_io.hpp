#pragma once

#include <string>

#include "oc/surface_type.hpp"
#include "oc/term.hpp"

namespace oc {

/// Canonical literal for a type: `{closed labels},(cycle),(cycle),...`.
/// The closed part `{...}` is omitted when it is empty and at least one
/// boundary is present, matching the usual shorthand for purely open types.
std::string print_type(const SurfaceType& s);

/// Parses a type literal (either brace form or the purely open shorthand)
/// and canonicalizes it.  Throws std::invalid_argument with line/column on
/// syntax errors, duplicate labels, or non-contiguous indices.
SurfaceType parse_type(const std::string& text);

/// Line-based wiring document for a term:
///   gen <id> <tag>
///   wire <idA>.out<k> <idB>.in<k>
///   in <label> <id>.in<k>
///   out <label> <id>.out<k>
/// Ports are 1-based in the text; ids follow the canonical traversal.
std::string print_term(const Term& t);

/// Nested expression for single-output terms, e.g. `o2c(mo(c2o(x1c),x2o))`
/// with leaves `x<i>c` / `x<i>o` naming input punctures.  Throws if the term
/// has more than one free output or a vertex with two outputs.
std::string print_term_expr(const Term& t);

/// Parses either the wiring document or the expression shorthand (detected
/// by the leading keyword).  Structural errors (color mismatch, dangling
/// port, wiring cycles) raise std::invalid_argument.
Term parse_term(const std::string& text);

}  // namespace oc
