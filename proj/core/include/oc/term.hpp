#pragma once
// Generator-built trees: the elements of the free 2-colored dioperad.
//
// A Term is a finite set of generator vertices wired output-port-to-input-port
// so that the underlying graph is a tree (composition never creates genus).
// Unwired ("free") ports carry puncture labels.  Terms are rigid planar
// structures: ports are ordered, and no algebraic identification happens at
// this level — commutativity/associativity live in the relation engine.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "oc/surface_type.hpp"

namespace oc {

/// The nine generators.
///   Mc : closed multiplication       (closed, closed) -> closed
///   Mo : open multiplication         (open, open) -> open, one boundary
///   Ec : closed unit                 () -> closed
///   Eo : open unit                   () -> open
///   C2o: closed-to-open zipper       closed -> open
///   O2c: open-to-closed zipper       open -> closed
///   Cc : closed comultiplication     closed -> (closed, closed)
///   Co : open comultiplication       open -> (open, open), one boundary
///   Bv : boundary rotation operator  closed -> closed, degree 1
enum class Gen : std::uint8_t { Mc, Mo, Ec, Eo, C2o, O2c, Cc, Co, Bv };
inline constexpr int kGenCount = 9;

/// A port on a generator: polarity plus 0-based position.
struct GenPort {
  Polarity pol;
  int port;
  friend bool operator==(const GenPort&, const GenPort&) = default;
};

struct GenInfo {
  const char* name;                      // lower-case tag, e.g. "c2o"
  int n_in, n_out;
  std::array<Color, 2> in_color, out_color;
  int degree;
  // Boundary circles of the standalone generator, as cyclic sequences of
  // its own open ports (closed ports never lie on a boundary).
  std::vector<std::vector<GenPort>> cycles;
};

const GenInfo& info(Gen g);
Gen gen_from_name(const std::string& name);
/// The generator's interface type with standard labels (inputs 1i.., outputs 1o..).
SurfaceType signature_type(Gen g);

/// Tree of generators.  Vertices are indexed 0..size()-1; in[v][p] / out[v][p]
/// describe input/output port p of vertex v: either wired to a peer port or
/// free with a Label.
struct Term {
  struct InSlot {
    int src = -1, src_port = -1;  // wired to out port src_port of vertex src
    Label label{};                // meaningful when src < 0
    bool wired() const { return src >= 0; }
  };
  struct OutSlot {
    int dst = -1, dst_port = -1;
    Label label{};
    bool wired() const { return dst >= 0; }
  };
  std::vector<Gen> gens;
  std::vector<std::array<InSlot, 2>> in;
  std::vector<std::array<OutSlot, 2>> out;

  int size() const { return static_cast<int>(gens.size()); }
};

/// Single-vertex term with the generator's standard labels.
Term make_generator(Gen g);

/// Structural checks: wire tables mutually consistent, colors matched across
/// wires, graph a connected tree, free labels polarity-correct and distinct.
/// When require_contiguous (default), free labels must cover 1..n / 1..m.
/// Throws std::invalid_argument on violation.
void validate_term(const Term& t, bool require_contiguous = true);

/// Number of Bv vertices.
int degree(const Term& t);

/// Free ports listed as (label, vertex, port), sorted by label.
struct FreePort {
  Label label;
  int vertex, port;
};
std::vector<FreePort> free_inputs(const Term& t);
std::vector<FreePort> free_outputs(const Term& t);

/// Glue free output `o` of provider `f` to free input `i` of receiver `g`
/// (colors must agree).  Free ports renumber by the standard splicing
/// convention (see surface_type.hpp).  The two operands are disjoint trees,
/// so the result is again a tree; genus-creating wirings can only be
/// expressed in the wiring document format and are rejected by its parser.
Term compose(const Term& f, Label o, const Term& g, Label i);

/// Relabel free ports (same contract as surface_type relabel).
Term act_symmetric(const Term& t, const std::vector<int>& in_perm,
                   const std::vector<int>& out_perm);

/// The type of the path component the term's surface lies in: fold of the
/// sewing operations over the wires, starting from the generator signature
/// types.  Independent of fold order.
SurfaceType type_of(const Term& t);

/// Boundary structure at port granularity: each boundary circle of the
/// term's surface as a cyclic sequence of free open ports; when
/// with_phi_markers, a marker entry records where each fully-consumed
/// closed-to-open vertex sits on its circle (used by the contraction engine).
struct CycleEntry {
  enum Kind { FreePortRef, PhiMarker } kind;
  int vertex;
  int port;       // FreePortRef only
  Polarity pol;   // FreePortRef only
};
struct BoundaryStructure {
  std::vector<std::vector<CycleEntry>> cycles;  // markers included if requested
};
BoundaryStructure boundary_structure(const Term& t, bool with_phi_markers);

/// Deterministic injective encoding.  Traversal starts at the free output
/// with the least label and walks the tree; the encoding determines the term
/// up to vertex renumbering.  decode inverts it.
std::string canonical_encode(const Term& t);
Term canonical_decode(const std::string& text);

/// Label-blind encoding: free ports print as "?", and the result is minimized
/// over all free-output roots, so two terms agree iff they are the same tree
/// after forgetting free-port labels.  Accepts partially labelled terms.
std::string encode_shape(const Term& t);

/// Term equality up to vertex renumbering.
bool equal_terms(const Term& a, const Term& b);

/// Vertices in the order the canonical traversal first reaches them.
std::vector<int> canonical_vertex_order(const Term& t);

/// Koszul sign of a permutation acting on graded elements: the product of
/// (-1)^(d_a * d_b) over pairs that exchange their relative order.  sigma is
/// given one-line: position p of the result holds element sigma[p] (0-based
/// indices into degrees).
int shuffle_sign(const std::vector<int>& degrees, const std::vector<int>& sigma);

}  // namespace oc
