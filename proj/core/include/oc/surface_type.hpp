#pragma once
// Boundary-decorated surface types for genus-zero open-closed sewing.
//
// A SurfaceType records, for a planar surface with labeled punctures, the set
// of closed punctures and the cyclic arrangement of open punctures on the
// boundary circles.  Open punctures sit on boundary circles in a fixed cyclic
// order; a boundary circle may carry no punctures at all (a "free" boundary).
// Punctures are labeled by polarity (input/output) and a 1-based index;
// indices of each polarity are contiguous starting at 1.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oc {

enum class Polarity : std::uint8_t { In = 0, Out = 1 };
enum class Color : std::uint8_t { Closed = 0, Open = 1 };

/// Puncture label: polarity plus 1-based index.  Ordered inputs-first,
/// then by index, so 1i < 2i < ... < 1o < 2o < ...
struct Label {
  Polarity pol = Polarity::In;
  int index = 0;

  friend auto operator<=>(const Label&, const Label&) = default;
};

inline Label in_label(int k) { return {Polarity::In, k}; }
inline Label out_label(int k) { return {Polarity::Out, k}; }

std::string to_string(Label l);

/// A surface type: closed punctures (as a sorted label set) plus boundary
/// circles (cyclic words of labels; an empty word is a puncture-free
/// boundary).  canonicalize() brings the representation to the unique normal
/// form: every cycle rotated to its lexicographically least linearization,
/// cycles sorted with puncture-free boundaries last.
struct SurfaceType {
  std::vector<Label> closed;
  std::vector<std::vector<Label>> boundaries;

  friend bool operator==(const SurfaceType&, const SurfaceType&) = default;
  friend auto operator<=>(const SurfaceType&, const SurfaceType&) = default;
};

/// Rotate each cycle to its least linearization, sort boundaries
/// (puncture-free boundaries last), sort the closed set.
SurfaceType canonicalized(SurfaceType s);

/// Structural validity: label indices of each polarity contiguous from 1
/// across the whole type, no duplicates, and (unless allow_no_output) at
/// least one output puncture.  Throws std::invalid_argument on violation.
void validate(const SurfaceType& s, bool allow_no_output = false);

/// Counting helpers.
int count_inputs(const SurfaceType& s);
int count_outputs(const SurfaceType& s);
int count_empty_boundaries(const SurfaceType& s);
/// Number of punctures of the given polarity and color.
int count_punctures(const SurfaceType& s, Polarity p, Color c);
/// Color of the puncture with the given label; throws if absent.
Color color_of(const SurfaceType& s, Label l);
bool has_label(const SurfaceType& s, Label l);
/// Index into s.boundaries of the cycle containing l, or nullopt if l is
/// closed or absent.
std::optional<int> boundary_of(const SurfaceType& s, Label l);

/// Glue output `o` of provider `s` (a closed output) to input `i` of
/// receiver `t` (a closed input).  Labels are renumbered by the splicing
/// convention: receiver inputs 1..i-1 keep their index, the provider's
/// inputs follow, then the receiver's remaining inputs; provider outputs
/// 1..o-1 keep their index, the receiver's outputs follow, then the
/// provider's remaining outputs.  Boundary circles of both sides persist.
SurfaceType sew_closed(const SurfaceType& s, int o, const SurfaceType& t, int i);

/// Glue open output `o` of provider `s` to open input `i` of receiver `t`.
/// The receiver's cycle through i and the provider's cycle through o merge
/// into one cycle: (what follows i on the receiver, then what follows o on
/// the provider).  Same renumbering convention as sew_closed.
SurfaceType sew_open(const SurfaceType& s, int o, const SurfaceType& t, int i);

/// Glue open inputs i and j of one type together (self-sewing).  Both must
/// lie on the same boundary cycle, which splits in two: linearizing the
/// cycle as (i, u..., j, v...), the results are the cycles (u...) and
/// (v...), either of which may be empty.  All surviving punctures keep
/// their original labels (no renumbering).
SurfaceType self_sew_open(const SurfaceType& s, int i, int j);

/// Relabel punctures: in_perm/out_perm map old index -> new index (1-based
/// vectors of size n/m; must be bijections).
SurfaceType relabel(const SurfaceType& s, const std::vector<int>& in_perm,
                    const std::vector<int>& out_perm);

/// Rotate the full puncture set of a one-output type: sigma is a permutation
/// of 1..n+1 where slots 1..n are the inputs and slot n+1 is the output.
/// Each puncture keeps its color and carries its new role from its image
/// slot.  Requires exactly one output.
SurfaceType cyclic_act(const SurfaceType& s, const std::vector<int>& sigma);

/// All surface types with the given puncture counts (closed inputs, open
/// inputs, closed outputs, open outputs) and at most max_empty puncture-free
/// boundaries.  Which indices are closed vs. open varies over all choices;
/// open punctures are distributed over boundary circles in all ways, with
/// all cyclic orders.  Result is canonical and duplicate-free, sorted.
std::vector<SurfaceType> enumerate_types(int closed_in, int open_in,
                                         int closed_out, int open_out,
                                         int max_empty);

}  // namespace oc
