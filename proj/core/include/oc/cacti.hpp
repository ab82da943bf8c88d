#pragma once

#include <optional>
#include <string>

#include "oc/surface_type.hpp"

namespace oc {

struct ManifoldDims {
  int m = 0;  // ambient dimension
  int k = 0;  // submanifold dimension, 0 <= k <= m
};

enum class OutputKind { Closed, Open };

/// Lobe/interval bookkeeping data of a one-output path component.
/// Ghost-edge law: closed output -> ghost_edges = circles - 1;
/// open output -> ghost_edges = circles.  Black components are only known
/// when the descriptor came from a full type.
struct CactiDescriptor {
  int c = 0;        // closed inputs
  int o = 0;        // open inputs
  int circles = 0;  // lobes
  int ghost_edges = 0;
  OutputKind output_kind = OutputKind::Closed;
  std::optional<int> black_intervals, black_circles;

  std::optional<int> b() const {
    if (black_intervals && black_circles)
      return *black_intervals + *black_circles;
    return std::nullopt;
  }
};

/// Degree or codimension as a linear form a*m + b*k in the manifold
/// dimensions.
struct LinearForm {
  long long m_coef = 0, k_coef = 0;

  long long eval(ManifoldDims d) const { return m_coef * d.m + k_coef * d.k; }
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
  std::string str() const;  // e.g. "-(m-k)", "-2k", "0"
};

/// Descriptor of a one-output type: c / o count closed / open inputs;
/// closed output: circles = c + #boundaries, black circles = #empty
/// boundaries; open output: circles = c + #boundaries - 1 (the output's
/// boundary flattens to the outer interval).  One black interval per open
/// input; ghost edges from the law.  Throws unless S has exactly one output.
CactiDescriptor desc_from_type(const SurfaceType& s);

/// Validates the ghost-edge law and count ranges; throws on violation.
void validate(const CactiDescriptor& d);

LinearForm operation_degree_form(const CactiDescriptor& d);
long long operation_degree(const CactiDescriptor& d, ManifoldDims dims);

/// b*k + ghost*m - degree; requires known black components.
LinearForm embedding_codim_form(const CactiDescriptor& d);
long long embedding_codim(const CactiDescriptor& d, ManifoldDims dims);

/// Descriptor of d1 with one input (of the given color) replaced by d2;
/// d2's output kind must match the color.  Black components are left
/// unknown (recompute from the composed type when needed).
CactiDescriptor compose_descriptors(const CactiDescriptor& d1, Color at,
                                    const CactiDescriptor& d2);

}  // namespace oc
