#include "oc/cacti.hpp"

#include <stdexcept>

namespace oc {

namespace {

void check_dims(ManifoldDims d) {
  if (d.k < 0 || d.k > d.m)
    throw std::invalid_argument("manifold dimensions need 0 <= k <= m");
}

int law_ghosts(int circles, OutputKind kind) {
  return kind == OutputKind::Closed ? circles - 1 : circles;
}

}  // namespace

std::string LinearForm::str() const {
  auto piece = [](long long coef, const char* var) -> std::string {
    if (coef == 0) return "";
    std::string r = coef < 0 ? "-" : "+";
    if (coef != 1 && coef != -1) r += std::to_string(coef < 0 ? -coef : coef);
    return r + var;
  };
  std::string s = piece(m_coef, "m") + piece(k_coef, "k");
  if (s.empty()) return "0";
  if (s[0] == '+') s.erase(0, 1);
  return s;
}

void validate(const CactiDescriptor& d) {
  if (d.c < 0 || d.o < 0 || d.circles < 0 || d.ghost_edges < 0)
    throw std::invalid_argument("descriptor counts must be nonnegative");
  if (d.circles < d.c)
    throw std::invalid_argument("need at least one lobe per closed input");
  if (d.ghost_edges != law_ghosts(d.circles, d.output_kind))
    throw std::invalid_argument("ghost-edge count violates the lobe law");
  if ((d.black_intervals && *d.black_intervals < 0) ||
      (d.black_circles && *d.black_circles < 0))
    throw std::invalid_argument("descriptor counts must be nonnegative");
}

CactiDescriptor desc_from_type(const SurfaceType& s) {
  if (count_outputs(s) != 1)
    throw std::invalid_argument("descriptor needs exactly one output");
  CactiDescriptor d;
  d.c = count_punctures(s, Polarity::In, Color::Closed);
  d.o = count_punctures(s, Polarity::In, Color::Open);
  int boundaries = static_cast<int>(s.boundaries.size());
  bool closed_out = count_punctures(s, Polarity::Out, Color::Closed) == 1;
  d.output_kind = closed_out ? OutputKind::Closed : OutputKind::Open;
  d.circles = d.c + boundaries - (closed_out ? 0 : 1);
  d.black_circles = count_empty_boundaries(s);
  d.black_intervals = d.o;
  d.ghost_edges = law_ghosts(d.circles, d.output_kind);
  validate(d);
  return d;
}

LinearForm operation_degree_form(const CactiDescriptor& d) {
  validate(d);
  if (d.output_kind == OutputKind::Closed)
    return {-(d.circles - 1), -d.o};
  return {-d.circles, -(d.o - 1)};
}

long long operation_degree(const CactiDescriptor& d, ManifoldDims dims) {
  check_dims(dims);
  return operation_degree_form(d).eval(dims);
}

LinearForm embedding_codim_form(const CactiDescriptor& d) {
  validate(d);
  auto b = d.b();
  if (!b)
    throw std::invalid_argument(
        "codimension needs black components; derive the descriptor from a type");
  LinearForm deg = operation_degree_form(d);
  return {d.ghost_edges - deg.m_coef, *b - deg.k_coef};
}

long long embedding_codim(const CactiDescriptor& d, ManifoldDims dims) {
  check_dims(dims);
  return embedding_codim_form(d).eval(dims);
}

CactiDescriptor compose_descriptors(const CactiDescriptor& d1, Color at,
                                    const CactiDescriptor& d2) {
  validate(d1);
  validate(d2);
  if ((at == Color::Closed) != (d2.output_kind == OutputKind::Closed))
    throw std::invalid_argument("provider output kind does not match the input");
  CactiDescriptor r;
  r.output_kind = d1.output_kind;
  if (at == Color::Closed) {
    if (d1.c < 1)
      throw std::invalid_argument("receiver has no closed input to fill");
    r.circles = d1.circles + d2.circles - 1;
    r.c = d1.c + d2.c - 1;
    r.o = d1.o + d2.o;
  } else {
    if (d1.o < 1)
      throw std::invalid_argument("receiver has no open input to fill");
    r.circles = d1.circles + d2.circles;
    r.o = d1.o + d2.o - 1;
    r.c = d1.c + d2.c;
  }
  r.ghost_edges = law_ghosts(r.circles, r.output_kind);
  validate(r);
  return r;
}

}  // namespace oc
