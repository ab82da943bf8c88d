#include "oc/homology.hpp"

#include <algorithm>
#include <stdexcept>

#include "oc/enumerate.hpp"
#include "oc/normal_form.hpp"

namespace oc {

ClassVector make_class(const Term& t, const Rational& c) {
  ClassVector v;
  if (c != 0) v.coef[canonical_encode(t)] = c;
  return v;
}

ClassVector add_scaled(ClassVector a, const ClassVector& b, const Rational& c) {
  if (c == 0) return a;
  for (const auto& [k, x] : b.coef) {
    Rational& slot = a.coef[k];
    slot += x * c;
    if (slot == 0) a.coef.erase(k);
  }
  return a;
}

RationalMatrix instantiate_relations(const std::vector<Term>& span) {
  std::vector<std::string> enc;
  enc.reserve(span.size());
  for (const Term& t : span) enc.push_back(canonical_encode(t));
  RationalMatrix m;
  for (const SparseIntRow& row : relation_rows(span, false)) {
    ClassVector v;
    for (const auto& [i, c] : row) v.coef[enc[i]] = c;
    m.rows.push_back(std::move(v));
  }
  return m;
}

namespace {

using SparseRow = std::map<int, Rational>;

// `c` is taken by value: callers pass coefficients that live inside `r`
// itself, and the subtraction below may erase that entry mid-loop.
void axpy(SparseRow& r, Rational c, const SparseRow& s) {
  for (const auto& [k, x] : s) {
    Rational& slot = r[k];
    slot -= c * x;
    if (slot == 0) r.erase(k);
  }
}

/// Incremental reduced echelon form: rows are normalized to leading
/// coefficient 1 and every pivot column is cleared from all other rows.
struct Rref {
  std::vector<SparseRow> rows;
  std::vector<int> pivot_of_row;
  std::map<int, int> row_of_pivot;

  /// Eliminate all known pivot columns from r in place.
  void reduce(SparseRow& r) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [col, coef] : r) {
        auto at = row_of_pivot.find(col);
        if (at == row_of_pivot.end()) continue;
        axpy(r, coef, rows[at->second]);
        changed = true;
        break;
      }
    }
  }

  void insert(SparseRow r) {
    reduce(r);
    if (r.empty()) return;
    int p = r.begin()->first;
    Rational lead = r.begin()->second;
    for (auto& [k, x] : r) x /= lead;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto at = rows[i].find(p);
      if (at != rows[i].end()) axpy(rows[i], at->second, r);
    }
    row_of_pivot[p] = static_cast<int>(rows.size());
    rows.push_back(std::move(r));
    pivot_of_row.push_back(p);
  }
};

}  // namespace

ComponentBasis::Slice ComponentBasis::make_slice(const std::vector<Term>& span,
                                                 bool with_redundant) {
  Slice s;
  s.span = span;
  for (int i = 0; i < static_cast<int>(span.size()); ++i)
    s.index[canonical_encode(span[i])] = i;
  Rref rref;
  for (const SparseIntRow& row : relation_rows(span, with_redundant)) {
    SparseRow r;
    for (const auto& [i, c] : row) r[i] = c;
    rref.insert(std::move(r));
  }
  s.rref = std::move(rref.rows);
  s.pivot_of_row = std::move(rref.pivot_of_row);
  s.row_of_pivot = std::move(rref.row_of_pivot);
  return s;
}

ComponentBasis::ComponentBasis(SurfaceType s, int cap)
    : type_(canonicalized(std::move(s))), cap_(cap) {
  validate(type_);
  if (cap_ < 1) throw std::invalid_argument("vertex cap must be positive");
  for (int d = 0; d <= cap_; ++d) {
    std::vector<Term> span = enumerate_terms(type_, d, cap_);
    if (span.empty()) continue;
    slices_.emplace(d, make_slice(span, false));
  }
}

std::map<int, int> ComponentBasis::dims() const {
  if (slices_.empty())
    throw std::runtime_error("insufficient cap: no representative fits");
  std::map<int, int> out;
  for (const auto& [d, slice] : slices_) {
    int dim = static_cast<int>(slice.span.size() - slice.rref.size());
    if (dim > 0) out[d] = dim;
  }
  return out;
}

std::vector<ClassVector> ComponentBasis::basis() const {
  if (slices_.empty())
    throw std::runtime_error("insufficient cap: no representative fits");
  std::vector<ClassVector> out;
  for (const auto& [d, slice] : slices_)
    for (int i = 0; i < static_cast<int>(slice.span.size()); ++i)
      if (!slice.row_of_pivot.count(i))
        out.push_back(make_class(slice.span[i]));
  return out;
}

std::vector<Rational> ComponentBasis::reduce(const ClassVector& v) const {
  if (slices_.empty())
    throw std::runtime_error("insufficient cap: no representative fits");
  // Split v by degree slice; unknown keys are outside the span.
  std::map<int, SparseRow> by_degree;
  for (const auto& [key, c] : v.coef) {
    bool placed = false;
    for (const auto& [d, slice] : slices_) {
      auto at = slice.index.find(key);
      if (at != slice.index.end()) {
        by_degree[d][at->second] = c;
        placed = true;
        break;
      }
    }
    if (!placed)
      throw std::invalid_argument("class member outside the cached span: " +
                                  key);
  }
  std::vector<Rational> out;
  for (const auto& [d, slice] : slices_) {
    SparseRow x;
    auto at = by_degree.find(d);
    if (at != by_degree.end()) x = at->second;
    for (std::size_t r = 0; r < slice.rref.size(); ++r) {
      auto hit = x.find(slice.pivot_of_row[r]);
      if (hit == x.end()) continue;
      Rational c = hit->second;
      for (const auto& [k, y] : slice.rref[r]) {
        Rational& slot = x[k];
        slot -= c * y;
        if (slot == 0) x.erase(k);
      }
    }
    for (int i = 0; i < static_cast<int>(slice.span.size()); ++i) {
      if (slice.row_of_pivot.count(i)) continue;
      auto hit = x.find(i);
      out.push_back(hit == x.end() ? Rational(0) : hit->second);
    }
  }
  return out;
}

bool ComponentBasis::redundant_family_checks_out() const {
  for (const auto& [d, slice] : slices_) {
    Slice with = make_slice(slice.span, true);
    if (with.rref.size() != slice.rref.size()) return false;
  }
  return true;
}

GradedDims graded_dims(const SurfaceType& s, int cap) {
  ComponentBasis basis(s, cap);
  GradedDims out;
  out.dims = basis.dims();
  out.cap = cap;
  out.stabilized = false;
  if (cap > 1) {
    try {
      ComponentBasis prev(s, cap - 1);
      out.stabilized = prev.dims() == out.dims;
    } catch (const std::runtime_error&) {
      out.stabilized = false;
    }
  }
  return out;
}

std::vector<ClassVector> canonical_basis(const SurfaceType& s, int cap) {
  return ComponentBasis(s, cap).basis();
}

std::vector<Rational> reduce_class(const ClassVector& v,
                                   const ComponentBasis& basis) {
  return basis.reduce(v);
}

bool check_r6_redundancy(const SurfaceType& s, int cap) {
  return ComponentBasis(s, cap).redundant_family_checks_out();
}

namespace {

/// Shared decode step for the class-level type actions: all members must be
/// degree 0 and lie on one path component; returns the common type and the
/// coefficient sum (degree-0 members of one component are all equivalent).
SurfaceType common_type_degree0(const ClassVector& v, Rational& total,
                                const char* what) {
  SurfaceType type;
  bool first = true;
  total = 0;
  for (const auto& [key, c] : v.coef) {
    Term t = canonical_decode(key);
    if (degree(t) != 0)
      throw std::invalid_argument(std::string(what) +
                                  " supports degree-0 classes only");
    SurfaceType s = type_of(t);
    if (first) {
      type = s;
      first = false;
    } else if (!(s == type)) {
      throw std::invalid_argument(std::string(what) +
                                  ": class mixes path components");
    }
    total += c;
  }
  return type;
}

}  // namespace

ClassVector psi_contract_class(const ClassVector& v, int i, int j) {
  if (v.zero()) return {};
  Rational total;
  SurfaceType type = common_type_degree0(v, total, "contraction");
  const std::vector<Label>* cycle_i = nullptr;
  const std::vector<Label>* cycle_j = nullptr;
  for (const auto& cyc : type.boundaries) {
    for (Label l : cyc) {
      if (l == in_label(i)) cycle_i = &cyc;
      if (l == in_label(j)) cycle_j = &cyc;
    }
  }
  if (!cycle_i || !cycle_j || cycle_i != cycle_j) return {};
  if (total == 0) return {};
  SurfaceType sewn = self_sew_open(type, i, j);
  return make_class(build_normal_form(sewn), total);
}

ClassVector cyclic_act_class(const ClassVector& v,
                             const std::vector<int>& sigma) {
  bool identity = true;
  for (int k = 0; k < static_cast<int>(sigma.size()); ++k)
    if (sigma[k] != k + 1) identity = false;
  if (identity) return v;
  if (v.zero()) return {};
  Rational total;
  SurfaceType type = common_type_degree0(v, total, "cyclic action");
  SurfaceType moved = cyclic_act(type, sigma);
  if (total == 0) return {};
  return make_class(build_normal_form(moved), total);
}

std::vector<long long> oracle_poincare(int framed, int unframed) {
  if (framed < 0 || unframed < 0 || unframed > 1)
    throw std::invalid_argument(
        "expects framed >= 0 and unframed in {0, 1}");
  std::vector<long long> poly{1};
  auto times = [&poly](long long a) {
    // multiply by (1 + a t)
    std::vector<long long> next(poly.size() + 1, 0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k] += poly[k];
      next[k + 1] += a * poly[k];
    }
    poly = std::move(next);
  };
  for (int j = 1; j <= framed + unframed - 1; ++j) times(j);
  for (int j = 0; j < framed; ++j) times(1);
  while (poly.size() > 1 && poly.back() == 0) poly.pop_back();
  return poly;
}

}  // namespace oc
