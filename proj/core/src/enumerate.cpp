#include "oc/enumerate.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>

namespace oc {

namespace {

int category(Polarity p, Color c) {
  return static_cast<int>(p) * 2 + static_cast<int>(c);
}

struct PortCounts {
  int n[4] = {0, 0, 0, 0};
  int& at(Polarity p, Color c) { return n[category(p, c)]; }
  int at(Polarity p, Color c) const { return n[category(p, c)]; }
};

PortCounts free_counts(const Term& t) {
  PortCounts pc;
  for (int v = 0; v < t.size(); ++v) {
    const GenInfo& gi = info(t.gens[v]);
    for (int p = 0; p < gi.n_in; ++p)
      if (!t.in[v][p].wired()) ++pc.at(Polarity::In, gi.in_color[p]);
    for (int p = 0; p < gi.n_out; ++p)
      if (!t.out[v][p].wired()) ++pc.at(Polarity::Out, gi.out_color[p]);
  }
  return pc;
}

int empty_cycles(const Term& t) {
  int n = 0;
  for (const auto& c : boundary_structure(t, false).cycles)
    if (c.empty()) ++n;
  return n;
}

int bv_count(const Term& t) {
  int n = 0;
  for (Gen g : t.gens)
    if (g == Gen::Bv) ++n;
  return n;
}

Term bare_generator(Gen g) {
  Term t = make_generator(g);
  for (auto& a : t.in[0]) a.label = {};
  for (auto& a : t.out[0]) a.label = {};
  return t;
}

/// Grows `base` by one vertex of kind g whose port (gpol, gport) is wired to
/// the free port (v, pol, port) of base.
Term attach(const Term& base, int v, Polarity pol, int port, Gen g, int gport) {
  Term t = base;
  int w = t.size();
  t.gens.push_back(g);
  t.in.emplace_back();
  t.out.emplace_back();
  if (pol == Polarity::In) {
    t.in[v][port] = {w, gport, {}};
    t.out[w][gport] = {v, port, {}};
  } else {
    t.out[v][port] = {w, gport, {}};
    t.in[w][gport] = {v, port, {}};
  }
  return t;
}

struct SearchLimits {
  int max_vertices;
  int max_degree;
  bool targeted = false;
  PortCounts target;
  int target_empties = 0;
};

bool admissible(const Term& t, const SearchLimits& lim) {
  if (bv_count(t) > lim.max_degree) return false;
  if (!lim.targeted) return true;
  if (empty_cycles(t) > lim.target_empties) return false;
  PortCounts pc = free_counts(t);
  int excess = 0;
  for (int c = 0; c < 4; ++c) excess += std::max(0, pc.n[c] - lim.target.n[c]);
  return excess <= lim.max_vertices - t.size();
}

/// All shapes (terms with unlabeled free ports) admissible under the limits,
/// grown breadth-first by leaf attachment, deduplicated by encode_shape.
std::vector<Term> enumerate_shapes(const SearchLimits& lim) {
  std::vector<Term> all;
  std::set<std::string> seen;
  std::vector<Term> frontier;
  for (int k = 0; k < kGenCount; ++k) {
    Term t = bare_generator(static_cast<Gen>(k));
    if (!admissible(t, lim)) continue;
    if (seen.insert(encode_shape(t)).second) {
      all.push_back(t);
      frontier.push_back(t);
    }
  }
  while (!frontier.empty()) {
    std::vector<Term> next;
    for (const Term& t : frontier) {
      if (t.size() >= lim.max_vertices) continue;
      for (int v = 0; v < t.size(); ++v) {
        const GenInfo& gi = info(t.gens[v]);
        for (int p = 0; p < gi.n_in; ++p) {
          if (t.in[v][p].wired()) continue;
          for (int k = 0; k < kGenCount; ++k) {
            Gen g = static_cast<Gen>(k);
            const GenInfo& ni = info(g);
            for (int q = 0; q < ni.n_out; ++q) {
              if (ni.out_color[q] != gi.in_color[p]) continue;
              Term grown = attach(t, v, Polarity::In, p, g, q);
              if (!admissible(grown, lim)) continue;
              if (seen.insert(encode_shape(grown)).second) {
                all.push_back(grown);
                next.push_back(std::move(grown));
              }
            }
          }
        }
        for (int p = 0; p < gi.n_out; ++p) {
          if (t.out[v][p].wired()) continue;
          for (int k = 0; k < kGenCount; ++k) {
            Gen g = static_cast<Gen>(k);
            const GenInfo& ni = info(g);
            for (int q = 0; q < ni.n_in; ++q) {
              if (ni.in_color[q] != gi.out_color[p]) continue;
              Term grown = attach(t, v, Polarity::Out, p, g, q);
              if (!admissible(grown, lim)) continue;
              if (seen.insert(encode_shape(grown)).second) {
                all.push_back(grown);
                next.push_back(std::move(grown));
              }
            }
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return all;
}

struct CategoryLabels {
  std::vector<Label> labels;  // sorted; permuted over the ports
};

/// All assignments of the per-category label sets onto the shape's free
/// ports, appended to `out` when the predicate keeps them.
template <typename Keep>
void label_shape(const Term& shape, std::array<std::vector<Label>, 4> labels,
                 const Keep& keep, std::vector<Term>& out) {
  std::array<std::vector<std::pair<int, int>>, 4> ports;  // (vertex, port)
  for (int v = 0; v < shape.size(); ++v) {
    const GenInfo& gi = info(shape.gens[v]);
    for (int p = 0; p < gi.n_in; ++p)
      if (!shape.in[v][p].wired())
        ports[category(Polarity::In, gi.in_color[p])].push_back({v, p});
    for (int p = 0; p < gi.n_out; ++p)
      if (!shape.out[v][p].wired())
        ports[category(Polarity::Out, gi.out_color[p])].push_back({v, p});
  }
  for (int c = 0; c < 4; ++c) {
    if (ports[c].size() != labels[c].size()) return;
    std::sort(labels[c].begin(), labels[c].end());
  }
  Term t = shape;
  // Nested permutation loop over the four categories.
  auto assign = [&](int c) {
    bool in = c < 2;
    for (std::size_t k = 0; k < ports[c].size(); ++k) {
      auto [v, p] = ports[c][k];
      if (in)
        t.in[v][p].label = labels[c][k];
      else
        t.out[v][p].label = labels[c][k];
    }
  };
  bool more0 = true;
  while (more0) {
    assign(0);
    bool more1 = true;
    while (more1) {
      assign(1);
      bool more2 = true;
      while (more2) {
        assign(2);
        bool more3 = true;
        while (more3) {
          assign(3);
          if (keep(t)) out.push_back(t);
          more3 = std::next_permutation(labels[3].begin(), labels[3].end());
        }
        more2 = std::next_permutation(labels[2].begin(), labels[2].end());
      }
      more1 = std::next_permutation(labels[1].begin(), labels[1].end());
    }
    more0 = std::next_permutation(labels[0].begin(), labels[0].end());
  }
}

}  // namespace

std::vector<Term> enumerate_terms(const SurfaceType& S0, int degree,
                                  int max_vertices) {
  if (degree < 0 || max_vertices < 1)
    throw std::invalid_argument("degree and vertex cap must be sensible");
  SurfaceType S = canonicalized(S0);
  SearchLimits lim;
  lim.max_vertices = max_vertices;
  lim.max_degree = degree;
  lim.targeted = true;
  lim.target_empties = count_empty_boundaries(S);

  std::array<std::vector<Label>, 4> labels;
  for (Label l : S.closed) labels[category(l.pol, Color::Closed)].push_back(l);
  for (const auto& b : S.boundaries)
    for (Label l : b) labels[category(l.pol, Color::Open)].push_back(l);
  for (int c = 0; c < 4; ++c)
    lim.target.n[c] = static_cast<int>(labels[c].size());

  std::vector<Term> out;
  for (const Term& shape : enumerate_shapes(lim)) {
    if (bv_count(shape) != degree) continue;
    PortCounts pc = free_counts(shape);
    bool exact = true;
    for (int c = 0; c < 4; ++c) exact &= pc.n[c] == lim.target.n[c];
    if (!exact || empty_cycles(shape) != lim.target_empties) continue;
    label_shape(shape, labels,
                [&S](const Term& t) { return type_of(t) == S; }, out);
  }
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    return canonical_encode(a) < canonical_encode(b);
  });
  return out;
}

std::vector<Term> enumerate_terms_by_size(int max_vertices, int degree) {
  if (degree < 0 || max_vertices < 1)
    throw std::invalid_argument("degree and vertex cap must be sensible");
  SearchLimits lim;
  lim.max_vertices = max_vertices;
  lim.max_degree = degree;

  std::vector<Term> out;
  for (const Term& shape : enumerate_shapes(lim)) {
    if (bv_count(shape) != degree) continue;
    PortCounts pc = free_counts(shape);
    std::array<std::vector<Label>, 4> labels;
    // Split the shared 1..n index space per polarity over the two colors in
    // every possible way, then permute within categories.
    int n_in = pc.at(Polarity::In, Color::Closed) + pc.at(Polarity::In, Color::Open);
    int n_out = pc.at(Polarity::Out, Color::Closed) + pc.at(Polarity::Out, Color::Open);
    std::vector<bool> in_closed(n_in, false), out_closed(n_out, false);
    std::fill(in_closed.begin(),
              in_closed.begin() + pc.at(Polarity::In, Color::Closed), true);
    std::fill(out_closed.begin(),
              out_closed.begin() + pc.at(Polarity::Out, Color::Closed), true);
    std::sort(in_closed.begin(), in_closed.end());
    std::sort(out_closed.begin(), out_closed.end());
    do {
      auto oc_choice = out_closed;
      std::sort(oc_choice.begin(), oc_choice.end());
      do {
        for (auto& v : labels) v.clear();
        for (int k = 0; k < n_in; ++k)
          labels[category(Polarity::In,
                          in_closed[k] ? Color::Closed : Color::Open)]
              .push_back(in_label(k + 1));
        for (int k = 0; k < n_out; ++k)
          labels[category(Polarity::Out,
                          oc_choice[k] ? Color::Closed : Color::Open)]
              .push_back(out_label(k + 1));
        label_shape(shape, labels, [](const Term&) { return true; }, out);
      } while (std::next_permutation(oc_choice.begin(), oc_choice.end()));
    } while (std::next_permutation(in_closed.begin(), in_closed.end()));
  }
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    return canonical_encode(a) < canonical_encode(b);
  });
  return out;
}

}  // namespace oc
