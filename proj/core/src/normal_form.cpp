#include "oc/normal_form.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace oc {

namespace {

bool is_red(Gen g) { return g == Gen::Mo || g == Gen::Eo || g == Gen::Co; }

/// Vertex set of the input-side subtree hanging at (v, port).
void collect_subtree(const Term& t, int v, std::set<int>& out) {
  if (!out.insert(v).second) return;
  const GenInfo& gi = info(t.gens[v]);
  for (int p = 0; p < gi.n_in; ++p)
    if (t.in[v][p].wired()) collect_subtree(t, t.in[v][p].src, out);
}

bool form2_shaped(const Term& t, const std::set<int>& scope) {
  // Within scope: no c2o, no bv, and red vertices feed only red vertices or
  // o2c (the green part never feeds red without a c2o).
  for (int v : scope) {
    Gen g = t.gens[v];
    if (g == Gen::C2o || g == Gen::Bv) return false;
    const GenInfo& gi = info(t.gens[v]);
    for (int p = 0; p < gi.n_out; ++p) {
      const auto& s = t.out[v][p];
      if (!s.wired() || !scope.count(s.dst)) continue;
      Gen h = t.gens[s.dst];
      if (is_red(g) && !is_red(h) && h != Gen::O2c) return false;
      if (!is_red(g) && g != Gen::O2c && is_red(h)) return false;
      if (g == Gen::O2c && is_red(h)) return false;  // o2c output is closed
    }
  }
  return true;
}

}  // namespace

NormalForm classify_form(const Term& t) {
  validate_term(t, false);
  bool all_red = true;
  int c2o = -1, c2o_count = 0;
  for (int v = 0; v < t.size(); ++v) {
    if (!is_red(t.gens[v])) all_red = false;
    if (t.gens[v] == Gen::Bv) return NormalForm::NotNormal;
    if (t.gens[v] == Gen::C2o) {
      c2o = v;
      ++c2o_count;
    }
  }
  if (all_red) return NormalForm::Form1;
  if (c2o_count == 0) {
    std::set<int> everything;
    for (int v = 0; v < t.size(); ++v) everything.insert(v);
    return form2_shaped(t, everything) ? NormalForm::Form2
                                       : NormalForm::NotNormal;
  }
  if (c2o_count > 1) return NormalForm::NotNormal;
  // Form3 candidate: the single c2o must feed a red vertex, its input
  // subtree must be Form2-shaped, and everything outside must be red.
  const auto& out = t.out[c2o][0];
  if (!out.wired() || !is_red(t.gens[out.dst])) return NormalForm::NotNormal;
  std::set<int> below;
  if (t.in[c2o][0].wired()) collect_subtree(t, t.in[c2o][0].src, below);
  for (int v = 0; v < t.size(); ++v) {
    if (v == c2o || below.count(v)) continue;
    if (!is_red(t.gens[v])) return NormalForm::NotNormal;
  }
  if (!form2_shaped(t, below)) return NormalForm::NotNormal;
  return NormalForm::Form3;
}

namespace {

struct Builder {
  Term t;

  int add(Gen g) {
    t.gens.push_back(g);
    t.in.emplace_back();
    t.out.emplace_back();
    return t.size() - 1;
  }
  void wire(int v, int p, int w, int q) {
    t.out[v][p] = {w, q, {}};
    t.in[w][q] = {v, p, {}};
  }
};

struct Carrier {
  int vertex = -1, port = -1;
};

/// Machine step state for the open spine; see build_open_spine.
Carrier spine_into(Builder& b, const std::vector<Label>& word) {
  int n = static_cast<int>(word.size());
  int k = 0;  // maximal all-input suffix length
  while (k < n && word[n - 1 - k].pol == Polarity::In) ++k;

  Carrier c;
  int next = n;  // first unprocessed index from the right
  if (k >= 2) {
    int first = n - k;
    int m0 = b.add(Gen::Mo);
    b.t.in[m0][0].label = word[first];
    b.t.in[m0][1].label = word[first + 1];
    c = {m0, 0};
    for (int j = first + 2; j < n; ++j) {
      int m = b.add(Gen::Mo);
      b.wire(c.vertex, c.port, m, 0);
      b.t.in[m][1].label = word[j];
      c = {m, 0};
    }
    next = first;
  } else {
    int e = b.add(Gen::Eo);
    c = {e, 0};
  }
  for (int j = next - 1; j >= 0; --j) {
    if (word[j].pol == Polarity::In) {
      int m = b.add(Gen::Mo);
      b.t.in[m][0].label = word[j];
      b.wire(c.vertex, c.port, m, 1);
      c = {m, 0};
    } else {
      int v = b.add(Gen::Co);
      b.wire(c.vertex, c.port, v, 0);
      b.t.out[v][0].label = word[j];
      c = {v, 1};
    }
  }
  return c;
}

}  // namespace

Term build_open_spine(const std::vector<Label>& word, int& carrier_vertex,
                      int& carrier_port) {
  Builder b;
  Carrier c = spine_into(b, word);
  carrier_vertex = c.vertex;
  carrier_port = c.port;
  return std::move(b.t);
}

Term build_form1(const std::vector<Label>& cycle, Label root) {
  if (root.pol != Polarity::Out)
    throw std::invalid_argument("the root of a spine must be an output");
  std::set<Label> seen(cycle.begin(), cycle.end());
  if (seen.size() != cycle.size())
    throw std::invalid_argument("repeated label on the cycle");
  auto at = std::find(cycle.begin(), cycle.end(), root);
  if (at == cycle.end())
    throw std::invalid_argument("root " + to_string(root) + " not on cycle");
  std::vector<Label> word;
  std::size_t pos = at - cycle.begin();
  for (std::size_t k = 1; k < cycle.size(); ++k)
    word.push_back(cycle[(pos + k) % cycle.size()]);
  Builder b;
  Carrier c = spine_into(b, word);
  b.t.out[c.vertex][c.port].label = root;
  validate_term(b.t, false);
  return std::move(b.t);
}

namespace {

/// A pending core input: either a bare closed leaf or a built subtree whose
/// closed output is the attachment point.
struct Provider {
  bool leaf = false;
  Label leaf_label{};
  Carrier out{};  // when !leaf: the closed output to consume
};

struct CoreBuild {
  // Result: either a term part with a carrier, or an unconsumed bare leaf
  // (the caller materializes it into its consumer directly).
  bool bare = false;
  Label bare_label{};
  Carrier out{};
};

std::vector<Provider> make_providers(Builder& b, const SurfaceType& S,
                                     const std::vector<Label>* skip_boundary) {
  std::vector<Provider> ps;
  std::vector<Label> closed_in;
  for (Label l : S.closed)
    if (l.pol == Polarity::In) closed_in.push_back(l);
  std::sort(closed_in.begin(), closed_in.end());
  for (Label l : closed_in) ps.push_back({true, l, {}});
  for (const auto& cyc : S.boundaries) {
    if (cyc.empty()) continue;
    if (skip_boundary && cyc == *skip_boundary) continue;
    Carrier c = spine_into(b, cyc);
    int v = b.add(Gen::O2c);
    b.wire(c.vertex, c.port, v, 0);
    ps.push_back({false, {}, {v, 0}});
  }
  for (int e = 0; e < count_empty_boundaries(S); ++e) {
    int eo = b.add(Gen::Eo);
    int v = b.add(Gen::O2c);
    b.wire(eo, 0, v, 0);
    ps.push_back({false, {}, {v, 0}});
  }
  return ps;
}

CoreBuild fold_core(Builder& b, const std::vector<Provider>& ps) {
  if (ps.empty()) {
    int e = b.add(Gen::Ec);
    return {false, {}, {e, 0}};
  }
  if (ps.size() == 1) {
    if (ps[0].leaf) return {true, ps[0].leaf_label, {}};
    return {false, {}, ps[0].out};
  }
  auto feed = [&b](const Provider& p, int v, int port) {
    if (p.leaf)
      b.t.in[v][port].label = p.leaf_label;
    else
      b.wire(p.out.vertex, p.out.port, v, port);
  };
  int m = b.add(Gen::Mc);
  feed(ps[0], m, 0);
  feed(ps[1], m, 1);
  Carrier acc{m, 0};
  for (std::size_t k = 2; k < ps.size(); ++k) {
    int m2 = b.add(Gen::Mc);
    b.wire(acc.vertex, acc.port, m2, 0);
    feed(ps[k], m2, 1);
    acc = {m2, 0};
  }
  return {false, {}, acc};
}

}  // namespace

Term build_normal_form(const SurfaceType& S0) {
  SurfaceType S = canonicalized(S0);
  std::vector<Label> closed_out, open_out;
  for (Label l : S.closed)
    if (l.pol == Polarity::Out) closed_out.push_back(l);
  for (const auto& cyc : S.boundaries)
    for (Label l : cyc)
      if (l.pol == Polarity::Out) open_out.push_back(l);
  if (closed_out.empty() && open_out.empty())
    throw std::invalid_argument("component has no output");

  Builder b;
  if (!closed_out.empty()) {
    // Closed root: green fold, then a comultiplication ladder for the
    // extra closed outputs.
    std::sort(closed_out.begin(), closed_out.end());
    Label root = closed_out.front();
    auto ps = make_providers(b, S, nullptr);
    CoreBuild core = fold_core(b, ps);
    Carrier c;
    if (closed_out.size() == 1) {
      if (core.bare) {
        int m = b.add(Gen::Mc);
        b.t.in[m][0].label = core.bare_label;
        int e = b.add(Gen::Ec);
        b.wire(e, 0, m, 1);
        c = {m, 0};
      } else {
        c = core.out;
      }
    } else {
      c = core.out;
      for (std::size_t k = closed_out.size() - 1; k >= 1; --k) {
        int v = b.add(Gen::Cc);
        if (k == closed_out.size() - 1 && core.bare)
          b.t.in[v][0].label = core.bare_label;
        else
          b.wire(c.vertex, c.port, v, 0);
        b.t.out[v][1].label = closed_out[k];
        c = {v, 0};
      }
    }
    b.t.out[c.vertex][c.port].label = root;
    validate_term(b.t, false);
    return std::move(b.t);
  }

  std::sort(open_out.begin(), open_out.end());
  Label root = open_out.front();
  const std::vector<Label>* root_boundary = nullptr;
  for (const auto& cyc : S.boundaries)
    if (std::find(cyc.begin(), cyc.end(), root) != cyc.end())
      root_boundary = &cyc;
  bool pure_single = S.closed.empty() && S.boundaries.size() == 1;
  if (pure_single) return build_form1(*root_boundary, root);

  // Open root with extra structure: red spine over the root boundary whose
  // deepest stem carries the re-opened green core.
  auto ps = make_providers(b, S, root_boundary);
  CoreBuild core = fold_core(b, ps);
  int c2o = b.add(Gen::C2o);
  if (core.bare)
    b.t.in[c2o][0].label = core.bare_label;
  else
    b.wire(core.out.vertex, core.out.port, c2o, 0);
  std::vector<Label> word;
  std::size_t pos =
      std::find(root_boundary->begin(), root_boundary->end(), root) -
      root_boundary->begin();
  for (std::size_t k = 1; k < root_boundary->size(); ++k)
    word.push_back((*root_boundary)[(pos + k) % root_boundary->size()]);
  Carrier spine = spine_into(b, word);
  int m = b.add(Gen::Mo);
  b.wire(c2o, 0, m, 0);
  b.wire(spine.vertex, spine.port, m, 1);
  b.t.out[m][0].label = root;
  validate_term(b.t, false);
  return std::move(b.t);
}

Term normalize0(const Term& t) {
  if (degree(t) != 0)
    throw std::invalid_argument("only degree-0 terms have a canonical form");
  return build_normal_form(type_of(t));
}

bool equiv0(const Term& a, const Term& b) {
  if (degree(a) != 0 || degree(b) != 0)
    throw std::invalid_argument("degree-0 equivalence needs degree-0 terms");
  return type_of(a) == type_of(b);
}

namespace {

struct Slot {
  enum Kind { FreeIn, OutPort } kind;
  int vertex, port;
};

}  // namespace

std::vector<Term> enumerate_normal_candidates(const SurfaceType& S, int deg,
                                              int max_vertices) {
  if (deg < 0) throw std::invalid_argument("degree must be nonnegative");
  Term nf = build_normal_form(S);

  // Dressing slots: closed input stems, o2c outputs, closed output stems and
  // the stems feeding c2o / the comultiplication ladder; a wire shared by
  // two descriptions counts once.
  std::vector<Slot> slots;
  std::set<std::pair<int, int>> out_seen;
  auto add_out = [&](int v, int p) {
    if (out_seen.insert({v, p}).second) slots.push_back({Slot::OutPort, v, p});
  };
  bool wrapped_leaf = false;
  // The Mc(x, ec) wrap exists only to materialize a lone closed input; its
  // two closed stems are one abstract wire, carried by the leaf slot.
  if (nf.size() == 2 && nf.gens[0] == Gen::Mc && nf.gens[1] == Gen::Ec &&
      !nf.in[0][0].wired())
    wrapped_leaf = true;
  for (int v = 0; v < nf.size(); ++v) {
    const GenInfo& gi = info(nf.gens[v]);
    for (int p = 0; p < gi.n_in; ++p)
      if (!nf.in[v][p].wired() && gi.in_color[p] == Color::Closed)
        slots.push_back({Slot::FreeIn, v, p});
    if (nf.gens[v] == Gen::O2c) add_out(v, 0);
    if (nf.gens[v] == Gen::C2o || nf.gens[v] == Gen::Cc) {
      const auto& s = nf.in[v][0];
      if (s.wired()) add_out(s.src, s.src_port);
    }
    if (!wrapped_leaf)
      for (int p = 0; p < gi.n_out; ++p)
        if (!nf.out[v][p].wired() && gi.out_color[p] == Color::Closed)
          add_out(v, p);
  }

  std::vector<Term> out;
  int n = static_cast<int>(slots.size());
  if (deg > n) return out;
  std::vector<int> pick(deg);
  for (int k = 0; k < deg; ++k) pick[k] = k;
  while (true) {
    Term t = nf;
    if (wrapped_leaf && deg > 0) {
      // Materialize the dressed lone leaf without the unit wrap.
      Builder b;
      int bv = b.add(Gen::Bv);
      b.t.in[bv][0].label = nf.in[0][0].label;
      b.t.out[bv][0].label = nf.out[0][0].label;
      t = std::move(b.t);
    } else {
      for (int k = deg - 1; k >= 0; --k) {
        const Slot& s = slots[pick[k]];
        int bv = t.size();
        t.gens.push_back(Gen::Bv);
        t.in.emplace_back();
        t.out.emplace_back();
        if (s.kind == Slot::FreeIn) {
          t.in[bv][0].label = t.in[s.vertex][s.port].label;
          t.in[s.vertex][s.port] = {bv, 0, {}};
          t.out[bv][0] = {s.vertex, s.port, {}};
        } else {
          auto& o = t.out[s.vertex][s.port];
          if (o.wired()) {
            t.in[o.dst][o.dst_port] = {bv, 0, {}};
            t.out[bv][0] = {o.dst, o.dst_port, {}};
          } else {
            t.out[bv][0].label = o.label;
          }
          o = {bv, 0, {}};
          t.in[bv][0] = {s.vertex, s.port, {}};
        }
      }
    }
    if (t.size() <= max_vertices) {
      validate_term(t, false);
      out.push_back(std::move(t));
    }
    if (deg == 0) break;
    int k = deg - 1;
    while (k >= 0 && pick[k] == n - deg + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int j = k + 1; j < deg; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    return canonical_encode(a) < canonical_encode(b);
  });
  return out;
}

}  // namespace oc
