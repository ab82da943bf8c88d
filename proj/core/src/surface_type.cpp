#include "oc/surface_type.hpp"

#include <algorithm>
#include <set>

namespace oc {

std::string to_string(Label l) {
  return std::to_string(l.index) + (l.pol == Polarity::In ? "i" : "o");
}

namespace {

std::vector<Label> min_rotation(std::vector<Label> c) {
  if (c.size() < 2) return c;
  std::vector<Label> best = c;
  for (std::size_t k = 1; k < best.size(); ++k) {
    std::rotate(c.begin(), c.begin() + 1, c.end());
    if (c < best) best = c;
  }
  return best;
}

// Maps old label index -> new label index for splicing provider punctures
// into a receiver; index 0 marks the consumed puncture.
struct SpliceMaps {
  std::vector<int> s_in, s_out, t_in, t_out;
};

SpliceMaps splice_maps(int n_s, int m_s, int o, int n_t, int m_t, int i) {
  SpliceMaps r;
  r.s_in.assign(n_s + 1, 0);
  r.s_out.assign(m_s + 1, 0);
  r.t_in.assign(n_t + 1, 0);
  r.t_out.assign(m_t + 1, 0);
  for (int k = 1; k <= n_t; ++k)
    r.t_in[k] = k < i ? k : (k > i ? k + n_s - 1 : 0);
  for (int k = 1; k <= n_s; ++k) r.s_in[k] = i - 1 + k;
  for (int k = 1; k <= m_s; ++k)
    r.s_out[k] = k < o ? k : (k > o ? k + m_t - 1 : 0);
  for (int k = 1; k <= m_t; ++k) r.t_out[k] = o - 1 + k;
  return r;
}

Label map_label(Label l, const std::vector<int>& in_map,
                const std::vector<int>& out_map) {
  return {l.pol, (l.pol == Polarity::In ? in_map : out_map)[l.index]};
}

// Copy a type's punctures into `dst` through the given index maps,
// dropping the consumed puncture (mapped index 0).  Cycles keep their
// cyclic order; the dropped puncture's cycle is handled by the caller.
void copy_mapped(const SurfaceType& src, const std::vector<int>& in_map,
                 const std::vector<int>& out_map, SurfaceType& dst,
                 std::optional<int> skip_cycle) {
  for (Label l : src.closed) {
    Label n = map_label(l, in_map, out_map);
    if (n.index != 0) dst.closed.push_back(n);
  }
  for (int b = 0; b < static_cast<int>(src.boundaries.size()); ++b) {
    if (skip_cycle && *skip_cycle == b) continue;
    std::vector<Label> cyc;
    for (Label l : src.boundaries[b]) cyc.push_back(map_label(l, in_map, out_map));
    dst.boundaries.push_back(std::move(cyc));
  }
}

// Linearize a cycle starting just after the puncture at position `pos`,
// excluding that puncture.
std::vector<Label> after(const std::vector<Label>& cyc, std::size_t pos) {
  std::vector<Label> out;
  for (std::size_t k = 1; k < cyc.size(); ++k)
    out.push_back(cyc[(pos + k) % cyc.size()]);
  return out;
}

std::size_t position_in(const std::vector<Label>& cyc, Label l) {
  for (std::size_t k = 0; k < cyc.size(); ++k)
    if (cyc[k] == l) return k;
  throw std::invalid_argument("label " + to_string(l) + " not on cycle");
}

}  // namespace

SurfaceType canonicalized(SurfaceType s) {
  std::sort(s.closed.begin(), s.closed.end());
  for (auto& b : s.boundaries) b = min_rotation(std::move(b));
  std::sort(s.boundaries.begin(), s.boundaries.end(),
            [](const std::vector<Label>& a, const std::vector<Label>& b) {
              if (a.empty() != b.empty()) return b.empty();
              return a < b;
            });
  return s;
}

void validate(const SurfaceType& s, bool allow_no_output) {
  std::set<Label> seen;
  auto add = [&](Label l) {
    if (l.index < 1)
      throw std::invalid_argument("label index must be positive");
    if (!seen.insert(l).second)
      throw std::invalid_argument("duplicate label " + to_string(l));
  };
  for (Label l : s.closed) add(l);
  for (const auto& b : s.boundaries)
    for (Label l : b) add(l);
  int n = 0, m = 0;
  for (Label l : seen) (l.pol == Polarity::In ? n : m)++;
  for (int k = 1; k <= n; ++k)
    if (!seen.count(in_label(k)))
      throw std::invalid_argument("input labels not contiguous: missing " +
                                  to_string(in_label(k)));
  for (int k = 1; k <= m; ++k)
    if (!seen.count(out_label(k)))
      throw std::invalid_argument("output labels not contiguous: missing " +
                                  to_string(out_label(k)));
  if (m == 0 && !allow_no_output)
    throw std::invalid_argument("surface type needs at least one output");
}

int count_inputs(const SurfaceType& s) {
  return count_punctures(s, Polarity::In, Color::Closed) +
         count_punctures(s, Polarity::In, Color::Open);
}

int count_outputs(const SurfaceType& s) {
  return count_punctures(s, Polarity::Out, Color::Closed) +
         count_punctures(s, Polarity::Out, Color::Open);
}

int count_empty_boundaries(const SurfaceType& s) {
  int n = 0;
  for (const auto& b : s.boundaries)
    if (b.empty()) ++n;
  return n;
}

int count_punctures(const SurfaceType& s, Polarity p, Color c) {
  int n = 0;
  if (c == Color::Closed) {
    for (Label l : s.closed)
      if (l.pol == p) ++n;
  } else {
    for (const auto& b : s.boundaries)
      for (Label l : b)
        if (l.pol == p) ++n;
  }
  return n;
}

Color color_of(const SurfaceType& s, Label l) {
  for (Label c : s.closed)
    if (c == l) return Color::Closed;
  for (const auto& b : s.boundaries)
    for (Label o : b)
      if (o == l) return Color::Open;
  throw std::invalid_argument("no puncture labeled " + to_string(l));
}

bool has_label(const SurfaceType& s, Label l) {
  for (Label c : s.closed)
    if (c == l) return true;
  for (const auto& b : s.boundaries)
    for (Label o : b)
      if (o == l) return true;
  return false;
}

std::optional<int> boundary_of(const SurfaceType& s, Label l) {
  for (int b = 0; b < static_cast<int>(s.boundaries.size()); ++b)
    for (Label o : s.boundaries[b])
      if (o == l) return b;
  return std::nullopt;
}

SurfaceType sew_closed(const SurfaceType& s, int o, const SurfaceType& t, int i) {
  if (!has_label(s, out_label(o)) || color_of(s, out_label(o)) != Color::Closed)
    throw std::invalid_argument("provider has no closed output " +
                                to_string(out_label(o)));
  if (!has_label(t, in_label(i)) || color_of(t, in_label(i)) != Color::Closed)
    throw std::invalid_argument("receiver has no closed input " +
                                to_string(in_label(i)));
  auto maps = splice_maps(count_inputs(s), count_outputs(s), o, count_inputs(t),
                          count_outputs(t), i);
  SurfaceType r;
  copy_mapped(s, maps.s_in, maps.s_out, r, std::nullopt);
  copy_mapped(t, maps.t_in, maps.t_out, r, std::nullopt);
  r = canonicalized(std::move(r));
  validate(r, true);
  return r;
}

SurfaceType sew_open(const SurfaceType& s, int o, const SurfaceType& t, int i) {
  auto bs = boundary_of(s, out_label(o));
  if (!bs)
    throw std::invalid_argument("provider has no open output " +
                                to_string(out_label(o)));
  auto bt = boundary_of(t, in_label(i));
  if (!bt)
    throw std::invalid_argument("receiver has no open input " +
                                to_string(in_label(i)));
  auto maps = splice_maps(count_inputs(s), count_outputs(s), o, count_inputs(t),
                          count_outputs(t), i);
  SurfaceType r;
  copy_mapped(s, maps.s_in, maps.s_out, r, bs);
  copy_mapped(t, maps.t_in, maps.t_out, r, bt);
  const auto& cs = s.boundaries[*bs];
  const auto& ct = t.boundaries[*bt];
  std::vector<Label> merged;
  for (Label l : after(ct, position_in(ct, in_label(i))))
    merged.push_back(map_label(l, maps.t_in, maps.t_out));
  for (Label l : after(cs, position_in(cs, out_label(o))))
    merged.push_back(map_label(l, maps.s_in, maps.s_out));
  r.boundaries.push_back(std::move(merged));
  r = canonicalized(std::move(r));
  validate(r, true);
  return r;
}

SurfaceType self_sew_open(const SurfaceType& s, int i, int j) {
  if (i == j) throw std::invalid_argument("cannot glue a puncture to itself");
  auto bi = boundary_of(s, in_label(i));
  auto bj = boundary_of(s, in_label(j));
  if (!bi || !bj)
    throw std::invalid_argument("both punctures must be open inputs");
  if (*bi != *bj)
    throw std::invalid_argument("punctures lie on different boundary circles");
  const auto& cyc = s.boundaries[*bi];
  std::vector<Label> lin = after(cyc, position_in(cyc, in_label(i)));
  std::size_t pj = position_in(lin, in_label(j));
  std::vector<Label> u(lin.begin(), lin.begin() + pj);
  std::vector<Label> v(lin.begin() + pj + 1, lin.end());

  // The two glued punctures disappear; every other label keeps its name, so
  // the result's label set need not be contiguous.
  int max_in = 0;
  for (const auto& b : s.boundaries)
    for (Label l : b)
      if (l.pol == Polarity::In) max_in = std::max(max_in, l.index);
  for (Label l : s.closed)
    if (l.pol == Polarity::In) max_in = std::max(max_in, l.index);
  std::vector<int> in_map(max_in + 1, 0);
  for (int k = 1; k <= max_in; ++k)
    if (k != i && k != j) in_map[k] = k;
  int max_out = 0;
  for (const auto& b : s.boundaries)
    for (Label l : b)
      if (l.pol == Polarity::Out) max_out = std::max(max_out, l.index);
  for (Label l : s.closed)
    if (l.pol == Polarity::Out) max_out = std::max(max_out, l.index);
  std::vector<int> out_map(max_out + 1);
  for (int k = 0; k <= max_out; ++k) out_map[k] = k;

  SurfaceType r;
  copy_mapped(s, in_map, out_map, r, bi);
  r.boundaries.push_back(std::move(u));
  r.boundaries.push_back(std::move(v));
  r = canonicalized(std::move(r));
  std::set<Label> seen;
  for (Label l : r.closed)
    if (!seen.insert(l).second)
      throw std::invalid_argument("duplicate label " + to_string(l));
  for (const auto& b : r.boundaries)
    for (Label l : b)
      if (!seen.insert(l).second)
        throw std::invalid_argument("duplicate label " + to_string(l));
  return r;
}

SurfaceType relabel(const SurfaceType& s, const std::vector<int>& in_perm,
                    const std::vector<int>& out_perm) {
  int n = count_inputs(s), m = count_outputs(s);
  auto check = [](const std::vector<int>& p, int sz, const char* what) {
    if (static_cast<int>(p.size()) != sz)
      throw std::invalid_argument(std::string(what) + " permutation has wrong size");
    std::vector<bool> hit(sz + 1, false);
    for (int v : p) {
      if (v < 1 || v > sz || hit[v])
        throw std::invalid_argument(std::string(what) + " permutation is not a bijection");
      hit[v] = true;
    }
  };
  check(in_perm, n, "input");
  check(out_perm, m, "output");
  std::vector<int> in_map(n + 1), out_map(m + 1);
  for (int k = 1; k <= n; ++k) in_map[k] = in_perm[k - 1];
  for (int k = 1; k <= m; ++k) out_map[k] = out_perm[k - 1];
  SurfaceType r;
  copy_mapped(s, in_map, out_map, r, std::nullopt);
  r = canonicalized(std::move(r));
  validate(r, true);
  return r;
}

SurfaceType cyclic_act(const SurfaceType& s, const std::vector<int>& sigma) {
  int n = count_inputs(s);
  if (count_outputs(s) != 1)
    throw std::invalid_argument("cyclic action needs exactly one output");
  if (static_cast<int>(sigma.size()) != n + 1)
    throw std::invalid_argument("permutation must cover all punctures");
  std::vector<bool> hit(n + 2, false);
  for (int v : sigma) {
    if (v < 1 || v > n + 1 || hit[v])
      throw std::invalid_argument("puncture permutation is not a bijection");
    hit[v] = true;
  }
  auto act = [&](Label l) -> Label {
    int slot = l.pol == Polarity::In ? l.index : n + 1;
    int img = sigma[slot - 1];
    return img == n + 1 ? out_label(1) : in_label(img);
  };
  SurfaceType r = s;
  for (Label& l : r.closed) l = act(l);
  for (auto& b : r.boundaries)
    for (Label& l : b) l = act(l);
  r = canonicalized(std::move(r));
  validate(r, true);
  return r;
}

namespace {

// All ways to split `labels` into unordered nonempty blocks, with every
// cyclic order of each block realized (first element pinned, rest permuted).
void block_partitions(const std::vector<Label>& labels, std::size_t at,
                      std::vector<std::vector<Label>>& blocks,
                      std::vector<std::vector<std::vector<Label>>>& out) {
  if (at == labels.size()) {
    // Expand each block into its cyclic arrangements.
    std::vector<std::vector<std::vector<Label>>> arr(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      std::vector<Label> rest(blocks[b].begin() + 1, blocks[b].end());
      std::sort(rest.begin(), rest.end());
      do {
        std::vector<Label> cyc{blocks[b][0]};
        cyc.insert(cyc.end(), rest.begin(), rest.end());
        arr[b].push_back(std::move(cyc));
      } while (std::next_permutation(rest.begin(), rest.end()));
    }
    std::vector<std::vector<Label>> pick(blocks.size());
    std::vector<std::size_t> idx(blocks.size(), 0);
    while (true) {
      for (std::size_t b = 0; b < blocks.size(); ++b) pick[b] = arr[b][idx[b]];
      out.push_back(pick);
      std::size_t b = 0;
      for (; b < blocks.size(); ++b) {
        if (++idx[b] < arr[b].size()) break;
        idx[b] = 0;
      }
      if (b == blocks.size()) break;
    }
    return;
  }
  // Index loop: the recursive call grows/shrinks `blocks`, which can
  // reallocate and would invalidate range-for references.
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    blocks[bi].push_back(labels[at]);
    block_partitions(labels, at + 1, blocks, out);
    blocks[bi].pop_back();
  }
  blocks.push_back({labels[at]});
  block_partitions(labels, at + 1, blocks, out);
  blocks.pop_back();
}

}  // namespace

std::vector<SurfaceType> enumerate_types(int closed_in, int open_in,
                                         int closed_out, int open_out,
                                         int max_empty) {
  if (closed_in < 0 || open_in < 0 || closed_out < 0 || open_out < 0 ||
      max_empty < 0)
    throw std::invalid_argument("puncture counts must be nonnegative");
  std::set<SurfaceType> found;
  if (closed_out + open_out == 0) return {};
  int n = closed_in + open_in, m = closed_out + open_out;

  // Choose which input / output indices are closed.
  std::vector<bool> in_closed(n, false), out_closed(m, false);
  std::fill(in_closed.begin(), in_closed.begin() + closed_in, true);
  std::fill(out_closed.begin(), out_closed.begin() + closed_out, true);
  std::sort(in_closed.begin(), in_closed.end());
  std::sort(out_closed.begin(), out_closed.end());
  do {
    auto out_choice = out_closed;
    std::sort(out_choice.begin(), out_choice.end());
    do {
      std::vector<Label> closed, open;
      for (int k = 0; k < n; ++k)
        (in_closed[k] ? closed : open).push_back(in_label(k + 1));
      for (int k = 0; k < m; ++k)
        (out_choice[k] ? closed : open).push_back(out_label(k + 1));

      std::vector<std::vector<std::vector<Label>>> cycle_sets;
      if (open.empty()) {
        cycle_sets.push_back({});
      } else {
        std::vector<std::vector<Label>> blocks;
        block_partitions(open, 0, blocks, cycle_sets);
      }
      for (const auto& cycles : cycle_sets) {
        for (int e = 0; e <= max_empty; ++e) {
          SurfaceType s;
          s.closed = closed;
          s.boundaries = cycles;
          for (int k = 0; k < e; ++k) s.boundaries.emplace_back();
          s = canonicalized(std::move(s));
          validate(s);
          found.insert(std::move(s));
        }
      }
    } while (std::next_permutation(out_choice.begin(), out_choice.end()));
  } while (std::next_permutation(in_closed.begin(), in_closed.end()));

  return {found.begin(), found.end()};
}

}  // namespace oc
