#include "oc/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>
#include <tuple>

namespace oc {

namespace {

const GenInfo kInfo[kGenCount] = {
    // Mc
    {"mc", 2, 1, {Color::Closed, Color::Closed}, {Color::Closed, Color::Closed},
     0, {}},
    // Mo
    {"mo", 2, 1, {Color::Open, Color::Open}, {Color::Open, Color::Open}, 0,
     {{{Polarity::In, 0}, {Polarity::In, 1}, {Polarity::Out, 0}}}},
    // Ec
    {"ec", 0, 1, {}, {Color::Closed, Color::Closed}, 0, {}},
    // Eo
    {"eo", 0, 1, {}, {Color::Open, Color::Open}, 0, {{{Polarity::Out, 0}}}},
    // C2o
    {"c2o", 1, 1, {Color::Closed, Color::Closed}, {Color::Open, Color::Open}, 0,
     {{{Polarity::Out, 0}}}},
    // O2c
    {"o2c", 1, 1, {Color::Open, Color::Open}, {Color::Closed, Color::Closed}, 0,
     {{{Polarity::In, 0}}}},
    // Cc
    {"cc", 1, 2, {Color::Closed, Color::Closed}, {Color::Closed, Color::Closed},
     0, {}},
    // Co: its single boundary reads (input, second output, first output).
    {"co", 1, 2, {Color::Open, Color::Open}, {Color::Open, Color::Open}, 0,
     {{{Polarity::In, 0}, {Polarity::Out, 1}, {Polarity::Out, 0}}}},
    // Bv
    {"bv", 1, 1, {Color::Closed, Color::Closed}, {Color::Closed, Color::Closed},
     1, {}},
};

Color port_color(Gen g, Polarity pol, int port) {
  const GenInfo& gi = info(g);
  return pol == Polarity::In ? gi.in_color[port] : gi.out_color[port];
}

}  // namespace

const GenInfo& info(Gen g) { return kInfo[static_cast<int>(g)]; }

Gen gen_from_name(const std::string& name) {
  for (int k = 0; k < kGenCount; ++k)
    if (name == kInfo[k].name) return static_cast<Gen>(k);
  throw std::invalid_argument("unknown generator tag '" + name + "'");
}

SurfaceType signature_type(Gen g) {
  const GenInfo& gi = info(g);
  SurfaceType s;
  std::set<std::pair<int, int>> on_cycle;  // (pol, port)
  for (const auto& cyc : gi.cycles) {
    std::vector<Label> labels;
    for (GenPort p : cyc) {
      on_cycle.insert({static_cast<int>(p.pol), p.port});
      labels.push_back(p.pol == Polarity::In ? in_label(p.port + 1)
                                             : out_label(p.port + 1));
    }
    s.boundaries.push_back(std::move(labels));
  }
  for (int p = 0; p < gi.n_in; ++p)
    if (!on_cycle.count({static_cast<int>(Polarity::In), p}))
      s.closed.push_back(in_label(p + 1));
  for (int p = 0; p < gi.n_out; ++p)
    if (!on_cycle.count({static_cast<int>(Polarity::Out), p}))
      s.closed.push_back(out_label(p + 1));
  return canonicalized(std::move(s));
}

Term make_generator(Gen g) {
  const GenInfo& gi = info(g);
  Term t;
  t.gens.push_back(g);
  t.in.emplace_back();
  t.out.emplace_back();
  for (int p = 0; p < gi.n_in; ++p) t.in[0][p].label = in_label(p + 1);
  for (int p = 0; p < gi.n_out; ++p) t.out[0][p].label = out_label(p + 1);
  return t;
}

void validate_term(const Term& t, bool require_contiguous) {
  int V = t.size();
  if (V == 0) throw std::invalid_argument("term has no vertices");
  if (static_cast<int>(t.in.size()) != V || static_cast<int>(t.out.size()) != V)
    throw std::invalid_argument("malformed term tables");
  int wires = 0;
  std::vector<std::vector<int>> adj(V);
  std::set<Label> in_labels, out_labels;
  for (int v = 0; v < V; ++v) {
    const GenInfo& gi = info(t.gens[v]);
    for (int p = 0; p < gi.n_in; ++p) {
      const auto& s = t.in[v][p];
      if (s.wired()) {
        if (s.src < 0 || s.src >= V)
          throw std::invalid_argument("wire source out of range");
        const GenInfo& sg = info(t.gens[s.src]);
        if (s.src_port < 0 || s.src_port >= sg.n_out)
          throw std::invalid_argument("wire source port out of range");
        const auto& o = t.out[s.src][s.src_port];
        if (o.dst != v || o.dst_port != p)
          throw std::invalid_argument("wire tables inconsistent");
        if (sg.out_color[s.src_port] != gi.in_color[p])
          throw std::invalid_argument("wire joins ports of different colors");
        ++wires;
        adj[v].push_back(s.src);
        adj[s.src].push_back(v);
      } else {
        if (s.label.pol != Polarity::In || s.label.index < 1)
          throw std::invalid_argument("free input carries a bad label");
        if (!in_labels.insert(s.label).second)
          throw std::invalid_argument("duplicate free input label " +
                                      to_string(s.label));
      }
    }
    for (int p = 0; p < gi.n_out; ++p) {
      const auto& s = t.out[v][p];
      if (s.wired()) {
        if (s.dst < 0 || s.dst >= V)
          throw std::invalid_argument("wire target out of range");
        const auto& i = t.in[s.dst][s.dst_port];
        if (!i.wired() || i.src != v || i.src_port != p)
          throw std::invalid_argument("wire tables inconsistent");
      } else {
        if (s.label.pol != Polarity::Out || s.label.index < 1)
          throw std::invalid_argument("free output carries a bad label");
        if (!out_labels.insert(s.label).second)
          throw std::invalid_argument("duplicate free output label " +
                                      to_string(s.label));
      }
    }
  }
  if (out_labels.empty())
    throw std::invalid_argument("term has no free output");
  if (wires != V - 1)
    throw std::invalid_argument("wiring is not a tree (genus or disconnection)");
  std::vector<bool> seen(V, false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw std::invalid_argument("term is not connected");
  if (require_contiguous) {
    int k = 1;
    for (Label l : in_labels)
      if (l.index != k++)
        throw std::invalid_argument("free input labels not contiguous");
    k = 1;
    for (Label l : out_labels)
      if (l.index != k++)
        throw std::invalid_argument("free output labels not contiguous");
  }
}

int degree(const Term& t) {
  int d = 0;
  for (Gen g : t.gens)
    if (g == Gen::Bv) ++d;
  return d;
}

std::vector<FreePort> free_inputs(const Term& t) {
  std::vector<FreePort> r;
  for (int v = 0; v < t.size(); ++v)
    for (int p = 0; p < info(t.gens[v]).n_in; ++p)
      if (!t.in[v][p].wired()) r.push_back({t.in[v][p].label, v, p});
  std::sort(r.begin(), r.end(),
            [](const FreePort& a, const FreePort& b) { return a.label < b.label; });
  return r;
}

std::vector<FreePort> free_outputs(const Term& t) {
  std::vector<FreePort> r;
  for (int v = 0; v < t.size(); ++v)
    for (int p = 0; p < info(t.gens[v]).n_out; ++p)
      if (!t.out[v][p].wired()) r.push_back({t.out[v][p].label, v, p});
  std::sort(r.begin(), r.end(),
            [](const FreePort& a, const FreePort& b) { return a.label < b.label; });
  return r;
}

namespace {

struct PortPos {
  int vertex = -1, port = -1;
};

PortPos find_free_out(const Term& t, Label l) {
  for (int v = 0; v < t.size(); ++v)
    for (int p = 0; p < info(t.gens[v]).n_out; ++p)
      if (!t.out[v][p].wired() && t.out[v][p].label == l) return {v, p};
  return {};
}

PortPos find_free_in(const Term& t, Label l) {
  for (int v = 0; v < t.size(); ++v)
    for (int p = 0; p < info(t.gens[v]).n_in; ++p)
      if (!t.in[v][p].wired() && t.in[v][p].label == l) return {v, p};
  return {};
}

}  // namespace

Term compose(const Term& f, Label o, const Term& g, Label i) {
  if (o.pol != Polarity::Out || i.pol != Polarity::In)
    throw std::invalid_argument("compose needs an output label and an input label");
  PortPos po = find_free_out(f, o);
  if (po.vertex < 0)
    throw std::invalid_argument("provider has no free output " + to_string(o));
  PortPos pi = find_free_in(g, i);
  if (pi.vertex < 0)
    throw std::invalid_argument("receiver has no free input " + to_string(i));
  if (port_color(f.gens[po.vertex], Polarity::Out, po.port) !=
      port_color(g.gens[pi.vertex], Polarity::In, pi.port))
    throw std::invalid_argument("color mismatch gluing " + to_string(o) +
                                " to " + to_string(i));

  int n_f = static_cast<int>(free_inputs(f).size());
  int m_f = static_cast<int>(free_outputs(f).size());
  int n_g = static_cast<int>(free_inputs(g).size());
  int m_g = static_cast<int>(free_outputs(g).size());

  Term r = f;
  int off = f.size();
  for (int v = 0; v < g.size(); ++v) {
    r.gens.push_back(g.gens[v]);
    auto in = g.in[v];
    auto out = g.out[v];
    for (auto& s : in)
      if (s.wired()) s.src += off;
    for (auto& s : out)
      if (s.wired()) s.dst += off;
    r.in.push_back(in);
    r.out.push_back(out);
  }
  // Relabel free ports: receiver inputs before i keep their index, provider
  // inputs splice in at i; provider outputs before o keep, receiver outputs
  // splice in at o.
  for (int v = 0; v < off; ++v) {
    for (auto& s : r.in[v])
      if (!s.wired() && s.label.index > 0)
        s.label.index += i.index - 1;
    for (auto& s : r.out[v])
      if (!s.wired() && s.label.index > o.index)
        s.label.index += m_g - 1;
  }
  for (int v = off; v < r.size(); ++v) {
    for (auto& s : r.in[v])
      if (!s.wired() && s.label.index > i.index)
        s.label.index += n_f - 1;
    for (auto& s : r.out[v])
      if (!s.wired() && s.label.index > 0)
        s.label.index += o.index - 1;
  }
  r.out[po.vertex][po.port] = {pi.vertex + off, pi.port, {}};
  r.in[pi.vertex + off][pi.port] = {po.vertex, po.port, {}};
  validate_term(r);
  (void)n_f;
  (void)n_g;
  (void)m_f;
  return r;
}

Term act_symmetric(const Term& t, const std::vector<int>& in_perm,
                   const std::vector<int>& out_perm) {
  auto ins = free_inputs(t);
  auto outs = free_outputs(t);
  auto check = [](const std::vector<int>& p, std::size_t sz, const char* what) {
    if (p.size() != sz)
      throw std::invalid_argument(std::string(what) + " permutation has wrong size");
    std::vector<bool> hit(sz + 1, false);
    for (int v : p) {
      if (v < 1 || v > static_cast<int>(sz) || hit[v])
        throw std::invalid_argument(std::string(what) +
                                    " permutation is not a bijection");
      hit[v] = true;
    }
  };
  check(in_perm, ins.size(), "input");
  check(out_perm, outs.size(), "output");
  Term r = t;
  for (const FreePort& fp : ins)
    r.in[fp.vertex][fp.port].label = in_label(in_perm[fp.label.index - 1]);
  for (const FreePort& fp : outs)
    r.out[fp.vertex][fp.port].label = out_label(out_perm[fp.label.index - 1]);
  validate_term(r);
  return r;
}

BoundaryStructure boundary_structure(const Term& t, bool with_phi_markers) {
  std::vector<std::vector<CycleEntry>> cycles;
  for (int v = 0; v < t.size(); ++v)
    for (const auto& cyc : info(t.gens[v]).cycles) {
      std::vector<CycleEntry> c;
      for (GenPort p : cyc)
        c.push_back({CycleEntry::FreePortRef, v, p.port, p.pol});
      cycles.push_back(std::move(c));
    }

  auto locate = [&cycles](int v, Polarity pol, int port) {
    for (std::size_t c = 0; c < cycles.size(); ++c)
      for (std::size_t k = 0; k < cycles[c].size(); ++k) {
        const CycleEntry& e = cycles[c][k];
        if (e.kind == CycleEntry::FreePortRef && e.vertex == v &&
            e.pol == pol && e.port == port)
          return std::pair<std::size_t, std::size_t>{c, k};
      }
    throw std::logic_error("open port missing from boundary bookkeeping");
  };
  auto piece_after = [&cycles](std::pair<std::size_t, std::size_t> at) {
    const auto& c = cycles[at.first];
    std::vector<CycleEntry> r;
    for (std::size_t k = 1; k < c.size(); ++k)
      r.push_back(c[(at.second + k) % c.size()]);
    return r;
  };

  for (int v = 0; v < t.size(); ++v) {
    const GenInfo& gi = info(t.gens[v]);
    for (int p = 0; p < gi.n_out; ++p) {
      const auto& s = t.out[v][p];
      if (!s.wired() || gi.out_color[p] != Color::Open) continue;
      auto at_o = locate(v, Polarity::Out, p);
      auto at_i = locate(s.dst, Polarity::In, s.dst_port);
      if (at_o.first == at_i.first)
        throw std::logic_error("open self-splice would create genus");
      std::vector<CycleEntry> merged = piece_after(at_i);
      if (with_phi_markers && t.gens[v] == Gen::C2o)
        merged.push_back({CycleEntry::PhiMarker, v, 0, Polarity::Out});
      auto rest = piece_after(at_o);
      merged.insert(merged.end(), rest.begin(), rest.end());
      std::size_t hi = std::max(at_o.first, at_i.first);
      std::size_t lo = std::min(at_o.first, at_i.first);
      cycles.erase(cycles.begin() + hi);
      cycles.erase(cycles.begin() + lo);
      cycles.push_back(std::move(merged));
    }
  }
  return {std::move(cycles)};
}

SurfaceType type_of(const Term& t) {
  validate_term(t, false);
  SurfaceType s;
  for (int v = 0; v < t.size(); ++v) {
    const GenInfo& gi = info(t.gens[v]);
    for (int p = 0; p < gi.n_in; ++p)
      if (!t.in[v][p].wired() && gi.in_color[p] == Color::Closed)
        s.closed.push_back(t.in[v][p].label);
    for (int p = 0; p < gi.n_out; ++p)
      if (!t.out[v][p].wired() && gi.out_color[p] == Color::Closed)
        s.closed.push_back(t.out[v][p].label);
  }
  BoundaryStructure bs = boundary_structure(t, false);
  for (const auto& cyc : bs.cycles) {
    std::vector<Label> labels;
    for (const CycleEntry& e : cyc) {
      const Label l = e.pol == Polarity::In ? t.in[e.vertex][e.port].label
                                            : t.out[e.vertex][e.port].label;
      labels.push_back(l);
    }
    s.boundaries.push_back(std::move(labels));
  }
  return canonicalized(std::move(s));
}

namespace {

// Shared canonical traversal.  Entry is the port through which the walk
// arrived; descriptors follow the fixed port order in0..in_k, out0..out_k.
struct Encoder {
  const Term& t;
  bool labeled;
  std::vector<int>* order = nullptr;

  std::string visit(int v, Polarity entry_pol, int entry_port) const {
    if (order) order->push_back(v);
    const GenInfo& gi = info(t.gens[v]);
    std::string s = gi.name;
    s += '[';
    bool first = true;
    auto emit = [&](const std::string& d) {
      if (!first) s += ',';
      first = false;
      s += d;
    };
    for (int p = 0; p < gi.n_in; ++p) {
      if (entry_pol == Polarity::In && p == entry_port) {
        emit("@");
        continue;
      }
      const auto& slot = t.in[v][p];
      if (slot.wired())
        emit(">" + visit(slot.src, Polarity::Out, slot.src_port));
      else
        emit(labeled ? to_string(slot.label) : std::string("?"));
    }
    for (int p = 0; p < gi.n_out; ++p) {
      if (entry_pol == Polarity::Out && p == entry_port) {
        emit("@");
        continue;
      }
      const auto& slot = t.out[v][p];
      if (slot.wired())
        emit(">" + visit(slot.dst, Polarity::In, slot.dst_port));
      else
        emit(labeled ? to_string(slot.label) : std::string("?"));
    }
    s += ']';
    return s;
  }
};

FreePort canonical_root(const Term& t) {
  auto outs = free_outputs(t);
  if (outs.empty()) throw std::invalid_argument("term has no free output");
  return outs.front();
}

}  // namespace

std::string canonical_encode(const Term& t) {
  FreePort root = canonical_root(t);
  Encoder e{t, true, nullptr};
  return "!" + to_string(root.label) + ":" +
         e.visit(root.vertex, Polarity::Out, root.port);
}

std::vector<int> canonical_vertex_order(const Term& t) {
  FreePort root = canonical_root(t);
  std::vector<int> order;
  Encoder e{t, true, &order};
  e.visit(root.vertex, Polarity::Out, root.port);
  return order;
}

namespace {

struct Decoder {
  const std::string& s;
  std::size_t at = 0;
  Term t;

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("bad term encoding at offset " +
                                std::to_string(at) + ": " + why);
  }
  char peek() const { return at < s.size() ? s[at] : '\0'; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++at;
  }
  Label label() {
    std::size_t start = at;
    while (at < s.size() && std::isdigit(static_cast<unsigned char>(s[at]))) ++at;
    if (start == at) fail("expected a label index");
    int idx = std::stoi(s.substr(start, at - start));
    char p = peek();
    if (p != 'i' && p != 'o') fail("expected label polarity 'i' or 'o'");
    ++at;
    return {p == 'i' ? Polarity::In : Polarity::Out, idx};
  }

  // Returns (vertex, entry polarity, entry port).
  std::tuple<int, Polarity, int> node() {
    std::size_t start = at;
    while (at < s.size() && std::isalnum(static_cast<unsigned char>(s[at]))) ++at;
    Gen g = gen_from_name(s.substr(start, at - start));
    const GenInfo& gi = info(g);
    int v = t.size();
    t.gens.push_back(g);
    t.in.emplace_back();
    t.out.emplace_back();
    expect('[');
    int entry_port = -1;
    Polarity entry_pol = Polarity::In;
    int total = gi.n_in + gi.n_out;
    for (int k = 0; k < total; ++k) {
      if (k > 0) expect(',');
      Polarity pol = k < gi.n_in ? Polarity::In : Polarity::Out;
      int port = k < gi.n_in ? k : k - gi.n_in;
      char c = peek();
      if (c == '@') {
        ++at;
        if (entry_port >= 0) fail("two entry ports on one vertex");
        entry_pol = pol;
        entry_port = port;
      } else if (c == '>') {
        ++at;
        auto [w, wpol, wport] = node();
        if (pol == Polarity::In) {
          if (wpol != Polarity::Out) fail("input wired to a non-output");
          t.in[v][port] = {w, wport, {}};
          t.out[w][wport] = {v, port, {}};
        } else {
          if (wpol != Polarity::In) fail("output wired to a non-input");
          t.out[v][port] = {w, wport, {}};
          t.in[w][wport] = {v, port, {}};
        }
      } else {
        Label l = label();
        if (pol == Polarity::In)
          t.in[v][port].label = l;
        else
          t.out[v][port].label = l;
      }
    }
    expect(']');
    if (entry_port < 0) fail("vertex without entry port");
    return {v, entry_pol, entry_port};
  }
};

}  // namespace

Term canonical_decode(const std::string& text) {
  Decoder d{text};
  d.expect('!');
  Label root = d.label();
  if (root.pol != Polarity::Out)
    throw std::invalid_argument("encoding root label must be an output");
  d.expect(':');
  auto [v, pol, port] = d.node();
  if (pol != Polarity::Out)
    throw std::invalid_argument("encoding root entry must be an output port");
  if (d.at != text.size())
    throw std::invalid_argument("trailing characters after term encoding");
  d.t.out[v][port].label = root;
  validate_term(d.t, false);
  return d.t;
}

std::string encode_shape(const Term& t) {
  Encoder e{t, false, nullptr};
  std::string best;
  for (int v = 0; v < t.size(); ++v)
    for (int p = 0; p < info(t.gens[v]).n_out; ++p)
      if (!t.out[v][p].wired()) {
        std::string s = e.visit(v, Polarity::Out, p);
        if (best.empty() || s < best) best = std::move(s);
      }
  if (best.empty()) throw std::invalid_argument("term has no free output");
  return best;
}

bool equal_terms(const Term& a, const Term& b) {
  return canonical_encode(a) == canonical_encode(b);
}

int shuffle_sign(const std::vector<int>& degrees, const std::vector<int>& sigma) {
  if (degrees.size() != sigma.size())
    throw std::invalid_argument("degree list and permutation sizes differ");
  int sign = 1;
  for (std::size_t p = 0; p < sigma.size(); ++p)
    for (std::size_t q = p + 1; q < sigma.size(); ++q) {
      int a = sigma[p], b = sigma[q];
      if (a < 0 || b < 0 || a >= static_cast<int>(degrees.size()) ||
          b >= static_cast<int>(degrees.size()))
        throw std::invalid_argument("permutation entry out of range");
      if (a > b && degrees[a] % 2 != 0 && degrees[b] % 2 != 0) sign = -sign;
    }
  return sign;
}

}  // namespace oc
