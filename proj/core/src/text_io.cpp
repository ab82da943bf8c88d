#include "oc/text_io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace oc {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t at = 0;

  [[noreturn]] void fail(const std::string& why) const {
    int line = 1, col = 1;
    for (std::size_t k = 0; k < at && k < s.size(); ++k) {
      if (s[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw std::invalid_argument("syntax error at " + std::to_string(line) +
                                ":" + std::to_string(col) + ": " + why);
  }
  void skip_ws() {
    while (at < s.size() && (s[at] == ' ' || s[at] == '\t')) ++at;
  }
  char peek() const { return at < s.size() ? s[at] : '\0'; }
  bool eat(char c) {
    if (peek() != c) return false;
    ++at;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  int integer() {
    std::size_t start = at;
    while (at < s.size() && std::isdigit(static_cast<unsigned char>(s[at]))) ++at;
    if (start == at) fail("expected a number");
    return std::stoi(s.substr(start, at - start));
  }
  Label label() {
    int idx = integer();
    if (eat('i')) return in_label(idx);
    if (eat('o')) return out_label(idx);
    fail("expected label polarity 'i' or 'o'");
  }
  std::string word() {
    std::size_t start = at;
    while (at < s.size() && std::isalnum(static_cast<unsigned char>(s[at]))) ++at;
    if (start == at) fail("expected a name");
    return s.substr(start, at - start);
  }
};

std::string join_labels(const std::vector<Label>& ls) {
  std::string r;
  for (std::size_t k = 0; k < ls.size(); ++k) {
    if (k) r += ',';
    r += to_string(ls[k]);
  }
  return r;
}

}  // namespace

std::string print_type(const SurfaceType& s0) {
  SurfaceType s = canonicalized(s0);
  std::string r;
  if (!(s.closed.empty() && !s.boundaries.empty()))
    r = "{" + join_labels(s.closed) + "}";
  for (const auto& b : s.boundaries) {
    if (!r.empty()) r += ',';
    r += "(" + join_labels(b) + ")";
  }
  return r;
}

SurfaceType parse_type(const std::string& text) {
  Cursor c{text};
  SurfaceType s;
  c.skip_ws();
  if (c.eat('{')) {
    c.skip_ws();
    if (!c.eat('}')) {
      do {
        c.skip_ws();
        s.closed.push_back(c.label());
        c.skip_ws();
      } while (c.eat(','));
      c.expect('}');
    }
    c.skip_ws();
    if (c.eat(',')) c.skip_ws();
  }
  while (c.peek() == '(') {
    c.expect('(');
    std::vector<Label> cyc;
    c.skip_ws();
    if (!c.eat(')')) {
      do {
        c.skip_ws();
        cyc.push_back(c.label());
        c.skip_ws();
      } while (c.eat(','));
      c.expect(')');
    }
    s.boundaries.push_back(std::move(cyc));
    c.skip_ws();
    if (!c.eat(',')) break;
    c.skip_ws();
  }
  c.skip_ws();
  if (c.at != text.size()) c.fail("trailing characters after type literal");
  if (s.closed.empty() && s.boundaries.empty())
    c.fail("empty type literal");
  s = canonicalized(std::move(s));
  validate(s);
  return s;
}

std::string print_term(const Term& t) {
  std::vector<int> order = canonical_vertex_order(t);
  std::vector<int> id(t.size(), -1);
  for (std::size_t k = 0; k < order.size(); ++k) id[order[k]] = static_cast<int>(k);

  std::ostringstream out;
  for (int v : order) out << "gen " << id[v] << " " << info(t.gens[v]).name << "\n";

  std::vector<std::string> wires, ins, outs;
  for (int v = 0; v < t.size(); ++v) {
    const GenInfo& gi = info(t.gens[v]);
    for (int p = 0; p < gi.n_out; ++p) {
      const auto& s = t.out[v][p];
      if (s.wired())
        wires.push_back("wire " + std::to_string(id[v]) + ".out" +
                        std::to_string(p + 1) + " " + std::to_string(id[s.dst]) +
                        ".in" + std::to_string(s.dst_port + 1));
      else
        outs.push_back("out " + to_string(s.label) + " " + std::to_string(id[v]) +
                       ".out" + std::to_string(p + 1));
    }
    for (int p = 0; p < gi.n_in; ++p) {
      const auto& s = t.in[v][p];
      if (!s.wired())
        ins.push_back("in " + to_string(s.label) + " " + std::to_string(id[v]) +
                      ".in" + std::to_string(p + 1));
    }
  }
  std::sort(wires.begin(), wires.end());
  std::sort(ins.begin(), ins.end());
  std::sort(outs.begin(), outs.end());
  for (const auto& l : wires) out << l << "\n";
  for (const auto& l : ins) out << l << "\n";
  for (const auto& l : outs) out << l << "\n";
  return out.str();
}

namespace {

int expr_build(Cursor& c, Term& t);

// Parses one expression node into `t`; returns the vertex whose out port 1
// carries the value, or -1 with *leaf set when the node is a bare leaf.
int expr_node(Cursor& c, Term& t, Label* leaf) {
  c.skip_ws();
  std::string w = c.word();
  c.skip_ws();
  if (c.peek() != '(') {
    // leaf: x<i>c | x<i>o
    if (w.size() < 3 || w[0] != 'x')
      c.fail("expected a generator call or a leaf like x1c");
    char color = w.back();
    if (color != 'c' && color != 'o') c.fail("leaf must end in 'c' or 'o'");
    for (std::size_t k = 1; k + 1 < w.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(w[k])))
        c.fail("leaf must be x<number>c or x<number>o");
    int idx = std::stoi(w.substr(1, w.size() - 2));
    if (idx < 1) c.fail("leaf index must be positive");
    *leaf = in_label(idx);
    // Encode the leaf's color in the polarity-unused port field of the label
    // caller: we return -1 and the caller checks color against the port.
    leaf->index = color == 'c' ? idx : -idx;  // sign smuggles the color
    return -1;
  }
  Gen g = Gen::Mc;
  try {
    g = gen_from_name(w);
  } catch (const std::invalid_argument&) {
    c.fail("unknown generator '" + w + "'");
  }
  const GenInfo& gi = info(g);
  if (gi.n_out != 1)
    c.fail("generator '" + w + "' has two outputs; use the wiring format");
  int v = t.size();
  t.gens.push_back(g);
  t.in.emplace_back();
  t.out.emplace_back();
  c.expect('(');
  for (int p = 0; p < gi.n_in; ++p) {
    if (p > 0) {
      c.skip_ws();
      c.expect(',');
    }
    Label leaf_label{};
    int w_v = expr_node(c, t, &leaf_label);
    if (w_v >= 0) {
      if (info(t.gens[w_v]).out_color[0] != gi.in_color[p])
        c.fail("color mismatch feeding input " + std::to_string(p + 1) +
               " of '" + std::string(gi.name) + "'");
      t.out[w_v][0] = {v, p, {}};
      t.in[v][p] = {w_v, 0, {}};
    } else {
      Color lc = leaf_label.index > 0 ? Color::Closed : Color::Open;
      int idx = leaf_label.index > 0 ? leaf_label.index : -leaf_label.index;
      if (lc != gi.in_color[p])
        c.fail("leaf color does not match input " + std::to_string(p + 1) +
               " of '" + std::string(gi.name) + "'");
      t.in[v][p].label = in_label(idx);
    }
    c.skip_ws();
  }
  c.expect(')');
  return v;
}

Term parse_term_expr(const std::string& text) {
  Cursor c{text};
  Term t;
  Label leaf{};
  int root = expr_node(c, t, &leaf);
  if (root < 0) c.fail("a bare leaf is not a term");
  c.skip_ws();
  while (c.peek() == '\n') {
    ++c.at;
    c.skip_ws();
  }
  if (c.at != text.size()) c.fail("trailing characters after expression");
  t.out[root][0].label = out_label(1);
  validate_term(t, true);
  return t;
}

struct PortRef {
  int id, port;  // port 0-based
  Polarity pol;
};

PortRef parse_port(Cursor& c) {
  int id = c.integer();
  c.expect('.');
  std::string w = c.word();
  Polarity pol;
  std::string rest;
  if (w.rfind("out", 0) == 0) {
    pol = Polarity::Out;
    rest = w.substr(3);
  } else if (w.rfind("in", 0) == 0) {
    pol = Polarity::In;
    rest = w.substr(2);
  } else {
    c.fail("expected .in<k> or .out<k>");
  }
  if (rest.empty() ||
      !std::all_of(rest.begin(), rest.end(),
                   [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
    c.fail("expected a port number");
  int port = std::stoi(rest);
  if (port < 1) c.fail("ports are numbered from 1");
  return {id, port - 1, pol};
}

Term parse_term_document(const std::string& text) {
  std::map<int, int> vertex_of;  // document id -> vertex index
  Term t;
  std::istringstream lines(text);
  std::string raw;
  std::size_t consumed = 0;
  struct PendingWire {
    PortRef from, to;
    std::size_t at;
  };
  struct PendingLabel {
    Label label;
    PortRef port;
    std::size_t at;
  };
  std::vector<PendingWire> wires;
  std::vector<PendingLabel> labels;

  while (std::getline(lines, raw)) {
    std::size_t line_start = consumed;
    consumed += raw.size() + 1;
    Cursor c{text};
    c.at = line_start;
    c.skip_ws();
    if (c.at - line_start >= raw.size() || text[c.at] == '\r') continue;
    std::string kw = c.word();
    c.skip_ws();
    if (kw == "gen") {
      int id = c.integer();
      c.skip_ws();
      std::string tag = c.word();
      if (vertex_of.count(id)) c.fail("duplicate vertex id " + std::to_string(id));
      Gen g;
      try {
        g = gen_from_name(tag);
      } catch (const std::invalid_argument&) {
        c.fail("unknown generator '" + tag + "'");
      }
      vertex_of[id] = t.size();
      t.gens.push_back(g);
      t.in.emplace_back();
      t.out.emplace_back();
    } else if (kw == "wire") {
      PortRef a = parse_port(c);
      c.skip_ws();
      PortRef b = parse_port(c);
      if (a.pol != Polarity::Out || b.pol != Polarity::In)
        c.fail("wire goes from an out port to an in port");
      wires.push_back({a, b, c.at});
    } else if (kw == "in" || kw == "out") {
      Label l = c.label();
      c.skip_ws();
      PortRef p = parse_port(c);
      if ((kw == "in") != (p.pol == Polarity::In))
        c.fail("label line polarity does not match the port");
      if ((kw == "in") != (l.pol == Polarity::In))
        c.fail("label polarity does not match the line keyword");
      labels.push_back({l, p, c.at});
    } else {
      c.fail("unknown directive '" + kw + "'");
    }
    std::size_t line_end = line_start + raw.size();
    while (c.at < line_end) {
      char ch = text[c.at];
      if (ch != ' ' && ch != '\t' && ch != '\r')
        c.fail("trailing characters on line");
      ++c.at;
    }
  }

  auto resolve = [&](const PortRef& p, std::size_t at) {
    auto it = vertex_of.find(p.id);
    Cursor c{text};
    c.at = at;
    if (it == vertex_of.end())
      c.fail("unknown vertex id " + std::to_string(p.id));
    const GenInfo& gi = info(t.gens[it->second]);
    int limit = p.pol == Polarity::In ? gi.n_in : gi.n_out;
    if (p.port >= limit)
      c.fail("vertex " + std::to_string(p.id) + " has no such port");
    return it->second;
  };

  for (const auto& w : wires) {
    int a = resolve(w.from, w.at);
    int b = resolve(w.to, w.at);
    Cursor c{text};
    c.at = w.at;
    if (t.out[a][w.from.port].wired() || t.in[b][w.to.port].wired())
      c.fail("port wired twice");
    t.out[a][w.from.port] = {b, w.to.port, {}};
    t.in[b][w.to.port] = {a, w.from.port, {}};
  }
  for (const auto& l : labels) {
    int v = resolve(l.port, l.at);
    Cursor c{text};
    c.at = l.at;
    if (l.port.pol == Polarity::In) {
      if (t.in[v][l.port.port].wired()) c.fail("labelled port is wired");
      if (t.in[v][l.port.port].label.index != 0) c.fail("port labelled twice");
      t.in[v][l.port.port].label = l.label;
    } else {
      if (t.out[v][l.port.port].wired()) c.fail("labelled port is wired");
      if (t.out[v][l.port.port].label.index != 0) c.fail("port labelled twice");
      t.out[v][l.port.port].label = l.label;
    }
  }
  if (t.size() == 0) throw std::invalid_argument("empty term document");
  // Dangling check gives a friendlier message than validate_term's.
  for (int v = 0; v < t.size(); ++v) {
    const GenInfo& gi = info(t.gens[v]);
    for (int p = 0; p < gi.n_in; ++p)
      if (!t.in[v][p].wired() && t.in[v][p].label.index == 0)
        throw std::invalid_argument("dangling port: in" + std::to_string(p + 1) +
                                    " of vertex " + std::to_string(v));
    for (int p = 0; p < gi.n_out; ++p)
      if (!t.out[v][p].wired() && t.out[v][p].label.index == 0)
        throw std::invalid_argument("dangling port: out" + std::to_string(p + 1) +
                                    " of vertex " + std::to_string(v));
  }
  validate_term(t, false);
  return t;
}

}  // namespace

Term parse_term(const std::string& text) {
  // The document format starts with a directive keyword; anything else is
  // the expression shorthand.
  std::size_t k = 0;
  while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
  std::size_t e = k;
  while (e < text.size() && std::isalpha(static_cast<unsigned char>(text[e]))) ++e;
  std::string first = text.substr(k, e - k);
  if (first == "gen" || first == "wire" || first == "in" || first == "out")
    return parse_term_document(text);
  return parse_term_expr(text);
}

namespace {

std::string expr_of(const Term& t, int v) {
  const GenInfo& gi = info(t.gens[v]);
  std::string r = gi.name;
  r += '(';
  for (int p = 0; p < gi.n_in; ++p) {
    if (p) r += ',';
    const auto& s = t.in[v][p];
    if (s.wired())
      r += expr_of(t, s.src);
    else
      r += "x" + std::to_string(s.label.index) +
           (gi.in_color[p] == Color::Closed ? "c" : "o");
  }
  r += ')';
  return r;
}

}  // namespace

std::string print_term_expr(const Term& t) {
  auto outs = free_outputs(t);
  if (outs.size() != 1)
    throw std::invalid_argument("expression shorthand needs exactly one free output");
  for (Gen g : t.gens)
    if (info(g).n_out != 1)
      throw std::invalid_argument(
          "expression shorthand cannot show a two-output generator");
  return expr_of(t, outs[0].vertex);
}

}  // namespace oc
