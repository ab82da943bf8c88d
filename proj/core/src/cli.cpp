#include "oc/cli.hpp"

#include <cctype>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "oc/cacti.hpp"
#include "oc/enumerate.hpp"
#include "oc/homology.hpp"
#include "oc/normal_form.hpp"
#include "oc/text_io.hpp"

namespace oc {

namespace {

/// Raised for malformed invocations and unparsable literals (exit 2, vs.
/// exit 1 for well-formed requests the engine rejects).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Args {
  std::vector<std::string> positional;
  std::map<std::string, std::string> flags;
  bool stdin_used = false;

  std::string value(const std::string& name, const std::string& fallback) {
    auto at = flags.find(name);
    return at == flags.end() ? fallback : at->second;
  }
};

int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(what + " expects an integer, got '" + s + "'");
  }
}

Args collect(const std::vector<std::string>& args, std::size_t from,
             const std::set<std::string>& known_flags) {
  Args a;
  for (std::size_t k = from; k < args.size(); ++k) {
    const std::string& s = args[k];
    if (s.rfind("--", 0) == 0 || (s.size() == 2 && s[0] == '-' &&
                                  std::isalpha(static_cast<unsigned char>(s[1])))) {
      if (!known_flags.count(s)) throw UsageError("unknown option " + s);
      if (k + 1 >= args.size()) throw UsageError(s + " expects a value");
      a.flags[s] = args[++k];
    } else {
      a.positional.push_back(s);
    }
  }
  return a;
}

std::string slurp_stdin(Args& a) {
  if (a.stdin_used) throw UsageError("stdin may be consumed only once");
  a.stdin_used = true;
  std::ostringstream text;
  text << std::cin.rdbuf();
  return text.str();
}

SurfaceType type_arg(const std::string& text) {
  try {
    return parse_type(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad type literal: ") + e.what());
  }
}

Term term_arg(Args& a, const std::string& text) {
  std::string body = text == "-" ? slurp_stdin(a) : text;
  try {
    return parse_term(body);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad term: ") + e.what());
  }
}

std::vector<int> perm_arg(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ','))
    out.push_back(to_int(item, "permutation entry"));
  if (out.empty()) throw UsageError("empty permutation");
  return out;
}

void print_class(const ClassVector& v, std::ostream& out) {
  for (const auto& [key, c] : v.coef) out << c << " " << key << "\n";
}

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  if (args.empty())
    throw UsageError(
        "expected a subcommand: type-compose term-type normalize equiv "
        "enumerate dims basis reduce psi cyclic degree");
  const std::string& cmd = args[0];

  if (cmd == "type-compose") {
    Args a = collect(args, 1, {});
    if (a.positional.size() != 4)
      throw UsageError("usage: type-compose <provider> <out#> <receiver> <in#>");
    SurfaceType s = type_arg(a.positional[0]);
    int o = to_int(a.positional[1], "out#");
    SurfaceType t = type_arg(a.positional[2]);
    int i = to_int(a.positional[3], "in#");
    Color c = color_of(s, out_label(o));
    SurfaceType r = c == Color::Closed ? sew_closed(s, o, t, i)
                                       : sew_open(s, o, t, i);
    out << print_type(r) << "\n";
    return 0;
  }
  if (cmd == "term-type") {
    Args a = collect(args, 1, {});
    if (a.positional.size() != 1) throw UsageError("usage: term-type <term>");
    Term t = term_arg(a, a.positional[0]);
    out << print_type(type_of(t)) << "\n";
    return 0;
  }
  if (cmd == "normalize") {
    Args a = collect(args, 1, {});
    if (a.positional.size() != 1) throw UsageError("usage: normalize <term>");
    Term t = term_arg(a, a.positional[0]);
    out << print_term(normalize0(t));
    return 0;
  }
  if (cmd == "equiv") {
    Args a = collect(args, 1, {});
    if (a.positional.size() != 2)
      throw UsageError("usage: equiv <term1> <term2>");
    Term t1 = term_arg(a, a.positional[0]);
    Term t2 = term_arg(a, a.positional[1]);
    out << (equiv0(t1, t2) ? "equivalent" : "inequivalent") << "\n";
    return 0;
  }
  if (cmd == "enumerate") {
    Args a = collect(args, 1, {"--max-vertices", "--max-empty"});
    if (a.positional.empty())
      throw UsageError("usage: enumerate terms|types ...");
    if (a.positional[0] == "terms") {
      if (a.positional.size() != 3)
        throw UsageError(
            "usage: enumerate terms <type> <degree> [--max-vertices V]");
      SurfaceType s = type_arg(a.positional[1]);
      int d = to_int(a.positional[2], "degree");
      int cap = to_int(a.value("--max-vertices", "6"), "--max-vertices");
      for (const Term& t : enumerate_terms(s, d, cap))
        out << canonical_encode(t) << "\n";
      return 0;
    }
    if (a.positional[0] == "types") {
      if (a.positional.size() != 5)
        throw UsageError(
            "usage: enumerate types <closed-in> <open-in> <closed-out> "
            "<open-out> [--max-empty E]");
      int ci = to_int(a.positional[1], "closed-in");
      int oi = to_int(a.positional[2], "open-in");
      int co = to_int(a.positional[3], "closed-out");
      int oo = to_int(a.positional[4], "open-out");
      int me = to_int(a.value("--max-empty", "1"), "--max-empty");
      for (const SurfaceType& s : enumerate_types(ci, oi, co, oo, me))
        out << print_type(s) << "\n";
      return 0;
    }
    throw UsageError("enumerate expects 'terms' or 'types'");
  }
  if (cmd == "dims") {
    Args a = collect(args, 1, {"--cap"});
    if (a.positional.size() != 1)
      throw UsageError("usage: dims <type> [--cap V]");
    SurfaceType s = type_arg(a.positional[0]);
    int cap = to_int(a.value("--cap", "6"), "--cap");
    GradedDims g = graded_dims(s, cap);
    for (const auto& [d, dim] : g.dims) out << d << ":" << dim << "\n";
    return 0;
  }
  if (cmd == "basis") {
    Args a = collect(args, 1, {"--cap"});
    if (a.positional.size() != 1)
      throw UsageError("usage: basis <type> [--cap V]");
    SurfaceType s = type_arg(a.positional[0]);
    int cap = to_int(a.value("--cap", "6"), "--cap");
    for (const ClassVector& v : canonical_basis(s, cap))
      out << v.coef.begin()->first << "\n";
    return 0;
  }
  if (cmd == "reduce") {
    Args a = collect(args, 1, {"--cap"});
    if (a.positional.size() != 2)
      throw UsageError("usage: reduce <type> <term> [--cap V]");
    SurfaceType s = type_arg(a.positional[0]);
    Term t = term_arg(a, a.positional[1]);
    int cap = to_int(a.value("--cap", "6"), "--cap");
    ComponentBasis basis(s, cap);
    std::vector<Rational> x = basis.reduce(make_class(t));
    for (std::size_t k = 0; k < x.size(); ++k)
      out << (k ? " " : "") << x[k];
    out << "\n";
    return 0;
  }
  if (cmd == "psi") {
    Args a = collect(args, 1, {});
    if (a.positional.size() != 3)
      throw UsageError("usage: psi <i> <j> <term>");
    int i = to_int(a.positional[0], "i");
    int j = to_int(a.positional[1], "j");
    Term t = term_arg(a, a.positional[2]);
    ClassVector r = psi_contract_class(make_class(t), i, j);
    if (r.zero()) {
      out << "zero\n";
      return 1;
    }
    print_class(r, out);
    return 0;
  }
  if (cmd == "cyclic") {
    Args a = collect(args, 1, {});
    if (a.positional.size() != 2)
      throw UsageError("usage: cyclic <sigma> <term>  (sigma like 2,3,1)");
    std::vector<int> sigma = perm_arg(a.positional[0]);
    Term t = term_arg(a, a.positional[1]);
    print_class(cyclic_act_class(make_class(t), sigma), out);
    return 0;
  }
  if (cmd == "degree") {
    Args a = collect(args, 1, {"-m", "-k"});
    if (a.positional.size() != 1)
      throw UsageError("usage: degree <type> -m <int> -k <int>");
    SurfaceType s = type_arg(a.positional[0]);
    auto mit = a.flags.find("-m");
    auto kit = a.flags.find("-k");
    if (mit == a.flags.end() || kit == a.flags.end())
      throw UsageError("degree requires -m and -k");
    ManifoldDims dims{to_int(mit->second, "-m"), to_int(kit->second, "-k")};
    CactiDescriptor d = desc_from_type(s);
    out << operation_degree(d, dims) << "\n";
    return 0;
  }
  (void)err;
  throw UsageError("unknown subcommand '" + cmd + "'");
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace oc
