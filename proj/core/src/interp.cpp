#include "ctrc/interp.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "grid.hpp"

namespace ctrc {

const char* to_string(Recipe recipe) {
  switch (recipe) {
    case Recipe::direct: return "direct";
    case Recipe::a: return "A";
    case Recipe::b: return "B";
    case Recipe::c: return "C";
  }
  return "?";
}

Recipe parse_recipe(std::string_view text) {
  std::string t(text);
  for (char& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "a") return Recipe::a;
  if (t == "b") return Recipe::b;
  if (t == "c") return Recipe::c;
  if (t == "direct") return Recipe::direct;
  throw Error(Errc::invalid_argument, "unknown recipe '" + std::string(text) + "'");
}

const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::strict: return "STRICT";
    case Orientation::weak: return "WEAK";
    case Orientation::violated: return "VIOLATED";
  }
  return "?";
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

[[noreturn]] void fail_at(std::size_t line, Errc code, const std::string& message) {
  throw Error(code, "line " + std::to_string(line) + ": " + message);
}

std::size_t to_index(const std::string& s, std::size_t line) {
  std::size_t v = 0;
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    fail_at(line, Errc::parse, "expected a number, got '" + s + "'");
  }
  for (char c : s) v = v * 10 + static_cast<std::size_t>(c - '0');
  return v;
}

std::string strip_comment(const std::string& line) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '#' && (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1])))) {
      return line.substr(0, i);
    }
  }
  return line;
}

void parse_map(const std::string& rest, std::size_t line, InterpretationFile& out) {
  auto eq = rest.find('=');
  if (eq == std::string::npos) fail_at(line, Errc::parse, "MAP needs '='");
  std::string name = trim(std::string_view(rest).substr(0, eq));
  std::string set = trim(std::string_view(rest).substr(eq + 1));
  if (name.empty() || set.size() < 2 || set.front() != '{' || set.back() != '}') {
    fail_at(line, Errc::parse, "MAP expects 'MAP f = {i,...}'");
  }
  std::vector<std::size_t> args;
  std::string inner = set.substr(1, set.size() - 2);
  std::replace(inner.begin(), inner.end(), ',', ' ');
  for (const std::string& w : words(inner)) args.push_back(to_index(w, line));
  std::sort(args.begin(), args.end());
  args.erase(std::unique(args.begin(), args.end()), args.end());
  if (!out.usable.emplace(name, std::move(args)).second) {
    fail_at(line, Errc::parse, "duplicate MAP for " + name);
  }
}

}  // namespace

InterpretationFile parse_interpretation(std::string_view text) {
  InterpretationFile out;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    std::size_t sp = 0;
    while (sp < line.size() && !std::isspace(static_cast<unsigned char>(line[sp]))) ++sp;
    std::string keyword = line.substr(0, sp);
    std::string rest = line.substr(sp);
    if (keyword == "MAP") {
      parse_map(rest, line_no, out);
      continue;
    }

    InterpEntry e;
    e.line = line_no;
    if (keyword == "DIRECT") e.kind = EntryKind::direct;
    else if (keyword == "FUN") e.kind = EntryKind::fun;
    else if (keyword == "COND") e.kind = EntryKind::cond;
    else if (keyword == "SIZE") e.kind = EntryKind::size;
    else if (keyword == "COST") e.kind = EntryKind::cost;
    else if (keyword == "CSIZE") e.kind = EntryKind::csize;
    else if (keyword == "CCOST") e.kind = EntryKind::ccost;
    else fail_at(line_no, Errc::parse, "unknown entry '" + keyword + "'");

    auto eq = rest.find('=');
    if (eq == std::string::npos) fail_at(line_no, Errc::parse, "missing '='");
    std::string header = rest.substr(0, eq);
    e.text = trim(std::string_view(rest).substr(eq + 1));

    std::string head = header;
    auto open = header.find('(');
    if (open != std::string::npos) {
      auto close = header.rfind(')');
      if (close == std::string::npos || close < open) fail_at(line_no, Errc::parse, "unbalanced parameter list");
      if (!trim(std::string_view(header).substr(close + 1)).empty()) {
        fail_at(line_no, Errc::parse, "unexpected text after parameter list");
      }
      std::string inner = header.substr(open + 1, close - open - 1);
      std::replace(inner.begin(), inner.end(), ';', ',');
      if (!trim(inner).empty()) {
        std::istringstream ps(inner);
        for (std::string p; std::getline(ps, p, ',');) {
          std::string name = trim(p);
          if (name.empty()) fail_at(line_no, Errc::parse, "empty parameter name");
          if (std::find(e.params.begin(), e.params.end(), name) != e.params.end()) {
            fail_at(line_no, Errc::parse, "duplicate parameter " + name);
          }
          e.params.push_back(name);
        }
      }
      head = header.substr(0, open);
    }
    std::vector<std::string> w = words(head);
    switch (e.kind) {
      case EntryKind::direct:
      case EntryKind::size:
        if (w.size() != 1) fail_at(line_no, Errc::parse, keyword + " expects a symbol");
        e.symbol = w[0];
        break;
      case EntryKind::fun:
      case EntryKind::cost:
        if (w.size() != 2) fail_at(line_no, Errc::parse, keyword + " expects an index and a symbol");
        e.i = to_index(w[0], line_no);
        e.symbol = w[1];
        break;
      default:
        if (w.size() != 3) fail_at(line_no, Errc::parse, keyword + " expects a symbol and two indices");
        e.symbol = w[0];
        e.i = to_index(w[1], line_no);
        e.j = to_index(w[2], line_no);
        if (e.i == 0 || e.j == 0) fail_at(line_no, Errc::parse, "rule and condition indices start at 1");
        break;
    }
    try {
      e.expr = parse_arith(e.text, e.params);
    } catch (const Error& err) {
      fail_at(line_no, err.code(), err.what());
    }
    out.entries.push_back(std::move(e));
  }
  return out;
}

InterpretationFile load_interpretation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_argument, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_interpretation(buf.str());
}

Recipe infer_recipe(const InterpretationFile& file) {
  bool direct = false, recipe = false, pair = false;
  for (const InterpEntry& e : file.entries) {
    switch (e.kind) {
      case EntryKind::direct: direct = true; break;
      case EntryKind::fun:
      case EntryKind::cond: recipe = true; break;
      default: pair = true; break;
    }
  }
  if (direct + recipe + pair > 1) {
    throw Error(Errc::invalid_argument, "interpretation file mixes DIRECT, FUN/COND and SIZE/COST entries");
  }
  if (direct) return Recipe::direct;
  if (pair) return Recipe::c;
  if (recipe) return file.usable.empty() ? Recipe::a : Recipe::b;
  throw Error(Errc::missing_component, "interpretation file has no entries");
}

// ---- Interpretation values ----

Value Interpretation::apply(SymbolId f, std::span<const Value> args) const {
  constexpr std::size_t kInline = 32;
  std::uint64_t inline_env[2 * kInline];
  std::vector<std::uint64_t> heap;
  std::uint64_t* env = inline_env;
  if (args.size() > kInline) {
    heap.resize(2 * args.size());
    env = heap.data();
  }
  std::size_t k = args.size();
  for (std::size_t i = 0; i < k; ++i) env[i] = args[i].cost;
  if (domain == Domain::nat) return {cost.at(f).eval({env, k}), 0};
  for (std::size_t i = 0; i < k; ++i) env[k + i] = args[i].size;
  return {cost.at(f).eval({env, 2 * k}), size.at(f).eval({env, 2 * k})};
}

Value Interpretation::eval(const Term& t, const Valuation& alpha) const {
  if (t.is_variable()) {
    auto it = alpha.find(t.name());
    if (it == alpha.end()) throw Error(Errc::unbound_reference, "variable " + t.name() + " has no value");
    return it->second;
  }
  std::vector<Value> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(eval(a, alpha));
  return apply(t.symbol(), args);
}

bool Interpretation::greater(const Value& a, const Value& b) const {
  if (domain == Domain::nat) return a.cost > b.cost;
  return a.cost > b.cost && a.size >= b.size;
}

bool Interpretation::greater_equal(const Value& a, const Value& b) const {
  if (domain == Domain::nat) return a.cost >= b.cost;
  return a.cost >= b.cost && a.size >= b.size;
}

std::string Interpretation::show(const Value& v) const {
  if (domain == Domain::nat) return std::to_string(v.cost);
  return "(" + std::to_string(v.cost) + "," + std::to_string(v.size) + ")";
}

std::string Interpretation::show_symbol(SymbolId f, const TransformedTrs& h) const {
  std::size_t k = h.signature[f].arity;
  std::vector<std::string> names;
  std::string head = h.signature[f].name;
  if (domain == Domain::nat) {
    for (std::size_t i = 1; i <= k; ++i) names.push_back("x" + std::to_string(i));
  } else {
    for (std::size_t i = 1; i <= k; ++i) names.push_back("c" + std::to_string(i));
    for (std::size_t i = 1; i <= k; ++i) names.push_back("s" + std::to_string(i));
  }
  std::string params;
  for (std::size_t i = 0; i < k; ++i) {
    if (i) params += ",";
    params += domain == Domain::nat ? names[i] : "(" + names[i] + "," + names[k + i] + ")";
  }
  std::string lhs = head + (k ? "(" + params + ")" : "");
  if (domain == Domain::nat) return lhs + " = " + cost.at(f).to_string(names);
  return lhs + " = (" + cost.at(f).to_string(names) + ", " + size.at(f).to_string(names) + ")";
}

// ---- Building ----

namespace {

using Key = std::tuple<EntryKind, SymbolId, std::size_t, std::size_t>;

class Tables {
 public:
  Tables(const InterpretationFile& file, const Cctrs& system, const TransformedTrs& h, Recipe recipe)
      : system_(system), h_(h) {
    for (const InterpEntry& e : file.entries) add(e, recipe);
  }

  const ArithExpr& get(EntryKind kind, SymbolId f, std::size_t i = 0, std::size_t j = 0) const {
    auto it = entries_.find({kind, f, i, j});
    if (it == entries_.end()) {
      const std::string& name = kind == EntryKind::direct ? h_.signature[f].name : system_.signature()[f].name;
      throw Error(Errc::missing_component, "missing " + describe(kind, name, i, j));
    }
    return it->second->expr;
  }

 private:
  static std::string describe(EntryKind kind, const std::string& name, std::size_t i, std::size_t j) {
    std::string idx = " " + name + " " + std::to_string(i) + " " + std::to_string(j);
    switch (kind) {
      case EntryKind::direct: return "DIRECT " + name;
      case EntryKind::fun: return "FUN " + std::to_string(i) + " " + name;
      case EntryKind::cond: return "COND" + idx;
      case EntryKind::size: return "SIZE " + name;
      case EntryKind::cost: return "COST " + std::to_string(i) + " " + name;
      case EntryKind::csize: return "CSIZE" + idx;
      case EntryKind::ccost: return "CCOST" + idx;
    }
    return {};
  }

  void add(const InterpEntry& e, Recipe recipe) {
    bool fits = false;
    switch (e.kind) {
      case EntryKind::direct: fits = recipe == Recipe::direct; break;
      case EntryKind::fun:
      case EntryKind::cond: fits = recipe == Recipe::a || recipe == Recipe::b; break;
      default: fits = recipe == Recipe::c; break;
    }
    if (!fits) {
      fail_at(e.line, Errc::invalid_argument,
              "entry for " + e.symbol + " does not belong to recipe " + to_string(recipe));
    }
    const Signature& sig = e.kind == EntryKind::direct ? h_.signature : system_.signature();
    auto id = sig.find(e.symbol);
    if (!id) fail_at(e.line, Errc::unknown_symbol, "unknown symbol " + e.symbol);
    if (e.kind == EntryKind::direct && (*id == h_.top || *id == h_.bot)) {
      fail_at(e.line, Errc::invalid_argument, "top and bot have fixed interpretations");
    }
    std::size_t n = sig[*id].arity;
    std::size_t m = e.kind == EntryKind::direct ? 0 : system_.signature()[*id].rule_count;
    std::size_t expected = n;
    switch (e.kind) {
      case EntryKind::direct:
      case EntryKind::size: break;
      case EntryKind::fun:
      case EntryKind::cost:
        if (e.i > m) {
          fail_at(e.line, Errc::invalid_argument,
                  e.symbol + " has " + std::to_string(m) + " rules, no index " + std::to_string(e.i));
        }
        if (e.kind == EntryKind::cost) expected = 2 * n;
        break;
      default: {
        if (e.i > m || system_.rule_of(*id, e.i).conditions.size() < e.j) {
          fail_at(e.line, Errc::invalid_argument,
                  "rule " + std::to_string(e.i) + " of " + e.symbol + " has no condition " +
                      std::to_string(e.j));
        }
        expected = n + e.j;
        if (e.kind == EntryKind::ccost) expected *= 2;
        break;
      }
    }
    if (e.params.size() != expected) {
      fail_at(e.line, Errc::arity,
              e.symbol + " entry expects " + std::to_string(expected) + " parameters, got " +
                  std::to_string(e.params.size()));
    }
    if (!entries_.emplace(Key{e.kind, *id, e.i, e.j}, &e).second) {
      fail_at(e.line, Errc::parse, "duplicate entry for " + e.symbol);
    }
  }

  const Cctrs& system_;
  const TransformedTrs& h_;
  std::map<Key, const InterpEntry*> entries_;
};

std::vector<ArithExpr> refs(std::size_t from, std::size_t count) {
  std::vector<ArithExpr> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(ArithExpr::ref(from + i));
  return out;
}

// Layout of f_i^j arguments: x1..xn, c1..c(i-1), y1..yj, c(i+1)..cm.
struct ProgressLayout {
  std::size_t n, m, i, j;
  std::size_t arity() const { return n + m + j - 1; }
  std::size_t flag(std::size_t k) const { return k < i ? n + k - 1 : n + j + k - 2; }
  std::size_t y(std::size_t l) const { return n + i + l - 2; }
};

Interpretation build_nat(const Tables& t, const Cctrs& system, const TransformedTrs& h, Recipe recipe) {
  Interpretation out;
  out.recipe = recipe;
  out.domain = Domain::nat;
  out.cost.resize(h.signature.size());
  for (SymbolId f = 0; f < h.signature.size(); ++f) {
    const SymbolInfo& info = h.signature[f];
    if (f == h.top) {
      out.cost[f] = ArithExpr::constant(1);
    } else if (f == h.bot) {
      out.cost[f] = ArithExpr::constant(0);
    } else if (recipe == Recipe::direct) {
      out.cost[f] = t.get(EntryKind::direct, f);
    } else if (info.role != AuxRole::progress) {
      std::size_t n = system.signature()[f].arity;
      ArithExpr e = t.get(EntryKind::fun, f, 0);
      for (std::size_t k = 1; k <= info.rule_count; ++k) {
        e = ArithExpr::add(e, ArithExpr::mul(ArithExpr::ref(n + k - 1), t.get(EntryKind::fun, f, k)));
      }
      out.cost[f] = e;
    } else {
      SymbolId g = info.base;
      ProgressLayout lay{system.signature()[g].arity, system.signature()[g].rule_count, info.rule,
                         info.condition};
      std::vector<ArithExpr> args = refs(0, lay.n);
      for (std::size_t l = 1; l <= lay.j; ++l) args.push_back(ArithExpr::ref(lay.y(l)));
      ArithExpr e = ArithExpr::add(t.get(EntryKind::fun, g, 0),
                                   t.get(EntryKind::cond, g, lay.i, lay.j).substitute(args));
      for (std::size_t k = 1; k <= lay.m; ++k) {
        if (k == lay.i) continue;
        e = ArithExpr::add(e, ArithExpr::mul(ArithExpr::ref(lay.flag(k)), t.get(EntryKind::fun, g, k)));
      }
      out.cost[f] = e;
    }
  }
  return out;
}

Interpretation build_pair(const Tables& t, const Cctrs& system, const TransformedTrs& h) {
  Interpretation out;
  out.recipe = Recipe::c;
  out.domain = Domain::pair;
  out.cost.resize(h.signature.size());
  out.size.resize(h.signature.size());
  for (SymbolId f = 0; f < h.signature.size(); ++f) {
    const SymbolInfo& info = h.signature[f];
    std::size_t width = info.arity;
    auto cost_of = [](std::size_t arg) { return ArithExpr::ref(arg); };
    auto size_of = [width](std::size_t arg) { return ArithExpr::ref(width + arg); };
    if (f == h.top) {
      out.cost[f] = ArithExpr::constant(0);
      out.size[f] = ArithExpr::constant(1);
      continue;
    }
    if (f == h.bot) {
      out.cost[f] = ArithExpr::constant(0);
      out.size[f] = ArithExpr::constant(0);
      continue;
    }
    SymbolId g = info.role == AuxRole::progress ? info.base : f;
    std::size_t n = system.signature()[g].arity;
    std::size_t m = system.signature()[g].rule_count;
    // C_g^k and S_g read the costs and sizes of x1..xn.
    std::vector<ArithExpr> cs_x;
    std::vector<ArithExpr> s_x;
    for (std::size_t a = 0; a < n; ++a) cs_x.push_back(cost_of(a));
    for (std::size_t a = 0; a < n; ++a) {
      cs_x.push_back(size_of(a));
      s_x.push_back(size_of(a));
    }
    ArithExpr size_g = t.get(EntryKind::size, g).substitute(s_x);
    ArithExpr cost = t.get(EntryKind::cost, g, 0).substitute(cs_x);
    if (info.role != AuxRole::progress) {
      for (std::size_t k = 1; k <= m; ++k) {
        cost = ArithExpr::add(cost, ArithExpr::mul(size_of(n + k - 1), t.get(EntryKind::cost, g, k).substitute(cs_x)));
      }
      out.cost[f] = cost;
      out.size[f] = size_g;
      continue;
    }
    ProgressLayout lay{n, m, info.rule, info.condition};
    std::vector<ArithExpr> cc_args, cs_args;
    for (std::size_t a = 0; a < n; ++a) cc_args.push_back(cost_of(a));
    for (std::size_t l = 1; l <= lay.j; ++l) cc_args.push_back(cost_of(lay.y(l)));
    for (std::size_t a = 0; a < n; ++a) {
      cc_args.push_back(size_of(a));
      cs_args.push_back(size_of(a));
    }
    for (std::size_t l = 1; l <= lay.j; ++l) {
      cc_args.push_back(size_of(lay.y(l)));
      cs_args.push_back(size_of(lay.y(l)));
    }
    cost = ArithExpr::add(cost, t.get(EntryKind::ccost, g, lay.i, lay.j).substitute(cc_args));
    for (std::size_t k = 1; k <= m; ++k) {
      if (k == lay.i) continue;
      cost = ArithExpr::add(cost, ArithExpr::mul(size_of(lay.flag(k)), t.get(EntryKind::cost, g, k).substitute(cs_x)));
    }
    out.cost[f] = cost;
    out.size[f] = ArithExpr::max(size_g, t.get(EntryKind::csize, g, lay.i, lay.j).substitute(cs_args));
  }
  return out;
}

}  // namespace

Interpretation build(const InterpretationFile& file, const Cctrs& system, const TransformedTrs& h,
                     std::optional<Recipe> recipe) {
  Recipe r = recipe ? *recipe : infer_recipe(file);
  Tables tables(file, system, h, r);
  Interpretation out = r == Recipe::c ? build_pair(tables, system, h) : build_nat(tables, system, h, r);
  if (!file.usable.empty()) {
    const Signature& sig = system.signature();
    ReplacementMap upsilon(sig.size());
    for (const auto& [name, args] : file.usable) {
      auto id = sig.find(name);
      if (!id) throw Error(Errc::unknown_symbol, "MAP names unknown symbol " + name);
      for (std::size_t a : args) {
        if (a == 0 || a > sig[*id].arity) {
          throw Error(Errc::invalid_argument, "MAP " + name + " has no argument " + std::to_string(a));
        }
      }
      upsilon[*id] = args;
    }
    out.usable = std::move(upsilon);
  }
  return out;
}

// ---- Checking ----

ReplacementMap monotonicity_obligations(const Interpretation& interp, const Cctrs& system,
                                        const TransformedTrs& h) {
  ReplacementMap out = h.mu;
  bool relaxed = interp.recipe == Recipe::b || (interp.recipe == Recipe::c && interp.usable);
  if (!relaxed) return out;
  ReplacementMap upsilon = interp.usable ? *interp.usable : derive_usable_map(system);
  for (SymbolId f = 0; f < system.signature().size(); ++f) out[f] = upsilon[f];
  return out;
}

namespace {

// Terms flattened to postfix form over variable slots.
struct Program {
  struct Instr {
    bool variable;
    std::size_t index;  // variable slot or symbol id
    std::size_t arity;
  };
  std::vector<Instr> code;

  static Program compile(const Term& t, const std::vector<std::string>& vars) {
    Program p;
    p.emit(t, vars);
    return p;
  }

  void emit(const Term& t, const std::vector<std::string>& vars) {
    if (t.is_variable()) {
      auto it = std::find(vars.begin(), vars.end(), t.name());
      code.push_back({true, static_cast<std::size_t>(it - vars.begin()), 0});
      return;
    }
    for (const Term& a : t.args()) emit(a, vars);
    code.push_back({false, t.symbol(), t.arity()});
  }

  Value run(const Interpretation& interp, const std::vector<Value>& slots, std::vector<Value>& stack) const {
    stack.clear();
    for (const Instr& ins : code) {
      if (ins.variable) {
        stack.push_back(slots[ins.index]);
        continue;
      }
      std::span<const Value> args(stack.data() + stack.size() - ins.arity, ins.arity);
      Value v = interp.apply(static_cast<SymbolId>(ins.index), args);
      stack.resize(stack.size() - ins.arity);
      stack.push_back(v);
    }
    return stack.back();
  }
};

RuleVerdict check_rule(const Interpretation& interp, const XiRule& rule, std::size_t grid) {
  RuleVerdict verdict{rule.id, rule.cost, Orientation::strict, std::nullopt};
  std::vector<std::string> vars = variables(rule.lhs);
  collect_variables(rule.rhs, vars);
  Program lhs = Program::compile(rule.lhs, vars);
  Program rhs = Program::compile(rule.rhs, vars);
  std::vector<Value> stack;
  detail::for_each_point(detail::coordinates(vars.size(), interp.domain), grid,
                         [&](const std::vector<std::uint64_t>& point) {
                           std::vector<Value> slots = detail::to_values(point, interp.domain);
                           Value l = lhs.run(interp, slots, stack);
                           Value r = rhs.run(interp, slots, stack);
                           if (interp.greater(l, r)) return true;
                           bool weak = interp.greater_equal(l, r);
                           if (weak && rule.cost == 0) {
                             verdict.result = Orientation::weak;
                             return true;
                           }
                           verdict.result = Orientation::violated;
                           Valuation alpha;
                           for (std::size_t i = 0; i < vars.size(); ++i) alpha[vars[i]] = slots[i];
                           verdict.witness = std::move(alpha);
                           return false;
                         });
  return verdict;
}

void check_monotone(const Interpretation& interp, SymbolId f, std::size_t arity,
                    const std::vector<std::size_t>& obligations, std::size_t grid,
                    std::vector<MonotonicityVerdict>& out) {
  std::vector<MonotonicityVerdict> verdicts;
  for (std::size_t a : obligations) verdicts.push_back({f, a, true, {}, 'c'});
  std::size_t open = verdicts.size();
  detail::for_each_point(detail::coordinates(arity, interp.domain), grid,
                         [&](const std::vector<std::uint64_t>& point) {
                           std::vector<Value> args = detail::to_values(point, interp.domain);
                           Value base = interp.apply(f, args);
                           for (MonotonicityVerdict& v : verdicts) {
                             if (!v.ok) continue;
                             std::vector<Value> bumped = args;
                             ++bumped[v.arg - 1].cost;
                             if (!interp.greater(interp.apply(f, bumped), base)) {
                               v.ok = false;
                               v.args = args;
                               v.component = 'c';
                               --open;
                               continue;
                             }
                             if (interp.domain == Domain::pair) {
                               bumped = args;
                               ++bumped[v.arg - 1].size;
                               if (!interp.greater_equal(interp.apply(f, bumped), base)) {
                                 v.ok = false;
                                 v.args = args;
                                 v.component = 's';
                                 --open;
                               }
                             }
                           }
                           return open > 0;
                         });
  out.insert(out.end(), verdicts.begin(), verdicts.end());
}

std::string show_valuation(const Interpretation& interp, const Valuation& alpha) {
  std::string out = "[";
  bool first = true;
  for (const auto& [name, v] : alpha) {
    if (!first) out += ", ";
    first = false;
    out += name + "=" + interp.show(v);
  }
  return out + "]";
}

}  // namespace

CheckReport check(const Interpretation& interp, const Cctrs& system, const TransformedTrs& h,
                  std::size_t grid) {
  CheckReport report;
  report.grid = grid;
  report.domain = interp.domain;
  report.rules.resize(h.rules.size());
  detail::parallel_for(h.rules.size(),
                       [&](std::size_t i) { report.rules[i] = check_rule(interp, h.rules[i], grid); });
  for (const RuleVerdict& r : report.rules) {
    if (r.result == Orientation::violated) report.pass = false;
  }
  ReplacementMap obligations = monotonicity_obligations(interp, system, h);
  std::vector<SymbolId> symbols;
  for (SymbolId f = 0; f < h.signature.size(); ++f) {
    if (!obligations[f].empty()) symbols.push_back(f);
  }
  std::vector<std::vector<MonotonicityVerdict>> mono(symbols.size());
  detail::parallel_for(symbols.size(), [&](std::size_t i) {
    SymbolId f = symbols[i];
    check_monotone(interp, f, h.signature[f].arity, obligations[f], grid, mono[i]);
  });
  for (auto& v : mono) report.monotonicity.insert(report.monotonicity.end(), v.begin(), v.end());
  for (const MonotonicityVerdict& v : report.monotonicity) {
    if (!v.ok) report.pass = false;
  }
  if (interp.usable && !is_usable(system, *interp.usable)) {
    report.map_usable = false;
    report.pass = false;
  }
  return report;
}

std::string CheckReport::to_string(const Interpretation& interp, const TransformedTrs& h) const {
  std::ostringstream out;
  for (const RuleVerdict& r : rules) {
    out << "RULE " << r.id << ' ' << ctrc::to_string(r.result);
    if (r.witness) out << ' ' << show_valuation(interp, *r.witness);
    out << '\n';
  }
  for (const MonotonicityVerdict& m : monotonicity) {
    out << "MONO " << h.signature[m.symbol].name << ' ' << m.arg;
    if (m.ok) {
      out << " OK\n";
      continue;
    }
    out << " VIOLATED (";
    for (std::size_t i = 0; i < m.args.size(); ++i) out << (i ? "," : "") << interp.show(m.args[i]);
    out << ')';
    if (domain == Domain::pair) out << (m.component == 'c' ? " cost+1" : " size+1");
    out << '\n';
  }
  if (!map_usable) out << "MAP VIOLATED not usable\n";
  out << "RESULT " << (pass ? "PASS" : "FAIL") << " (sampled on grid {0.." << grid << "})\n";
  return out.str();
}

}  // namespace ctrc
