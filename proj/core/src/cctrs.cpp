#include "ctrc/cctrs.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "syntax.hpp"

namespace ctrc {

using syntax::RawTerm;
using syntax::Tok;
using syntax::Token;
using syntax::TokenStream;

namespace {

void skip_block(TokenStream& in) {
  int depth = 1;
  while (depth > 0) {
    Token t = in.next();
    if (t.kind == Tok::end) syntax::fail(t.line, "unbalanced parentheses");
    if (t.kind == Tok::lparen) ++depth;
    if (t.kind == Tok::rparen) --depth;
  }
}

std::shared_ptr<const RawTerm> raw(TokenStream& in) {
  return std::make_shared<const RawTerm>(syntax::parse_raw_term(in));
}

}  // namespace

RawSystem parse_cops(std::string_view text) {
  TokenStream in(syntax::tokenize(text));
  RawSystem system;
  bool saw_rules = false;
  while (!in.at_end()) {
    in.expect(Tok::lparen, "'('");
    Token keyword = in.expect(Tok::ident, "a section keyword");
    if (keyword.text == "CONDITIONTYPE") {
      Token type = in.expect(Tok::ident, "a condition type");
      if (type.text != "ORIENTED") {
        syntax::fail(type.line, "only ORIENTED conditions are supported, found '" + type.text + "'");
      }
      in.expect(Tok::rparen, "')'");
    } else if (keyword.text == "VAR") {
      while (in.peek().kind == Tok::ident) system.variables.push_back(in.next().text);
      in.expect(Tok::rparen, "')'");
    } else if (keyword.text == "RULES") {
      saw_rules = true;
      while (!in.accept(Tok::rparen)) {
        RawRule rule;
        rule.line = in.peek().line;
        rule.lhs = raw(in);
        in.expect(Tok::arrow, "'->'");
        rule.rhs = raw(in);
        if (in.accept(Tok::bar)) {
          while (true) {
            auto a = raw(in);
            in.expect(Tok::equals, "'=='");
            auto b = raw(in);
            rule.conditions.emplace_back(std::move(a), std::move(b));
            if (!in.accept(Tok::comma)) break;
          }
        }
        system.rules.push_back(std::move(rule));
      }
    } else {
      skip_block(in);
    }
  }
  if (!saw_rules) throw Error(Errc::parse, "missing (RULES ...) section");
  return system;
}

RawSystem load_cops(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw Error(Errc::invalid_argument, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_cops(buffer.str());
}

std::string ValidationReport::to_string() const {
  std::string out;
  for (const Violation& v : violations) {
    out += "rule " + std::to_string(v.rule) + ": " + v.restriction;
    if (!v.witness.empty()) out += ": " + v.witness;
    out += '\n';
  }
  return out;
}

namespace {

struct Flagged {
  Violation violation;
  bool strong_only;
};

struct Analysis {
  Signature signature;
  std::vector<ConditionalRule> rules;
  std::vector<Flagged> violations;
};

bool reserved_name(const std::string& name) {
  return name == "top" || name == "bot" || name.find('#') != std::string::npos;
}

class Analyzer {
 public:
  explicit Analyzer(const RawSystem& raw) : raw_(raw) {
    vars_.insert(raw.variables.begin(), raw.variables.end());
  }

  Analysis run() {
    for (std::size_t r = 0; r < raw_.rules.size(); ++r) declare_rule(r + 1, raw_.rules[r]);
    // Defined symbols are lhs roots.
    for (const RawRule& rule : raw_.rules) {
      if (vars_.count(rule.lhs->name)) continue;
      auto id = out_.signature.find(rule.lhs->name);
      if (id) out_.signature.at(*id).kind = SymbolKind::defined;
    }
    for (std::size_t r = 0; r < raw_.rules.size(); ++r) build_rule(r + 1, raw_.rules[r]);
    for (SymbolId f = 0; f < out_.signature.size(); ++f) {
      if (out_.signature[f].rule_count > kMaxRulesPerSymbol) {
        add(0, "too-many-rules", out_.signature[f].name, false);
      }
    }
    return std::move(out_);
  }

 private:
  void add(std::size_t rule, std::string restriction, std::string witness, bool strong_only) {
    out_.violations.push_back({{rule, std::move(restriction), std::move(witness)}, strong_only});
  }

  void declare(std::size_t rule, const RawTerm& t) {
    if (vars_.count(t.name)) {
      if (t.has_parens || !t.args.empty()) add(rule, "variable-applied", t.name, false);
      if (t.name.find('#') != std::string::npos) add(rule, "reserved-name", t.name, false);
      return;
    }
    if (t.labels) add(rule, "label-in-rule", t.name, false);
    auto id = out_.signature.find(t.name);
    if (!id) {
      if (reserved_name(t.name)) add(rule, "reserved-name", t.name, false);
      SymbolInfo info;
      info.name = t.name;
      info.arity = t.args.size();
      out_.signature.add(std::move(info));
    } else if (out_.signature[*id].arity != t.args.size()) {
      add(rule, "arity-clash",
          t.name + " used with " + std::to_string(out_.signature[*id].arity) + " and " +
              std::to_string(t.args.size()) + " arguments",
          false);
    }
    for (const RawTerm& a : t.args) declare(rule, a);
  }

  void declare_rule(std::size_t id, const RawRule& rule) {
    declare(id, *rule.lhs);
    declare(id, *rule.rhs);
    for (const auto& [a, b] : rule.conditions) {
      declare(id, *a);
      declare(id, *b);
    }
  }

  Term term(const RawTerm& t) {
    if (vars_.count(t.name)) return Term::variable(t.name);
    std::vector<Term> args;
    for (const RawTerm& a : t.args) args.push_back(term(a));
    return Term::apply(*out_.signature.find(t.name), std::move(args));
  }

  void constructor_check(std::size_t id, const Term& t, const Position& at, const std::string& what,
                         const std::string& restriction) {
    Position p = at;
    std::function<void(const Term&)> walk = [&](const Term& u) {
      if (u.is_variable()) return;
      if (out_.signature.is_defined(u.symbol())) {
        add(id, restriction, what + " at position " + to_string(p), false);
        return;
      }
      for (std::size_t i = 1; i <= u.arity(); ++i) {
        p.push_back(i);
        walk(u.arg(i));
        p.pop_back();
      }
    };
    walk(t);
  }

  void nonlinear_check(std::size_t id, const Term& t, const std::string& restriction,
                       const std::string& prefix) {
    std::map<std::string, int> count;
    std::function<void(const Term&)> walk = [&](const Term& u) {
      if (u.is_variable()) {
        ++count[u.name()];
        return;
      }
      for (const Term& a : u.args()) walk(a);
    };
    walk(t);
    for (const std::string& v : variables(t)) {
      if (count[v] > 1) add(id, restriction, prefix + v, true);
    }
  }

  void build_rule(std::size_t id, const RawRule& raw_rule) {
    if (vars_.count(raw_rule.lhs->name)) {
      add(id, "variable-lhs", raw_rule.lhs->name, false);
      return;
    }
    ConditionalRule rule{id, *out_.signature.find(raw_rule.lhs->name), 0, term(*raw_rule.lhs),
                         term(*raw_rule.rhs), {}};
    for (const auto& [a, b] : raw_rule.conditions) rule.conditions.push_back({term(*a), term(*b)});
    rule.index = ++out_.signature.at(rule.root).rule_count;

    for (std::size_t i = 1; i <= rule.lhs.arity(); ++i) {
      constructor_check(id, rule.lhs.arg(i), Position{i}, "lhs", "lhs-argument-not-constructor");
    }
    std::set<std::string> bound;
    for (const std::string& v : variables(rule.lhs)) bound.insert(v);
    std::set<std::string> condition_vars;
    for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
      const auto& [a, b] = rule.conditions[i];
      std::string tag_a = "a_" + std::to_string(i + 1);
      std::string tag_b = "b_" + std::to_string(i + 1);
      for (const std::string& v : variables(a)) {
        if (!bound.count(v)) add(id, "condition-variable-unbound", tag_a + ": " + v, false);
      }
      constructor_check(id, b, {}, tag_b, "condition-rhs-not-constructor");
      for (const std::string& v : variables(b)) {
        if (bound.count(v)) add(id, "condition-rhs-variable-not-fresh", tag_b + ": " + v, false);
      }
      for (const std::string& v : variables(b)) bound.insert(v);
    }
    for (const std::string& v : variables(rule.rhs)) {
      if (!bound.count(v)) add(id, "rhs-variable-unbound", v, false);
    }
    nonlinear_check(id, rule.lhs, "nonlinear-lhs", "");
    for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
      nonlinear_check(id, rule.conditions[i].rhs, "nonlinear-condition-rhs",
                      "b_" + std::to_string(i + 1) + ": ");
    }
    out_.rules.push_back(std::move(rule));
  }

  const RawSystem& raw_;
  std::set<std::string> vars_;
  Analysis out_;
};

std::vector<Violation> select(const Analysis& analysis, ValidationMode mode) {
  std::vector<Violation> out;
  for (const Flagged& f : analysis.violations) {
    if (!f.strong_only || mode == ValidationMode::strong) out.push_back(f.violation);
  }
  std::stable_sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
    // System-wide violations go last.
    std::size_t ka = a.rule == 0 ? SIZE_MAX : a.rule;
    std::size_t kb = b.rule == 0 ? SIZE_MAX : b.rule;
    return ka < kb;
  });
  return out;
}

}  // namespace

ValidationReport validate(const RawSystem& raw, ValidationMode mode) {
  return {select(Analyzer(raw).run(), mode)};
}

Cctrs Cctrs::build(const RawSystem& raw, ValidationMode mode) {
  Analysis analysis = Analyzer(raw).run();
  ValidationReport report{select(analysis, mode)};
  if (!report.ok()) throw Error(Errc::invalid_system, "system fails validation:\n" + report.to_string());
  Cctrs system;
  system.signature_ = std::move(analysis.signature);
  system.rules_ = std::move(analysis.rules);
  system.by_symbol_.assign(system.signature_.size(), {});
  for (std::size_t r = 0; r < system.rules_.size(); ++r) {
    system.by_symbol_[system.rules_[r].root].push_back(r);
  }
  for (const Flagged& f : analysis.violations) {
    if (f.strong_only) system.strong_report_.violations.push_back(f.violation);
  }
  system.strong_ = system.strong_report_.ok();
  return system;
}

Cctrs Cctrs::from_text(std::string_view text, ValidationMode mode) {
  return build(parse_cops(text), mode);
}

Cctrs Cctrs::from_file(const std::string& path, ValidationMode mode) {
  return build(load_cops(path), mode);
}

std::vector<SymbolId> Cctrs::constructors() const {
  std::vector<SymbolId> out;
  for (SymbolId f = 0; f < signature_.size(); ++f) {
    if (signature_.is_constructor(f)) out.push_back(f);
  }
  return out;
}

std::vector<SymbolId> Cctrs::defined() const {
  std::vector<SymbolId> out;
  for (SymbolId f = 0; f < signature_.size(); ++f) {
    if (signature_.is_defined(f)) out.push_back(f);
  }
  return out;
}

bool Cctrs::is_constructor_term(const Term& t) const {
  if (t.is_variable()) return true;
  if (!signature_.is_constructor(t.symbol())) return false;
  return std::all_of(t.args().begin(), t.args().end(),
                     [this](const Term& a) { return is_constructor_term(a); });
}

bool Cctrs::is_basic(const Term& t) const {
  if (t.is_variable() || !signature_.is_defined(t.symbol())) return false;
  return std::all_of(t.args().begin(), t.args().end(),
                     [this](const Term& a) { return is_constructor_term(a); });
}

std::string Cctrs::show(const ConditionalRule& rule) const {
  std::string out = show(rule.lhs) + " -> " + show(rule.rhs);
  for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
    out += i == 0 ? " | " : ", ";
    out += show(rule.conditions[i].lhs) + " == " + show(rule.conditions[i].rhs);
  }
  return out;
}

}  // namespace ctrc
