#include "ctrc/term.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "syntax.hpp"

namespace ctrc {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::parse: return "PARSE_ERROR";
    case Errc::unknown_symbol: return "UNKNOWN_SYMBOL";
    case Errc::arity: return "ARITY_MISMATCH";
    case Errc::invalid_system: return "INVALID_SYSTEM";
    case Errc::strong_required: return "STRONG_REQUIRED";
    case Errc::not_constructor: return "NOT_CONSTRUCTOR";
    case Errc::not_linear: return "NOT_LINEAR";
    case Errc::not_proper: return "NOT_PROPER";
    case Errc::non_ground: return "NON_GROUND";
    case Errc::missing_component: return "MISSING_COMPONENT";
    case Errc::unbound_reference: return "UNBOUND_REFERENCE";
    case Errc::no_ground_terms: return "NO_GROUND_TERMS";
    case Errc::unverified_premise: return "UNVERIFIED_PREMISE";
    case Errc::overflow: return "OVERFLOW";
    case Errc::invalid_argument: return "INVALID_ARGUMENT";
  }
  return "ERROR";
}

SymbolId Signature::add(SymbolInfo info) {
  if (index_.count(info.name)) {
    throw Error(Errc::invalid_system, "duplicate symbol name '" + info.name + "'");
  }
  auto id = static_cast<SymbolId>(symbols_.size());
  index_.emplace(info.name, id);
  symbols_.push_back(std::move(info));
  return id;
}

std::optional<SymbolId> Signature::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string to_string(const Position& p) {
  if (p.empty()) return "e";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(p[i]);
  }
  return out;
}

bool is_prefix(const Position& prefix, const Position& p) {
  return prefix.size() <= p.size() && std::equal(prefix.begin(), prefix.end(), p.begin());
}

struct Term::Node {
  bool variable = false;
  std::string name;
  SymbolId symbol = 0;
  LabelSet label = kUnlabeled;
  std::vector<Term> args;
  std::size_t hash = 0;
  std::size_t nodes = 0;
  bool ground = true;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const std::vector<Term> kNoArgs;

}  // namespace

Term::Term() : Term(Term::variable("_").node_) {}

Term::Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Term Term::variable(std::string name) {
  auto node = std::make_shared<Node>();
  node->variable = true;
  node->hash = mix(std::hash<std::string>{}(name), 0x51ed);
  node->name = std::move(name);
  node->ground = false;
  return Term(std::move(node));
}

Term Term::apply(SymbolId symbol, std::vector<Term> args, LabelSet label) {
  auto node = std::make_shared<Node>();
  node->symbol = symbol;
  node->label = label;
  std::size_t h = mix(symbol + 1, label);
  std::size_t nodes = 1;
  bool ground = true;
  for (const Term& a : args) {
    h = mix(h, a.hash());
    nodes += a.node_count();
    ground = ground && a.ground();
  }
  node->hash = h;
  node->nodes = nodes;
  node->ground = ground;
  node->args = std::move(args);
  return Term(std::move(node));
}

bool Term::is_variable() const { return node_->variable; }
const std::string& Term::name() const { return node_->name; }
SymbolId Term::symbol() const { return node_->symbol; }
LabelSet Term::label() const { return node_->label; }
const std::vector<Term>& Term::args() const { return node_->variable ? kNoArgs : node_->args; }
bool Term::ground() const { return node_->ground; }
std::size_t Term::hash() const { return node_->hash; }
std::size_t Term::node_count() const { return node_->nodes; }

const Term& Term::at(const Position& p) const {
  const Term* t = this;
  for (std::size_t i : p) {
    if (i == 0 || i > t->arity()) throw Error(Errc::invalid_argument, "invalid position " + to_string(p));
    t = &t->arg(i);
  }
  return *t;
}

namespace {

Term replace_from(const Term& t, const Position& p, std::size_t depth, const Term& r) {
  if (depth == p.size()) return r;
  std::size_t i = p[depth];
  if (i == 0 || i > t.arity()) throw Error(Errc::invalid_argument, "invalid position " + to_string(p));
  std::vector<Term> args = t.args();
  args[i - 1] = replace_from(args[i - 1], p, depth + 1, r);
  return t.with_args(std::move(args));
}

}  // namespace

Term Term::replace_at(const Position& p, const Term& replacement) const {
  return replace_from(*this, p, 0, replacement);
}

Term Term::with_label(LabelSet label) const { return apply(symbol(), args(), label); }

Term Term::with_args(std::vector<Term> args) const { return apply(symbol(), std::move(args), label()); }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.variable != y.variable) return false;
  if (x.variable) return x.name == y.name;
  if (x.symbol != y.symbol || x.label != y.label || x.args.size() != y.args.size()) return false;
  for (std::size_t i = 0; i < x.args.size(); ++i) {
    if (!(x.args[i] == y.args[i])) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.variable != y.variable) return x.variable ? std::strong_ordering::less : std::strong_ordering::greater;
  if (x.variable) return x.name <=> y.name;
  if (auto c = x.symbol <=> y.symbol; c != 0) return c;
  if (auto c = x.label <=> y.label; c != 0) return c;
  if (auto c = x.args.size() <=> y.args.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.args.size(); ++i) {
    if (auto c = x.args[i] <=> y.args[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position current;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    out.push_back(current);
    for (std::size_t i = 1; i <= u.arity(); ++i) {
      current.push_back(i);
      walk(u.arg(i));
      current.pop_back();
    }
  };
  walk(t);
  return out;
}

Term substitute(const Term& t, const Substitution& sigma) {
  if (t.is_variable()) {
    auto it = sigma.find(t.name());
    return it == sigma.end() ? t : it->second;
  }
  if (t.ground()) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(substitute(a, sigma));
  return t.with_args(std::move(args));
}

bool match_into(const Term& pattern, const Term& subject, Substitution& sigma) {
  if (pattern.is_variable()) {
    auto [it, inserted] = sigma.emplace(pattern.name(), subject);
    return inserted || it->second == subject;
  }
  if (subject.is_variable() || pattern.symbol() != subject.symbol() ||
      pattern.label() != subject.label() || pattern.arity() != subject.arity()) {
    return false;
  }
  for (std::size_t i = 1; i <= pattern.arity(); ++i) {
    if (!match_into(pattern.arg(i), subject.arg(i), sigma)) return false;
  }
  return true;
}

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
  Substitution sigma;
  if (!match_into(pattern, subject, sigma)) return std::nullopt;
  return sigma;
}

bool occurs(const std::string& var, const Term& t) {
  if (t.is_variable()) return t.name() == var;
  if (t.ground()) return false;
  for (const Term& a : t.args()) {
    if (occurs(var, a)) return true;
  }
  return false;
}

namespace {

// Bindings are kept in triangular form and resolved on demand.
Term walk(const Term& t, const Substitution& bindings) {
  Term current = t;
  while (current.is_variable()) {
    auto it = bindings.find(current.name());
    if (it == bindings.end()) break;
    current = it->second;
  }
  return current;
}

Term resolve(const Term& t, const Substitution& bindings) {
  Term w = walk(t, bindings);
  if (w.is_variable() || w.ground()) return w;
  std::vector<Term> args;
  args.reserve(w.arity());
  for (const Term& a : w.args()) args.push_back(resolve(a, bindings));
  return w.with_args(std::move(args));
}

bool occurs_resolved(const std::string& var, const Term& t, const Substitution& bindings) {
  Term w = walk(t, bindings);
  if (w.is_variable()) return w.name() == var;
  if (w.ground()) return false;
  for (const Term& a : w.args()) {
    if (occurs_resolved(var, a, bindings)) return true;
  }
  return false;
}

bool unify_into(const Term& s, const Term& t, Substitution& bindings) {
  Term a = walk(s, bindings);
  Term b = walk(t, bindings);
  if (a.is_variable() && b.is_variable() && a.name() == b.name()) return true;
  if (a.is_variable()) {
    if (occurs_resolved(a.name(), b, bindings)) return false;
    bindings.emplace(a.name(), b);
    return true;
  }
  if (b.is_variable()) {
    if (occurs_resolved(b.name(), a, bindings)) return false;
    bindings.emplace(b.name(), a);
    return true;
  }
  if (a.symbol() != b.symbol() || a.label() != b.label() || a.arity() != b.arity()) return false;
  for (std::size_t i = 1; i <= a.arity(); ++i) {
    if (!unify_into(a.arg(i), b.arg(i), bindings)) return false;
  }
  return true;
}

}  // namespace

std::optional<Substitution> unify(const Term& s, const Term& t) {
  Substitution bindings;
  if (!unify_into(s, t, bindings)) return std::nullopt;
  Substitution mgu;
  for (const auto& [name, value] : bindings) mgu.emplace(name, resolve(value, bindings));
  return mgu;
}

void collect_variables(const Term& t, std::vector<std::string>& out) {
  if (t.is_variable()) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    return;
  }
  if (t.ground()) return;
  for (const Term& a : t.args()) collect_variables(a, out);
}

std::vector<std::string> variables(const Term& t) {
  std::vector<std::string> out;
  collect_variables(t, out);
  return out;
}

bool is_linear(const Term& t) {
  std::set<std::string> seen;
  std::function<bool(const Term&)> walk_linear = [&](const Term& u) {
    if (u.is_variable()) return seen.insert(u.name()).second;
    for (const Term& a : u.args()) {
      if (!walk_linear(a)) return false;
    }
    return true;
  };
  return walk_linear(t);
}

std::string FreshNames::next() { return base_ + "#" + std::to_string(++counter_); }

std::size_t term_size(const Term& t, const Signature& sig) {
  if (t.is_variable()) return 0;
  std::size_t n = sig[t.symbol()].role == AuxRole::top ? 0 : 1;
  for (const Term& a : t.args()) n += term_size(a, sig);
  return n;
}

namespace {

void print(const Term& t, const Signature& sig, std::ostringstream& out) {
  if (t.is_variable()) {
    out << t.name();
    return;
  }
  out << sig[t.symbol()].name;
  if (t.is_labeled()) {
    out << '{';
    bool first = true;
    for (std::size_t i = 1; i <= kMaxRulesPerSymbol; ++i) {
      if (!label_has(t.label(), i)) continue;
      if (!first) out << ',';
      first = false;
      out << i;
    }
    out << '}';
  }
  if (t.arity() > 0) {
    out << '(';
    for (std::size_t i = 1; i <= t.arity(); ++i) {
      if (i > 1) out << ',';
      print(t.arg(i), sig, out);
    }
    out << ')';
  }
}

Term build(const syntax::RawTerm& raw, const Signature& sig) {
  auto id = sig.find(raw.name);
  if (!id) {
    if (raw.has_parens || raw.labels) {
      throw Error(Errc::unknown_symbol, "unknown symbol '" + raw.name + "'");
    }
    return Term::variable(raw.name);
  }
  const SymbolInfo& info = sig[*id];
  if (raw.args.size() != info.arity) {
    throw Error(Errc::arity, "symbol '" + raw.name + "' expects " + std::to_string(info.arity) +
                                 " arguments, got " + std::to_string(raw.args.size()));
  }
  LabelSet label = kUnlabeled;
  if (raw.labels) {
    if (info.kind != SymbolKind::defined) {
      throw Error(Errc::invalid_argument, "only defined symbols carry labels: '" + raw.name + "'");
    }
    label = 0;
    for (std::size_t i : *raw.labels) {
      if (i > info.rule_count) {
        throw Error(Errc::invalid_argument, "'" + raw.name + "' has no rule " + std::to_string(i));
      }
      label |= LabelSet{1} << (i - 1);
    }
  }
  std::vector<Term> args;
  for (const auto& a : raw.args) args.push_back(build(a, sig));
  return Term::apply(*id, std::move(args), label);
}

}  // namespace

std::string to_string(const Term& t, const Signature& sig) {
  std::ostringstream out;
  print(t, sig, out);
  return out.str();
}

Term parse_term(std::string_view text, const Signature& sig) {
  syntax::TokenStream in(syntax::tokenize(text));
  syntax::RawTerm raw = syntax::parse_raw_term(in);
  if (!in.at_end()) syntax::fail(in.peek().line, "trailing input after term");
  return build(raw, sig);
}

}  // namespace ctrc
