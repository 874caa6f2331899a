#include "ctrc/xi.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ctrc {

bool is_active(const ReplacementMap& mu, SymbolId f, std::size_t arg) {
  if (f >= mu.size()) return false;
  const auto& args = mu[f];
  return std::binary_search(args.begin(), args.end(), arg);
}

namespace {

void collect_active(const Term& t, const ReplacementMap& mu, Position& at,
                    std::vector<Position>& out) {
  out.push_back(at);
  if (t.is_variable()) return;
  for (std::size_t i = 1; i <= t.arity(); ++i) {
    if (!is_active(mu, t.symbol(), i)) continue;
    at.push_back(i);
    collect_active(t.arg(i), mu, at, out);
    at.pop_back();
  }
}

}  // namespace

std::vector<Position> active_positions(const Term& t, const ReplacementMap& mu) {
  std::vector<Position> out;
  Position at;
  collect_active(t, mu, at, out);
  return out;
}

std::size_t TransformedTrs::base_arity(SymbolId f) const {
  const SymbolInfo& info = signature[f];
  return info.kind == SymbolKind::defined ? info.arity - info.rule_count : info.arity;
}

SymbolId TransformedTrs::progress_symbol(SymbolId f, std::size_t i, std::size_t j) const {
  auto it = progress.find({f, i, j});
  if (it == progress.end()) {
    throw Error(Errc::unknown_symbol, "no progress symbol " + signature[f].name + "#" +
                                          std::to_string(i) + "#" + std::to_string(j));
  }
  return it->second;
}

std::string TransformedTrs::show(const XiRule& rule) const {
  return show(rule.lhs) + (rule.cost ? " -> " : " ->= ") + show(rule.rhs);
}

Term xi(const Term& t, const TransformedTrs& h, Star star) {
  if (t.is_variable()) return t;
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(xi(a, h, star));
  const SymbolInfo& info = h.signature[t.symbol()];
  if (info.kind == SymbolKind::defined) {
    Term flag = Term::apply(star == Star::top ? h.top : h.bot);
    args.insert(args.end(), info.rule_count, flag);
  }
  return Term::apply(t.symbol(), std::move(args));
}

std::vector<Term> anti_patterns(const Term& t, const TransformedTrs& h, FreshNames& names) {
  if (t.is_variable()) return {};
  const Signature& sig = h.signature;
  if (sig[t.symbol()].kind != SymbolKind::constructor) {
    throw Error(Errc::not_constructor, "anti-patterns need a constructor term: " + h.show(t));
  }
  if (!is_linear(t)) {
    throw Error(Errc::not_linear, "anti-patterns need a linear term: " + h.show(t));
  }
  for (const Term& a : t.args()) {
    for (const Position& p : positions(a)) {
      const Term& sub = a.at(p);
      if (!sub.is_variable() && sig[sub.symbol()].kind != SymbolKind::constructor) {
        throw Error(Errc::not_constructor, "anti-patterns need a constructor term: " + h.show(t));
      }
    }
  }

  auto fresh = [&](std::size_t n) {
    std::vector<Term> xs;
    for (std::size_t k = 0; k < n; ++k) xs.push_back(names.next_variable());
    return xs;
  };

  std::vector<Term> out;
  for (SymbolId g = 0; g < sig.size(); ++g) {
    if (sig[g].kind == SymbolKind::constructor && g != t.symbol()) {
      out.push_back(Term::apply(g, fresh(sig[g].arity)));
    }
  }
  for (SymbolId g = 0; g < sig.size(); ++g) {
    if (sig[g].kind != SymbolKind::defined) continue;
    std::vector<Term> args = fresh(h.base_arity(g));
    args.insert(args.end(), sig[g].rule_count, Term::apply(h.bot));
    out.push_back(Term::apply(g, std::move(args)));
  }
  for (std::size_t i = 1; i <= t.arity(); ++i) {
    for (Term& u : anti_patterns(t.arg(i), h, names)) {
      std::vector<Term> args;
      for (std::size_t k = 1; k <= t.arity(); ++k) {
        args.push_back(k == i ? u : names.next_variable());
      }
      out.push_back(Term::apply(t.symbol(), std::move(args)));
    }
  }
  return out;
}

std::vector<Term> anti_patterns(const Term& t, const TransformedTrs& h) {
  FreshNames names("x");
  return anti_patterns(t, h, names);
}

namespace {

bool proper(const Term& t, const TransformedTrs& h, bool& all_top, bool& all_bot) {
  if (t.is_variable()) return true;
  const SymbolInfo& info = h.signature[t.symbol()];
  if (info.kind == SymbolKind::auxiliary) return false;
  std::size_t n = h.base_arity(t.symbol());
  for (std::size_t i = 1; i <= n; ++i) {
    if (!proper(t.arg(i), h, all_top, all_bot)) return false;
  }
  for (std::size_t i = n + 1; i <= t.arity(); ++i) {
    const Term& c = t.arg(i);
    if (c.is_variable()) return false;
    if (c.symbol() == h.top) {
      all_bot = false;
    } else if (c.symbol() == h.bot) {
      all_top = false;
    } else {
      return false;
    }
  }
  return true;
}

}  // namespace

HTermClass classify(const Term& t, const TransformedTrs& h) {
  HTermClass out;
  bool all_top = true;
  bool all_bot = true;
  out.proper = proper(t, h, all_top, all_bot);
  if (!out.proper) return out;
  out.bottom_pattern = all_bot && is_linear(t);
  out.top_term = all_top;
  return out;
}

Term zeta(const Term& t, const TransformedTrs& h) {
  if (t.is_variable()) return t;
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(zeta(a, h));
  const SymbolInfo& info = h.signature[t.symbol()];
  if (info.kind == SymbolKind::defined) {
    if (!t.is_labeled()) {
      throw Error(Errc::invalid_argument, "zeta needs a labeled term: " + h.show(t));
    }
    for (std::size_t i = 1; i <= info.rule_count; ++i) {
      args.push_back(Term::apply(label_has(t.label(), i) ? h.top : h.bot));
    }
  }
  return Term::apply(t.symbol(), std::move(args));
}

Term zeta_inverse(const Term& t, const TransformedTrs& h) {
  if (!classify(t, h).proper) {
    throw Error(Errc::not_proper, "not a proper term: " + h.show(t));
  }
  if (t.is_variable()) return t;
  const SymbolInfo& info = h.signature[t.symbol()];
  std::size_t n = h.base_arity(t.symbol());
  std::vector<Term> args;
  for (std::size_t i = 1; i <= n; ++i) args.push_back(zeta_inverse(t.arg(i), h));
  if (info.kind != SymbolKind::defined) return Term::apply(t.symbol(), std::move(args));
  LabelSet l = 0;
  for (std::size_t i = 1; i <= info.rule_count; ++i) {
    if (t.arg(n + i).symbol() == h.top) l |= LabelSet{1} << (i - 1);
  }
  return Term::apply(t.symbol(), std::move(args), l);
}

namespace {

struct Builder {
  const Cctrs& system;
  TransformedTrs& h;
  ApMode mode;

  Term flag(Star s) const { return Term::apply(s == Star::top ? h.top : h.bot); }

  // Arguments l1..ln followed by the flag variables with the i-th replaced by
  // the given sequence.
  std::vector<Term> args(const std::vector<Term>& ls, const std::vector<Term>& flags,
                         std::size_t i, const std::vector<Term>& middle) const {
    std::vector<Term> out = ls;
    out.insert(out.end(), flags.begin(), flags.begin() + static_cast<long>(i - 1));
    out.insert(out.end(), middle.begin(), middle.end());
    out.insert(out.end(), flags.begin() + static_cast<long>(i), flags.end());
    return out;
  }

  void add(std::string id, int kind, std::size_t origin, std::size_t condition, Term lhs, Term rhs,
           unsigned cost) {
    h.rules.push_back({std::move(id), kind, origin, condition, std::move(lhs), std::move(rhs), cost});
  }

  std::vector<Term> patterns(const Term& t) const {
    if (t.is_variable()) return {};
    if (mode == ApMode::var) return {Term::variable("x#1")};
    return anti_patterns(t, h);
  }

  void emit(const ConditionalRule& rule) {
    SymbolId f = rule.root;
    std::size_t m = system.rule_count(f);
    std::size_t i = rule.index;
    std::size_t k = rule.conditions.size();
    std::string base = std::to_string(rule.id);
    const std::vector<Term>& ls = rule.lhs.args();
    std::vector<Term> flags;
    for (std::size_t c = 1; c <= m; ++c) flags.push_back(Term::variable("c#" + std::to_string(c)));
    Term top = flag(Star::top);
    Term bot = flag(Star::bot);
    Term rhs = xi(rule.rhs, h, Star::top);

    if (k == 0) {
      add("1_" + base, 1, rule.id, 0, Term::apply(f, args(ls, flags, i, {top})), rhs, 1);
    } else {
      std::vector<Term> bs;
      for (const Condition& c : rule.conditions) bs.push_back(c.rhs);
      auto progress = [&](std::size_t j, std::vector<Term> middle) {
        return Term::apply(h.progress_symbol(f, i, j), args(ls, flags, i, middle));
      };
      add("2_" + base, 2, rule.id, 1, Term::apply(f, args(ls, flags, i, {top})),
          progress(1, {xi(rule.conditions[0].lhs, h, Star::top)}), 0);
      add("3_" + base, 3, rule.id, k, progress(k, bs), rhs, 1);
      for (std::size_t j = 1; j < k; ++j) {
        std::vector<Term> middle(bs.begin(), bs.begin() + static_cast<long>(j));
        std::vector<Term> next = middle;
        next.push_back(xi(rule.conditions[j].lhs, h, Star::top));
        add("4_" + base + "." + std::to_string(j), 4, rule.id, j, progress(j, middle),
            progress(j + 1, next), 0);
      }
      Term failed = Term::apply(f, args(ls, flags, i, {bot}));
      for (std::size_t j = 1; j <= k; ++j) {
        std::vector<Term> vs = patterns(bs[j - 1]);
        for (std::size_t a = 0; a < vs.size(); ++a) {
          std::vector<Term> middle(bs.begin(), bs.begin() + static_cast<long>(j - 1));
          middle.push_back(vs[a]);
          std::string id = "5_" + base + "." + std::to_string(j);
          if (mode == ApMode::full) id += "." + std::to_string(a + 1);
          add(std::move(id), 5, rule.id, j, progress(j, middle), failed, 0);
        }
      }
    }

    std::vector<Term> ys;
    for (std::size_t c = 1; c <= ls.size(); ++c) ys.push_back(Term::variable("y#" + std::to_string(c)));
    if (mode == ApMode::var) {
      bool any = std::any_of(ls.begin(), ls.end(), [](const Term& l) { return !l.is_variable(); });
      if (any) {
        add("6_" + base, 6, rule.id, 0, Term::apply(f, args(ys, flags, i, {top})),
            Term::apply(f, args(ys, flags, i, {bot})), 0);
      }
      return;
    }
    for (std::size_t j = 1; j <= ls.size(); ++j) {
      std::vector<Term> vs = patterns(ls[j - 1]);
      for (std::size_t a = 0; a < vs.size(); ++a) {
        std::vector<Term> with = ys;
        with[j - 1] = vs[a];
        add("6_" + base + "." + std::to_string(j) + "." + std::to_string(a + 1), 6, rule.id, j,
            Term::apply(f, args(with, flags, i, {top})),
            Term::apply(f, args(with, flags, i, {bot})), 0);
      }
    }
  }
};

}  // namespace

TransformedTrs transform(const Cctrs& system, ApMode mode) {
  if (!system.strong()) {
    throw Error(Errc::strong_required,
                "the transformation needs a strong system\n" + system.strong_report().to_string());
  }
  const Signature& f = system.signature();
  for (const char* reserved : {"top", "bot"}) {
    if (f.find(reserved)) {
      throw Error(Errc::invalid_system,
                  std::string("symbol name ") + reserved + " is reserved by the transformation");
    }
  }

  TransformedTrs h;
  for (const SymbolInfo& info : f.symbols()) {
    SymbolInfo widened = info;
    widened.arity = info.arity + info.rule_count;
    h.signature.add(widened);
    std::vector<std::size_t> active;
    for (std::size_t a = 1; a <= info.arity; ++a) active.push_back(a);
    h.mu.push_back(std::move(active));
  }
  h.top = h.signature.add({"top", 0, SymbolKind::auxiliary, AuxRole::top});
  h.mu.emplace_back();
  h.bot = h.signature.add({"bot", 0, SymbolKind::auxiliary, AuxRole::bot});
  h.mu.emplace_back();
  for (SymbolId g : system.defined()) {
    std::size_t n = f[g].arity;
    std::size_t m = f[g].rule_count;
    for (std::size_t i = 1; i <= m; ++i) {
      const ConditionalRule& rule = system.rule_of(g, i);
      for (std::size_t j = 1; j <= rule.conditions.size(); ++j) {
        SymbolInfo info;
        info.name = f[g].name + "#" + std::to_string(i) + "#" + std::to_string(j);
        info.arity = n + m + j - 1;
        info.kind = SymbolKind::auxiliary;
        info.role = AuxRole::progress;
        info.base = g;
        info.rule = i;
        info.condition = j;
        SymbolId id = h.signature.add(info);
        h.progress.emplace(std::make_tuple(g, i, j), id);
        h.mu.push_back({n + i + j - 1});
      }
    }
  }

  Builder builder{system, h, mode};
  for (const ConditionalRule& rule : system.rules()) builder.emit(rule);
  return h;
}

std::string to_tpdb(const TransformedTrs& h, TpdbStyle style) {
  std::vector<std::string> vars;
  std::set<std::string> seen;
  for (const XiRule& rule : h.rules) {
    for (const Term* side : {&rule.lhs, &rule.rhs}) {
      for (const std::string& v : variables(*side)) {
        if (seen.insert(v).second) vars.push_back(v);
      }
    }
  }
  std::ostringstream out;
  out << "(VAR";
  for (const std::string& v : vars) out << ' ' << v;
  out << ")\n";
  if (style == TpdbStyle::context_sensitive) {
    out << "(STRATEGY CONTEXTSENSITIVE";
    for (SymbolId g = 0; g < h.signature.size(); ++g) {
      out << "\n  (" << h.signature[g].name;
      for (std::size_t a : h.mu[g]) out << ' ' << a;
      out << ')';
    }
    out << "\n)\n";
  }
  out << "(RULES\n";
  for (const XiRule& rule : h.rules) out << "  " << h.show(rule) << '\n';
  out << ")\n";
  return out.str();
}

}  // namespace ctrc
