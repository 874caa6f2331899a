#include "ctrc/labeled.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <tuple>

#include "ctrc/enumerate.hpp"

namespace ctrc {

Term label(const Term& t, const Cctrs& system) {
  if (t.is_variable()) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(label(a, system));
  const Signature& sig = system.signature();
  LabelSet l = sig.is_defined(t.symbol()) ? full_label(sig[t.symbol()].rule_count) : kUnlabeled;
  return Term::apply(t.symbol(), std::move(args), l);
}

Term erase(const Term& t) {
  if (t.is_variable()) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(erase(a));
  return Term::apply(t.symbol(), std::move(args));
}

std::size_t label_weight(const Term& t) {
  if (t.is_variable()) return 0;
  std::size_t n = t.is_labeled() ? static_cast<std::size_t>(std::popcount(t.label())) : 0;
  for (const Term& a : t.args()) n += label_weight(a);
  return n;
}

bool is_labeled_normal_form(const Term& t, const Signature& sig) {
  if (t.is_variable()) return true;
  if (sig.is_defined(t.symbol()) && t.label() != 0) return false;
  for (const Term& a : t.args()) {
    if (!is_labeled_normal_form(a, sig)) return false;
  }
  return true;
}

namespace {

Term generalize(const Term& t, const Signature& sig, FreshNames& names, Substitution& binding) {
  if (t.is_variable()) return t;
  if (sig.is_defined(t.symbol()) && t.label() != 0) {
    Term x = names.next_variable();
    binding.emplace(x.name(), t);
    return x;
  }
  if (is_labeled_normal_form(t, sig)) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(generalize(a, sig, names, binding));
  return t.with_args(std::move(args));
}

// A labeled term v can still reduce to an instance of b exactly when its
// maximal linear normal-form generalization unifies with b.
bool may_reach_instance(const Term& v, const Term& b, const Signature& sig) {
  FreshNames names("x");
  Substitution unused;
  Term pattern = erase(generalize(v, sig, names, unused));
  return unify(pattern, b).has_value();
}

struct Partial {
  std::uint64_t cost = 0;
  std::vector<ConditionWitness> witnesses;
};

void keep_max(std::map<Substitution, Partial>& level, Substitution sigma, Partial p) {
  auto [it, inserted] = level.try_emplace(std::move(sigma), p);
  if (!inserted && it->second.cost < p.cost) it->second = std::move(p);
}

}  // namespace

Generalization lnf_generalization(const Term& t, const Signature& sig, FreshNames& names) {
  Generalization g;
  g.pattern = generalize(t, sig, names, g.binding);
  return g;
}

Generalization lnf_generalization(const Term& t, const Signature& sig) {
  FreshNames names("x");
  return lnf_generalization(t, sig, names);
}

const char* to_string(StepKind kind) {
  switch (kind) {
    case StepKind::bot:
      return "bot";
    case StepKind::success:
      return "success";
    case StepKind::fail:
      return "fail";
  }
  return "?";
}

LabeledEngine::LabeledEngine(const Cctrs& system, SearchBudget budget)
    : system_(system), budget_(budget) {
  for (const ConditionalRule& rule : system_.rules()) {
    labeled_rhs_.push_back(label(rule.rhs, system_));
    std::vector<Term> conditions;
    for (const Condition& c : rule.conditions) conditions.push_back(label(c.lhs, system_));
    labeled_conditions_.push_back(std::move(conditions));
  }
}

void LabeledEngine::diverge() {
  for (const Term& t : active_) diverging_.insert(t);
  throw Diverges{};
}

void LabeledEngine::activate(const Term& t) {
  if (diverging_.count(t) || active_set_.count(t)) diverge();
  active_.push_back(t);
  active_set_.insert(t);
}

void LabeledEngine::deactivate(const Term& t) {
  active_set_.erase(t);
  auto it = std::find(active_.rbegin(), active_.rend(), t);
  if (it != active_.rend()) active_.erase(std::next(it).base());
}

void LabeledEngine::begin_query() {
  active_.clear();
  active_set_.clear();
  states_ = 0;
  depth_ = 0;
  best_ = 0;
}

void LabeledEngine::require_ground(const Term& s) const {
  if (!s.ground()) {
    throw Error(Errc::non_ground, "labeled reduction needs a ground term: " + system_.show(s));
  }
  const Signature& sig = system_.signature();
  for (const Position& p : positions(s)) {
    const Term& sub = s.at(p);
    if (!sig.is_defined(sub.symbol())) continue;
    if (!sub.is_labeled()) {
      throw Error(Errc::invalid_argument,
                  "defined symbol without label at position " + to_string(p));
    }
    if (sub.label() & ~full_label(sig[sub.symbol()].rule_count)) {
      throw Error(Errc::invalid_argument, "label names a missing rule at position " + to_string(p));
    }
  }
}

std::shared_ptr<const LabeledEngine::NodeInfo> LabeledEngine::node(const Term& u) {
  if (auto it = nodes_.find(u); it != nodes_.end()) return it->second;
  if (++states_ > budget_.max_states) throw OutOfBudget{};
  auto info = compute(u);
  nodes_.emplace(u, info);
  return info;
}

std::shared_ptr<const LabeledEngine::NodeInfo> LabeledEngine::compute(const Term& u) {
  const Signature& sig = system_.signature();
  using Key = std::tuple<Position, std::size_t, int, Term>;
  std::map<Key, LabeledStep> steps;
  std::set<Term> quasi;

  auto record = [&](LabeledStep step) {
    Key key{step.position, step.rule, static_cast<int>(step.kind), step.target};
    auto [it, inserted] = steps.try_emplace(key, step);
    if (!inserted && it->second.cost < step.cost) it->second = std::move(step);
  };

  for (const Position& p : positions(u)) {
    const Term& sub = u.at(p);
    if (!sig.is_defined(sub.symbol()) || sub.label() == 0) continue;
    std::size_t m = sig[sub.symbol()].rule_count;
    for (std::size_t i = 1; i <= m; ++i) {
      if (!label_has(sub.label(), i)) continue;
      const ConditionalRule& rule = system_.rule_of(sub.symbol(), i);
      Term removed = u.replace_at(p, sub.with_label(label_without(sub.label(), i)));

      FreshNames names("x");
      std::vector<Term> pattern_args;
      Substitution unused;
      for (const Term& a : sub.args()) {
        pattern_args.push_back(erase(generalize(a, sig, names, unused)));
      }
      if (!unify(Term::apply(sub.symbol(), pattern_args), rule.lhs)) {
        record({u, removed, StepKind::bot, p, rule.id, 0, {}});
        continue;
      }

      Substitution sigma;
      bool matched = true;
      for (std::size_t a = 1; a <= sub.arity() && matched; ++a) {
        matched = match_into(rule.lhs.arg(a), sub.arg(a), sigma);
      }
      if (!matched) continue;

      std::map<Substitution, Partial> level;
      level.emplace(std::move(sigma), Partial{});
      const auto& starts = labeled_conditions_[rule.id - 1];
      bool failed = false;
      Partial failure;
      for (std::size_t j = 0; j < rule.conditions.size() && !level.empty(); ++j) {
        const Term& b = rule.conditions[j].rhs;
        std::map<Substitution, Partial> next;
        for (const auto& [partial, acc] : level) {
          Term start = substitute(starts[j], partial);
          quasi.insert(start);
          auto reached = reach(start);
          for (const auto& [v, cv] : *reached) {
            Partial extended{acc.cost + cv, acc.witnesses};
            extended.witnesses.push_back({j + 1, start, v, cv});
            Substitution s2 = partial;
            if (match_into(b, v, s2)) {
              keep_max(next, std::move(s2), std::move(extended));
            } else if (!may_reach_instance(v, b, sig)) {
              if (!failed || failure.cost < extended.cost) failure = std::move(extended);
              failed = true;
            }
          }
        }
        level = std::move(next);
      }
      if (failed) {
        record({u, removed, StepKind::fail, p, rule.id, failure.cost, std::move(failure.witnesses)});
      }
      for (const auto& [full, acc] : level) {
        Term target = u.replace_at(p, substitute(labeled_rhs_[rule.id - 1], full));
        record({u, target, StepKind::success, p, rule.id, acc.cost + 1, acc.witnesses});
      }
    }
  }

  auto info = std::make_shared<NodeInfo>();
  for (auto& [key, step] : steps) info->steps.push_back(std::move(step));
  info->quasi.assign(quasi.begin(), quasi.end());
  return info;
}

std::shared_ptr<const LabeledEngine::Reach> LabeledEngine::reach(const Term& t) {
  if (diverging_.count(t) || active_set_.count(t)) diverge();
  if (auto it = reaches_.find(t); it != reaches_.end()) return it->second;
  if (depth_ >= budget_.max_depth) throw OutOfBudget{};
  ++depth_;

  struct Frame {
    Term term;
    std::shared_ptr<const NodeInfo> info;
    std::size_t next = 0;
  };
  std::unordered_map<Term, std::shared_ptr<const NodeInfo>, TermHash> done;
  std::vector<Term> postorder;
  std::vector<Frame> stack;

  activate(t);
  stack.push_back({t, node(t)});
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next < top.info->steps.size()) {
      const Term& v = top.info->steps[top.next++].target;
      if (done.count(v)) continue;
      activate(v);
      auto info = node(v);
      stack.push_back({v, std::move(info)});
      continue;
    }
    deactivate(top.term);
    done.emplace(top.term, top.info);
    postorder.push_back(top.term);
    stack.pop_back();
  }

  std::unordered_map<Term, std::uint64_t, TermHash> cost{{t, 0}};
  auto result = std::make_shared<Reach>();
  for (auto it = postorder.rbegin(); it != postorder.rend(); ++it) {
    std::uint64_t c = cost.at(*it);
    result->emplace_back(*it, c);
    for (const LabeledStep& step : done.at(*it)->steps) {
      auto [slot, inserted] = cost.try_emplace(step.target, c + step.cost);
      if (!inserted) slot->second = std::max(slot->second, c + step.cost);
    }
  }

  --depth_;
  reaches_.emplace(t, result);
  return result;
}

std::uint64_t LabeledEngine::longest(const Term& s) {
  if (auto it = longest_.find(s); it != longest_.end()) return it->second;

  struct Frame {
    Term term;
    std::shared_ptr<const NodeInfo> info;
    std::size_t next = 0;
    std::uint64_t prefix = 0;
    std::uint64_t value = 0;
  };
  std::vector<Frame> stack;
  activate(s);
  stack.push_back({s, node(s)});
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next < top.info->steps.size()) {
      const LabeledStep& step = top.info->steps[top.next++];
      if (auto it = longest_.find(step.target); it != longest_.end()) {
        top.value = std::max(top.value, step.cost + it->second);
        best_ = std::max(best_, top.prefix + top.value);
        continue;
      }
      std::uint64_t prefix = top.prefix + step.cost;
      best_ = std::max(best_, prefix);
      activate(step.target);
      auto info = node(step.target);
      stack.push_back({step.target, std::move(info), 0, prefix, 0});
      continue;
    }
    Frame finished = std::move(top);
    stack.pop_back();
    deactivate(finished.term);
    longest_.emplace(finished.term, finished.value);
    if (!stack.empty()) {
      Frame& parent = stack.back();
      const LabeledStep& step = parent.info->steps[parent.next - 1];
      parent.value = std::max(parent.value, step.cost + finished.value);
      best_ = std::max(best_, parent.prefix + parent.value);
    }
  }
  return longest_.at(s);
}

StepSet LabeledEngine::steps(const Term& s) {
  require_ground(s);
  begin_query();
  StepSet out;
  try {
    activate(s);
    out.steps = node(s)->steps;
  } catch (const Diverges&) {
    out.verdict = Verdict::diverges;
  } catch (const OutOfBudget&) {
    out.verdict = Verdict::budget_exceeded;
  }
  begin_query();
  return out;
}

QuasiSet LabeledEngine::quasi_steps(const Term& s) {
  require_ground(s);
  begin_query();
  QuasiSet out;
  try {
    activate(s);
    out.targets = node(s)->quasi;
  } catch (const Diverges&) {
    out.verdict = Verdict::diverges;
  } catch (const OutOfBudget&) {
    out.verdict = Verdict::budget_exceeded;
  }
  begin_query();
  return out;
}

ReachSet LabeledEngine::reachable(const Term& s) {
  require_ground(s);
  begin_query();
  ReachSet out;
  try {
    out.terms = *reach(s);
  } catch (const Diverges&) {
    out.verdict = Verdict::diverges;
  } catch (const OutOfBudget&) {
    out.verdict = Verdict::budget_exceeded;
  }
  begin_query();
  return out;
}

Cost LabeledEngine::derivation_height(const Term& s) {
  require_ground(s);
  begin_query();
  Cost result = Cost::finite(0);
  try {
    result = Cost::finite(longest(s));
  } catch (const Diverges&) {
    result = Cost::infinite();
  } catch (const OutOfBudget&) {
    result = Cost::at_least(best_);
  }
  begin_query();
  return result;
}

Cost conditional_complexity(LabeledEngine& engine, std::size_t n, ComplexityMode mode) {
  const Cctrs& system = engine.system();
  const Signature& sig = system.signature();
  bool has_constant = false;
  for (SymbolId f = 0; f < sig.size(); ++f) has_constant |= sig[f].arity == 0;
  if (!has_constant) throw Error(Errc::no_ground_terms, "the signature has no constant");
  std::vector<Term> terms = mode == ComplexityMode::crc ? ground_basic_terms(system, n)
                                                        : ground_terms(plain_variants(system), n);
  Cost worst = Cost::finite(0);
  for (const Term& t : terms) {
    worst = combine_max(worst, engine.derivation_height(label(t, system)));
    if (worst.is_infinite()) break;
  }
  return worst;
}

Cost conditional_complexity(const Cctrs& system, std::size_t n, ComplexityMode mode,
                            SearchBudget budget) {
  LabeledEngine engine(system, budget);
  return conditional_complexity(engine, n, mode);
}

}  // namespace ctrc
