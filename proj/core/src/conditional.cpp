#include <deque>
#include <set>

#include "ctrc/cctrs.hpp"

namespace ctrc {

ConditionalRewriter::ConditionalRewriter(const Cctrs& system, SearchBudget budget)
    : system_(system), budget_(budget) {}

std::shared_ptr<const ConditionalRewriter::Node> ConditionalRewriter::node(const Term& s,
                                                                           std::size_t depth) {
  if (auto it = nodes_.find(s); it != nodes_.end()) return it->second;
  auto result = std::make_shared<Node>();
  // A term whose steps are requested while they are being computed sits on a
  // cycle through condition evaluation: nothing can be concluded.
  if (pending_.count(s)) {
    result->complete = false;
    return result;
  }
  pending_.insert(s);
  std::set<std::tuple<Position, std::size_t, Term>> steps;
  std::set<Term> quasi;
  const Signature& sig = system_.signature();
  for (const Position& p : positions(s)) {
    const Term& sub = s.at(p);
    if (sub.is_variable() || !sig.is_defined(sub.symbol())) continue;
    for (std::size_t r : system_.rules_of(sub.symbol())) {
      const ConditionalRule& rule = system_.rules()[r];
      auto sigma = match(rule.lhs, sub);
      if (!sigma) continue;
      std::set<Substitution> level{*sigma};
      for (const Condition& c : rule.conditions) {
        std::set<Substitution> next;
        for (const Substitution& partial : level) {
          Term start = substitute(c.lhs, partial);
          quasi.insert(start);
          auto reached = reach(start, depth + 1);
          if (!reached->complete) result->complete = false;
          for (const Term& v : reached->terms) {
            Substitution extended = partial;
            if (match_into(c.rhs, v, extended)) next.insert(std::move(extended));
          }
        }
        level = std::move(next);
        if (level.empty()) break;
      }
      for (const Substitution& full : level) {
        steps.emplace(p, rule.id, s.replace_at(p, substitute(rule.rhs, full)));
      }
    }
  }
  pending_.erase(s);
  for (const auto& [p, id, target] : steps) result->steps.push_back({target, id, p});
  result->quasi.assign(quasi.begin(), quasi.end());
  if (result->complete) nodes_.emplace(s, result);
  return result;
}

std::shared_ptr<const ConditionalRewriter::Reach> ConditionalRewriter::reach(const Term& s,
                                                                             std::size_t depth) {
  if (auto it = reaches_.find(s); it != reaches_.end()) return it->second;
  auto result = std::make_shared<Reach>();
  if (depth > budget_.max_depth) {
    result->terms.push_back(s);
    result->complete = false;
    return result;
  }
  std::unordered_set<Term, TermHash> seen{s};
  std::deque<Term> queue{s};
  while (!queue.empty()) {
    Term u = queue.front();
    queue.pop_front();
    result->terms.push_back(u);
    auto info = node(u, depth);
    if (!info->complete) result->complete = false;
    for (const PlainStep& step : info->steps) {
      if (seen.count(step.target)) continue;
      if (seen.size() >= budget_.max_states) {
        result->complete = false;
        continue;
      }
      seen.insert(step.target);
      queue.push_back(step.target);
    }
  }
  if (result->complete) reaches_.emplace(s, result);
  return result;
}

Bounded<PlainStep> ConditionalRewriter::steps(const Term& s) {
  auto info = node(s, 0);
  return {info->steps, info->complete};
}

Bounded<Term> ConditionalRewriter::quasi_steps(const Term& s) {
  auto info = node(s, 0);
  return {info->quasi, info->complete};
}

Bounded<Term> ConditionalRewriter::reachable(const Term& s) {
  auto r = reach(s, 0);
  return {r->terms, r->complete};
}

}  // namespace ctrc
