#include "ctrc/csr.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

namespace ctrc {

CsEngine::CsEngine(const TransformedTrs& trs, SearchBudget budget)
    : CsEngine(trs, trs.mu, budget) {}

CsEngine::CsEngine(const TransformedTrs& trs, ReplacementMap mu, SearchBudget budget)
    : trs_(trs), mu_(std::move(mu)), budget_(budget), by_root_(trs.signature.size()) {
  for (std::size_t r = 0; r < trs_.rules.size(); ++r) {
    const Term& lhs = trs_.rules[r].lhs;
    if (!lhs.is_variable()) by_root_.at(lhs.symbol()).push_back(r);
  }
}

std::vector<CsStep> CsEngine::steps(const Term& t) const {
  std::vector<CsStep> out;
  for (const Position& p : active_positions(t, mu_)) {
    const Term& sub = t.at(p);
    if (sub.is_variable()) continue;
    for (std::size_t r : by_root_.at(sub.symbol())) {
      const XiRule& rule = trs_.rules[r];
      auto sigma = match(rule.lhs, sub);
      if (!sigma) continue;
      out.push_back({t.replace_at(p, substitute(rule.rhs, *sigma)), rule.cost, rule.id, p});
    }
  }
  return out;
}

namespace {

// s ->+ C[s] with the hole at an active position loops forever.
bool loops(const Term& target, const std::unordered_set<Term, TermHash>& path, const ReplacementMap& mu) {
  for (const Position& p : active_positions(target, mu)) {
    if (path.count(target.at(p))) return true;
  }
  return false;
}

}  // namespace

Cost CsEngine::derivation_height(const Term& t) {
  if (auto it = longest_.find(t); it != longest_.end()) return Cost::finite(it->second);

  struct Frame {
    Term term;
    std::vector<CsStep> steps;
    std::size_t next = 0;
    std::uint64_t prefix = 0;
    std::uint64_t value = 0;
  };
  std::unordered_set<Term, TermHash> gray;
  std::vector<Frame> stack;
  std::size_t states = 1;
  std::uint64_t best = 0;

  gray.insert(t);
  stack.push_back({t, steps(t)});
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next < top.steps.size()) {
      const CsStep& step = top.steps[top.next++];
      if (auto it = longest_.find(step.target); it != longest_.end()) {
        top.value = std::max(top.value, step.cost + it->second);
        best = std::max(best, top.prefix + top.value);
        continue;
      }
      if (loops(step.target, gray, mu_)) return Cost::infinite();
      if (++states > budget_.max_states) return Cost::at_least(best);
      std::uint64_t prefix = top.prefix + step.cost;
      best = std::max(best, prefix);
      gray.insert(step.target);
      Term target = step.target;
      auto next = steps(target);
      stack.push_back({std::move(target), std::move(next), 0, prefix, 0});
      continue;
    }
    Frame finished = std::move(top);
    stack.pop_back();
    gray.erase(finished.term);
    longest_.emplace(finished.term, finished.value);
    if (!stack.empty()) {
      Frame& parent = stack.back();
      parent.value = std::max(parent.value, parent.steps[parent.next - 1].cost + finished.value);
      best = std::max(best, parent.prefix + parent.value);
    }
  }
  return Cost::finite(longest_.at(t));
}

Bounded<Term> CsEngine::normal_forms(const Term& t) const {
  Bounded<Term> out;
  std::set<Term> forms;
  std::unordered_set<Term, TermHash> seen{t};
  std::deque<Term> queue{t};
  while (!queue.empty()) {
    Term u = queue.front();
    queue.pop_front();
    auto next = steps(u);
    if (next.empty()) forms.insert(u);
    for (CsStep& step : next) {
      if (seen.count(step.target)) continue;
      if (seen.size() >= budget_.max_states) {
        out.complete = false;
        continue;
      }
      seen.insert(step.target);
      queue.push_back(std::move(step.target));
    }
  }
  out.items.assign(forms.begin(), forms.end());
  return out;
}

}  // namespace ctrc
