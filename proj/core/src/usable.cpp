#include <algorithm>
#include <set>
#include <sstream>

#include "ctrc/interp.hpp"

namespace ctrc {

namespace {

bool activate_path(const Term& t, const Position& p, ReplacementMap& upsilon) {
  bool changed = false;
  const Term* cur = &t;
  for (std::size_t a : p) {
    auto& args = upsilon[cur->symbol()];
    auto it = std::lower_bound(args.begin(), args.end(), a);
    if (it == args.end() || *it != a) {
      args.insert(it, a);
      changed = true;
    }
    cur = &cur->arg(a);
  }
  return changed;
}

bool path_active(const Term& t, const Position& p, const ReplacementMap& upsilon) {
  const Term* cur = &t;
  for (std::size_t a : p) {
    if (!is_active(upsilon, cur->symbol(), a)) return false;
    cur = &cur->arg(a);
  }
  return true;
}

void active_variables(const Term& b, const ReplacementMap& upsilon, std::set<std::string>& out) {
  for (const Position& q : active_positions(b, upsilon)) {
    const Term& sub = b.at(q);
    if (sub.is_variable()) out.insert(sub.name());
  }
}

// Calls visit(a_i, p) for every position the definition forces to be active.
template <class Visit>
void for_each_demand(const Cctrs& system, const ReplacementMap& upsilon, Visit&& visit) {
  const Signature& sig = system.signature();
  for (const ConditionalRule& rule : system.rules()) {
    std::vector<const Term*> bs{&rule.lhs};
    std::vector<const Term*> as;
    for (const Condition& c : rule.conditions) {
      as.push_back(&c.lhs);
      bs.push_back(&c.rhs);
    }
    as.push_back(&rule.rhs);
    std::set<std::string> active;
    for (std::size_t i = 0; i < as.size(); ++i) {
      active_variables(*bs[i], upsilon, active);
      const Term& a = *as[i];
      for (const Position& p : positions(a)) {
        const Term& sub = a.at(p);
        bool demanded = sub.is_variable() ? active.count(sub.name()) > 0 : sig.is_defined(sub.symbol());
        if (demanded) visit(a, p);
      }
    }
  }
}

}  // namespace

ReplacementMap derive_usable_map(const Cctrs& system) {
  ReplacementMap upsilon(system.signature().size());
  for (bool changed = true; changed;) {
    changed = false;
    ReplacementMap snapshot = upsilon;
    for_each_demand(system, snapshot, [&](const Term& a, const Position& p) {
      if (activate_path(a, p, upsilon)) changed = true;
    });
  }
  return upsilon;
}

bool is_usable(const Cctrs& system, const ReplacementMap& upsilon) {
  if (upsilon.size() < system.signature().size()) return false;
  bool ok = true;
  for_each_demand(system, upsilon, [&](const Term& a, const Position& p) {
    if (!path_active(a, p, upsilon)) ok = false;
  });
  return ok;
}

std::string show_map(const ReplacementMap& map, const Signature& sig) {
  std::ostringstream out;
  for (SymbolId f = 0; f < sig.size() && f < map.size(); ++f) {
    out << "MAP " << sig[f].name << " = {";
    for (std::size_t i = 0; i < map[f].size(); ++i) out << (i ? "," : "") << map[f][i];
    out << "}\n";
  }
  return out.str();
}

}  // namespace ctrc
