#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "ctrc/cctrs.hpp"
#include "ctrc/csr.hpp"
#include "ctrc/interp.hpp"
#include "ctrc/labeled.hpp"
#include "ctrc/xi.hpp"

namespace ctrc::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct Options {
  std::string file;
  std::string interp;
  std::string term;
  std::string output;
  std::string ap = "full";
  std::string strategy = "cs";
  std::string mode = "crc";
  std::string recipe;
  std::string general;
  std::size_t states = 20000;
  std::size_t depth = 12;
  std::size_t n = 3;
  std::size_t grid = 4;
  bool strong = false;
};

class Usage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int exit_code(Errc code) {
  switch (code) {
    case Errc::parse:
    case Errc::unknown_symbol:
    case Errc::arity:
    case Errc::non_ground:
    case Errc::not_proper:
    case Errc::not_constructor:
    case Errc::not_linear:
    case Errc::invalid_argument:
      return kUsage;
    default:
      return kFail;
  }
}

SearchBudget budget(const Options& o) { return {o.states, o.depth}; }

ComplexityMode mode(const Options& o) {
  if (o.mode == "crc") return ComplexityMode::crc;
  if (o.mode == "cdc") return ComplexityMode::cdc;
  throw Usage("--mode must be crc or cdc");
}

ApMode ap_mode(const Options& o) {
  if (o.ap == "full") return ApMode::full;
  if (o.ap == "var") return ApMode::var;
  throw Usage("--ap must be full or var");
}

Cctrs load(const Options& o) { return Cctrs::from_file(o.file); }

bool has_labels(const Term& t) {
  if (t.is_variable()) return false;
  if (t.is_labeled()) return true;
  for (const Term& a : t.args()) {
    if (has_labels(a)) return true;
  }
  return false;
}

// Terms written without labels are labeled with every rule of their symbol.
Term labeled_term(const Cctrs& system, const Options& o) {
  if (o.term.empty()) throw Usage("--term is required");
  Term t = system.parse_term(o.term);
  return has_labels(t) ? t : label(t, system);
}

int report_cost(std::ostream& out, const std::string& name, const Cost& c) {
  out << name << " = " << c.to_string() << '\n';
  return c.is_at_least() ? kBudget : kOk;
}

int cmd_validate(const Options& o, std::ostream& out) {
  RawSystem raw = load_cops(o.file);
  ValidationReport report = validate(raw, o.strong ? ValidationMode::strong : ValidationMode::cctrs);
  if (!report.ok()) {
    out << report.to_string();
    out << "INVALID (" << report.violations.size() << " violation"
        << (report.violations.size() == 1 ? "" : "s") << ")\n";
    return kFail;
  }
  out << "OK " << (o.strong ? "strong CCTRS" : "CCTRS") << " with " << raw.rules.size() << " rules\n";
  return kOk;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  Cctrs system = load(o);
  LabeledEngine engine(system, budget(o));
  Term t = labeled_term(system, o);
  StepSet set = engine.steps(t);
  out << "term " << system.show(t) << '\n';
  for (const LabeledStep& s : set.steps) {
    out << to_string(s.kind) << " rule " << s.rule << " at " << to_string(s.position) << " cost "
        << s.cost << " -> " << system.show(s.target) << '\n';
  }
  if (set.steps.empty() && set.verdict == Verdict::complete) out << "normal form\n";
  switch (set.verdict) {
    case Verdict::complete: return kOk;
    case Verdict::diverges: out << "diverges\n"; return kOk;
    case Verdict::budget_exceeded: out << "budget exceeded\n"; return kBudget;
  }
  return kOk;
}

int cmd_dh(const Options& o, std::ostream& out) {
  Cctrs system = load(o);
  LabeledEngine engine(system, budget(o));
  return report_cost(out, "dh", engine.derivation_height(labeled_term(system, o)));
}

int cmd_complexity(const Options& o, std::ostream& out) {
  Cctrs system = load(o);
  ComplexityMode m = mode(o);
  Cost c = conditional_complexity(system, o.n, m, budget(o));
  return report_cost(out, o.mode + "(" + std::to_string(o.n) + ")", c);
}

int cmd_transform(const Options& o, std::ostream& out) {
  Cctrs system = load(o);
  TransformedTrs h = transform(system, ap_mode(o));
  TpdbStyle style;
  if (o.strategy == "cs") {
    style = TpdbStyle::context_sensitive;
  } else if (o.strategy == "plain") {
    style = TpdbStyle::plain;
  } else {
    throw Usage("--strategy must be cs or plain");
  }
  std::string text = to_tpdb(h, style);
  if (o.output.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream file(o.output);
  if (!file) throw Usage("cannot write " + o.output);
  file << text;
  out << "wrote " << h.rules.size() << " rules to " << o.output << '\n';
  return kOk;
}

int cmd_ap(const Options& o, std::ostream& out) {
  Cctrs system = load(o);
  TransformedTrs h = transform(system, ApMode::full);
  if (o.term.empty()) throw Usage("--term is required");
  for (const Term& p : anti_patterns(system.parse_term(o.term), h)) out << h.show(p) << '\n';
  return kOk;
}

int cmd_zeta(const Options& o, std::ostream& out) {
  Cctrs system = load(o);
  TransformedTrs h = transform(system, ap_mode(o));
  if (o.term.empty()) throw Usage("--term is required");
  std::optional<Term> original;
  try {
    original = system.parse_term(o.term);
  } catch (const Error&) {
  }
  if (original) {
    Term t = has_labels(*original) ? *original : label(*original, system);
    out << h.show(zeta(t, h)) << '\n';
    return kOk;
  }
  Term s = parse_term(o.term, h.signature);
  out << system.show(zeta_inverse(s, h)) << '\n';
  return kOk;
}

Interpretation load_interp(const Options& o, const Cctrs& system, const TransformedTrs& h) {
  InterpretationFile file = load_interpretation(o.interp);
  std::optional<Recipe> recipe;
  if (!o.recipe.empty()) recipe = parse_recipe(o.recipe);
  return build(file, system, h, recipe);
}

int cmd_check(const Options& o, std::ostream& out) {
  Cctrs system = load(o);
  TransformedTrs h = transform(system, ap_mode(o));
  Interpretation interp = load_interp(o, system, h);
  CheckReport report = check(interp, system, h, o.grid);
  out << report.to_string(interp, h);
  return report.pass ? kOk : kFail;
}

int cmd_urm(const Options& o, std::ostream& out) {
  Cctrs system = load(o);
  if (!system.strong()) {
    throw Error(Errc::strong_required,
                "usable replacement maps need a strong system\n" + system.strong_report().to_string());
  }
  out << show_map(derive_usable_map(system), system.signature());
  return kOk;
}

int cmd_bound(const Options& o, std::ostream& out) {
  Cctrs system = load(o);
  TransformedTrs h = transform(system, ap_mode(o));
  Interpretation interp = load_interp(o, system, h);
  BoundOptions options;
  options.mode = mode(o);
  options.n = o.n;
  options.grid = o.grid;
  if (!o.general.empty()) {
    std::uint64_t k = 0, m = 0;
    char comma = 0;
    std::istringstream in(o.general);
    if (!(in >> k >> comma >> m) || comma != ',' || !in.eof()) throw Usage("--general expects K,M");
    options.general = {k, m};
  }
  out << bound(interp, system, h, options).to_string();
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complexity analysis for conditional term rewriting systems", "ctrc"};
  app.require_subcommand(1);
  Options o;
  std::function<int(const Options&, std::ostream&)> action;

  auto add = [&](const char* name, const char* help, auto fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", o.file, "COPS file")->required();
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };
  auto with_budget = [&](CLI::App* sub) {
    sub->add_option("--budget-states", o.states, "state budget per query")->capture_default_str();
    sub->add_option("--budget-depth", o.depth, "nesting budget of condition evaluation")
        ->capture_default_str();
  };
  auto with_term = [&](CLI::App* sub) { sub->add_option("--term", o.term, "term")->required(); };
  auto with_ap = [&](CLI::App* sub) {
    sub->add_option("--ap", o.ap, "anti-pattern mode: full or var")->capture_default_str();
  };
  auto with_interp = [&](CLI::App* sub) {
    sub->add_option("interp", o.interp, "interpretation file")->required();
    sub->add_option("--recipe", o.recipe, "A, B, C or direct");
    sub->add_option("--grid", o.grid, "largest sampled value")->capture_default_str();
    with_ap(sub);
  };

  add("validate", "check the CCTRS restrictions", cmd_validate)
      ->add_flag("--strong", o.strong, "also require the strong restrictions");
  auto* reduce = add("reduce", "list the labeled steps of a term", cmd_reduce);
  with_term(reduce);
  with_budget(reduce);
  auto* dh = add("dh", "derivation height of a labeled term", cmd_dh);
  with_term(dh);
  with_budget(dh);
  auto* complexity = add("complexity", "conditional complexity up to a size", cmd_complexity);
  complexity->add_option("--n", o.n, "term size")->required();
  complexity->add_option("--mode", o.mode, "crc or cdc")->capture_default_str();
  with_budget(complexity);
  auto* tr = add("transform", "print the unconditional context-sensitive system", cmd_transform);
  tr->add_option("-o", o.output, "output path");
  tr->add_option("--strategy", o.strategy, "cs or plain")->capture_default_str();
  with_ap(tr);
  with_term(add("ap", "anti-patterns of a constructor term", cmd_ap));
  auto* z = add("zeta", "translate between labeled and transformed terms", cmd_zeta);
  with_term(z);
  with_ap(z);
  with_interp(add("check-interp", "check an interpretation against the transformed rules", cmd_check));
  add("urm", "least usable replacement map", cmd_urm);
  auto* b = add("bound", "complexity bound from an interpretation", cmd_bound);
  with_interp(b);
  b->add_option("--n", o.n, "term size")->required();
  b->add_option("--mode", o.mode, "crc or cdc")->capture_default_str();
  b->add_option("--general", o.general, "K,M for the closed-form bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return e.get_exit_code() == 0 ? code : kUsage;
  }
  try {
    return action(o, out);
  } catch (const Usage& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << errc_name(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  }
}

}  // namespace ctrc::cli
