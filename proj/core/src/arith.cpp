#include "ctrc/arith.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "ctrc/term.hpp"

namespace ctrc {

struct ArithExpr::Node {
  Op op = Op::constant;
  std::uint64_t value = 0;
  std::size_t index = 0;
  std::vector<ArithExpr> kids;
  bool ground = true;
  std::size_t width = 0;
};

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::overflow, "arithmetic overflow in +");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::overflow, "arithmetic overflow in *");
  return r;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exponent) {
  if (base <= 1) return exponent == 0 ? 1 : base;
  std::uint64_t result = 1;
  for (; exponent > 0; --exponent) result = checked_mul(result, base);
  return result;
}

ArithExpr::ArithExpr() : node_(std::make_shared<Node>()) {}

ArithExpr::ArithExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

ArithExpr ArithExpr::constant(std::uint64_t value) {
  auto n = std::make_shared<Node>();
  n->value = value;
  return ArithExpr(std::move(n));
}

ArithExpr ArithExpr::ref(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->op = Op::ref;
  n->index = index;
  n->ground = false;
  n->width = index + 1;
  return ArithExpr(std::move(n));
}

ArithExpr ArithExpr::binary(Op op, ArithExpr a, ArithExpr b) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->ground = a.ground() && b.ground();
  n->width = std::max(a.width(), b.width());
  n->kids = {std::move(a), std::move(b)};
  return ArithExpr(std::move(n));
}

ArithExpr ArithExpr::add(ArithExpr a, ArithExpr b) {
  if (a.is_constant(0)) return b;
  if (b.is_constant(0)) return a;
  if (a.ground() && b.ground()) return constant(checked_add(a.eval({}), b.eval({})));
  return binary(Op::add, std::move(a), std::move(b));
}

ArithExpr ArithExpr::mul(ArithExpr a, ArithExpr b) {
  if (a.is_constant(0) || b.is_constant(0)) return constant(0);
  if (a.is_constant(1)) return b;
  if (b.is_constant(1)) return a;
  if (a.ground() && b.ground()) return constant(checked_mul(a.eval({}), b.eval({})));
  return binary(Op::mul, std::move(a), std::move(b));
}

ArithExpr ArithExpr::monus(ArithExpr a, ArithExpr b) {
  if (b.is_constant(0)) return a;
  if (a.ground() && b.ground()) {
    std::uint64_t x = a.eval({}), y = b.eval({});
    return constant(x > y ? x - y : 0);
  }
  return binary(Op::monus, std::move(a), std::move(b));
}

ArithExpr ArithExpr::max(ArithExpr a, ArithExpr b) {
  if (a.is_constant(0)) return b;
  if (b.is_constant(0)) return a;
  if (a.ground() && b.ground()) return constant(std::max(a.eval({}), b.eval({})));
  return binary(Op::max, std::move(a), std::move(b));
}

ArithExpr ArithExpr::pow(ArithExpr base, ArithExpr exponent) {
  if (exponent.ground()) {
    std::uint64_t e = exponent.eval({});
    if (base.ground()) return constant(checked_pow(base.eval({}), e));
    if (e > 64) throw Error(Errc::invalid_argument, "exponent too large to expand");
    ArithExpr out = constant(1);
    for (std::uint64_t i = 0; i < e; ++i) out = mul(out, base);
    return out;
  }
  if (!base.ground()) {
    throw Error(Errc::invalid_argument, "exponentiation needs a constant base or exponent");
  }
  return binary(Op::pow, std::move(base), std::move(exponent));
}

ArithExpr::Op ArithExpr::op() const { return node_->op; }
std::uint64_t ArithExpr::value() const { return node_->value; }
std::size_t ArithExpr::index() const { return node_->index; }
const ArithExpr& ArithExpr::lhs() const { return node_->kids.at(0); }
const ArithExpr& ArithExpr::rhs() const { return node_->kids.at(1); }
bool ArithExpr::ground() const { return node_->ground; }
std::size_t ArithExpr::width() const { return node_->width; }

std::uint64_t ArithExpr::eval(std::span<const std::uint64_t> env) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::constant:
      return n.value;
    case Op::ref:
      if (n.index >= env.size()) {
        throw Error(Errc::unbound_reference,
                    "reference to parameter " + std::to_string(n.index + 1) + " is unbound");
      }
      return env[n.index];
    default:
      break;
  }
  std::uint64_t a = n.kids[0].eval(env);
  std::uint64_t b = n.kids[1].eval(env);
  switch (n.op) {
    case Op::add: return checked_add(a, b);
    case Op::mul: return checked_mul(a, b);
    case Op::monus: return a > b ? a - b : 0;
    case Op::max: return std::max(a, b);
    case Op::pow: return checked_pow(a, b);
    default: return 0;
  }
}

ArithExpr ArithExpr::substitute(const std::vector<ArithExpr>& args) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::constant:
      return *this;
    case Op::ref:
      if (n.index >= args.size()) {
        throw Error(Errc::unbound_reference,
                    "reference to parameter " + std::to_string(n.index + 1) + " is unbound");
      }
      return args[n.index];
    case Op::add: return add(lhs().substitute(args), rhs().substitute(args));
    case Op::mul: return mul(lhs().substitute(args), rhs().substitute(args));
    case Op::monus: return monus(lhs().substitute(args), rhs().substitute(args));
    case Op::max: return max(lhs().substitute(args), rhs().substitute(args));
    case Op::pow: return pow(lhs().substitute(args), rhs().substitute(args));
  }
  return *this;
}

namespace {

int precedence(ArithExpr::Op op) {
  switch (op) {
    case ArithExpr::Op::add:
    case ArithExpr::Op::monus: return 1;
    case ArithExpr::Op::mul: return 2;
    case ArithExpr::Op::pow: return 3;
    default: return 4;
  }
}

}  // namespace

std::string ArithExpr::to_string(const std::vector<std::string>& names) const {
  const Node& n = *node_;
  auto wrap = [&](const ArithExpr& e, int min) {
    std::string s = e.to_string(names);
    return precedence(e.op()) < min ? "(" + s + ")" : s;
  };
  switch (n.op) {
    case Op::constant:
      return std::to_string(n.value);
    case Op::ref:
      return n.index < names.size() ? names[n.index] : "#" + std::to_string(n.index + 1);
    case Op::add: return wrap(lhs(), 1) + " + " + wrap(rhs(), 1);
    case Op::monus: return wrap(lhs(), 1) + " - " + wrap(rhs(), 2);
    case Op::mul: return wrap(lhs(), 2) + "*" + wrap(rhs(), 2);
    case Op::pow: return wrap(lhs(), 4) + "^" + wrap(rhs(), 3);
    case Op::max: return "max(" + lhs().to_string(names) + ", " + rhs().to_string(names) + ")";
  }
  return {};
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& params)
      : text_(text), params_(params) {}

  ArithExpr parse() {
    ArithExpr e = sum();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::parse, "in expression '" + std::string(text_) + "': " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  ArithExpr sum() {
    ArithExpr e = product();
    for (;;) {
      if (accept('+')) {
        e = ArithExpr::add(e, product());
      } else if (accept('-')) {
        e = ArithExpr::monus(e, product());
      } else {
        return e;
      }
    }
  }

  ArithExpr product() {
    ArithExpr e = power();
    while (accept('*')) e = ArithExpr::mul(e, power());
    return e;
  }

  ArithExpr power() {
    ArithExpr base = atom();
    if (!accept('^')) return base;
    ArithExpr exponent = power();
    try {
      return ArithExpr::pow(base, exponent);
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  std::vector<ArithExpr> call_args() {
    expect('(');
    std::vector<ArithExpr> out{sum()};
    while (accept(',')) out.push_back(sum());
    expect(')');
    return out;
  }

  ArithExpr atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ArithExpr e = sum();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::uint64_t v = 0;
      auto [end, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
      if (ec != std::errc()) fail("number out of range");
      pos_ = static_cast<std::size_t>(end - text_.data());
      return ArithExpr::constant(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              text_[pos_] == '\'')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      skip();
      bool call = pos_ < text_.size() && text_[pos_] == '(';
      if (call && name == "max") {
        auto args = call_args();
        ArithExpr e = args[0];
        for (std::size_t i = 1; i < args.size(); ++i) e = ArithExpr::max(e, args[i]);
        return e;
      }
      if (call && name == "pow") {
        auto args = call_args();
        if (args.size() != 2) fail("pow takes two arguments");
        try {
          return ArithExpr::pow(args[0], args[1]);
        } catch (const Error& e) {
          fail(e.what());
        }
      }
      auto it = std::find(params_.begin(), params_.end(), name);
      if (it == params_.end()) {
        throw Error(Errc::unbound_reference, "unknown parameter '" + name + "' in expression '" +
                                                 std::string(text_) + "'");
      }
      return ArithExpr::ref(static_cast<std::size_t>(it - params_.begin()));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& params_;
  std::size_t pos_ = 0;
};

}  // namespace

ArithExpr parse_arith(std::string_view text, const std::vector<std::string>& params) {
  return Parser(text, params).parse();
}

}  // namespace ctrc
