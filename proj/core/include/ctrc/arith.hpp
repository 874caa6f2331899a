#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ctrc {

// Expressions over natural numbers with parameters referenced by index.
// Evaluation is checked: results that leave uint64 throw Error(overflow).
class ArithExpr {
 public:
  enum class Op { constant, ref, add, mul, monus, max, pow };

  ArithExpr();  // the constant 0

  static ArithExpr constant(std::uint64_t value);
  static ArithExpr ref(std::size_t index);
  static ArithExpr add(ArithExpr a, ArithExpr b);
  static ArithExpr mul(ArithExpr a, ArithExpr b);
  static ArithExpr monus(ArithExpr a, ArithExpr b);
  static ArithExpr max(ArithExpr a, ArithExpr b);
  // base must be ground; a ground exponent with a non-ground base is
  // expanded into a product.
  static ArithExpr pow(ArithExpr base, ArithExpr exponent);

  Op op() const;
  std::uint64_t value() const;
  std::size_t index() const;
  const ArithExpr& lhs() const;
  const ArithExpr& rhs() const;

  bool ground() const;
  bool is_constant(std::uint64_t v) const { return op() == Op::constant && value() == v; }
  // One past the largest referenced index.
  std::size_t width() const;

  std::uint64_t eval(std::span<const std::uint64_t> env) const;
  ArithExpr substitute(const std::vector<ArithExpr>& args) const;
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  struct Node;
  explicit ArithExpr(std::shared_ptr<const Node> node);
  static ArithExpr binary(Op op, ArithExpr a, ArithExpr b);
  std::shared_ptr<const Node> node_;
};

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exponent);

// Grammar: sums of products of powers; '-' is truncated subtraction, '^' is
// right associative; max(e, ...) and pow(b, e) are the only functions.
// Identifiers must be listed in params and become references to their index.
ArithExpr parse_arith(std::string_view text, const std::vector<std::string>& params);

}  // namespace ctrc
