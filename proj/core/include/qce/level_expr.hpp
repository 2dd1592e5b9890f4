#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qce {

/// Immutable expression tree over the level index `n`.
///
/// Grammar, loosest to tightest binding:
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := '-' unary | power
///     power   := primary ('^' unary)?          // right-associative
///     primary := number | 'n' | func '(' expr ')' | '(' expr ')'
///     func    := 'exp' | 'log' | 'sqrt'
///
/// Nodes are shared and never mutated, so copies are cheap and safe to use
/// from several threads.
class LevelExpr {
 public:
  enum class Kind { Number, Variable, Negate, Add, Subtract, Multiply, Divide, Power, Exp, Log, Sqrt };

  /// Non-negative finite literal. Negative values are expressed with `negate`.
  static LevelExpr number(double value);
  static LevelExpr variable();
  static LevelExpr unary(Kind kind, LevelExpr operand);
  static LevelExpr binary(Kind kind, LevelExpr lhs, LevelExpr rhs);

  Kind kind() const noexcept;
  double value() const noexcept;  // Number only
  const LevelExpr& lhs() const;   // operand of unary nodes, left side of binary ones
  const LevelExpr& rhs() const;

  /// Evaluates at level index `n`. Throws EvaluationError on division by zero,
  /// log/sqrt outside the domain, or any other non-finite intermediate.
  double evaluate(long n) const;

  /// Minimal-parenthesis rendering; `parse_level_expr(to_string())` reproduces the tree.
  std::string to_string() const;

  friend bool operator==(const LevelExpr& a, const LevelExpr& b);

 private:
  struct Node;
  explicit LevelExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Throws ParseError (with byte offset) on syntax errors, unknown identifiers
/// and function arity mismatches.
LevelExpr parse_level_expr(std::string_view text);

/// Values of `expr` at n = 0 .. n_levels-1.
std::vector<double> eval_levels(const LevelExpr& expr, long n_levels);

}  // namespace qce
