#include "qce/level_expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "qce/error.hpp"

namespace qce {

struct LevelExpr::Node {
  Kind kind;
  double value = 0.0;
  std::array<LevelExpr, 2> children;
};

namespace {

bool is_binary(LevelExpr::Kind k) {
  using K = LevelExpr::Kind;
  return k == K::Add || k == K::Subtract || k == K::Multiply || k == K::Divide || k == K::Power;
}

bool is_function(LevelExpr::Kind k) {
  using K = LevelExpr::Kind;
  return k == K::Exp || k == K::Log || k == K::Sqrt;
}

int precedence(LevelExpr::Kind k) {
  using K = LevelExpr::Kind;
  switch (k) {
    case K::Add:
    case K::Subtract:
      return 1;
    case K::Multiply:
    case K::Divide:
      return 2;
    case K::Negate:
      return 3;
    case K::Power:
      return 4;
    default:
      return 5;
  }
}

}  // namespace

LevelExpr LevelExpr::number(double value) {
  if (!std::isfinite(value) || value < 0.0 || std::signbit(value)) {
    throw std::invalid_argument("LevelExpr::number requires a non-negative finite value");
  }
  auto node = std::make_shared<Node>(Node{Kind::Number, value, {LevelExpr{nullptr}, LevelExpr{nullptr}}});
  return LevelExpr{std::move(node)};
}

LevelExpr LevelExpr::variable() {
  auto node = std::make_shared<Node>(Node{Kind::Variable, 0.0, {LevelExpr{nullptr}, LevelExpr{nullptr}}});
  return LevelExpr{std::move(node)};
}

LevelExpr LevelExpr::unary(Kind kind, LevelExpr operand) {
  if (kind != Kind::Negate && !is_function(kind)) {
    throw std::invalid_argument("LevelExpr::unary: not a unary kind");
  }
  auto node = std::make_shared<Node>(Node{kind, 0.0, {std::move(operand), LevelExpr{nullptr}}});
  return LevelExpr{std::move(node)};
}

LevelExpr LevelExpr::binary(Kind kind, LevelExpr lhs, LevelExpr rhs) {
  if (!is_binary(kind)) {
    throw std::invalid_argument("LevelExpr::binary: not a binary kind");
  }
  auto node = std::make_shared<Node>(Node{kind, 0.0, {std::move(lhs), std::move(rhs)}});
  return LevelExpr{std::move(node)};
}

LevelExpr::Kind LevelExpr::kind() const noexcept { return node_->kind; }
double LevelExpr::value() const noexcept { return node_->value; }
const LevelExpr& LevelExpr::lhs() const { return node_->children[0]; }
const LevelExpr& LevelExpr::rhs() const { return node_->children[1]; }

double LevelExpr::evaluate(long n) const {
  const auto checked = [n](double v, const char* what) {
    if (!std::isfinite(v)) throw EvaluationError(what, n);
    return v;
  };
  switch (node_->kind) {
    case Kind::Number:
      return node_->value;
    case Kind::Variable:
      return static_cast<double>(n);
    case Kind::Negate:
      return -lhs().evaluate(n);
    case Kind::Add:
      return checked(lhs().evaluate(n) + rhs().evaluate(n), "overflow in addition");
    case Kind::Subtract:
      return checked(lhs().evaluate(n) - rhs().evaluate(n), "overflow in subtraction");
    case Kind::Multiply:
      return checked(lhs().evaluate(n) * rhs().evaluate(n), "overflow in multiplication");
    case Kind::Divide: {
      const double den = rhs().evaluate(n);
      if (den == 0.0) throw EvaluationError("division by zero", n);
      return checked(lhs().evaluate(n) / den, "overflow in division");
    }
    case Kind::Power:
      return checked(std::pow(lhs().evaluate(n), rhs().evaluate(n)), "non-finite power");
    case Kind::Exp:
      return checked(std::exp(lhs().evaluate(n)), "overflow in exp");
    case Kind::Log: {
      const double x = lhs().evaluate(n);
      if (!(x > 0.0)) throw EvaluationError("log of non-positive value", n);
      return std::log(x);
    }
    case Kind::Sqrt: {
      const double x = lhs().evaluate(n);
      if (x < 0.0) throw EvaluationError("sqrt of negative value", n);
      return std::sqrt(x);
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

void render(const LevelExpr& e, std::string& out);

void render_child(const LevelExpr& child, bool parens, std::string& out) {
  if (parens) out += '(';
  render(child, out);
  if (parens) out += ')';
}

void render(const LevelExpr& e, std::string& out) {
  using K = LevelExpr::Kind;
  switch (e.kind()) {
    case K::Number: {
      std::array<char, 32> buf{};
      auto res = std::to_chars(buf.data(), buf.data() + buf.size(), e.value());
      out.append(buf.data(), res.ptr);
      return;
    }
    case K::Variable:
      out += 'n';
      return;
    case K::Negate:
      out += '-';
      render_child(e.lhs(), precedence(e.lhs().kind()) < precedence(K::Negate), out);
      return;
    case K::Exp:
    case K::Log:
    case K::Sqrt:
      out += e.kind() == K::Exp ? "exp(" : e.kind() == K::Log ? "log(" : "sqrt(";
      render(e.lhs(), out);
      out += ')';
      return;
    case K::Power:
      // base is a primary; exponent is a unary expression
      render_child(e.lhs(), precedence(e.lhs().kind()) <= precedence(K::Power), out);
      out += '^';
      render_child(e.rhs(), precedence(e.rhs().kind()) < precedence(K::Negate), out);
      return;
    default: {
      const int p = precedence(e.kind());
      render_child(e.lhs(), precedence(e.lhs().kind()) < p, out);
      switch (e.kind()) {
        case K::Add: out += " + "; break;
        case K::Subtract: out += " - "; break;
        case K::Multiply: out += '*'; break;
        default: out += '/'; break;
      }
      render_child(e.rhs(), precedence(e.rhs().kind()) <= p, out);
      return;
    }
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  LevelExpr parse() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    LevelExpr e = parse_expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  using K = LevelExpr::Kind;

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ == text_.size()) throw ParseError(std::string("expected '") + c + "' but reached end of input", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  LevelExpr parse_expr() {
    LevelExpr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = LevelExpr::binary(K::Add, std::move(lhs), parse_term());
      } else if (accept('-')) {
        lhs = LevelExpr::binary(K::Subtract, std::move(lhs), parse_term());
      } else {
        return lhs;
      }
    }
  }

  LevelExpr parse_term() {
    LevelExpr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = LevelExpr::binary(K::Multiply, std::move(lhs), parse_unary());
      } else if (accept('/')) {
        lhs = LevelExpr::binary(K::Divide, std::move(lhs), parse_unary());
      } else {
        return lhs;
      }
    }
  }

  LevelExpr parse_unary() {
    if (accept('-')) return LevelExpr::unary(K::Negate, parse_unary());
    return parse_power();
  }

  LevelExpr parse_power() {
    LevelExpr base = parse_primary();
    if (accept('^')) return LevelExpr::binary(K::Power, std::move(base), parse_unary());
    return base;
  }

  LevelExpr parse_primary() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      LevelExpr inner = parse_expr();
      expect(')');
      return inner;
    }
    if ((c >= '0' && c <= '9') || c == '.') return parse_number();
    if (is_ident_start(c)) return parse_identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  static bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
  static bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  LevelExpr parse_number() {
    const std::size_t start = pos_;
    std::size_t end = pos_;
    bool digits = false;
    while (end < text_.size() && is_digit(text_[end])) { ++end; digits = true; }
    if (end < text_.size() && text_[end] == '.') {
      ++end;
      while (end < text_.size() && is_digit(text_[end])) { ++end; digits = true; }
    }
    if (!digits) throw ParseError("malformed number", start);
    // exponent only when followed by digits, so "2exp" is not swallowed
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t k = end + 1;
      if (k < text_.size() && (text_[k] == '+' || text_[k] == '-')) ++k;
      if (k < text_.size() && is_digit(text_[k])) {
        while (k < text_.size() && is_digit(text_[k])) ++k;
        end = k;
      }
    }
    double value = 0.0;
    auto res = std::from_chars(text_.data() + start, text_.data() + end, value);
    if (res.ec != std::errc{} || res.ptr != text_.data() + end || !std::isfinite(value)) {
      throw ParseError("malformed number", start);
    }
    pos_ = end;
    return LevelExpr::number(value);
  }

  LevelExpr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "n") return LevelExpr::variable();

    K kind;
    if (name == "exp") {
      kind = K::Exp;
    } else if (name == "log") {
      kind = K::Log;
    } else if (name == "sqrt") {
      kind = K::Sqrt;
    } else {
      throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }

    const std::size_t open = pos_;
    if (!accept('(')) throw ParseError("function '" + std::string(name) + "' requires an argument list", open);
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ')') {
      throw ParseError("arity mismatch: '" + std::string(name) + "' takes 1 argument, got 0", pos_);
    }
    LevelExpr arg = parse_expr();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ',') {
      throw ParseError("arity mismatch: '" + std::string(name) + "' takes 1 argument", pos_);
    }
    expect(')');
    return LevelExpr::unary(kind, std::move(arg));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string LevelExpr::to_string() const {
  std::string out;
  render(*this, out);
  return out;
}

bool operator==(const LevelExpr& a, const LevelExpr& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case LevelExpr::Kind::Number:
      return a.value() == b.value();
    case LevelExpr::Kind::Variable:
      return true;
    default:
      if (!(a.lhs() == b.lhs())) return false;
      return !is_binary(a.kind()) || a.rhs() == b.rhs();
  }
}

LevelExpr parse_level_expr(std::string_view text) { return Parser(text).parse(); }

std::vector<double> eval_levels(const LevelExpr& expr, long n_levels) {
  if (n_levels < 1) throw std::invalid_argument("eval_levels: n_levels must be >= 1");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n_levels));
  for (long n = 0; n < n_levels; ++n) values.push_back(expr.evaluate(n));
  return values;
}

}  // namespace qce
