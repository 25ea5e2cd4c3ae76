#pragma once

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "rankone/error.hpp"
#include "rankone/jet.hpp"

namespace rankone {

/// Scalar function of one variable parsed from the small expression language
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' unary)?          right associative
///   primary := number | constant | func '(' expr ')' | variable | '(' expr ')'
///
/// with constants `pi`, `e` and functions exp, log, sqrt, cosh, sinh, tanh,
/// arcosh. Precedence is `^` over unary minus over `* /` over `+ -`, so
/// `-t^2` is `-(t^2)` and `t^-2` is `t^(-2)`.
///
/// An Expr is immutable after parsing and safe to evaluate concurrently.
class Expr {
 public:
  enum class Op { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Exp, Log, Sqrt, Cosh, Sinh, Tanh, Arcosh };

  struct Node {
    Op op = Op::Constant;
    double value = 0.0;  // Constant only
    int lhs = -1;        // operand of unary nodes
    int rhs = -1;
    bool depends_on_variable = false;
  };

  Expr() = default;

  static Expr parse(std::string_view source, std::string_view variable_name);

  Jet2 eval_jet2(double x) const { return eval_node(root_, Jet2::variable(x)); }
  double eval(double x) const { return eval_jet2(x).value; }

  /// Fully parenthesized rendering that parses back to the same tree.
  std::string to_string() const { return nodes_ ? print_node(root_) : std::string{}; }

  /// Same tree, different variable name (renders and evaluates identically).
  Expr with_variable(std::string variable_name) const {
    Expr copy = *this;
    copy.variable_ = std::move(variable_name);
    copy.source_ = copy.to_string();
    return copy;
  }

  const std::string& source() const noexcept { return source_; }
  const std::string& variable() const noexcept { return variable_; }
  bool empty() const noexcept { return !nodes_; }
  std::size_t size() const noexcept { return nodes_ ? nodes_->size() : 0; }

  /// Structural equality of the trees (constants compared exactly).
  friend bool operator==(const Expr& a, const Expr& b) {
    if (a.empty() || b.empty()) return a.empty() && b.empty();
    return a.variable_ == b.variable_ && same_subtree(a, a.root_, b, b.root_);
  }

 private:
  friend class ExprParser;

  std::shared_ptr<const std::vector<Node>> nodes_;
  int root_ = -1;
  std::string source_;
  std::string variable_;

  const Node& node(int i) const { return (*nodes_)[static_cast<std::size_t>(i)]; }

  static bool same_subtree(const Expr& a, int i, const Expr& b, int j) {
    const Node& x = a.node(i);
    const Node& y = b.node(j);
    if (x.op != y.op) return false;
    switch (x.op) {
      case Op::Constant:
        return x.value == y.value;
      case Op::Variable:
        return true;
      default:
        break;
    }
    if ((x.lhs < 0) != (y.lhs < 0) || (x.rhs < 0) != (y.rhs < 0)) return false;
    if (x.lhs >= 0 && !same_subtree(a, x.lhs, b, y.lhs)) return false;
    if (x.rhs >= 0 && !same_subtree(a, x.rhs, b, y.rhs)) return false;
    return true;
  }

  Jet2 eval_node(int i, const Jet2& var) const {
    const Node& n = node(i);
    switch (n.op) {
      case Op::Constant: return Jet2::constant(n.value);
      case Op::Variable: return var;
      case Op::Add: return eval_node(n.lhs, var) + eval_node(n.rhs, var);
      case Op::Sub: return eval_node(n.lhs, var) - eval_node(n.rhs, var);
      case Op::Mul: return eval_node(n.lhs, var) * eval_node(n.rhs, var);
      case Op::Div: return eval_node(n.lhs, var) / eval_node(n.rhs, var);
      case Op::Pow: {
        const Jet2 base = eval_node(n.lhs, var);
        if (!node(n.rhs).depends_on_variable) return pow(base, eval_node(n.rhs, var).value);
        return pow(base, eval_node(n.rhs, var));
      }
      case Op::Neg: return -eval_node(n.lhs, var);
      case Op::Exp: return exp(eval_node(n.lhs, var));
      case Op::Log: return log(eval_node(n.lhs, var));
      case Op::Sqrt: return sqrt(eval_node(n.lhs, var));
      case Op::Cosh: return cosh(eval_node(n.lhs, var));
      case Op::Sinh: return sinh(eval_node(n.lhs, var));
      case Op::Tanh: return tanh(eval_node(n.lhs, var));
      case Op::Arcosh: return acosh(eval_node(n.lhs, var));
    }
    return Jet2::constant(std::nan(""));
  }

  static const char* function_name(Op op) {
    switch (op) {
      case Op::Exp: return "exp";
      case Op::Log: return "log";
      case Op::Sqrt: return "sqrt";
      case Op::Cosh: return "cosh";
      case Op::Sinh: return "sinh";
      case Op::Tanh: return "tanh";
      case Op::Arcosh: return "arcosh";
      default: return nullptr;
    }
  }

  static std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
  }

  std::string print_node(int i) const {
    const Node& n = node(i);
    switch (n.op) {
      case Op::Constant: return format_number(n.value);
      case Op::Variable: return variable_;
      case Op::Add: return "(" + print_node(n.lhs) + " + " + print_node(n.rhs) + ")";
      case Op::Sub: return "(" + print_node(n.lhs) + " - " + print_node(n.rhs) + ")";
      case Op::Mul: return "(" + print_node(n.lhs) + " * " + print_node(n.rhs) + ")";
      case Op::Div: return "(" + print_node(n.lhs) + " / " + print_node(n.rhs) + ")";
      case Op::Pow: return "(" + print_node(n.lhs) + " ^ " + print_node(n.rhs) + ")";
      case Op::Neg: return "(-" + print_node(n.lhs) + ")";
      default: return std::string(function_name(n.op)) + "(" + print_node(n.lhs) + ")";
    }
  }
};

/// Recursive-descent parser producing an Expr. Errors carry the byte offset
/// of the offending token.
class ExprParser {
 public:
  ExprParser(std::string_view source, std::string_view variable) : src_(source), var_(variable) {}

  Expr run() {
    if (var_ != "t" && var_ != "z") {
      throw InputError("expression variable must be 't' or 'z', got '" + std::string(var_) + "'");
    }
    skip_space();
    if (pos_ == src_.size()) throw SyntaxError("empty expression", pos_);
    const int root = parse_expr();
    skip_space();
    if (pos_ != src_.size()) throw SyntaxError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    Expr e;
    e.nodes_ = std::make_shared<const std::vector<Expr::Node>>(std::move(nodes_));
    e.root_ = root;
    e.source_ = std::string(src_);
    e.variable_ = std::string(var_);
    return e;
  }

 private:
  using Op = Expr::Op;

  std::string_view src_;
  std::string_view var_;
  std::size_t pos_ = 0;
  std::vector<Expr::Node> nodes_;

  int push(Op op, int lhs = -1, int rhs = -1, double value = 0.0) {
    Expr::Node n;
    n.op = op;
    n.lhs = lhs;
    n.rhs = rhs;
    n.value = value;
    n.depends_on_variable = op == Op::Variable ||
                            (lhs >= 0 && nodes_[static_cast<std::size_t>(lhs)].depends_on_variable) ||
                            (rhs >= 0 && nodes_[static_cast<std::size_t>(rhs)].depends_on_variable);
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) throw SyntaxError(std::string("expected '") + c + "' but input ended", pos_);
      throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }
  }

  int parse_expr() {
    int lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = push(Op::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = push(Op::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  int parse_term() {
    int lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = push(Op::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = push(Op::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  int parse_unary() {
    if (accept('-')) return push(Op::Neg, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  int parse_power() {
    const int base = parse_primary();
    if (accept('^')) return push(Op::Pow, base, parse_unary());
    return base;
  }

  int parse_primary() {
    skip_space();
    if (pos_ >= src_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      const int inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
  }

  int parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw SyntaxError("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      // only an exponent if digits follow; otherwise leave 'e' for the caller
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        digits();
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc{} || ptr != src_.data() + pos_) throw SyntaxError("malformed number", start);
    return push(Op::Constant, -1, -1, value);
  }

  int parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = src_.substr(start, pos_ - start);

    static constexpr std::pair<std::string_view, Op> functions[] = {
        {"exp", Op::Exp},   {"log", Op::Log},   {"sqrt", Op::Sqrt},     {"cosh", Op::Cosh},
        {"sinh", Op::Sinh}, {"tanh", Op::Tanh}, {"arcosh", Op::Arcosh},
    };
    for (const auto& [fname, op] : functions) {
      if (name == fname) {
        skip_space();
        if (pos_ >= src_.size() || src_[pos_] != '(') {
          throw SyntaxError("function '" + std::string(name) + "' needs '('", pos_);
        }
        ++pos_;
        const int arg = parse_expr();
        expect(')');
        return push(op, arg);
      }
    }
    if (name == var_) return push(Op::Variable);
    if (name == "pi") return push(Op::Constant, -1, -1, std::numbers::pi);
    if (name == "e") return push(Op::Constant, -1, -1, std::numbers::e);
    if (name == "t" || name == "z" || name == "x" || name == "y") {
      throw WrongVariable(std::string(name), std::string(var_), start);
    }
    throw UnknownIdentifier(std::string(name), start);
  }
};

inline Expr Expr::parse(std::string_view source, std::string_view variable_name) {
  return ExprParser(source, variable_name).run();
}

inline Expr parse(std::string_view source, std::string_view variable_name) {
  return Expr::parse(source, variable_name);
}

/// Evaluates e at x > 0 and rejects non-finite jets with DomainError.
inline Jet2 eval_jet2(const Expr& e, double x) {
  if (!(x > 0.0)) throw DomainError("evaluation point must be positive, got " + std::to_string(x));
  const Jet2 j = e.eval_jet2(x);
  if (!j.finite()) {
    throw DomainError("expression '" + e.source() + "' is not finite at " + e.variable() + " = " +
                      std::to_string(x));
  }
  return j;
}

}  // namespace rankone
