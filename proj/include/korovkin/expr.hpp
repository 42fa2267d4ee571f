#pragma once

// Arithmetic expressions in the variables x and y for the CLI: literals, pi,
// sin/cos, + - * /, integer powers, parentheses.  Grammar (left-associative,
// longest-match lexing):
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' unsigned-integer)?
//   base   := number | 'x' | 'y' | 'pi' | ('sin'|'cos') '(' expr ')' | '(' expr ')'

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "korovkin/periodic.hpp"

namespace korovkin {

class ExprParseError : public std::runtime_error {
public:
  ExprParseError(std::size_t offset, const std::string& what)
      : std::runtime_error("at byte " + std::to_string(offset) + ": " + what),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

struct Expr {
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  enum class BinOp { add, sub, mul, div };
  struct Number { double value; };
  struct Pi {};
  struct Var { char which; }; // 'x' or 'y'
  struct Call { bool is_sin; NodePtr arg; };
  struct Binary { BinOp op; NodePtr lhs, rhs; };
  struct Power { NodePtr base; unsigned exp; };

  struct Node {
    std::variant<Number, Pi, Var, Call, Binary, Power> v;
  };

  NodePtr root;

  double operator()(double x, double y) const;
};

namespace detail {

inline double eval_node(const Expr::Node& n, double x, double y) {
  struct V {
    double x, y;
    double operator()(const Expr::Number& c) const { return c.value; }
    double operator()(const Expr::Pi&) const { return kPi; }
    double operator()(const Expr::Var& v) const { return v.which == 'x' ? x : y; }
    double operator()(const Expr::Call& c) const {
      const double a = eval_node(*c.arg, x, y);
      return c.is_sin ? std::sin(a) : std::cos(a);
    }
    double operator()(const Expr::Binary& b) const {
      const double l = eval_node(*b.lhs, x, y);
      const double r = eval_node(*b.rhs, x, y);
      switch (b.op) {
        case Expr::BinOp::add: return l + r;
        case Expr::BinOp::sub: return l - r;
        case Expr::BinOp::mul: return l * r;
        case Expr::BinOp::div: return l / r;
      }
      return 0.0;
    }
    double operator()(const Expr::Power& p) const {
      double b = eval_node(*p.base, x, y);
      double r = 1.0;
      for (unsigned e = p.exp; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
      }
      return r;
    }
  };
  return std::visit(V{x, y}, n.v);
}

class ExprParser {
public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  Expr::NodePtr parse() {
    Expr::NodePtr e = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ExprParseError(pos_, "unexpected trailing input");
    return e;
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr::NodePtr expr() {
    Expr::NodePtr lhs = term();
    for (;;) {
      skip_ws();
      if (eat('+'))
        lhs = binary(Expr::BinOp::add, lhs, term());
      else if (eat('-'))
        lhs = binary(Expr::BinOp::sub, lhs, term());
      else
        return lhs;
    }
  }

  Expr::NodePtr term() {
    Expr::NodePtr lhs = factor();
    for (;;) {
      skip_ws();
      if (eat('*'))
        lhs = binary(Expr::BinOp::mul, lhs, factor());
      else if (eat('/'))
        lhs = binary(Expr::BinOp::div, lhs, factor());
      else
        return lhs;
    }
  }

  Expr::NodePtr factor() {
    Expr::NodePtr b = base();
    skip_ws();
    if (eat('^')) {
      skip_ws();
      const std::size_t start = pos_;
      unsigned exp = 0;
      auto [p, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), exp);
      if (ec != std::errc() || p == text_.data() + pos_)
        throw ExprParseError(start, "expected an unsigned integer exponent after '^'");
      pos_ = p - text_.data();
      auto node = std::make_shared<Expr::Node>();
      node->v = Expr::Power{b, exp};
      return node;
    }
    return b;
  }

  Expr::NodePtr base() {
    skip_ws();
    if (pos_ >= text_.size()) throw ExprParseError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    if (c == '(') {
      const std::size_t open = pos_;
      ++pos_;
      Expr::NodePtr e = expr();
      if (!eat(')')) throw ExprParseError(open, "unbalanced '('");
      return e;
    }
    throw ExprParseError(pos_, std::string("unexpected character '") + c + "'");
  }

  Expr::NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t epos = pos_ + 1;
      if (epos < text_.size() && (text_[epos] == '+' || text_[epos] == '-')) ++epos;
      if (epos < text_.size() && std::isdigit(static_cast<unsigned char>(text_[epos]))) {
        pos_ = epos;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || p != text_.data() + pos_)
      throw ExprParseError(start, "malformed number");
    auto node = std::make_shared<Expr::Node>();
    node->v = Expr::Number{value};
    return node;
  }

  Expr::NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view id = text_.substr(start, pos_ - start);
    auto node = std::make_shared<Expr::Node>();
    if (id == "x" || id == "y") {
      node->v = Expr::Var{id[0]};
      return node;
    }
    if (id == "pi") {
      node->v = Expr::Pi{};
      return node;
    }
    if (id == "sin" || id == "cos") {
      const bool is_sin = (id == "sin");
      if (!eat('(')) throw ExprParseError(pos_, "expected '(' after function name");
      Expr::NodePtr arg = expr();
      if (!eat(')')) throw ExprParseError(start, "unbalanced '(' in function call");
      node->v = Expr::Call{is_sin, arg};
      return node;
    }
    throw ExprParseError(start, "unknown identifier '" + std::string(id) + "'");
  }

  static Expr::NodePtr binary(Expr::BinOp op, Expr::NodePtr l, Expr::NodePtr r) {
    auto node = std::make_shared<Expr::Node>();
    node->v = Expr::Binary{op, std::move(l), std::move(r)};
    return node;
  }
};

inline int node_prec(const Expr::Node& n) {
  struct V {
    int operator()(const Expr::Number&) const { return 4; }
    int operator()(const Expr::Pi&) const { return 4; }
    int operator()(const Expr::Var&) const { return 4; }
    int operator()(const Expr::Call&) const { return 4; }
    int operator()(const Expr::Power&) const { return 3; }
    int operator()(const Expr::Binary& b) const {
      return (b.op == Expr::BinOp::add || b.op == Expr::BinOp::sub) ? 1 : 2;
    }
  };
  return std::visit(V{}, n.v);
}

inline void print_node(const Expr::Node& n, int min_prec, std::string& out) {
  const bool parens = node_prec(n) < min_prec;
  if (parens) out += '(';
  struct V {
    std::string& out;
    void operator()(const Expr::Number& c) const {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", c.value);
      out += buf;
    }
    void operator()(const Expr::Pi&) const { out += "pi"; }
    void operator()(const Expr::Var& v) const { out += v.which; }
    void operator()(const Expr::Call& c) const {
      out += c.is_sin ? "sin(" : "cos(";
      print_node(*c.arg, 0, out);
      out += ')';
    }
    void operator()(const Expr::Binary& b) const {
      const int p = (b.op == Expr::BinOp::add || b.op == Expr::BinOp::sub) ? 1 : 2;
      print_node(*b.lhs, p, out);
      switch (b.op) {
        case Expr::BinOp::add: out += '+'; break;
        case Expr::BinOp::sub: out += '-'; break;
        case Expr::BinOp::mul: out += '*'; break;
        case Expr::BinOp::div: out += '/'; break;
      }
      print_node(*b.rhs, p + 1, out);
    }
    void operator()(const Expr::Power& p) const {
      print_node(*p.base, 4, out);
      out += '^';
      out += std::to_string(p.exp);
    }
  };
  std::visit(V{out}, n.v);
  if (parens) out += ')';
}

inline bool nodes_equal(const Expr::Node& a, const Expr::Node& b) {
  if (a.v.index() != b.v.index()) return false;
  struct V {
    const Expr::Node& other;
    bool operator()(const Expr::Number& c) const {
      return c.value == std::get<Expr::Number>(other.v).value;
    }
    bool operator()(const Expr::Pi&) const { return true; }
    bool operator()(const Expr::Var& v) const {
      return v.which == std::get<Expr::Var>(other.v).which;
    }
    bool operator()(const Expr::Call& c) const {
      const auto& o = std::get<Expr::Call>(other.v);
      return c.is_sin == o.is_sin && nodes_equal(*c.arg, *o.arg);
    }
    bool operator()(const Expr::Binary& b) const {
      const auto& o = std::get<Expr::Binary>(other.v);
      return b.op == o.op && nodes_equal(*b.lhs, *o.lhs) && nodes_equal(*b.rhs, *o.rhs);
    }
    bool operator()(const Expr::Power& p) const {
      const auto& o = std::get<Expr::Power>(other.v);
      return p.exp == o.exp && nodes_equal(*p.base, *o.base);
    }
  };
  return std::visit(V{b}, a.v);
}

} // namespace detail

inline double Expr::operator()(double x, double y) const {
  return detail::eval_node(*root, x, y);
}

/// Parse `text` into an expression tree.  Syntax problems raise
/// ExprParseError carrying the byte offset of the offending token.
inline Expr parse_expr(std::string_view text) {
  detail::ExprParser p(text);
  return Expr{p.parse()};
}

/// Render with minimal parentheses; parse_expr(print_expr(e)) is structurally
/// equal to e for any parser-producible tree.
inline std::string print_expr(const Expr& e) {
  std::string out;
  detail::print_node(*e.root, 0, out);
  return out;
}

inline bool structurally_equal(const Expr& a, const Expr& b) {
  return detail::nodes_equal(*a.root, *b.root);
}

inline Fn2D to_fn2d(const Expr& e, std::string name = {}) {
  Fn2D f;
  f.eval = [e](double x, double y) { return e(x, y); };
  f.name = name.empty() ? print_expr(e) : std::move(name);
  return f;
}

struct PeriodicityReport {
  bool pass = false;
  double worst_defect = 0.0;
  double x = 0.0, y = 0.0; ///< worst offender
  char axis = 'x';         ///< axis along which the worst defect occurred
};

/// Compares e at (x,y) against (x+2pi, y) and (x, y+2pi) on a deterministic
/// grid of roughly `samples` points.  The verdict is exactly the thresholded
/// maximum defect: pass iff max <= 1e-9.
inline PeriodicityReport periodicity_gate(const Expr& e, int samples = 4096) {
  const int nb = std::max(2, static_cast<int>(std::floor(std::sqrt(static_cast<double>(samples)))));
  PeriodicityReport rep;
  for (int i = 0; i < nb; ++i) {
    const double x = -kPi + kTwoPi * i / nb;
    for (int j = 0; j < nb; ++j) {
      const double y = -kPi + kTwoPi * j / nb;
      const double v = e(x, y);
      const double dx = std::abs(e(x + kTwoPi, y) - v);
      const double dy = std::abs(e(x, y + kTwoPi) - v);
      if (dx > rep.worst_defect) rep = {false, dx, x, y, 'x'};
      if (dy > rep.worst_defect) rep = {false, dy, x, y, 'y'};
    }
  }
  rep.pass = rep.worst_defect <= 1e-9;
  return rep;
}

} // namespace korovkin
