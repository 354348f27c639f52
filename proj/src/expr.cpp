#include "gtd/expr.hpp"

#include <cctype>
#include <sstream>

namespace gtd::expr {

Expression constant(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Constant;
  n->value = v;
  return Expression(n);
}

Expression variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Variable;
  n->name = std::move(name);
  return Expression(n);
}

Expression unary(UnaryOp op, Expression child) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Unary;
  n->uop = op;
  n->a = child.root();
  return Expression(n);
}

Expression binary(BinaryOp op, Expression lhs, Expression rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Binary;
  n->bop = op;
  n->a = lhs.root();
  n->b = rhs.root();
  return Expression(n);
}

Expression operator+(Expression a, Expression b) {
  return binary(BinaryOp::Add, std::move(a), std::move(b));
}
Expression operator-(Expression a, Expression b) {
  return binary(BinaryOp::Sub, std::move(a), std::move(b));
}
Expression operator*(Expression a, Expression b) {
  return binary(BinaryOp::Mul, std::move(a), std::move(b));
}
Expression operator/(Expression a, Expression b) {
  return binary(BinaryOp::Div, std::move(a), std::move(b));
}
Expression operator-(Expression a) { return unary(UnaryOp::Neg, std::move(a)); }
Expression ln(Expression a) { return unary(UnaryOp::Ln, std::move(a)); }
Expression exp(Expression a) { return unary(UnaryOp::Exp, std::move(a)); }
Expression sqrt(Expression a) { return unary(UnaryOp::Sqrt, std::move(a)); }
Expression pow(Expression a, Expression b) {
  return binary(BinaryOp::Pow, std::move(a), std::move(b));
}

namespace {

// Recursive-descent parser.
// expr    := term (('+'|'-') term)*
// term    := factor (('*'|'/') factor)*
// factor  := '-' factor | power
// power   := primary ('^' factor)?          (right associative)
// primary := number | ident | ident '(' expr ')' | '(' expr ')'
class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expression run() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("empty input", 0);
    Expression e = parse_expr();
    skip_ws();
    if (pos_ < s_.size())
      throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expression parse_expr() {
    Expression lhs = parse_term();
    for (;;) {
      if (accept('+'))
        lhs = binary(BinaryOp::Add, lhs, parse_term());
      else if (accept('-'))
        lhs = binary(BinaryOp::Sub, lhs, parse_term());
      else
        return lhs;
    }
  }

  Expression parse_term() {
    Expression lhs = parse_factor();
    for (;;) {
      if (accept('*'))
        lhs = binary(BinaryOp::Mul, lhs, parse_factor());
      else if (accept('/'))
        lhs = binary(BinaryOp::Div, lhs, parse_factor());
      else
        return lhs;
    }
  }

  Expression parse_factor() {
    if (accept('-')) return unary(UnaryOp::Neg, parse_factor());
    return parse_power();
  }

  Expression parse_power() {
    Expression base = parse_primary();
    if (accept('^')) return binary(BinaryOp::Pow, base, parse_factor());
    return base;
  }

  Expression parse_primary() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("expected operand", pos_);
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return parse_ident();
    if (accept('(')) {
      Expression e = parse_expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  Expression parse_number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
      ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t mark = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        while (pos_ < s_.size() &&
               std::isdigit(static_cast<unsigned char>(s_[pos_])))
          ++pos_;
      } else {
        pos_ = mark;  // 'e' was not an exponent
      }
    }
    try {
      std::size_t used = 0;
      double v = std::stod(std::string(s_.substr(start, pos_ - start)), &used);
      if (used != pos_ - start) throw std::invalid_argument("");
      return constant(v);
    } catch (const std::exception&) {
      throw ParseError("malformed number", start);
    }
  }

  Expression parse_ident() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    if (peek('(')) {
      UnaryOp op;
      if (name == "ln")
        op = UnaryOp::Ln;
      else if (name == "exp")
        op = UnaryOp::Exp;
      else if (name == "sqrt")
        op = UnaryOp::Sqrt;
      else
        throw ParseError("unknown function '" + name + "'", start);
      accept('(');
      Expression arg = parse_expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return unary(op, arg);
    }
    return variable(std::move(name));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

int precedence(const Node& n) {
  switch (n.kind) {
    case Node::Kind::Constant:
    case Node::Kind::Variable:
      return 100;
    case Node::Kind::Unary:
      return n.uop == UnaryOp::Neg ? 3 : 100;
    case Node::Kind::Binary:
      switch (n.bop) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 2;
        case BinaryOp::Pow: return 4;
      }
  }
  return 0;
}

void print(std::ostringstream& os, const NodePtr& n, int parent_prec,
           bool right_side) {
  int prec = precedence(*n);
  bool need_parens =
      prec < parent_prec || (prec == parent_prec && right_side && prec != 4) ||
      (prec == parent_prec && !right_side && prec == 4);
  switch (n->kind) {
    case Node::Kind::Constant: {
      std::ostringstream num;
      num.precision(17);
      num << n->value;
      std::string t = num.str();
      if (n->value < 0) {
        os << "(" << t << ")";
      } else {
        os << t;
      }
      return;
    }
    case Node::Kind::Variable:
      os << n->name;
      return;
    case Node::Kind::Unary:
      switch (n->uop) {
        case UnaryOp::Neg:
          if (need_parens) os << "(";
          os << "-";
          print(os, n->a, prec, true);
          if (need_parens) os << ")";
          return;
        case UnaryOp::Ln: os << "ln("; break;
        case UnaryOp::Exp: os << "exp("; break;
        case UnaryOp::Sqrt: os << "sqrt("; break;
      }
      print(os, n->a, 0, false);
      os << ")";
      return;
    case Node::Kind::Binary: {
      const char* sym = "";
      switch (n->bop) {
        case BinaryOp::Add: sym = "+"; break;
        case BinaryOp::Sub: sym = "-"; break;
        case BinaryOp::Mul: sym = "*"; break;
        case BinaryOp::Div: sym = "/"; break;
        case BinaryOp::Pow: sym = "^"; break;
      }
      if (need_parens) os << "(";
      print(os, n->a, prec, false);
      os << sym;
      print(os, n->b, prec, true);
      if (need_parens) os << ")";
      return;
    }
  }
}

}  // namespace

Expression parse(std::string_view text) { return Parser(text).run(); }

std::string to_string(const Expression& e) {
  if (e.empty()) return "";
  std::ostringstream os;
  print(os, e.root(), 0, false);
  return os.str();
}

bool equal(const Expression& a, const Expression& b) {
  struct Cmp {
    static bool eq(const NodePtr& x, const NodePtr& y) {
      if (x->kind != y->kind) return false;
      switch (x->kind) {
        case Node::Kind::Constant: return x->value == y->value;
        case Node::Kind::Variable: return x->name == y->name;
        case Node::Kind::Unary: return x->uop == y->uop && eq(x->a, y->a);
        case Node::Kind::Binary:
          return x->bop == y->bop && eq(x->a, y->a) && eq(x->b, y->b);
      }
      return false;
    }
  };
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  return Cmp::eq(a.root(), b.root());
}

Expression substitute(const Expression& e,
                      const std::map<std::string, Expression>& bindings) {
  struct Sub {
    const std::map<std::string, Expression>& bindings;
    NodePtr visit(const NodePtr& n) {
      switch (n->kind) {
        case Node::Kind::Constant:
          return n;
        case Node::Kind::Variable: {
          auto it = bindings.find(n->name);
          return it == bindings.end() ? n : it->second.root();
        }
        case Node::Kind::Unary: {
          auto m = std::make_shared<Node>(*n);
          m->a = visit(n->a);
          return m;
        }
        case Node::Kind::Binary: {
          auto m = std::make_shared<Node>(*n);
          m->a = visit(n->a);
          m->b = visit(n->b);
          return m;
        }
      }
      throw std::logic_error("bad node kind");
    }
  } s{bindings};
  return Expression(s.visit(e.root()));
}

std::set<std::string> variables(const Expression& e) {
  std::set<std::string> out;
  struct Walk {
    std::set<std::string>& out;
    void visit(const NodePtr& n) {
      switch (n->kind) {
        case Node::Kind::Variable: out.insert(n->name); break;
        case Node::Kind::Unary: visit(n->a); break;
        case Node::Kind::Binary:
          visit(n->a);
          visit(n->b);
          break;
        default: break;
      }
    }
  } w{out};
  if (!e.empty()) w.visit(e.root());
  return out;
}

}  // namespace gtd::expr
