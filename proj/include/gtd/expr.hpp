#pragma once

// Small arithmetic DSL for fundamental equations Phi(E^a): AST, parser,
// printer, and an evaluator that is generic over the numeric ring (plain
// doubles or jets), so one evaluation pass over jets yields all partials.

#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "gtd/errors.hpp"
#include "gtd/jets.hpp"

namespace gtd::expr {

enum class UnaryOp { Neg, Ln, Exp, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Kind { Constant, Variable, Unary, Binary };
  Kind kind;
  double value = 0.0;     // Constant
  std::string name;       // Variable
  UnaryOp uop{};          // Unary
  BinaryOp bop{};         // Binary
  NodePtr a, b;           // children
};

class Expression {
 public:
  Expression() = default;
  explicit Expression(NodePtr root) : root_(std::move(root)) {}

  const NodePtr& root() const { return root_; }
  bool empty() const { return root_ == nullptr; }

 private:
  NodePtr root_;
};

// -- construction ------------------------------------------------------------

Expression constant(double v);
Expression variable(std::string name);
Expression unary(UnaryOp op, Expression child);
Expression binary(BinaryOp op, Expression lhs, Expression rhs);

Expression operator+(Expression a, Expression b);
Expression operator-(Expression a, Expression b);
Expression operator*(Expression a, Expression b);
Expression operator/(Expression a, Expression b);
Expression operator-(Expression a);
Expression ln(Expression a);
Expression exp(Expression a);
Expression sqrt(Expression a);
Expression pow(Expression a, Expression b);

// -- parsing / printing ------------------------------------------------------

/// Parse `text` honoring precedence ^ (right-assoc) > unary - > *,/ > +,-.
/// Throws ParseError with the byte offset of the failure.
Expression parse(std::string_view text);

std::string to_string(const Expression& e);

/// Structural equality of ASTs.
bool equal(const Expression& a, const Expression& b);

/// Replace variables by expressions (exact tree substitution).
Expression substitute(const Expression& e,
                      const std::map<std::string, Expression>& bindings);

std::set<std::string> variables(const Expression& e);

// -- evaluation --------------------------------------------------------------

inline double ring_value(double x) { return x; }
inline double ring_value(const Jet& j) { return j.value(); }

inline double ring_log(double x) {
  if (x <= 0.0) throw DomainError("ln of non-positive value");
  return std::log(x);
}
inline Jet ring_log(const Jet& x) { return log(x); }

inline double ring_exp(double x) { return std::exp(x); }
inline Jet ring_exp(const Jet& x) { return exp(x); }

inline double ring_sqrt(double x) {
  if (x <= 0.0) throw DomainError("sqrt of non-positive value");
  return std::sqrt(x);
}
inline Jet ring_sqrt(const Jet& x) { return sqrt(x); }

inline double ring_div(double a, double b) {
  if (b == 0.0) throw DomainError("division by zero");
  return a / b;
}
inline Jet ring_div(const Jet& a, const Jet& b) { return a / b; }

inline double ring_pow_int(double x, long long e) {
  if (e < 0 && x == 0.0) throw DomainError("negative power of zero");
  double r = 1.0, base = x;
  long long n = e < 0 ? -e : e;
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return e < 0 ? 1.0 / r : r;
}
inline Jet ring_pow_int(const Jet& x, long long e) { return pow_int(x, e); }

inline double ring_pow(double x, double p) {
  if (x <= 0.0) throw DomainError("non-integer power of non-positive base");
  return std::pow(x, p);
}
inline Jet ring_pow(const Jet& x, const Jet& p) { return pow(x, p); }

template <class T>
T make_like(const T& proto, double v);
template <>
inline double make_like<double>(const double&, double v) { return v; }
template <>
inline Jet make_like<Jet>(const Jet& proto, double v) {
  return Jet(proto.space(), v);
}

/// Evaluate over any ring providing the five ops plus ln/exp/sqrt. For jets,
/// the environment's jets must share one JetSpace.
template <class T>
T evaluate(const Expression& e, const std::map<std::string, T>& env) {
  if (e.empty()) throw std::invalid_argument("evaluate: empty expression");
  if (env.empty()) throw std::invalid_argument("evaluate: empty environment");
  const T& proto = env.begin()->second;
  struct Visitor {
    const std::map<std::string, T>& env;
    const T& proto;
    T visit(const NodePtr& n) {
      switch (n->kind) {
        case Node::Kind::Constant:
          return make_like(proto, n->value);
        case Node::Kind::Variable: {
          auto it = env.find(n->name);
          if (it == env.end())
            throw DomainError("unbound variable: " + n->name);
          return it->second;
        }
        case Node::Kind::Unary: {
          T c = visit(n->a);
          switch (n->uop) {
            case UnaryOp::Neg: return -c;
            case UnaryOp::Ln: return ring_log(c);
            case UnaryOp::Exp: return ring_exp(c);
            case UnaryOp::Sqrt: return ring_sqrt(c);
          }
          throw std::logic_error("bad unary op");
        }
        case Node::Kind::Binary: {
          if (n->bop == BinaryOp::Pow &&
              n->b->kind == Node::Kind::Constant) {
            double p = n->b->value;
            double r = std::round(p);
            T base = visit(n->a);
            if (std::abs(p - r) < 1e-12 && std::abs(r) < 1e9)
              return ring_pow_int(base, static_cast<long long>(r));
            return ring_pow(base, make_like(proto, p));
          }
          T l = visit(n->a);
          T r = visit(n->b);
          switch (n->bop) {
            case BinaryOp::Add: return l + r;
            case BinaryOp::Sub: return l - r;
            case BinaryOp::Mul: return l * r;
            case BinaryOp::Div: return ring_div(l, r);
            case BinaryOp::Pow: return ring_pow(l, r);
          }
          throw std::logic_error("bad binary op");
        }
      }
      throw std::logic_error("bad node kind");
    }
  } v{env, proto};
  return v.visit(e.root());
}

}  // namespace gtd::expr
