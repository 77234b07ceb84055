#include "gqm/expr.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <numbers>
#include <vector>

#include "gqm/error.hpp"

namespace gqm {

struct Expr::Node {
  Op op = Op::var;
  Elementary fn = Elementary::exp;
  double value = 0.0;  // constant value, or exponent for pow/abs_pow
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string_view fn_name(Elementary fn) {
  switch (fn) {
    case Elementary::exp: return "exp";
    case Elementary::log: return "log";
    case Elementary::pow: return "pow";
    case Elementary::sin: return "sin";
    case Elementary::cos: return "cos";
    case Elementary::sinh: return "sinh";
    case Elementary::cosh: return "cosh";
    case Elementary::sqrt: return "sqrt";
    case Elementary::abs_pow: return "abspow";
  }
  return "?";
}

bool takes_param(Elementary fn) { return fn == Elementary::pow || fn == Elementary::abs_pow; }

double eval_scalar(const Expr::Node& n, double x) {
  using Op = Expr::Op;
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::var: return x;
    case Op::add: return eval_scalar(*n.lhs, x) + eval_scalar(*n.rhs, x);
    case Op::sub: return eval_scalar(*n.lhs, x) - eval_scalar(*n.rhs, x);
    case Op::mul: return eval_scalar(*n.lhs, x) * eval_scalar(*n.rhs, x);
    case Op::div: return eval_scalar(*n.lhs, x) / eval_scalar(*n.rhs, x);
    case Op::neg: return -eval_scalar(*n.lhs, x);
    case Op::unary: break;
  }
  const double u = eval_scalar(*n.lhs, x);
  switch (n.fn) {
    case Elementary::exp: return std::exp(u);
    case Elementary::log:
      if (!(u > 0.0)) throw Error(Errc::domain_error, "log of nonpositive value");
      return std::log(u);
    case Elementary::sqrt:
      if (u < 0.0) throw Error(Errc::domain_error, "sqrt of negative value");
      return std::sqrt(u);
    case Elementary::pow:
      if (u < 0.0 && n.value != std::floor(n.value)) {
        throw Error(Errc::domain_error, "non-integer power of a negative value");
      }
      return std::pow(u, n.value);
    case Elementary::abs_pow: return std::pow(std::abs(u), n.value);
    case Elementary::sin: return std::sin(u);
    case Elementary::cos: return std::cos(u);
    case Elementary::sinh: return std::sinh(u);
    case Elementary::cosh: return std::cosh(u);
  }
  return 0.0;
}

Jet eval_jet(const Expr::Node& n, double x, int order) {
  using Op = Expr::Op;
  switch (n.op) {
    case Op::constant: return Jet::constant(n.value, order);
    case Op::var: return Jet::variable(x, order);
    case Op::add: return eval_jet(*n.lhs, x, order) + eval_jet(*n.rhs, x, order);
    case Op::sub: return eval_jet(*n.lhs, x, order) - eval_jet(*n.rhs, x, order);
    case Op::mul: return eval_jet(*n.lhs, x, order) * eval_jet(*n.rhs, x, order);
    case Op::div: return eval_jet(*n.lhs, x, order) / eval_jet(*n.rhs, x, order);
    case Op::neg: return -eval_jet(*n.lhs, x, order);
    case Op::unary: break;
  }
  return compose(n.fn, eval_jet(*n.lhs, x, order), n.value);
}

void print(const Expr::Node& n, std::string& out) {
  using Op = Expr::Op;
  auto binary = [&](std::string_view name) {
    out += '(';
    out += name;
    out += ' ';
    print(*n.lhs, out);
    out += ' ';
    print(*n.rhs, out);
    out += ')';
  };
  switch (n.op) {
    case Op::constant: out += format_number(n.value); return;
    case Op::var: out += 'x'; return;
    case Op::add: binary("add"); return;
    case Op::sub: binary("sub"); return;
    case Op::mul: binary("mul"); return;
    case Op::div: binary("div"); return;
    case Op::neg:
      out += "(neg ";
      print(*n.lhs, out);
      out += ')';
      return;
    case Op::unary:
      out += '(';
      out += fn_name(n.fn);
      out += ' ';
      if (takes_param(n.fn)) {
        out += format_number(n.value);
        out += ' ';
      }
      print(*n.lhs, out);
      out += ')';
      return;
  }
}

// Tokenizer and recursive-descent parser for the prefix form.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(Errc::parse_error,
                why + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view token() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail("expected a token");
    return text_.substr(start, pos_ - start);
  }

  static bool to_number(std::string_view tok, double& out) {
    const auto* end = tok.data() + tok.size();
    auto res = std::from_chars(tok.data(), end, out);
    return res.ec == std::errc{} && res.ptr == end;
  }

  double number() {
    const auto tok = token();
    double v = 0.0;
    if (!to_number(tok, v)) fail("expected a number, got '" + std::string(tok) + "'");
    return v;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Expr parse_expr() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] != '(') {
      const auto tok = token();
      if (tok == "x") return Expr::var();
      if (tok == "pi") return Expr::constant(std::numbers::pi);
      if (tok == "e") return Expr::constant(std::numbers::e);
      double v = 0.0;
      if (!to_number(tok, v)) fail("unknown atom '" + std::string(tok) + "'");
      return Expr::constant(v);
    }
    expect('(');
    const std::string head(token());
    Expr result;
    if (head == "add" || head == "mul") {
      std::vector<Expr> args;
      while (!peek(')')) args.push_back(parse_expr());
      if (args.size() < 2) fail(head + " needs at least two arguments");
      result = args[0];
      for (std::size_t i = 1; i < args.size(); ++i) {
        result = head == "add" ? result + args[i] : result * args[i];
      }
    } else if (head == "sub" || head == "div") {
      Expr a = parse_expr();
      Expr b = parse_expr();
      result = head == "sub" ? a - b : a / b;
    } else if (head == "neg") {
      result = -parse_expr();
    } else if (head == "pow" || head == "abspow") {
      const double r = number();
      result = Expr::unary(head == "pow" ? Elementary::pow : Elementary::abs_pow, parse_expr(), r);
    } else {
      static constexpr std::pair<std::string_view, Elementary> kFns[] = {
          {"exp", Elementary::exp},   {"log", Elementary::log},   {"sin", Elementary::sin},
          {"cos", Elementary::cos},   {"sinh", Elementary::sinh}, {"cosh", Elementary::cosh},
          {"sqrt", Elementary::sqrt},
      };
      bool found = false;
      for (const auto& [name, fn] : kFns) {
        if (head == name) {
          result = Expr::unary(fn, parse_expr());
          found = true;
          break;
        }
      }
      if (!found) fail("unknown operator '" + head + "'");
    }
    expect(')');
    return result;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

NodePtr make(Expr::Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

}  // namespace

Expr::Expr() : node_(make(Op::var)) {}

Expr Expr::var() { return Expr(); }

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->op = Op::constant;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::unary(Elementary fn, Expr arg, double param) {
  auto n = std::make_shared<Node>();
  n->op = Op::unary;
  n->fn = fn;
  n->value = param;
  n->lhs = std::move(arg.node_);
  if (n->lhs->op == Op::constant) return constant(eval_scalar(*n, 0.0));
  return Expr(std::move(n));
}

Expr Expr::parse(std::string_view text) { return Parser(text).parse_all(); }

std::string Expr::to_string() const {
  std::string out;
  print(*node_, out);
  return out;
}

double Expr::operator()(double x) const { return eval_scalar(*node_, x); }

Jet Expr::jet(double x, int order) const { return eval_jet(*node_, x, order); }

Expr::Op Expr::op() const { return node_->op; }

double Expr::constant_value() const { return node_->value; }

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() + b.constant_value());
  if (a.is_constant() && a.constant_value() == 0.0) return b;
  if (b.is_constant() && b.constant_value() == 0.0) return a;
  return Expr(make(Expr::Op::add, a.node_, b.node_));
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() - b.constant_value());
  if (b.is_constant() && b.constant_value() == 0.0) return a;
  if (a.is_constant() && a.constant_value() == 0.0) return -b;
  return Expr(make(Expr::Op::sub, a.node_, b.node_));
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() * b.constant_value());
  if ((a.is_constant() && a.constant_value() == 0.0) || (b.is_constant() && b.constant_value() == 0.0)) {
    return Expr::constant(0.0);
  }
  if (a.is_constant() && a.constant_value() == 1.0) return b;
  if (b.is_constant() && b.constant_value() == 1.0) return a;
  return Expr(make(Expr::Op::mul, a.node_, b.node_));
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() / b.constant_value());
  if (a.is_constant() && a.constant_value() == 0.0) return Expr::constant(0.0);
  if (b.is_constant() && b.constant_value() == 1.0) return a;
  return Expr(make(Expr::Op::div, a.node_, b.node_));
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.constant_value());
  if (a.op() == Expr::Op::neg) return Expr(a.node_->lhs);
  return Expr(make(Expr::Op::neg, a.node_));
}

Expr operator*(double s, const Expr& a) { return Expr::constant(s) * a; }
Expr operator+(double s, const Expr& a) { return Expr::constant(s) + a; }
Expr operator*(const Expr& a, double s) { return a * Expr::constant(s); }
Expr operator+(const Expr& a, double s) { return a + Expr::constant(s); }
Expr operator-(const Expr& a, double s) { return a - Expr::constant(s); }

Expr Expr::derivative() const {
  const Node& n = *node_;
  auto sub = [](const NodePtr& p) { return Expr(p); };
  switch (n.op) {
    case Op::constant: return constant(0.0);
    case Op::var: return constant(1.0);
    case Op::add: return sub(n.lhs).derivative() + sub(n.rhs).derivative();
    case Op::sub: return sub(n.lhs).derivative() - sub(n.rhs).derivative();
    case Op::mul: {
      const Expr a = sub(n.lhs), b = sub(n.rhs);
      return a.derivative() * b + a * b.derivative();
    }
    case Op::div: {
      const Expr a = sub(n.lhs), b = sub(n.rhs);
      return (a.derivative() - (a / b) * b.derivative()) / b;
    }
    case Op::neg: return -sub(n.lhs).derivative();
    case Op::unary: break;
  }
  const Expr u = sub(n.lhs);
  const Expr du = u.derivative();
  switch (n.fn) {
    case Elementary::exp: return *this * du;
    case Elementary::log: return du / u;
    case Elementary::pow: return (n.value * pow(u, n.value - 1.0)) * du;
    case Elementary::sqrt: return (0.5 * pow(u, -0.5)) * du;
    case Elementary::abs_pow: return (n.value * (*this / u)) * du;
    case Elementary::sin: return cos(u) * du;
    case Elementary::cos: return -(sin(u) * du);
    case Elementary::sinh: return cosh(u) * du;
    case Elementary::cosh: return sinh(u) * du;
  }
  return constant(0.0);
}

Expr Expr::substitute(const Expr& inner) const {
  const Node& n = *node_;
  auto sub = [&](const NodePtr& p) { return Expr(p).substitute(inner); };
  switch (n.op) {
    case Op::constant: return *this;
    case Op::var: return inner;
    case Op::add: return sub(n.lhs) + sub(n.rhs);
    case Op::sub: return sub(n.lhs) - sub(n.rhs);
    case Op::mul: return sub(n.lhs) * sub(n.rhs);
    case Op::div: return sub(n.lhs) / sub(n.rhs);
    case Op::neg: return -sub(n.lhs);
    case Op::unary: return unary(n.fn, sub(n.lhs), n.value);
  }
  return *this;
}

Expr exp(const Expr& a) { return Expr::unary(Elementary::exp, a); }
Expr log(const Expr& a) { return Expr::unary(Elementary::log, a); }
Expr sin(const Expr& a) { return Expr::unary(Elementary::sin, a); }
Expr cos(const Expr& a) { return Expr::unary(Elementary::cos, a); }
Expr sinh(const Expr& a) { return Expr::unary(Elementary::sinh, a); }
Expr cosh(const Expr& a) { return Expr::unary(Elementary::cosh, a); }
Expr sqrt(const Expr& a) { return Expr::unary(Elementary::sqrt, a); }

Expr pow(const Expr& a, double r) {
  if (r == 0.0) return Expr::constant(1.0);
  if (r == 1.0) return a;
  return Expr::unary(Elementary::pow, a, r);
}

Expr abs_pow(const Expr& a, double r) { return Expr::unary(Elementary::abs_pow, a, r); }

}  // namespace gqm
