#include "gaborheat/expr.hpp"

#include <cctype>
#include <cmath>
#include <vector>

#include "gaborheat/error.hpp"

namespace gaborheat {

using cplx = std::complex<double>;

struct Expression::Node {
  enum class Kind { number, var_t, var_x, var_xi, neg, add, sub, mul, div, pow, call } kind;
  cplx value{};
  std::string fn;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr make(Kind k, std::vector<NodePtr> args = {}, cplx v = {}, std::string fn = {}) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = k;
  n->args = std::move(args);
  n->value = v;
  n->fn = std::move(fn);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

  bool t = false, x = false, xi = false;

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::config, "expression '" + s_ + "': " + msg + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make(Kind::add, {lhs, term()});
      else if (accept('-'))
        lhs = make(Kind::sub, {lhs, term()});
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = make(Kind::mul, {lhs, unary()});
      else if (accept('/'))
        lhs = make(Kind::div, {lhs, unary()});
      else
        return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::neg, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Kind::pow, {base, unary()});
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = expr();
      if (!accept(')')) error("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) error("malformed number");
      pos_ += std::size_t(end - begin);
      return make(Kind::number, {}, cplx(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      if (accept('(')) {
        static const char* known[] = {"sin", "cos", "tan", "exp", "log", "sqrt", "tanh",
                                      "sinh", "cosh", "abs", "re", "im", "conj"};
        bool ok = false;
        for (const char* k : known) ok = ok || id == k;
        if (!ok) error("unknown function '" + id + "'");
        NodePtr arg = expr();
        if (!accept(')')) error("expected ')' after argument of " + id);
        return make(Kind::call, {arg}, {}, id);
      }
      if (id == "t") return t = true, make(Kind::var_t);
      if (id == "x") return x = true, make(Kind::var_x);
      if (id == "xi") return xi = true, make(Kind::var_xi);
      if (id == "pi") return make(Kind::number, {}, cplx(3.14159265358979323846));
      if (id == "e") return make(Kind::number, {}, cplx(std::exp(1.0)));
      if (id == "i") return make(Kind::number, {}, cplx(0.0, 1.0));
      error("unknown identifier '" + id + "'");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

cplx ipow(cplx base, cplx ex) {
  if (ex.imag() == 0.0 && ex.real() == std::round(ex.real()) && std::abs(ex.real()) <= 64.0) {
    int k = int(ex.real());
    cplx r = 1.0, b = base;
    for (int m = std::abs(k); m; m >>= 1, b *= b)
      if (m & 1) r *= b;
    return k < 0 ? 1.0 / r : r;
  }
  if (base.imag() == 0.0 && base.real() >= 0.0 && ex.imag() == 0.0) return std::pow(base.real(), ex.real());
  return std::pow(base, ex);
}

cplx eval(const Expression::Node& n, double t, double x, double xi) {
  switch (n.kind) {
    case Kind::number: return n.value;
    case Kind::var_t: return t;
    case Kind::var_x: return x;
    case Kind::var_xi: return xi;
    case Kind::neg: return -eval(*n.args[0], t, x, xi);
    case Kind::add: return eval(*n.args[0], t, x, xi) + eval(*n.args[1], t, x, xi);
    case Kind::sub: return eval(*n.args[0], t, x, xi) - eval(*n.args[1], t, x, xi);
    case Kind::mul: return eval(*n.args[0], t, x, xi) * eval(*n.args[1], t, x, xi);
    case Kind::div: return eval(*n.args[0], t, x, xi) / eval(*n.args[1], t, x, xi);
    case Kind::pow: return ipow(eval(*n.args[0], t, x, xi), eval(*n.args[1], t, x, xi));
    case Kind::call: {
      const cplx a = eval(*n.args[0], t, x, xi);
      const std::string& f = n.fn;
      const bool real = a.imag() == 0.0;
      if (f == "sin") return real ? cplx(std::sin(a.real())) : std::sin(a);
      if (f == "cos") return real ? cplx(std::cos(a.real())) : std::cos(a);
      if (f == "tan") return real ? cplx(std::tan(a.real())) : std::tan(a);
      if (f == "exp") return real ? cplx(std::exp(a.real())) : std::exp(a);
      if (f == "log") return std::log(a);
      if (f == "sqrt") return std::sqrt(a);
      if (f == "tanh") return real ? cplx(std::tanh(a.real())) : std::tanh(a);
      if (f == "sinh") return real ? cplx(std::sinh(a.real())) : std::sinh(a);
      if (f == "cosh") return real ? cplx(std::cosh(a.real())) : std::cosh(a);
      if (f == "abs") return std::abs(a);
      if (f == "re") return a.real();
      if (f == "im") return a.imag();
      return std::conj(a);
    }
  }
  return {};
}

}  // namespace

Expression Expression::parse(const std::string& text) {
  Parser p(text);
  Expression e;
  e.text_ = text;
  e.root_ = p.parse();
  e.uses_t_ = p.t;
  e.uses_x_ = p.x;
  e.uses_xi_ = p.xi;
  return e;
}

cplx Expression::operator()(double t, double x, double xi) const { return eval(*root_, t, x, xi); }

}  // namespace gaborheat
