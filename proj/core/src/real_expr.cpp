#include "latlab/real_expr.hpp"

#include <cctype>
#include <memory>
#include <vector>

#include "latlab/error.hpp"

namespace latlab {

namespace {

struct Node {
  enum class Kind { kNumber, kPi, kE, kNeg, kAdd, kSub, kMul, kDiv, kPow, kRoot };
  Kind kind;
  std::string literal;
  long k = 0;
  std::unique_ptr<Node> a, b;
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Kind kind, NodePtr a = nullptr, NodePtr b = nullptr, long k = 0) {
  auto n = std::make_unique<Node>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  n->k = k;
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::kInvalidArgument, "real expression '" + s_ + "': " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) error(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (eat('+'))
        n = make(Node::Kind::kAdd, std::move(n), term());
      else if (eat('-'))
        n = make(Node::Kind::kSub, std::move(n), term());
      else
        return n;
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (eat('*'))
        n = make(Node::Kind::kMul, std::move(n), unary());
      else if (eat('/'))
        n = make(Node::Kind::kDiv, std::move(n), unary());
      else
        return n;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Node::Kind::kNeg, unary());
    if (eat('+')) return unary();
    NodePtr n = atom();
    if (eat('^')) {
      const long k = integer();
      n = make(Node::Kind::kPow, std::move(n), nullptr, k);
    }
    return n;
  }

  long integer() {
    skip();
    bool neg = eat('-');
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || pos_ - start > 9) error("expected a small integer");
    const long v = std::stol(s_.substr(start, pos_ - start));
    return neg ? -v : v;
  }

  std::string word() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = expr();
      expect(')');
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (!std::isalpha(static_cast<unsigned char>(c))) error("unexpected '" + std::string(1, c) + "'");
    const std::string w = word();
    if (w == "pi") return make(Node::Kind::kPi);
    if (w == "e") return make(Node::Kind::kE);
    if (w == "sqrt" || w == "cbrt" || w == "root") {
      expect('(');
      NodePtr arg = expr();
      long k = w == "sqrt" ? 2 : 3;
      if (w == "root") {
        expect(',');
        k = integer();
        if (k < 1) error("root index must be positive");
      }
      expect(')');
      return make(Node::Kind::kRoot, std::move(arg), nullptr, k);
    }
    error("unknown name '" + w + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      // An exponent needs digits after it; a bare "2e" is rejected later.
      std::size_t p = pos_ + 1;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
      if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
        pos_ = p;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    auto n = make(Node::Kind::kNumber);
    n->literal = s_.substr(start, pos_ - start);
    return n;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

std::optional<Rational> exact(const Node& n) {
  using K = Node::Kind;
  switch (n.kind) {
    case K::kNumber:
      return parse_rational(n.literal);
    case K::kPi:
    case K::kE:
    case K::kRoot:
      return std::nullopt;
    case K::kNeg: {
      auto a = exact(*n.a);
      if (!a) return a;
      return Rational(-*a);
    }
    case K::kPow: {
      auto a = exact(*n.a);
      if (!a) return a;
      if (n.k < 0 && *a == 0) fail(ErrorCode::kOutOfDomain, "zero to a negative power");
      Rational base = n.k < 0 ? Rational(1 / *a) : *a;
      Rational out(1);
      for (long i = 0; i < std::labs(n.k); ++i) out *= base;
      return out;
    }
    default: {
      auto a = exact(*n.a);
      auto b = exact(*n.b);
      if (!a || !b) return std::nullopt;
      if (n.kind == K::kAdd) return Rational(*a + *b);
      if (n.kind == K::kSub) return Rational(*a - *b);
      if (n.kind == K::kMul) return Rational(*a * *b);
      if (*b == 0) fail(ErrorCode::kOutOfDomain, "division by zero");
      return Rational(*a / *b);
    }
  }
}

BigFloat approx(const Node& n, unsigned bits) {
  using K = Node::Kind;
  switch (n.kind) {
    case K::kNumber:
      return BigFloat(parse_rational(n.literal), bits);
    case K::kPi:
      return BigFloat::pi(bits);
    case K::kE:
      return exp(BigFloat(1L).with_precision(bits));
    case K::kNeg:
      return -approx(*n.a, bits);
    case K::kPow: {
      const BigFloat a = approx(*n.a, bits);
      if (n.k < 0 && a.is_zero()) fail(ErrorCode::kOutOfDomain, "zero to a negative power");
      return pow(a, n.k);
    }
    case K::kRoot: {
      const BigFloat a = approx(*n.a, bits);
      if (a.sign() < 0 && n.k % 2 == 0) fail(ErrorCode::kOutOfDomain, "even root of a negative number");
      BigFloat out(0.0, bits);
      mpfr_rootn_ui(out.raw(), a.raw(), static_cast<unsigned long>(n.k), MPFR_RNDN);
      return out;
    }
    default: {
      const BigFloat a = approx(*n.a, bits), b = approx(*n.b, bits);
      if (n.kind == K::kAdd) return a + b;
      if (n.kind == K::kSub) return a - b;
      if (n.kind == K::kMul) return a * b;
      if (b.is_zero()) fail(ErrorCode::kOutOfDomain, "division by zero");
      return a / b;
    }
  }
}

struct Bounds {
  BigFloat lo, hi;
};

Bounds point(const Rational& q, unsigned bits) {
  Bounds b{BigFloat(0.0, bits), BigFloat(0.0, bits)};
  mpfr_set_q(b.lo.raw(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(b.hi.raw(), q.get_mpq_t(), MPFR_RNDU);
  return b;
}

Bounds multiply(const Bounds& a, const Bounds& b, unsigned bits) {
  Bounds out{BigFloat(0.0, bits), BigFloat(0.0, bits)};
  BigFloat tmp(0.0, bits);
  bool first = true;
  for (const BigFloat* x : {&a.lo, &a.hi})
    for (const BigFloat* y : {&b.lo, &b.hi}) {
      mpfr_mul(tmp.raw(), x->raw(), y->raw(), MPFR_RNDD);
      if (first || tmp < out.lo) out.lo = tmp;
      mpfr_mul(tmp.raw(), x->raw(), y->raw(), MPFR_RNDU);
      if (first || tmp > out.hi) out.hi = tmp;
      first = false;
    }
  return out;
}

Bounds reciprocal(const Bounds& a, unsigned bits) {
  if (a.lo.sign() <= 0 && a.hi.sign() >= 0)
    fail(ErrorCode::kPrecisionExhausted, "divisor enclosure contains zero at " + std::to_string(bits) + " bits");
  Bounds out{BigFloat(0.0, bits), BigFloat(0.0, bits)};
  mpfr_ui_div(out.lo.raw(), 1, a.hi.raw(), MPFR_RNDD);
  mpfr_ui_div(out.hi.raw(), 1, a.lo.raw(), MPFR_RNDU);
  return out;
}

Bounds enclose(const Node& n, unsigned bits) {
  using K = Node::Kind;
  if (auto q = exact(n)) return point(*q, bits);
  Bounds out{BigFloat(0.0, bits), BigFloat(0.0, bits)};
  switch (n.kind) {
    case K::kPi:
      mpfr_const_pi(out.lo.raw(), MPFR_RNDD);
      mpfr_const_pi(out.hi.raw(), MPFR_RNDU);
      return out;
    case K::kE: {
      mpfr_set_ui(out.lo.raw(), 1, MPFR_RNDN);
      mpfr_set_ui(out.hi.raw(), 1, MPFR_RNDN);
      mpfr_exp(out.lo.raw(), out.lo.raw(), MPFR_RNDD);
      mpfr_exp(out.hi.raw(), out.hi.raw(), MPFR_RNDU);
      return out;
    }
    case K::kNeg: {
      const Bounds a = enclose(*n.a, bits);
      return Bounds{-a.hi, -a.lo};
    }
    case K::kPow: {
      const Bounds a = enclose(*n.a, bits);
      Bounds acc = point(Rational(1), bits);
      for (long i = 0; i < std::labs(n.k); ++i) acc = multiply(acc, a, bits);
      if (n.k % 2 == 0 && acc.lo.sign() < 0) acc.lo = BigFloat(0.0, bits);
      return n.k < 0 ? reciprocal(acc, bits) : acc;
    }
    case K::kRoot: {
      const Bounds a = enclose(*n.a, bits);
      const unsigned long k = static_cast<unsigned long>(n.k);
      if (k % 2 == 0 && a.hi.sign() < 0) fail(ErrorCode::kOutOfDomain, "even root of a negative number");
      if (k % 2 == 0 && a.lo.sign() < 0)
        mpfr_set_zero(out.lo.raw(), 1);
      else
        mpfr_rootn_ui(out.lo.raw(), a.lo.raw(), k, MPFR_RNDD);
      mpfr_rootn_ui(out.hi.raw(), a.hi.raw(), k, MPFR_RNDU);
      return out;
    }
    default: {
      const Bounds a = enclose(*n.a, bits), b = enclose(*n.b, bits);
      if (n.kind == K::kMul) return multiply(a, b, bits);
      if (n.kind == K::kDiv) return multiply(a, reciprocal(b, bits), bits);
      const bool sub = n.kind == K::kSub;
      mpfr_add(out.lo.raw(), a.lo.raw(), (sub ? -b.hi : b.lo).raw(), MPFR_RNDD);
      mpfr_add(out.hi.raw(), a.hi.raw(), (sub ? -b.lo : b.hi).raw(), MPFR_RNDU);
      return out;
    }
  }
}

}  // namespace

RealEnclosure enclose_real(const std::string& text, unsigned bits) {
  const NodePtr n = Parser(text).parse();
  if (auto q = exact(*n)) return {*q, *q};
  const Bounds b = enclose(*n, bits);
  return {b.lo.to_rational(), b.hi.to_rational()};
}

BigFloat parse_real(const std::string& text, unsigned bits) {
  const NodePtr n = Parser(text).parse();
  // Rational subexpressions are rounded once, at the end.
  if (auto q = exact(*n)) return BigFloat(*q, bits);
  return approx(*n, bits + 16).with_precision(bits);
}

std::optional<Rational> parse_real_exact(const std::string& text) { return exact(*Parser(text).parse()); }

}  // namespace latlab
