#include "latlab/polynomial.hpp"

#include <cctype>
#include <algorithm>
#include <sstream>

namespace latlab {

Polynomial Polynomial::constant(std::size_t vars, const Rational& c) {
  Polynomial p(vars);
  p.add_term(Exponents(vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t vars, std::size_t index) {
  require(index < vars, ErrorCode::kInvalidArgument, "variable index out of range");
  Polynomial p(vars);
  Exponents e(vars, 0);
  e[index] = 1;
  p.add_term(e, Rational(1));
  return p;
}

Polynomial Polynomial::from_coefficients(std::span<const Rational> coeffs) {
  Polynomial p(1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) p.add_term(Exponents{static_cast<unsigned>(k)}, coeffs[k]);
  return p;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

unsigned Polynomial::degree() const {
  unsigned best = 0;
  for (const auto& [e, c] : terms_) {
    unsigned total = 0;
    for (unsigned k : e) total += k;
    best = std::max(best, total);
  }
  return best;
}

Rational Polynomial::coefficient(const Exponents& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  require(vars_ == rhs.vars_, ErrorCode::kDimensionMismatch, "polynomial arity");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  require(vars_ == rhs.vars_, ErrorCode::kDimensionMismatch, "polynomial arity");
  for (const auto& [e, c] : rhs.terms_) add_term(e, Rational(-c));
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require(a.vars_ == b.vars_, ErrorCode::kDimensionMismatch, "polynomial arity");
  Polynomial out(a.vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponents e(a.vars_);
      for (std::size_t v = 0; v < a.vars_; ++v) e[v] = ea[v] + eb[v];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial out = constant(vars_, Rational(1));
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  require(var < vars_, ErrorCode::kInvalidArgument, "variable index out of range");
  Polynomial out(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d = e;
    --d[var];
    out.add_term(d, c * e[var]);
  }
  return out;
}

Polynomial Polynomial::shifted(std::span<const Rational> s) const {
  require(s.size() == vars_, ErrorCode::kDimensionMismatch, "shift point arity");
  std::vector<Polynomial> moved(vars_);
  for (std::size_t v = 0; v < vars_; ++v) moved[v] = variable(vars_, v) + constant(vars_, s[v]);
  return evaluate_with<Polynomial>(std::span<const Polynomial>(moved), Polynomial(vars_),
                                   [&](const Rational& c) { return constant(vars_, c); });
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first reads naturally.
  std::vector<std::pair<Exponents, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    unsigned da = 0, db = 0;
    for (unsigned k : a.first) da += k;
    for (unsigned k : b.first) db += k;
    return da > db;
  });
  for (const auto& [e, c] : sorted) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool constant_term = true;
    for (unsigned k : e) constant_term = constant_term && k == 0;
    bool wrote = false;
    if (mag != 1 || constant_term) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t v = 0; v < vars_; ++v) {
      if (e[v] == 0) continue;
      if (wrote) os << '*';
      os << (v < names.size() ? names[v] : "x" + std::to_string(v));
      if (e[v] > 1) os << '^' << e[v];
      wrote = true;
    }
  }
  return os.str();
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> names) : text_(text), names_(names) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::kInvalidArgument,
         "polynomial \"" + std::string(text_) + "\" at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Polynomial out = term();
    if (negate) out = -out;
    while (true) {
      if (accept('+')) {
        out += term();
      } else if (accept('-')) {
        out -= term();
      } else {
        return out;
      }
    }
  }

  Polynomial term() {
    Polynomial out = factor();
    while (true) {
      if (accept('*')) {
        out = out * factor();
      } else if (accept('/')) {
        const Polynomial d = factor();
        if (d.degree() != 0 || d.is_zero()) error("division only by nonzero constants");
        out *= Rational(1) / d.coefficient(Polynomial::Exponents(names_.size(), 0));
      } else {
        return out;
      }
    }
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) error("exponent must be a nonnegative integer");
      const unsigned long k = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (k > 64) error("exponent too large");
      base = base.pow(static_cast<unsigned>(k));
    }
    return base;
  }

  Polynomial atom() {
    skip_space();
    if (pos_ >= text_.size()) error("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) error("missing ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      return Polynomial::constant(names_.size(), parse_rational(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      for (std::size_t v = 0; v < names_.size(); ++v)
        if (names_[v] == name) return Polynomial::variable(names_.size(), v);
      pos_ = start;
      error("unknown variable '" + std::string(name) + "'");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names) {
  require(!names.empty(), ErrorCode::kInvalidArgument, "no variable names");
  return Parser(text, names).parse();
}

}  // namespace latlab
