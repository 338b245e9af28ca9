#include "opk/relation_parser.hpp"

#include <cctype>
#include <vector>

namespace opk {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  CubicExpr parse() {
    CubicExpr e = expr(true);
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  // Top-level terms are checked for multilinearity where they start.
  CubicExpr expr(bool top) {
    Rational sign(1);
    if (peek() == '+' || peek() == '-') {
      if (s_[pos_] == '-') sign = Rational(-1);
      ++pos_;
    }
    CubicExpr e = sign * term(top);
    while (peek() == '+' || peek() == '-') {
      const bool minus = s_[pos_] == '-';
      ++pos_;
      const CubicExpr t = term(top);
      e = minus ? e - t : e + t;
    }
    return e;
  }

  CubicExpr term(bool top) {
    const std::size_t start = (skip(), pos_);
    Rational coeff(1);
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = number();
      if (peek() == '*') ++pos_;
    }
    CubicExpr t = coeff * product();
    if (top) {
      try {
        (void)t.to_magmatic();
      } catch (const CubicExprError&) {
        throw ParseError(start, "term is not multilinear in a1, a2, a3");
      }
    }
    return t;
  }

  Rational number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
    auto r = Rational::parse(s_.substr(start, pos_ - start));
    if (!r) {
      pos_ = start;
      fail("malformed rational coefficient");
    }
    return *r;
  }

  CubicExpr product() {
    CubicExpr acc = primary();
    for (;;) {
      const char c = peek();
      if (c == '*' || c == '.') {
        ++pos_;
        const CubicExpr rhs = primary();
        acc = c == '*' ? CubicExpr::mul(acc, rhs) : CubicExpr::dot(acc, rhs);
      } else if (c == 'a' || c == '(' || c == '[') {
        acc = CubicExpr::mul(acc, primary());
      } else {
        return acc;
      }
    }
  }

  CubicExpr primary() {
    const char c = peek();
    if (c == 'a') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a variable index after 'a'");
      const int idx = std::stoi(std::string(s_.substr(start, pos_ - start)));
      if (idx < 1 || idx > 3) {
        pos_ = start - 1;
        fail("variable index " + std::to_string(idx) + " outside 1..3");
      }
      return CubicExpr::var(idx);
    }
    if (c == '(') {
      ++pos_;
      CubicExpr x = expr(false);
      if (peek() == ',') {
        ++pos_;
        CubicExpr y = expr(false);
        expect(',');
        CubicExpr z = expr(false);
        expect(')');
        return CubicExpr::associator(x, y, z);
      }
      expect(')');
      return x;
    }
    if (c == '[') {
      ++pos_;
      CubicExpr x = expr(false);
      expect(',');
      CubicExpr y = expr(false);
      expect(']');
      return CubicExpr::bracket(x, y);
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

CubicExpr parse_relation(std::string_view text) { return Parser(text).parse(); }

CubicVector parse_relation_vector(std::string_view text, CubicSpace space) {
  return parse_relation(text).to_space(space);
}

}  // namespace opk
