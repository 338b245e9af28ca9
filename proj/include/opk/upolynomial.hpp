#pragma once

#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opk/rational.hpp"

namespace opk {

/// Polynomial in the weight variable u with exact rational coefficients.
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and degree kZeroDegree.
class UPolynomial {
 public:
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  UPolynomial() = default;
  UPolynomial(int c) : UPolynomial(Rational(c)) {}  // NOLINT
  UPolynomial(const Rational& c);                   // NOLINT
  UPolynomial(std::initializer_list<Rational> coeffs);
  explicit UPolynomial(std::vector<Rational> coeffs);

  /// u^k
  static UPolynomial monomial(int k, const Rational& c = Rational(1));

  int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  /// Coefficient of u^k (zero beyond the stored range).
  Rational coeff(int k) const;
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational evaluate(const Rational& u) const;

  /// Comma-separated list of coefficients by u-degree, e.g. "1/2,1/2".
  /// The zero polynomial prints as "0".
  std::string str() const;
  static std::optional<UPolynomial> parse(std::string_view text);

  UPolynomial operator-() const;
  UPolynomial& operator+=(const UPolynomial& o);
  UPolynomial& operator-=(const UPolynomial& o);
  UPolynomial& operator*=(const UPolynomial& o);

  friend UPolynomial operator+(UPolynomial a, const UPolynomial& b) { return a += b; }
  friend UPolynomial operator-(UPolynomial a, const UPolynomial& b) { return a -= b; }
  friend UPolynomial operator*(const UPolynomial& a, const UPolynomial& b);
  friend bool operator==(const UPolynomial& a, const UPolynomial& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

}  // namespace opk
