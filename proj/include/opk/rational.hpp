#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <Eigen/Core>

namespace opk {

/// Exact rational number backed by GMP, always kept in lowest terms with a
/// positive denominator.
///
/// The class deliberately does not expose gmpxx expression templates: every
/// operator returns a plain Rational so the type behaves as a value scalar
/// inside Eigen expressions.
class Rational {
 public:
  Rational() = default;
  Rational(int n) : v_(static_cast<long>(n)) {}  // NOLINT: implicit, used as Eigen scalar literal
  Rational(long n) : v_(n) {}                    // NOLINT
  Rational(long long n);                         // NOLINT
  Rational(long num, long den);
  explicit Rational(const mpq_class& q);
  explicit Rational(const mpz_class& z) : v_(z) {}

  /// Parses "p", "-p" or "p/q" (no whitespace). Returns nullopt on malformed
  /// input or a zero denominator.
  static std::optional<Rational> parse(std::string_view text);

  std::string str() const;
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class& mpq() const { return v_; }
  std::size_t hash() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// n! as an exact rational.
Rational factorial(unsigned n);
/// Binomial coefficient C(n, k) (zero outside 0 <= k <= n).
Rational binomial(unsigned n, unsigned k);

struct RationalHash {
  std::size_t operator()(const Rational& r) const { return r.hash(); }
};

}  // namespace opk

namespace Eigen {

template <>
struct NumTraits<opk::Rational> : GenericNumTraits<opk::Rational> {
  using Real = opk::Rational;
  using NonInteger = opk::Rational;
  using Nested = opk::Rational;
  using Literal = opk::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 40,
    MulCost = 60
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
