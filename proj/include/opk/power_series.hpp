#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "opk/rational.hpp"
#include "opk/upolynomial.hpp"

namespace opk {

class SeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline bool coeff_is_one(const Rational& c) { return c.is_one(); }
inline bool coeff_is_one(const UPolynomial& c) { return c == UPolynomial(1); }
inline bool coeff_is_zero(const Rational& c) { return c.is_zero(); }
inline bool coeff_is_zero(const UPolynomial& c) { return c.is_zero(); }
inline std::string coeff_str(const Rational& c) { return c.str(); }
inline std::string coeff_str(const UPolynomial& c) { return c.str(); }
}  // namespace detail

/// Truncated formal power series c_1 t + ... + c_N t^N with zero constant term.
///
/// Coeff is Rational or UPolynomial. The truncation order travels with the
/// value; binary operations on series of different orders throw SeriesError.
template <class Coeff>
class PowerSeries {
 public:
  using coefficient_type = Coeff;

  explicit PowerSeries(int order) : c_(checked_order(order), Coeff(0)) {}
  explicit PowerSeries(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw SeriesError("PowerSeries: truncation order must be positive");
  }

  /// The series t.
  static PowerSeries identity(int order) {
    PowerSeries s(order);
    s.c_[0] = Coeff(1);
    return s;
  }

  int order() const { return static_cast<int>(c_.size()); }
  /// Coefficient of t^n, 1 <= n <= order().
  const Coeff& operator[](int n) const {
    if (n < 1 || n > order()) throw SeriesError("PowerSeries: coefficient index out of range");
    return c_[static_cast<std::size_t>(n - 1)];
  }
  std::span<const Coeff> coefficients() const { return c_; }

  /// Same series, truncated to a smaller order.
  PowerSeries truncated(int order) const {
    if (order < 1 || order > this->order()) throw SeriesError("PowerSeries: bad truncation order");
    return PowerSeries(std::vector<Coeff>(c_.begin(), c_.begin() + order));
  }

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

 private:
  static std::size_t checked_order(int order) {
    if (order < 1) throw SeriesError("PowerSeries: truncation order must be positive");
    return static_cast<std::size_t>(order);
  }
  std::vector<Coeff> c_;
};

using RationalSeries = PowerSeries<Rational>;
using WeightedSeries = PowerSeries<UPolynomial>;

template <class Coeff>
void require_same_order(const PowerSeries<Coeff>& f, const PowerSeries<Coeff>& g) {
  if (f.order() != g.order())
    throw SeriesError("truncation orders differ: " + std::to_string(f.order()) + " vs " +
                      std::to_string(g.order()));
}

template <class Coeff>
PowerSeries<Coeff> operator+(const PowerSeries<Coeff>& f, const PowerSeries<Coeff>& g) {
  require_same_order(f, g);
  std::vector<Coeff> r(f.coefficients().begin(), f.coefficients().end());
  for (int n = 1; n <= f.order(); ++n) r[n - 1] += g[n];
  return PowerSeries<Coeff>(std::move(r));
}

template <class Coeff>
PowerSeries<Coeff> operator-(const PowerSeries<Coeff>& f) {
  std::vector<Coeff> r;
  r.reserve(f.order());
  for (const auto& c : f.coefficients()) r.push_back(-c);
  return PowerSeries<Coeff>(std::move(r));
}

template <class Coeff>
PowerSeries<Coeff> operator-(const PowerSeries<Coeff>& f, const PowerSeries<Coeff>& g) {
  return f + (-g);
}

/// Cauchy product truncated at the common order.
template <class Coeff>
PowerSeries<Coeff> operator*(const PowerSeries<Coeff>& f, const PowerSeries<Coeff>& g) {
  require_same_order(f, g);
  const int N = f.order();
  std::vector<Coeff> r(N, Coeff(0));
  for (int i = 1; i < N; ++i) {
    if (detail::coeff_is_zero(f[i])) continue;
    for (int j = 1; i + j <= N; ++j) r[i + j - 1] += f[i] * g[j];
  }
  return PowerSeries<Coeff>(std::move(r));
}

template <class Coeff>
PowerSeries<Coeff> scale(const Coeff& a, const PowerSeries<Coeff>& f) {
  std::vector<Coeff> r;
  r.reserve(f.order());
  for (const auto& c : f.coefficients()) r.push_back(a * c);
  return PowerSeries<Coeff>(std::move(r));
}

/// f(g(t)) truncated at the common order.
template <class Coeff>
PowerSeries<Coeff> compose(const PowerSeries<Coeff>& f, const PowerSeries<Coeff>& g) {
  require_same_order(f, g);
  const int N = f.order();
  PowerSeries<Coeff> result(N);
  PowerSeries<Coeff> power = g;  // g^k, starts at k = 1
  for (int k = 1; k <= N; ++k) {
    if (!detail::coeff_is_zero(f[k])) result = result + scale(f[k], power);
    if (k < N) power = power * g;
  }
  return result;
}

/// Compositional inverse g with f(g(t)) = g(f(t)) = t up to the truncation
/// order. Solves for the coefficients of g one degree at a time: the t^n
/// coefficient of f(g) is g_n plus terms involving only g_1..g_{n-1}.
template <class Coeff>
PowerSeries<Coeff> reverse(const PowerSeries<Coeff>& f) {
  if (!detail::coeff_is_one(f[1]))
    throw SeriesError("reverse: coefficient of t must equal 1");
  const int N = f.order();
  std::vector<Coeff> g(N + 1, Coeff(0));
  g[1] = Coeff(1);
  // pw[k][m] = [t^m] g^k for 1 <= k <= m <= N.
  std::vector<std::vector<Coeff>> pw(N + 1, std::vector<Coeff>(N + 1, Coeff(0)));
  pw[1][1] = Coeff(1);
  for (int n = 2; n <= N; ++n) {
    Coeff acc(0);
    for (int k = 2; k <= n; ++k) {
      Coeff p(0);
      for (int j = 1; j <= n - k + 1; ++j) {
        if (detail::coeff_is_zero(g[j]) || detail::coeff_is_zero(pw[k - 1][n - j])) continue;
        p += g[j] * pw[k - 1][n - j];
      }
      if (!detail::coeff_is_zero(f[k])) acc += f[k] * p;
      pw[k][n] = std::move(p);
    }
    g[n] = -acc;
    pw[1][n] = g[n];
  }
  g.erase(g.begin());
  return PowerSeries<Coeff>(std::move(g));
}

/// Evaluates the weight variable at a rational value.
RationalSeries specialize(const WeightedSeries& f, const Rational& u);

struct PositivityWitness {
  int n = 0;
  std::optional<int> u_degree;  // set for weighted tests
  Rational coefficient;         // offending coefficient of the inverse
  std::vector<int> offending_degrees;  // all failing u-degrees at arity n
};

struct PositivityVerdict {
  enum class Status { PassUpToN, Violation };
  Status status = Status::PassUpToN;
  int order = 0;
  std::optional<PositivityWitness> witness;

  bool violated() const { return status == Status::Violation; }
  std::string str() const;
};

/// Sign test on the compositional inverse: (-1)^{n-1} a_n >= 0.
PositivityVerdict gk_positivity(const RationalSeries& f);
/// Weighted sign test: (-1)^{n-1} a_n(u) has non-negative coefficients.
PositivityVerdict weighted_positivity(const WeightedSeries& f);

/// True iff -g(-f(t)) = t up to the common truncation order.
bool koszul_pair_check(const RationalSeries& f, const RationalSeries& g);

/// c_n = dims[n-1] / n!; dims[0] is the arity-one dimension.
RationalSeries series_from_dims(std::span<const Rational> dims);
RationalSeries series_from_dims(std::span<const std::uint64_t> dims);
/// Inverse of series_from_dims; throws SeriesError unless every n! c_n is a
/// non-negative integer.
std::vector<Rational> dims_from_series(const RationalSeries& f);

enum class FunctionalEquation { ThirdPowerAssociative, LieAdmissible };
/// f - f^2 + f^3/6 = t (third power associative) or 1 - e^{-f} - f^2/2 = t
/// (Lie-admissible), checked up to the truncation order.
bool functional_equation_check(const RationalSeries& f, FunctionalEquation which);

/// Whitespace-separated coefficients c_1 .. c_N. Weighted coefficients are
/// printed as comma-separated u-degree lists.
template <class Coeff>
std::string to_string(const PowerSeries<Coeff>& f) {
  std::string out;
  for (int n = 1; n <= f.order(); ++n) {
    if (n > 1) out += ' ';
    out += detail::coeff_str(f[n]);
  }
  return out;
}

using AnySeries = std::variant<RationalSeries, WeightedSeries>;
/// Parses the text format written by to_string; any comma makes the whole
/// series weighted.
AnySeries parse_series(std::string_view text);

}  // namespace opk
