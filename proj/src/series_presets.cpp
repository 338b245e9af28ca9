#include "opk/series_presets.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <sstream>

namespace opk {

// ---------------------------------------------------------------------------
// Non-template series operations

RationalSeries specialize(const WeightedSeries& f, const Rational& u) {
  std::vector<Rational> c;
  c.reserve(f.order());
  for (const auto& p : f.coefficients()) c.push_back(p.evaluate(u));
  return RationalSeries(std::move(c));
}

std::string PositivityVerdict::str() const {
  if (status == Status::PassUpToN) return "pass up to N=" + std::to_string(order);
  std::string s = "violation n=" + std::to_string(witness->n);
  if (witness->u_degree) s += " u^" + std::to_string(*witness->u_degree);
  s += " " + witness->coefficient.str();
  return s;
}

PositivityVerdict gk_positivity(const RationalSeries& f) {
  const auto inv = reverse(f);
  PositivityVerdict v;
  v.order = f.order();
  for (int n = 1; n <= inv.order(); ++n) {
    const int s = (n % 2 == 1) ? inv[n].sign() : -inv[n].sign();
    if (s < 0) {
      v.status = PositivityVerdict::Status::Violation;
      v.witness = PositivityWitness{n, std::nullopt, inv[n], {}};
      return v;
    }
  }
  return v;
}

PositivityVerdict weighted_positivity(const WeightedSeries& f) {
  const auto inv = reverse(f);
  PositivityVerdict v;
  v.order = f.order();
  for (int n = 1; n <= inv.order(); ++n) {
    const auto& coeffs = inv[n].coefficients();
    std::vector<int> bad;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const int s = (n % 2 == 1) ? coeffs[i].sign() : -coeffs[i].sign();
      if (s < 0) bad.push_back(static_cast<int>(i));
    }
    if (!bad.empty()) {
      v.status = PositivityVerdict::Status::Violation;
      v.witness = PositivityWitness{n, bad.front(), coeffs[bad.front()], bad};
      return v;
    }
  }
  return v;
}

bool koszul_pair_check(const RationalSeries& f, const RationalSeries& g) {
  require_same_order(f, g);
  return -compose(g, -f) == RationalSeries::identity(f.order());
}

RationalSeries series_from_dims(std::span<const Rational> dims) {
  if (dims.empty()) throw SeriesError("series_from_dims: empty dimension list");
  std::vector<Rational> c;
  c.reserve(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i].sign() < 0 || !dims[i].is_integer())
      throw SeriesError("series_from_dims: dimensions must be non-negative integers");
    c.push_back(dims[i] / factorial(static_cast<unsigned>(i + 1)));
  }
  return RationalSeries(std::move(c));
}

RationalSeries series_from_dims(std::span<const std::uint64_t> dims) {
  std::vector<Rational> d;
  d.reserve(dims.size());
  for (auto x : dims) d.emplace_back(static_cast<long long>(x));
  return series_from_dims(std::span<const Rational>(d));
}

std::vector<Rational> dims_from_series(const RationalSeries& f) {
  std::vector<Rational> dims;
  dims.reserve(f.order());
  for (int n = 1; n <= f.order(); ++n) {
    Rational d = f[n] * factorial(static_cast<unsigned>(n));
    if (!d.is_integer() || d.sign() < 0)
      throw SeriesError("dims_from_series: coefficient of t^" + std::to_string(n) +
                        " is not a non-negative integer over n!");
    dims.push_back(d);
  }
  return dims;
}

bool functional_equation_check(const RationalSeries& f, FunctionalEquation which) {
  const int N = f.order();
  const auto t = RationalSeries::identity(N);
  if (which == FunctionalEquation::ThirdPowerAssociative) {
    const auto f2 = f * f;
    const auto f3 = f2 * f;
    return f - f2 + scale(Rational(1, 6), f3) == t;
  }
  // 1 - e^{-f} = sum_{k>=1} (-1)^{k+1} f^k / k!
  RationalSeries one_minus_exp(N);
  RationalSeries power = f;
  for (int k = 1; k <= N; ++k) {
    const Rational c = Rational(k % 2 == 1 ? 1 : -1) / factorial(static_cast<unsigned>(k));
    one_minus_exp = one_minus_exp + scale(c, power);
    if (k < N) power = power * f;
  }
  return one_minus_exp - scale(Rational(1, 2), f * f) == t;
}

AnySeries parse_series(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  if (tokens.empty()) throw SeriesError("parse_series: no coefficients");
  bool weighted = false;
  for (const auto& t : tokens)
    if (t.find(',') != std::string::npos) weighted = true;
  if (weighted) {
    std::vector<UPolynomial> c;
    for (const auto& t : tokens) {
      auto p = UPolynomial::parse(t);
      if (!p) throw SeriesError("parse_series: bad weighted coefficient '" + t + "'");
      c.push_back(*p);
    }
    return WeightedSeries(std::move(c));
  }
  std::vector<Rational> c;
  for (const auto& t : tokens) {
    auto r = Rational::parse(t);
    if (!r) throw SeriesError("parse_series: bad coefficient '" + t + "'");
    c.push_back(*r);
  }
  return RationalSeries(std::move(c));
}

// ---------------------------------------------------------------------------
// Presets

namespace {

using DimFn = std::function<Rational(unsigned)>;

// Dimension sequence that is listed explicitly for small arities and
// continues with a tail formula.
DimFn listed_then(std::vector<long> head, DimFn tail) {
  return [head = std::move(head), tail = std::move(tail)](unsigned n) {
    if (n <= head.size()) return Rational(head[n - 1]);
    return tail(n);
  };
}

Rational constant(long c) { return Rational(c); }

const std::map<std::string, DimFn, std::less<>>& dim_presets() {
  static const std::map<std::string, DimFn, std::less<>> presets = {
      {"(0,0,0)", [](unsigned n) { return factorial(n); }},
      {"(0,0,1)", listed_then({1, 2, 5, 9}, [](unsigned n) { return Rational(2L * n - 1); })},
      {"(0,1,0)generic", listed_then({1, 2, 4}, [](unsigned) { return constant(1); })},
      {"(0,1,0)ab=0", listed_then({1, 2, 4}, [](unsigned n) { return Rational(static_cast<long>(n)); })},
      {"(0,1,0)a=b", listed_then({1, 2, 4, 3}, [](unsigned) { return constant(1); })},
      {"(0,1,0)a=-b",
       [](unsigned n) {
         mpz_class p;
         mpz_ui_pow_ui(p.get_mpz_t(), 2, n - 1);
         return Rational(p);
       }},
      {"(0,1,1)generic", listed_then({1, 2, 3}, [](unsigned) { return constant(1); })},
      {"(0,1,1)ab=0", [](unsigned n) { return Rational(static_cast<long>(n)); }},
      {"(0,2,0)", listed_then({1, 2, 2}, [](unsigned) { return constant(1); })},
      {"(0,2,1)", listed_then({1, 2}, [](unsigned) { return constant(1); })},
      {"(1,0,1)", listed_then({1, 2, 4}, [](unsigned) { return constant(0); })},
      {"(1,1,0)generic", listed_then({1, 2, 3}, [](unsigned) { return constant(0); })},
      {"(1,1,0)a=-b", listed_then({1, 2, 3, 1}, [](unsigned) { return constant(0); })},
      {"(1,1,1)", listed_then({1, 2, 2}, [](unsigned) { return constant(0); })},
      {"(1,2,0)", listed_then({1, 2, 1}, [](unsigned) { return constant(0); })},
      {"(1,2,1)", listed_then({1, 2}, [](unsigned) { return constant(0); })},
      // 1 - (1-3t)^{1/3}: n! c_n = 2*5*...*(3n-4)
      {"paramfamily-dual",
       [](unsigned n) {
         Rational d(1);
         for (unsigned j = 2; j <= n; ++j) d *= Rational(3L * j - 4);
         return d;
       }},
      {"magmatic",
       [](unsigned n) { return factorial(2 * n - 2) / factorial(n - 1); }},
      {"prelie",
       [](unsigned n) {
         mpz_class p;
         mpz_ui_pow_ui(p.get_mpz_t(), n, n - 1);
         return Rational(p);
       }},
  };
  return presets;
}

}  // namespace

RationalSeries preset_series(std::string_view name, int order) {
  const auto& presets = dim_presets();
  auto it = presets.find(name);
  if (it == presets.end()) throw SeriesError("unknown series preset '" + std::string(name) + "'");
  if (order < 1) throw SeriesError("preset_series: order must be positive");
  std::vector<Rational> dims;
  for (int n = 1; n <= order; ++n) dims.push_back(it->second(static_cast<unsigned>(n)));
  return series_from_dims(std::span<const Rational>(dims));
}

std::vector<std::string> preset_series_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : dim_presets()) names.push_back(k);
  return names;
}

WeightedSeries weighted_preset_series(std::string_view name, int order) {
  if (order < 1) throw SeriesError("weighted_preset_series: order must be positive");
  std::vector<UPolynomial> c;
  if (name == "(0,1,0)a=-b") {
    // weight-k part of arity n has dimension C(n, 2k)
    for (int n = 1; n <= order; ++n) {
      std::vector<Rational> p;
      for (int k = 0; 2 * k <= n; ++k)
        p.push_back(binomial(static_cast<unsigned>(n), static_cast<unsigned>(2 * k)) /
                    factorial(static_cast<unsigned>(n)));
      c.emplace_back(std::move(p));
    }
  } else if (name == "(0,2,0)") {
    for (int n = 1; n <= order; ++n) {
      if (n == 2)
        c.push_back(UPolynomial{Rational(1, 2), Rational(1, 2)});
      else if (n == 3)
        c.push_back(UPolynomial{Rational(1, 6), Rational(1, 6)});
      else
        c.emplace_back(Rational(1) / factorial(static_cast<unsigned>(n)));
    }
  } else {
    throw SeriesError("unknown weighted series preset '" + std::string(name) + "'");
  }
  return WeightedSeries(std::move(c));
}

std::vector<std::string> weighted_preset_series_names() { return {"(0,1,0)a=-b", "(0,2,0)"}; }

}  // namespace opk
