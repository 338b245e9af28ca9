#include "opk/upolynomial.hpp"

#include <algorithm>

namespace opk {

UPolynomial::UPolynomial(const Rational& c) {
  if (!c.is_zero()) c_.push_back(c);
}

UPolynomial::UPolynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

UPolynomial::UPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPolynomial UPolynomial::monomial(int k, const Rational& c) {
  UPolynomial p;
  if (c.is_zero()) return p;
  p.c_.assign(static_cast<std::size_t>(k) + 1, Rational(0));
  p.c_.back() = c;
  return p;
}

void UPolynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational UPolynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
  return c_[static_cast<std::size_t>(k)];
}

Rational UPolynomial::evaluate(const Rational& u) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * u + *it;
  return acc;
}

std::string UPolynomial::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ',';
    out += c_[i].str();
  }
  return out;
}

std::optional<UPolynomial> UPolynomial::parse(std::string_view text) {
  std::vector<Rational> coeffs;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    auto r = Rational::parse(piece);
    if (!r) return std::nullopt;
    coeffs.push_back(*r);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return UPolynomial(std::move(coeffs));
}

UPolynomial UPolynomial::operator-() const {
  UPolynomial r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPolynomial& UPolynomial::operator+=(const UPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPolynomial& UPolynomial::operator-=(const UPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPolynomial& UPolynomial::operator*=(const UPolynomial& o) {
  *this = *this * o;
  return *this;
}

UPolynomial operator*(const UPolynomial& a, const UPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UPolynomial(std::move(r));
}

}  // namespace opk
