#pragma once

#include <array>
#include <optional>

#include "opk/cubic.hpp"
#include "opk/s3.hpp"

namespace opk {

/// Octonion over e0 (unit), e1..e7 with the Fano-plane table
/// e_i e_{i+1} = e_{i+3} (indices 1..7 taken mod 7), i.e. the quaternionic
/// triples (1,2,4) (2,3,5) (3,4,6) (4,5,7) (5,6,1) (6,7,2) (7,1,3); for
/// each triple (a,b,c): e_a e_b = e_c, e_b e_c = e_a, e_c e_a = e_b,
/// reversed order flips the sign, and e_i e_i = -e0 for i >= 1.
template <class Scalar>
struct Octonion {
  std::array<Scalar, 8> c{};

  Octonion() { c.fill(Scalar(0)); }
  static Octonion basis(int i) {
    Octonion x;
    x.c[static_cast<std::size_t>(i)] = Scalar(1);
    return x;
  }
  const Scalar& operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  Scalar& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  bool is_zero() const {
    for (const auto& v : c)
      if (v != Scalar(0)) return false;
    return true;
  }
  friend bool operator==(const Octonion& a, const Octonion& b) { return a.c == b.c; }
};

namespace detail {

struct OctTerm {
  int sign;
  int index;
};

/// e_i e_j = sign * e_index.
inline const std::array<std::array<OctTerm, 8>, 8>& octonion_table() {
  static const auto table = [] {
    std::array<std::array<OctTerm, 8>, 8> t{};
    for (int i = 0; i < 8; ++i) {
      t[0][static_cast<std::size_t>(i)] = {1, i};
      t[static_cast<std::size_t>(i)][0] = {1, i};
    }
    for (int i = 1; i < 8; ++i) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = {-1, 0};
    const auto wrap = [](int k) { return (k - 1) % 7 + 1; };
    for (int i = 1; i <= 7; ++i) {
      const int a = i, b = wrap(i + 1), c = wrap(i + 3);
      for (const auto& [x, y, z] : {std::array{a, b, c}, std::array{b, c, a}, std::array{c, a, b}}) {
        t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = {1, z};
        t[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = {-1, z};
      }
    }
    return t;
  }();
  return table;
}

}  // namespace detail

template <class Scalar>
Octonion<Scalar> operator+(const Octonion<Scalar>& x, const Octonion<Scalar>& y) {
  Octonion<Scalar> r;
  for (int i = 0; i < 8; ++i) r[i] = x[i] + y[i];
  return r;
}

template <class Scalar>
Octonion<Scalar> operator-(const Octonion<Scalar>& x, const Octonion<Scalar>& y) {
  Octonion<Scalar> r;
  for (int i = 0; i < 8; ++i) r[i] = x[i] - y[i];
  return r;
}

template <class Scalar>
Octonion<Scalar> operator*(const Scalar& a, const Octonion<Scalar>& x) {
  Octonion<Scalar> r;
  for (int i = 0; i < 8; ++i) r[i] = a * x[i];
  return r;
}

template <class Scalar>
Octonion<Scalar> oct_mul(const Octonion<Scalar>& x, const Octonion<Scalar>& y) {
  const auto& t = detail::octonion_table();
  Octonion<Scalar> r;
  for (int i = 0; i < 8; ++i) {
    if (x[i] == Scalar(0)) continue;
    for (int j = 0; j < 8; ++j) {
      if (y[j] == Scalar(0)) continue;
      const auto& e = t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const Scalar p = x[i] * y[j];
      if (e.sign > 0)
        r[e.index] += p;
      else
        r[e.index] -= p;
    }
  }
  return r;
}

template <class Scalar>
Octonion<Scalar> operator*(const Octonion<Scalar>& x, const Octonion<Scalar>& y) {
  return oct_mul(x, y);
}

/// (x, y, z) = (xy)z - x(yz)
template <class Scalar>
Octonion<Scalar> associator(const Octonion<Scalar>& x, const Octonion<Scalar>& y, const Octonion<Scalar>& z) {
  return oct_mul(oct_mul(x, y), z) - oct_mul(x, oct_mul(y, z));
}

/// Sum of squared coordinates.
template <class Scalar>
Scalar norm(const Octonion<Scalar>& x) {
  Scalar s(0);
  for (int i = 0; i < 8; ++i) s += x[i] * x[i];
  return s;
}

/// sum_s x_s (a_s1, a_s2, a_s3) for a = (a1, a2, a3).
template <class Scalar>
Octonion<Scalar> evaluate(const AssociatorIdentity& id, const Octonion<Scalar>& a1, const Octonion<Scalar>& a2,
                          const Octonion<Scalar>& a3) {
  const std::array<const Octonion<Scalar>*, 3> a{&a1, &a2, &a3};
  Octonion<Scalar> r;
  for (int k = 0; k < 6; ++k) {
    const Scalar& x = id.x[static_cast<std::size_t>(k)];
    if (x == Scalar(0)) continue;
    const auto& s = s3_elements()[static_cast<std::size_t>(k)];
    const auto at = [&](int i) -> const Octonion<Scalar>& { return *a[static_cast<std::size_t>(s(i) - 1)]; };
    r = r + x * associator(at(1), at(2), at(3));
  }
  return r;
}

/// Evaluates a magmatic cubic word combination: coordinate k is
/// (a_s1 a_s2) a_s3 and coordinate 6+k is a_s1 (a_s2 a_s3) for the k-th
/// permutation s.
template <class Scalar>
Octonion<Scalar> evaluate(const CubicVector& v, const Octonion<Scalar>& a1, const Octonion<Scalar>& a2,
                          const Octonion<Scalar>& a3) {
  if (v.space != CubicSpace::Magmatic12) throw std::invalid_argument("evaluate expects a magmatic cubic vector");
  const std::array<const Octonion<Scalar>*, 3> a{&a1, &a2, &a3};
  Octonion<Scalar> r;
  for (int k = 0; k < 12; ++k) {
    const Rational& x = v.coords(k);
    if (x.is_zero()) continue;
    const auto& s = s3_elements()[static_cast<std::size_t>(k % 6)];
    const auto& p = *a[static_cast<std::size_t>(s(1) - 1)];
    const auto& q = *a[static_cast<std::size_t>(s(2) - 1)];
    const auto& w = *a[static_cast<std::size_t>(s(3) - 1)];
    r = r + Scalar(x) * (k < 6 ? oct_mul(oct_mul(p, q), w) : oct_mul(p, oct_mul(q, w)));
  }
  return r;
}

struct OctonionCounterexample {
  std::array<int, 3> basis_triple;  // indices of e_i, e_j, e_k
  Octonion<Rational> value;
};

struct IdentityCheck {
  bool holds = false;
  std::optional<OctonionCounterexample> counterexample;  // first failing triple in lexicographic order
};

/// Checks the identity on all 8^3 basis triples, which suffices by
/// multilinearity.
inline IdentityCheck identity_holds(const AssociatorIdentity& id) {
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int k = 0; k < 8; ++k) {
        const auto v = evaluate(id, Octonion<Rational>::basis(i), Octonion<Rational>::basis(j), Octonion<Rational>::basis(k));
        if (!v.is_zero()) return {false, OctonionCounterexample{{i, j, k}, v}};
      }
  return {true, std::nullopt};
}

/// Checks every relation of a cubic subspace on all basis triples.
inline IdentityCheck relations_hold(const Subspace& relations) {
  const Subspace m = convert(relations, CubicSpace::Magmatic12);
  for (const auto& v : m.vectors())
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        for (int k = 0; k < 8; ++k) {
          const auto x = evaluate(v, Octonion<Rational>::basis(i), Octonion<Rational>::basis(j), Octonion<Rational>::basis(k));
          if (!x.is_zero()) return {false, OctonionCounterexample{{i, j, k}, x}};
        }
  return {true, std::nullopt};
}

}  // namespace opk
