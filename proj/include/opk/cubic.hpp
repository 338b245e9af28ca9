#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "opk/s3.hpp"

namespace opk {

class CubicExprError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear combination of nonassociative expressions in a1, a2, a3 built
/// from the plain product xy, the symmetric product x.y and the bracket
/// [x,y]. Conversion to coordinates requires every term to be multilinear
/// in a1, a2, a3.
class CubicExpr {
 public:
  enum class Op { Mul, Dot, Bracket };

  CubicExpr() = default;
  static CubicExpr var(int i);
  static CubicExpr apply(Op op, const CubicExpr& x, const CubicExpr& y);
  static CubicExpr mul(const CubicExpr& x, const CubicExpr& y) { return apply(Op::Mul, x, y); }
  static CubicExpr dot(const CubicExpr& x, const CubicExpr& y) { return apply(Op::Dot, x, y); }
  static CubicExpr bracket(const CubicExpr& x, const CubicExpr& y) { return apply(Op::Bracket, x, y); }
  /// (x,y,z) = (xy)z - x(yz)
  static CubicExpr associator(const CubicExpr& x, const CubicExpr& y, const CubicExpr& z);

  friend CubicExpr operator+(const CubicExpr& a, const CubicExpr& b);
  friend CubicExpr operator-(const CubicExpr& a, const CubicExpr& b);
  friend CubicExpr operator*(const Rational& c, const CubicExpr& a);

  bool empty() const { return terms_.empty(); }
  bool uses_polarized_ops() const;

  /// Dot and bracket expand as xy + yx and xy - yx.
  CubicVector to_magmatic() const;
  /// The plain product expands as (x.y + [x,y]) / 2; symmetric and
  /// antisymmetric arguments are normalized with the smaller variable first.
  CubicVector to_polarized() const;
  /// Image in the associative quotient.
  CubicVector to_associative() const;
  /// Coordinates in the requested space.
  CubicVector to_space(CubicSpace s) const;

  std::string str() const;

 private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;
  std::vector<std::pair<Rational, NodePtr>> terms_;
};

/// 12x12 matrix whose column j holds the magmatic coordinates of polarized
/// basis element j, i.e. magmatic = P * polarized.
const QMatrix& polarization_matrix();
/// 6x12 projection L_s, R_s -> a_s1 a_s2 a_s3.
const QMatrix& associative_projection();

/// Convert between coordinate systems (Associative6 only as a target).
CubicVector convert(const CubicVector& v, CubicSpace target);
Subspace convert(const Subspace& s, CubicSpace target);

/// Human-readable basis element in the grammar of parse_relation.
/// Polarized index 4 * shape + 2 * (root is bracket) + (inner is bracket)
/// with shapes ((1,2),3), ((1,3),2), (1,(2,3)).
std::string basis_text(CubicSpace s, int k);
std::string to_text(const CubicVector& v);

}  // namespace opk
