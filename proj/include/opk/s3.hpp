#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "opk/linalg.hpp"

namespace opk {

/// Permutation of {1,2,3} stored as the image sequence (p(1), p(2), p(3)).
struct Permutation {
  std::array<int, 3> img{1, 2, 3};

  int operator()(int i) const { return img[static_cast<std::size_t>(i - 1)]; }
  int sign() const;
  Permutation inverse() const;
  std::string str() const;  // cycle notation, "id" for the identity
  friend bool operator==(const Permutation&, const Permutation&) = default;
};

/// (p * q)(i) = p(q(i)).
Permutation operator*(const Permutation& p, const Permutation& q);

/// The fixed enumeration id, (12), (13), (23), (123), (132) used for every
/// basis in the library. (123) sends 1 to 2, 2 to 3 and 3 to 1.
const std::array<Permutation, 6>& s3_elements();
/// Position of p in s3_elements().
int s3_index(const Permutation& p);

enum class CubicSpace { Magmatic12, Associative6, Polarized12 };

inline Eigen::Index cubic_dim(CubicSpace s) { return s == CubicSpace::Associative6 ? 6 : 12; }
std::string to_string(CubicSpace s);

/// Element of an arity-three component.
///
/// Magmatic12: coordinate k < 6 is (a_s1 a_s2) a_s3 and coordinate 6 + k is
/// a_s1 (a_s2 a_s3), where s = s3_elements()[k]. Associative6: coordinate k
/// is a_s1 a_s2 a_s3. Polarized12: see polarized_basis_text() in cubic.hpp.
struct CubicVector {
  CubicSpace space = CubicSpace::Associative6;
  QVector coords;

  CubicVector() = default;
  CubicVector(CubicSpace s, QVector c);
  static CubicVector zero(CubicSpace s);
  /// Left comb (k < 6) or right comb (k >= 6) basis vector.
  static CubicVector basis(CubicSpace s, int k);

  bool is_zero() const;
  friend bool operator==(const CubicVector& a, const CubicVector& b) {
    return a.space == b.space && a.coords == b.coords;
  }
};

CubicVector operator+(const CubicVector& a, const CubicVector& b);
CubicVector operator-(const CubicVector& a, const CubicVector& b);
CubicVector operator*(const Rational& c, const CubicVector& v);

/// Monomials by variable indices, e.g. left_comb(2,1,3) = (a2 a1) a3.
CubicVector left_comb(int i, int j, int k);
CubicVector right_comb(int i, int j, int k);
CubicVector assoc_word(int i, int j, int k);
/// (a_i, a_j, a_k) = (a_i a_j) a_k - a_i (a_j a_k)
CubicVector associator(int i, int j, int k);

/// Subspace given by a reduced echelon basis; the canonical form makes
/// equality a matrix comparison.
class Subspace {
 public:
  explicit Subspace(CubicSpace s);
  Subspace(CubicSpace s, const QMatrix& rows);
  static Subspace span(CubicSpace s, const std::vector<CubicVector>& vectors);
  static Subspace full(CubicSpace s);

  CubicSpace space() const { return space_; }
  Eigen::Index dim() const { return basis_.rows(); }
  const QMatrix& basis() const { return basis_; }
  std::vector<CubicVector> vectors() const;
  bool contains(const CubicVector& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.space_ == b.space_ && a.basis_.rows() == b.basis_.rows() && a.basis_ == b.basis_;
  }

 private:
  CubicSpace space_;
  QMatrix basis_;  // rows
};

Subspace operator+(const Subspace& a, const Subspace& b);

/// Point of P^1, normalized so the first nonzero entry is 1.
class ProjectiveParameter {
 public:
  ProjectiveParameter(const Rational& alpha, const Rational& beta);
  const Rational& alpha() const { return alpha_; }
  const Rational& beta() const { return beta_; }
  std::string str() const;  // "alpha:beta"
  friend bool operator==(const ProjectiveParameter&, const ProjectiveParameter&) = default;

 private:
  Rational alpha_, beta_;
};

struct MultiplicityVector {
  int triv = 0, std = 0, sgn = 0;
  std::string str() const;  // "(t,s,g)"
  friend bool operator==(const MultiplicityVector&, const MultiplicityVector&) = default;
};

/// Matrix of the action v -> sigma . v on coordinates, where sigma relabels
/// a_i as a_sigma(i).
QMatrix action_matrix(CubicSpace s, const Permutation& sigma);
CubicVector s3_act(const Permutation& sigma, const CubicVector& v);

class S3Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Subspace orbit_span(const std::vector<CubicVector>& generators);
Subspace orbit_span(const CubicVector& generator);
bool is_s3_stable(const Subspace& s);
MultiplicityVector isotypic_multiplicities(const Subspace& s);
bool submodule_contains(const Subspace& a, const Subspace& b);

/// Coefficients x_sigma (fixed enumeration) of the identity
/// sum x_sigma (a_s1, a_s2, a_s3) = 0.
struct AssociatorIdentity {
  std::array<Rational, 6> x;
  CubicVector vector() const;  // in Magmatic12
};

/// Named relation families. Identity families live in Magmatic12, the
/// others in Associative6; see family_ids().
std::vector<CubicVector> family_relations(std::string_view family,
                                          const std::optional<ProjectiveParameter>& param = std::nullopt);
bool family_is_parametric(std::string_view family);
CubicSpace family_space(std::string_view family);
std::vector<std::string> family_ids();
/// The identity behind an associator-identity family (tpa, lieadm,
/// flexible, param-associator, prelie-right, prelie-left, assoc).
AssociatorIdentity family_identity(std::string_view family,
                                   const std::optional<ProjectiveParameter>& param = std::nullopt);

}  // namespace opk
