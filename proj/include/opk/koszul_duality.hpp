#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "opk/cubic.hpp"
#include "opk/groebner.hpp"

namespace opk {

class DualityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Magmatic: one non-symmetric binary generator. Polarized: the symmetric
/// product x.y = xy + yx and the bracket [x,y] = xy - yx.
enum class BasisMode { Magmatic, Polarized };

/// Binary quadratic operad given by an S3-stable space of cubic relations.
class QuadraticPresentation {
 public:
  /// relations must live in Magmatic12 or Polarized12 and be S3-stable.
  explicit QuadraticPresentation(Subspace relations);
  /// S3 orbit span of the generators. Associative6 generators are read as
  /// relations of a quotient of the associative operad: the associator is
  /// added and each word a_i a_j a_k is lifted to (a_i a_j) a_k.
  static QuadraticPresentation generated_by(const std::vector<CubicVector>& generators);

  BasisMode mode() const { return relations_.space() == CubicSpace::Polarized12 ? BasisMode::Polarized : BasisMode::Magmatic; }
  const Subspace& relations() const { return relations_; }
  /// True when the relations are homogeneous for the number of brackets
  /// (always false in magmatic mode).
  bool weight_graded() const { return weight_graded_; }

  friend bool operator==(const QuadraticPresentation& a, const QuadraticPresentation& b) {
    return a.relations_ == b.relations_;
  }

 private:
  Subspace relations_;
  bool weight_graded_ = false;
};

/// Diagonal pairing on Magmatic12: (a_s1 a_s2) a_s3 pairs to sgn(s) with
/// itself, a_s1 (a_s2 a_s3) to -sgn(s).
const QMatrix& pairing_matrix();

/// Preimage of an associative-6 subspace under the projection to the
/// associative quotient.
Subspace associative_preimage(const Subspace& s);

/// Relations annihilating P's relations under the pairing; magmatic mode.
QuadraticPresentation koszul_dual(const QuadraticPresentation& p);
/// Image of the relations in the associative quotient when they contain
/// the associativity module.
std::optional<Subspace> present_as_associative_quotient(const QuadraticPresentation& p);

/// Change of generators; throw DualityError on the wrong input mode.
QuadraticPresentation polarize(const QuadraticPresentation& p);
QuadraticPresentation depolarize(const QuadraticPresentation& p);
/// Same operad in either mode.
QuadraticPresentation in_mode(const QuadraticPresentation& p, BasisMode mode);

bool dual_of_dual_check(const QuadraticPresentation& p);

/// lambda((123)+(213)) - (lambda+mu)((132)+(231)) + mu((312)+(321)), where
/// (ijk) is the associator (a_i, a_j, a_k).
AssociatorIdentity lambda_mu_identity(const ProjectiveParameter& lm);

/// Shuffle relations over a magmatic or polarized signature; the relations
/// are converted to the signature's basis first.
ShufflePresentation shuffle_presentation(const QuadraticPresentation& p, const Signature& sig);

nlohmann::json to_json(const QuadraticPresentation& p);

}  // namespace opk
