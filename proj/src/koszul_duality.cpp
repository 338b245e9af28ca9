#include "opk/koszul_duality.hpp"

namespace opk {

namespace {

int bracket_count(int polarized_index) { return ((polarized_index >> 1) & 1) + (polarized_index & 1); }

bool homogeneous_in_brackets(const Subspace& s) {
  for (const auto& v : s.vectors())
    for (int w = 0; w <= 2; ++w) {
      auto part = CubicVector::zero(CubicSpace::Polarized12);
      for (int k = 0; k < 12; ++k)
        if (bracket_count(k) == w) part.coords(k) = v.coords(k);
      if (!s.contains(part)) return false;
    }
  return true;
}

const Subspace& associativity_module() {
  static const Subspace a = orbit_span(associator(1, 2, 3));
  return a;
}

}  // namespace

QuadraticPresentation::QuadraticPresentation(Subspace relations) : relations_(std::move(relations)) {
  if (relations_.space() == CubicSpace::Associative6)
    throw DualityError("a presentation needs relations in a 12-dimensional cubic space");
  if (!is_s3_stable(relations_)) throw DualityError("relation space is not S3-stable");
  weight_graded_ = relations_.space() == CubicSpace::Polarized12 && homogeneous_in_brackets(relations_);
}

QuadraticPresentation QuadraticPresentation::generated_by(const std::vector<CubicVector>& generators) {
  if (generators.empty()) return QuadraticPresentation(Subspace(CubicSpace::Magmatic12));
  const CubicSpace space = generators.front().space;
  for (const auto& g : generators)
    if (g.space != space) throw DualityError("generators live in different spaces");
  if (space == CubicSpace::Associative6) return QuadraticPresentation(associative_preimage(orbit_span(generators)));
  return QuadraticPresentation(orbit_span(generators));
}

const QMatrix& pairing_matrix() {
  static const QMatrix m = [] {
    QMatrix p = QMatrix::Constant(12, 12, Rational(0));
    for (int k = 0; k < 6; ++k) {
      const int sg = s3_elements()[static_cast<std::size_t>(k)].sign();
      p(k, k) = Rational(sg);
      p(6 + k, 6 + k) = Rational(-sg);
    }
    return p;
  }();
  return m;
}

Subspace associative_preimage(const Subspace& s) {
  if (s.space() != CubicSpace::Associative6) throw DualityError("associative_preimage expects an associative-6 subspace");
  std::vector<CubicVector> lifts;
  for (const auto& v : s.vectors()) {
    auto l = CubicVector::zero(CubicSpace::Magmatic12);
    l.coords.head(6) = v.coords;
    lifts.push_back(l);
  }
  return associativity_module() + Subspace::span(CubicSpace::Magmatic12, lifts);
}

QuadraticPresentation koszul_dual(const QuadraticPresentation& p) {
  const Subspace r = convert(p.relations(), CubicSpace::Magmatic12);
  if (r.dim() == 0) return QuadraticPresentation(Subspace::full(CubicSpace::Magmatic12));
  const QMatrix form = r.basis() * pairing_matrix();
  return QuadraticPresentation(Subspace(CubicSpace::Magmatic12, nullspace(form)));
}

std::optional<Subspace> present_as_associative_quotient(const QuadraticPresentation& p) {
  const Subspace r = convert(p.relations(), CubicSpace::Magmatic12);
  if (!submodule_contains(r, associativity_module())) return std::nullopt;
  return convert(r, CubicSpace::Associative6);
}

QuadraticPresentation polarize(const QuadraticPresentation& p) {
  if (p.mode() != BasisMode::Magmatic) throw DualityError("polarize expects a magmatic presentation");
  return QuadraticPresentation(convert(p.relations(), CubicSpace::Polarized12));
}

QuadraticPresentation depolarize(const QuadraticPresentation& p) {
  if (p.mode() != BasisMode::Polarized) throw DualityError("depolarize expects a polarized presentation");
  return QuadraticPresentation(convert(p.relations(), CubicSpace::Magmatic12));
}

QuadraticPresentation in_mode(const QuadraticPresentation& p, BasisMode mode) {
  if (p.mode() == mode) return p;
  return mode == BasisMode::Polarized ? polarize(p) : depolarize(p);
}

bool dual_of_dual_check(const QuadraticPresentation& p) {
  return koszul_dual(koszul_dual(p)) == in_mode(p, BasisMode::Magmatic);
}

AssociatorIdentity lambda_mu_identity(const ProjectiveParameter& lm) {
  const Rational& l = lm.alpha();
  const Rational& m = lm.beta();
  // enumeration id, (12), (13), (23), (123), (132)
  return AssociatorIdentity{{l, l, m, -(l + m), -(l + m), m}};
}

ShufflePresentation shuffle_presentation(const QuadraticPresentation& p, const Signature& sig) {
  bool magmatic = false;
  for (int g = 0; g < sig.size(); ++g) magmatic |= sig.generator(g).skew == Skew::None;
  const CubicSpace space = magmatic ? CubicSpace::Magmatic12 : CubicSpace::Polarized12;
  return {sig, symmetric_to_shuffle(sig, convert(p.relations(), space).vectors())};
}

nlohmann::json to_json(const QuadraticPresentation& p) {
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& v : p.relations().vectors()) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < v.coords.size(); ++k) row.push_back(v.coords(k).str());
    rels.push_back(row);
  }
  return {{"basis_mode", p.mode() == BasisMode::Polarized ? "polarized" : "magmatic"},
          {"dim", p.relations().dim()},
          {"weight_graded", p.weight_graded()},
          {"relations", rels}};
}

}  // namespace opk
