#include <random>

#include "doctest.h"
#include "opk/koszul_duality.hpp"
#include "opk/relation_parser.hpp"
#include "support/random.hpp"

using namespace opk;
using PP = ProjectiveParameter;

namespace {

QuadraticPresentation of(const std::string& family, std::optional<PP> p = std::nullopt) {
  return QuadraticPresentation::generated_by(family_relations(family, p));
}

// quotient of the associative operad by triv + sgn + the 2d line at (alpha:beta)
QuadraticPresentation o_family(const PP& p) {
  return QuadraticPresentation::generated_by(
      {family_relations("triv-assoc")[0], family_relations("sign-assoc")[0], family_relations("2d", p)[0]});
}

// <x, y> written out from the sign rule rather than through pairing_matrix()
Rational pair(const CubicVector& x, const CubicVector& y) {
  Rational s(0);
  for (int k = 0; k < 6; ++k) {
    const int sg = s3_elements()[static_cast<std::size_t>(k)].sign();
    s += Rational(sg) * x.coords(k) * y.coords(k) - Rational(sg) * x.coords(6 + k) * y.coords(6 + k);
  }
  return s;
}

Subspace polarized_span(const std::vector<std::string>& texts) {
  std::vector<CubicVector> v;
  for (const auto& t : texts) v.push_back(parse_relation_vector(t, CubicSpace::Polarized12));
  return orbit_span(v);
}

const std::vector<PP>& samples() {
  static const std::vector<PP> s{PP(1, 1), PP(1, -1), PP(0, 1), PP(1, 0), PP(2, 3)};
  return s;
}

}  // namespace

TEST_CASE("pairing matrix") {
  const QMatrix& m = pairing_matrix();
  CHECK(rank(m) == 12);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      const auto x = CubicVector::basis(CubicSpace::Magmatic12, i), y = CubicVector::basis(CubicSpace::Magmatic12, j);
      CHECK((x.coords.transpose() * m * y.coords)(0, 0) == pair(x, y));
    }
}

TEST_CASE("presentations validate their relations") {
  CHECK_THROWS_AS(QuadraticPresentation(Subspace::span(CubicSpace::Magmatic12, {left_comb(1, 2, 3)})), DualityError);
  CHECK_THROWS_AS(QuadraticPresentation(Subspace::full(CubicSpace::Associative6)), DualityError);
  CHECK_NOTHROW(QuadraticPresentation(Subspace::full(CubicSpace::Polarized12)));
  CHECK(of("assoc").relations().dim() == 6);
  // associative-6 generators are lifted on top of associativity
  CHECK(of("nil3").relations() == Subspace::full(CubicSpace::Magmatic12));
  CHECK(o_family(PP(1, 1)).relations().dim() == 10);
  // associativity mixes bracket counts 0 and 2; the (1:-1) line alone is homogeneous
  CHECK_FALSE(polarize(of("assoc")).weight_graded());
  CHECK(polarize(of("2d", PP(1, -1))).weight_graded());
  CHECK(polarize(o_family(PP(1, -1))).weight_graded());
  CHECK_FALSE(polarize(o_family(PP(2, 3))).weight_graded());
  CHECK_THROWS_AS(depolarize(of("assoc")), DualityError);
  CHECK_THROWS_AS(polarize(polarize(of("assoc"))), DualityError);
}

TEST_CASE("the associative operad is self-dual") {
  const auto ass = of("assoc");
  CHECK(koszul_dual(ass) == ass);
  CHECK(dual_of_dual_check(ass));
  for (const auto& x : ass.relations().vectors())
    for (const auto& y : ass.relations().vectors()) CHECK(pair(x, y).is_zero());
  CHECK(koszul_dual(polarize(ass)) == ass);
}

TEST_CASE("duality is an involution on random stable subspaces") {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const auto space = trial % 2 ? CubicSpace::Magmatic12 : CubicSpace::Polarized12;
    const QuadraticPresentation p(testsupport::random_stable_subspace(rng, space));
    const auto d = koszul_dual(p);
    CHECK(d.relations().dim() + p.relations().dim() == 12);
    CHECK(dual_of_dual_check(p));
    const auto rel = in_mode(p, BasisMode::Magmatic).relations();
    for (const auto& x : rel.vectors())
      for (const auto& y : d.relations().vectors()) CHECK(pair(x, y).is_zero());
    // trivial and sign exchange, the standard part complements
    const auto mp = isotypic_multiplicities(rel), md = isotypic_multiplicities(d.relations());
    CHECK(md.triv == 2 - mp.sgn);
    CHECK(md.sgn == 2 - mp.triv);
    CHECK(md.std == 4 - mp.std);
    // polarization round trip
    const auto pm = in_mode(p, BasisMode::Magmatic);
    CHECK(depolarize(polarize(pm)) == pm);
  }
  const QuadraticPresentation zero{Subspace(CubicSpace::Magmatic12)};
  CHECK(koszul_dual(zero).relations() == Subspace::full(CubicSpace::Magmatic12));
  CHECK(dual_of_dual_check(zero));
}

TEST_CASE("dual pairs of named operads") {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"prelie-right", "perm-right"}, {"prelie-left", "perm-left"}, {"lieadm", "biperm"}, {"tpa", "biantiperm"},
      {"assoc", "assoc"},
  };
  for (const auto& [a, b] : pairs) {
    CAPTURE(a);
    CHECK(koszul_dual(of(a)) == of(b));
    CHECK(koszul_dual(of(b)) == of(a));
    CHECK(dual_of_dual_check(of(a)));
  }
  // magmatic and nilpotent of index three
  const QuadraticPresentation magmatic{Subspace(CubicSpace::Magmatic12)};
  CHECK(koszul_dual(magmatic) == of("nil3"));
  CHECK(koszul_dual(of("nil3")) == magmatic);
  // pre-Lie (std + sgn inside the associators) maps to permutative
  CHECK(isotypic_multiplicities(orbit_span(family_relations("prelie-right"))) == MultiplicityVector{0, 1, 1});
  CHECK(isotypic_multiplicities(of("prelie-right").relations()) == MultiplicityVector{0, 1, 1});
  CHECK(isotypic_multiplicities(of("perm-right").relations()) == MultiplicityVector{1, 3, 2});
}

TEST_CASE("the parametric family and its dual") {
  for (const auto& p : samples()) {
    CAPTURE(p.str());
    const auto o = o_family(p);
    const auto d = koszul_dual(o);
    CHECK(d == of("param-associator", p));
    const PP lm(-p.beta(), p.alpha());
    CHECK(d == QuadraticPresentation::generated_by({lambda_mu_identity(lm).vector()}));
    CHECK(dual_of_dual_check(o));
    CHECK(koszul_dual(d) == o);
  }
  // the lambda-mu form is the same identity up to sign
  for (const auto& p : samples()) {
    const auto x = lambda_mu_identity(PP(-p.beta(), p.alpha())).vector();
    const auto y = family_identity("param-associator", p).vector();
    CHECK(Subspace::span(CubicSpace::Magmatic12, {x}) == Subspace::span(CubicSpace::Magmatic12, {y}));
  }
}

TEST_CASE("associative quotient presentations") {
  const auto pr = present_as_associative_quotient(koszul_dual(of("prelie-right")));
  REQUIRE(pr);
  CHECK(*pr == orbit_span({assoc_word(1, 2, 3) - assoc_word(1, 3, 2)}));
  const auto bp = present_as_associative_quotient(koszul_dual(of("lieadm")));
  REQUIRE(bp);
  CHECK(*bp == orbit_span({assoc_word(1, 2, 3) - assoc_word(1, 3, 2), assoc_word(1, 2, 3) - assoc_word(2, 1, 3)}));
  const auto a = present_as_associative_quotient(of("assoc"));
  REQUIRE(a);
  CHECK(a->dim() == 0);
  CHECK_FALSE(present_as_associative_quotient(of("prelie-right")));
  const auto o = present_as_associative_quotient(polarize(o_family(PP(2, 3))));
  REQUIRE(o);
  CHECK(isotypic_multiplicities(*o) == MultiplicityVector{1, 1, 1});
}

TEST_CASE("polarized presentations") {
  CHECK(polarize(of("assoc")).relations() ==
        polarized_span({"(a1.a2).a3 - a1.(a2.a3) + [[a1,a3],a2]", "[a1.a2,a3] - [a1,a3].a2 - a1.[a2,a3]"}));
  for (const auto& p : samples()) {
    CAPTURE(p.str());
    const Rational am = p.alpha() - p.beta(), ap = p.alpha() + p.beta();
    std::string last;
    if (!am.is_zero()) last += am.str() + "*([[a1,a2],a3] + [[a3,a2],a1])";
    if (!ap.is_zero()) last += (last.empty() ? "" : " + ") + ap.str() + "*(a1.[a3,a2] + a3.[a1,a2])";
    const auto displayed = polarized_span({
        "(a1.a2).a3 - a1.(a2.a3) + [[a1,a3],a2]",
        "[a1.a2,a3] - [a1,a3].a2 - a1.[a2,a3]",
        "(a1.a2).a3 + (a3.a1).a2 + (a2.a3).a1",
        "[a1,a2].a3 + [a3,a1].a2 + a1.[a2,a3]",
        last,
    });
    CHECK(polarize(o_family(p)).relations() == displayed);
  }
}

TEST_CASE("presentations serialize") {
  const auto j = to_json(polarize(of("assoc")));
  CHECK(j["basis_mode"] == "polarized");
  CHECK(j["dim"] == 6);
  CHECK(j["relations"].size() == 6);
  CHECK(j["relations"][0].size() == 12);
}
