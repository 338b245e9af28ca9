#include <algorithm>
#include <random>

#include "doctest.h"
#include "opk/cubic.hpp"
#include "opk/groebner.hpp"
#include "opk/relation_parser.hpp"
#include "support/consequences.hpp"
#include "support/random.hpp"

using namespace opk;

namespace {

ShufflePresentation magmatic_presentation(const std::vector<CubicVector>& rels) {
  const auto sig = Signature::magmatic();
  return {sig, symmetric_to_shuffle(sig, rels)};
}

ShufflePresentation polarized_presentation(const std::vector<CubicVector>& rels, bool bracket_greater = true) {
  const auto sig = Signature::polarized(bracket_greater);
  std::vector<CubicVector> pol;
  for (const auto& r : rels) pol.push_back(convert(r, CubicSpace::Polarized12));
  return {sig, symmetric_to_shuffle(sig, pol)};
}

// Associativity together with the left-comb lift of associative-6 relations.
std::vector<CubicVector> associative_quotient(const std::vector<CubicVector>& rels) {
  std::vector<CubicVector> out{associator(1, 2, 3)};
  for (const auto& r : rels) {
    auto v = CubicVector::zero(CubicSpace::Magmatic12);
    v.coords.head(6) = r.coords;
    out.push_back(v);
  }
  return out;
}

std::vector<CubicVector> family(const std::string& id, std::optional<ProjectiveParameter> p = std::nullopt) {
  return family_relations(id, p);
}

TreeElement random_element(std::mt19937& rng, const Signature& sig, int n, int terms) {
  const auto ms = enumerate_monomials(sig, n);
  std::uniform_int_distribution<std::size_t> pick(0, ms.size() - 1);
  TreeElement e;
  for (int i = 0; i < terms; ++i) e.add(ms[pick(rng)], testsupport::random_rational(rng));
  return e;
}

}  // namespace

TEST_CASE("free operad and nilpotent quotient") {
  const auto [g0, r0] = complete(magmatic_presentation({}), {6});
  CHECK(g0.rules().empty());
  CHECK(r0.dims() == std::vector<std::uint64_t>{1, 2, 12, 120, 1680, 30240});
  std::vector<CubicVector> all;
  for (int k = 0; k < 12; ++k) all.push_back(CubicVector::basis(CubicSpace::Magmatic12, k));
  const auto [g1, r1] = complete(magmatic_presentation(all), {6});
  CHECK(r1.dims() == std::vector<std::uint64_t>{1, 2, 0, 0, 0, 0});
  CHECK(g1.rules().size() == 12);
}

TEST_CASE("associative operad has a quadratic basis") {
  const auto mag = magmatic_presentation(family("assoc"));
  for (const auto& p : {mag, polarized_presentation(family("assoc"))}) {
    const auto [g, report] = complete(p, {6});
    CHECK(report.dims() == std::vector<std::uint64_t>{1, 2, 6, 24, 120, 720});
    CHECK(g.rules_of_arity(3).size() == 6);
    CHECK(component_dims(g, 6) == report.dims());
  }
  const auto [gm, rm] = complete(mag, {5});
  CHECK(gm.rules_of_arity(4).empty());
  CHECK(quadratic_gb_certificate(mag).holds);
  // normal forms of arity three are six monomials
  const auto p = magmatic_presentation(family("assoc"));
  const auto [g, report] = complete(p, {3});
  const auto sig = p.signature;
  int normal = 0;
  for (const auto& m : enumerate_monomials(sig, 3)) normal += is_normal(m, g);
  CHECK(normal == 6);
  CHECK_THROWS_AS(component_dims(g, 4), std::invalid_argument);
}

TEST_CASE("completion agrees with brute-force consequence spans") {
  std::vector<std::pair<std::string, std::vector<CubicVector>>> cases = {
      {"assoc", family("assoc")},
      {"tpa", family("tpa")},
      {"lieadm", family("lieadm")},
      {"flexible", family("flexible")},
      {"prelie-right", family("prelie-right")},
      {"alternative", family("alternative")},
      {"param 1:1", family("param-associator", ProjectiveParameter(1, 1))},
      {"param -1:1", family("param-associator", ProjectiveParameter(-1, 1))},
      {"param 2:3", family("param-associator", ProjectiveParameter(2, 3))},
      {"perm-right", associative_quotient(family("perm-right"))},
      {"biperm", associative_quotient(family("biperm"))},
      {"cyclic", associative_quotient(family("cyclic"))},
      {"2d 1:2", associative_quotient(family("2d", ProjectiveParameter(1, 2)))},
  };
  for (const auto& [name, rels] : cases) {
    CAPTURE(name);
    for (const auto& p : {magmatic_presentation(rels), polarized_presentation(rels)}) {
      const auto [g, report] = complete(p, {4});
      CHECK(report.dims() == testsupport::brute_force_dims(p, 4));
      CHECK(component_dims(g, 4) == report.dims());
    }
  }
}

TEST_CASE("normal form is idempotent and linear") {
  std::mt19937 rng(53);
  const auto p = polarized_presentation(family("param-associator", ProjectiveParameter(2, 3)));
  const auto [g, report] = complete(p, {5});
  for (int trial = 0; trial < 20; ++trial) {
    const int n = trial % 2 ? 4 : 5;
    const auto e = random_element(rng, p.signature, n, 6), f = random_element(rng, p.signature, n, 6);
    const Rational a = testsupport::random_rational(rng), b = testsupport::random_rational(rng);
    const auto ne = normal_form(e, g), nf = normal_form(f, g);
    CHECK(normal_form(ne, g) == ne);
    CHECK(normal_form(a * e + b * f, g) == a * ne + b * nf);
    for (const auto& [m, c] : ne.terms()) CHECK(is_normal(m, g));
  }
  // relations and their consequences vanish
  for (const auto& r : p.relations) CHECK(normal_form(r, g).is_zero());
  for (const auto& rule : g.rules()) {
    CHECK(normal_form(rule.relation(), g).is_zero());
    for (const auto& [m, c] : rule.tail.terms()) CHECK(compare(p.signature, m, rule.lead) == std::strong_ordering::less);
  }
}

TEST_CASE("completion does not depend on relation order") {
  std::mt19937 rng(59);
  auto p = magmatic_presentation(family("flexible"));
  const auto [g, report] = complete(p, {5});
  const auto reference = to_json(g, report).dump();
  for (int trial = 0; trial < 3; ++trial) {
    std::shuffle(p.relations.begin(), p.relations.end(), rng);
    for (auto& r : p.relations) r = Rational(trial + 2) * r;
    const auto [g2, report2] = complete(p, {5});
    CHECK(to_json(g2, report2).dump() == reference);
  }
}

TEST_CASE("rewriting rules of the (1,2,0) quotient") {
  // associative quotient by the trivial and both standard components
  const auto rels = associative_quotient(
      {family("triv-assoc")[0], family("2d-1")[0], family("2d-2")[0]});
  const auto p = polarized_presentation(rels);
  const auto cert = quadratic_gb_certificate(p);
  CHECK(cert.holds);
  const auto [g, report] = complete(p, {6});
  CHECK(report.dims() == std::vector<std::uint64_t>{1, 2, 1, 0, 0, 0});
  const auto sig = p.signature;
  const auto target = parse_monomial(sig, "c(1,b(2,3))");
  for (const auto& m : enumerate_monomials(sig, 3)) {
    const auto nf = normal_form(TreeElement(m), g);
    CHECK(nf.size() <= 1);
    if (!nf.is_zero()) CHECK(nf.terms().begin()->first == target);
  }
}

TEST_CASE("the choice of order decides whether a quadratic basis exists") {
  // associative quotient by triv, sgn and the (1:-1) standard line: dims 1,2,2,0
  const auto rels = associative_quotient(
      {family("triv-assoc")[0], family("sign-assoc")[0], family("2d", ProjectiveParameter(1, -1))[0]});
  std::vector<CubicVector> pol;
  for (const auto& r : rels) pol.push_back(convert(r, CubicSpace::Polarized12));
  const auto forward = Signature::polarized();
  const auto reversed = Signature::polarized(false).with_reversed(true);
  const ShufflePresentation pf{forward, symmetric_to_shuffle(forward, pol)};
  const ShufflePresentation pr{reversed, symmetric_to_shuffle(reversed, pol)};
  CHECK_FALSE(quadratic_gb_certificate(pf).holds);
  CHECK(quadratic_gb_certificate(pr).holds);
  for (const auto& p : {pf, pr}) {
    const auto [g, report] = complete(p, {5});
    CHECK(report.dims() == std::vector<std::uint64_t>{1, 2, 2, 0, 0});
  }
  const auto [g, report] = complete(pr, {4});
  CHECK(g.rules_of_arity(4).empty());
  // leads are exactly the left-hand sides of the listed rules below
  std::vector<TreeMonomial> leads;
  for (const auto& r : g.rules()) leads.push_back(r.lead);
  for (const char* t : {"c(c(1,2),3)", "b(b(1,2),3)", "c(c(1,3),2)", "b(b(1,3),2)", "c(1,c(2,3))", "b(1,b(2,3))",
                        "b(c(1,2),3)", "b(c(1,3),2)", "b(1,c(2,3))", "c(1,b(2,3))"})
    CHECK(std::find(leads.begin(), leads.end(), parse_monomial(reversed, t)) != leads.end());
  CHECK(leads.size() == 10);
  std::vector<TreeMonomial> normal;
  for (const auto& m : enumerate_monomials(reversed, 3))
    if (is_normal(m, g)) normal.push_back(m);
  std::sort(normal.begin(), normal.end());
  std::vector<TreeMonomial> expected{parse_monomial(reversed, "c(b(1,3),2)"), parse_monomial(reversed, "c(b(1,2),3)")};
  std::sort(expected.begin(), expected.end());
  CHECK(normal == expected);
  CHECK(to_json(reversed)["reversed"] == true);

  // the same operad given by an explicit list of shuffle rewriting rules
  const std::vector<std::string> listed = {
      "(a1.a2).a3", "[[a1,a2],a3]", "(a1.a3).a2", "[[a1,a3],a2]", "a1.(a2.a3)", "[a1,[a2,a3]]",
      "[a1.a2,a3] - [a1,a3].a2 - a1.[a2,a3]",
      "[a1.a3,a2] - [a1,a2].a3 + a1.[a2,a3]",
      "[a1,a2.a3] - [a1,a2].a3 - [a1,a3].a2",
      "a1.[a2,a3] - [a1,a3].a2 + [a1,a2].a3",
  };
  ShufflePresentation rules{reversed, {}};
  for (const auto& t : listed) rules.relations.push_back(cubic_to_tree(reversed, parse_relation_vector(t, CubicSpace::Polarized12)));
  auto both = rules.relations;
  both.insert(both.end(), pr.relations.begin(), pr.relations.end());
  CHECK(testsupport::elements_rank(rules.relations) == 10);
  CHECK(testsupport::elements_rank(both) == 10);
  CHECK(quadratic_gb_certificate(rules).holds);
  const auto [gl, rl] = complete(rules, {6});
  CHECK(rl.dims() == std::vector<std::uint64_t>{1, 2, 2, 0, 0, 0});
  CHECK(gl.rules_of_arity(4).empty());
}

TEST_CASE("critical pairs and the quadratic certificate") {
  const auto sig = Signature::magmatic();
  GroebnerBasis empty(sig);
  CHECK(critical_pairs(empty, 4).empty());
  // the magmatic nil-three quotient: every S-element vanishes
  const auto [g, report] = complete(magmatic_presentation(family("magmatic-nil3")), {3});
  for (const auto& s : critical_pairs(g, 4)) CHECK(normal_form(s, g).is_zero());
  CHECK_THROWS_AS(quadratic_gb_certificate({sig, {TreeElement(enumerate_monomials(sig, 4).front())}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(complete({sig, {TreeElement(enumerate_monomials(sig, 2).front())}}), std::invalid_argument);
}

TEST_CASE("budget guard") {
  CompletionOptions opt;
  opt.max_arity = 5;
  opt.monomial_budget = 1000;
  try {
    complete(magmatic_presentation(family("assoc")), opt);
    FAIL("expected the budget to be exceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.arity() == 5);
    CHECK(std::string(e.what()).find("1680") != std::string::npos);
  }
}

TEST_CASE("report serializes rules and dimensions") {
  const auto p = polarized_presentation(family("assoc"));
  const auto [g, report] = complete(p, {4});
  const auto j = to_json(g, report);
  CHECK(j["completed_through"] == 4);
  CHECK(j["rules"].size() == g.rules().size());
  CHECK(g.rules_of_arity(3).size() == 6);
  CHECK(j["dims"] == nlohmann::json({1, 2, 6, 24}));
  CHECK(j["levels"][3]["dims_by_weight"].size() >= 1);
  CHECK(j["signature"]["precedence"] == nlohmann::json({"c", "b"}));
  const auto lead = parse_monomial(p.signature, j["rules"][0]["lead"].get<std::string>());
  CHECK(g.rule_with_lead(lead) == 0);
}
