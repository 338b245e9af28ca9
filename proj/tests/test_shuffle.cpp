#include <random>
#include <set>

#include "doctest.h"
#include "opk/cubic.hpp"
#include "opk/shuffle_tree.hpp"
#include "support/trees.hpp"

using namespace opk;

namespace {

// All increasing label sets for which graft(outer, slot, inner, labels) is a
// shuffle composition.
std::vector<std::vector<int>> valid_label_sets(int k, int slot, int l) {
  const int total = k + l - 1;
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << total); ++mask) {
    if (__builtin_popcount(mask) != l) continue;
    std::vector<int> labels, rest;
    for (int x = 1; x <= total; ++x) (mask >> (x - 1) & 1 ? labels : rest).push_back(x);
    // exactly slot-1 outer labels below the smallest inner label
    int below = 0;
    for (int x : rest) below += x < labels.front();
    if (below == slot - 1) out.push_back(labels);
  }
  return out;
}

template <class T>
const T& pick(std::mt19937& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

}  // namespace

TEST_CASE("monomial counts and validity") {
  for (const auto& sig : {Signature::magmatic(), Signature::polarized()}) {
    const std::vector<std::size_t> expected = {1, 2, 12, 120, 1680, 30240};
    for (int n = 1; n <= 6; ++n) {
      const auto ms = enumerate_monomials(sig, n);
      CHECK(ms.size() == expected[static_cast<std::size_t>(n - 1)]);
      CHECK(count_monomials(2, n) == expected[static_cast<std::size_t>(n - 1)]);
      if (n <= 4)
        for (const auto& m : ms) {
          CHECK(TreeMonomial::is_valid(m.code()));
          CHECK(parse_monomial(sig, to_text(sig, m)) == m);
        }
    }
  }
  CHECK(count_monomials(2, 7) == 665280);
  CHECK(count_monomials(3, 4) == 27 * 15);
  const auto pol = Signature::polarized();
  CHECK(enumerate_monomials(pol, 4, 0).size() == 15);
  CHECK(enumerate_monomials(pol, 4, 3).size() == 15);
  CHECK(enumerate_monomials(pol, 4, 1).size() == 45);
}

TEST_CASE("monomial text and validation errors") {
  const auto sig = Signature::polarized();
  CHECK(to_text(sig, parse_monomial(sig, " b( b(1 ,3), 2)")) == "b(b(1,3),2)");
  CHECK_THROWS_AS(parse_monomial(sig, "b(2,1)"), ShuffleError);
  CHECK_THROWS_AS(parse_monomial(sig, "b(1,1)"), ShuffleError);
  CHECK_THROWS_AS(parse_monomial(sig, "b(1,3)"), ShuffleError);
  CHECK_THROWS_AS(parse_monomial(sig, "x(1,2)"), ShuffleError);
  CHECK_THROWS_AS(parse_monomial(sig, "b(1,2"), ShuffleError);
  CHECK_THROWS_AS(parse_monomial(sig, "c(c(1,3),2) x"), ShuffleError);
  const auto e = parse_element(sig, "2*b(b(1,2),3) - 1/2 * c(1,b(2,3)) + b(b(1,2),3)");
  CHECK(e.size() == 2);
  CHECK(e.coefficient(parse_monomial(sig, "b(b(1,2),3)")) == Rational(3));
  CHECK(parse_element(sig, to_text(sig, e)) == e);
  CHECK_THROWS_AS(parse_element(sig, "b(1,2) + b(b(1,2),3)"), ShuffleError);
}

TEST_CASE("monomial order is a strict total order") {
  for (const auto& sig : {Signature::magmatic(), Signature::polarized(), Signature::polarized(false)}) {
    for (int n = 2; n <= 5; ++n) {
      const auto ms = enumerate_monomials(sig, n);
      for (std::size_t i = 1; i < ms.size(); ++i) CHECK(compare(sig, ms[i - 1], ms[i]) == std::strong_ordering::less);
    }
  }
  const auto sig = Signature::polarized();
  const auto m = [&](const char* t) { return parse_monomial(sig, t); };
  // longer root-to-leaf words are greater; the bracket outranks the product
  CHECK(compare(sig, m("b(b(1,2),3)"), m("b(1,b(2,3))")) == std::strong_ordering::greater);
  CHECK(compare(sig, m("b(b(1,2),3)"), m("b(b(1,3),2)")) == std::strong_ordering::greater);
  CHECK(compare(sig, m("b(c(1,2),3)"), m("c(b(1,2),3)")) == std::strong_ordering::greater);
  CHECK(compare(sig, m("c(c(1,2),3)"), m("b(1,b(2,3))")) == std::strong_ordering::greater);
  // the reversed order is the exact opposite
  const auto rev = sig.with_reversed(true);
  const auto ms = enumerate_monomials(sig, 4), rs = enumerate_monomials(rev, 4);
  CHECK(std::equal(ms.begin(), ms.end(), rs.rbegin(), rs.rend()));
  CHECK(!(rev == sig));
}

TEST_CASE("pure lex on words is not compatible with composition") {
  // a prefix-first word comparison breaks monotonicity; graded words do not
  const auto lex = Signature::polarized().with_word_order(WordOrder::Lex);
  int violations = 0;
  const auto outs = enumerate_monomials(lex, 3), ins = enumerate_monomials(lex, 2);
  for (const auto& a : outs)
    for (const auto& b : outs) {
      if (compare(lex, a, b) != std::strong_ordering::less) continue;
      for (const auto& x : ins)
        for (int slot = 1; slot <= 3; ++slot)
          for (const auto& labels : valid_label_sets(3, slot, 2))
            violations += compare(lex, graft(a, slot, x, labels), graft(b, slot, x, labels)) != std::strong_ordering::less;
    }
  CHECK(violations > 0);
}

TEST_CASE("monomial order is compatible with shuffle composition") {
  std::mt19937 rng(41);
  const auto reversed = Signature::polarized(false).with_reversed(true);
  for (const auto& sig : {Signature::magmatic(), Signature::polarized(), reversed, Signature::magmatic().with_reversed(true)}) {
    for (int trial = 0; trial < 300; ++trial) {
      const int k = std::uniform_int_distribution<int>(2, 4)(rng), l = std::uniform_int_distribution<int>(2, 3)(rng);
      const auto outs = enumerate_monomials(sig, k), ins = enumerate_monomials(sig, l);
      TreeMonomial a = pick(rng, outs), b = pick(rng, outs);
      if (a == b) continue;
      if (compare(sig, a, b) == std::strong_ordering::greater) std::swap(a, b);
      const TreeMonomial c = pick(rng, ins);
      // a < b in the outer position
      const int slot = std::uniform_int_distribution<int>(1, k)(rng);
      const auto labels = pick(rng, valid_label_sets(k, slot, l));
      CHECK(compare(sig, graft(a, slot, c, labels), graft(b, slot, c, labels)) == std::strong_ordering::less);
      // a < b in the inner position
      TreeMonomial x = pick(rng, ins);
      const int slot2 = std::uniform_int_distribution<int>(1, l)(rng);
      const auto labels2 = pick(rng, valid_label_sets(l, slot2, k));
      CHECK(compare(sig, graft(x, slot2, a, labels2), graft(x, slot2, b, labels2)) == std::strong_ordering::less);
    }
  }
}

TEST_CASE("graft rejects non-shuffle compositions") {
  const auto sig = Signature::magmatic();
  const auto mm = parse_monomial(sig, "m(1,2)");
  CHECK(to_text(sig, graft(mm, 1, mm, {1, 3})) == "m(m(1,3),2)");
  CHECK(to_text(sig, graft(mm, 2, mm, {2, 3})) == "m(1,m(2,3))");
  CHECK_THROWS_AS(graft(mm, 2, mm, {1, 3}), ShuffleError);
  CHECK_THROWS_AS(graft(mm, 1, mm, {2, 3}), ShuffleError);
  CHECK_THROWS_AS(graft(mm, 1, mm, {3, 1}), ShuffleError);
}

TEST_CASE("divisors agree with explicit compositions") {
  for (const auto& sig : {Signature::magmatic(), Signature::polarized()}) {
    for (const auto& d : enumerate_monomials(sig, 3)) {
      // arity-4 multiples of d, built by composing with one generator
      std::set<TreeMonomial> multiples;
      for (const auto& x : enumerate_monomials(sig, 2)) {
        for (int slot = 1; slot <= 3; ++slot)
          for (const auto& labels : valid_label_sets(3, slot, 2)) multiples.insert(graft(d, slot, x, labels));
        for (int slot = 1; slot <= 2; ++slot)
          for (const auto& labels : valid_label_sets(2, slot, 3)) multiples.insert(graft(x, slot, d, labels));
      }
      for (const auto& m : enumerate_monomials(sig, 4)) {
        const auto occ = find_divisors(m, d);
        CHECK(!occ.empty() == (multiples.count(m) == 1));
        for (const auto& e : occ) CHECK(substitute(m, e, d) == m);
      }
    }
    // rooted pattern enumeration finds the same occurrences as direct matching
    const auto divisors = enumerate_monomials(sig, 3);
    const auto quartic = enumerate_monomials(sig, 4);
    for (const auto& m : enumerate_monomials(sig, 5)) {
      const TreeLayout lay(m.code());
      std::map<TreeMonomial, std::vector<Embedding>> found;
      for (int v : lay.postorder)
        for (auto& [pat, e] : rooted_divisors(m, lay, v, 3)) found[pat].push_back(e);
      for (const auto* family : {&divisors, &quartic})
        for (const auto& d : *family) CHECK(find_divisors(m, d) == found[d]);
    }
  }
}

TEST_CASE("substitution replaces the divisor") {
  const auto sig = Signature::polarized();
  const auto m = parse_monomial(sig, "c(b(1,3),c(2,4))");
  const auto d = parse_monomial(sig, "c(b(1,3),2)");
  const auto occ = find_divisors(m, d);
  REQUIRE(occ.size() == 1);
  CHECK(to_text(sig, substitute(m, occ[0], parse_monomial(sig, "b(1,c(2,3))"))) == "b(1,c(c(2,4),3))");
  CHECK_THROWS_AS(substitute(m, occ[0], parse_monomial(sig, "b(1,2)")), ShuffleError);
}

TEST_CASE("common multiples cover both divisors") {
  const auto sig = Signature::magmatic();
  const auto d = parse_monomial(sig, "m(m(1,2),3)");
  const auto cms = common_multiples(sig, d, d, 6);
  CHECK(!cms.empty());
  for (const auto& cm : cms) {
    CHECK(cm.monomial.arity() == 4);
    CHECK(substitute(cm.monomial, cm.first, d) == cm.monomial);
    CHECK((cm.first.vertex_mask & cm.second.vertex_mask) != 0);
  }
  // m(m(m(1,2),3),4) contains two overlapping left combs
  CHECK(std::any_of(cms.begin(), cms.end(),
                    [&](const CommonMultiple& c) { return to_text(sig, c.monomial) == "m(m(m(1,2),3),4)"; }));
}

TEST_CASE("symmetric relations in shuffle form") {
  const auto mag = Signature::magmatic(), pol = Signature::polarized();
  // every cubic basis vector maps to a distinct monomial and back
  for (auto space : {CubicSpace::Magmatic12, CubicSpace::Polarized12}) {
    const auto& sig = space == CubicSpace::Magmatic12 ? mag : pol;
    std::set<TreeMonomial> seen;
    for (int k = 0; k < 12; ++k) {
      const auto v = CubicVector::basis(space, k);
      seen.insert(cubic_basis_monomial(sig, space, k).second);
      CHECK(tree_to_cubic(sig, space, cubic_to_tree(sig, v)) == v);
    }
    CHECK(seen.size() == 12);
  }
  CHECK(to_text(mag, cubic_to_tree(mag, left_comb(2, 1, 3))) == "m(o(1,2),3)");
  CHECK(to_text(pol, cubic_to_tree(pol, CubicVector::basis(CubicSpace::Polarized12, 9))) == "c(1,b(2,3))");

  const auto ass = symmetric_to_shuffle(mag, {associator(1, 2, 3)});
  CHECK(ass.size() == 6);
  CHECK(testsupport::elements_rank(ass) == 6);

  // the shuffle relations span a space of the dimension of the orbit span
  for (const auto& id : family_ids()) {
    if (family_space(id) != CubicSpace::Magmatic12) continue;
    const auto rels = family_is_parametric(id) ? family_relations(id, ProjectiveParameter(Rational(1), Rational(1)))
                                               : family_relations(id);
    const auto span = orbit_span(rels);
    CHECK(testsupport::elements_rank(symmetric_to_shuffle(mag, rels)) == span.dim());
    std::vector<CubicVector> pol_rels;
    for (const auto& r : rels) pol_rels.push_back(convert(r, CubicSpace::Polarized12));
    CHECK(testsupport::elements_rank(symmetric_to_shuffle(pol, pol_rels)) == span.dim());
  }
}
