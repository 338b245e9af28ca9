// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "opk/koszul_duality.hpp"
#include "opk/octonion.hpp"
#include "opk/relation_parser.hpp"
#include "opk/scenario.hpp"
#include "opk/series_presets.hpp"
#include "support/consequences.hpp"
#include "support/random.hpp"

using namespace opk;
using PP = ProjectiveParameter;

namespace {

struct Result {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

const std::vector<PP>& samples() {
  static const std::vector<PP> s{PP(1, 1), PP(1, -1), PP(0, 1), PP(1, 0), PP(2, 3)};
  return s;
}

QuadraticPresentation of(const std::string& family, std::optional<PP> p = std::nullopt) {
  return QuadraticPresentation::generated_by(family_relations(family, p));
}

QuadraticPresentation o_family(const PP& p) {
  return QuadraticPresentation::generated_by(
      {family_relations("triv-assoc")[0], family_relations("sign-assoc")[0], family_relations("2d", p)[0]});
}

std::vector<std::uint64_t> gb_dims(const QuadraticPresentation& p, const Signature& sig, int arity) {
  return complete(shuffle_presentation(p, sig), {arity}).second.dims();
}

std::string str(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

// -- criteria ----------------------------------------------------------------

Result inverse_coefficients(double& seconds) {
  Result r;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::tuple<std::string, int, std::string>> golden = {
      {"(0,0,1)", 6, "271/360"},
      {"(0,1,0)generic", 6, "461/720"},
      {"(0,1,0)ab=0", 7, "-473/720"},
      {"(0,1,0)a=b", 7, "-6899/2520"},
      {"(0,1,1)generic", 11, "-802543633/39916800"},
      {"(1,0,1)", 6, "14/9"},
      {"(1,1,0)generic", 10, "715/16"},
      {"(1,1,0)a=-b", 12, "488735/3072"},
  };
  for (const auto& [preset, n, value] : golden) {
    const Rational got = reverse(preset_series(preset, n))[n];
    r.require(got == *Rational::parse(value), preset + " t^" + std::to_string(n) + " gave " + got.str());
  }
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.require(seconds < 5, "over 5 s");
  if (r.ok) r.detail = "8 coefficients exact";
  return r;
}

Result weighted_coefficients(double&) {
  Result r;
  auto t0 = std::chrono::steady_clock::now();
  const Rational a = reverse(weighted_preset_series("(0,1,0)a=-b", 15))[15].coeff(7);
  const double s1 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.require(a == *Rational::parse("-53844181/26127360"),
            "(0,1,0) a=-b u^7 at t^15 is " + a.str() + ", expected -53844181/26127360");
  r.require(s1 < 60, "(0,1,0) a=-b over 60 s");
  t0 = std::chrono::steady_clock::now();
  const Rational b = reverse(weighted_preset_series("(0,2,0)", 20))[20].coeff(2);
  const double s2 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.require(b == *Rational::parse("14119421138089/17322439680000"), "(0,2,0) u^2 at t^20 is " + b.str());
  r.require(s2 < 300, "(0,2,0) over 5 min");
  if (r.ok) r.detail = "both weighted coefficients exact";
  return r;
}

Result dimension_suite(double& seconds) {
  Result r;
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::uint64_t> param{1}, prelie, ass, free_counts;
  // 2 * 5 * ... * (3n - 4)
  for (std::uint64_t n = 2; n <= 5; ++n) {
    std::uint64_t p = 1;
    for (std::uint64_t k = 2; k <= n; ++k) p *= 3 * k - 4;
    param.push_back(p);
  }
  for (std::uint64_t n = 1; n <= 5; ++n) {
    std::uint64_t pw = 1, f = 1;
    for (std::uint64_t k = 1; k < n; ++k) pw *= n;
    for (std::uint64_t k = 2; k <= n; ++k) f *= k;
    prelie.push_back(pw);
    ass.push_back(f);
    std::uint64_t c = 1;  // (2n-2)!/(n-1)!
    for (std::uint64_t k = n; k <= 2 * n - 2; ++k) c *= k;
    free_counts.push_back(c);
  }
  const Registry& reg = Registry::shipped();
  for (const char* id : {"paramfamily:1:1", "paramfamily:1:-1", "paramfamily:0:1", "paramfamily:1:0", "paramfamily:2:3"}) {
    const auto& s = reg.find(id);
    const auto d = gb_dims(s.recipe.build(), s.order.signature(), 5);
    r.require(d == param, std::string(id) + " dims " + str(d));
  }
  const auto d_pre = gb_dims(of("prelie-right"), Signature::magmatic(), 5);
  r.require(d_pre == prelie, "pre-Lie dims " + str(d_pre));
  const auto d_ass = gb_dims(of("assoc"), Signature::magmatic(), 5);
  r.require(d_ass == ass, "Ass dims " + str(d_ass));
  const auto d_free = gb_dims(QuadraticPresentation(Subspace(CubicSpace::Magmatic12)), Signature::magmatic(), 5);
  r.require(d_free == free_counts, "magmatic counts " + str(d_free));
  const auto& biantiperm = reg.find("m-1-2-0");
  const auto d120 = gb_dims(biantiperm.recipe.build(), biantiperm.order.signature(), 4);
  r.require(d120.size() == 4 && d120[2] == 1 && d120[3] == 0, "(1,2,0) dims " + str(d120));
  const auto d_nil = gb_dims(reg.find("m-1-2-1").recipe.build(), Signature::polarized(), 4);
  r.require(d_nil == std::vector<std::uint64_t>{1, 2, 0, 0}, "nilpotent dims " + str(d_nil));
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.require(seconds < 180, "over 3 min");
  if (r.ok) r.detail = "parametric 1,2,10,80,880 at 5 parameters; pre-Lie, Ass, magmatic, (1,2,0), nilpotent";
  return r;
}

Result finite_basis(double&) {
  Result r;
  const Signature sig = Signature::polarized();
  const auto [g, rep] = complete(shuffle_presentation(of("param-associator", PP(1, 1)), sig), {6});
  const std::size_t n3 = g.rules_of_arity(3).size(), n4 = g.rules_of_arity(4).size();
  r.require(n3 == 2, "quadratic rules " + std::to_string(n3));
  r.require(n4 == 6, "cubic rules " + std::to_string(n4));
  r.require(g.rules_of_arity(5).empty() && g.rules_of_arity(6).empty(), "rules added at arity 5 or 6");
  r.require(rep.completed_through == 6, "completion stopped early");
  // bracket at the root over a left comb of two products
  for (const auto& rule : g.rules_of_arity(4)) {
    const std::string t = to_text(sig, rule.lead);
    r.require(t.rfind("b(c(c(", 0) == 0, "cubic lead " + t);
  }
  if (r.ok) r.detail = "2 quadratic + 6 cubic rules, none at arities 5-6";
  return r;
}

Result weighted_dims(double&) {
  Result r;
  const auto& s = Registry::shipped().find("m-0-1-0:a=-b");
  const auto [g, rep] = complete(shuffle_presentation(s.recipe.build(), s.order.signature()), {6});
  const auto by_weight = component_dims_by_weight(g, 6);
  for (int n = 1; n <= 6; ++n) {
    const auto& m = by_weight[static_cast<std::size_t>(n - 1)];
    for (int k = 0; 2 * k <= n + 1; ++k) {
      std::uint64_t c = 1;  // C(n, 2k)
      for (int i = 0; i < 2 * k; ++i) c = c * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
      if (2 * k > n) c = 0;
      const auto it = m.find(k);
      const std::uint64_t got = it == m.end() ? 0 : it->second;
      r.require(got == c, "n=" + std::to_string(n) + " weight " + std::to_string(k) + " gave " + std::to_string(got));
    }
    for (const auto& [w, d] : m) r.require(2 * w <= n || d == 0, "unexpected weight " + std::to_string(w));
  }
  if (r.ok) r.detail = "weight-k dimension C(n,2k) for n <= 6";
  return r;
}

Result duality_suite(double& seconds) {
  Result r;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const QuadraticPresentation p(testsupport::random_stable_subspace(rng, trial % 2 ? CubicSpace::Magmatic12 : CubicSpace::Polarized12));
    r.require(koszul_dual(koszul_dual(p)) == in_mode(p, BasisMode::Magmatic), "involution fails on trial " + std::to_string(trial));
  }
  r.require(koszul_dual(of("assoc")) == of("assoc"), "Ass not self-dual");
  r.require(koszul_dual(of("prelie-right")) == of("perm-right"), "pre-Lie dual");
  r.require(koszul_dual(of("lieadm")) == of("biperm"), "Lie-admissible dual");
  r.require(koszul_dual(of("tpa")) == of("biantiperm"), "third power associative dual");
  for (const auto& p : samples()) {
    const PP lm(-p.beta(), p.alpha());
    r.require(koszul_dual(o_family(p)) == QuadraticPresentation::generated_by({lambda_mu_identity(lm).vector()}),
              "parametric dual at " + p.str());
  }
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.require(seconds < 10, "over 10 s");
  if (r.ok) r.detail = "involution on 20 random modules; named pairs; parametric family";
  return r;
}

Result functional_equations(double&) {
  Result r;
  const auto tpa = gb_dims(of("tpa"), Signature::polarized(), 4);
  const auto lie = gb_dims(of("lieadm"), Signature::polarized(), 4);
  r.require(tpa == std::vector<std::uint64_t>{1, 2, 11, 100}, "third power associative dims " + str(tpa));
  r.require(lie == std::vector<std::uint64_t>{1, 2, 11, 101}, "Lie-admissible dims " + str(lie));
  r.require(functional_equation_check(series_from_dims(std::span<const std::uint64_t>(tpa)), FunctionalEquation::ThirdPowerAssociative),
            "f - f^2 + f^3/6 = t fails");
  r.require(functional_equation_check(series_from_dims(std::span<const std::uint64_t>(lie)), FunctionalEquation::LieAdmissible),
            "1 - exp(-f) - f^2/2 = t fails");
  if (r.ok) r.detail = "1,2,11,100 and 1,2,11,101 satisfy their equations through t^4";
  return r;
}

Result quadratic_certificates(double&) {
  Result r;
  const auto& s120 = Registry::shipped().find("m-1-2-0");
  r.require(quadratic_gb_certificate(shuffle_presentation(s120.recipe.build(), s120.order.signature())).holds,
            "(1,2,0) does not certify");
  const Signature sig = Signature::polarized(false).with_reversed(true);
  const std::vector<std::string> listed = {
      "(a1.a2).a3", "[[a1,a2],a3]", "(a1.a3).a2", "[[a1,a3],a2]", "a1.(a2.a3)", "[a1,[a2,a3]]",
      "[a1.a2,a3] - [a1,a3].a2 - a1.[a2,a3]",
      "[a1.a3,a2] - [a1,a2].a3 + a1.[a2,a3]",
      "[a1,a2.a3] - [a1,a2].a3 - [a1,a3].a2",
      "a1.[a2,a3] - [a1,a3].a2 + [a1,a2].a3",
  };
  ShufflePresentation rules{sig, {}};
  for (const auto& t : listed) rules.relations.push_back(cubic_to_tree(sig, parse_relation_vector(t, CubicSpace::Polarized12)));
  r.require(quadratic_gb_certificate(rules).holds, "listed rewriting system does not certify");
  const auto [g, rep] = complete(rules, {6});
  const auto d = rep.dims();
  r.require(d == std::vector<std::uint64_t>{1, 2, 2, 0, 0, 0}, "normal-form counts " + str(d));
  // the listed system presents the same operad as the relations
  r.require(testsupport::elements_rank(rules.relations) == 10, "listed rules are dependent");
  auto both = rules.relations;
  for (const auto& e : shuffle_presentation(o_family(PP(1, -1)), sig).relations) both.push_back(e);
  r.require(testsupport::elements_rank(both) == 10, "listed rules differ from the relations");
  if (r.ok) r.detail = "(1,2,0) and the alpha=-beta rewriting system certify; counts 2, then 0";
  return r;
}

Result octonion_suite(double& seconds) {
  Result r;
  const auto start = std::chrono::steady_clock::now();
  using O = Octonion<Rational>;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      r.require(associator(O::basis(i), O::basis(i), O::basis(j)).is_zero(), "left alternativity");
      r.require(associator(O::basis(j), O::basis(i), O::basis(i)).is_zero(), "right alternativity");
      for (int k = 0; k < 8; ++k) {
        const O a = associator(O::basis(i), O::basis(j), O::basis(k));
        r.require(associator(O::basis(j), O::basis(i), O::basis(k)) == Rational(-1) * a, "associator not alternating");
      }
    }
  for (const auto& p : samples())
    r.require(identity_holds(family_identity("param-associator", p)).holds, "parametric identity fails at " + p.str());
  AssociatorIdentity sign;
  for (int k = 0; k < 6; ++k) sign.x[static_cast<std::size_t>(k)] = Rational(s3_elements()[static_cast<std::size_t>(k)].sign());
  const auto c = identity_holds(sign);
  r.require(!c.holds && c.counterexample, "sign identity holds");
  std::mt19937 rng(97);
  for (int t = 0; t < 50; ++t) {
    O x, y;
    for (int i = 0; i < 8; ++i) {
      x[i] = testsupport::random_rational(rng);
      y[i] = testsupport::random_rational(rng);
    }
    r.require(norm(x * y) == norm(x) * norm(y), "norm not multiplicative");
  }
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.require(seconds < 30, "over 30 s");
  if (r.ok && c.counterexample) {
    const auto [i, j, k] = c.counterexample->basis_triple;
    r.detail = "sign identity fails on (e" + std::to_string(i) + ",e" + std::to_string(j) + ",e" + std::to_string(k) + ")";
  }
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json without_timing(nlohmann::json j) {
  for (auto& s : j["scenarios"]) s.erase("seconds");
  return j;
}

Result classify_end_to_end(double& seconds) {
  Result r;
  const auto start = std::chrono::steady_clock::now();
  const std::string a = "acceptance_classify_1.json", b = "acceptance_classify_2.json";
  const std::string cli = OPK_CLI_PATH;
  const int s1 = std::system((cli + " classify --json " + a + " > /dev/null").c_str());
  const int s2 = std::system((cli + " classify --json " + b + " > /dev/null").c_str());
  r.require(s1 == 0 && s2 == 0, "classify exit status " + std::to_string(s1) + "/" + std::to_string(s2));
  try {
    const auto ja = nlohmann::json::parse(slurp(a)), jb = nlohmann::json::parse(slurp(b));
    for (const auto& side : {"associative-quotient", "magmatic-quotient"})
      r.require(ja["membership"][side]["match"] == true, std::string(side) + " membership differs");
    r.require(without_timing(ja) == without_timing(jb), "reports differ between runs");
  } catch (const std::exception& e) {
    r.require(false, std::string("report unreadable: ") + e.what());
  }
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.require(seconds < 1200, "two runs over the 10 min budget");
  if (r.ok) r.detail = "membership lists match, exit 0, identical reports";
  return r;
}

Result oracle_equivalence(double&) {
  Result r;
  int count = 0;
  for (const auto& s : Registry::shipped().scenarios()) {
    const auto p = shuffle_presentation(s.recipe.build(), s.order.signature());
    const auto gb = complete(p, {4}).second.dims();
    const auto brute = testsupport::brute_force_dims(p, 4);
    r.require(gb == brute, s.id + ": " + str(gb) + " vs " + str(brute));
    ++count;
  }
  if (r.ok) r.detail = std::to_string(count) + " presentations agree at arities 3-4";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result(double&)>>> criteria = {
      {"AC1", inverse_coefficients}, {"AC2", weighted_coefficients}, {"AC3", dimension_suite},
      {"AC4", finite_basis},         {"AC5", weighted_dims},         {"AC6", duality_suite},
      {"AC7", functional_equations}, {"AC8", quadratic_certificates}, {"AC9", octonion_suite},
      {"AC10", classify_end_to_end}, {"AC11", oracle_equivalence},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    double seconds = 0;
    const auto start = std::chrono::steady_clock::now();
    Result res;
    try {
      res = run(seconds);
    } catch (const std::exception& e) {
      res = {false, std::string("exception: ") + e.what()};
    }
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !res.ok;
    std::printf("%s %s (%.2f s): %s\n", name.c_str(), res.ok ? "PASS" : "FAIL", seconds, res.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
