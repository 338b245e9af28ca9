#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "opk/koszul_duality.hpp"
#include "opk/octonion.hpp"
#include "opk/relation_parser.hpp"
#include "opk/scenario.hpp"
#include "opk/series_presets.hpp"

using namespace opk;
using nlohmann::json;

namespace {

/// Bad input from the command line; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  int max_arity = 6;
  int order = 12;
  std::string alpha, beta;
  std::string preset;
  std::string expect;
  std::vector<std::string> items;
  std::vector<std::string> modules;
  std::string space;
  std::string signature;
  bool bracket_less = false;
  bool reversed = false;
  bool weighted = false;
  bool all = false;
  std::string json_out;
  std::string registry;
  std::vector<std::string> scenarios;
};

int g_status = 0;

void expect(const Options& o, const std::string& actual, std::initializer_list<const char*> allowed) {
  if (o.expect.empty()) return;
  if (std::find(allowed.begin(), allowed.end(), o.expect) == allowed.end())
    throw UsageError("--expect takes one of the answers this verb prints");
  if (o.expect != actual) g_status = 1;
}

std::string read_stdin() {
  return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
}

std::vector<std::string> stdin_lines() {
  std::vector<std::string> lines;
  std::istringstream in(read_stdin());
  for (std::string l; std::getline(in, l);)
    if (l.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(l);
  return lines;
}

AnySeries parse_or_throw(const std::string& text) {
  try {
    return parse_series(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("cannot read series: ") + e.what());
  }
}

RationalSeries rational_series(const std::string& text) {
  const auto s = parse_or_throw(text);
  if (const auto* r = std::get_if<RationalSeries>(&s)) return *r;
  throw UsageError("expected an unweighted series");
}

std::optional<ProjectiveParameter> parameter(const Options& o) {
  if (o.alpha.empty() && o.beta.empty()) return std::nullopt;
  const auto a = Rational::parse(o.alpha.empty() ? "0" : o.alpha);
  const auto b = Rational::parse(o.beta.empty() ? "0" : o.beta);
  if (!a || !b) throw UsageError("--alpha and --beta take rationals p/q");
  if (a->is_zero() && b->is_zero()) throw UsageError("--alpha and --beta cannot both vanish");
  return ProjectiveParameter(*a, *b);
}

std::optional<CubicSpace> requested_space(const Options& o) {
  if (o.space.empty()) return std::nullopt;
  if (o.space == "magmatic") return CubicSpace::Magmatic12;
  if (o.space == "polarized") return CubicSpace::Polarized12;
  if (o.space == "associative") return CubicSpace::Associative6;
  throw UsageError("--space takes magmatic, polarized or associative");
}

/// Family ids expand to their generators; anything else is parsed as a
/// relation.
std::vector<CubicVector> resolve(const std::vector<std::string>& items, const Options& o) {
  const auto ids = family_ids();
  const auto space = requested_space(o);
  std::vector<CubicVector> out;
  for (const auto& item : items) {
    if (std::find(ids.begin(), ids.end(), item) != ids.end()) {
      const auto p = parameter(o);
      if (family_is_parametric(item) && !p) throw UsageError("family " + item + " needs --alpha and --beta");
      for (const auto& v : family_relations(item, family_is_parametric(item) ? p : std::nullopt))
        out.push_back(space && v.space != CubicSpace::Associative6 ? convert(v, *space) : v);
      continue;
    }
    try {
      const CubicExpr e = parse_relation(item);
      out.push_back(e.to_space(space.value_or(e.uses_polarized_ops() ? CubicSpace::Polarized12 : CubicSpace::Magmatic12)));
    } catch (const ParseError& e) {
      throw UsageError("relation '" + item + "' " + e.what());
    } catch (const CubicExprError& e) {
      throw UsageError("relation '" + item + "': " + e.what());
    }
  }
  return out;
}

/// Vectors in one space: associative-6 if all are, magmatic otherwise.
Subspace span_of(std::vector<CubicVector> v) {
  if (v.empty()) throw UsageError("no relations given");
  const bool assoc = std::all_of(v.begin(), v.end(), [](const CubicVector& x) { return x.space == CubicSpace::Associative6; });
  if (!assoc)
    for (auto& x : v) {
      if (x.space == CubicSpace::Associative6) throw UsageError("cannot mix associative-6 and 12-dimensional relations");
      x = convert(x, CubicSpace::Magmatic12);
    }
  return orbit_span(v);
}

json coords_json(const CubicVector& v) {
  json row = json::array();
  for (Eigen::Index k = 0; k < v.coords.size(); ++k) row.push_back(v.coords(k).str());
  return row;
}

const Registry& registry(const Options& o) {
  static std::optional<Registry> custom;
  if (o.registry.empty()) return Registry::shipped();
  if (!custom) custom = Registry::load(o.registry);
  return *custom;
}

/// The presentation and order named by --preset, or the operad generated
/// by the items with order flags.
std::pair<QuadraticPresentation, OrderConfig> presentation(const Options& o) {
  OrderConfig order;
  std::optional<QuadraticPresentation> p;
  if (!o.preset.empty()) {
    if (!o.items.empty()) throw UsageError("give either --preset or relations, not both");
    if (!registry(o).contains(o.preset)) throw UsageError("unknown preset '" + o.preset + "'");
    const Scenario& s = registry(o).find(o.preset);
    p = s.recipe.build();
    order = s.order;
  } else {
    if (o.items.empty()) throw UsageError("give relations or --preset");
    p = QuadraticPresentation::generated_by(resolve(o.items, o));
  }
  if (!o.signature.empty()) {
    if (o.signature != "magmatic" && o.signature != "polarized") throw UsageError("--signature takes magmatic or polarized");
    order.polarized = o.signature == "polarized";
  }
  if (o.bracket_less) order.bracket_greater = false;
  if (o.reversed) order.reversed = true;
  return {*p, order};
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

// ---------------------------------------------------------------------------

void series_preset(const Options& o) {
  if (o.preset.empty()) throw UsageError("series preset needs --preset");
  try {
    if (o.weighted)
      std::cout << to_string(weighted_preset_series(o.preset, o.order)) << '\n';
    else
      std::cout << to_string(preset_series(o.preset, o.order)) << '\n';
  } catch (const SeriesError& e) {
    throw UsageError(e.what());
  }
}

void series_reverse(const Options&) {
  const auto s = parse_or_throw(read_stdin());
  std::visit([](const auto& f) { std::cout << to_string(reverse(f)) << '\n'; }, s);
}

void print_positivity(const PositivityVerdict& v, const Options& o) {
  std::cout << v.str() << '\n';
  expect(o, v.violated() ? "violation" : "pass", {"violation", "pass"});
}

void series_positivity(const Options& o) {
  const auto s = parse_or_throw(read_stdin());
  if (const auto* w = std::get_if<WeightedSeries>(&s))
    print_positivity(weighted_positivity(*w), o);
  else
    print_positivity(gk_positivity(std::get<RationalSeries>(s)), o);
}

void series_wpositivity(const Options& o) {
  const auto s = parse_or_throw(read_stdin());
  const auto* w = std::get_if<WeightedSeries>(&s);
  if (!w) throw UsageError("expected a weighted series (comma-separated u-degree coefficients)");
  print_positivity(weighted_positivity(*w), o);
}

void series_check_pair(const Options& o) {
  const auto lines = stdin_lines();
  if (lines.size() != 2) throw UsageError("series check-pair reads two series, one per line");
  const auto f = rational_series(lines[0]), g = rational_series(lines[1]);
  const int n = std::min(f.order(), g.order());
  const bool ok = koszul_pair_check(f.truncated(n), g.truncated(n));
  std::cout << (ok ? "yes" : "no") << " (through t^" << n << ")\n";
  expect(o, ok ? "yes" : "no", {"yes", "no"});
}

void rel_parse(const Options& o) {
  if (o.items.empty()) throw UsageError("rel parse needs a relation");
  for (const auto& v : resolve(o.items, o)) std::cout << to_string(v.space) << ' ' << coords_json(v).dump() << '\n';
}

void rel_orbit(const Options& o) {
  const Subspace s = span_of(resolve(o.items, o));
  std::cout << "dim " << s.dim() << ' ' << isotypic_multiplicities(s).str() << '\n';
  for (const auto& v : s.vectors()) std::cout << to_text(v) << '\n';
}

void rel_multiplicities(const Options& o) {
  std::cout << isotypic_multiplicities(span_of(resolve(o.items, o))).str() << '\n';
}

void rel_contains(const Options& o) {
  if (o.modules.empty()) throw UsageError("rel contains needs --module");
  Subspace big = span_of(resolve(o.modules, o)), small = span_of(resolve(o.items, o));
  if (big.space() != small.space()) {
    if (big.space() == CubicSpace::Associative6 || small.space() == CubicSpace::Associative6)
      throw UsageError("cannot compare associative-6 and 12-dimensional relations");
  }
  const bool yes = submodule_contains(big, small);
  std::cout << (yes ? "yes" : "no") << '\n';
  expect(o, yes ? "yes" : "no", {"yes", "no"});
}

void gb_run(const Options& o, const std::string& verb) {
  const auto [p, order] = presentation(o);
  const Signature sig = order.signature();
  const ShufflePresentation sp = shuffle_presentation(p, sig);
  if (verb == "certify") {
    const auto c = quadratic_gb_certificate(sp);
    std::cout << (c.holds ? "yes" : "no") << " (" << c.s_elements << " S-elements)\n";
    if (c.witness) std::cout << "witness " << to_text(sig, *c.witness) << '\n';
    expect(o, c.holds ? "yes" : "no", {"yes", "no"});
    return;
  }
  CompletionOptions co;
  co.max_arity = o.max_arity;
  std::pair<GroebnerBasis, CompletionReport> r{GroebnerBasis(sig), {}};
  try {
    r = complete(sp, co);
  } catch (const BudgetExceeded& e) {
    std::cerr << "opk: " << e.what() << "; stopping at arity " << e.arity() - 1 << '\n';
    co.max_arity = e.arity() - 1;
    r = complete(sp, co);
  }
  if (verb == "dims")
    std::cout << join(r.second.dims()) << '\n';
  else
    std::cout << to_json(r.first, r.second).dump(2) << '\n';
}

void dual_run(const Options& o, const std::string& verb) {
  const auto [p, order] = presentation(o);
  if (verb == "roundtrip") {
    const bool ok = dual_of_dual_check(p);
    std::cout << (ok ? "yes" : "no") << '\n';
    expect(o, ok ? "yes" : "no", {"yes", "no"});
    return;
  }
  const bool polarized = o.space == "polarized";
  if (!o.space.empty() && o.space != "polarized" && o.space != "magmatic")
    throw UsageError("--space takes magmatic or polarized here");
  QuadraticPresentation out = verb == "polarize" ? polarize(in_mode(p, BasisMode::Magmatic)) : koszul_dual(p);
  if (verb == "compute" && polarized) out = polarize(out);
  json j = to_json(out);
  j["multiplicities"] = isotypic_multiplicities(convert(out.relations(), CubicSpace::Magmatic12)).str();
  if (const auto a = present_as_associative_quotient(out)) j["associative_quotient_multiplicities"] = isotypic_multiplicities(*a).str();
  std::cout << j.dump(2) << '\n';
}

void octonion_check(const Options& o) {
  const auto [p, order] = presentation(o);
  const auto r = relations_hold(p.relations());
  if (r.holds) {
    std::cout << "yes\n";
  } else {
    const auto [i, j, k] = r.counterexample->basis_triple;
    std::cout << "no (fails on e" << i << ", e" << j << ", e" << k << ")\n";
  }
  expect(o, r.holds ? "yes" : "no", {"yes", "no"});
}

void classify(const Options& o) {
  RunOptions ro;
  ro.max_arity = o.max_arity;
  ro.series_order = o.order;
  ro.include_dedicated = o.all;
  const Registry& reg = registry(o);
  for (const auto& id : o.scenarios)
    if (!reg.contains(id)) throw UsageError("unknown scenario '" + id + "'");
  Classifier c(reg, ro);
  const ClassificationReport r = o.scenarios.empty() ? c.classify_all() : c.classify(o.scenarios);
  std::ostream& table = o.json_out == "-" ? std::cerr : std::cout;
  for (const auto& s : r.scenarios)
    table << s.id << "  " << to_string(s.verdict) << "  " << s.status << "  " << s.reason << '\n';
  for (const auto& [side, m] : r.membership)
    table << side << " membership " << (m.match ? "matches" : "differs") << " (" << m.computed.size() << " Koszul)\n";
  const json j = to_json(r);
  table << "summary: " << j["summary"]["pass"] << " pass, " << j["summary"]["fail"] << " fail, "
        << j["summary"]["inconclusive_at_bound"] << " inconclusive at bound\n";
  if (o.json_out == "-") {
    std::cout << j.dump(2) << '\n';
  } else if (!o.json_out.empty()) {
    std::ofstream out(o.json_out);
    if (!out) throw UsageError("cannot write " + o.json_out);
    out << j.dump(2) << '\n';
  }
  if (!r.ok()) g_status = 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Koszulness evidence for quotients of the associative and magmatic operads"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--max-arity", o.max_arity, "Largest arity completed by Groebner bases")->capture_default_str()->check(CLI::Range(2, 12));
  app.add_option("--order", o.order, "Series truncation order")->capture_default_str()->check(CLI::Range(1, 400));
  app.add_option("--alpha", o.alpha, "First projective coordinate (rational)");
  app.add_option("--beta", o.beta, "Second projective coordinate (rational)");
  app.add_option("--preset", o.preset, "Series preset (series verbs) or scenario id (gb, dual, octonion)");
  app.add_option("--expect", o.expect, "Expected answer; a mismatch exits with status 1");
  app.add_option("--registry", o.registry, "Scenario registry file")->check(CLI::ExistingFile);

  std::function<void()> action;
  const auto verb = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<void()> f) {
    CLI::App* c = parent->add_subcommand(name, help)->fallthrough();
    c->callback([&action, f] { action = f; });
    return c;
  };
  const auto with_items = [&](CLI::App* c) {
    c->add_option("relations", o.items, "Relation texts or family ids");
    c->add_option("--space", o.space, "Coordinate space: magmatic, polarized or associative");
    return c;
  };
  const auto with_order = [&](CLI::App* c) {
    c->add_option("--signature", o.signature, "magmatic or polarized");
    c->add_flag("--bracket-less", o.bracket_less, "Order the product above the bracket");
    c->add_flag("--reversed", o.reversed, "Use the reversed monomial order");
    return c;
  };

  CLI::App* series = app.add_subcommand("series", "Formal power series")->fallthrough()->require_subcommand(1);
  verb(series, "preset", "Print a closed-form series", [&] { series_preset(o); })
      ->add_flag("--weighted", o.weighted, "Weight-graded series");
  verb(series, "reverse", "Compositional inverse of a series on stdin", [&] { series_reverse(o); });
  verb(series, "positivity", "Sign test on the inverse of a series on stdin", [&] { series_positivity(o); });
  verb(series, "wpositivity", "Weighted sign test on stdin", [&] { series_wpositivity(o); });
  verb(series, "check-pair", "Series pair identity for two series on stdin", [&] { series_check_pair(o); });

  CLI::App* rel = app.add_subcommand("rel", "Cubic relations")->fallthrough()->require_subcommand(1);
  with_items(verb(rel, "parse", "Coordinates of relations", [&] { rel_parse(o); }));
  with_items(verb(rel, "orbit", "S3-module generated by relations", [&] { rel_orbit(o); }));
  with_items(verb(rel, "multiplicities", "Isotypic multiplicities of the generated module", [&] { rel_multiplicities(o); }));
  with_items(verb(rel, "contains", "Whether --module contains the relations", [&] { rel_contains(o); }))
      ->add_option("--module", o.modules, "Relations or family ids spanning the module (repeatable)")
      ->allow_extra_args(false);

  CLI::App* gb = app.add_subcommand("gb", "Shuffle Groebner bases")->fallthrough()->require_subcommand(1);
  for (const char* v : {"complete", "dims", "certify"}) {
    const std::string name = v;
    with_order(with_items(verb(gb, name, name == "complete" ? "Groebner basis as JSON"
                                         : name == "dims" ? "Component dimensions"
                                                          : "Quadratic Groebner basis certificate",
                               [&, name] { gb_run(o, name); })));
  }

  CLI::App* dual = app.add_subcommand("dual", "Koszul duality")->fallthrough()->require_subcommand(1);
  for (const char* v : {"compute", "roundtrip", "polarize"}) {
    const std::string name = v;
    with_items(verb(dual, name, name == "compute" ? "Koszul dual presentation" : name == "roundtrip" ? "Dual of the dual" : "Polarized presentation",
                    [&, name] { dual_run(o, name); }));
  }

  CLI::App* oct = app.add_subcommand("octonion", "Octonion identities")->fallthrough()->require_subcommand(1);
  with_items(verb(oct, "check", "Whether the octonions satisfy the relations", [&] { octonion_check(o); }));

  CLI::App* cls = verb(&app, "classify", "Run the scenario registry", [&] { classify(o); });
  cls->add_option("--json", o.json_out, "Write the JSON report to a file ('-' for stdout)");
  cls->add_flag("--all", o.all, "Include dedicated scenarios outside the default path");
  cls->add_option("--scenario", o.scenarios, "Run only this scenario (repeatable)")->allow_extra_args(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    action();
  } catch (const UsageError& e) {
    std::cerr << "opk: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "opk: " << e.what() << '\n';
    return 2;
  }
  return g_status;
}
