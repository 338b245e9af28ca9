#include "opk/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <set>

#include "opk/octonion.hpp"
#include "opk/series_presets.hpp"

namespace opk {

using nlohmann::json;

namespace {

const char* kPass = "pass";
const char* kFail = "fail";
const char* kBound = "inconclusive-at-bound";

const std::vector<std::pair<Verdict, std::string>>& verdict_names() {
  static const std::vector<std::pair<Verdict, std::string>> v{
      {Verdict::Koszul, "koszul"},
      {Verdict::NotKoszul, "not-koszul"},
      {Verdict::KoszulByDuality, "koszul-by-duality"},
      {Verdict::Inconclusive, "inconclusive"},
      {Verdict::InconclusiveAtBound, "inconclusive-at-bound"},
  };
  return v;
}

ProjectiveParameter parse_param(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ScenarioError("parameter '" + s + "' is not of the form alpha:beta");
  const auto a = Rational::parse(std::string_view(s).substr(0, colon));
  const auto b = Rational::parse(std::string_view(s).substr(colon + 1));
  if (!a || !b) throw ScenarioError("parameter '" + s + "' has a malformed coordinate");
  return ProjectiveParameter(*a, *b);
}

Rational parse_rational(const json& j) {
  const auto r = Rational::parse(j.get<std::string>());
  if (!r) throw ScenarioError("malformed rational '" + j.get<std::string>() + "'");
  return *r;
}

OrderConfig order_from_json(const json& j) {
  OrderConfig o;
  const std::string sig = j.value("signature", "polarized");
  if (sig != "polarized" && sig != "magmatic") throw ScenarioError("unknown signature '" + sig + "'");
  o.polarized = sig == "polarized";
  o.bracket_greater = j.value("bracket_greater", true);
  o.reversed = j.value("reversed", false);
  return o;
}

Scenario scenario_from_json(const json& j) {
  Scenario s;
  s.id = j.at("id").get<std::string>();
  s.operad = j.at("operad").get<std::string>();
  s.recipe.side = parse_side(j.at("side").get<std::string>());
  s.recipe.families = j.value("relations", std::vector<std::string>{});
  if (j.contains("param") && !j["param"].is_null()) s.recipe.param = parse_param(j["param"].get<std::string>());
  s.order = order_from_json(j.value("order", json::object()));
  s.anchors = j.value("anchors", std::vector<std::string>{});
  for (const auto& c : j.value("checks", json::array())) s.checks.push_back({c.at("kind").get<std::string>(), c.value("anchor", ""), c});
  s.expected = parse_verdict(j.at("expected").get<std::string>());
  s.default_path = j.value("default", true);
  return s;
}

json uints(const std::vector<std::uint64_t>& v) { return json(v); }

std::vector<std::uint64_t> prefix(const std::vector<std::uint64_t>& v, std::size_t n) {
  return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(n, v.size()))};
}

std::vector<std::uint64_t> dims_of_series(const RationalSeries& f) {
  std::vector<std::uint64_t> out;
  for (const auto& d : dims_from_series(f)) out.push_back(std::stoull(d.str()));
  return out;
}

// Evidence gathered by the checks of one scenario.
struct Evidence {
  bool certificate = false;
  std::optional<std::string> violation;
  bool pair_with_vanishing = false;
  std::optional<std::string> partner;
};

struct GbEntry {
  GroebnerBasis basis{Signature::magmatic()};
  CompletionReport report;
  int requested = 0;
  bool budget_hit = false;
};

}  // namespace

std::string to_string(Verdict v) {
  for (const auto& [k, s] : verdict_names())
    if (k == v) return s;
  return "inconclusive";
}

Verdict parse_verdict(const std::string& s) {
  for (const auto& [k, n] : verdict_names())
    if (n == s) return k;
  throw ScenarioError("unknown verdict '" + s + "'");
}

std::string to_string(Side s) { return s == Side::AssociativeQuotient ? "associative-quotient" : "magmatic-quotient"; }

Side parse_side(const std::string& s) {
  if (s == "associative-quotient") return Side::AssociativeQuotient;
  if (s == "magmatic-quotient") return Side::MagmaticQuotient;
  throw ScenarioError("unknown side '" + s + "'");
}

Signature OrderConfig::signature() const {
  const Signature s = polarized ? Signature::polarized(bracket_greater) : Signature::magmatic();
  return s.with_reversed(reversed);
}

QuadraticPresentation Recipe::build() const {
  std::vector<CubicVector> gens;
  for (const auto& f : families) {
    const auto v = family_relations(f, family_is_parametric(f) ? param : std::nullopt);
    gens.insert(gens.end(), v.begin(), v.end());
  }
  if (side == Side::AssociativeQuotient) {
    for (const auto& g : gens)
      if (g.space != CubicSpace::Associative6) throw ScenarioError("associative quotients take associative-6 families");
    return QuadraticPresentation(associative_preimage(gens.empty() ? Subspace(CubicSpace::Associative6) : orbit_span(gens)));
  }
  std::vector<CubicVector> mag;
  for (const auto& g : gens) {
    if (g.space == CubicSpace::Associative6) throw ScenarioError("magmatic quotients take 12-dimensional families");
    mag.push_back(convert(Subspace::span(g.space, {g}), CubicSpace::Magmatic12).vectors().front());
  }
  return QuadraticPresentation(mag.empty() ? Subspace(CubicSpace::Magmatic12) : orbit_span(mag));
}

const std::vector<std::string>& check_kinds() {
  static const std::vector<std::string> k{
      "multiplicities", "inverse-coefficient", "weighted-inverse-coefficient", "gk-positivity",
      "weighted-positivity", "gb-dims", "weighted-dims", "gb-rules", "quadratic-certificate",
      "pair-check", "duality-partner", "dual-roundtrip", "functional-equation", "octonion", "contains",
  };
  return k;
}

const std::vector<std::string>& required_anchors() {
  static const std::vector<std::string> a{
      "case-0-0-0", "case-0-0-1", "case-0-1-0", "case-0-1-1", "case-0-2-0", "case-0-2-1",
      "case-1-0-0", "case-1-0-1", "case-1-1-0", "case-1-1-1", "case-1-2-0", "case-1-2-1",
      "quotient-classification", "associator-classification", "param-dimensions",
      "functional-equations", "octonion-action", "flexible-action", "weighted-positivity",
  };
  return a;
}

// ---------------------------------------------------------------------------

Registry Registry::from_json(const json& j) {
  Registry r;
  r.version_ = j.at("version").get<int>();
  for (const auto& [side, names] : j.at("membership").items()) {
    parse_side(side);
    r.membership_[side] = names.get<std::vector<std::string>>();
  }
  std::set<std::string> ids;
  for (const auto& s : j.at("scenarios")) {
    r.scenarios_.push_back(scenario_from_json(s));
    if (!ids.insert(r.scenarios_.back().id).second) throw ScenarioError("duplicate scenario id '" + r.scenarios_.back().id + "'");
  }
  return r;
}

Registry Registry::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open registry '" + path + "'");
  try {
    return from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw ScenarioError("registry '" + path + "': " + e.what());
  }
}

const Registry& Registry::shipped() {
  static const Registry r = load(std::string(OPK_DATA_DIR) + "/scenarios.json");
  return r;
}

const Scenario& Registry::find(const std::string& id) const {
  for (const auto& s : scenarios_)
    if (s.id == id) return s;
  throw ScenarioError("unknown scenario '" + id + "'");
}

bool Registry::contains(const std::string& id) const {
  return std::any_of(scenarios_.begin(), scenarios_.end(), [&](const Scenario& s) { return s.id == id; });
}

std::vector<std::string> Registry::self_test() const {
  std::vector<std::string> problems;
  std::set<std::string> anchors;
  const auto& kinds = check_kinds();
  const auto families = family_ids();
  for (const auto& s : scenarios_) {
    anchors.insert(s.anchors.begin(), s.anchors.end());
    for (const auto& f : s.recipe.families) {
      if (std::find(families.begin(), families.end(), f) == families.end())
        problems.push_back(s.id + ": unknown family " + f);
      else if (family_is_parametric(f) && !s.recipe.param)
        problems.push_back(s.id + ": family " + f + " needs a parameter");
    }
    for (const auto& c : s.checks) {
      if (c.anchor.empty()) problems.push_back(s.id + ": check " + c.kind + " names no anchor");
      anchors.insert(c.anchor);
      if (std::find(kinds.begin(), kinds.end(), c.kind) == kinds.end()) problems.push_back(s.id + ": unknown check " + c.kind);
      if (c.kind == "duality-partner" && !contains(c.args.value("partner", "")))
        problems.push_back(s.id + ": unknown partner " + c.args.value("partner", ""));
    }
    if (s.expected == Verdict::Inconclusive) problems.push_back(s.id + ": expected verdict must be conclusive");
    const auto it = membership_.find(to_string(s.recipe.side));
    const bool listed = it != membership_.end() &&
                        std::find(it->second.begin(), it->second.end(), s.operad) != it->second.end();
    if (is_koszul(s.expected) != listed && s.expected != Verdict::InconclusiveAtBound)
      problems.push_back(s.id + ": expected verdict disagrees with the membership list");
  }
  for (const auto& a : required_anchors())
    if (!anchors.count(a)) problems.push_back("no scenario carries anchor " + a);
  for (const auto& [side, names] : membership_)
    for (const auto& n : names) {
      const bool present = std::any_of(scenarios_.begin(), scenarios_.end(), [&](const Scenario& s) {
        return s.default_path && s.operad == n && to_string(s.recipe.side) == side;
      });
      if (!present) problems.push_back(side + ": member " + n + " has no default scenario");
    }
  return problems;
}

// ---------------------------------------------------------------------------

bool ClassificationReport::ok() const {
  for (const auto& s : scenarios)
    if (s.status == kFail) return false;
  for (const auto& [side, m] : membership)
    if (!m.match) return false;
  return true;
}

json to_json(const ScenarioReport& r, bool with_timing) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"kind", c.kind}, {"anchor", c.anchor}, {"status", c.status}, {"detail", c.detail}});
  json j{{"id", r.id},
         {"operad", r.operad},
         {"side", to_string(r.side)},
         {"parameter", r.parameter ? json(*r.parameter) : json(nullptr)},
         {"anchors", r.anchors},
         {"expected", to_string(r.expected)},
         {"verdict", to_string(r.verdict)},
         {"status", r.status},
         {"reason", r.reason},
         {"checks", checks}};
  if (with_timing) j["seconds"] = r.seconds;
  return j;
}

json to_json(const ClassificationReport& r, bool with_timing) {
  json scen = json::array();
  int pass = 0, fail = 0, bound = 0;
  for (const auto& s : r.scenarios) {
    scen.push_back(to_json(s, with_timing));
    pass += s.status == kPass;
    fail += s.status == kFail;
    bound += s.status == kBound;
  }
  json mem = json::object();
  for (const auto& [side, m] : r.membership)
    mem[side] = {{"expected", m.expected}, {"computed", m.computed}, {"match", m.match}};
  return {{"schema", "opk-classification/1"},
          {"options",
           {{"max_arity", r.options.max_arity},
            {"series_order", r.options.series_order},
            {"monomial_budget", r.options.monomial_budget},
            {"include_dedicated", r.options.include_dedicated}}},
          {"scenarios", scen},
          {"membership", mem},
          {"summary", {{"pass", pass}, {"fail", fail}, {"inconclusive_at_bound", bound}, {"ok", r.ok()}}}};
}

ClassificationReport classification_from_json(const json& j) {
  if (j.at("schema") != "opk-classification/1") throw ScenarioError("unknown report schema");
  ClassificationReport r;
  const auto& o = j.at("options");
  r.options.max_arity = o.at("max_arity").get<int>();
  r.options.series_order = o.at("series_order").get<int>();
  r.options.monomial_budget = o.at("monomial_budget").get<std::uint64_t>();
  r.options.include_dedicated = o.at("include_dedicated").get<bool>();
  for (const auto& s : j.at("scenarios")) {
    ScenarioReport x;
    x.id = s.at("id").get<std::string>();
    x.operad = s.at("operad").get<std::string>();
    x.side = parse_side(s.at("side").get<std::string>());
    if (!s.at("parameter").is_null()) x.parameter = s["parameter"].get<std::string>();
    x.anchors = s.at("anchors").get<std::vector<std::string>>();
    x.expected = parse_verdict(s.at("expected").get<std::string>());
    x.verdict = parse_verdict(s.at("verdict").get<std::string>());
    x.status = s.at("status").get<std::string>();
    x.reason = s.at("reason").get<std::string>();
    for (const auto& c : s.at("checks"))
      x.checks.push_back({c.at("kind").get<std::string>(), c.at("anchor").get<std::string>(), c.at("status").get<std::string>(),
                          c.at("detail")});
    x.seconds = s.value("seconds", 0.0);
    r.scenarios.push_back(std::move(x));
  }
  for (const auto& [side, m] : j.at("membership").items())
    r.membership[side] = {m.at("expected").get<std::vector<std::string>>(), m.at("computed").get<std::vector<std::string>>(),
                          m.at("match").get<bool>()};
  return r;
}

// ---------------------------------------------------------------------------

struct Classifier::Impl {
  const Registry& registry;
  RunOptions options;
  std::map<std::string, GbEntry> gb_cache;
  std::map<std::string, ScenarioReport> reports;
  std::set<std::string> running;

  Impl(const Registry& r, RunOptions o) : registry(r), options(o) {}

  static std::string cache_key(const QuadraticPresentation& p, const OrderConfig& o) {
    return to_json(in_mode(p, BasisMode::Magmatic)).dump() + (o.polarized ? "P" : "M") + (o.bracket_greater ? "b" : "c") +
           (o.reversed ? "r" : "f");
  }

  // Completed Groebner basis through min(arity, max_arity), shrinking the
  // target when the monomial budget is exceeded.
  const GbEntry& groebner(const QuadraticPresentation& p, const OrderConfig& o, int arity) {
    arity = std::min(arity, options.max_arity);
    GbEntry& e = gb_cache[cache_key(p, o)];
    if (e.requested >= arity) return e;
    const ShufflePresentation sp = shuffle_presentation(p, o.signature());
    int target = arity;
    for (;;) {
      try {
        auto [g, rep] = complete(sp, {target, options.monomial_budget});
        e.basis = std::move(g);
        e.report = std::move(rep);
        e.requested = arity;
        e.budget_hit = target < arity;
        return e;
      } catch (const BudgetExceeded& ex) {
        target = ex.arity() - 1;
        if (target < 3) throw;
      }
    }
  }

  // Own dims through the requested arity; bounded when completion stopped
  // short of it.
  std::pair<std::vector<std::uint64_t>, bool> dims(const QuadraticPresentation& p, const OrderConfig& o, int arity) {
    const GbEntry& e = groebner(p, o, arity);
    const auto d = prefix(e.report.dims(), static_cast<std::size_t>(arity));
    return {d, static_cast<int>(d.size()) < arity};
  }

  CheckOutcome run_check(const Scenario& s, const Check& c, const QuadraticPresentation& pres, Evidence& ev);
  ScenarioReport run_scenario(const Scenario& s);
  const ScenarioReport& run(const std::string& id);
};

namespace {

CheckOutcome outcome(const Check& c, bool ok, json detail, bool bounded = false) {
  return {c.kind, c.anchor, bounded ? kBound : (ok ? kPass : kFail), std::move(detail)};
}

json verdict_json(const PositivityVerdict& v) {
  json j{{"violation", v.violated()}, {"order", v.order}};
  if (v.witness) {
    j["n"] = v.witness->n;
    j["coefficient"] = v.witness->coefficient.str();
    if (v.witness->u_degree) j["u_degree"] = *v.witness->u_degree;
  }
  return j;
}

// Positivity expectation: {"violation": false} or {"violation": true, "n", "coefficient"?, "u_degree"?}.
CheckOutcome positivity_outcome(const Check& c, const PositivityVerdict& v, int available, Evidence& ev,
                                const std::string& label) {
  const json& exp = c.args.at("expected");
  json detail{{"expected", exp}, {"actual", verdict_json(v)}};
  if (v.violated())
    ev.violation = label + " violated at n=" + std::to_string(v.witness->n) + " (coefficient " +
                   v.witness->coefficient.str() + ")";
  if (!exp.at("violation").get<bool>()) return outcome(c, !v.violated(), detail);
  const int n = exp.at("n").get<int>();
  if (!v.violated()) return outcome(c, false, detail, n > available);
  bool ok = v.witness->n == n;
  if (exp.contains("coefficient")) ok &= v.witness->coefficient == parse_rational(exp["coefficient"]);
  if (exp.contains("u_degree")) ok &= v.witness->u_degree == exp["u_degree"].get<int>();
  return outcome(c, ok, detail);
}

}  // namespace

CheckOutcome Classifier::Impl::run_check(const Scenario& s, const Check& c, const QuadraticPresentation& pres,
                                         Evidence& ev) {
  const json& a = c.args;
  const int order = options.series_order;

  if (c.kind == "multiplicities") {
    const auto exp = a.at("expected").get<std::vector<int>>();
    const MultiplicityVector want{exp.at(0), exp.at(1), exp.at(2)};
    MultiplicityVector got;
    if (s.recipe.side == Side::AssociativeQuotient) {
      const auto q = present_as_associative_quotient(pres);
      if (!q) return outcome(c, false, {{"error", "not an associative quotient"}});
      got = isotypic_multiplicities(*q);
    } else {
      got = isotypic_multiplicities(convert(pres.relations(), CubicSpace::Magmatic12));
    }
    return outcome(c, got == want, {{"expected", want.str()}, {"actual", got.str()}});
  }

  if (c.kind == "inverse-coefficient") {
    const int n = a.at("n").get<int>();
    const Rational want = parse_rational(a.at("expected"));
    if (n > order) return outcome(c, false, {{"needs_order", n}, {"order", order}}, true);
    const Rational got = reverse(preset_series(a.at("preset").get<std::string>(), n))[n];
    return outcome(c, got == want, {{"n", n}, {"expected", want.str()}, {"actual", got.str()}});
  }

  if (c.kind == "weighted-inverse-coefficient") {
    const int n = a.at("n").get<int>(), u = a.at("u").get<int>();
    const Rational want = parse_rational(a.at("expected"));
    if (n > order) return outcome(c, false, {{"needs_order", n}, {"order", order}}, true);
    const Rational got = reverse(weighted_preset_series(a.at("preset").get<std::string>(), n))[n].coeff(u);
    return outcome(c, got == want, {{"n", n}, {"u_degree", u}, {"expected", want.str()}, {"actual", got.str()}});
  }

  if (c.kind == "gk-positivity") {
    if (a.value("source", "preset") == "gb") {
      const int need = a.value("arity", options.max_arity);
      const auto [d, bounded] = dims(pres, s.order, need);
      auto out = positivity_outcome(c, gk_positivity(series_from_dims(std::span<const std::uint64_t>(d))),
                                    static_cast<int>(d.size()), ev, "positivity of the Groebner-basis series");
      out.detail["dims"] = uints(d);
      return out;
    }
    return positivity_outcome(c, gk_positivity(preset_series(a.at("preset").get<std::string>(), order)), order, ev,
                              "positivity");
  }

  if (c.kind == "weighted-positivity")
    return positivity_outcome(c, weighted_positivity(weighted_preset_series(a.at("preset").get<std::string>(), order)),
                              order, ev, "weighted positivity");

  if (c.kind == "gb-dims") {
    const auto want = a.at("expected").get<std::vector<std::uint64_t>>();
    const auto [d, bounded] = dims(pres, s.order, static_cast<int>(want.size()));
    json detail{{"expected", uints(want)}, {"actual", uints(d)}};
    bool ok = d == prefix(want, d.size());
    if (a.contains("preset")) {
      const auto closed = dims_of_series(preset_series(a["preset"].get<std::string>(), static_cast<int>(want.size())));
      detail["closed_form"] = uints(closed);
      ok &= closed == want;
    }
    return outcome(c, ok, detail, ok && bounded);
  }

  if (c.kind == "weighted-dims") {
    const auto want = a.at("expected").get<std::vector<std::vector<std::uint64_t>>>();
    const int need = static_cast<int>(want.size());
    const GbEntry& e = groebner(pres, s.order, need);
    const int have = std::min(need, e.report.completed_through);
    json got = json::array();
    bool ok = true;
    for (int n = 1; n <= have; ++n) {
      std::vector<std::uint64_t> row;
      for (const auto& [w, dim] : e.report.levels[static_cast<std::size_t>(n - 1)].dims_by_weight) {
        if (row.size() <= static_cast<std::size_t>(w)) row.resize(static_cast<std::size_t>(w) + 1, 0);
        row[static_cast<std::size_t>(w)] = dim;
      }
      while (!row.empty() && row.back() == 0) row.pop_back();
      ok &= row == want[static_cast<std::size_t>(n - 1)];
      got.push_back(row);
    }
    json detail{{"expected", want}, {"actual", got}};
    if (a.contains("preset")) {
      const auto f = weighted_preset_series(a["preset"].get<std::string>(), need);
      json closed = json::array();
      for (int n = 1; n <= need; ++n) {
        std::vector<std::uint64_t> row;
        for (const auto& x : f[n].coefficients()) row.push_back(std::stoull((x * factorial(static_cast<unsigned>(n))).str()));
        ok &= row == want[static_cast<std::size_t>(n - 1)];
        closed.push_back(row);
      }
      detail["closed_form"] = closed;
    }
    return outcome(c, ok, detail, ok && have < need);
  }

  if (c.kind == "gb-rules") {
    int need = 0;
    for (const auto& [n, cnt] : a.at("expected").items()) need = std::max(need, std::stoi(n));
    const GbEntry& e = groebner(pres, s.order, need);
    json got = json::object();
    bool ok = true;
    for (const auto& [n, cnt] : a.at("expected").items()) {
      const int ar = std::stoi(n);
      if (ar > e.report.completed_through) continue;
      const auto k = e.basis.rules_of_arity(ar).size();
      got[n] = k;
      ok &= k == cnt.get<std::size_t>();
    }
    return outcome(c, ok, {{"expected", a.at("expected")}, {"actual", got}}, ok && e.report.completed_through < need);
  }

  if (c.kind == "quadratic-certificate") {
    const auto cert = quadratic_gb_certificate(shuffle_presentation(pres, s.order.signature()));
    ev.certificate = cert.holds;
    json detail{{"holds", cert.holds}, {"s_elements", cert.s_elements}, {"signature", to_json(s.order.signature())}};
    if (cert.witness) detail["witness"] = to_text(s.order.signature(), *cert.witness);
    return outcome(c, cert.holds == a.at("expected").get<bool>(), detail);
  }

  if (c.kind == "pair-check") {
    const int need = a.value("arity", options.max_arity);
    const OrderConfig dual_order = a.contains("dual_order") ? order_from_json(a["dual_order"]) : s.order;
    const auto dual = koszul_dual(pres);
    const auto [own, b1] = dims(pres, s.order, need);
    const auto [other, b2] = dims(dual, dual_order, need);
    const std::size_t k = std::min(own.size(), other.size());
    const auto f = series_from_dims(std::span<const std::uint64_t>(own.data(), k));
    const auto g = series_from_dims(std::span<const std::uint64_t>(other.data(), k));
    const bool pair = koszul_pair_check(f, g);
    const bool vanishing = k >= 4 && (own[3] == 0 || other[3] == 0);
    json detail{{"dims", uints(prefix(own, k))}, {"dual_dims", uints(prefix(other, k))}, {"pair_identity", pair},
                {"vanishing_at_4", vanishing}};
    if (!pair) ev.violation = "the series pair identity fails through arity " + std::to_string(k);
    ev.pair_with_vanishing = pair && vanishing;
    return outcome(c, pair == a.value("expected", true), detail, pair && static_cast<int>(k) < need);
  }

  if (c.kind == "duality-partner") {
    const std::string pid = a.at("partner").get<std::string>();
    const Scenario& partner = registry.find(pid);
    const bool matches = koszul_dual(pres) == in_mode(partner.recipe.build(), BasisMode::Magmatic);
    json detail{{"partner", pid}, {"dual_matches", matches}};
    if (!matches) return outcome(c, false, detail);
    if (running.count(pid)) return outcome(c, false, {{"partner", pid}, {"error", "cyclic partner"}});
    const ScenarioReport& pr = run(pid);
    detail["partner_verdict"] = to_string(pr.verdict);
    ev.partner = pid;
    return outcome(c, true, detail);
  }

  if (c.kind == "dual-roundtrip") {
    const bool ok = dual_of_dual_check(pres);
    json detail{{"roundtrip", ok}};
    const auto m = isotypic_multiplicities(koszul_dual(pres).relations());
    detail["dual_multiplicities"] = m.str();
    return outcome(c, ok, detail);
  }

  if (c.kind == "functional-equation") {
    const std::string which = a.at("equation").get<std::string>();
    FunctionalEquation eq;
    if (which == "third-power-associative")
      eq = FunctionalEquation::ThirdPowerAssociative;
    else if (which == "lie-admissible")
      eq = FunctionalEquation::LieAdmissible;
    else
      throw ScenarioError("unknown functional equation '" + which + "'");
    const int need = a.value("arity", options.max_arity);
    const auto [d, bounded] = dims(pres, s.order, need);
    const bool ok = functional_equation_check(series_from_dims(std::span<const std::uint64_t>(d)), eq);
    return outcome(c, ok, {{"equation", which}, {"dims", uints(d)}, {"holds", ok}}, ok && bounded);
  }

  if (c.kind == "octonion") {
    const auto r = relations_hold(pres.relations());
    json detail{{"holds", r.holds}};
    if (r.counterexample) detail["basis_triple"] = r.counterexample->basis_triple;
    return outcome(c, r.holds == a.at("expected").get<bool>(), detail);
  }

  if (c.kind == "contains") {
    const std::string f = a.at("family").get<std::string>();
    const auto other = orbit_span(family_relations(f, family_is_parametric(f) ? s.recipe.param : std::nullopt));
    const std::string rel = a.value("relation", "contains");
    if (rel != "contains" && rel != "within") throw ScenarioError("unknown containment relation '" + rel + "'");
    const Subspace own = convert(pres.relations(), CubicSpace::Magmatic12), fam = convert(other, CubicSpace::Magmatic12);
    const bool got = rel == "contains" ? submodule_contains(own, fam) : submodule_contains(fam, own);
    return outcome(c, got == a.at("expected").get<bool>(), {{"family", f}, {"relation", rel}, {"holds", got}});
  }

  throw ScenarioError("unknown check kind '" + c.kind + "'");
}

ScenarioReport Classifier::Impl::run_scenario(const Scenario& s) {
  const auto start = std::chrono::steady_clock::now();
  ScenarioReport r;
  r.id = s.id;
  r.operad = s.operad;
  r.side = s.recipe.side;
  if (s.recipe.param) r.parameter = s.recipe.param->str();
  r.anchors = s.anchors;
  r.expected = s.expected;

  const QuadraticPresentation pres = s.recipe.build();
  Evidence ev;
  bool any_fail = false, any_bound = false;
  for (const auto& c : s.checks) {
    CheckOutcome o;
    try {
      o = run_check(s, c, pres, ev);
    } catch (const BudgetExceeded& e) {
      o = {c.kind, c.anchor, kBound, {{"budget_exceeded_at", e.arity()}}};
    }
    any_fail |= o.status == kFail;
    any_bound |= o.status == kBound;
    r.checks.push_back(std::move(o));
  }

  if (ev.certificate) {
    r.verdict = Verdict::Koszul;
    r.reason = "the quadratic relations form a Groebner basis";
  } else if (ev.violation) {
    r.verdict = Verdict::NotKoszul;
    r.reason = *ev.violation;
  } else if (ev.pair_with_vanishing) {
    r.verdict = Verdict::Koszul;
    r.reason = "series pair identity with a vanishing arity-4 component";
  } else if (ev.partner) {
    const ScenarioReport& p = reports.at(*ev.partner);
    if (is_koszul(p.verdict)) {
      r.verdict = Verdict::KoszulByDuality;
      r.reason = "Koszul dual " + *ev.partner + " is Koszul";
    } else if (p.verdict == Verdict::NotKoszul) {
      r.verdict = Verdict::NotKoszul;
      r.reason = "Koszul dual " + *ev.partner + " is not Koszul";
    } else {
      r.verdict = p.verdict;
      r.reason = "Koszul dual " + *ev.partner + " is undecided";
    }
  } else {
    r.verdict = any_bound ? Verdict::InconclusiveAtBound : Verdict::Inconclusive;
    r.reason = any_bound ? "the deciding evidence lies beyond the configured bounds" : "no deciding evidence";
  }

  if (any_fail)
    r.status = kFail;
  else if (r.verdict == s.expected)
    r.status = kPass;
  else if (r.verdict == Verdict::InconclusiveAtBound)
    r.status = kBound;
  else
    r.status = kFail;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

const ScenarioReport& Classifier::Impl::run(const std::string& id) {
  if (const auto it = reports.find(id); it != reports.end()) return it->second;
  const Scenario& s = registry.find(id);
  running.insert(id);
  ScenarioReport r = run_scenario(s);
  running.erase(id);
  return reports.emplace(id, std::move(r)).first->second;
}

Classifier::Classifier(const Registry& registry, RunOptions options)
    : impl_(std::make_unique<Impl>(registry, options)) {}
Classifier::~Classifier() = default;

const ScenarioReport& Classifier::run(const std::string& id) { return impl_->run(id); }

ClassificationReport Classifier::classify(const std::vector<std::string>& ids) {
  ClassificationReport out;
  out.options = impl_->options;
  for (const auto& id : ids) out.scenarios.push_back(run(id));
  return out;
}

ClassificationReport Classifier::classify_all() {
  std::vector<std::string> ids;
  for (const auto& s : impl_->registry.scenarios())
    if (s.default_path || impl_->options.include_dedicated) ids.push_back(s.id);
  ClassificationReport out = classify(ids);
  for (const auto& [side, expected] : impl_->registry.membership()) {
    std::set<std::string> koszul, other;
    for (const auto& s : out.scenarios) {
      if (to_string(s.side) != side) continue;
      (is_koszul(s.verdict) ? koszul : other).insert(s.operad);
    }
    MembershipOutcome m;
    m.expected = expected;
    std::sort(m.expected.begin(), m.expected.end());
    m.computed.assign(koszul.begin(), koszul.end());
    bool conflict = false;
    for (const auto& n : koszul) conflict |= other.count(n) > 0;
    m.match = !conflict && m.computed == m.expected;
    out.membership[side] = std::move(m);
  }
  return out;
}

ScenarioReport run_scenario(const Registry& registry, const std::string& id, const RunOptions& options) {
  Classifier c(registry, options);
  return c.run(id);
}

ClassificationReport classify_all(const Registry& registry, const RunOptions& options) {
  Classifier c(registry, options);
  return c.classify_all();
}

}  // namespace opk
