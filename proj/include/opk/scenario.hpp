#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "opk/koszul_duality.hpp"

namespace opk {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// KoszulByDuality: the Koszul dual carries the evidence. InconclusiveAtBound:
/// the deciding evidence needs a larger arity, series order or budget.
enum class Verdict { Koszul, NotKoszul, KoszulByDuality, Inconclusive, InconclusiveAtBound };
std::string to_string(Verdict v);
Verdict parse_verdict(const std::string& s);
inline bool is_koszul(Verdict v) { return v == Verdict::Koszul || v == Verdict::KoszulByDuality; }

enum class Side { AssociativeQuotient, MagmaticQuotient };
std::string to_string(Side s);
Side parse_side(const std::string& s);

/// Signature and monomial order used for the shuffle presentation.
struct OrderConfig {
  bool polarized = true;
  bool bracket_greater = true;  // polarized only
  bool reversed = false;

  Signature signature() const;
  friend bool operator==(const OrderConfig&, const OrderConfig&) = default;
};

/// Relation families (ids of family_relations) with an optional parameter
/// used by the parametric ones. The associative side adds associativity.
struct Recipe {
  Side side = Side::AssociativeQuotient;
  std::vector<std::string> families;
  std::optional<ProjectiveParameter> param;

  QuadraticPresentation build() const;
};

struct Check {
  std::string kind;
  std::string anchor;  // result the check reproduces
  nlohmann::json args;  // kind-specific fields as stored in the registry
};

struct Scenario {
  std::string id;
  std::string operad;  // name used by the membership lists
  Recipe recipe;
  OrderConfig order;
  std::vector<std::string> anchors;
  std::vector<Check> checks;
  Verdict expected = Verdict::Inconclusive;
  bool default_path = true;
};

/// Check kinds understood by the runner.
const std::vector<std::string>& check_kinds();
/// Anchors every registry must reference at least once.
const std::vector<std::string>& required_anchors();

class Registry {
 public:
  static Registry from_json(const nlohmann::json& j);
  static Registry load(const std::string& path);
  /// The registry shipped in the data directory.
  static const Registry& shipped();

  const std::vector<Scenario>& scenarios() const { return scenarios_; }
  const Scenario& find(const std::string& id) const;
  bool contains(const std::string& id) const;
  /// Koszul operads per side ("associative-quotient", "magmatic-quotient").
  const std::map<std::string, std::vector<std::string>>& membership() const { return membership_; }
  int version() const { return version_; }

  /// Problems with the registry: unknown kinds, missing anchors, unknown
  /// partners or families. Empty when consistent.
  std::vector<std::string> self_test() const;

 private:
  int version_ = 0;
  std::vector<Scenario> scenarios_;
  std::map<std::string, std::vector<std::string>> membership_;
};

struct RunOptions {
  int max_arity = 6;
  int series_order = 12;
  std::uint64_t monomial_budget = 2'000'000;
  bool include_dedicated = false;  // run scenarios outside the default path
};

struct CheckOutcome {
  std::string kind, anchor;
  std::string status;  // pass | fail | inconclusive-at-bound
  nlohmann::json detail;
};

struct ScenarioReport {
  std::string id, operad;
  Side side = Side::AssociativeQuotient;
  std::optional<std::string> parameter;
  std::vector<std::string> anchors;
  Verdict expected = Verdict::Inconclusive, verdict = Verdict::Inconclusive;
  std::string status;  // pass | fail | inconclusive-at-bound
  std::string reason;  // evidence behind the verdict
  std::vector<CheckOutcome> checks;
  double seconds = 0;
};

struct MembershipOutcome {
  std::vector<std::string> expected, computed;
  bool match = false;
};

struct ClassificationReport {
  RunOptions options;
  std::vector<ScenarioReport> scenarios;
  std::map<std::string, MembershipOutcome> membership;
  /// No failed scenario and matching membership lists.
  bool ok() const;
};

nlohmann::json to_json(const ScenarioReport& r, bool with_timing = true);
nlohmann::json to_json(const ClassificationReport& r, bool with_timing = true);
ClassificationReport classification_from_json(const nlohmann::json& j);

/// Runs scenarios and caches Groebner bases and partner verdicts across
/// them.
class Classifier {
 public:
  Classifier(const Registry& registry, RunOptions options);
  ~Classifier();
  Classifier(const Classifier&) = delete;
  Classifier& operator=(const Classifier&) = delete;

  const ScenarioReport& run(const std::string& id);
  ClassificationReport classify_all();
  ClassificationReport classify(const std::vector<std::string>& ids);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

ScenarioReport run_scenario(const Registry& registry, const std::string& id, const RunOptions& options = {});
ClassificationReport classify_all(const Registry& registry, const RunOptions& options = {});

}  // namespace opk
