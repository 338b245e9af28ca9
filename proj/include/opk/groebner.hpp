#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "opk/shuffle_tree.hpp"

namespace opk {

/// Raised before enumerating an arity whose free component exceeds the
/// configured monomial budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(int arity, std::uint64_t monomials, std::uint64_t budget);
  int arity() const { return arity_; }

 private:
  int arity_;
};

/// Arity-homogeneous relations (arity >= 3) over a signature; the signature
/// precedence fixes the monomial order.
struct ShufflePresentation {
  Signature signature;
  std::vector<TreeElement> relations;
};

/// lead -> tail, i.e. the relation lead - tail = 0 with every tail monomial
/// smaller than lead.
struct RewriteRule {
  TreeMonomial lead;
  TreeElement tail;
  TreeElement relation() const;
};

class GroebnerBasis {
 public:
  explicit GroebnerBasis(Signature sig) : sig_(std::move(sig)) {}

  const Signature& signature() const { return sig_; }
  /// Sorted by arity, then by leading monomial.
  const std::vector<RewriteRule>& rules() const { return rules_; }
  std::vector<RewriteRule> rules_of_arity(int n) const;
  /// All critical pairs of arity <= completed_through() reduce to zero.
  int completed_through() const { return completed_through_; }
  bool interreduced() const { return true; }

  /// Rule whose lead is exactly m, if any.
  std::optional<int> rule_with_lead(const TreeMonomial& m) const;
  /// Largest number of internal vertices of a lead.
  int max_lead_internal() const { return max_internal_; }

 private:
  friend class Completion;
  void append(RewriteRule r);

  Signature sig_;
  std::vector<RewriteRule> rules_;
  std::unordered_map<std::string, int> by_lead_;
  int max_internal_ = 0;
  int completed_through_ = 2;
};

struct ArityLevel {
  int arity = 0;
  std::uint64_t monomials = 0;
  std::uint64_t s_elements = 0;
  int rules_added = 0;
  std::uint64_t dim = 0;
  std::map<int, std::uint64_t> dims_by_weight;
};

struct CompletionReport {
  std::vector<ArityLevel> levels;  // arities 1..completed_through
  int completed_through = 0;
  std::vector<std::uint64_t> dims() const;
};

struct CompletionOptions {
  int max_arity = 6;
  std::uint64_t monomial_budget = 2'000'000;
};

/// Buchberger completion by increasing arity up to options.max_arity. Each
/// level reduces all critical pairs and the input relations of that arity
/// and adds the reduced echelon form of the results as new rules.
std::pair<GroebnerBasis, CompletionReport> complete(const ShufflePresentation& p, const CompletionOptions& options = {});

/// Rewrites with the first rule (in rules() order) that applies, at its
/// leftmost-innermost occurrence, until no lead divides.
TreeElement normal_form(const TreeElement& e, const GroebnerBasis& g);
bool is_normal(const TreeMonomial& m, const GroebnerBasis& g);

/// Unreduced S-elements at arity n: for every monomial carrying two
/// overlapping lead occurrences that together cover it, the difference of
/// the two one-step rewrites.
std::vector<TreeElement> critical_pairs(const GroebnerBasis& g, int n);

/// Normal monomial counts for arities 1..up_to; throws std::invalid_argument
/// if the basis is not completed that far.
std::vector<std::uint64_t> component_dims(const GroebnerBasis& g, int up_to);
std::vector<std::map<int, std::uint64_t>> component_dims_by_weight(const GroebnerBasis& g, int up_to);

struct QuadraticCertificate {
  bool holds = false;
  std::optional<TreeElement> witness;  // first S-element with nonzero normal form
  std::uint64_t s_elements = 0;
};

/// Whether the reduced quadratic rules form a Groebner basis, i.e. every
/// arity-4 critical pair reduces to zero. Requires arity-3 relations only.
QuadraticCertificate quadratic_gb_certificate(const ShufflePresentation& p);

nlohmann::json to_json(const Signature& sig);
nlohmann::json to_json(const GroebnerBasis& g, const CompletionReport& report);

}  // namespace opk
