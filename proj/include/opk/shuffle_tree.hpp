#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "opk/rational.hpp"
#include "opk/s3.hpp"

namespace opk {

class ShuffleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Symmetry of the symmetric-operad operation a generator comes from; used
/// only when translating symmetric relations into shuffle relations.
enum class Skew { None, Symmetric, Antisymmetric };

struct Generator {
  std::string id;
  int weight = 0;
  Skew skew = Skew::None;
  /// For Skew::None: the generator representing the operation with swapped
  /// arguments (for the magmatic pair, m(x,y) = xy and o(x,y) = yx).
  std::string opposite;
};

/// How root-to-leaf words are compared: Lex is plain lexicographic with a
/// proper prefix smaller than its extensions; GradedLex compares lengths
/// first (longer is greater), then letters.
enum class WordOrder { Lex, GradedLex };

class Signature {
 public:
  /// precedence lists generator ids from smallest to greatest.
  Signature(std::vector<Generator> generators, std::vector<std::string> precedence);

  /// Generators m (a1 a2) and o (a2 a1), precedence o < m.
  static Signature magmatic();
  /// Generators c (symmetric product, weight 0) and b (bracket, weight 1);
  /// bracket_greater selects b > c.
  static Signature polarized(bool bracket_greater = true);

  int size() const { return static_cast<int>(gens_.size()); }
  const Generator& generator(int g) const { return gens_[static_cast<std::size_t>(g)]; }
  int index_of(std::string_view id) const;
  /// Position in the precedence order, 0 = smallest.
  int rank(int g) const { return rank_[static_cast<std::size_t>(g)]; }
  bool weight_graded() const;
  std::vector<std::string> precedence() const;

  WordOrder word_order() const { return word_order_; }
  Signature with_word_order(WordOrder w) const;
  /// The opposite of the path order; still compatible with composition.
  bool reversed() const { return reversed_; }
  Signature with_reversed(bool r) const;

  friend bool operator==(const Signature&, const Signature&);

 private:
  std::vector<Generator> gens_;
  std::vector<int> rank_;
  WordOrder word_order_ = WordOrder::GradedLex;
  bool reversed_ = false;
};

/// Shuffle tree monomial in preorder encoding: a byte g >= 0 is an internal
/// vertex labeled by generator g, a byte -i is the leaf labeled i. At every
/// internal vertex the smallest leaf of the left subtree is smaller than the
/// smallest leaf of the right subtree, so the planar form is canonical and
/// equality is structural.
class TreeMonomial {
 public:
  TreeMonomial() = default;
  /// Throws ShuffleError unless code is a valid shuffle tree on 1..n.
  explicit TreeMonomial(std::string code);
  static TreeMonomial leaf(int label);
  /// g(left, right); the labels of left and right must be disjoint and the
  /// shuffle condition must hold.
  static TreeMonomial node(int g, const TreeMonomial& left, const TreeMonomial& right);

  const std::string& code() const { return code_; }
  int arity() const { return (static_cast<int>(code_.size()) + 1) / 2; }
  int internal_count() const { return arity() - 1; }
  int weight(const Signature& sig) const;

  friend bool operator==(const TreeMonomial&, const TreeMonomial&) = default;
  /// Structural order (for containers); see compare() for the monomial order.
  friend bool operator<(const TreeMonomial& a, const TreeMonomial& b) { return a.code_ < b.code_; }

  /// Validates an arbitrary code string.
  static bool is_valid(std::string_view code);

 private:
  struct Unchecked {};
  TreeMonomial(std::string code, Unchecked) : code_(std::move(code)) {}
  friend TreeMonomial make_unchecked(std::string code);
  std::string code_;
};

/// Wraps a code already known to be valid (no check).
TreeMonomial make_unchecked(std::string code);

struct TreeMonomialHash {
  std::size_t operator()(const TreeMonomial& m) const { return std::hash<std::string>()(m.code()); }
};

/// Nested text form, e.g. "b(b(1,3),2)".
std::string to_text(const Signature& sig, const TreeMonomial& m);
TreeMonomial parse_monomial(const Signature& sig, std::string_view text);

/// Graded path-lexicographic order. For each leaf i = 1..n the root-to-leaf
/// word of generators is compared, longer words being greater and equal
/// lengths compared letterwise by precedence; ties are broken by the
/// left/right direction sequences of the leaves (left < right).
std::string order_key(const Signature& sig, const TreeMonomial& m);
std::strong_ordering compare(const Signature& sig, const TreeMonomial& a, const TreeMonomial& b);

/// All shuffle tree monomials of arity n (optionally of one weight), sorted
/// increasingly by the monomial order.
std::vector<TreeMonomial> enumerate_monomials(const Signature& sig, int n, std::optional<int> weight = std::nullopt);
/// Number of arity-n monomials, g^(n-1) (2n-3)!!.
std::uint64_t count_monomials(int generators, int n);

/// Shuffle composition: inner is substituted at leaf `slot` of outer and its
/// leaves receive the labels in `inner_labels` (increasing); the remaining
/// labels go to the other leaves of outer, in order. Throws ShuffleError
/// unless the relabeling of outer is monotone.
TreeMonomial graft(const TreeMonomial& outer, int slot, const TreeMonomial& inner,
                   const std::vector<int>& inner_labels);

/// Occurrence of a divisor: internal vertices (code positions) covered, the
/// root position, and for each leaf label j of the divisor the code position
/// of the subtree of m substituted for it.
struct Embedding {
  int root = 0;
  std::uint64_t vertex_mask = 0;  // bit p set for covered internal positions
  std::vector<int> frontier;      // frontier[j-1] = subtree position for divisor leaf j
  friend bool operator==(const Embedding&, const Embedding&) = default;
};

/// Subtree end position and smallest leaf for every code position, and the
/// internal positions in postorder.
struct TreeLayout {
  std::vector<int> end, min_leaf, postorder;
  explicit TreeLayout(std::string_view code);
};

/// Every connected set of at most max_internal internal vertices rooted at
/// `root`, with the standardized divisor it exhibits.
std::vector<std::pair<TreeMonomial, Embedding>> rooted_divisors(const TreeMonomial& m, const TreeLayout& layout,
                                                                int root, int max_internal);

/// All occurrences of d in m, ordered by the postorder position of their root.
std::vector<Embedding> find_divisors(const TreeMonomial& m, const TreeMonomial& d);
/// Replace the occurrence e in m by r (same arity as the divisor).
TreeMonomial substitute(const TreeMonomial& m, const Embedding& e, const TreeMonomial& r);
TreeMonomial substitute(const TreeMonomial& m, const TreeLayout& layout, const Embedding& e, const TreeMonomial& r);

/// Monomial with a pair of overlapping embeddings whose vertices together
/// cover the whole monomial.
struct CommonMultiple {
  TreeMonomial monomial;
  Embedding first, second;
};
std::vector<CommonMultiple> common_multiples(const Signature& sig, const TreeMonomial& d1, const TreeMonomial& d2,
                                             int max_arity);

/// Rational combination of monomials of one arity.
class TreeElement {
 public:
  TreeElement() = default;
  explicit TreeElement(const TreeMonomial& m, const Rational& c = Rational(1));

  void add(const TreeMonomial& m, const Rational& c);
  bool is_zero() const { return terms_.empty(); }
  int arity() const;
  std::size_t size() const { return terms_.size(); }
  const std::map<TreeMonomial, Rational>& terms() const { return terms_; }
  Rational coefficient(const TreeMonomial& m) const;

  /// Greatest monomial under the monomial order.
  const TreeMonomial& leading(const Signature& sig) const;
  /// Terms sorted decreasingly by the monomial order.
  std::vector<std::pair<TreeMonomial, Rational>> sorted_terms(const Signature& sig) const;

  TreeElement& operator+=(const TreeElement& o);
  TreeElement& operator-=(const TreeElement& o);
  friend TreeElement operator+(TreeElement a, const TreeElement& b) { return a += b; }
  friend TreeElement operator-(TreeElement a, const TreeElement& b) { return a -= b; }
  friend TreeElement operator*(const Rational& c, const TreeElement& a);
  friend bool operator==(const TreeElement&, const TreeElement&) = default;

 private:
  std::map<TreeMonomial, Rational> terms_;
};

std::string to_text(const Signature& sig, const TreeElement& e);
/// Parses "c*mono +/- c*mono ..." with monomials in nested text form.
TreeElement parse_element(const Signature& sig, std::string_view text);

/// Shuffle monomial (with sign) of a basis element of a 12-dimensional cubic
/// space: Magmatic12 needs a generator without symmetry and its opposite,
/// Polarized12 a symmetric and an antisymmetric generator.
std::pair<Rational, TreeMonomial> cubic_basis_monomial(const Signature& sig, CubicSpace space, int k);
TreeElement cubic_to_tree(const Signature& sig, const CubicVector& v);
/// Inverse of cubic_to_tree on arity-three elements.
CubicVector tree_to_cubic(const Signature& sig, CubicSpace space, const TreeElement& e);

/// Shuffle relations of the S3-orbits of the given symmetric relations:
/// every translate is rewritten in shuffle monomials and the distinct
/// nonzero results are returned.
std::vector<TreeElement> symmetric_to_shuffle(const Signature& sig, const std::vector<CubicVector>& relations);

}  // namespace opk
