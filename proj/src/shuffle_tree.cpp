#include "opk/shuffle_tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_map>

namespace opk {

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(std::vector<Generator> generators, std::vector<std::string> precedence)
    : gens_(std::move(generators)), rank_(gens_.size(), -1) {
  if (gens_.empty() || gens_.size() > 100) throw ShuffleError("signature needs between 1 and 100 generators");
  if (precedence.size() != gens_.size()) throw ShuffleError("precedence must list every generator once");
  for (std::size_t r = 0; r < precedence.size(); ++r) {
    const int g = index_of(precedence[r]);
    if (rank_[static_cast<std::size_t>(g)] >= 0) throw ShuffleError("generator listed twice in precedence");
    rank_[static_cast<std::size_t>(g)] = static_cast<int>(r);
  }
  for (const auto& gen : gens_)
    if (gen.skew == Skew::None && !gen.opposite.empty()) (void)index_of(gen.opposite);
}

Signature Signature::magmatic() {
  return Signature({{"m", 0, Skew::None, "o"}, {"o", 0, Skew::None, "m"}}, {"o", "m"});
}

Signature Signature::polarized(bool bracket_greater) {
  std::vector<std::string> prec = {"c", "b"};
  if (!bracket_greater) std::swap(prec[0], prec[1]);
  return Signature({{"c", 0, Skew::Symmetric, ""}, {"b", 1, Skew::Antisymmetric, ""}}, prec);
}

int Signature::index_of(std::string_view id) const {
  for (std::size_t g = 0; g < gens_.size(); ++g)
    if (gens_[g].id == id) return static_cast<int>(g);
  throw ShuffleError("unknown generator '" + std::string(id) + "'");
}

bool Signature::weight_graded() const {
  return std::any_of(gens_.begin(), gens_.end(), [](const Generator& g) { return g.weight != 0; });
}

std::vector<std::string> Signature::precedence() const {
  std::vector<std::string> out(gens_.size());
  for (std::size_t g = 0; g < gens_.size(); ++g) out[static_cast<std::size_t>(rank_[g])] = gens_[g].id;
  return out;
}

Signature Signature::with_word_order(WordOrder w) const {
  Signature s = *this;
  s.word_order_ = w;
  return s;
}

Signature Signature::with_reversed(bool r) const {
  Signature s = *this;
  s.reversed_ = r;
  return s;
}

bool operator==(const Signature& a, const Signature& b) {
  if (a.gens_.size() != b.gens_.size() || a.rank_ != b.rank_ || a.word_order_ != b.word_order_ ||
      a.reversed_ != b.reversed_)
    return false;
  for (std::size_t g = 0; g < a.gens_.size(); ++g) {
    const auto &x = a.gens_[g], &y = b.gens_[g];
    if (x.id != y.id || x.weight != y.weight || x.skew != y.skew || x.opposite != y.opposite) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Monomials

namespace {

bool is_leaf(char c) { return c < 0; }
int leaf_label(char c) { return -static_cast<int>(c); }
char leaf_char(int label) { return static_cast<char>(-label); }

// Returns the end of the subtree at pos and its smallest leaf, or -1 if malformed.
int check_subtree(std::string_view code, std::size_t pos, int& min_leaf, std::vector<int>& seen) {
  if (pos >= code.size()) return -1;
  const char c = code[pos];
  if (is_leaf(c)) {
    const int l = leaf_label(c);
    if (l > static_cast<int>(seen.size())) seen.resize(static_cast<std::size_t>(l), 0);
    if (seen[static_cast<std::size_t>(l - 1)]++) return -1;
    min_leaf = l;
    return static_cast<int>(pos) + 1;
  }
  int lmin = 0, rmin = 0;
  const int mid = check_subtree(code, pos + 1, lmin, seen);
  if (mid < 0) return -1;
  const int end = check_subtree(code, static_cast<std::size_t>(mid), rmin, seen);
  if (end < 0 || lmin >= rmin) return -1;
  min_leaf = lmin;
  return end;
}

}  // namespace

bool TreeMonomial::is_valid(std::string_view code) {
  if (code.empty() || code.size() % 2 == 0) return false;
  std::vector<int> seen;
  int min_leaf = 0;
  if (check_subtree(code, 0, min_leaf, seen) != static_cast<int>(code.size())) return false;
  return static_cast<int>(seen.size()) == static_cast<int>(code.size() + 1) / 2;
}

TreeMonomial::TreeMonomial(std::string code) : code_(std::move(code)) {
  if (!is_valid(code_)) throw ShuffleError("not a shuffle tree monomial");
}

TreeMonomial make_unchecked(std::string code) { return TreeMonomial(std::move(code), TreeMonomial::Unchecked{}); }

TreeMonomial TreeMonomial::leaf(int label) {
  if (label != 1) throw ShuffleError("a single leaf must carry label 1");
  return TreeMonomial(std::string(1, leaf_char(1)));
}

TreeMonomial TreeMonomial::node(int g, const TreeMonomial& left, const TreeMonomial& right) {
  if (g < 0 || g > 100) throw ShuffleError("generator index out of range");
  return TreeMonomial(std::string(1, static_cast<char>(g)) + left.code_ + right.code_);
}

int TreeMonomial::weight(const Signature& sig) const {
  int w = 0;
  for (char c : code_)
    if (!is_leaf(c)) w += sig.generator(c).weight;
  return w;
}

TreeLayout::TreeLayout(std::string_view code)
    : end(code.size()), min_leaf(code.size()) {
  for (int i = static_cast<int>(code.size()) - 1; i >= 0; --i) {
    const auto u = static_cast<std::size_t>(i);
    if (is_leaf(code[u])) {
      end[u] = i + 1;
      min_leaf[u] = leaf_label(code[u]);
    } else {
      const int r = end[u + 1];
      end[u] = end[static_cast<std::size_t>(r)];
      min_leaf[u] = min_leaf[u + 1];
    }
  }
  // postorder of internal vertices
  std::function<void(int)> walk = [&](int p) {
    if (is_leaf(code[static_cast<std::size_t>(p)])) return;
    walk(p + 1);
    walk(end[static_cast<std::size_t>(p + 1)]);
    postorder.push_back(p);
  };
  if (!code.empty()) walk(0);
}

// ---------------------------------------------------------------------------
// Text

namespace {

void render(const Signature& sig, const std::string& code, std::size_t& pos, std::string& out) {
  const char c = code[pos++];
  if (is_leaf(c)) {
    out += std::to_string(leaf_label(c));
    return;
  }
  out += sig.generator(c).id;
  out += '(';
  render(sig, code, pos, out);
  out += ',';
  render(sig, code, pos, out);
  out += ')';
}

class MonomialParser {
 public:
  MonomialParser(const Signature& sig, std::string_view s) : sig_(sig), s_(s) {}

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ShuffleError("at position " + std::to_string(pos_) + ": " + msg);
  }
  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  std::string subtree() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const int label = std::stoi(std::string(s_.substr(start, pos_ - start)));
      if (label < 1 || label > 100) fail("leaf label out of range");
      return std::string(1, leaf_char(label));
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a generator or a leaf label");
    int g = 0;
    try {
      g = sig_.index_of(s_.substr(start, pos_ - start));
    } catch (const ShuffleError&) {
      pos_ = start;
      fail("unknown generator");
    }
    expect('(');
    std::string code(1, static_cast<char>(g));
    code += subtree();
    expect(',');
    code += subtree();
    expect(')');
    return code;
  }

  TreeMonomial monomial() {
    const std::size_t start = (skip(), pos_);
    std::string code = subtree();
    if (!TreeMonomial::is_valid(code)) {
      pos_ = start;
      fail("not a shuffle tree monomial on leaves 1..n");
    }
    return make_unchecked(std::move(code));
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  TreeElement element() {
    TreeElement e;
    bool first = true;
    for (;;) {
      Rational sign(1);
      const char c = peek();
      if (c == '+' || c == '-') {
        sign = c == '-' ? Rational(-1) : Rational(1);
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      Rational coeff(1);
      skip();
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        // a coefficient is followed by '*'; a bare number is a leaf
        std::size_t q = pos_;
        while (q < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[q])) || s_[q] == '/')) ++q;
        std::size_t r = q;
        while (r < s_.size() && std::isspace(static_cast<unsigned char>(s_[r]))) ++r;
        if (r < s_.size() && s_[r] == '*') {
          auto parsed = Rational::parse(s_.substr(pos_, q - pos_));
          if (!parsed) fail("malformed coefficient");
          coeff = *parsed;
          pos_ = r + 1;
        }
      }
      const TreeMonomial m = monomial();
      if (!e.is_zero() && m.arity() != e.arity()) fail("terms of different arity");
      e.add(m, sign * coeff);
      first = false;
      if (at_end()) return e;
    }
  }

 private:
  const Signature& sig_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_text(const Signature& sig, const TreeMonomial& m) {
  std::string out;
  std::size_t pos = 0;
  render(sig, m.code(), pos, out);
  return out;
}

TreeMonomial parse_monomial(const Signature& sig, std::string_view text) {
  MonomialParser p(sig, text);
  TreeMonomial m = p.monomial();
  if (!p.at_end()) p.fail("trailing input");
  return m;
}

// ---------------------------------------------------------------------------
// Order

std::string order_key(const Signature& sig, const TreeMonomial& m) {
  const std::string& code = m.code();
  const int n = m.arity();
  std::vector<std::string> words(static_cast<std::size_t>(n)), dirs(static_cast<std::size_t>(n));
  std::string word, dir;
  std::function<std::size_t(std::size_t)> walk = [&](std::size_t p) -> std::size_t {
    const char c = code[p];
    if (is_leaf(c)) {
      const auto i = static_cast<std::size_t>(leaf_label(c) - 1);
      words[i] = word;
      dirs[i] = dir;
      return p + 1;
    }
    word.push_back(static_cast<char>(sig.rank(c) + 1));
    dir.push_back('\1');
    const std::size_t mid = walk(p + 1);
    dir.back() = '\2';
    const std::size_t end = walk(mid);
    word.pop_back();
    dir.pop_back();
    return end;
  };
  walk(0);
  std::string key;
  key.reserve(static_cast<std::size_t>(4 * n * n));
  for (const auto& w : words) {
    if (sig.word_order() == WordOrder::GradedLex) {
      key.push_back(static_cast<char>(w.size() + 1));
      key += w;
    } else {
      key += w;
      key.push_back('\0');
    }
  }
  for (const auto& d : dirs) key += d;
  if (sig.reversed()) {
    // complement every byte; the trailing maximal byte keeps a proper prefix greater
    for (auto& c : key) c = static_cast<char>(255 - static_cast<unsigned char>(c));
    key.push_back(static_cast<char>(255));
  }
  return key;
}

std::strong_ordering compare(const Signature& sig, const TreeMonomial& a, const TreeMonomial& b) {
  if (a.arity() != b.arity()) throw ShuffleError("comparing monomials of different arity");
  const int c = order_key(sig, a).compare(order_key(sig, b));
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::uint64_t count_monomials(int generators, int n) {
  if (n < 1) return 0;
  std::uint64_t c = 1;
  for (int i = 1; i < n; ++i) c *= static_cast<std::uint64_t>(generators);
  for (int k = 2 * n - 3; k > 1; k -= 2) c *= static_cast<std::uint64_t>(k);
  return c;
}

std::vector<TreeMonomial> enumerate_monomials(const Signature& sig, int n, std::optional<int> weight) {
  if (n < 1 || n > 12) throw ShuffleError("arity out of range");
  std::unordered_map<unsigned, std::vector<std::string>> memo;
  std::function<const std::vector<std::string>&(unsigned)> trees = [&](unsigned mask) -> const std::vector<std::string>& {
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    std::vector<std::string> out;
    const int low = __builtin_ctz(mask);
    const unsigned rest = mask & (mask - 1);
    if (rest == 0) {
      out.emplace_back(1, leaf_char(low + 1));
    } else {
      // left part contains the smallest label; enumerate subsets of the rest
      for (unsigned sub = rest;; sub = (sub - 1) & rest) {
        const unsigned left = sub | (1u << low), right = mask & ~left;
        if (right != 0) {
          const auto& ls = trees(left);
          const auto& rs = trees(right);
          for (int g = 0; g < sig.size(); ++g)
            for (const auto& l : ls)
              for (const auto& r : rs) out.push_back(std::string(1, static_cast<char>(g)) + l + r);
        }
        if (sub == 0) break;
      }
    }
    return memo.emplace(mask, std::move(out)).first->second;
  };
  const auto& all = trees((1u << n) - 1);
  std::vector<std::pair<std::string, std::string>> keyed;
  keyed.reserve(all.size());
  for (const auto& code : all) {
    TreeMonomial m = make_unchecked(code);
    if (weight && m.weight(sig) != *weight) continue;
    keyed.emplace_back(order_key(sig, m), code);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<TreeMonomial> out;
  out.reserve(keyed.size());
  for (auto& [k, code] : keyed) out.push_back(make_unchecked(std::move(code)));
  return out;
}

// ---------------------------------------------------------------------------
// Composition and divisors

TreeMonomial graft(const TreeMonomial& outer, int slot, const TreeMonomial& inner, const std::vector<int>& inner_labels) {
  const int k = outer.arity(), l = inner.arity(), total = k + l - 1;
  if (slot < 1 || slot > k) throw ShuffleError("graft slot out of range");
  if (static_cast<int>(inner_labels.size()) != l) throw ShuffleError("graft needs one label per inner leaf");
  std::vector<char> used(static_cast<std::size_t>(total) + 1, 0);
  for (std::size_t i = 0; i < inner_labels.size(); ++i) {
    const int x = inner_labels[i];
    if (x < 1 || x > total || used[static_cast<std::size_t>(x)] || (i && x <= inner_labels[i - 1]))
      throw ShuffleError("graft labels must be increasing and within range");
    used[static_cast<std::size_t>(x)] = 1;
  }
  std::vector<int> outer_labels;
  for (int x = 1; x <= total; ++x)
    if (!used[static_cast<std::size_t>(x)]) outer_labels.push_back(x);
  outer_labels.insert(outer_labels.begin() + (slot - 1), inner_labels.front());
  if (!std::is_sorted(outer_labels.begin(), outer_labels.end()))
    throw ShuffleError("graft is not a shuffle composition");
  std::string code;
  for (char c : outer.code()) {
    if (!is_leaf(c)) {
      code.push_back(c);
    } else if (leaf_label(c) == slot) {
      for (char d : inner.code())
        code.push_back(is_leaf(d) ? leaf_char(inner_labels[static_cast<std::size_t>(leaf_label(d) - 1)]) : d);
    } else {
      code.push_back(leaf_char(outer_labels[static_cast<std::size_t>(leaf_label(c) - 1)]));
    }
  }
  return TreeMonomial(std::move(code));
}

namespace {

bool match_at(const std::string& m, const TreeLayout& ml, std::size_t q, const std::string& d, const TreeLayout& dl,
              std::size_t p, Embedding& e) {
  if (is_leaf(d[p])) {
    e.frontier[static_cast<std::size_t>(leaf_label(d[p]) - 1)] = static_cast<int>(q);
    return true;
  }
  if (is_leaf(m[q]) || m[q] != d[p]) return false;
  e.vertex_mask |= std::uint64_t{1} << q;
  return match_at(m, ml, q + 1, d, dl, p + 1, e) &&
         match_at(m, ml, static_cast<std::size_t>(ml.end[q + 1]), d, dl, static_cast<std::size_t>(dl.end[p + 1]), e);
}

}  // namespace

std::vector<Embedding> find_divisors(const TreeMonomial& m, const TreeMonomial& d) {
  std::vector<Embedding> out;
  if (d.arity() < 2 || d.arity() > m.arity()) return out;
  if (m.code().size() > 64) throw ShuffleError("monomial too large");
  const TreeLayout ml(m.code()), dl(d.code());
  for (int v : ml.postorder) {
    Embedding e;
    e.root = v;
    e.frontier.assign(static_cast<std::size_t>(d.arity()), 0);
    if (!match_at(m.code(), ml, static_cast<std::size_t>(v), d.code(), dl, 0, e)) continue;
    bool ordered = true;
    for (std::size_t j = 1; j < e.frontier.size(); ++j)
      if (ml.min_leaf[static_cast<std::size_t>(e.frontier[j - 1])] >
          ml.min_leaf[static_cast<std::size_t>(e.frontier[j])])
        ordered = false;
    if (ordered) out.push_back(std::move(e));
  }
  return out;
}

TreeMonomial substitute(const TreeMonomial& m, const Embedding& e, const TreeMonomial& r) {
  return substitute(m, TreeLayout(m.code()), e, r);
}

TreeMonomial substitute(const TreeMonomial& m, const TreeLayout& ml, const Embedding& e, const TreeMonomial& r) {
  if (static_cast<int>(e.frontier.size()) != r.arity()) throw ShuffleError("replacement has the wrong arity");
  const auto root = static_cast<std::size_t>(e.root);
  std::string code = m.code().substr(0, root);
  for (char c : r.code()) {
    if (!is_leaf(c)) {
      code.push_back(c);
    } else {
      const auto p = static_cast<std::size_t>(e.frontier[static_cast<std::size_t>(leaf_label(c) - 1)]);
      code.append(m.code(), p, static_cast<std::size_t>(ml.end[p]) - p);
    }
  }
  code.append(m.code(), static_cast<std::size_t>(ml.end[root]), std::string::npos);
  return make_unchecked(std::move(code));
}

namespace {

void connected_sets(const std::string& code, const TreeLayout& lay, int u, int budget, std::vector<std::uint64_t>& out) {
  const auto bit = std::uint64_t{1} << u;
  const int l = u + 1, r = lay.end[static_cast<std::size_t>(u + 1)];
  std::vector<std::uint64_t> lefts{0}, rights{0};
  if (budget > 1 && !is_leaf(code[static_cast<std::size_t>(l)])) connected_sets(code, lay, l, budget - 1, lefts);
  if (budget > 1 && !is_leaf(code[static_cast<std::size_t>(r)])) connected_sets(code, lay, r, budget - 1, rights);
  for (auto a : lefts)
    for (auto b : rights)
      if (1 + __builtin_popcountll(a) + __builtin_popcountll(b) <= budget) out.push_back(bit | a | b);
}

}  // namespace

std::vector<std::pair<TreeMonomial, Embedding>> rooted_divisors(const TreeMonomial& m, const TreeLayout& lay, int root,
                                                                int max_internal) {
  std::vector<std::pair<TreeMonomial, Embedding>> out;
  const std::string& code = m.code();
  if (max_internal < 1 || is_leaf(code[static_cast<std::size_t>(root)])) return out;
  std::vector<std::uint64_t> sets;
  connected_sets(code, lay, root, max_internal, sets);
  for (auto mask : sets) {
    std::string pattern;
    std::vector<int> frontier;  // in preorder
    std::vector<std::size_t> slots;
    std::vector<std::size_t> stack{static_cast<std::size_t>(root)};
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      if (mask >> p & 1) {
        pattern.push_back(code[p]);
        stack.push_back(static_cast<std::size_t>(lay.end[p + 1]));
        stack.push_back(p + 1);
      } else {
        slots.push_back(pattern.size());
        pattern.push_back('\0');
        frontier.push_back(static_cast<int>(p));
      }
    }
    std::vector<int> order(frontier.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return lay.min_leaf[static_cast<std::size_t>(frontier[static_cast<std::size_t>(a)])] <
             lay.min_leaf[static_cast<std::size_t>(frontier[static_cast<std::size_t>(b)])];
    });
    Embedding e;
    e.root = root;
    e.vertex_mask = mask;
    e.frontier.resize(frontier.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      const auto i = static_cast<std::size_t>(order[rank]);
      pattern[slots[i]] = leaf_char(static_cast<int>(rank) + 1);
      e.frontier[rank] = frontier[i];
    }
    out.emplace_back(make_unchecked(std::move(pattern)), std::move(e));
  }
  return out;
}

std::vector<CommonMultiple> common_multiples(const Signature& sig, const TreeMonomial& d1, const TreeMonomial& d2,
                                             int max_arity) {
  std::vector<CommonMultiple> out;
  const int lo = std::max(d1.arity(), d2.arity()), hi = std::min(max_arity, d1.arity() + d2.arity() - 2);
  for (int n = lo; n <= hi; ++n) {
    for (const auto& m : enumerate_monomials(sig, n)) {
      const auto e1 = find_divisors(m, d1);
      if (e1.empty()) continue;
      const auto e2 = find_divisors(m, d2);
      const std::uint64_t full = [&] {
        std::uint64_t f = 0;
        for (std::size_t p = 0; p < m.code().size(); ++p)
          if (!is_leaf(m.code()[p])) f |= std::uint64_t{1} << p;
        return f;
      }();
      for (std::size_t i = 0; i < e1.size(); ++i)
        for (std::size_t j = d1 == d2 ? i + 1 : 0; j < e2.size(); ++j) {
          const auto &a = e1[i], &b = e2[j];
          if (a == b || !(a.vertex_mask & b.vertex_mask) || (a.vertex_mask | b.vertex_mask) != full) continue;
          out.push_back({m, a, b});
        }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elements

TreeElement::TreeElement(const TreeMonomial& m, const Rational& c) { add(m, c); }

void TreeElement::add(const TreeMonomial& m, const Rational& c) {
  if (c.is_zero()) return;
  if (!terms_.empty() && terms_.begin()->first.arity() != m.arity())
    throw ShuffleError("adding monomials of different arity");
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int TreeElement::arity() const { return terms_.empty() ? 0 : terms_.begin()->first.arity(); }

Rational TreeElement::coefficient(const TreeMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

const TreeMonomial& TreeElement::leading(const Signature& sig) const {
  if (terms_.empty()) throw ShuffleError("zero element has no leading monomial");
  const TreeMonomial* best = nullptr;
  std::string best_key;
  for (const auto& [m, c] : terms_) {
    std::string k = order_key(sig, m);
    if (!best || k > best_key) {
      best = &m;
      best_key = std::move(k);
    }
  }
  return *best;
}

std::vector<std::pair<TreeMonomial, Rational>> TreeElement::sorted_terms(const Signature& sig) const {
  std::vector<std::tuple<std::string, TreeMonomial, Rational>> keyed;
  for (const auto& [m, c] : terms_) keyed.emplace_back(order_key(sig, m), m, c);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
  std::vector<std::pair<TreeMonomial, Rational>> out;
  for (auto& [k, m, c] : keyed) out.emplace_back(std::move(m), std::move(c));
  return out;
}

TreeElement& TreeElement::operator+=(const TreeElement& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

TreeElement& TreeElement::operator-=(const TreeElement& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

TreeElement operator*(const Rational& c, const TreeElement& a) {
  TreeElement out;
  if (c.is_zero()) return out;
  out.terms_ = a.terms_;
  for (auto& t : out.terms_) t.second *= c;
  return out;
}

std::string to_text(const Signature& sig, const TreeElement& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : e.sorted_terms(sig)) {
    Rational a = c;
    if (a.sign() < 0) {
      out += out.empty() ? "-" : " - ";
      a = -a;
    } else if (!out.empty()) {
      out += " + ";
    }
    if (!a.is_one()) out += a.str() + "*";
    out += to_text(sig, m);
  }
  return out;
}

TreeElement parse_element(const Signature& sig, std::string_view text) {
  MonomialParser p(sig, text);
  return p.element();
}

// ---------------------------------------------------------------------------
// Symmetric relations

namespace {

struct Sub {
  std::string code;
  int min;
};

int find_skew(const Signature& sig, Skew s) {
  for (int g = 0; g < sig.size(); ++g)
    if (sig.generator(g).skew == s && (s != Skew::None || !sig.generator(g).opposite.empty())) return g;
  throw ShuffleError("signature lacks a generator of the required symmetry");
}

Sub lf(int i) { return {std::string(1, leaf_char(i)), i}; }

// Symmetric-operad operation g applied to (x, y), returned as a signed
// shuffle monomial.
Sub apply_sym(const Signature& sig, int g, const Sub& x, const Sub& y, Rational& sign) {
  if (x.min < y.min) return {std::string(1, static_cast<char>(g)) + x.code + y.code, x.min};
  const Generator& gen = sig.generator(g);
  int h = g;
  switch (gen.skew) {
    case Skew::Symmetric: break;
    case Skew::Antisymmetric: sign = -sign; break;
    case Skew::None: h = sig.index_of(gen.opposite); break;
  }
  return {std::string(1, static_cast<char>(h)) + y.code + x.code, y.min};
}

}  // namespace

std::pair<Rational, TreeMonomial> cubic_basis_monomial(const Signature& sig, CubicSpace space, int k) {
  Rational sign(1);
  Sub t;
  if (space == CubicSpace::Magmatic12) {
    const int g = find_skew(sig, Skew::None);
    const auto& s = s3_elements()[static_cast<std::size_t>(k % 6)];
    if (k < 6)
      t = apply_sym(sig, g, apply_sym(sig, g, lf(s(1)), lf(s(2)), sign), lf(s(3)), sign);
    else
      t = apply_sym(sig, g, lf(s(1)), apply_sym(sig, g, lf(s(2)), lf(s(3)), sign), sign);
  } else if (space == CubicSpace::Polarized12) {
    const int c = find_skew(sig, Skew::Symmetric), b = find_skew(sig, Skew::Antisymmetric);
    const int shape = k / 4, root = (k & 2) ? b : c, inner = (k & 1) ? b : c;
    switch (shape) {
      case 0: t = apply_sym(sig, root, apply_sym(sig, inner, lf(1), lf(2), sign), lf(3), sign); break;
      case 1: t = apply_sym(sig, root, apply_sym(sig, inner, lf(1), lf(3), sign), lf(2), sign); break;
      default: t = apply_sym(sig, root, lf(1), apply_sym(sig, inner, lf(2), lf(3), sign), sign); break;
    }
  } else {
    throw ShuffleError("associative-6 relations have no shuffle form over two generators");
  }
  return {sign, TreeMonomial(t.code)};
}

TreeElement cubic_to_tree(const Signature& sig, const CubicVector& v) {
  TreeElement e;
  for (Eigen::Index k = 0; k < v.coords.size(); ++k) {
    if (v.coords(k).is_zero()) continue;
    const auto [sign, m] = cubic_basis_monomial(sig, v.space, static_cast<int>(k));
    e.add(m, sign * v.coords(k));
  }
  return e;
}

CubicVector tree_to_cubic(const Signature& sig, CubicSpace space, const TreeElement& e) {
  std::map<TreeMonomial, std::pair<int, Rational>> index;
  for (int k = 0; k < cubic_dim(space); ++k) {
    auto [sign, m] = cubic_basis_monomial(sig, space, k);
    index.emplace(m, std::make_pair(k, sign));
  }
  auto v = CubicVector::zero(space);
  for (const auto& [m, c] : e.terms()) {
    auto it = index.find(m);
    if (it == index.end()) throw ShuffleError("monomial " + to_text(sig, m) + " has no cubic counterpart");
    v.coords(it->second.first) += c * it->second.second;
  }
  return v;
}

std::vector<TreeElement> symmetric_to_shuffle(const Signature& sig, const std::vector<CubicVector>& relations) {
  std::vector<TreeElement> out;
  for (const auto& r : relations)
    for (const auto& s : s3_elements()) {
      TreeElement e = cubic_to_tree(sig, s3_act(s, r));
      if (e.is_zero() || std::find(out.begin(), out.end(), e) != out.end()) continue;
      out.push_back(std::move(e));
    }
  return out;
}

}  // namespace opk
