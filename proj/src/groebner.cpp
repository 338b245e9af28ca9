#include "opk/groebner.hpp"

#include <algorithm>
#include <functional>

namespace opk {

BudgetExceeded::BudgetExceeded(int arity, std::uint64_t monomials, std::uint64_t budget)
    : std::runtime_error("arity " + std::to_string(arity) + " has " + std::to_string(monomials) +
                         " monomials, above the budget of " + std::to_string(budget)),
      arity_(arity) {}

TreeElement RewriteRule::relation() const {
  TreeElement e(lead);
  e -= tail;
  return e;
}

void GroebnerBasis::append(RewriteRule r) {
  by_lead_[r.lead.code()] = static_cast<int>(rules_.size());
  max_internal_ = std::max(max_internal_, r.lead.internal_count());
  rules_.push_back(std::move(r));
}

std::vector<RewriteRule> GroebnerBasis::rules_of_arity(int n) const {
  std::vector<RewriteRule> out;
  for (const auto& r : rules_)
    if (r.lead.arity() == n) out.push_back(r);
  return out;
}

std::optional<int> GroebnerBasis::rule_with_lead(const TreeMonomial& m) const {
  auto it = by_lead_.find(m.code());
  if (it == by_lead_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint64_t> CompletionReport::dims() const {
  std::vector<std::uint64_t> out;
  for (const auto& l : levels) out.push_back(l.dim);
  return out;
}

namespace {

// Sparse vector over monomial ids, sorted by decreasing id.
using Row = std::vector<std::pair<int, Rational>>;
using Accumulator = std::map<int, Rational, std::greater<int>>;

void accumulate(Accumulator& acc, int id, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.emplace(id, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

Row to_row(Accumulator&& acc) {
  Row r;
  r.reserve(acc.size());
  for (auto& [id, c] : acc) r.emplace_back(id, std::move(c));
  return r;
}

// r + c * p
Row axpy(const Row& r, const Rational& c, const Row& p) {
  Row out;
  out.reserve(r.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first > p[j].first)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || p[j].first > r[i].first) {
      out.emplace_back(p[j].first, c * p[j].second);
      ++j;
    } else {
      Rational x = r[i].second + c * p[j].second;
      if (!x.is_zero()) out.emplace_back(r[i].first, std::move(x));
      ++i;
      ++j;
    }
  }
  return out;
}

class MonomialTable {
 public:
  MonomialTable() = default;
  explicit MonomialTable(std::vector<TreeMonomial> sorted) : mons_(std::move(sorted)), frozen_(true) {
    ids_.reserve(mons_.size());
    for (std::size_t i = 0; i < mons_.size(); ++i) ids_.emplace(mons_[i].code(), static_cast<int>(i));
  }

  int id(const TreeMonomial& m) {
    auto it = ids_.find(m.code());
    if (it != ids_.end()) return it->second;
    if (frozen_) throw std::logic_error("monomial outside the enumerated component");
    const int k = static_cast<int>(mons_.size());
    mons_.push_back(m);
    ids_.emplace(m.code(), k);
    return k;
  }
  const TreeMonomial& at(int id) const { return mons_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return mons_.size(); }

 private:
  std::vector<TreeMonomial> mons_;
  std::unordered_map<std::string, int> ids_;
  bool frozen_ = false;
};

struct Occurrence {
  int rule;
  Embedding emb;
};

// Lead occurrences in m, in postorder of their roots.
std::vector<Occurrence> occurrences(const GroebnerBasis& g, const TreeMonomial& m, const TreeLayout& lay) {
  std::vector<Occurrence> out;
  if (g.rules().empty()) return out;
  for (int root : lay.postorder)
    for (auto& [pat, emb] : rooted_divisors(m, lay, root, g.max_lead_internal()))
      if (auto r = g.rule_with_lead(pat)) out.push_back({*r, std::move(emb)});
  return out;
}

// First rule in rules() order, at its leftmost-innermost occurrence.
std::optional<Occurrence> first_occurrence(const GroebnerBasis& g, const TreeMonomial& m, const TreeLayout& lay) {
  std::optional<Occurrence> best;
  for (auto& o : occurrences(g, m, lay))
    if (!best || o.rule < best->rule) best = std::move(o);
  return best;
}

std::uint64_t internal_mask(const TreeMonomial& m) {
  std::uint64_t f = 0;
  for (std::size_t p = 0; p < m.code().size(); ++p)
    if (m.code()[p] >= 0) f |= std::uint64_t{1} << p;
  return f;
}

class Reducer {
 public:
  Reducer(const GroebnerBasis& g, MonomialTable& table) : g_(g), table_(table) {}

  // Lead replaced by tail at the occurrence.
  Row rewrite(int id, const TreeLayout& lay, const Occurrence& o) {
    const TreeMonomial m = table_.at(id);
    Accumulator acc;
    for (const auto& [t, c] : g_.rules()[static_cast<std::size_t>(o.rule)].tail.terms())
      accumulate(acc, table_.id(substitute(m, lay, o.emb, t)), c);
    return to_row(std::move(acc));
  }

  const Row& nf(int root) {
    if (auto it = memo_.find(root); it != memo_.end()) return it->second;
    std::vector<int> stack{root};
    std::unordered_map<int, Row> pending;
    while (!stack.empty()) {
      const int id = stack.back();
      if (memo_.count(id)) {
        stack.pop_back();
        continue;
      }
      auto it = pending.find(id);
      if (it == pending.end()) {
        const TreeMonomial m = table_.at(id);
        const TreeLayout lay(m.code());
        const auto occ = first_occurrence(g_, m, lay);
        if (!occ) {
          memo_.emplace(id, Row{{id, Rational(1)}});
          stack.pop_back();
          continue;
        }
        Row r = rewrite(id, lay, *occ);
        bool ready = true;
        for (const auto& [j, c] : r)
          if (!memo_.count(j)) {
            stack.push_back(j);
            ready = false;
          }
        it = pending.emplace(id, std::move(r)).first;
        if (!ready) continue;
      }
      memo_.emplace(id, combine(it->second));
      pending.erase(it);
      stack.pop_back();
    }
    return memo_.at(root);
  }

  Row reduce(const Row& r) {
    for (const auto& [id, c] : r) (void)nf(id);
    return combine(r);
  }

 private:
  Row combine(const Row& r) {
    Accumulator acc;
    for (const auto& [id, c] : r)
      for (const auto& [j, x] : memo_.at(id)) accumulate(acc, j, c * x);
    return to_row(std::move(acc));
  }

  const GroebnerBasis& g_;
  MonomialTable& table_;
  std::unordered_map<int, Row> memo_;
};

// Reduced row echelon form with pivots at the largest ids.
class Echelon {
 public:
  void add(Row r) {
    while (!r.empty()) {
      auto it = pivots_.find(r.front().first);
      if (it == pivots_.end()) break;
      r = axpy(r, -r.front().second, it->second);
    }
    if (r.empty()) return;
    const Rational inv = Rational(1) / r.front().second;
    for (auto& [id, c] : r) c *= inv;
    pivots_.emplace(r.front().first, std::move(r));
  }

  // Rows in increasing pivot order, each free of the other pivots.
  std::vector<Row> finish() {
    std::vector<Row> out;
    for (auto& [lead, row] : pivots_) {
      Accumulator acc;
      for (const auto& [id, c] : row) accumulate(acc, id, c);
      for (const auto& [id, c] : row) {
        if (id == lead) continue;
        auto it = pivots_.find(id);
        if (it == pivots_.end()) continue;
        for (const auto& [j, x] : it->second) accumulate(acc, j, -c * x);
      }
      row = to_row(std::move(acc));
      out.push_back(row);
    }
    return out;
  }

 private:
  std::map<int, Row> pivots_;
};

Row element_row(const TreeElement& e, MonomialTable& table) {
  Accumulator acc;
  for (const auto& [m, c] : e.terms()) accumulate(acc, table.id(m), c);
  return to_row(std::move(acc));
}

TreeElement row_element(const Row& r, const MonomialTable& table) {
  TreeElement e;
  for (const auto& [id, c] : r) e.add(table.at(id), c);
  return e;
}

// S-elements of monomial id, passed to f as unreduced rows.
template <class F>
void for_each_s_element(const GroebnerBasis& g, MonomialTable& table, Reducer& red, int id,
                        const std::vector<Occurrence>& occ, const TreeLayout& lay, F&& f) {
  if (occ.size() < 2) return;
  const std::uint64_t full = internal_mask(table.at(id));
  for (std::size_t i = 0; i < occ.size(); ++i)
    for (std::size_t j = i + 1; j < occ.size(); ++j) {
      const auto &a = occ[i].emb, &b = occ[j].emb;
      if (!(a.vertex_mask & b.vertex_mask) || (a.vertex_mask | b.vertex_mask) != full) continue;
      f(axpy(red.rewrite(id, lay, occ[i]), Rational(-1), red.rewrite(id, lay, occ[j])));
    }
  (void)g;
}

void check_presentation(const ShufflePresentation& p) {
  for (const auto& r : p.relations) {
    if (r.is_zero()) continue;
    if (r.arity() < 3) throw std::invalid_argument("relations must have arity at least 3");
    for (const auto& [m, c] : r.terms())
      for (char ch : m.code())
        if (ch >= p.signature.size()) throw std::invalid_argument("relation uses a generator outside the signature");
  }
}

}  // namespace

class Completion {
 public:
  static std::pair<GroebnerBasis, CompletionReport> run(const ShufflePresentation& p, const CompletionOptions& opt) {
    check_presentation(p);
    if (opt.max_arity < 1) throw std::invalid_argument("max arity must be positive");
    const Signature& sig = p.signature;
    GroebnerBasis g(sig);
    g.completed_through_ = 0;
    CompletionReport report;
    for (int n = 1; n <= opt.max_arity; ++n) {
      const std::uint64_t total = count_monomials(sig.size(), n);
      if (total > opt.monomial_budget) throw BudgetExceeded(n, total, opt.monomial_budget);
      MonomialTable table(enumerate_monomials(sig, n));
      Reducer red(g, table);
      Echelon ech;
      ArityLevel level;
      level.arity = n;
      level.monomials = total;
      std::vector<char> reducible(table.size(), 0);
      if (!g.rules_.empty()) {
        for (int id = 0; id < static_cast<int>(table.size()); ++id) {
          const TreeMonomial& m = table.at(id);
          const TreeLayout lay(m.code());
          const auto occ = occurrences(g, m, lay);
          reducible[static_cast<std::size_t>(id)] = !occ.empty();
          for_each_s_element(g, table, red, id, occ, lay, [&](Row s) {
            ++level.s_elements;
            ech.add(red.reduce(s));
          });
        }
      }
      for (const auto& r : p.relations)
        if (!r.is_zero() && r.arity() == n) ech.add(red.reduce(element_row(r, table)));
      std::vector<char> lead(table.size(), 0);
      for (const auto& row : ech.finish()) {
        RewriteRule rule{table.at(row.front().first), TreeElement()};
        for (std::size_t k = 1; k < row.size(); ++k) rule.tail.add(table.at(row[k].first), -row[k].second);
        lead[static_cast<std::size_t>(row.front().first)] = 1;
        g.append(std::move(rule));
        ++level.rules_added;
      }
      for (std::size_t id = 0; id < table.size(); ++id) {
        if (reducible[id] || lead[id]) continue;
        ++level.dim;
        ++level.dims_by_weight[table.at(static_cast<int>(id)).weight(sig)];
      }
      g.completed_through_ = n;
      report.levels.push_back(std::move(level));
    }
    report.completed_through = g.completed_through_;
    return {std::move(g), std::move(report)};
  }
};

std::pair<GroebnerBasis, CompletionReport> complete(const ShufflePresentation& p, const CompletionOptions& options) {
  return Completion::run(p, options);
}

TreeElement normal_form(const TreeElement& e, const GroebnerBasis& g) {
  MonomialTable table;
  Reducer red(g, table);
  const Row r = red.reduce(element_row(e, table));
  return row_element(r, table);
}

bool is_normal(const TreeMonomial& m, const GroebnerBasis& g) {
  return occurrences(g, m, TreeLayout(m.code())).empty();
}

std::vector<TreeElement> critical_pairs(const GroebnerBasis& g, int n) {
  MonomialTable table(enumerate_monomials(g.signature(), n));
  Reducer red(g, table);
  std::vector<TreeElement> out;
  for (int id = 0; id < static_cast<int>(table.size()); ++id) {
    const TreeMonomial& m = table.at(id);
    const TreeLayout lay(m.code());
    for_each_s_element(g, table, red, id, occurrences(g, m, lay), lay,
                       [&](Row s) { out.push_back(row_element(s, table)); });
  }
  return out;
}

std::vector<std::map<int, std::uint64_t>> component_dims_by_weight(const GroebnerBasis& g, int up_to) {
  if (up_to > g.completed_through())
    throw std::invalid_argument("basis completed only through arity " + std::to_string(g.completed_through()));
  std::vector<std::map<int, std::uint64_t>> out;
  for (int n = 1; n <= up_to; ++n) {
    std::map<int, std::uint64_t> w;
    for (const auto& m : enumerate_monomials(g.signature(), n))
      if (is_normal(m, g)) ++w[m.weight(g.signature())];
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<std::uint64_t> component_dims(const GroebnerBasis& g, int up_to) {
  std::vector<std::uint64_t> out;
  for (const auto& w : component_dims_by_weight(g, up_to)) {
    std::uint64_t total = 0;
    for (const auto& [k, c] : w) total += c;
    out.push_back(total);
  }
  return out;
}

QuadraticCertificate quadratic_gb_certificate(const ShufflePresentation& p) {
  for (const auto& r : p.relations)
    if (!r.is_zero() && r.arity() != 3) throw std::invalid_argument("quadratic certificate needs arity-3 relations");
  const auto [g, report] = complete(p, {3, 2'000'000});
  QuadraticCertificate cert;
  MonomialTable table(enumerate_monomials(g.signature(), 4));
  Reducer red(g, table);
  for (int id = 0; id < static_cast<int>(table.size()); ++id) {
    const TreeMonomial& m = table.at(id);
    const TreeLayout lay(m.code());
    for_each_s_element(g, table, red, id, occurrences(g, m, lay), lay, [&](Row s) {
      ++cert.s_elements;
      if (cert.witness) return;
      Row r = red.reduce(s);
      if (!r.empty()) cert.witness = row_element(r, table);
    });
  }
  cert.holds = !cert.witness;
  return cert;
}

nlohmann::json to_json(const Signature& sig) {
  nlohmann::json gens = nlohmann::json::array();
  for (int g = 0; g < sig.size(); ++g) {
    const auto& gen = sig.generator(g);
    nlohmann::json j{{"id", gen.id}, {"weight", gen.weight}};
    switch (gen.skew) {
      case Skew::None: j["skew"] = "none"; break;
      case Skew::Symmetric: j["skew"] = "symmetric"; break;
      case Skew::Antisymmetric: j["skew"] = "antisymmetric"; break;
    }
    if (!gen.opposite.empty()) j["opposite"] = gen.opposite;
    gens.push_back(std::move(j));
  }
  return {{"generators", gens},
          {"precedence", sig.precedence()},
          {"word_order", sig.word_order() == WordOrder::Lex ? "lex" : "graded-lex"},
          {"reversed", sig.reversed()}};
}

nlohmann::json to_json(const GroebnerBasis& g, const CompletionReport& report) {
  const Signature& sig = g.signature();
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& r : g.rules()) {
    nlohmann::json tail = nlohmann::json::array();
    for (const auto& [m, c] : r.tail.sorted_terms(sig))
      tail.push_back({{"coefficient", c.str()}, {"monomial", to_text(sig, m)}});
    rules.push_back({{"arity", r.lead.arity()}, {"lead", to_text(sig, r.lead)}, {"tail", tail}});
  }
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : report.levels) {
    nlohmann::json w = nlohmann::json::object();
    for (const auto& [k, c] : l.dims_by_weight) w[std::to_string(k)] = c;
    levels.push_back({{"arity", l.arity},
                      {"monomials", l.monomials},
                      {"s_elements", l.s_elements},
                      {"rules_added", l.rules_added},
                      {"dim", l.dim},
                      {"dims_by_weight", w}});
  }
  return {{"signature", to_json(sig)},
          {"completed_through", report.completed_through},
          {"rules", rules},
          {"levels", levels},
          {"dims", report.dims()}};
}

}  // namespace opk
