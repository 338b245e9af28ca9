#include "opk/cubic.hpp"

#include <algorithm>
#include <map>

namespace opk {

struct CubicExpr::Node {
  int var = 0;  // 1..3 for a leaf, 0 for an operation
  Op op = Op::Mul;
  NodePtr left, right;
};

CubicExpr CubicExpr::var(int i) {
  if (i < 1 || i > 3) throw CubicExprError("variable index must be 1, 2 or 3");
  CubicExpr e;
  auto n = std::make_shared<Node>();
  n->var = i;
  e.terms_.emplace_back(Rational(1), n);
  return e;
}

CubicExpr CubicExpr::apply(Op op, const CubicExpr& x, const CubicExpr& y) {
  CubicExpr e;
  for (const auto& [cx, nx] : x.terms_)
    for (const auto& [cy, ny] : y.terms_) {
      auto n = std::make_shared<Node>();
      n->op = op;
      n->left = nx;
      n->right = ny;
      e.terms_.emplace_back(cx * cy, n);
    }
  return e;
}

CubicExpr CubicExpr::associator(const CubicExpr& x, const CubicExpr& y, const CubicExpr& z) {
  return mul(mul(x, y), z) - mul(x, mul(y, z));
}

CubicExpr operator+(const CubicExpr& a, const CubicExpr& b) {
  CubicExpr e = a;
  e.terms_.insert(e.terms_.end(), b.terms_.begin(), b.terms_.end());
  return e;
}

CubicExpr operator*(const Rational& c, const CubicExpr& a) {
  CubicExpr e = a;
  for (auto& t : e.terms_) t.first *= c;
  return e;
}

CubicExpr operator-(const CubicExpr& a, const CubicExpr& b) { return a + Rational(-1) * b; }

namespace {

using Word = std::string;
using Combination = std::map<Word, Rational>;

void add_to(Combination& c, const Word& w, const Rational& x) {
  if (x.is_zero()) return;
  auto [it, inserted] = c.emplace(w, x);
  if (!inserted) {
    it->second += x;
    if (it->second.is_zero()) c.erase(it);
  }
}

char min_digit(const Word& w) {
  char m = '9';
  for (char ch : w)
    if (ch >= '1' && ch <= '9') m = std::min(m, ch);
  return m;
}

bool multilinear(const Word& w) {
  std::string d;
  for (char ch : w)
    if (ch >= '0' && ch <= '9') d += ch;
  std::sort(d.begin(), d.end());
  return d == "123";
}

struct Evaluator {
  // Magmatic words are fully parenthesized: "((12)3)".
  template <class NodeT>
  static Combination magmatic(const NodeT& n) {
    if (n.var) return {{Word(1, static_cast<char>('0' + n.var)), Rational(1)}};
    const Combination l = magmatic(*n.left), r = magmatic(*n.right);
    Combination out;
    for (const auto& [wl, cl] : l)
      for (const auto& [wr, cr] : r) {
        const Rational c = cl * cr;
        const Word lr = "(" + wl + wr + ")", rl = "(" + wr + wl + ")";
        switch (n.op) {
          case CubicExpr::Op::Mul: add_to(out, lr, c); break;
          case CubicExpr::Op::Dot: add_to(out, lr, c); add_to(out, rl, c); break;
          case CubicExpr::Op::Bracket: add_to(out, lr, c); add_to(out, rl, -c); break;
        }
      }
    return out;
  }

  // Polarized words: "c(x,y)" or "b(x,y)" with min_digit(x) < min_digit(y).
  static void add_polarized(Combination& out, char g, const Word& x, const Word& y, const Rational& c) {
    if (min_digit(x) <= min_digit(y))
      add_to(out, std::string(1, g) + "(" + x + "," + y + ")", c);
    else
      add_to(out, std::string(1, g) + "(" + y + "," + x + ")", g == 'b' ? -c : c);
  }

  template <class NodeT>
  static Combination polarized(const NodeT& n) {
    if (n.var) return {{Word(1, static_cast<char>('0' + n.var)), Rational(1)}};
    const Combination l = polarized(*n.left), r = polarized(*n.right);
    Combination out;
    const Rational half(1, 2);
    for (const auto& [wl, cl] : l)
      for (const auto& [wr, cr] : r) {
        const Rational c = cl * cr;
        switch (n.op) {
          case CubicExpr::Op::Mul:
            add_polarized(out, 'c', wl, wr, c * half);
            add_polarized(out, 'b', wl, wr, c * half);
            break;
          case CubicExpr::Op::Dot: add_polarized(out, 'c', wl, wr, c); break;
          case CubicExpr::Op::Bracket: add_polarized(out, 'b', wl, wr, c); break;
        }
      }
    return out;
  }
};

int magmatic_index(const Word& w) {
  // "((ij)k)" or "(i(jk))"
  if (w.size() != 7 || !multilinear(w)) throw CubicExprError("term is not multilinear in a1, a2, a3");
  if (w[1] == '(') {
    return s3_index(Permutation{{w[2] - '0', w[3] - '0', w[5] - '0'}});
  }
  return 6 + s3_index(Permutation{{w[1] - '0', w[3] - '0', w[4] - '0'}});
}

int polarized_index(const Word& w) {
  // "r(s(i,j),k)" or "r(i,s(j,k))"
  if (w.size() != 11 || !multilinear(w)) throw CubicExprError("term is not multilinear in a1, a2, a3");
  const bool root_b = w[0] == 'b';
  if (w[2] == '1') {
    const bool inner_b = w[4] == 'b';
    return 4 * 2 + 2 * root_b + inner_b;
  }
  const bool inner_b = w[2] == 'b';
  const int shape = w[6] == '2' ? 0 : 1;
  return 4 * shape + 2 * root_b + inner_b;
}

}  // namespace

bool CubicExpr::uses_polarized_ops() const {
  std::vector<const Node*> stack;
  for (const auto& t : terms_) stack.push_back(t.second.get());
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (n->var) continue;
    if (n->op != Op::Mul) return true;
    stack.push_back(n->left.get());
    stack.push_back(n->right.get());
  }
  return false;
}

CubicVector CubicExpr::to_magmatic() const {
  auto v = CubicVector::zero(CubicSpace::Magmatic12);
  for (const auto& [c, n] : terms_)
    for (const auto& [w, x] : Evaluator::magmatic(*n)) v.coords(magmatic_index(w)) += c * x;
  return v;
}

CubicVector CubicExpr::to_polarized() const {
  auto v = CubicVector::zero(CubicSpace::Polarized12);
  for (const auto& [c, n] : terms_)
    for (const auto& [w, x] : Evaluator::polarized(*n)) v.coords(polarized_index(w)) += c * x;
  return v;
}

CubicVector CubicExpr::to_associative() const { return convert(to_magmatic(), CubicSpace::Associative6); }

CubicVector CubicExpr::to_space(CubicSpace s) const {
  switch (s) {
    case CubicSpace::Magmatic12: return to_magmatic();
    case CubicSpace::Polarized12: return to_polarized();
    case CubicSpace::Associative6: return to_associative();
  }
  return to_magmatic();
}

namespace {

template <class NodeT>
std::string render(const NodeT& n) {
  if (n.var) return "a" + std::to_string(n.var);
  const auto wrap = [](const NodeT& c) {
    if (c.var || c.op == CubicExpr::Op::Bracket) return render(c);
    return "(" + render(c) + ")";
  };
  switch (n.op) {
    case CubicExpr::Op::Mul: return wrap(*n.left) + "*" + wrap(*n.right);
    case CubicExpr::Op::Dot: return wrap(*n.left) + "." + wrap(*n.right);
    case CubicExpr::Op::Bracket: return "[" + render(*n.left) + "," + render(*n.right) + "]";
  }
  return "?";
}

std::string with_coefficient(const Rational& c, const std::string& body, bool first) {
  std::string out;
  Rational a = c;
  if (a.sign() < 0) {
    out += first ? "-" : " - ";
    a = -a;
  } else if (!first) {
    out += " + ";
  }
  if (!a.is_one()) out += a.str() + "*";
  return out + body;
}

}  // namespace

std::string CubicExpr::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    out += with_coefficient(terms_[i].first, render(*terms_[i].second), i == 0);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

CubicExpr polarized_basis_expr(int k) {
  const int shape = k / 4;
  const auto root = (k & 2) ? CubicExpr::Op::Bracket : CubicExpr::Op::Dot;
  const auto inner = (k & 1) ? CubicExpr::Op::Bracket : CubicExpr::Op::Dot;
  const auto a = [](int i) { return CubicExpr::var(i); };
  switch (shape) {
    case 0: return CubicExpr::apply(root, CubicExpr::apply(inner, a(1), a(2)), a(3));
    case 1: return CubicExpr::apply(root, CubicExpr::apply(inner, a(1), a(3)), a(2));
    default: return CubicExpr::apply(root, a(1), CubicExpr::apply(inner, a(2), a(3)));
  }
}

CubicExpr magmatic_basis_expr(int k) {
  const auto& s = s3_elements()[static_cast<std::size_t>(k % 6)];
  const auto a = [](int i) { return CubicExpr::var(i); };
  if (k < 6) return CubicExpr::mul(CubicExpr::mul(a(s(1)), a(s(2))), a(s(3)));
  return CubicExpr::mul(a(s(1)), CubicExpr::mul(a(s(2)), a(s(3))));
}

}  // namespace

const QMatrix& polarization_matrix() {
  static const QMatrix p = [] {
    QMatrix m(12, 12);
    for (int j = 0; j < 12; ++j) m.col(j) = polarized_basis_expr(j).to_magmatic().coords;
    return m;
  }();
  return p;
}

const QMatrix& associative_projection() {
  static const QMatrix p = [] {
    QMatrix m = QMatrix::Constant(6, 12, Rational(0));
    for (int k = 0; k < 6; ++k) {
      m(k, k) = Rational(1);
      m(k, 6 + k) = Rational(1);
    }
    return m;
  }();
  return p;
}

CubicVector convert(const CubicVector& v, CubicSpace target) {
  if (v.space == target) return v;
  static const QMatrix pinv = inverse(polarization_matrix());
  switch (v.space) {
    case CubicSpace::Magmatic12:
      if (target == CubicSpace::Polarized12) return CubicVector(target, pinv * v.coords);
      return CubicVector(target, associative_projection() * v.coords);
    case CubicSpace::Polarized12: {
      const QVector m = polarization_matrix() * v.coords;
      if (target == CubicSpace::Magmatic12) return CubicVector(target, m);
      return CubicVector(target, associative_projection() * m);
    }
    case CubicSpace::Associative6: break;
  }
  throw CubicExprError("no conversion from associative-6 to a 12-dimensional space");
}

Subspace convert(const Subspace& s, CubicSpace target) {
  std::vector<CubicVector> out;
  for (const auto& v : s.vectors()) out.push_back(convert(v, target));
  return Subspace::span(target, out);
}

std::string basis_text(CubicSpace s, int k) {
  switch (s) {
    case CubicSpace::Magmatic12: return magmatic_basis_expr(k).str();
    case CubicSpace::Polarized12: return polarized_basis_expr(k).str();
    case CubicSpace::Associative6: {
      const auto& p = s3_elements()[static_cast<std::size_t>(k)];
      return "a" + std::to_string(p(1)) + "*a" + std::to_string(p(2)) + "*a" + std::to_string(p(3));
    }
  }
  return "?";
}

std::string to_text(const CubicVector& v) {
  std::string out;
  for (Eigen::Index k = 0; k < v.coords.size(); ++k) {
    if (v.coords(k).is_zero()) continue;
    out += with_coefficient(v.coords(k), basis_text(v.space, static_cast<int>(k)), out.empty());
  }
  return out.empty() ? "0" : out;
}

}  // namespace opk
