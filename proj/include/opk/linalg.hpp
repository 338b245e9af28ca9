#pragma once

#include <Eigen/Core>
#include <vector>

#include "opk/rational.hpp"

namespace opk {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = Matrix<Rational>;
using QVector = Vector<Rational>;

/// Reduced row echelon form with leading ones; zero rows are dropped.
/// Pivot columns are reported in increasing order when requested.
template <class Derived>
Matrix<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& a,
                                      std::vector<Eigen::Index>* pivots = nullptr) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> m = a;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  std::vector<Eigen::Index> piv;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && m(p, c) == Scalar(0)) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const Scalar inv = Scalar(1) / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == Scalar(0)) continue;
      const Scalar f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j)
        if (m(r, j) != Scalar(0)) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  if (pivots) *pivots = piv;
  return m.topRows(r);
}

template <class Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& a) {
  return rref(a).rows();
}

/// Rows spanning {x : a x = 0}, in reduced echelon form.
template <class Derived>
Matrix<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  std::vector<Eigen::Index> piv;
  const Matrix<Scalar> r = rref(a, &piv);
  const Eigen::Index n = a.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto c : piv) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Vector<Scalar>> basis;
  for (Eigen::Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Vector<Scalar> x = Vector<Scalar>::Constant(n, Scalar(0));
    x(f) = Scalar(1);
    for (std::size_t i = 0; i < piv.size(); ++i) x(piv[i]) = -r(static_cast<Eigen::Index>(i), f);
    basis.push_back(std::move(x));
  }
  Matrix<Scalar> out(static_cast<Eigen::Index>(basis.size()), n);
  for (std::size_t i = 0; i < basis.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = basis[i].transpose();
  return rref(out);
}

/// Row space of b contained in row space of a.
template <class DA, class DB>
bool row_space_contains(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (b.rows() == 0) return true;
  using Scalar = typename DA::Scalar;
  Matrix<Scalar> stacked(a.rows() + b.rows(), a.cols());
  stacked << a, b;
  return rank(stacked) == rank(a);
}

template <class DA, class DB>
Matrix<typename DA::Scalar> stack_rows(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  Matrix<typename DA::Scalar> s(a.rows() + b.rows(), a.cols());
  if (a.rows()) s.topRows(a.rows()) = a;
  if (b.rows()) s.bottomRows(b.rows()) = b;
  return s;
}

/// Exact inverse by Gauss-Jordan; throws std::domain_error if singular.
template <class Derived>
Matrix<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = a.rows();
  Matrix<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = Matrix<Scalar>::Identity(n, n);
  std::vector<Eigen::Index> piv;
  const Matrix<Scalar> r = rref(aug, &piv);
  if (r.rows() < n || piv[static_cast<std::size_t>(n - 1)] != n - 1)
    throw std::domain_error("inverse: singular matrix");
  return r.rightCols(n);
}

}  // namespace opk
