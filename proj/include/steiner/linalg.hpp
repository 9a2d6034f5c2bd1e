#pragma once

#include <stdexcept>
#include <utility>

#include <Eigen/Core>

#include "steiner/gmp_eigen.hpp"
#include "steiner/poly.hpp"

namespace steiner {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/*
 * Fraction-free (Bareiss) determinant.
 *
 * Every intermediate entry is a minor of the input, so the divisions by the
 * previous pivot are exact for integral scalars. Works for any scalar with
 * exact division (Integer, Rational, int64_t when no overflow can occur).
 */
template <typename Derived>
typename Derived::Scalar bareiss_determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  if (input.rows() != input.cols()) throw std::invalid_argument("bareiss_determinant: matrix is not square");
  const Eigen::Index n = input.rows();
  if (n == 0) return Scalar(1);
  DenseMatrix<Scalar> m = input;
  Scalar previous(1);
  bool negate = false;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index swap_row = k + 1;
      while (swap_row < n && m(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return Scalar(0);
      m.row(k).swap(m.row(swap_row));
      negate = !negate;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        Scalar t = m(i, j) * m(k, k);
        t -= m(i, k) * m(k, j);
        t /= previous;
        m(i, j) = std::move(t);
      }
      m(i, k) = 0;
    }
    previous = m(k, k);
  }
  Scalar det = m(n - 1, n - 1);
  return negate ? Scalar(-det) : det;
}

/// Hadamard bound on |det| of an integer matrix: the smaller of the row-norm
/// and column-norm products, rounded up.
template <typename Derived>
Integer hadamard_bound(const Eigen::MatrixBase<Derived>& a) {
  Integer rows = 1, cols = 1;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Integer sq = 0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) sq += Integer(a(i, j)) * Integer(a(i, j));
    rows *= sq;
  }
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    Integer sq = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) sq += Integer(a(i, j)) * Integer(a(i, j));
    cols *= sq;
  }
  Integer product = rows < cols ? rows : cols;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), product.get_mpz_t());
  if (root * root < product) ++root;
  return root;
}

}  // namespace steiner
