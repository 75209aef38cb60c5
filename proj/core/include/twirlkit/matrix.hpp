// Copyright 2026 The twirlkit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace twirlkit {

using Complex = std::complex<double>;

/**
 * @brief Dense row-major complex matrix, the universal carrier type.
 *
 * Row-major dynamic storage backed by Eigen; all unitaries, states,
 * superoperators and attractor operators are instances of this type.
 */
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense complex column vector (vectorized operators, eigenvalue lists).
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

/// Column-stacking vectorization: vec(|i><j|) = |j> (x) |i>.
inline ComplexVector vec_col(const ComplexMatrix& m) {
  ComplexVector v(m.rows() * m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) v(j * m.rows() + i) = m(i, j);
  return v;
}

/// Inverse of vec_col for square operators of dimension dim.
inline ComplexMatrix unvec_col(const ComplexVector& v, Eigen::Index dim) {
  ComplexMatrix m(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) m(i, j) = v(j * dim + i);
  return m;
}

/// True when ||m* m - 1||_F <= tol.
inline bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols()))
             .norm() <= tol;
}

}  // namespace twirlkit
