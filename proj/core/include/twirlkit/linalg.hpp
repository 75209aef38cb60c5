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

#include <optional>
#include <vector>

#include "twirlkit/matrix.hpp"

namespace twirlkit {

/**
 * @brief Kronecker product a (x) b.
 *
 * Entry convention: result[i1*rows(b)+i2, j1*cols(b)+j2] = a[i1,j1] * b[i2,j2].
 * @throws std::invalid_argument "matrix too large" when either result side
 *         exceeds the configured maximum dimension.
 */
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/**
 * @brief Hilbert-Schmidt inner product (a, b) = Tr(a* b).
 *
 * Conjugate-linear in the first argument.
 * @throws std::invalid_argument on shape mismatch.
 */
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hilbert-Schmidt (Frobenius) norm.
double hs_norm(const ComplexMatrix& a);

/**
 * @brief Full eigendecomposition of a square (generally non-Hermitian) matrix.
 *
 * Schur-based; eigenvectors are unit-norm columns of `vectors`, ordered like
 * `values`. No eigenvalue ordering is guaranteed beyond that pairing.
 */
struct EigenDecomposition {
  ComplexVector values;
  ComplexMatrix vectors;  ///< j-th column pairs with values(j)
};

/// @throws std::invalid_argument on non-square input.
EigenDecomposition eig(const ComplexMatrix& m);

/**
 * @brief Orthonormalize a list of operators in the Hilbert-Schmidt sense.
 *
 * Modified Gram-Schmidt with re-orthogonalization; elements whose residual
 * drops below the rank-drop tolerance (relative to their input norm) are
 * discarded, so the output is an HS-orthonormal basis of the input span.
 */
std::vector<ComplexMatrix> gram_schmidt_hs(const std::vector<ComplexMatrix>& ops);

/**
 * @brief Orthonormal basis of the (right) null space of m.
 *
 * SVD-based: singular values below rel_tol * sigma_max count as null
 * directions. Returns the basis as matrix columns (possibly zero columns).
 */
ComplexMatrix nullspace(const ComplexMatrix& m, double rel_tol);

/**
 * @brief Frobenius norm of the projector difference of two subspaces.
 *
 * Inputs are orthonormal bases given as matrix columns; equality of spans at
 * tolerance t means a return value below t.
 */
double subspace_projector_distance(const ComplexMatrix& basis_a,
                                   const ComplexMatrix& basis_b);

/**
 * @brief Principal angles (radians, ascending) between two subspaces.
 *
 * Inputs are orthonormal bases given as matrix columns of equal row count.
 */
std::vector<double> principal_angles(const ComplexMatrix& basis_a,
                                     const ComplexMatrix& basis_b);

/**
 * @brief Nearest Kronecker factorization u = a (x) b of a square matrix.
 *
 * rows_a * rows_b must equal the input dimension. Returns the factor pair
 * minimizing ||u - a (x) b||_F (Van Loan rearrangement + leading singular
 * pair) together with the relative residual of the rank-one fit.
 */
struct KronFactors {
  ComplexMatrix a;
  ComplexMatrix b;
  double relative_residual = 0.0;
};

KronFactors kron_factor(const ComplexMatrix& u, Eigen::Index rows_a,
                        Eigen::Index rows_b);

}  // namespace twirlkit
