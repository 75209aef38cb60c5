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

#include "twirlkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "twirlkit/tolerances.hpp"

namespace twirlkit {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::int64_t rows =
      static_cast<std::int64_t>(a.rows()) * static_cast<std::int64_t>(b.rows());
  const std::int64_t cols =
      static_cast<std::int64_t>(a.cols()) * static_cast<std::int64_t>(b.cols());
  const std::int64_t max_dim = tolerances().max_kron_dim;
  if (rows > max_dim || cols > max_dim)
    throw std::invalid_argument("matrix too large");
  return Eigen::kroneckerProduct(a, b);
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("hs_inner: shape mismatch");
  return (a.adjoint() * b).trace();
}

double hs_norm(const ComplexMatrix& a) { return a.norm(); }

EigenDecomposition eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("eig: matrix must be square");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, true);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eig: Schur iteration failed to converge");
  EigenDecomposition out;
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  for (Eigen::Index j = 0; j < out.vectors.cols(); ++j) {
    const double n = out.vectors.col(j).norm();
    if (n > 0) out.vectors.col(j) /= n;
  }
  return out;
}

std::vector<ComplexMatrix> gram_schmidt_hs(
    const std::vector<ComplexMatrix>& ops) {
  std::vector<ComplexMatrix> basis;
  const double drop = tolerances().rank_drop;
  for (const ComplexMatrix& op : ops) {
    const double input_norm = op.norm();
    ComplexMatrix r = op;
    // Two sweeps of modified Gram-Schmidt keep pairwise overlaps at
    // round-off level even for nearly dependent inputs.
    for (int sweep = 0; sweep < 2; ++sweep)
      for (const ComplexMatrix& q : basis) r -= hs_inner(q, r) * q;
    const double residual = r.norm();
    if (residual <= drop * std::max(input_norm, 1.0)) continue;
    basis.push_back(r / residual);
  }
  return basis;
}

ComplexMatrix nullspace(const ComplexMatrix& m, double rel_tol) {
  Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  // A numerically zero matrix has full null space; fall back to an absolute
  // floor so the relative threshold does not collapse to zero.
  const double cutoff =
      std::max(rel_tol * sigma_max, 16.0 * std::numeric_limits<double>::min());
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > cutoff) ++rank;
  // Right null directions are the trailing columns of full V; a tall matrix
  // contributes cols - rank of them.
  return svd.matrixV().rightCols(m.cols() - rank);
}

double subspace_projector_distance(const ComplexMatrix& basis_a,
                                   const ComplexMatrix& basis_b) {
  if (basis_a.rows() != basis_b.rows())
    throw std::invalid_argument(
        "subspace_projector_distance: ambient dimensions differ");
  // Explicit projector difference; the Gram-matrix shortcut
  // k + l - 2||A*B||^2 cancels catastrophically near equality.
  ComplexMatrix diff = basis_a * basis_a.adjoint() - basis_b * basis_b.adjoint();
  return diff.norm();
}

std::vector<double> principal_angles(const ComplexMatrix& basis_a,
                                     const ComplexMatrix& basis_b) {
  if (basis_a.rows() != basis_b.rows())
    throw std::invalid_argument("principal_angles: ambient dimensions differ");
  ComplexMatrix overlap = basis_a.adjoint() * basis_b;
  Eigen::BDCSVD<ComplexMatrix> svd(overlap);
  std::vector<double> angles;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double c = std::clamp(svd.singularValues()(i), 0.0, 1.0);
    angles.push_back(std::acos(c));
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

KronFactors kron_factor(const ComplexMatrix& u, Eigen::Index rows_a,
                        Eigen::Index rows_b) {
  if (u.rows() != u.cols() || u.rows() != rows_a * rows_b)
    throw std::invalid_argument("kron_factor: incompatible dimensions");
  // Van Loan rearrangement: R[(i,j), (k,l)] = u[i*rb+k, j*rb+l] turns the
  // Kronecker structure into a rank-one matrix vec(a) vec(b)^T.
  ComplexMatrix r(rows_a * rows_a, rows_b * rows_b);
  for (Eigen::Index i = 0; i < rows_a; ++i)
    for (Eigen::Index j = 0; j < rows_a; ++j)
      for (Eigen::Index k = 0; k < rows_b; ++k)
        for (Eigen::Index l = 0; l < rows_b; ++l)
          r(i * rows_a + j, k * rows_b + l) = u(i * rows_b + k, j * rows_b + l);
  Eigen::BDCSVD<ComplexMatrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double sigma0 = svd.singularValues()(0);
  KronFactors out;
  out.a = ComplexMatrix(rows_a, rows_a);
  out.b = ComplexMatrix(rows_b, rows_b);
  const double scale = std::sqrt(sigma0);
  for (Eigen::Index i = 0; i < rows_a; ++i)
    for (Eigen::Index j = 0; j < rows_a; ++j)
      out.a(i, j) = svd.matrixU()(i * rows_a + j, 0) * scale;
  for (Eigen::Index k = 0; k < rows_b; ++k)
    for (Eigen::Index l = 0; l < rows_b; ++l)
      out.b(k, l) = std::conj(svd.matrixV()(k * rows_b + l, 0)) * scale;
  double tail = 0.0;
  for (Eigen::Index i = 1; i < svd.singularValues().size(); ++i)
    tail += svd.singularValues()(i) * svd.singularValues()(i);
  const double total = r.squaredNorm();
  out.relative_residual = total > 0 ? std::sqrt(tail / total) : 0.0;
  return out;
}

}  // namespace twirlkit
