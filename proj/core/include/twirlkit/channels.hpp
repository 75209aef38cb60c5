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
#include <utility>
#include <vector>

#include "twirlkit/linalg.hpp"
#include "twirlkit/matrix.hpp"

namespace twirlkit {

/**
 * @brief Validated density matrix (Hermitian, unit trace, positive).
 *
 * The checked constructor enforces Hermiticity, trace one and eigenvalues
 * above the negative numerical floor; `unchecked` skips validation for
 * intermediate arithmetic.
 */
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);
  static DensityMatrix unchecked(ComplexMatrix m);

  const ComplexMatrix& mat() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  struct unchecked_tag {};
  DensityMatrix(ComplexMatrix m, unchecked_tag) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

/// One weighted unitary of an ensemble.
struct EnsembleItem {
  double p = 0.0;
  ComplexMatrix u;
};

/**
 * @brief Finite ensemble {(p_i, U_i)} defining the map
 *        rho -> sum_i p_i U_i rho U_i*.
 *
 * Validated on construction: at least one item, probabilities in (0, 1]
 * summing to one, every U_i unitary at the configured tolerance, uniform
 * dimension.
 */
class UnitaryEnsemble {
 public:
  explicit UnitaryEnsemble(std::vector<EnsembleItem> items);

  Eigen::Index dim() const { return dim_; }
  const std::vector<EnsembleItem>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }

  /// Same unitaries, new probabilities (re-validated).
  UnitaryEnsemble with_probabilities(const std::vector<double>& probs) const;

 private:
  Eigen::Index dim_ = 0;
  std::vector<EnsembleItem> items_;
};

/// Matrix representation of a channel on vectorized operators.
struct Superoperator {
  Eigen::Index hdim = 0;  ///< Hilbert space dimension; mat is hdim^2 x hdim^2
  ComplexMatrix mat;
};

/// Werner-state parameters: weight eta on the symmetric component.
struct WernerParams {
  int d = 2;
  double eta = 0.5;
};

/// rho -> sum_i p_i U_i rho U_i*.
DensityMatrix apply_ruo(const UnitaryEnsemble& e, const DensityMatrix& rho);

/// Column-stacking convention: mat = sum_i p_i conj(U_i) (x) U_i.
Superoperator build_superoperator(const UnitaryEnsemble& e);

/// Flip (swap) operator F |a>|b> = |b>|a> on C^d (x) C^d.
ComplexMatrix flip_operator(int d);

/// Projectors (P_sym, P_asym) onto the symmetric/antisymmetric subspaces.
std::pair<ComplexMatrix, ComplexMatrix> sym_asym_projectors(int d);

/// Werner state: eta-weighted mixture of the normalized projectors.
DensityMatrix werner_state(const WernerParams& w);

/**
 * @brief Orthogonal projection of a bipartite state onto the twirl range.
 *
 * Closed form: T(rho) = Tr(P_sym rho)/rank(P_sym) P_sym
 *                     + Tr(P_asym rho)/rank(P_asym) P_asym.
 * @throws std::invalid_argument "not bipartite" unless dim is a perfect
 *         square.
 */
DensityMatrix twirl_project(const DensityMatrix& rho);

/// Superoperator matrix of the twirl projection on C^d (x) C^d.
Superoperator twirl_superoperator(int d);

/**
 * @brief ||S^n - T||_F where T is the twirl on the same bipartite space.
 *
 * S^n is computed by repeated multiplication. n = 0 gives ||1 - T||_F.
 * @throws std::invalid_argument "not bipartite" unless s.hdim is a perfect
 *         square.
 */
double hs_distance_to_twirl(const Superoperator& s, int n);

/// Lift single-qudit unitaries to the collective ensemble {(p_i, u_i (x) u_i)}.
UnitaryEnsemble lift_collective(const std::vector<ComplexMatrix>& us,
                                const std::vector<double>& probs);

/**
 * @brief Recover u from a collective unitary U = u (x) u.
 *
 * Returns std::nullopt when U is not a Kronecker square at the subspace
 * tolerance.
 */
std::optional<ComplexMatrix> collective_factor(const ComplexMatrix& u_big);

/// d for hdim = d^2, or std::nullopt when hdim is not a perfect square.
std::optional<int> bipartite_side(Eigen::Index hdim);

}  // namespace twirlkit
