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

#include <vector>

#include "twirlkit/channels.hpp"
#include "twirlkit/matrix.hpp"

namespace twirlkit {

/// One peripheral eigenvalue with an HS-orthonormal basis of its eigenspace.
struct AttractorBlock {
  Complex lambda;
  std::vector<ComplexMatrix> basis;
};

/**
 * @brief Full description of the asymptotic structure of an iterated channel.
 *
 * `asymptotic_spectrum` holds the deduplicated unit-modulus eigenvalues;
 * `attractor_bases` one block per spectrum entry, same order.
 * `converges_to_twirl` is true exactly when the map is stationary, the fixed
 * space is two-dimensional and equals the span of the symmetric and
 * antisymmetric projectors of a bipartite split.
 */
struct AttractorReport {
  std::vector<Complex> asymptotic_spectrum;
  std::vector<AttractorBlock> attractor_bases;
  int fixed_point_dim = 0;
  bool converges_to_twirl = false;
  bool stationary = false;  ///< asymptotic spectrum == {1}
};

/// Deduplicated unit-modulus eigenvalues of s (each clamped to the circle).
std::vector<Complex> asymptotic_spectrum(const Superoperator& s);

/**
 * @brief Attractor decomposition via the superoperator spectrum.
 *
 * Peripheral eigenvalues are clustered, then each eigenspace is extracted as
 * an SVD null space of (S - lambda 1), which is robust under degeneracy.
 */
AttractorReport attractor_space_eig(const Superoperator& s);

/**
 * @brief Attractor eigenspace from the per-unitary commutation equations.
 *
 * Solves U_i X = lambda X U_i for all i jointly by stacking the vectorized
 * constraints (1 (x) U_i) - lambda (U_i^T (x) 1) and thresholding singular
 * values. Independent of the superoperator route (no probabilities enter);
 * serves as its cross-check.
 */
std::vector<ComplexMatrix> attractor_space_linear(const UnitaryEnsemble& e,
                                                  Complex lambda);

/**
 * @brief Finite candidate set for the asymptotic spectrum.
 *
 * Per unitary, the commutation equation is solvable only for ratios
 * lambda_a * conj(lambda_b) of its eigenvalues; the asymptotic spectrum is
 * contained in the intersection of those sets over the ensemble.
 */
std::vector<Complex> candidate_lambdas(const UnitaryEnsemble& e);

/// One rotating term of the asymptotic expansion.
struct AsymptoticTerm {
  Complex lambda;
  std::vector<Complex> coeffs;        ///< (X_i, rho)_HS per basis element
  std::vector<ComplexMatrix> basis;
};

/// Closed-form asymptotic trajectory rho_inf(n) of an initial state.
struct AsymptoticState {
  std::vector<AsymptoticTerm> terms;
};

/// Project rho onto the attractor structure of a report.
AsymptoticState asymptotic_state(const AttractorReport& report,
                                 const DensityMatrix& rho);

/// rho_inf(n) = sum_lambda lambda^n sum_i coeff_i X_i.
ComplexMatrix evaluate(const AsymptoticState& state, long n);

/**
 * @brief Decide convergence of a collective bipartite ensemble to the twirl.
 *
 * @throws std::invalid_argument "not bipartite" when dim is not a perfect
 *         square, "not a collective ensemble" when an item is not of the
 *         form u (x) u.
 */
AttractorReport check_convergence_to_twirl(const UnitaryEnsemble& e);

/**
 * @brief Cheap sufficient condition for stationarity.
 *
 * True when the intersection of the per-unitary eigenvalue-ratio sets is
 * contained in {1}; sufficient but not necessary.
 */
bool stationarity_sufficient(const UnitaryEnsemble& e);

}  // namespace twirlkit
