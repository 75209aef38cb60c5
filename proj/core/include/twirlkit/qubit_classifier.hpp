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

#include <string>
#include <utility>
#include <vector>

#include "twirlkit/matrix.hpp"

namespace twirlkit {

/// Canonical angles of one non-pivot operator relative to the pivot basis:
/// diagonal entry e^{i theta} cos(gamma), lower-left entry e^{i mu} sin(gamma).
struct SingleQubitAngles {
  double theta = 0.0;
  double mu = 0.0;
  double gamma = 0.0;
};

/**
 * @brief Canonical parametrization of a qubit-unitary list.
 *
 * The pivot is SU(2)-projected and diagonalized to diag(e^{i phi}, e^{-i phi})
 * with phi in (0, pi); all other members carry (theta, mu, gamma) in the
 * pivot eigenbasis. `others` pairs each original index with its angles.
 */
struct QubitParams {
  int pivot_index = 0;
  double phi = 0.0;
  std::vector<std::pair<int, SingleQubitAngles>> others;
};

/// Which convergence rule decided the verdict.
enum class TwirlRule {
  TwoOpTraceless,       ///< traceless pivot: gamma and theta both off-grid
  TwoOpTraceNonzero,    ///< non-traceless pivot: gamma off-grid
  MultiOpTraceNonzero,  ///< some pivot with nonzero trace sees gamma off-grid
  MultiOpAllTraceless,  ///< gamma off-grid and a mu difference off-grid
  None,                 ///< no rule fired: no convergence
};

/**
 * @brief Classification result with the witness parameters that decided it.
 *
 * `rule_fired == None` exactly when `converges == false`. The witness lists
 * the parameter assignments (named doubles) that satisfied or violated the
 * rule, e.g. the pivot phase and the gamma that fired.
 */
struct TwirlVerdict {
  bool converges = false;
  TwirlRule rule_fired = TwirlRule::None;
  std::vector<std::pair<std::string, double>> witness;
};

/// Projection into SU(2): divide by the principal square root of det(u).
ComplexMatrix su2_project(const ComplexMatrix& u);

/// diag(e^{i phi}, e^{-i phi}).
ComplexMatrix su2_from_phase(double phi);

/// [[e^{i theta} cos g, -e^{-i mu} sin g], [e^{i mu} sin g, e^{-i theta} cos g]].
ComplexMatrix su2_from_angles(const SingleQubitAngles& a);

/**
 * @brief Canonicalize a list of 2x2 unitaries relative to one pivot.
 *
 * @throws std::invalid_argument "degenerate pivot" when the pivot projects
 *         to +/- identity (no preferred eigenbasis), or on non-unitary /
 *         wrongly sized input.
 */
QubitParams canonicalize(const std::vector<ComplexMatrix>& us, int pivot);

/**
 * @brief Two-operator convergence decision from canonical parameters.
 *
 * Convergence holds iff either the traceless-pivot rule (phi at +/- pi/2,
 * gamma and theta off their critical grids) or the generic rule (phi away
 * from +/- pi/2, gamma off-grid) fires; mu never enters.
 */
TwirlVerdict classify_two(const QubitParams& params);

/**
 * @brief General m >= 2 convergence decision on the raw unitary list.
 *
 * Members projecting to +/- identity are inert and ignored; if any remaining
 * member has nonzero trace, every such pivot is tried; otherwise the
 * all-traceless rule applies (gamma off-grid somewhere, and two distinct
 * mu-carrying members whose mu difference is not a multiple of pi/2).
 */
TwirlVerdict classify_multi(const std::vector<ComplexMatrix>& us);

/**
 * @brief Smallest convergent subset (at most four members).
 *
 * Searches subsets of ascending size in lexicographic order and returns the
 * original indices of the first convergent one.
 * @throws std::invalid_argument when the full list does not converge.
 */
std::vector<int> minimal_subset(const std::vector<ComplexMatrix>& us);

/**
 * @brief Agreement between the analytic rules and the numerical oracle.
 *
 * Lifts the list to the collective two-qubit ensemble with the given
 * probabilities and compares classify_multi against the attractor
 * decomposition's verdict.
 */
bool cross_validate(const std::vector<ComplexMatrix>& us,
                    const std::vector<double>& probs);

}  // namespace twirlkit
