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

#include <cstdint>
#include <utility>
#include <vector>

#include "twirlkit/channels.hpp"
#include "twirlkit/qudit_builder.hpp"

namespace twirlkit {

/**
 * @brief Distance-to-twirl series with an exponential tail fit.
 *
 * distances[k] = ||S^n - T||_F at n = n_values[k]. fitted_rate is the
 * least-squares slope of log(distance) per iteration over the tail window;
 * for convergent ensembles exp(fitted_rate) tracks subdominant_modulus.
 */
struct ConvergenceTrace {
  std::vector<int> n_values;
  std::vector<double> distances;
  double fitted_rate = 0.0;
  double fit_r2 = 0.0;
  double subdominant_modulus = 0.0;
};

/**
 * @brief Derivative-free optimization outcome.
 *
 * best_params holds the full probability vector, followed by the block
 * angles (phi, t, a, b) for construction searches. history records every
 * evaluated point; best_objective is its minimum.
 */
struct OptimizationResult {
  std::vector<double> best_params;
  double best_objective = 1.0;
  int n_restarts = 0;
  std::vector<std::pair<std::vector<double>, double>> history;
};

/**
 * @brief ||S^n - T||_F for n = 0..n_max by repeated multiplication, plus
 *        a straight-line fit of the log-distance tail.
 *
 * The fit window is the tail [n_max/4, n_max], truncated where distances
 * fall below the round-off floor of iterated products.
 * @throws std::invalid_argument unless the ensemble is collective on a
 *         bipartite space and n_max >= 1.
 */
ConvergenceTrace trace_convergence(const UnitaryEnsemble& e, int n_max);

/**
 * @brief Asymptotic per-step contraction factor: the subdominant eigenvalue
 *        modulus of the ensemble's superoperator.
 *
 * @throws std::invalid_argument "non-convergent ensemble" unless the
 *         ensemble converges to the twirl.
 */
double convergence_rate(const UnitaryEnsemble& e);

/// Largest eigenvalue modulus strictly inside the unit circle (0 if none).
double subdominant_modulus(const Superoperator& s);

/**
 * @brief Minimize the contraction factor over the probability simplex.
 *
 * Compass search from `restarts` starts; restart 0 begins at the incumbent
 * probabilities, the rest at seeded random interior points. Probabilities
 * outside [1e-3, 1 - 1e-3] score the worst-case objective 1. Best effort:
 * never throws on non-convergent input (objective stays 1).
 */
OptimizationResult optimize_probabilities(const UnitaryEnsemble& e,
                                          int restarts, std::uint64_t seed,
                                          int max_evals_per_restart = 600);

/**
 * @brief Jointly minimize over probabilities and the block parameters
 *        (phi, and angles t, a, b with alpha = cos(t) e^{ia},
 *        beta = sin(t) e^{ib}).
 *
 * Candidates with t at the boundary (vanishing alpha or beta) or invalid
 * probabilities score 1. Restart 0 begins at the construction's own
 * parameters.
 * @throws std::invalid_argument unless the variant is ThreeOp or TwoOpOddD.
 */
OptimizationResult optimize_construction(const ConstructionSpec& spec,
                                         int restarts, std::uint64_t seed,
                                         int max_evals_per_restart = 600);

/// m Haar-random single-qudit unitaries lifted collectively, uniform probs.
UnitaryEnsemble random_baseline(int d, int m, std::uint64_t seed);

}  // namespace twirlkit
