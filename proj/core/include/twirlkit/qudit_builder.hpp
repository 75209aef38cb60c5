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

#include "twirlkit/channels.hpp"
#include "twirlkit/matrix.hpp"

namespace twirlkit {

/**
 * @brief Parameters of the 2x2 block
 *        A = e^{i phi} [[alpha, beta], [-conj(beta), conj(alpha)]].
 *
 * Requires |alpha|^2 + |beta|^2 = 1 and both entries nonzero.
 */
struct BlockParams {
  double phi = 0.0;
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};

  /// The 2x2 unitary; validates the invariants.
  ComplexMatrix matrix() const;
};

/// Generic default block: incommensurate angles, entries well away from zero.
BlockParams default_block();

/// Ensemble layout: {h, u, v}, {h, uv}, or caller-supplied operators.
enum class ConstructionVariant { ThreeOp, TwoOpOddD, Custom };

/**
 * @brief Recipe for a collective twirling ensemble on C^d (x) C^d.
 *
 * Basis indices are 1-based (k = 1..d). `probs` empty means uniform.
 * A non-empty `words` list overrides the variant layout with products of
 * the generators h, u, v.
 */
struct ConstructionSpec {
  int d = 2;
  ConstructionVariant variant = ConstructionVariant::ThreeOp;
  BlockParams a = default_block();
  std::pair<int, int> v_subspace{1, 2};
  std::vector<double> probs;
  std::vector<std::string> words;
  std::vector<ComplexMatrix> custom_ops;
};

/**
 * @brief Diagonal generator h|k> = e^{i 2^{k-d} pi} |k>, k = 1..d.
 *
 * All d phases are pairwise distinct.
 * @throws std::invalid_argument for d < 2 or d > 62 (the smallest phase
 *         falls below double precision).
 */
ComplexMatrix build_h(int d);

/// Cyclic shift u|k> = |(k mod d) + 1>; u^d = 1.
ComplexMatrix build_u(int d);

/**
 * @brief v = A embedded on the `v_subspace` coordinates, identity elsewhere.
 *
 * @throws std::invalid_argument "A must have no vanishing entries" when
 *         alpha or beta vanishes; also on invalid subspace indices.
 */
ComplexMatrix build_v(const ConstructionSpec& spec);

/**
 * @brief Product of generators named by `word` over the alphabet {h, u, v},
 *        multiplied left to right as written.
 */
ComplexMatrix evaluate_word(const ConstructionSpec& spec,
                            const std::string& word);

/**
 * @brief Assemble the collective ensemble {(p_i, w_i (x) w_i)}.
 *
 * ThreeOp uses {h, u, v}; TwoOpOddD uses {h, uv} (even d permitted but
 * conjectural, see is_conjectural); Custom lifts `custom_ops`. A non-empty
 * `words` list takes precedence over the variant. When `verify_stationarity`
 * is set the built ensemble is post-checked: a cheap sufficient criterion
 * first, the full peripheral spectrum on fallback.
 *
 * @throws std::invalid_argument on probability arity mismatch.
 * @throws std::runtime_error when the post-check finds peripheral
 *         eigenvalues other than 1.
 */
UnitaryEnsemble build_ensemble(const ConstructionSpec& spec,
                               bool verify_stationarity = true);

/**
 * @brief Ensemble over explicit generator words, lifted collectively.
 *
 * @throws std::invalid_argument on an empty list, an empty word or a letter
 *         outside {h, u, v}.
 */
UnitaryEnsemble build_group_variant(const ConstructionSpec& spec,
                                    const std::vector<std::string>& words,
                                    bool verify_stationarity = true);

/// True for the two-operator layout at even d (numerically supported only).
bool is_conjectural(const ConstructionSpec& spec);

}  // namespace twirlkit
