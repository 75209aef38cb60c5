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

#include <random>

#include "twirlkit/matrix.hpp"

namespace twirlkit {

/**
 * @brief Haar-distributed random unitary of dimension d.
 *
 * Ginibre sample + QR with the R-diagonal phase correction, which makes the
 * distribution exactly the Haar measure (plain QR alone is biased).
 * Deterministic for a fixed engine state.
 *
 * @throws std::invalid_argument for d < 1.
 */
ComplexMatrix haar_unitary(int d, std::mt19937_64& engine);

}  // namespace twirlkit
