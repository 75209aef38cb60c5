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
#include <string>

#include "twirlkit/attractors.hpp"
#include "twirlkit/channels.hpp"
#include "twirlkit/convergence.hpp"
#include "twirlkit/qubit_classifier.hpp"
#include "twirlkit/qudit_builder.hpp"

namespace twirlkit {

// JSON conventions: complex scalars are [re, im]; matrices are row-major
// nested arrays of complex scalars. All parsers throw std::invalid_argument
// with a human-readable message on malformed input.

/// {"dim": d, "items": [{"p": ..., "u": [[[re,im],...],...]}, ...]}
std::string ensemble_to_json(const UnitaryEnsemble& e, int indent = 2);
UnitaryEnsemble ensemble_from_json(const std::string& text);

/// {"d": ..., "variant": "three_op"|"two_op"|"custom", "A": {...}, ...}
std::string construction_to_json(const ConstructionSpec& spec, int indent = 2);
ConstructionSpec construction_from_json(const std::string& text);

/// True when the JSON object carries a "variant" key (construction recipe
/// rather than an explicit ensemble).
bool looks_like_construction(const std::string& text);

/// Spectrum, per-eigenvalue dimensions and the convergence flags; the
/// optional marks numerically-supported-only claims.
std::string report_to_json(const AttractorReport& report,
                           std::optional<bool> conjectural = std::nullopt,
                           int indent = 2);

/// Stable lower-case identifier for each rule.
std::string rule_name(TwirlRule rule);

std::string verdict_to_json(const TwirlVerdict& verdict, int indent = 2);

std::string optimization_to_json(const OptimizationResult& result,
                                 bool include_history, int indent = 2);

/// Header "n,distance", one row per iteration.
std::string trace_to_csv(const ConvergenceTrace& trace);
std::string trace_to_json(const ConvergenceTrace& trace, int indent = 2);

/// Overwrites the fields named in the JSON object on the process-wide
/// tolerance record; unknown keys are an error.
void apply_tolerance_overrides_json(const std::string& text);

}  // namespace twirlkit
