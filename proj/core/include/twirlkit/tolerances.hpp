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

namespace twirlkit {

/**
 * @brief Central numeric-tolerance record shared by every module.
 *
 * All comparison thresholds live here so a single override (see the
 * TWIRLKIT_TOL_OVERRIDE environment variable handled by the CLI) retunes the
 * whole stack consistently. Defaults are chosen for double precision at the
 * matrix sizes this library targets (Hilbert space dimension <= ~1300).
 */
struct Tolerances {
  /// Frobenius deviation of U*U - 1 accepted when validating a unitary.
  double unitarity = 1e-12;
  /// Relative eigenpair residual ||M v - lambda v|| / ||M||_F accepted.
  double eigen_residual = 1e-9;
  /// Relative norm below which a Gram-Schmidt residual counts as dependent.
  double rank_drop = 1e-10;
  /// Margin for |lambda| >= 1 - unit_circle when testing peripheral spectrum.
  double unit_circle = 1e-10;
  /// Complex distance under which two eigenvalues merge into one cluster.
  double eigen_dedup = 1e-8;
  /// Frobenius norm of the projector difference accepted as subspace equality.
  double subspace = 1e-8;
  /// Singular values below nullspace_rel * sigma_max count as null directions.
  double nullspace_rel = 1e-9;
  /// Angular tolerance (radians, wrap-around aware) for classifier angle tests.
  double angular = 1e-9;
  /// Frobenius deviation from M = M* accepted when validating a state.
  double hermiticity = 1e-12;
  /// |Tr(rho) - 1| accepted when validating a state.
  double trace = 1e-12;
  /// States may have eigenvalues down to -psd_floor (numerical zero).
  double psd_floor = 1e-10;
  /// Kronecker products larger than this per side are refused.
  std::int64_t max_kron_dim = 10000;
};

/**
 * @brief Mutable process-wide tolerance record.
 *
 * Intended to be adjusted once at startup (before concurrent use) and read
 * thereafter; every twirlkit entry point consults this instance.
 */
Tolerances& tolerances();

}  // namespace twirlkit
