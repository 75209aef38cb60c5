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

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "twirlkit/attractors.hpp"
#include "twirlkit/channels.hpp"
#include "twirlkit/convergence.hpp"
#include "twirlkit/linalg.hpp"
#include "twirlkit/qubit_classifier.hpp"
#include "twirlkit/qudit_builder.hpp"
#include "twirlkit/tolerances.hpp"

namespace {

using namespace twirlkit;
constexpr double kPi = std::numbers::pi;

UnitaryEnsemble weighted_pair(double p1) {
  return lift_collective(
      {su2_from_phase(kPi / 4), su2_from_angles({kPi / 4, 0.0, kPi / 4})},
      {p1, 1 - p1});
}

UnitaryEnsemble floor_set() {
  return lift_collective(
      {su2_from_phase(kPi / 4), su2_from_phase(kPi / 3),
       su2_from_angles({0.0, 0.0, kPi / 2}),
       su2_from_angles({0.0, kPi / 5, kPi / 2})},
      {0.25, 0.25, 0.25, 0.25});
}

/// Pair whose members are exchanged by conjugation with the hadamard
/// involution, so the objective is exactly symmetric under p -> 1 - p.
UnitaryEnsemble swap_symmetric_pair() {
  ComplexMatrix h2(2, 2);
  h2 << 1, 1, 1, -1;
  h2 /= std::sqrt(2.0);
  ComplexMatrix u1 = su2_from_phase(kPi / 4);
  ComplexMatrix u2 = h2 * u1 * h2;
  return lift_collective({u1, u2}, {0.3, 0.7});
}

int fixed_dim(const UnitaryEnsemble& e) {
  Superoperator s = build_superoperator(e);
  ComplexMatrix m =
      s.mat - ComplexMatrix::Identity(s.mat.rows(), s.mat.cols());
  return static_cast<int>(nullspace(m, tolerances().nullspace_rel).cols());
}

}  // namespace

TEST_SUITE("convergence") {

TEST_CASE("trace shape and exponential tail fit") {
  ConvergenceTrace trace = trace_convergence(weighted_pair(0.75), 100);
  REQUIRE(trace.n_values.size() == 101);
  CHECK(trace.n_values.front() == 0);
  CHECK(trace.n_values.back() == 100);
  for (double d : trace.distances) CHECK(d > 0.0);
  for (std::size_t k = 20; k < trace.distances.size(); ++k)
    CHECK(trace.distances[k] < trace.distances[k - 1]);

  CHECK(trace.subdominant_modulus == doctest::Approx(0.88654).epsilon(1e-3));
  CHECK(trace.fit_r2 > 0.999);
  CHECK(std::exp(trace.fitted_rate) ==
        doctest::Approx(trace.subdominant_modulus).epsilon(5e-3));
}

TEST_CASE("minimal trace has two points") {
  ConvergenceTrace trace = trace_convergence(weighted_pair(0.75), 1);
  CHECK(trace.n_values.size() == 2);
}

TEST_CASE("trace input validation") {
  CHECK_THROWS_AS((void)trace_convergence(weighted_pair(0.75), 0),
                  std::invalid_argument);
  ComplexMatrix sx(2, 2);
  sx << 0, 1, 1, 0;
  UnitaryEnsemble qubit_only(std::vector<EnsembleItem>{{1.0, sx}});
  CHECK_THROWS_AS((void)trace_convergence(qubit_only, 5),
                  std::invalid_argument);
  ComplexMatrix cnot = ComplexMatrix::Identity(4, 4);
  cnot(2, 2) = cnot(3, 3) = 0;
  cnot(2, 3) = cnot(3, 2) = 1;
  UnitaryEnsemble entangling(std::vector<EnsembleItem>{{1.0, cnot}});
  CHECK_THROWS_AS((void)trace_convergence(entangling, 5),
                  std::invalid_argument);
}

TEST_CASE("non-convergent ensembles plateau above the floor") {
  ConvergenceTrace trace = trace_convergence(floor_set(), 60);
  for (double d : trace.distances) CHECK(d > 0.1);
  CHECK(std::abs(trace.fitted_rate) < 0.01);
}

TEST_CASE("rate comparisons across probability assignments") {
  double at_default = convergence_rate(weighted_pair(0.75));
  double at_optimum = convergence_rate(weighted_pair(0.459));
  CHECK(at_default == doctest::Approx(0.88654).epsilon(1e-3));
  CHECK(at_optimum == doctest::Approx(0.82096).epsilon(1e-3));
  CHECK(at_optimum < at_default);
  CHECK(at_optimum > 0.0);
  CHECK(at_default < 1.0);
}

TEST_CASE("rate is undefined for non-convergent ensembles") {
  CHECK_THROWS_AS((void)convergence_rate(floor_set()), std::invalid_argument);
}

TEST_CASE("global member phases do not move the rate") {
  UnitaryEnsemble base = weighted_pair(0.7);
  ComplexMatrix m1 = std::polar(1.0, 0.8) * su2_from_phase(kPi / 4);
  ComplexMatrix m2 =
      std::polar(1.0, -1.3) * su2_from_angles({kPi / 4, 0.0, kPi / 4});
  UnitaryEnsemble with_phases = lift_collective({m1, m2}, {0.7, 0.3});
  CHECK(convergence_rate(base) ==
        doctest::Approx(convergence_rate(with_phases)).epsilon(1e-12));
}

TEST_CASE("subdominant modulus of exact projections is zero") {
  CHECK(subdominant_modulus(twirl_superoperator(2)) < 1e-12);
  Superoperator identity{2, ComplexMatrix::Identity(16, 16)};
  CHECK(subdominant_modulus(identity) == 0.0);
}

TEST_CASE("probability search recovers the two-member optimum") {
  UnitaryEnsemble e = weighted_pair(0.75);
  OptimizationResult result = optimize_probabilities(e, 8, 0);
  REQUIRE(result.best_params.size() == 2);
  CHECK(result.best_params[0] > 0.409);
  CHECK(result.best_params[0] < 0.509);
  CHECK(result.best_objective < convergence_rate(e));
  CHECK(result.n_restarts == 8);

  double history_min = 2.0;
  for (const auto& [params, value] : result.history) {
    CHECK(params.size() == 2);
    history_min = std::min(history_min, value);
  }
  CHECK(result.best_objective == history_min);
}

TEST_CASE("optimizer matches a fine grid scan") {
  UnitaryEnsemble e = weighted_pair(0.75);
  OptimizationResult result = optimize_probabilities(e, 8, 0);
  double best_p = -1, best_r = 2;
  for (double p = 0.40; p <= 0.52 + 1e-12; p += 1e-3) {
    double r = subdominant_modulus(
        build_superoperator(e.with_probabilities({p, 1 - p})));
    if (r < best_r) {
      best_r = r;
      best_p = p;
    }
  }
  CHECK(std::abs(result.best_params[0] - best_p) < 2e-3);
  CHECK(result.best_objective <= best_r + 1e-9);
}

TEST_CASE("symmetric pairs optimize to the balanced mixture") {
  OptimizationResult result =
      optimize_probabilities(swap_symmetric_pair(), 4, 0);
  CHECK(std::abs(result.best_params[0] - 0.5) < 1e-3);
  CHECK(result.best_objective ==
        doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("probabilities never leave the interior box") {
  OptimizationResult result =
      optimize_probabilities(swap_symmetric_pair(), 4, 1);
  for (double p : result.best_params) {
    CHECK(p >= 1e-3);
    CHECK(p <= 1 - 1e-3);
  }
}

TEST_CASE("construction search improves on the default block") {
  for (auto variant :
       {ConstructionVariant::ThreeOp, ConstructionVariant::TwoOpOddD}) {
    ConstructionSpec spec;
    spec.d = 3;
    spec.variant = variant;
    double incumbent =
        subdominant_modulus(build_superoperator(build_ensemble(spec)));
    OptimizationResult result = optimize_construction(spec, 2, 0, 150);
    std::size_t m = variant == ConstructionVariant::ThreeOp ? 3 : 2;
    REQUIRE(result.best_params.size() == m + 4);
    CHECK(result.best_objective < incumbent - 1e-3);
    double t = result.best_params[m + 1];
    CHECK(t > 1e-3);
    CHECK(t < kPi / 2 - 1e-3);
    double sum = 0;
    for (std::size_t k = 0; k < m; ++k) sum += result.best_params[k];
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("construction search helps the conjectural even dimension too") {
  ConstructionSpec spec;
  spec.d = 4;
  spec.variant = ConstructionVariant::TwoOpOddD;
  double incumbent =
      subdominant_modulus(build_superoperator(build_ensemble(spec)));
  OptimizationResult result = optimize_construction(spec, 1, 0, 40);
  CHECK(result.best_objective < incumbent - 1e-4);
}

TEST_CASE("construction search rejects unsupported variants") {
  ConstructionSpec spec;
  spec.variant = ConstructionVariant::Custom;
  spec.custom_ops = {ComplexMatrix::Identity(2, 2)};
  CHECK_THROWS_AS((void)optimize_construction(spec, 1, 0),
                  std::invalid_argument);
}

TEST_CASE("random baselines are reproducible and convergent") {
  UnitaryEnsemble a = random_baseline(2, 2, 5);
  UnitaryEnsemble b = random_baseline(2, 2, 5);
  for (std::size_t k = 0; k < a.size(); ++k)
    CHECK((a.items()[k].u - b.items()[k].u).norm() == 0.0);

  CHECK(check_convergence_to_twirl(a).converges_to_twirl);
  CHECK(fixed_dim(random_baseline(4, 2, 7)) == 2);

  CHECK_THROWS_AS((void)random_baseline(1, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)random_baseline(2, 1, 0), std::invalid_argument);
}

}  // TEST_SUITE
