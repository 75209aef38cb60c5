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

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "twirlkit/attractors.hpp"
#include "twirlkit/channels.hpp"
#include "twirlkit/linalg.hpp"
#include "twirlkit/qudit_builder.hpp"
#include "twirlkit/tolerances.hpp"

namespace {

using namespace twirlkit;
constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

BlockParams random_block(std::mt19937_64& eng) {
  std::uniform_real_distribution<double> unif(0.0, 2 * kPi);
  std::uniform_real_distribution<double> tilt(0.15, kPi / 2 - 0.15);
  BlockParams a;
  a.phi = unif(eng);
  double t = tilt(eng);
  a.alpha = std::polar(std::cos(t), unif(eng));
  a.beta = std::polar(std::sin(t), unif(eng));
  return a;
}

/// Fixed space of the ensemble's superoperator via the direct null space,
/// which stays cheap at dimensions where the full spectrum is slow.
ComplexMatrix fixed_space(const UnitaryEnsemble& e) {
  Superoperator s = build_superoperator(e);
  ComplexMatrix m =
      s.mat - ComplexMatrix::Identity(s.mat.rows(), s.mat.cols());
  return nullspace(m, tolerances().nullspace_rel);
}

/// Normalized vec'd projector pair spanning the twirl fixed space.
ComplexMatrix projector_span(int d) {
  auto [ps, pa] = sym_asym_projectors(d);
  ComplexMatrix target(static_cast<Eigen::Index>(d) * d * d * d, 2);
  target.col(0) = vec_col(ps) / vec_col(ps).norm();
  target.col(1) = vec_col(pa) / vec_col(pa).norm();
  return target;
}

}  // namespace

TEST_SUITE("builder") {

TEST_CASE("diagonal generator phases halve downward from pi") {
  ComplexMatrix h2 = build_h(2);
  CHECK(std::abs(h2(0, 0) - kI) < 1e-12);
  CHECK(std::abs(h2(1, 1) + Complex(1, 0)) < 1e-12);

  ComplexMatrix h3 = build_h(3);
  CHECK(std::arg(h3(0, 0)) == doctest::Approx(kPi / 4).epsilon(1e-13));
  CHECK(std::arg(h3(1, 1)) == doctest::Approx(kPi / 2).epsilon(1e-13));
  CHECK(std::abs(h3(2, 2) + Complex(1, 0)) < 1e-12);

  for (int d : {2, 5, 12}) {
    ComplexMatrix h = build_h(d);
    CHECK(is_unitary(h, 1e-12));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (i != j) {
          CHECK(std::abs(h(i, j)) == 0.0);
          CHECK(std::abs(h(i, i) - h(j, j)) > 1e-3);
        }
  }
}

TEST_CASE("dimension bounds are enforced") {
  CHECK_THROWS_AS((void)build_h(1), std::invalid_argument);
  CHECK_THROWS_AS((void)build_h(63), std::invalid_argument);
  ConstructionSpec spec;
  spec.d = 63;
  CHECK_THROWS_AS((void)build_ensemble(spec), std::invalid_argument);
}

TEST_CASE("cyclic shift acts transitively with full root spectrum") {
  ComplexMatrix u2 = build_u(2);
  CHECK(std::abs(u2(0, 1) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(u2(1, 0) - Complex(1, 0)) < 1e-15);

  ComplexMatrix u3 = build_u(3);
  ComplexVector e2 = ComplexVector::Zero(3);
  e2(2) = 1;
  CHECK(std::abs((u3 * e2)(0) - Complex(1, 0)) < 1e-15);

  for (int d : {3, 4, 6}) {
    ComplexMatrix u = build_u(d);
    ComplexMatrix power = ComplexMatrix::Identity(d, d);
    for (int k = 0; k < d; ++k) power = u * power;
    CHECK((power - ComplexMatrix::Identity(d, d)).norm() < 1e-13);
    auto vals = eig(u).values;
    for (Eigen::Index j = 0; j < d; ++j) {
      Complex root = std::pow(vals(j), d);
      CHECK(std::abs(root - Complex(1, 0)) < 1e-10);
    }
  }
}

TEST_CASE("block embeds exactly on the selected plane") {
  ConstructionSpec spec;
  spec.d = 2;
  CHECK((build_v(spec) - spec.a.matrix()).norm() < 1e-14);

  ConstructionSpec real_rotation;
  real_rotation.d = 3;
  real_rotation.a.phi = 0.0;
  real_rotation.a.alpha = 1 / std::sqrt(2.0);
  real_rotation.a.beta = 1 / std::sqrt(2.0);
  ComplexMatrix v = build_v(real_rotation);
  ComplexMatrix expect(3, 3);
  double s = 1 / std::sqrt(2.0);
  expect << s, s, 0, -s, s, 0, 0, 0, 1;
  CHECK((v - expect).norm() < 1e-14);

  ConstructionSpec offset;
  offset.d = 4;
  offset.v_subspace = {2, 4};
  ComplexMatrix v4 = build_v(offset);
  CHECK(std::abs(v4(0, 0) - Complex(1, 0)) < 1e-14);
  CHECK(std::abs(v4(2, 2) - Complex(1, 0)) < 1e-14);
  CHECK(std::abs(v4(1, 1) - offset.a.matrix()(0, 0)) < 1e-14);
  CHECK(std::abs(v4(3, 1) - offset.a.matrix()(1, 0)) < 1e-14);

  std::mt19937_64 eng(53);
  for (int trial = 0; trial < 5; ++trial) {
    ConstructionSpec random_spec;
    random_spec.d = 5;
    random_spec.a = random_block(eng);
    CHECK(is_unitary(build_v(random_spec), 1e-12));
  }
}

TEST_CASE("block parameter validation") {
  ConstructionSpec bad_norm;
  bad_norm.a.alpha = 1.0;
  bad_norm.a.beta = 0.5;
  CHECK_THROWS_WITH_AS(
      (void)build_v(bad_norm),
      "block parameters must satisfy |alpha|^2 + |beta|^2 = 1",
      std::invalid_argument);

  ConstructionSpec vanishing;
  vanishing.a.alpha = 1.0;
  vanishing.a.beta = 0.0;
  CHECK_THROWS_WITH_AS((void)build_v(vanishing),
                       "A must have no vanishing entries",
                       std::invalid_argument);

  ConstructionSpec bad_plane;
  bad_plane.d = 3;
  bad_plane.v_subspace = {2, 2};
  CHECK_THROWS_AS((void)build_v(bad_plane), std::invalid_argument);
}

TEST_CASE("three-operator ensembles lift the expected generators") {
  ConstructionSpec spec;
  spec.d = 3;
  UnitaryEnsemble e = build_ensemble(spec);
  REQUIRE(e.size() == 3);
  CHECK(e.dim() == 9);
  ComplexMatrix h = build_h(3), u = build_u(3), v = build_v(spec);
  CHECK((e.items()[0].u - kron(h, h)).norm() < 1e-13);
  CHECK((e.items()[1].u - kron(u, u)).norm() < 1e-13);
  CHECK((e.items()[2].u - kron(v, v)).norm() < 1e-13);
  for (const auto& item : e.items()) CHECK(item.p == doctest::Approx(1.0 / 3));
}

TEST_CASE("two-operator ensembles combine the shift into the block") {
  ConstructionSpec spec;
  spec.d = 3;
  spec.variant = ConstructionVariant::TwoOpOddD;
  UnitaryEnsemble e = build_ensemble(spec);
  REQUIRE(e.size() == 2);
  ComplexMatrix h = build_h(3), uv = build_u(3) * build_v(spec);
  CHECK((e.items()[0].u - kron(h, h)).norm() < 1e-13);
  CHECK((e.items()[1].u - kron(uv, uv)).norm() < 1e-13);
}

TEST_CASE("probability overrides must match the member count") {
  ConstructionSpec spec;
  spec.d = 2;
  spec.probs = {0.5, 0.5};  // three members
  CHECK_THROWS_AS((void)build_ensemble(spec), std::invalid_argument);
  spec.probs = {0.2, 0.3, 0.5};
  CHECK_NOTHROW((void)build_ensemble(spec));
}

TEST_CASE("three-operator construction converges at small dimensions") {
  for (int d : {2, 3}) {
    ConstructionSpec spec;
    spec.d = d;
    AttractorReport rep = check_convergence_to_twirl(build_ensemble(spec));
    CHECK(rep.converges_to_twirl);
    CHECK(rep.fixed_point_dim == 2);
  }
}

TEST_CASE("two-operator construction pins the fixed space, odd and even") {
  ConstructionSpec odd;
  odd.d = 3;
  odd.variant = ConstructionVariant::TwoOpOddD;
  CHECK_FALSE(is_conjectural(odd));
  AttractorReport rep = check_convergence_to_twirl(build_ensemble(odd));
  CHECK(rep.converges_to_twirl);
  CHECK(rep.fixed_point_dim == 2);

  ConstructionSpec even = odd;
  even.d = 4;
  CHECK(is_conjectural(even));
  UnitaryEnsemble e = build_ensemble(even);  // stationarity verified inside
  ComplexMatrix ns = fixed_space(e);
  REQUIRE(ns.cols() == 2);
  CHECK(subspace_projector_distance(ns, projector_span(4)) < 1e-8);

  ConstructionSpec three_op_even;
  three_op_even.d = 4;
  CHECK_FALSE(is_conjectural(three_op_even));
}

TEST_CASE("a mixing plane with spacing sharing a factor with d degenerates") {
  // Shift conjugates of v only ever mix levels at the chosen spacing, so the
  // pair orbit covers all level pairs iff gcd(spacing, d) = 1. At d = 4 the
  // plane {1,3} splits the orbit in two and doubles the fixed space.
  ConstructionSpec degenerate;
  degenerate.d = 4;
  degenerate.variant = ConstructionVariant::ThreeOp;
  degenerate.v_subspace = {1, 3};
  ComplexMatrix ns = fixed_space(build_ensemble(degenerate, false));
  CHECK(ns.cols() == 4);

  ConstructionSpec coprime = degenerate;
  coprime.v_subspace = {1, 4};  // spacing 3, coprime with 4
  CHECK(fixed_space(build_ensemble(coprime, false)).cols() == 2);
}

TEST_CASE("word ensembles match the variant they spell") {
  ConstructionSpec spec;
  spec.d = 3;
  spec.variant = ConstructionVariant::TwoOpOddD;
  UnitaryEnsemble direct = build_ensemble(spec);

  ConstructionSpec worded;
  worded.d = 3;
  worded.words = {"h", "uv"};
  UnitaryEnsemble via_words = build_ensemble(worded);
  REQUIRE(via_words.size() == direct.size());
  for (std::size_t k = 0; k < direct.size(); ++k)
    CHECK((via_words.items()[k].u - direct.items()[k].u).norm() < 1e-13);
}

TEST_CASE("words multiply left to right") {
  ConstructionSpec spec;
  spec.d = 3;
  ComplexMatrix h = build_h(3), u = build_u(3), v = build_v(spec);
  CHECK((evaluate_word(spec, "uvhuv") - u * v * h * u * v).norm() < 1e-13);
}

TEST_CASE("conjugated two-word group shares the two-operator fixed space") {
  ConstructionSpec base;
  base.d = 3;
  base.words = {"h", "uv"};
  ConstructionSpec conjugated;
  conjugated.d = 3;
  conjugated.words = {"uvhuv", "uv"};
  ComplexMatrix a = fixed_space(build_ensemble(base));
  ComplexMatrix b = fixed_space(build_ensemble(conjugated));
  REQUIRE(a.cols() == 2);
  REQUIRE(b.cols() == 2);
  CHECK(subspace_projector_distance(a, b) < 1e-8);
}

TEST_CASE("a lone shift generator has a large fixed space") {
  ConstructionSpec spec;
  spec.d = 3;
  spec.words = {"u"};
  UnitaryEnsemble e = build_ensemble(spec, /*verify_stationarity=*/false);
  CHECK(fixed_space(e).cols() > 2);
}

TEST_CASE("word validation") {
  ConstructionSpec spec;
  spec.d = 3;
  spec.words = {""};
  CHECK_THROWS_AS((void)build_ensemble(spec), std::invalid_argument);
  spec.words = {"hx"};
  CHECK_THROWS_AS((void)build_ensemble(spec), std::invalid_argument);
  ConstructionSpec custom;
  custom.variant = ConstructionVariant::Custom;
  CHECK_THROWS_AS((void)build_ensemble(custom), std::invalid_argument);
}

TEST_CASE("custom operators are lifted as given") {
  ConstructionSpec spec;
  spec.d = 2;
  spec.variant = ConstructionVariant::Custom;
  spec.custom_ops = {build_h(2), build_u(2)};
  UnitaryEnsemble e = build_ensemble(spec, /*verify_stationarity=*/false);
  REQUIRE(e.size() == 2);
  CHECK((e.items()[1].u - kron(build_u(2), build_u(2))).norm() < 1e-14);
}

TEST_CASE("random blocks keep the cheap stationarity certificate") {
  std::mt19937_64 eng(59);
  for (int d : {2, 3, 4}) {
    int certified = 0;
    const int trials = 5;
    for (int k = 0; k < trials; ++k) {
      ConstructionSpec spec;
      spec.d = d;
      spec.a = random_block(eng);
      UnitaryEnsemble e = build_ensemble(spec);
      if (stationarity_sufficient(e)) ++certified;
    }
    CHECK(certified > trials / 2);
  }
}

}  // TEST_SUITE
