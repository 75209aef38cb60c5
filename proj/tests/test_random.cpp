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
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "twirlkit/matrix.hpp"
#include "twirlkit/random.hpp"

namespace {
using namespace twirlkit;
}

TEST_SUITE("random") {

TEST_CASE("dimension one draws are unit-modulus phases") {
  std::mt19937_64 eng(1);
  for (int k = 0; k < 20; ++k) {
    ComplexMatrix u = haar_unitary(1, eng);
    CHECK(std::abs(std::abs(u(0, 0)) - 1.0) < 1e-14);
  }
}

TEST_CASE("draws are unitary across dimensions") {
  std::mt19937_64 eng(2);
  for (int d : {2, 3, 6})
    for (int k = 0; k < 10; ++k) CHECK(is_unitary(haar_unitary(d, eng), 1e-12));
}

TEST_CASE("fixed engine state reproduces the draw") {
  std::mt19937_64 a(42), b(42);
  CHECK((haar_unitary(3, a) - haar_unitary(3, b)).norm() == 0.0);
  std::mt19937_64 c(43);
  CHECK((haar_unitary(3, a) - haar_unitary(3, c)).norm() > 1e-3);
}

TEST_CASE("non-positive dimension is rejected") {
  std::mt19937_64 eng(3);
  CHECK_THROWS_AS((void)haar_unitary(0, eng), std::invalid_argument);
}

TEST_CASE("first-entry second moment matches the haar value") {
  // E|u_00|^2 = 1/d for the haar measure; at d = 2 the sample mean over 1e4
  // draws concentrates within a few standard errors of 1/2.
  std::mt19937_64 eng(4);
  double acc = 0.0;
  const int n = 10000;
  for (int k = 0; k < n; ++k) acc += std::norm(haar_unitary(2, eng)(0, 0));
  CHECK(std::abs(acc / n - 0.5) < 0.02);
}

TEST_CASE("left translation preserves the first-entry moment") {
  std::mt19937_64 eng(5);
  ComplexMatrix v = haar_unitary(2, eng);
  double acc = 0.0;
  const int n = 10000;
  for (int k = 0; k < n; ++k)
    acc += std::norm((v * haar_unitary(2, eng))(0, 0));
  CHECK(std::abs(acc / n - 0.5) < 0.02);
}

}  // TEST_SUITE
