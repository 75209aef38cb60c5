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

#include "twirlkit/qudit_builder.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "twirlkit/attractors.hpp"
#include "twirlkit/tolerances.hpp"

namespace twirlkit {

namespace {

void require_dimension(int d) {
  if (d < 2) throw std::invalid_argument("dimension must be at least 2");
  // At d > 62 the smallest phase 2^{1-d} pi drops below the double-precision
  // resolution of e^{i phi} near 1, making h numerically degenerate.
  if (d > 62) throw std::invalid_argument("dimension must be at most 62");
}

std::vector<double> resolve_probs(const ConstructionSpec& spec,
                                  std::size_t arity) {
  if (spec.probs.empty())
    return std::vector<double>(arity, 1.0 / static_cast<double>(arity));
  if (spec.probs.size() != arity)
    throw std::invalid_argument("probability arity mismatch");
  return spec.probs;
}

UnitaryEnsemble lift_and_verify(const std::vector<ComplexMatrix>& ops,
                                const std::vector<double>& probs,
                                bool verify) {
  UnitaryEnsemble e = lift_collective(ops, probs);
  if (verify && !stationarity_sufficient(e)) {
    // The cheap criterion is sufficient, not necessary; settle with the
    // full peripheral spectrum before rejecting.
    const std::vector<Complex> peripheral =
        asymptotic_spectrum(build_superoperator(e));
    const double tol = tolerances().eigen_dedup;
    for (const Complex& lambda : peripheral)
      if (std::abs(lambda - Complex{1.0, 0.0}) > tol)
        throw std::runtime_error(
            "construction is not asymptotically stationary");
  }
  return e;
}

}  // namespace

ComplexMatrix BlockParams::matrix() const {
  const double sum = std::norm(alpha) + std::norm(beta);
  if (std::fabs(sum - 1.0) > 1e-9)
    throw std::invalid_argument(
        "block parameters must satisfy |alpha|^2 + |beta|^2 = 1");
  if (std::abs(alpha) <= 1e-12 || std::abs(beta) <= 1e-12)
    throw std::invalid_argument("A must have no vanishing entries");
  const double scale = 1.0 / std::sqrt(sum);
  const Complex a = alpha * scale;
  const Complex b = beta * scale;
  const Complex phase = std::polar(1.0, phi);
  ComplexMatrix m(2, 2);
  m(0, 0) = phase * a;
  m(0, 1) = phase * b;
  m(1, 0) = -phase * std::conj(b);
  m(1, 1) = phase * std::conj(a);
  return m;
}

BlockParams default_block() {
  BlockParams p;
  p.phi = std::numbers::pi / 7.0;
  p.alpha = Complex{0.8, 0.1};
  p.beta = Complex{std::sqrt(0.35), 0.0};
  return p;
}

ComplexMatrix build_h(int d) {
  require_dimension(d);
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  for (int k = 1; k <= d; ++k)
    h(k - 1, k - 1) = std::polar(1.0, std::ldexp(std::numbers::pi, k - d));
  return h;
}

ComplexMatrix build_u(int d) {
  require_dimension(d);
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) u((j + 1) % d, j) = Complex{1.0, 0.0};
  return u;
}

ComplexMatrix build_v(const ConstructionSpec& spec) {
  require_dimension(spec.d);
  const auto [i1, j1] = spec.v_subspace;
  if (i1 < 1 || i1 > spec.d || j1 < 1 || j1 > spec.d || i1 == j1)
    throw std::invalid_argument("v_subspace indices must be distinct in 1..d");
  const ComplexMatrix a = spec.a.matrix();
  ComplexMatrix v = ComplexMatrix::Identity(spec.d, spec.d);
  const int i = i1 - 1;
  const int j = j1 - 1;
  v(i, i) = a(0, 0);
  v(i, j) = a(0, 1);
  v(j, i) = a(1, 0);
  v(j, j) = a(1, 1);
  return v;
}

ComplexMatrix evaluate_word(const ConstructionSpec& spec,
                            const std::string& word) {
  if (word.empty()) throw std::invalid_argument("empty word");
  const ComplexMatrix h = build_h(spec.d);
  const ComplexMatrix u = build_u(spec.d);
  const ComplexMatrix v = build_v(spec);
  ComplexMatrix product = ComplexMatrix::Identity(spec.d, spec.d);
  for (char c : word) {
    switch (c) {
      case 'h': product = (product * h).eval(); break;
      case 'u': product = (product * u).eval(); break;
      case 'v': product = (product * v).eval(); break;
      default:
        throw std::invalid_argument("word letters must be h, u or v");
    }
  }
  return product;
}

UnitaryEnsemble build_ensemble(const ConstructionSpec& spec,
                               bool verify_stationarity) {
  if (!spec.words.empty())
    return build_group_variant(spec, spec.words, verify_stationarity);
  require_dimension(spec.d);
  std::vector<ComplexMatrix> ops;
  switch (spec.variant) {
    case ConstructionVariant::ThreeOp:
      ops = {build_h(spec.d), build_u(spec.d), build_v(spec)};
      break;
    case ConstructionVariant::TwoOpOddD:
      ops = {build_h(spec.d), (build_u(spec.d) * build_v(spec)).eval()};
      break;
    case ConstructionVariant::Custom:
      if (spec.custom_ops.empty())
        throw std::invalid_argument("custom variant requires operators");
      ops = spec.custom_ops;
      break;
  }
  return lift_and_verify(ops, resolve_probs(spec, ops.size()),
                         verify_stationarity);
}

UnitaryEnsemble build_group_variant(const ConstructionSpec& spec,
                                    const std::vector<std::string>& words,
                                    bool verify_stationarity) {
  if (words.empty()) throw std::invalid_argument("word list must be non-empty");
  std::vector<ComplexMatrix> ops;
  ops.reserve(words.size());
  for (const std::string& word : words)
    ops.push_back(evaluate_word(spec, word));
  return lift_and_verify(ops, resolve_probs(spec, ops.size()),
                         verify_stationarity);
}

bool is_conjectural(const ConstructionSpec& spec) {
  return spec.variant == ConstructionVariant::TwoOpOddD && spec.d % 2 == 0;
}

}  // namespace twirlkit
