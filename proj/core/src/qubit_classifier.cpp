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

#include "twirlkit/qubit_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "twirlkit/attractors.hpp"
#include "twirlkit/channels.hpp"
#include "twirlkit/tolerances.hpp"

namespace twirlkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_to_2pi(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0) y += kTwoPi;
  return y;
}

// Distance on the circle of circumference 2*pi.
double circle_distance(double x, double y) {
  double d = std::fabs(wrap_to_2pi(x) - wrap_to_2pi(y));
  return std::min(d, kTwoPi - d);
}

bool near_any(double x, std::initializer_list<double> targets, double tol) {
  for (double t : targets)
    if (circle_distance(x, t) <= tol) return true;
  return false;
}

// Multiple of pi/2 on the circle (wrap-aware).
bool is_quarter_multiple(double x, double tol) {
  const double r = std::remainder(x, kPi / 2.0);
  return std::fabs(r) <= tol;
}

void require_qubit_unitary(const ComplexMatrix& u) {
  if (u.rows() != 2 || u.cols() != 2)
    throw std::invalid_argument("classifier: operators must be 2x2");
  if (!is_unitary(u, tolerances().unitarity))
    throw std::invalid_argument("classifier: operator is not unitary");
}

// Rotation phase phi in [0, pi] of an SU(2) element (eigenvalues e^{+-i phi}).
double su2_phase(const ComplexMatrix& su) {
  const double c = std::clamp(su.trace().real() / 2.0, -1.0, 1.0);
  return std::acos(c);
}

bool is_identity_like(const ComplexMatrix& su, double tol) {
  const double phi = su2_phase(su);
  return phi <= tol || kPi - phi <= tol;
}

bool is_traceless(const ComplexMatrix& su, double tol) {
  return circle_distance(su2_phase(su), kPi / 2.0) <= tol;
}

struct Witness {
  std::vector<std::pair<std::string, double>> entries;
  void add(const std::string& key, double value) {
    entries.emplace_back(key, value);
  }
};

}  // namespace

ComplexMatrix su2_project(const ComplexMatrix& u) {
  require_qubit_unitary(u);
  const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  return u / std::sqrt(det);
}

ComplexMatrix su2_from_phase(double phi) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = std::polar(1.0, phi);
  m(1, 1) = std::polar(1.0, -phi);
  return m;
}

ComplexMatrix su2_from_angles(const SingleQubitAngles& a) {
  ComplexMatrix m(2, 2);
  m(0, 0) = std::polar(std::cos(a.gamma), a.theta);
  m(0, 1) = -std::polar(std::sin(a.gamma), -a.mu);
  m(1, 0) = std::polar(std::sin(a.gamma), a.mu);
  m(1, 1) = std::polar(std::cos(a.gamma), -a.theta);
  return m;
}

QubitParams canonicalize(const std::vector<ComplexMatrix>& us, int pivot) {
  const Tolerances& tol = tolerances();
  if (us.empty()) throw std::invalid_argument("canonicalize: empty list");
  if (pivot < 0 || static_cast<std::size_t>(pivot) >= us.size())
    throw std::invalid_argument("canonicalize: pivot index out of range");

  std::vector<ComplexMatrix> sus;
  sus.reserve(us.size());
  for (const ComplexMatrix& u : us) sus.push_back(su2_project(u));

  const ComplexMatrix& piv = sus[static_cast<std::size_t>(pivot)];
  if (is_identity_like(piv, tol.angular))
    throw std::invalid_argument("degenerate pivot");

  // Eigenbasis of the pivot, positive-imaginary eigenvalue first.
  EigenDecomposition dec = eig(piv);
  int first = dec.values(0).imag() > 0.0 ? 0 : 1;
  ComplexMatrix w(2, 2);
  w.col(0) = dec.vectors.col(first);
  w.col(1) = dec.vectors.col(1 - first);
  // Unitary pivot with distinct eigenvalues: columns are orthogonal up to
  // round-off; one re-orthogonalization pass tightens the basis.
  w.col(1) -= (w.col(0).adjoint() * w.col(1))(0, 0) * w.col(0);
  w.col(1) /= w.col(1).norm();

  QubitParams params;
  params.pivot_index = pivot;
  params.phi = std::arg(dec.values(first));

  for (std::size_t j = 0; j < sus.size(); ++j) {
    if (j == static_cast<std::size_t>(pivot)) continue;
    ComplexMatrix m = (w.adjoint() * sus[j] * w).eval();
    SingleQubitAngles a;
    a.gamma = std::atan2(std::abs(m(1, 0)), std::abs(m(0, 0)));
    a.theta = std::abs(m(0, 0)) > tol.angular ? wrap_to_2pi(std::arg(m(0, 0)))
                                              : 0.0;
    a.mu = std::abs(m(1, 0)) > tol.angular ? wrap_to_2pi(std::arg(m(1, 0)))
                                           : 0.0;
    params.others.emplace_back(static_cast<int>(j), a);
  }
  return params;
}

TwirlVerdict classify_two(const QubitParams& params) {
  if (params.others.size() != 1)
    throw std::invalid_argument("classify_two: exactly two operators required");
  const double tol = tolerances().angular;
  const auto& [j, a] = params.others.front();

  TwirlVerdict verdict;
  Witness w;
  w.add("pivot", params.pivot_index);
  w.add("phi", params.phi);
  w.add("j", j);
  w.add("gamma", a.gamma);
  w.add("theta", a.theta);
  w.add("mu", a.mu);

  const bool pivot_traceless = near_any(params.phi, {kPi / 2, 3 * kPi / 2}, tol);
  const bool gamma_off_grid = !near_any(a.gamma, {0.0, kPi / 2}, tol);
  if (pivot_traceless) {
    const bool theta_off_grid =
        !near_any(a.theta, {0.0, kPi / 2, kPi, 3 * kPi / 2}, tol);
    if (gamma_off_grid && theta_off_grid) {
      verdict.converges = true;
      verdict.rule_fired = TwirlRule::TwoOpTraceless;
    }
  } else if (gamma_off_grid) {
    verdict.converges = true;
    verdict.rule_fired = TwirlRule::TwoOpTraceNonzero;
  }
  verdict.witness = std::move(w.entries);
  return verdict;
}

TwirlVerdict classify_multi(const std::vector<ComplexMatrix>& us) {
  const Tolerances& tol = tolerances();
  if (us.size() < 2)
    throw std::invalid_argument("classify_multi: at least two operators required");

  std::vector<ComplexMatrix> sus;
  for (const ComplexMatrix& u : us) sus.push_back(su2_project(u));

  // +/- identity members commute with everything and add no constraint.
  std::vector<int> effective;
  for (std::size_t i = 0; i < sus.size(); ++i)
    if (!is_identity_like(sus[i], tol.angular))
      effective.push_back(static_cast<int>(i));

  TwirlVerdict verdict;  // defaults: no convergence, rule None
  if (effective.size() < 2) return verdict;

  std::vector<ComplexMatrix> ops;
  for (int idx : effective) ops.push_back(us[static_cast<std::size_t>(idx)]);

  std::vector<int> trace_pivots;
  for (std::size_t k = 0; k < ops.size(); ++k)
    if (!is_traceless(sus[static_cast<std::size_t>(effective[k])], tol.angular))
      trace_pivots.push_back(static_cast<int>(k));

  if (!trace_pivots.empty()) {
    // Some member has nonzero trace: try each such pivot.
    for (int k : trace_pivots) {
      QubitParams params = canonicalize(ops, k);
      for (const auto& [j, a] : params.others) {
        if (near_any(a.gamma, {0.0, kPi / 2}, tol.angular)) continue;
        verdict.converges = true;
        verdict.rule_fired = TwirlRule::MultiOpTraceNonzero;
        Witness w;
        w.add("pivot", effective[static_cast<std::size_t>(k)]);
        w.add("phi", params.phi);
        w.add("j", effective[static_cast<std::size_t>(j)]);
        w.add("gamma", a.gamma);
        verdict.witness = std::move(w.entries);
        return verdict;
      }
    }
    return verdict;
  }

  // All effective members traceless: gamma plus mu-difference conditions.
  // The azimuth grid is a property of the chosen pivot axis (coplanar flip
  // axes are locked around every pivot, generic ones around none), so every
  // pivot is tried and one certifying pivot suffices. gamma ~ 0 members
  // coincide with the pivot rotation and carry no azimuth, so they are
  // excluded from the mu quantifier.
  for (std::size_t pivot = 0; pivot < ops.size(); ++pivot) {
    QubitParams params = canonicalize(ops, static_cast<int>(pivot));
    int gamma_j = -1;
    for (const auto& [j, a] : params.others)
      if (!near_any(a.gamma, {0.0, kPi / 2}, tol.angular)) {
        gamma_j = j;
        break;
      }
    if (gamma_j < 0) continue;

    std::vector<std::pair<int, double>> mu_carriers;
    for (const auto& [j, a] : params.others)
      if (a.gamma > tol.angular) mu_carriers.emplace_back(j, a.mu);
    for (std::size_t x = 0; x < mu_carriers.size(); ++x)
      for (std::size_t y = x + 1; y < mu_carriers.size(); ++y) {
        const double diff = mu_carriers[x].second - mu_carriers[y].second;
        if (is_quarter_multiple(diff, tol.angular)) continue;
        verdict.converges = true;
        verdict.rule_fired = TwirlRule::MultiOpAllTraceless;
        Witness w;
        w.add("pivot", effective[pivot]);
        w.add("phi", params.phi);
        w.add("j", effective[static_cast<std::size_t>(gamma_j)]);
        w.add("k1", effective[static_cast<std::size_t>(mu_carriers[x].first)]);
        w.add("k2", effective[static_cast<std::size_t>(mu_carriers[y].first)]);
        w.add("mu_difference", diff);
        verdict.witness = std::move(w.entries);
        return verdict;
      }
  }
  return verdict;
}

std::vector<int> minimal_subset(const std::vector<ComplexMatrix>& us) {
  if (!classify_multi(us).converges)
    throw std::invalid_argument("minimal_subset: ensemble does not converge");
  const int m = static_cast<int>(us.size());
  std::vector<int> indices;
  // The convergence rules need at most four members (pivot, one gamma
  // witness, two mu carriers), so subsets of size <= 4 always suffice.
  for (int size = 2; size <= std::min(4, m); ++size) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
      std::vector<ComplexMatrix> subset;
      for (int idx : pick) subset.push_back(us[static_cast<std::size_t>(idx)]);
      if (classify_multi(subset).converges) return pick;
      int pos = size - 1;
      while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == m - size + pos)
        --pos;
      if (pos < 0) break;
      ++pick[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < size; ++i)
        pick[static_cast<std::size_t>(i)] = pick[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  throw std::runtime_error(
      "minimal_subset: no convergent subset of size <= 4 found");
}

bool cross_validate(const std::vector<ComplexMatrix>& us,
                    const std::vector<double>& probs) {
  const TwirlVerdict analytic = classify_multi(us);
  const AttractorReport numeric =
      check_convergence_to_twirl(lift_collective(us, probs));
  return analytic.converges == numeric.converges_to_twirl;
}

}  // namespace twirlkit
