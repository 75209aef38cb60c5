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

#include "twirlkit/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "twirlkit/attractors.hpp"
#include "twirlkit/random.hpp"
#include "twirlkit/tolerances.hpp"

namespace twirlkit {

namespace {

// Iterated superoperator powers plateau near 1e-13; points below this floor
// carry no signal and would bend the log fit.
constexpr double kFitFloor = 1e-10;
constexpr double kProbFloor = 1e-3;
constexpr double kAngleFloor = 1e-3;

void fit_log_tail(ConvergenceTrace& trace, int n_max) {
  trace.fitted_rate = 0.0;
  trace.fit_r2 = 0.0;
  int n_hi = -1;
  for (int n = 0; n <= n_max; ++n)
    if (trace.distances[static_cast<std::size_t>(n)] > kFitFloor) n_hi = n;
  if (n_hi < 1) return;
  int n_lo = std::min(n_max / 4, std::max(10, n_hi / 4));
  if (n_lo >= n_hi) n_lo = std::max(0, n_hi - 1);

  std::vector<double> xs;
  std::vector<double> ys;
  for (int n = n_lo; n <= n_hi; ++n) {
    const double dist = trace.distances[static_cast<std::size_t>(n)];
    if (dist <= kFitFloor) continue;
    xs.push_back(static_cast<double>(n));
    ys.push_back(std::log(dist));
  }
  if (xs.size() < 2) return;

  const double count = static_cast<double>(xs.size());
  double x_mean = 0.0;
  double y_mean = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    x_mean += xs[i];
    y_mean += ys[i];
  }
  x_mean /= count;
  y_mean /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - x_mean) * (xs[i] - x_mean);
    sxy += (xs[i] - x_mean) * (ys[i] - y_mean);
  }
  const double slope = sxy / sxx;
  const double intercept = y_mean - slope * x_mean;
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double resid = ys[i] - (intercept + slope * xs[i]);
    ss_res += resid * resid;
    ss_tot += (ys[i] - y_mean) * (ys[i] - y_mean);
  }
  trace.fitted_rate = slope;
  trace.fit_r2 =
      ss_tot < 1e-24 ? 1.0 : std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
}

/**
 * Contraction factor read off the spectrum alone: valid iff the peripheral
 * eigenvalues are exactly a double eigenvalue 1 (for collective ensembles
 * the fixed space always contains the two twirl projectors, so multiplicity
 * two pins it to exactly that span). Invalid spectra score 1.
 */
double spectral_objective(const ComplexMatrix& s) {
  Eigen::ComplexSchur<ComplexMatrix> schur(s, false);
  if (schur.info() != Eigen::Success) return 1.0;
  const double unit_tol = tolerances().unit_circle;
  const double dedup = tolerances().eigen_dedup;
  int near_one = 0;
  double sub = 0.0;
  for (Eigen::Index i = 0; i < schur.matrixT().rows(); ++i) {
    const Complex lambda = schur.matrixT()(i, i);
    if (std::abs(lambda) >= 1.0 - unit_tol) {
      if (std::abs(lambda - Complex{1.0, 0.0}) <= dedup)
        ++near_one;
      else
        return 1.0;
    } else {
      sub = std::max(sub, std::abs(lambda));
    }
  }
  return near_one == 2 ? sub : 1.0;
}

using Objective = std::function<double(const std::vector<double>&)>;

std::pair<std::vector<double>, double> compass_minimize(
    std::vector<double> x, double fx, const Objective& objective,
    double initial_step, double min_step, int max_evals) {
  double step = initial_step;
  int evals = 0;
  while (step >= min_step && evals < max_evals) {
    bool improved = false;
    for (std::size_t i = 0; i < x.size() && evals < max_evals; ++i) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> y = x;
        y[i] += sign * step;
        const double fy = objective(y);
        ++evals;
        if (fy < fx - 1e-15) {
          x = std::move(y);
          fx = fy;
          improved = true;
          break;
        }
        if (evals >= max_evals) break;
      }
    }
    if (!improved) step *= 0.5;
  }
  return {std::move(x), fx};
}

std::vector<double> random_simplex(std::size_t m, std::mt19937_64& engine) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(m);
  double sum = 0.0;
  for (double& x : p) {
    x = expo(engine) + 0.05;
    sum += x;
  }
  for (double& x : p) x /= sum;
  return p;
}

// Completes the dependent probability; returns empty on simplex violation.
std::vector<double> complete_probs(const std::vector<double>& coords,
                                   std::size_t m) {
  std::vector<double> p(m);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    p[i] = coords[i];
    sum += p[i];
  }
  p[m - 1] = 1.0 - sum;
  for (double x : p)
    if (x < kProbFloor || x > 1.0 - kProbFloor) return {};
  return p;
}

struct MultiStartResult {
  std::vector<double> coords;
  double objective = 1.0;
};

// Restart 0 starts at the incumbent; later restarts draw seeded random
// starts. Ties keep the earliest restart.
MultiStartResult run_restarts(
    int restarts, std::uint64_t seed, const std::vector<double>& incumbent,
    const std::function<std::vector<double>(std::mt19937_64&)>& random_start,
    const Objective& objective, int max_evals) {
  MultiStartResult best;
  best.objective = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> start;
    if (r == 0) {
      start = incumbent;
    } else {
      std::mt19937_64 engine(seed + 1000003ull * static_cast<std::uint64_t>(r));
      start = random_start(engine);
    }
    const double f0 = objective(start);
    auto [x, fx] =
        compass_minimize(std::move(start), f0, objective, 0.15, 1e-5,
                         std::max(1, max_evals - 1));
    if (fx < best.objective) {
      best.coords = std::move(x);
      best.objective = fx;
    }
  }
  return best;
}

}  // namespace

ConvergenceTrace trace_convergence(const UnitaryEnsemble& e, int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  const std::optional<int> side = bipartite_side(e.dim());
  if (!side) throw std::invalid_argument("not bipartite");
  for (const EnsembleItem& item : e.items())
    if (!collective_factor(item.u))
      throw std::invalid_argument("not a collective ensemble");

  const Superoperator s = build_superoperator(e);
  const Superoperator t = twirl_superoperator(*side);
  ConvergenceTrace trace;
  trace.subdominant_modulus = subdominant_modulus(s);
  trace.n_values.reserve(static_cast<std::size_t>(n_max) + 1);
  trace.distances.reserve(static_cast<std::size_t>(n_max) + 1);
  ComplexMatrix power = ComplexMatrix::Identity(s.mat.rows(), s.mat.cols());
  for (int n = 0; n <= n_max; ++n) {
    trace.n_values.push_back(n);
    trace.distances.push_back((power - t.mat).norm());
    if (n < n_max) power = (s.mat * power).eval();
  }
  fit_log_tail(trace, n_max);
  return trace;
}

double convergence_rate(const UnitaryEnsemble& e) {
  const AttractorReport report = check_convergence_to_twirl(e);
  if (!report.converges_to_twirl)
    throw std::invalid_argument("non-convergent ensemble");
  return subdominant_modulus(build_superoperator(e));
}

double subdominant_modulus(const Superoperator& s) {
  Eigen::ComplexSchur<ComplexMatrix> schur(s.mat, false);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("Schur decomposition failed");
  const double unit_tol = tolerances().unit_circle;
  double sub = 0.0;
  for (Eigen::Index i = 0; i < schur.matrixT().rows(); ++i) {
    const double mag = std::abs(schur.matrixT()(i, i));
    if (mag < 1.0 - unit_tol) sub = std::max(sub, mag);
  }
  return sub;
}

OptimizationResult optimize_probabilities(const UnitaryEnsemble& e,
                                          int restarts, std::uint64_t seed,
                                          int max_evals_per_restart) {
  if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  const std::size_t m = e.size();

  std::vector<ComplexMatrix> lifts;
  lifts.reserve(m);
  for (const EnsembleItem& item : e.items())
    lifts.push_back(kron(item.u.conjugate(), item.u));

  // Full probability vector regardless of validity, for history records.
  const auto expand = [m](const std::vector<double>& coords) {
    std::vector<double> p(m);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      p[i] = coords[i];
      sum += p[i];
    }
    p[m - 1] = 1.0 - sum;
    return p;
  };

  OptimizationResult result;
  result.n_restarts = restarts;
  const auto objective = [&](const std::vector<double>& coords) {
    const std::vector<double> p = complete_probs(coords, m);
    double value = 1.0;
    if (!p.empty()) {
      ComplexMatrix s = p[0] * lifts[0];
      for (std::size_t i = 1; i < m; ++i) s += p[i] * lifts[i];
      value = spectral_objective(s);
    }
    result.history.emplace_back(expand(coords), value);
    return value;
  };

  std::vector<double> incumbent(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) incumbent[i] = e.items()[i].p;
  const auto random_start = [m](std::mt19937_64& engine) {
    std::vector<double> p = random_simplex(m, engine);
    p.pop_back();
    return p;
  };

  const MultiStartResult best =
      run_restarts(restarts, seed, incumbent, random_start, objective,
                   max_evals_per_restart);
  result.best_objective = best.objective;
  result.best_params = expand(best.coords);
  return result;
}

OptimizationResult optimize_construction(const ConstructionSpec& spec,
                                         int restarts, std::uint64_t seed,
                                         int max_evals_per_restart) {
  if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if (spec.variant != ConstructionVariant::ThreeOp &&
      spec.variant != ConstructionVariant::TwoOpOddD)
    throw std::invalid_argument(
        "construction optimization requires the ThreeOp or TwoOpOddD variant");

  const std::size_t m = spec.variant == ConstructionVariant::ThreeOp ? 3 : 2;
  const ComplexMatrix h = build_h(spec.d);
  const ComplexMatrix u = build_u(spec.d);
  const ComplexMatrix lift_h = kron(kron(h, h).conjugate(), kron(h, h));
  const ComplexMatrix lift_u =
      spec.variant == ConstructionVariant::ThreeOp
          ? kron(kron(u, u).conjugate(), kron(u, u))
          : ComplexMatrix{};

  // Search coordinates: m-1 free probabilities, then phi, t, a, b.
  const auto expand = [m](const std::vector<double>& coords) {
    std::vector<double> params(m + 4);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      params[i] = coords[i];
      sum += coords[i];
    }
    params[m - 1] = 1.0 - sum;
    for (std::size_t i = 0; i < 4; ++i) params[m + i] = coords[m - 1 + i];
    return params;
  };

  OptimizationResult result;
  result.n_restarts = restarts;
  const auto objective = [&](const std::vector<double>& coords) {
    double value = 1.0;
    const std::vector<double> p = complete_probs(coords, m);
    const double t = coords[m];
    const bool t_interior =
        t > kAngleFloor && t < std::numbers::pi / 2.0 - kAngleFloor;
    if (!p.empty() && t_interior) {
      ConstructionSpec candidate = spec;
      candidate.a.phi = coords[m - 1];
      candidate.a.alpha = std::polar(std::cos(t), coords[m + 1]);
      candidate.a.beta = std::polar(std::sin(t), coords[m + 2]);
      const ComplexMatrix v = build_v(candidate);
      ComplexMatrix s;
      if (spec.variant == ConstructionVariant::ThreeOp) {
        const ComplexMatrix vv = kron(v, v);
        s = p[0] * lift_h + p[1] * lift_u + p[2] * kron(vv.conjugate(), vv);
      } else {
        const ComplexMatrix uv1 = (u * v).eval();
        const ComplexMatrix uv = kron(uv1, uv1);
        s = p[0] * lift_h + p[1] * kron(uv.conjugate(), uv);
      }
      value = spectral_objective(s);
    }
    result.history.emplace_back(expand(coords), value);
    return value;
  };

  std::vector<double> incumbent(m - 1 + 4);
  {
    const std::vector<double> p0 =
        spec.probs.empty()
            ? std::vector<double>(m, 1.0 / static_cast<double>(m))
            : spec.probs;
    if (p0.size() != m) throw std::invalid_argument("probability arity mismatch");
    for (std::size_t i = 0; i + 1 < m; ++i) incumbent[i] = p0[i];
    incumbent[m - 1] = spec.a.phi;
    incumbent[m] = std::atan2(std::abs(spec.a.beta), std::abs(spec.a.alpha));
    incumbent[m + 1] = std::arg(spec.a.alpha);
    incumbent[m + 2] = std::arg(spec.a.beta);
  }
  const auto random_start = [m](std::mt19937_64& engine) {
    std::vector<double> coords = random_simplex(m, engine);
    coords.pop_back();
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> tilt(0.1,
                                                std::numbers::pi / 2.0 - 0.1);
    coords.push_back(angle(engine));
    coords.push_back(tilt(engine));
    coords.push_back(angle(engine));
    coords.push_back(angle(engine));
    return coords;
  };

  const MultiStartResult best =
      run_restarts(restarts, seed, incumbent, random_start, objective,
                   max_evals_per_restart);
  result.best_objective = best.objective;
  result.best_params = expand(best.coords);
  return result;
}

UnitaryEnsemble random_baseline(int d, int m, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("dimension must be at least 2");
  if (m < 2) throw std::invalid_argument("at least two operators required");
  std::mt19937_64 engine(seed);
  std::vector<ComplexMatrix> us;
  us.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) us.push_back(haar_unitary(d, engine));
  return lift_collective(
      us, std::vector<double>(static_cast<std::size_t>(m),
                              1.0 / static_cast<double>(m)));
}

}  // namespace twirlkit
