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

#include "twirlkit/channels.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "twirlkit/tolerances.hpp"

namespace twirlkit {

//------------------------------------------------------------------------
// Density matrices
//------------------------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
  const Tolerances& tol = tolerances();
  if (mat_.rows() != mat_.cols())
    throw std::invalid_argument("DensityMatrix: matrix must be square");
  if (!mat_.allFinite())
    throw std::invalid_argument("DensityMatrix: entries must be finite");
  if ((mat_ - mat_.adjoint().eval()).norm() > tol.hermiticity)
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  if (std::abs(mat_.trace() - Complex(1.0, 0.0)) > tol.trace)
    throw std::invalid_argument("DensityMatrix: trace must be 1");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      ((mat_ + mat_.adjoint().eval()) / 2.0).eval());
  if (solver.eigenvalues().minCoeff() < -tol.psd_floor)
    throw std::invalid_argument("DensityMatrix: matrix is not positive");
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m) {
  return DensityMatrix(std::move(m), unchecked_tag{});
}

//------------------------------------------------------------------------
// Unitary ensembles
//------------------------------------------------------------------------

UnitaryEnsemble::UnitaryEnsemble(std::vector<EnsembleItem> items)
    : items_(std::move(items)) {
  const Tolerances& tol = tolerances();
  if (items_.empty())
    throw std::invalid_argument("UnitaryEnsemble: at least one item required");
  dim_ = items_.front().u.rows();
  double total = 0.0;
  for (const EnsembleItem& item : items_) {
    if (item.u.rows() != dim_ || item.u.cols() != dim_)
      throw std::invalid_argument("UnitaryEnsemble: dimension mismatch");
    if (!(item.p > 0.0) || item.p > 1.0 + tol.trace)
      throw std::invalid_argument(
          "UnitaryEnsemble: probabilities must lie in (0, 1]");
    if (!is_unitary(item.u, tol.unitarity))
      throw std::invalid_argument("UnitaryEnsemble: item is not unitary");
    total += item.p;
  }
  if (std::abs(total - 1.0) > tol.trace)
    throw std::invalid_argument("UnitaryEnsemble: probabilities must sum to 1");
}

UnitaryEnsemble UnitaryEnsemble::with_probabilities(
    const std::vector<double>& probs) const {
  if (probs.size() != items_.size())
    throw std::invalid_argument(
        "UnitaryEnsemble: probability count must match item count");
  std::vector<EnsembleItem> items = items_;
  for (std::size_t i = 0; i < items.size(); ++i) items[i].p = probs[i];
  return UnitaryEnsemble(std::move(items));
}

//------------------------------------------------------------------------
// Channel application and superoperators
//------------------------------------------------------------------------

DensityMatrix apply_ruo(const UnitaryEnsemble& e, const DensityMatrix& rho) {
  if (e.dim() != rho.dim())
    throw std::invalid_argument("apply_ruo: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const EnsembleItem& item : e.items())
    out += item.p * (item.u * rho.mat() * item.u.adjoint());
  return DensityMatrix::unchecked(std::move(out));
}

Superoperator build_superoperator(const UnitaryEnsemble& e) {
  const Eigen::Index n = e.dim() * e.dim();
  ComplexMatrix mat = ComplexMatrix::Zero(n, n);
  for (const EnsembleItem& item : e.items())
    mat += item.p * kron(item.u.conjugate(), item.u);
  return Superoperator{e.dim(), std::move(mat)};
}

//------------------------------------------------------------------------
// Flip operator, symmetric/antisymmetric projectors, Werner states
//------------------------------------------------------------------------

ComplexMatrix flip_operator(int d) {
  if (d < 2) throw std::invalid_argument("flip_operator: d must be >= 2");
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  ComplexMatrix f = ComplexMatrix::Zero(n, n);
  // F |a>|b> = |b>|a>  =>  F[(b,a), (a,b)] = 1.
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) f(b * d + a, a * d + b) = 1.0;
  return f;
}

std::pair<ComplexMatrix, ComplexMatrix> sym_asym_projectors(int d) {
  ComplexMatrix f = flip_operator(d);
  const Eigen::Index n = f.rows();
  ComplexMatrix id = ComplexMatrix::Identity(n, n);
  return {(id + f) / 2.0, (id - f) / 2.0};
}

DensityMatrix werner_state(const WernerParams& w) {
  if (w.d < 2) throw std::invalid_argument("werner_state: d must be >= 2");
  if (w.eta < 0.0 || w.eta > 1.0)
    throw std::invalid_argument("werner_state: eta must lie in [0, 1]");
  auto [p_sym, p_asym] = sym_asym_projectors(w.d);
  const double rank_sym = w.d * (w.d + 1) / 2.0;
  const double rank_asym = w.d * (w.d - 1) / 2.0;
  ComplexMatrix rho =
      (w.eta / rank_sym) * p_sym + ((1.0 - w.eta) / rank_asym) * p_asym;
  return DensityMatrix(std::move(rho));
}

//------------------------------------------------------------------------
// Twirl projection
//------------------------------------------------------------------------

std::optional<int> bipartite_side(Eigen::Index hdim) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(
      static_cast<double>(hdim))));
  if (d >= 2 && d * d == hdim) return static_cast<int>(d);
  return std::nullopt;
}

DensityMatrix twirl_project(const DensityMatrix& rho) {
  const std::optional<int> d = bipartite_side(rho.dim());
  if (!d) throw std::invalid_argument("not bipartite");
  auto [p_sym, p_asym] = sym_asym_projectors(*d);
  const double rank_sym = *d * (*d + 1) / 2.0;
  const double rank_asym = *d * (*d - 1) / 2.0;
  const Complex w_sym = (p_sym * rho.mat()).trace() / rank_sym;
  const Complex w_asym = (p_asym * rho.mat()).trace() / rank_asym;
  return DensityMatrix::unchecked(w_sym * p_sym + w_asym * p_asym);
}

Superoperator twirl_superoperator(int d) {
  if (d < 2) throw std::invalid_argument("twirl_superoperator: d must be >= 2");
  auto [p_sym, p_asym] = sym_asym_projectors(d);
  const double rank_sym = d * (d + 1) / 2.0;
  const double rank_asym = d * (d - 1) / 2.0;
  ComplexVector v_sym = vec_col(p_sym);
  ComplexVector v_asym = vec_col(p_asym);
  ComplexMatrix mat = (v_sym * v_sym.adjoint()) / rank_sym +
                      (v_asym * v_asym.adjoint()) / rank_asym;
  return Superoperator{static_cast<Eigen::Index>(d) * d, std::move(mat)};
}

double hs_distance_to_twirl(const Superoperator& s, int n) {
  const std::optional<int> d = bipartite_side(s.hdim);
  if (!d) throw std::invalid_argument("not bipartite");
  if (n < 0)
    throw std::invalid_argument("hs_distance_to_twirl: n must be >= 0");
  Superoperator t = twirl_superoperator(*d);
  ComplexMatrix power =
      ComplexMatrix::Identity(s.mat.rows(), s.mat.cols());
  for (int k = 0; k < n; ++k) power = (s.mat * power).eval();
  return (power - t.mat).norm();
}

//------------------------------------------------------------------------
// Collective (u (x) u) ensembles
//------------------------------------------------------------------------

UnitaryEnsemble lift_collective(const std::vector<ComplexMatrix>& us,
                                const std::vector<double>& probs) {
  if (us.size() != probs.size())
    throw std::invalid_argument(
        "lift_collective: probability count must match unitary count");
  std::vector<EnsembleItem> items;
  items.reserve(us.size());
  for (std::size_t i = 0; i < us.size(); ++i)
    items.push_back({probs[i], kron(us[i], us[i])});
  return UnitaryEnsemble(std::move(items));
}

std::optional<ComplexMatrix> collective_factor(const ComplexMatrix& u_big) {
  const std::optional<int> d = bipartite_side(u_big.rows());
  if (!d || u_big.rows() != u_big.cols()) return std::nullopt;
  const Tolerances& tol = tolerances();
  KronFactors f = kron_factor(u_big, *d, *d);
  if (f.relative_residual > tol.subspace) return std::nullopt;
  // Normalize the scale split so the first factor is unitary.
  const double norm_a = f.a.norm();
  if (norm_a == 0.0) return std::nullopt;
  const double target = std::sqrt(static_cast<double>(*d));
  ComplexMatrix a = f.a * (target / norm_a);
  ComplexMatrix b = f.b * (norm_a / target);
  if (!is_unitary(a, 1e-8) || !is_unitary(b, 1e-8)) return std::nullopt;
  // A Kronecker square forces b = e^{i chi} a; split the phase evenly.
  const Complex overlap = hs_inner(a, b) / static_cast<double>(*d);
  if (std::abs(std::abs(overlap) - 1.0) > 1e-8) return std::nullopt;
  const Complex chi_half = std::sqrt(overlap);
  ComplexMatrix u = chi_half * a;
  if ((kron(u, u) - u_big).norm() > tol.subspace * u_big.norm())
    return std::nullopt;
  return u;
}

}  // namespace twirlkit
